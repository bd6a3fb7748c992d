"""Command line interface: ``orekit run|mul|divide|decompose|udim|jordan-normalize``.

Exit codes: 0 when every check passes, 1 when some check fails, 2 for
configuration or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import ConfigError, OrekitError
from .jordan import JordanRing
from .ore import left_divide
from .parsing import ParseError, parse_skew, parse_tower
from .scenario import DEFAULT_SEED, build_scenario, load_config, load_scenario
from .structure import decompose, udim_ore
from .suites import run_suite


def _job(args):
    cfg, suite, seed = args
    sc = build_scenario(cfg)
    return run_suite(sc, suite, seed)


def run_configs(configs, seed=None, jobs=1):
    """Validate every config, then run their suites; entries come back in
    scenario order, then suite order, whatever the scheduling."""
    scenarios = [build_scenario(cfg) for cfg in configs]
    tasks = []
    for cfg, sc in zip(configs, scenarios):
        s = sc.seed if seed is None else seed
        for suite in sc.suites:
            tasks.append((cfg, suite, s))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_job, tasks))
    else:
        results = []
        for (cfg, suite, s), sc in zip(tasks, _expand(scenarios)):
            results.append(run_suite(sc, suite, s))
    report = []
    for (cfg, _, _), entries in zip(tasks, results):
        for e in entries:
            report.append({"scenario": cfg["name"], **e})
    return report


def _expand(scenarios):
    for sc in scenarios:
        for _ in sc.suites:
            yield sc


def dumps_report(report):
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _write(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_run(a):
    configs = [load_config(p) for p in a.configs]
    report = run_configs(configs, a.seed, a.jobs)
    _write(dumps_report(report), a.out)
    failed = [e for e in report if e["status"] == "fail"]
    for e in failed:
        print(f"FAIL {e['scenario']} {e['claim']} (seed {e['seed']})", file=sys.stderr)
    return 1 if failed else 0


def _ctx(a):
    if not a.ctx:
        raise ConfigError("--ctx is required", "--ctx")
    return load_scenario(a.ctx)


def cmd_mul(a):
    sc = _ctx(a)
    f = parse_skew(sc.ctx, a.f)
    g = parse_skew(sc.ctx, a.g)
    _write(f"{f * g}\n", a.out)
    return 0


def cmd_divide(a):
    sc = _ctx(a)
    f = parse_skew(sc.ctx, a.f)
    g = parse_skew(sc.ctx, a.g)
    q, r = left_divide(f, g, verify=True)
    _write(f"quot = {q}\nrem = {r}\n", a.out)
    return 0


def cmd_decompose(a):
    sc = _ctx(a)
    if not sc.semisimple:
        raise ConfigError("decompose needs a semisimple coefficient ring", "ring")
    rep = decompose(sc.ring, sc.sigma, sc.delta, sc.name)
    doc = {"scenario": sc.name, "order": rep.order,
           "blocks": [blk.describe() for blk in rep.blocks]}
    _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", a.out)
    return 0


def cmd_udim(a):
    sc = _ctx(a)
    if not sc.semisimple:
        raise ConfigError("udim needs a semisimple coefficient ring", "ring")
    trace = udim_ore(sc.ring, sc.sigma, sc.delta)
    _write(f"{trace.total} (= udim R)\n", a.out)
    return 0


def cmd_jordan_normalize(a):
    sc = _ctx(a)
    if not sc.semisimple:
        raise ConfigError("towers need a semisimple coefficient ring", "ring")
    ring = sc.ring
    J = JordanRing(ring, sc.sigma)
    elem = parse_tower(J, a.elem)
    _write(elem.pair() + "\n", a.out)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ctx", help="scenario file defining the ring, sigma and delta")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                        help=f"random seed (default {DEFAULT_SEED:#x} or the scenario's)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for run")

    p = argparse.ArgumentParser(prog="orekit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", parents=[common], help="run the verification suites")
    r.add_argument("configs", nargs="+", metavar="SCENARIO")
    r.set_defaults(func=cmd_run)
    for name, func, help_ in (("mul", cmd_mul, "multiply two skew polynomials"),
                              ("divide", cmd_divide, "left division f = q g + r")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("f")
        s.add_argument("g")
        s.set_defaults(func=func)
    s = sub.add_parser("decompose", parents=[common], help="orbit decomposition")
    s.set_defaults(func=cmd_decompose)
    s = sub.add_parser("udim", parents=[common], help="left uniform dimension")
    s.set_defaults(func=cmd_udim)
    s = sub.add_parser("jordan-normalize", parents=[common],
                       help="canonical form of a tower element (level, body)")
    s.add_argument("elem")
    s.set_defaults(func=cmd_jordan_normalize)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        inv = f" [invariant: {exc.invariant}]" if exc.invariant else ""
        print(f"config error: {exc}{inv}", file=sys.stderr)
        return 2
    except (ParseError, OrekitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
