"""Scenario files: JSON descriptions of a coefficient ring, sigma, delta and q.

Schema (factor indices and permutation cycles are 1-based)::

    {
      "name": "f2-swap",
      "ring": {"p": 3, "factors": [[1, "Fp"], [1, "Fp"]]},   # or {"p": 2, "kind": "shift-ring"}
      "sigma": {"rho": [[1, 2]],                             # cycles; omitted = identity
                "u": {"1": [[0, 1], [1, 0]]},                # per factor, optional
                "tau": {"1": [1, 2]}},                       # (c, k): t -> c t^k, optional
      "delta": {"b": ["1", "0"],                             # inner part, one entry per factor
                "entrywise": {"1": "t^2-t"},                 # delta'(t) per F_p(t) factor
                "basis_images": [...]},                      # alternative: values on matrix units
      "q": "1",
      "suites": ["ore", "structure"],
      "budgets": {"assoc_samples": 1000},
      "seed": 12648430
    }

Entries of matrices and scalars are integers or strings in t.  A bare
field F_p(t) is the single factor [1, "Fp(t)"].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConfigError, OrekitError, ValidationError
from .ore import OreContext
from .parsing import ParseError, parse_scalar
from .scalars import (FieldEndo, FieldSigmaDeriv, RationalFunctionField, is_prime,
                      prime_field)
from .semisimple import BasisDeriv, Matrix, SSDeriv, SSEndo, SSRing
from .shiftring import ShiftRing, ShiftSigma

DEFAULT_SEED = 0xC0FFEE

DEFAULT_BUDGETS = {
    "assoc_samples": 1000,
    "assoc_degree": 5,
    "samples": 200,
    "iso_samples": 200,
    "division_samples": 500,
    "lclm_samples": 200,
    "jordan_samples": 500,
    "twist_samples": 100,
    "delta_bar_samples": 200,
    "units_samples": 500,
    "nil_degree": 2,
    "nil_budget": 10000,
    "lc_bound": 3,
    "trunc": 4,
    "k_max": 8,
    "shift_budget": 500,
}


@dataclass
class Scenario:
    name: str
    config: dict
    ring: object
    sigma: object
    delta: object
    q: object
    ctx: OreContext
    kind: str
    suites: list
    budgets: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED

    @property
    def semisimple(self):
        return self.kind == "semisimple"

    @property
    def field_like(self):
        return self.semisimple and self.ring.is_field


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("top level must be a JSON object")
    cfg.setdefault("name", str(path).rsplit("/", 1)[-1].removesuffix(".json"))
    return cfg


def _factor_index(key, count, where):
    try:
        i = int(key)
    except (TypeError, ValueError):
        raise ConfigError(f"factor index {key!r} is not an integer", where) from None
    if not 1 <= i <= count:
        raise ConfigError(f"factor index {i} out of range 1..{count}", where)
    return i - 1


def _scalar(field_, v, where):
    try:
        return parse_scalar(field_, v) if isinstance(v, str) else field_.coerce(int(v))
    except (ParseError, TypeError, ValueError, OrekitError) as exc:
        raise ConfigError(f"bad scalar {v!r}: {exc}", where) from None


def _matrix(field_, n, rows, where):
    if isinstance(rows, (int, str)) and n == 1:
        rows = [[rows]]
    if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows):
        raise ConfigError(f"expected a {n}x{n} matrix", where)
    return Matrix(field_, [[_scalar(field_, v, where) for v in r] for r in rows])


def _ring(cfg):
    part = cfg.get("ring")
    if not isinstance(part, dict):
        raise ConfigError("missing ring description", "ring")
    p = part.get("p")
    if not isinstance(p, int) or not is_prime(p) or p > 2**31:
        raise ConfigError(f"p must be a prime <= 2^31, got {p!r}", "ring.p")
    if part.get("kind") == "shift-ring":
        return ShiftRing(p), "shift"
    factors = part.get("factors")
    if not isinstance(factors, list) or not factors:
        raise ConfigError("factors must be a nonempty list", "ring.factors")
    out = []
    for i, f in enumerate(factors):
        where = f"ring.factors[{i + 1}]"
        if not (isinstance(f, list) and len(f) == 2 and isinstance(f[0], int) and f[0] >= 1):
            raise ConfigError("each factor is [n, \"Fp\" | \"Fp(t)\"]", where)
        if f[1] == "Fp":
            out.append((f[0], prime_field(p)))
        elif f[1] == "Fp(t)":
            out.append((f[0], RationalFunctionField(p)))
        else:
            raise ConfigError(f"unknown scalar field {f[1]!r}", where)
    return SSRing(out), "semisimple"


def _rho(cycles, s):
    rho = list(range(s))
    if cycles is None:
        return rho
    if not isinstance(cycles, list):
        raise ConfigError("rho is a list of cycles", "sigma.rho")
    for cyc in cycles:
        if not isinstance(cyc, list) or not cyc:
            raise ConfigError("each cycle is a nonempty list", "sigma.rho")
        idx = [_factor_index(c, s, "sigma.rho") for c in cyc]
        for a, b in zip(idx, idx[1:] + idx[:1]):
            rho[a] = b
    return rho


def _sigma(cfg, ring):
    part = cfg.get("sigma", {}) or {}
    s = len(ring.factors)
    rho = _rho(part.get("rho"), s)
    units = [None] * s
    for key, rows in (part.get("u") or {}).items():
        i = _factor_index(key, s, "sigma.u")
        n, k = ring.factors[i]
        units[i] = _matrix(k, n, rows, f"sigma.u.{key}")
    taus = [None] * s
    for key, ck in (part.get("tau") or {}).items():
        i = _factor_index(key, s, "sigma.tau")
        where = f"sigma.tau.{key}"
        if not (isinstance(ck, list) and len(ck) == 2):
            raise ConfigError("tau is [c, k] for t -> c t^k", where)
        try:
            taus[i] = FieldEndo(ring.factors[i][1], ck[0], ck[1])
        except ValueError as exc:
            raise ConfigError(str(exc), where) from None
    return SSEndo(ring, rho, units, taus)


def _delta(cfg, ring, sigma):
    part = cfg.get("delta")
    if not part:
        return None
    if "basis_images" in part:
        imgs = part["basis_images"]
        if not isinstance(imgs, list) or len(imgs) != ring.dim:
            raise ConfigError(f"need {ring.dim} basis images", "delta.basis_images")
        vals = [_element(ring, v, f"delta.basis_images[{i + 1}]") for i, v in enumerate(imgs)]
        try:
            return BasisDeriv(sigma, vals)
        except (TypeError, OrekitError) as exc:
            raise ConfigError(str(exc), "delta.basis_images") from None
    b = None
    if "b" in part:
        b = _element(ring, part["b"], "delta.b")
    entry = {}
    for key, img in (part.get("entrywise") or {}).items():
        i = _factor_index(key, len(ring.factors), "delta.entrywise")
        k = ring.factors[i][1]
        where = f"delta.entrywise.{key}"
        if not isinstance(k, RationalFunctionField):
            raise ConfigError("entrywise parts need an F_p(t) factor", where)
        entry[i] = FieldSigmaDeriv(sigma.taus[i], _scalar(k, img, where))
    try:
        return SSDeriv(sigma, b, entry)
    except OrekitError as exc:
        raise ConfigError(str(exc), "delta", type(exc).__name__) from None


def _element(ring, value, where):
    """One entry per factor: scalar for 1x1 factors, matrix rows otherwise."""
    if not isinstance(value, list) or len(value) != len(ring.factors):
        raise ConfigError(f"expected {len(ring.factors)} components", where)
    parts = []
    for (n, k), v in zip(ring.factors, value):
        parts.append(_matrix(k, n, v, where))
    return ring.from_literal(parts)


def build_scenario(cfg, validate=True):
    """Construct and validate a scenario; every failure is a ConfigError."""
    name = cfg.get("name", "scenario")
    ring, kind = _ring(cfg)
    if kind == "shift":
        if cfg.get("delta") or cfg.get("sigma"):
            raise ConfigError("the shift ring carries its fixed shift and delta = 0", "sigma")
        sigma, delta, q = ShiftSigma(ring), None, None
    else:
        sigma = _sigma(cfg, ring)
        delta = _delta(cfg, ring, sigma)
        q = None
        if cfg.get("q") is not None:
            if not ring.is_field:
                raise ConfigError("q is supported for a single scalar factor", "q")
            q = ring.coerce(_scalar(ring.factors[0][1], cfg["q"], "q"))
    ctx = OreContext(ring, sigma, delta, q, name=name)
    if validate:
        try:
            ctx.validate()
        except ValidationError as exc:
            where = {"q-quantization": "q"}.get(exc.invariant)
            if where is None:
                where = "delta" if "delta" in exc.invariant or "Leibniz" in exc.invariant \
                    else "sigma"
            raise ConfigError(f"invariant {exc.invariant!r} violated", where,
                              exc.invariant) from None
    budgets = dict(DEFAULT_BUDGETS)
    extra = cfg.get("budgets") or {}
    for key, v in extra.items():
        if key not in DEFAULT_BUDGETS:
            raise ConfigError(f"unknown budget {key!r}", "budgets")
        if not isinstance(v, int) or v < 0:
            raise ConfigError(f"budget {key} must be a nonnegative integer", "budgets")
        budgets[key] = v
    from .suites import default_suites, SUITES
    suites = cfg.get("suites") or default_suites(kind)
    for s in suites:
        if s not in SUITES:
            raise ConfigError(f"unknown suite {s!r}", "suites")
    seed = cfg.get("seed", DEFAULT_SEED)
    return Scenario(name, cfg, ring, sigma, delta, q, ctx, kind, list(suites), budgets, seed)


def load_scenario(path, validate=True):
    return build_scenario(load_config(path), validate)
