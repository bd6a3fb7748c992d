"""Verification suites run by ``orekit run``.

Each suite takes a Scenario and a seed and returns report entries
``{suite, claim, citation, status, evidence, seed}``.  ``citation`` is the
statement being checked; ``status`` is pass, fail or unsupported.  Evidence
holds only deterministic values (counts, witnesses), never timings, so a
fixed config and seed give a byte-identical report.
"""

from __future__ import annotations

import random

from .checks import Check
from .errors import NotQuantized, OrekitError, UnsupportedCoefficients
from .jordan import (JordanDerivation, JordanRing, LaurentRing, lands_in_base, laurent_embed,
                     ore_set_witness, tower_context, verify_delta_bar, verify_inner_twist,
                     verify_jordan, verify_matrix_lift, verify_power_extension,
                     verify_power_tower_iso, verify_product_tower)
from .ore import (SkewPoly, extend_sigma_to_ore, left_divide, left_gcd_lclm,
                  nilpotency_search, verify_lc_chain)
from .semisimple import udim_ss
from .shiftring import (nilpotent_ideal_certificate, non_surjectivity_witness,
                        prime_witness)
from .structure import decompose, independence_witness, udim_ore


def _entry(suite, claim, citation, result, seed, evidence=None):
    if isinstance(result, Check):
        status = "pass" if result.ok else "fail"
        ev = {"checked": result.checked}
        if not result.ok:
            ev["invariant"] = result.invariant
            ev["witness"] = _plain(result.witness)
    elif result is None:
        status, ev = "unsupported", {}
    else:
        status, ev = ("pass" if result else "fail"), {}
    if evidence:
        ev.update(evidence)
    return {"suite": suite, "claim": claim, "citation": citation, "status": status,
            "evidence": ev, "seed": seed}


def _plain(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


def _coeff_kw(sc):
    # F_p(t) coefficients: polynomials of degree <= 2 keep iterated t -> t^k in range
    return {"polynomial": True} if not sc.ring.finite and sc.kind == "semisimple" else {}


def _random(ctx, rng, deg, kw):
    return ctx.random(rng, deg, **kw)


# --------------------------------------------------------------------------


def suite_ore(sc, seed):
    b = sc.budgets
    ctx = sc.ctx
    kw = _coeff_kw(sc)
    rng = random.Random(seed)
    out = []
    deg = b["assoc_degree"]
    res = Check.passed(b["assoc_samples"])
    for n in range(b["assoc_samples"]):
        f, g, h = (_random(ctx, rng, deg, kw) for _ in range(3))
        if (f * g) * h != f * (g * h):
            res = Check.failed("(fg)h = f(gh)", (str(f), str(g), str(h)), n + 1)
            break
    out.append(_entry("ore", "ore.associativity",
                      "multiplication in R[x; sigma, delta] is associative", res, seed,
                      {"triples": b["assoc_samples"], "max_degree": deg}))

    res = Check.passed(b["samples"])
    for n in range(b["samples"]):
        f, g, h = (_random(ctx, rng, 3, kw) for _ in range(3))
        if f * (g + h) != f * g + f * h or (f + g) * h != f * h + g * h:
            res = Check.failed("distributivity", (str(f), str(g), str(h)), n + 1)
            break
    out.append(_entry("ore", "ore.distributivity",
                      "multiplication distributes over addition", res, seed))

    if getattr(ctx.ring, "is_field", False):
        res = Check.passed(b["samples"])
        for n in range(b["samples"]):
            f, g = _random(ctx, rng, 4, kw), _random(ctx, rng, 4, kw)
            if f and g and (f * g).degree() != f.degree() + g.degree():
                res = Check.failed("deg fg = deg f + deg g", (str(f), str(g)), n + 1)
                break
        out.append(_entry("ore", "ore.degree-law",
                          "deg(fg) = deg f + deg g over a field with sigma injective",
                          res, seed))

    if ctx.delta is None:
        res = Check.passed(b["samples"])
        for n in range(b["samples"]):
            f = _random(ctx, rng, 4, kw)
            k = rng.randint(1, 3)
            xk = ctx.x ** k
            if xk * f != ore_set_witness(f, k) * xk:
                res = Check.failed("x^n f = f' x^n", (str(f), k), n + 1)
                break
        out.append(_entry("ore", "ore.twist-identity",
                          "for delta = 0, x^n (sum a_i x^i) = (sum sigma^n(a_i) x^i) x^n",
                          res, seed))

    if sc.semisimple:
        ring = sc.ring
        res = Check.passed(b["units_samples"])
        for n in range(b["units_samples"]):
            u = ring.random_unit(rng, **kw)
            if not sc.sigma(u).is_unit():
                res = Check.failed("sigma(unit) is a unit", str(u), n + 1)
                break
        out.append(_entry("ore", "ore.sigma-regular",
                          "sigma maps regular elements (units of a semisimple ring) to "
                          "regular elements", res, seed))
    return out


def suite_division(sc, seed):
    ctx = sc.ctx
    if not getattr(ctx.ring, "is_field", False):
        return [_entry("division", "division.plid", "left division needs field coefficients",
                       None, seed)]
    b = sc.budgets
    kw = _coeff_kw(sc)
    rng = random.Random(seed)
    res = Check.passed(b["division_samples"])
    for n in range(b["division_samples"]):
        f = _random(ctx, rng, 4, kw)
        g = _random(ctx, rng, 2, kw)
        if not g:
            g = ctx.one
        q, r = left_divide(f, g)
        if q * g + r != f or (r and r.degree() >= g.degree()):
            res = Check.failed("f = qg + r, deg r < deg g", (str(f), str(g)), n + 1)
            break
    out = [_entry("division", "division.left-divide",
                  "left division with remainder: f = q g + r with deg r < deg g", res, seed)]
    res = Check.passed(b["lclm_samples"])
    for n in range(b["lclm_samples"]):
        f = _random(ctx, rng, 2, kw)
        g = _random(ctx, rng, 2, kw)
        if not f or not g:
            continue
        out_ = left_gcd_lclm(f, g)
        a, bb = out_.lclm_cofactors
        s, t = out_.gcd_cofactors
        if a * f != out_.lclm or bb * g != out_.lclm or not out_.lclm \
                or s * f + t * g != out_.gcd:
            res = Check.failed("a f = b g = lclm", (str(f), str(g)), n + 1)
            break
    out.append(_entry("division", "division.left-ore",
                      "any two nonzero elements have a nonzero common left multiple "
                      "(R[x; sigma, delta] is a left Ore domain)", res, seed))
    return out


def suite_quantization(sc, seed):
    ctx = sc.ctx
    if ctx.q is None:
        return [_entry("quantization", "quantization.q", "no q configured", None, seed)]
    ok = ctx.quantized
    out = [_entry("quantization", "quantization.holds",
                  "delta sigma = q sigma delta with q central and fixed by sigma and delta",
                  ok, seed, {"q": str(ctx.q)})]
    if not ok:
        return out
    S = extend_sigma_to_ore(ctx)
    kw = _coeff_kw(sc)
    rng = random.Random(seed)
    n_s = sc.budgets["samples"]
    res = Check.passed(n_s)
    for n in range(n_s):
        f, g = _random(ctx, rng, 3, kw), _random(ctx, rng, 3, kw)
        if S(f * g) != S(f) * S(g):
            res = Check.failed("sigma_hat multiplicative", (str(f), str(g)), n + 1)
            break
    out.append(_entry("quantization", "quantization.extend-sigma",
                      "sigma extends to R[x; sigma, delta] by sigma(x) = q^-1 x", res, seed,
                      {"sigma_hat(x)": str(S(ctx.x))}))
    return out


def suite_semiprime(sc, seed):
    ctx = sc.ctx
    b = sc.budgets
    out = []
    if sc.kind == "shift":
        w = nilpotency_search(ctx, b["nil_degree"], b["nil_budget"], seed)
        out.append(_entry("semiprime", "semiprime.shift-witness",
                          "R[x; sigma] over the shift ring is not semiprime: e11 x R[x; sigma] "
                          "squares to zero", w is not None and str(w) == "e11*x", seed,
                          {"witness": None if w is None else str(w)}))
        return out
    if not ctx.ring.finite:
        out.append(_entry("semiprime", "semiprime.search",
                          "falsification search needs finite coefficients", None, seed))
        return out
    w = nilpotency_search(ctx, b["nil_degree"], b["nil_budget"], seed)
    out.append(_entry("semiprime", "semiprime.search",
                      "R[x; sigma, delta] is semiprime when R is semiprime left noetherian: "
                      "no p != 0 with p I p = 0 at the search truncation", w is None, seed,
                      {"witness": None if w is None else str(w),
                       "degree_bound": b["nil_degree"], "budget": b["nil_budget"]}))
    bound = b["lc_bound"]
    ring = ctx.ring
    rng = random.Random(seed)
    gensets = [[ctx.const(ring.central_idempotent(0))],
               [ctx.x + ctx.const(ring.matrix_unit(0, 0, 0))],
               [ctx.poly([ring.random(rng), ring.random(rng)])]]
    for i, gens in enumerate(gensets):
        try:
            res = verify_lc_chain(gens, bound, max_shift=1)
        except UnsupportedCoefficients:
            res = None
        out.append(_entry("semiprime", f"semiprime.lc-chain-{i + 1}",
                          "leading-coefficient ideals satisfy sigma^l(I_n) in I_{n+l} and "
                          "I_n in I_{n+1}", res, seed,
                          {"generators": [str(g) for g in gens], "bound": bound}))
    return out


def suite_structure(sc, seed):
    if not sc.semisimple:
        return [_entry("structure", "structure.decompose",
                       "decomposition needs a semisimple coefficient ring", None, seed)]
    b = sc.budgets
    rep = decompose(sc.ring, sc.sigma, sc.delta, sc.name)
    kw = _coeff_kw(sc)
    res = rep.verify(b["iso_samples"], seed, max_degree=3) if not kw else \
        rep.verify(min(b["iso_samples"], 20), seed, max_degree=2)
    out = [_entry("structure", "structure.decompose",
                  "R[x; sigma, delta] is the product of the orbit blocks B_j[x_j; sigma_j, "
                  "delta_j] (conversion maps are mutually inverse ring isomorphisms)", res,
                  seed, {"blocks": [blk.describe() for blk in rep.blocks]})]
    multi_ok = all(blk.delta_is_zero for blk in rep.blocks if blk.kind == "multi")
    out.append(_entry("structure", "structure.multi-delta-zero",
                      "blocks with more than one factor have delta_j = 0", multi_ok, seed))
    trace = udim_ore(sc.ring, sc.sigma, sc.delta, rep)
    out.append(_entry("structure", "structure.udim",
                      "udim R[x; sigma, delta] = udim R", trace.consistent, seed,
                      {"total": trace.total, "udim_R": udim_ss(sc.ring),
                       "blocks": trace.entries}))
    try:
        n, cert = independence_witness(sc.ring, sc.sigma, sc.delta, b["trunc"])
        res = n == trace.total
        ev = {"count": n, "trunc": cert.trunc, "ranks": cert.ranks,
              "total_rank": cert.total_rank}
    except ValueError:
        res, ev = None, {}
    out.append(_entry("structure", "structure.independence",
                      "the left ideals R[x] e_ii form a direct sum of udim R nonzero ideals",
                      res, seed, ev))
    return out


def suite_jordan(sc, seed):
    if not sc.semisimple:
        return [_entry("jordan", "jordan.tower", "towers need a preimage procedure", None,
                       seed)]
    b = sc.budgets
    ring, sigma, ctx = sc.ring, sc.sigma, sc.ctx
    kw = {"max_deg": 2} if not ring.finite else {}
    J = JordanRing(ring, sigma)
    out = []
    ns = b["jordan_samples"]
    res = verify_jordan(J, ns, seed, **kw)
    out.append(_entry("jordan", "jordan.automorphism",
                      "sigma extends to an automorphism sigma_bar of A = union sigma^-n(R); "
                      "sigma_bar^level(a) lies in R", res, seed, {"samples": ns}))
    for n in (2, 3):
        res = verify_power_extension(J, n, min(ns, 200), seed, **kw)
        out.append(_entry("jordan", f"jordan.power-{n}",
                          f"A is also the Jordan extension of R for sigma^{n}", res, seed))
    res = verify_power_tower_iso(J, 2, min(ns, 100), seed, **kw)
    out.append(_entry("jordan", "jordan.universality",
                      "the towers for sigma and sigma^2 are isomorphic over R", res, seed))
    rng = random.Random(seed)
    res = Check.passed()
    count = 0
    for _ in range(b["twist_samples"]):
        u = ring.random_unit(rng, **kw)
        a = J.random(rng, max_level=2, **kw)
        for n in range(1, 5):
            count += 1
            if not verify_inner_twist(J, u, a, n):
                res = Check.failed("inner twist product formula", (str(u), a.pair(), n), count)
                break
        if not res:
            break
    if res:
        res = Check.passed(count)
    out.append(_entry("jordan", "jordan.inner-twist",
                      "(I_u sigma)^n(a) = u^-1 sigma(u^-1)...sigma^(n-1)(u^-1) sigma^n(a) "
                      "sigma^(n-1)(u)...u", res, seed))
    if len(ring.factors) > 1:
        res = verify_product_tower(J, min(ns, 100), seed, **kw)
        out.append(_entry("jordan", "jordan.product",
                          "the tower of a product is the product of the towers of the factors "
                          "under sigma^l", res, seed))
    if ring.is_field and not ring.finite:
        K = ring.factors[0][1]
        res = verify_matrix_lift(JordanRing(K, sigma.taus[0]), 2, 30, seed)
        out.append(_entry("jordan", "jordan.matrix-lift",
                          "M_n(A) is the Jordan extension of M_n(R) for entrywise sigma", res,
                          seed))
    if ctx.delta is not None:
        q = ctx.q if ctx.q is not None else ring.one
        try:
            D = JordanDerivation(J, ctx.delta, q)
        except NotQuantized:
            D = None
        if D is None:
            out.append(_entry("jordan", "jordan.delta-bar",
                              "delta is not q-quantized; no extension to A", None, seed))
        else:
            res = verify_delta_bar(D, min(b["delta_bar_samples"], ns), seed, **kw)
            out.append(_entry("jordan", "jordan.delta-bar",
                              "delta_bar(a) = q^-n sigma^-n(delta(sigma^n(a))) is a well defined "
                              "q-quantized sigma_bar-derivation of A", res, seed))
            out.append(_ore_over_tower(ctx, seed, b["samples"], kw))
    else:
        out.append(_ore_over_tower(ctx, seed, b["samples"], kw))
        L = LaurentRing(ctx)
        rng = random.Random(seed)
        res = Check.passed(b["samples"])
        for n in range(b["samples"]):
            f, g = ctx.random(rng, 3, **_coeff_kw(sc)), ctx.random(rng, 3, **_coeff_kw(sc))
            if laurent_embed(f * g, L) != laurent_embed(f, L) * laurent_embed(g, L):
                res = Check.failed("R[x; sigma] embeds in A[x, x^-1; sigma_bar]",
                                   (str(f), str(g)), n + 1)
                break
        out.append(_entry("jordan", "jordan.laurent",
                          "for delta = 0, R[x; sigma] localized at the powers of x is "
                          "A[x, x^-1; sigma_bar]", res, seed))
    return out


def _ore_over_tower(ctx, seed, samples, kw):
    try:
        J, actx, embed = tower_context(ctx)
        S = extend_sigma_to_ore(actx)
    except (NotQuantized, OrekitError):
        return _entry("jordan", "jordan.ore-tower", "no quantization scalar", None, seed)
    rng = random.Random(seed)
    tkw = {"max_deg": 1} if not ctx.ring.finite else {}
    res = Check.passed(samples)
    for n in range(samples):
        p = _tower_poly(actx, J, rng, tkw)
        level = max((c.level for c in p.c), default=0)
        q = p
        for _ in range(level):
            q = S(q)
        if not lands_in_base(q):
            res = Check.failed("sigma_hat^n(p) in R[x; sigma, delta]", str(p), n + 1)
            break
        f = ctx.random(rng, 2, **({"polynomial": True} if not ctx.ring.finite else {}))
        g = ctx.random(rng, 2, **({"polynomial": True} if not ctx.ring.finite else {}))
        if embed(f * g) != embed(f) * embed(g):
            res = Check.failed("R[x; sigma, delta] is a subring of A[x; sigma_bar, delta_bar]",
                               (str(f), str(g)), n + 1)
            break
    return _entry("jordan", "jordan.ore-tower",
                  "R[x; sigma, delta] in A[x; sigma_bar, delta_bar] is a Jordan extension: "
                  "sigma^n(p) lies in R[x; sigma, delta] for n the largest level", res, seed)


def _tower_poly(actx, J, rng, kw):
    d = rng.randint(0, 2)
    return SkewPoly(actx, [J.random(rng, max_level=2, **kw) for _ in range(d + 1)])


def suite_shift(sc, seed):
    if sc.kind != "shift":
        return [_entry("shift", "shift.certificate", "needs the shift ring", None, seed)]
    b = sc.budgets
    ring = sc.ring
    cert = nilpotent_ideal_certificate(b["k_max"], b["shift_budget"], ring.p, seed)
    out = []
    for name, res in cert.clauses.items():
        out.append(_entry("shift", f"shift.{name}", name, res, seed,
                          {"k_max": b["k_max"], "budget": b["shift_budget"]}))
    rng = random.Random(seed)
    res = Check.passed(b["samples"])
    for n in range(b["samples"]):
        a, c = ring.random_nonzero(rng), ring.random_nonzero(rng)
        try:
            prime_witness(a, c)
        except AssertionError:
            res = Check.failed("a r b != 0", (str(a), str(c)), n + 1)
            break
    out.append(_entry("shift", "shift.prime",
                      "the shift ring is prime: a R b != 0 for nonzero a, b", res, seed))
    out.append(_entry("shift", "shift.not-onto", "the shift is not surjective: e11 has no "
                      "preimage", non_surjectivity_witness(ring, seed=seed), seed))
    res = Check.passed(b["samples"])
    for n in range(b["samples"]):
        a, c = ring.random(rng), ring.random(rng)
        s = sc.sigma
        if s(a * c) != s(a) * s(c) or s(a + c) != s(a) + s(c):
            res = Check.failed("shift is a ring endomorphism", (str(a), str(c)), n + 1)
            break
    out.append(_entry("shift", "shift.endomorphism",
                      "the shift is a unital injective ring endomorphism", res, seed))
    return out


SUITES = {
    "ore": suite_ore,
    "division": suite_division,
    "quantization": suite_quantization,
    "semiprime": suite_semiprime,
    "structure": suite_structure,
    "jordan": suite_jordan,
    "shift": suite_shift,
}


def default_suites(kind):
    if kind == "shift":
        return ["ore", "semiprime", "shift"]
    return ["ore", "division", "quantization", "semiprime", "structure", "jordan"]


def run_suite(sc, suite, seed):
    return SUITES[suite](sc, seed)
