"""Skew polynomial rings R[x; sigma, delta].

Elements are written with coefficients on the left, sum c_i x^i, and the
variable commutes past coefficients by x r = sigma(r) x + delta(r).  The
coefficient ring is any object exposing ``zero``, ``one`` and ``coerce``
whose elements support ``+ - *`` and truthiness; sigma and delta are
callables on those elements (delta may be None for a twist-only ring).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import linalg
from .checks import Check
from .errors import (ContextMismatch, DegreeCapExceeded, DivisionByZeroPoly,
                     NotAUnit, NotQuantized, UnsupportedCoefficients, ValidationError,
                     ZeroInput)
from .scalars import FieldSigmaDeriv, PrimeField, RationalFunctionField, verify_quantization

DEGREE_CAP = 512


class OreContext:
    def __init__(self, ring, sigma, delta=None, q=None, name="", var="x"):
        self.ring = ring
        self.sigma = sigma
        if delta is not None and getattr(delta, "is_zero", False):
            delta = None
        self.delta = delta
        self.q = None if q is None else ring.coerce(q)
        self.name = name
        self.var = var
        self.zero = SkewPoly(self, ())
        self.one = SkewPoly(self, (ring.one,))
        self.x = SkewPoly(self, (ring.zero, ring.one))
        self._quantized = None

    def __repr__(self):
        d = "delta" if self.delta is not None else "0"
        return f"{self.ring}[{self.var}; sigma, {d}]"

    is_field = False
    finite = False

    def coerce(self, v):
        if isinstance(v, SkewPoly):
            if v.ctx is not self:
                raise ContextMismatch("polynomial belongs to another context")
            return v
        return self.const(self.ring.coerce(v))

    def const(self, a):
        return SkewPoly(self, (a,))

    def poly(self, coeffs):
        return SkewPoly(self, tuple(self.ring.coerce(c) for c in coeffs))

    def monomial(self, a, k):
        z = self.ring.zero
        return SkewPoly(self, (z,) * k + (self.ring.coerce(a),))

    def random(self, rng, max_degree=5, **coeff_kw):
        d = rng.randint(0, max_degree)
        return SkewPoly(self, tuple(self.ring.random(rng, **coeff_kw) for _ in range(d + 1)))

    def x_times(self, coeffs):
        """Coefficients of x * (sum coeffs[k] x^k)."""
        ring, sigma, delta = self.ring, self.sigma, self.delta
        z = ring.zero
        out = [z] * (len(coeffs) + 1)
        for k, a in enumerate(coeffs):
            if not a:
                continue
            out[k + 1] = out[k + 1] + sigma(a)
            if delta is not None:
                d = delta(a)
                if d:
                    out[k] = out[k] + d
        return out

    def sigma_power(self, a, n):
        for _ in range(n):
            a = self.sigma(a)
        return a

    @property
    def quantized(self):
        if self._quantized is None:
            self._quantized = self.q is not None and _quantization_holds(self)
        return self._quantized

    def validate(self, samples=20, seed=0):
        """Raise ValidationError if sigma, delta or q fail their invariants."""
        verify = getattr(self.sigma, "verify", None)
        if verify is not None:
            verify().require()
        if self.delta is not None:
            dverify = getattr(self.delta, "verify", None)
            if dverify is not None:
                dverify().require()
            else:
                check_leibniz(self, samples, seed).require()
        if self.q is not None and not self.quantized:
            raise ValidationError("q-quantization", f"q = {self.q}")
        return self


def check_leibniz(ctx, samples=20, seed=0):
    """Sample-based Leibniz check for scalar-field derivations."""
    ring, sigma, delta = ctx.ring, ctx.sigma, ctx.delta
    if delta is None:
        return Check.passed()
    rng = random.Random(seed)
    pool = list(getattr(ring, "generators", lambda: [])())
    pool += [ring.random(rng) for _ in range(samples)]
    n = 0
    for a, b in zip(pool, pool[1:] + pool[:1]):
        n += 1
        if delta(a * b) != delta(a) * b + sigma(a) * delta(b):
            return Check.failed("Leibniz rule", (str(a), str(b)), n)
    if delta(ring.one):
        return Check.failed("delta(1) = 0", None, n)
    return Check.passed(n)


def _quantization_holds(ctx, samples=20, seed=0):
    ring = ctx.ring
    delta = ctx.delta
    if isinstance(ring, (RationalFunctionField, PrimeField)):
        d = delta if delta is not None else FieldSigmaDeriv(ctx.sigma)
        return verify_quantization(ctx.sigma, d, ctx.q, samples, seed)
    q = ctx.q
    sigma = ctx.sigma
    if not q or sigma(q) != q:
        return False
    try:
        q.inverse()
    except (NotAUnit, ZeroDivisionError):
        return False
    if delta is None:
        return True
    if delta(q):
        return False
    rng = random.Random(seed)
    pool = list(getattr(ring, "generators", lambda: [])())
    pool += [ring.random(rng) for _ in range(samples)]
    return all(q * g == g * q and delta(sigma(g)) == q * sigma(delta(g)) for g in pool)


class SkewPoly:
    __slots__ = ("ctx", "c")

    def __init__(self, ctx, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if len(coeffs) > DEGREE_CAP + 1:
            raise DegreeCapExceeded(f"degree {len(coeffs) - 1} exceeds cap {DEGREE_CAP}")
        self.ctx = ctx
        self.c = tuple(coeffs)

    @property
    def coeffs(self):
        return self.c

    def degree(self):
        return len(self.c) - 1

    def lc(self):
        return self.c[-1] if self.c else self.ctx.ring.zero

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.ctx.ring.zero

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    def _same(self, o):
        if isinstance(o, SkewPoly):
            if o.ctx is not self.ctx:
                raise ContextMismatch("operands live in different Ore contexts")
            return o
        return self.ctx.coerce(o)

    def __add__(self, o):
        o = self._same(o)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return SkewPoly(self.ctx, out)

    def __radd__(self, o):
        return self._same(o) + self

    def __neg__(self):
        return SkewPoly(self.ctx, [-v for v in self.c])

    def __sub__(self, o):
        return self + (-self._same(o))

    def __rsub__(self, o):
        return self._same(o) - self

    def __mul__(self, o):
        return skew_mul(self, self._same(o))

    def __rmul__(self, o):
        return skew_mul(self._same(o), self)

    def __pow__(self, n):
        if self.degree() * n > DEGREE_CAP:
            raise DegreeCapExceeded(f"degree {self.degree() * n} exceeds cap {DEGREE_CAP}")
        out = self.ctx.one
        for _ in range(n):
            out = out * self
        return out

    def inverse(self):
        if len(self.c) != 1:
            raise NotAUnit("only constant polynomials can be inverted")
        return self.ctx.const(self.c[0].inverse())

    def __truediv__(self, o):
        return self * self._same(o).inverse()

    def __eq__(self, o):
        if not isinstance(o, SkewPoly):
            try:
                o = self.ctx.coerce(o)
            except (TypeError, ValueError):
                return NotImplemented
        return o.ctx is self.ctx and o.c == self.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"SkewPoly({self})"

    def __str__(self):
        if not self.c:
            return "0"
        var = self.ctx.var
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            s = str(a)
            if i == 0:
                if not _atomic(s) and len(self.c) > 1:
                    s = f"({s})"
                terms.append(s)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if s == "1":
                terms.append(mono)
            else:
                terms.append(f"{s if _atomic(s) else '(' + s + ')'}*{mono}")
        return " + ".join(terms)


def _atomic(s):
    body = s.lstrip()
    if body.isdigit():
        return True
    return not any(ch in body for ch in "+-/ ,")


def skew_mul(f, g):
    """Product in R[x; sigma, delta] by repeated x r = sigma(r) x + delta(r)."""
    if f.ctx is not g.ctx:
        raise ContextMismatch("operands live in different Ore contexts")
    ctx = f.ctx
    if not f.c or not g.c:
        return ctx.zero
    if len(f.c) + len(g.c) - 2 > DEGREE_CAP:
        raise DegreeCapExceeded(f"product degree exceeds cap {DEGREE_CAP}")
    z = ctx.ring.zero
    out = [z] * (len(f.c) + len(g.c))
    cur = list(g.c)
    last = len(f.c) - 1
    for i, a in enumerate(f.c):
        if a:
            for k, c in enumerate(cur):
                if c:
                    out[k] = out[k] + a * c
        if i < last:
            cur = ctx.x_times(cur)
    return SkewPoly(ctx, out)


def skew_add(f, g):
    return f + g


def _require_division(ctx):
    if not getattr(ctx.ring, "is_field", False):
        raise UnsupportedCoefficients(f"{ctx.ring} is not a division ring")


def left_divide(f, g, verify=False):
    """Return (quot, rem) with f = quot*g + rem and deg rem < deg g."""
    if f.ctx is not g.ctx:
        raise ContextMismatch("operands live in different Ore contexts")
    if not g:
        raise DivisionByZeroPoly("division by the zero polynomial")
    ctx = f.ctx
    _require_division(ctx)
    dg = g.degree()
    lcg = g.lc()
    lc_pows = {}
    quot = [ctx.ring.zero] * max(f.degree() - dg + 1, 0)
    rem = f
    while rem and rem.degree() >= dg:
        m = rem.degree() - dg
        if m not in lc_pows:
            lc_pows[m] = ctx.sigma_power(lcg, m).inverse()
        c = rem.lc() * lc_pows[m]
        quot[m] = quot[m] + c
        rem = rem - ctx.monomial(c, m) * g
    q = SkewPoly(ctx, quot)
    if verify:
        if q * g + rem != f or (rem and rem.degree() >= dg):
            raise AssertionError("left_divide postcondition failed")
    return q, rem


@dataclass(frozen=True)
class GcdLclm:
    gcd: SkewPoly
    lclm: SkewPoly
    # gcd = s*f + t*g
    gcd_cofactors: tuple
    # lclm = a*f = b*g
    lclm_cofactors: tuple


def _monic(p):
    return p.ctx.const(p.lc().inverse()) * p if p else p


def left_gcd_lclm(f, g):
    """Generator of Rf + Rg (left Euclid) and of Rf intersect Rg (linear algebra)."""
    if not f or not g:
        raise ZeroInput("gcd/lclm of the zero polynomial")
    ctx = f.ctx
    _require_division(ctx)
    r0, r1 = f, g
    s0, t0, s1, t1 = ctx.one, ctx.zero, ctx.zero, ctx.one
    while r1:
        q, r = left_divide(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    c = ctx.const(r0.lc().inverse())
    d, s, t = c * r0, c * s0, c * t0

    a, b, h = _lclm_linear(f, g)
    if s * f + t * g != d or a * f != h or b * g != h:
        raise AssertionError("gcd/lclm cofactor identities failed")
    return GcdLclm(d, h, (s, t), (a, b))


def _lclm_linear(f, g):
    ctx = f.ctx
    field = ctx.ring
    df, dg = f.degree(), g.degree()
    xf = [f]
    xg = [g]
    for _ in range(dg):
        xf.append(ctx.x * xf[-1])
    for _ in range(df):
        xg.append(ctx.x * xg[-1])
    for D in range(max(df, dg), df + dg + 1):
        na, nb = D - df + 1, D - dg + 1
        cols = [[xf[i][k] for k in range(D + 1)] for i in range(na)]
        cols += [[-xg[j][k] for k in range(D + 1)] for j in range(nb)]
        rows = [list(r) for r in zip(*cols)]
        ker = linalg.nullspace(rows, na + nb, field)
        if not ker:
            continue
        v = ker[0]
        a = SkewPoly(ctx, v[:na])
        b = SkewPoly(ctx, v[na:])
        h = a * f
        c = ctx.const(h.lc().inverse())
        return c * a, c * b, c * h
    raise RuntimeError("no common left multiple up to degree deg f + deg g")


class OreEndo:
    """sum c_i x^i -> sum sigma(c_i) (q^{-1} x)^i on a q-quantized context."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.qinv = ctx.q.inverse()

    def __call__(self, p):
        ctx = p.ctx
        out = []
        scale = ctx.ring.one
        for a in p.c:
            out.append(ctx.sigma(a) * scale)
            scale = scale * self.qinv
        return SkewPoly(ctx, out)


def extend_sigma_to_ore(ctx):
    if ctx.q is None or not ctx.quantized:
        raise NotQuantized("context has no verified quantization scalar q")
    return OreEndo(ctx)


# --------------------------------------------------------------------------
# leading-coefficient ideals and nilpotency search


def _poly_coords(ctx, p, bound):
    ring = ctx.ring
    out = []
    for e in range(bound, -1, -1):
        out.extend(ring.coords(p[e]))
    return out


def _require_finite(ctx):
    if not getattr(ctx.ring, "finite", False):
        raise UnsupportedCoefficients("leading-coefficient ideals need finite coefficients")


def _ideal_span(ctx, gens, bound):
    ring = ctx.ring
    field = ring.scalar_field
    basis = ring.basis()
    xs = [ctx.one]
    for _ in range(bound):
        xs.append(xs[-1] * ctx.x)
    vecs = []
    for g in gens:
        if not g:
            continue
        dg = g.degree()
        for j in range(bound - dg + 1):
            for k in range(bound - dg - j + 1):
                for r in basis:
                    left = ctx.const(r) * xs[j] * g
                    for s in basis:
                        p = left * ctx.const(s) * xs[k]
                        if p:
                            vecs.append(_poly_coords(ctx, p, bound))
    return linalg.rref(vecs, field)


def leading_coeff_module(gens, n, bound):
    """F_p-basis of I_n: leading coefficients of degree-n elements of the
    two-sided ideal generated by ``gens``, truncated to products
    r x^j g s x^k of total degree <= bound.

    A lower approximation of the untruncated I_n, monotone in ``bound``.
    """
    gens = list(gens)
    if not gens:
        return []
    ctx = gens[0].ctx
    _require_finite(ctx)
    if n > bound:
        raise ValueError("n must not exceed bound")
    ring = ctx.ring
    d = ring.dim
    red, piv = _ideal_span(ctx, gens, bound)
    start = (bound - n) * d
    lcs = [row[start:start + d] for row, pc in zip(red, piv) if start <= pc < start + d]
    lc_red, _ = linalg.rref(lcs, ring.scalar_field)
    return [ring.from_coords(v) for v in lc_red]


def _span_contains(ring, basis, elem):
    field = ring.scalar_field
    rows = [ring.coords(b) for b in basis]
    red, piv = linalg.rref(rows, field)
    return linalg.in_span(red, piv, ring.coords(elem))


def verify_lc_chain(gens, bound, max_shift=None):
    """sigma^l(I_n) in I_{n+l} and I_n in I_{n+1}.

    I_n is truncated at ``bound``; the larger side is computed at
    ``bound + l`` so multiplying by x^l stays inside the truncation.
    """
    ctx = gens[0].ctx
    ring = ctx.ring
    max_shift = bound if max_shift is None else max_shift
    base = {n: leading_coeff_module(gens, n, bound) for n in range(bound + 1)}
    checked = 0
    for n in range(bound + 1):
        for l in range(0, max_shift + 1):
            target = leading_coeff_module(gens, n + l, bound + l)
            for a in base[n]:
                checked += 1
                if not _span_contains(ring, target, ctx.sigma_power(a, l)):
                    return Check.failed(f"sigma^{l}(I_{n}) in I_{n + l}", str(a), checked)
        up = leading_coeff_module(gens, n + 1, bound + 1)
        for a in base[n]:
            checked += 1
            if not _span_contains(ring, up, a):
                return Check.failed(f"I_{n} in I_{n + 1}", str(a), checked)
    return Check.passed(checked)


def _spanning(ring, size=None):
    span = getattr(ring, "spanning_set", None)
    if span is not None:
        return span() if size is None else span(size)
    return list(ring.basis()) + [ring.one]


def is_square_zero_witness(p, monomials):
    return all(not (p * m * p) for m in monomials)


def nilpotency_search(ctx, deg_bound, budget, seed=0):
    """Look for p != 0 of degree <= deg_bound with p m p = 0 for all monomials
    m = r x^j (r spanning, j <= deg_bound), i.e. p I p = 0 at truncation.

    Finite coefficient rings are enumerated exhaustively (up to ``budget``
    candidates); otherwise monomials are tried first, then random sums.
    """
    ring = ctx.ring
    span = _spanning(ring)
    xs = [ctx.one]
    for _ in range(deg_bound):
        xs.append(xs[-1] * ctx.x)
    monomials = [ctx.const(r) * xj for r in span for xj in xs]
    for p in itertools.islice(_candidates(ctx, span, deg_bound, seed), budget):
        if p and is_square_zero_witness(p, monomials):
            return p
    return None


def _candidates(ctx, span, deg_bound, seed):
    ring = ctx.ring
    if getattr(ring, "finite", False):
        elems = list(ring.elements())
        for combo in itertools.product(elems, repeat=deg_bound + 1):
            p = SkewPoly(ctx, combo)
            if p:
                yield p
        return
    for j in range(deg_bound + 1):
        for r in span:
            yield ctx.monomial(r, j)
    rng = random.Random(seed)
    while True:
        coeffs = [rng.choice(span) * rng.randrange(1, 4) if rng.random() < 0.5
                  else ring.zero for _ in range(deg_bound + 1)]
        yield SkewPoly(ctx, coeffs)
