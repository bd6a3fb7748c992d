"""Jordan extensions A = union of sigma^{-n}(R) for an injective sigma.

An element of A is stored as a pair (n, r) meaning sigma^{-n}(r).  Pairs are
kept canonical: n == 0, or r has no preimage under sigma.  Arithmetic lifts
both operands to a common level; sigma extends to the automorphism
sigma_bar(n, r) = (n, sigma(r)) with inverse (n, r) -> (n + 1, r).

The base ring needs ``zero``, ``one``, ``coerce`` and ``random``; sigma must
be callable and expose ``preimage`` returning None outside its image.
"""

from __future__ import annotations

import math
import random

from .checks import Check
from .errors import LevelOverflow, NonzeroDelta, NotQuantized
from .ore import OreContext, SkewPoly
from .semisimple import SSElem, SSEndo, SSRing, orbits

MAX_LEVEL = 64


class JordanRing:
    def __init__(self, base, sigma, preimage=None, name=""):
        self.base = base
        self.sigma = sigma
        # an explicit preimage procedure is only used by negative controls
        self._preimage = preimage if preimage is not None else sigma.preimage
        self.name = name
        self.zero = TowerElem(self, 0, base.zero)
        self.one = TowerElem(self, 0, base.one)

    def __repr__(self):
        return f"Jordan({self.base})"

    @property
    def is_field(self):
        return getattr(self.base, "is_field", False)

    finite = False

    def preimage(self, r):
        return self._preimage(r)

    def normalize(self, n, r):
        if n > MAX_LEVEL:
            raise LevelOverflow(f"level {n} exceeds {MAX_LEVEL}")
        while n > 0 and r:
            g = self._preimage(r)
            if g is None:
                break
            n, r = n - 1, g
        if not r:
            n = 0
        return TowerElem(self, n, r)

    def elem(self, n, r):
        return self.normalize(n, self.base.coerce(r))

    def embed(self, r):
        return TowerElem(self, 0, self.base.coerce(r))

    def coerce(self, v):
        if isinstance(v, TowerElem):
            if v.J is not self:
                raise TypeError("tower element of another Jordan ring")
            return v
        if isinstance(v, tuple) and len(v) == 2 and isinstance(v[0], int):
            return self.elem(*v)
        return self.embed(v)

    def sigma_power(self, r, k):
        for _ in range(k):
            r = self.sigma(r)
        return r

    def lift(self, a, m):
        """Body of ``a`` rewritten at level m >= a.level."""
        return self.sigma_power(a.body, m - a.level)

    def sigma_bar(self, a):
        return self.normalize(a.level, self.sigma(a.body))

    def sigma_bar_inv(self, a):
        if not a.body:
            return a
        return self.normalize(a.level + 1, a.body)

    def sigma_bar_power(self, a, k):
        step = self.sigma_bar if k >= 0 else self.sigma_bar_inv
        for _ in range(abs(k)):
            a = step(a)
        return a

    def random(self, rng, max_level=3, **kw):
        return self.normalize(rng.randint(0, max_level), self.base.random(rng, **kw))

    def generators(self):
        gens = [self.one]
        base_gens = getattr(self.base, "generators", lambda: [])()
        for g in base_gens:
            gens.append(self.embed(g))
            gens.append(self.sigma_bar_inv(self.embed(g)))
        return gens


class TowerElem:
    __slots__ = ("J", "level", "body")

    def __init__(self, J, level, body):
        self.J = J
        self.level = level
        self.body = body

    def _same(self, o):
        if isinstance(o, TowerElem):
            if o.J is not self.J:
                raise TypeError("operands live in different Jordan rings")
            return o
        return self.J.coerce(o)

    def _aligned(self, o):
        m = max(self.level, o.level)
        return m, self.J.lift(self, m), self.J.lift(o, m)

    def __add__(self, o):
        o = self._same(o)
        m, a, b = self._aligned(o)
        return self.J.normalize(m, a + b)

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(self.J, self.level, -self.body)

    def __sub__(self, o):
        return self + (-self._same(o))

    def __rsub__(self, o):
        return self._same(o) - self

    def __mul__(self, o):
        o = self._same(o)
        m, a, b = self._aligned(o)
        return self.J.normalize(m, a * b)

    def __rmul__(self, o):
        return self._same(o) * self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.J.one
        for _ in range(n):
            out = out * self
        return out

    def inverse(self):
        # sigma^{-n} is a ring map, so it commutes with inversion
        return self.J.normalize(self.level, self.body.inverse())

    def __truediv__(self, o):
        return self * self._same(o).inverse()

    def __bool__(self):
        return bool(self.body)

    def __eq__(self, o):
        if not isinstance(o, TowerElem):
            try:
                o = self.J.coerce(o)
            except (TypeError, ValueError):
                return NotImplemented
        return self.level == o.level and self.body == o.body

    def __hash__(self):
        return hash((self.level, self.body))

    def same_value(self, o):
        """Equality decided by lifting, independent of canonical forms."""
        m, a, b = self._aligned(o)
        return a == b

    def pair(self):
        return f"({self.level},{self.body})"

    def __repr__(self):
        return f"TowerElem{self.pair()}"

    def __str__(self):
        if self.level == 0:
            return str(self.body)
        return f"sigma^-{self.level}({self.body})"


def tower_normalize(a):
    return a.J.normalize(a.level, a.body)


def tower_mul(a, b):
    return a * b


def tower_add(a, b):
    return a + b


def sigma_bar(a):
    return a.J.sigma_bar(a)


def sigma_bar_inv(a):
    return a.J.sigma_bar_inv(a)


def is_canonical(a):
    J = a.J
    if a.level == 0:
        return True
    return J.preimage(a.body) is None


def _samples(J, samples, seed, **kw):
    rng = random.Random(seed)
    return [J.random(rng, **kw) for _ in range(samples)]


def verify_jordan(J, samples=100, seed=0, **kw):
    """Sampled checks that sigma_bar is an automorphism of A extending sigma,
    that every element is pulled into R by sigma_bar^level, and that the
    preimage procedure yields sound, unique canonical forms."""
    pool = _samples(J, samples, seed, **kw)
    sigma = J.sigma
    n = 0
    for a, b in zip(pool, pool[1:] + pool[:1]):
        n += 1
        g = J.preimage(a.body) if a.level else None
        if g is not None and sigma(g) != a.body:
            return Check.failed("preimage is sound", a.pair(), n)
        if not is_canonical(a) or tower_normalize(a) != a:
            return Check.failed("canonical form", a.pair(), n)
        # the same value written one level higher must collapse back
        if a and J.normalize(a.level + 1, sigma(a.body)) != a:
            return Check.failed("canonical form unique", a.pair(), n)
        if J.sigma_bar(J.sigma_bar_inv(a)) != a or J.sigma_bar_inv(J.sigma_bar(a)) != a:
            return Check.failed("sigma_bar o sigma_bar_inv = id", a.pair(), n)
        if J.sigma_bar(a + b) != J.sigma_bar(a) + J.sigma_bar(b):
            return Check.failed("sigma_bar additive", (a.pair(), b.pair()), n)
        if J.sigma_bar(a * b) != J.sigma_bar(a) * J.sigma_bar(b):
            return Check.failed("sigma_bar multiplicative", (a.pair(), b.pair()), n)
        if J.sigma_bar_power(a, a.level).level != 0:
            return Check.failed("sigma_bar^level(a) in R", a.pair(), n)
        r = a.body
        if J.sigma_bar(J.embed(r)) != J.embed(sigma(r)):
            return Check.failed("sigma_bar restricted to R is sigma", str(r), n)
    return Check.passed(n)


def verify_inner_twist(J, u, a, n):
    """Compare (I_u sigma_bar)^n(a), computed step by step, with
    u^{-1} sigma(u^{-1}) ... sigma^{n-1}(u^{-1}) sigma^n(a) sigma^{n-1}(u) ... u."""
    u = J.embed(u)
    uinv = u.inverse()
    b = a
    for _ in range(n):
        b = uinv * J.sigma_bar(b) * u
    left, right = J.one, J.one
    for i in range(n):
        left = left * J.sigma_bar_power(uinv, i)
        right = J.sigma_bar_power(u, i) * right
    closed = left * J.sigma_bar_power(a, n) * right
    if b != closed:
        return Check.failed("inner twist product formula", (a.pair(), n), 1)
    if J.sigma_bar_power(a, n).level == 0 and b.level != 0:
        return Check.failed("(I_u sigma)^n(a) in R", (a.pair(), n), 1)
    return Check.passed(1)


def power_exponent(J, a, n):
    """Least m with (sigma_bar^n)^m(a) in R."""
    m = 0
    while a.level:
        a = J.sigma_bar_power(a, n)
        m += 1
    return m


def verify_power_extension(J, n, samples=100, seed=0, **kw):
    """A, with sigma_bar^n, is also the Jordan extension for sigma^n."""
    if n < 1:
        raise ValueError("n must be positive")
    checked = 0
    for a in _samples(J, samples, seed, **kw):
        checked += 1
        m = power_exponent(J, a, n)
        if m > math.ceil(a.level / n) + 1:
            return Check.failed("(sigma^n)^m(a) in R for small m", (a.pair(), m), checked)
        if J.sigma_bar_power(J.sigma_bar_power(a, n), -n) != a:
            return Check.failed("sigma_bar^n injective", a.pair(), checked)
        if J.sigma_bar_power(J.sigma_bar_power(a, -n), n) != a:
            return Check.failed("sigma_bar^n surjective", a.pair(), checked)
    return Check.passed(checked)


def power_tower(J, n):
    """The Jordan ring of (R, sigma^n) and its embedding into J."""
    sigma = J.sigma
    power = sigma.power(n)
    Jn = JordanRing(J.base, power)

    def to_J(a):
        return J.normalize(n * a.level, a.body)

    def from_J(b):
        m = -(-b.level // n)
        return Jn.normalize(m, J.sigma_power(b.body, n * m - b.level))

    return Jn, to_J, from_J


def verify_power_tower_iso(J, n, samples=100, seed=0, **kw):
    """The tower for sigma^n maps onto the tower for sigma by a ring
    isomorphism that is the identity on R and intertwines the extensions."""
    Jn, to_J, from_J = power_tower(J, n)
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        a, b = Jn.random(rng, **kw), Jn.random(rng, **kw)
        c = J.random(rng, **kw)
        checked += 1
        if a.level == 0 and to_J(a) != J.embed(a.body):
            return Check.failed("identity on R", a.pair(), checked)
        if to_J(a * b) != to_J(a) * to_J(b) or to_J(a + b) != to_J(a) + to_J(b):
            return Check.failed("ring homomorphism", (a.pair(), b.pair()), checked)
        if to_J(Jn.sigma_bar(a)) != J.sigma_bar_power(to_J(a), n):
            return Check.failed("intertwines sigma_bar", a.pair(), checked)
        if from_J(to_J(a)) != a or to_J(from_J(c)) != c:
            return Check.failed("bijective", (a.pair(), c.pair()), checked)
    return Check.passed(checked)


# --------------------------------------------------------------------------
# matrix lifts and products


def matrix_tower(J, n):
    """The Jordan ring of M_n(R) under entrywise sigma, with the maps
    M_n(A) -> tower and back.  Needs R = F_p(t) or F_p and sigma a FieldEndo."""
    K = J.base
    ring = SSRing([(n, K)])
    sigma_n = SSEndo(ring, taus=[J.sigma])
    Jm = JordanRing(ring, sigma_n)

    def to_tower(rows):
        m = max(a.level for row in rows for a in row)
        body = [[J.lift(a, m) for a in row] for row in rows]
        return Jm.normalize(m, ring.from_literal([body]))

    def from_tower(a):
        mat = a.body.mats[0]
        return [[J.normalize(a.level, v) for v in row] for row in mat.rows]

    return Jm, to_tower, from_tower


def _mat_mul(rows_a, rows_b, zero):
    n = len(rows_a)
    return [[sum((rows_a[i][k] * rows_b[k][j] for k in range(n)), zero)
             for j in range(n)] for i in range(n)]


def verify_matrix_lift(J, n, samples=50, seed=0, **kw):
    """M_n(A) is the Jordan extension of M_n(R): the entrywise comparison map
    is a bijective ring homomorphism carrying M_n(sigma_bar) to the tower's
    sigma_bar."""
    Jm, to_tower, from_tower = matrix_tower(J, n)
    rng = random.Random(seed)
    checked = 0

    def rand():
        return [[J.random(rng, **kw) for _ in range(n)] for _ in range(n)]

    for _ in range(samples):
        a, b = rand(), rand()
        checked += 1
        ta, tb = to_tower(a), to_tower(b)
        if from_tower(ta) != a:
            return Check.failed("bijective", None, checked)
        if to_tower(_mat_mul(a, b, J.zero)) != ta * tb:
            return Check.failed("multiplicative", None, checked)
        s = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]
        if to_tower(s) != ta + tb:
            return Check.failed("additive", None, checked)
        sa = [[J.sigma_bar(x) for x in row] for row in a]
        if to_tower(sa) != Jm.sigma_bar(ta):
            return Check.failed("entrywise sigma_bar", None, checked)
    return Check.passed(checked)


def product_towers(J):
    """For R a product permuted by sigma with rho of order l, the Jordan
    rings A_i of (R_i, sigma^l restricted to R_i) and the maps between A and
    the product of the A_i."""
    orb = orbits(J.sigma)
    l = orb.order
    ring = J.base
    parts = [JordanRing(ring.block([i]), res) for i, res in enumerate(orb.restrictions)]

    def split(a):
        N = -(-a.level // l) * l
        body = J.sigma_power(a.body, N - a.level)
        return tuple(Ji.normalize(N // l, ring.project([i], body))
                     for i, Ji in enumerate(parts))

    def join(elems):
        M = max(e.level for e in elems)
        mats = []
        for Ji, e in zip(parts, elems):
            mats.append(Ji.lift(e, M).mats[0])
        return J.normalize(l * M, SSElem(ring, tuple(mats)))

    return parts, split, join, l


def verify_product_tower(J, samples=100, seed=0, **kw):
    """A is the product of the Jordan extensions A_i of the factors under
    sigma^l; checked by a sampled ring isomorphism."""
    parts, split, join, l = product_towers(J)
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        a, b = J.random(rng, **kw), J.random(rng, **kw)
        checked += 1
        sa, sb = split(a), split(b)
        if join(sa) != a:
            return Check.failed("bijective", a.pair(), checked)
        if split(a * b) != tuple(x * y for x, y in zip(sa, sb)):
            return Check.failed("multiplicative", (a.pair(), b.pair()), checked)
        if split(a + b) != tuple(x + y for x, y in zip(sa, sb)):
            return Check.failed("additive", (a.pair(), b.pair()), checked)
        sl = J.sigma_bar_power(a, l)
        if split(sl) != tuple(Ji.sigma_bar(x) for Ji, x in zip(parts, sa)):
            return Check.failed("sigma_bar^l acts factorwise", a.pair(), checked)
    return Check.passed(checked)


# --------------------------------------------------------------------------
# the extended derivation


class JordanDerivation:
    """delta_bar(a) = q^{-n} sigma_bar^{-n}(delta(sigma_bar^n(a))), n >= level(a).

    Requires delta(sigma(r)) = q sigma(delta(r)) with q central and fixed
    by sigma and delta.
    """

    def __init__(self, J, delta, q=1):
        ctx = OreContext(J.base, J.sigma, delta, q)
        if not ctx.quantized:
            raise NotQuantized(f"delta is not q-quantized for q = {q}")
        self.J = J
        self.delta = delta
        self.q = J.base.coerce(q)
        self.qinv = self.q.inverse()

    @property
    def is_zero(self):
        return self.delta is None or getattr(self.delta, "is_zero", False)

    def apply(self, a, n=None):
        J = self.J
        n = a.level if n is None else n
        if n < a.level:
            raise ValueError("n must be at least the level")
        r = J.lift(a, n)
        d = self.delta(r) * self.qinv ** n
        return J.normalize(n, d)

    __call__ = apply


def extend_delta_bar(J, delta, q, a):
    return JordanDerivation(J, delta, q)(a)


def verify_delta_bar(D, samples=100, seed=0, extra_levels=1, **kw):
    """delta_bar agrees with delta on R, does not depend on the level used,
    and satisfies Leibniz with sigma_bar."""
    J = D.J
    pool = _samples(J, samples, seed, **kw)
    checked = 0
    for a, b in zip(pool, pool[1:] + pool[:1]):
        checked += 1
        da = D(a)
        for k in range(1, extra_levels + 1):
            if D.apply(a, a.level + k) != da:
                return Check.failed("independent of the level", a.pair(), checked)
        if D(J.embed(a.body)) != J.embed(D.delta(a.body)):
            return Check.failed("delta_bar restricted to R is delta", str(a.body), checked)
        if D(a * b) != da * b + J.sigma_bar(a) * D(b):
            return Check.failed("Leibniz rule", (a.pair(), b.pair()), checked)
    return Check.passed(checked)


def tower_context(ctx, name=""):
    """A[x; sigma_bar, delta_bar] for a context over a field or semisimple R,
    together with the coefficientwise embedding of R[x; sigma, delta]."""
    J = JordanRing(ctx.ring, ctx.sigma)
    delta = None
    q = ctx.q if ctx.q is not None else ctx.ring.one
    if ctx.delta is not None:
        delta = JordanDerivation(J, ctx.delta, q)
    actx = OreContext(J, J.sigma_bar, delta, J.embed(q), name=name or f"{ctx.name}-tower",
                      var=ctx.var)

    def embed(p):
        return SkewPoly(actx, [J.embed(c) for c in p.c])

    return J, actx, embed


def lands_in_base(p):
    return all(c.level == 0 for c in p.c)


# --------------------------------------------------------------------------
# skew Laurent polynomials over A


class LaurentRing:
    """A[x, x^{-1}; sigma_bar] for a twist-only context R[x; sigma]."""

    def __init__(self, ctx):
        if ctx.delta is not None:
            raise NonzeroDelta("skew Laurent rings need delta = 0")
        self.ctx = ctx
        self.J = JordanRing(ctx.ring, ctx.sigma)
        self.zero = SkewLaurent(self, {})
        self.one = SkewLaurent(self, {0: self.J.one})
        self.x = SkewLaurent(self, {1: self.J.one})
        self.xinv = SkewLaurent(self, {-1: self.J.one})

    def monomial(self, a, i):
        return SkewLaurent(self, {i: self.J.coerce(a)})


class SkewLaurent:
    __slots__ = ("L", "terms")

    def __init__(self, L, terms):
        self.L = L
        self.terms = {i: a for i, a in terms.items() if a}

    def __add__(self, o):
        out = dict(self.terms)
        for i, a in o.terms.items():
            out[i] = out[i] + a if i in out else a
        return SkewLaurent(self.L, out)

    def __neg__(self):
        return SkewLaurent(self.L, {i: -a for i, a in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        J = self.L.J
        out = {}
        for i, a in self.terms.items():
            for j, b in o.terms.items():
                c = a * J.sigma_bar_power(b, i)
                out[i + j] = out[i + j] + c if i + j in out else c
        return SkewLaurent(self.L, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, o):
        return isinstance(o, SkewLaurent) and o.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[i]})*x^{i}" for i in sorted(self.terms, reverse=True))


def laurent_embed(f, L=None):
    if f.ctx.delta is not None:
        raise NonzeroDelta("laurent_embed needs delta = 0")
    L = LaurentRing(f.ctx) if L is None else L
    return SkewLaurent(L, {i: L.J.embed(c) for i, c in enumerate(f.c)})


def ore_set_witness(f, n):
    """f' = sum sigma^n(a_i) x^i, so that x^n f = f' x^n."""
    ctx = f.ctx
    if ctx.delta is not None:
        raise NonzeroDelta("the powers of x form an Ore set only for delta = 0 here")
    return SkewPoly(ctx, [ctx.sigma_power(a, n) for a in f.c])


def left_fraction(L, n, f):
    """The element x^{-n} f of the localization."""
    return L.monomial(L.J.one, -n) * laurent_embed(f, L)
