"""Exact scalars: the prime field F_p, polynomials and rational functions over it,
the field endomorphisms t -> c*t^k of F_p(t) and their sigma-derivations.

Polynomials are stored sparsely as ``{exponent: coefficient}`` with nonzero
coefficients in ``1..p-1``.  Iterating t -> t^2 produces very sparse
polynomials of large degree, which a dense vector would handle badly.
Degrees above ``DEGREE_CAP`` raise instead of being truncated.
"""

from __future__ import annotations

import functools
import random

from .errors import DegreeCapExceeded, NotAUnit, ZeroDenominator

DEGREE_CAP = 4096
MAX_PRIME = 2**31


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _sym(c, p):
    # symmetric representative, used for rendering only
    return c - p if c > p // 2 else c


# --------------------------------------------------------------------------
# F_p


class PrimeField:
    is_field = True
    finite = True

    def __init__(self, p):
        if not (isinstance(p, int) and is_prime(p) and p <= MAX_PRIME):
            raise ValueError(f"modulus must be a prime <= 2^31, got {p!r}")
        self.p = p
        self.zero = Fp(0, self)
        self.one = Fp(1, self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F_{self.p}"

    @property
    def char(self):
        return self.p

    @property
    def scalar_field(self):
        return self

    def __call__(self, v):
        return self.coerce(v)

    def coerce(self, v):
        if isinstance(v, Fp):
            if v.field != self:
                raise TypeError(f"element of {v.field} is not in {self}")
            return v
        if isinstance(v, int):
            return Fp(v, self)
        raise TypeError(f"cannot coerce {v!r} into {self}")

    def elements(self):
        return [Fp(i, self) for i in range(self.p)]

    def basis(self):
        return [self.one]

    def generators(self):
        return [self.one]

    def coords(self, a):
        return [a]

    def from_coords(self, v):
        return v[0]

    @property
    def dim(self):
        return 1

    def random(self, rng, nonzero=False, **_):
        # options meant for F_p(t) (degrees, polynomial) do not apply here
        lo = 1 if nonzero else 0
        return Fp(rng.randrange(lo, self.p), self)


@functools.cache
def prime_field(p):
    return PrimeField(p)


class Fp:
    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v % field.p
        self.field = field

    @property
    def p(self):
        return self.field.p

    def _other(self, o):
        if isinstance(o, Fp):
            return o.v
        if isinstance(o, int):
            return o
        return None

    def __add__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Fp(self.v + w, self.field)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Fp(self.v - w, self.field)

    def __rsub__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Fp(w - self.v, self.field)

    def __mul__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Fp(self.v * w, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.field)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.v, n, self.field.p), self.field)

    def inverse(self):
        if self.v == 0:
            raise NotAUnit("0 is not invertible in F_p")
        return Fp(pow(self.v, -1, self.field.p), self.field)

    def __truediv__(self, o):
        if isinstance(o, int):
            o = Fp(o, self.field)
        if not isinstance(o, Fp):
            return NotImplemented
        return self * o.inverse()

    def __bool__(self):
        return self.v != 0

    def __eq__(self, o):
        if isinstance(o, Fp):
            return self.v == o.v and self.field.p == o.field.p
        if isinstance(o, int):
            return (self.v - o) % self.field.p == 0
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.field.p})"

    def __str__(self):
        return str(_sym(self.v, self.field.p))


# --------------------------------------------------------------------------
# F_p[t], sparse


class Poly:
    """Polynomial over F_p in the variable t; immutable."""

    __slots__ = ("terms", "p")

    def __init__(self, terms, p, _clean=False):
        if not _clean:
            terms = {e: c % p for e, c in terms.items() if c % p}
        self.terms = terms
        self.p = p

    @classmethod
    def zero(cls, p):
        return cls({}, p, True)

    @classmethod
    def const(cls, c, p):
        return cls({0: c}, p)

    @classmethod
    def monomial(cls, c, e, p):
        if e > DEGREE_CAP:
            raise DegreeCapExceeded(f"degree {e} exceeds cap {DEGREE_CAP}")
        return cls({e: c}, p)

    @classmethod
    def from_dense(cls, coeffs, p):
        """``coeffs[i]`` is the coefficient of t^i."""
        return cls(dict(enumerate(coeffs)), p)

    def degree(self):
        return max(self.terms) if self.terms else -1

    def low_degree(self):
        return min(self.terms) if self.terms else -1

    def lc(self):
        return self.terms[max(self.terms)] if self.terms else 0

    def is_monomial(self):
        return len(self.terms) == 1

    def is_one(self):
        return self.terms == {0: 1}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, o):
        return isinstance(o, Poly) and o.p == self.p and o.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, o):
        p = self.p
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = (out.get(e, 0) + c) % p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(out, p, True)

    def __neg__(self):
        p = self.p
        return Poly({e: p - c for e, c in self.terms.items()}, p, True)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            return self.scale(o)
        a, b = self.terms, o.terms
        if not a or not b:
            return Poly.zero(self.p)
        if max(a) + max(b) > DEGREE_CAP:
            raise DegreeCapExceeded(
                f"product degree {max(a) + max(b)} exceeds cap {DEGREE_CAP}")
        if len(a) < len(b):
            a, b = b, a
        p = self.p
        out = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = e1 + e2
                out[e] = get(e, 0) + c1 * c2
        return Poly(out, p)

    def scale(self, c):
        c %= self.p
        if c == 0:
            return Poly.zero(self.p)
        p = self.p
        return Poly({e: v * c % p for e, v in self.terms.items()}, p, True)

    def shift(self, k):
        """Multiply by t^k."""
        if self.terms and max(self.terms) + k > DEGREE_CAP:
            raise DegreeCapExceeded(f"degree exceeds cap {DEGREE_CAP}")
        return Poly({e + k: c for e, c in self.terms.items()}, self.p, True)

    def monic(self):
        if not self.terms:
            return self
        return self.scale(pow(self.lc(), -1, self.p))

    def divmod(self, d):
        if not d.terms:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        dd = max(d.terms)
        inv = pow(d.terms[dd], -1, p)
        rest = [(e, v) for e, v in d.terms.items() if e != dd]
        r = dict(self.terms)
        q = {}
        while r:
            top = max(r)
            if top < dd:
                break
            c = r.pop(top) * inv % p
            s = top - dd
            q[s] = c
            for e, v in rest:
                k = e + s
                w = (r.get(k, 0) - c * v) % p
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
        return Poly(q, p, True), Poly(r, p, True)

    def __floordiv__(self, d):
        return self.divmod(d)[0]

    def __mod__(self, d):
        return self.divmod(d)[1]

    def compose_monomial(self, c, k):
        """Return self(c * t^k)."""
        if self.terms and max(self.terms) * k > DEGREE_CAP:
            raise DegreeCapExceeded(
                f"substitution degree {max(self.terms) * k} exceeds cap {DEGREE_CAP}")
        p = self.p
        c %= p
        if c == 1:
            return Poly({e * k: v for e, v in self.terms.items()}, p, True)
        return Poly({e * k: v * pow(c, e, p) for e, v in self.terms.items()}, p)

    def exponents_divisible_by(self, k):
        return all(e % k == 0 for e in self.terms)

    def contract_exponents(self, k):
        return Poly({e // k: v for e, v in self.terms.items()}, self.p, True)

    def derivative(self):
        p = self.p
        return Poly({e - 1: e * v for e, v in self.terms.items() if e}, p)

    def __call__(self, x):
        """Evaluate at an F_p value."""
        p = self.p
        return sum(v * pow(int(x), e, p) for e, v in self.terms.items()) % p

    def __repr__(self):
        return f"Poly({self}, p={self.p})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, reverse=True):
            c = _sym(self.terms[e], self.p)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += sign + body
        return s


def poly_gcd(a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    # gcd with c*t^e is a power of t
    if a.is_monomial():
        return Poly({min(a.degree(), b.low_degree()): 1}, a.p, True)
    if b.is_monomial():
        return Poly({min(b.degree(), a.low_degree()): 1}, a.p, True)
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


# --------------------------------------------------------------------------
# F_p(t)


class RationalFunctionField:
    is_field = True
    finite = False

    def __init__(self, p):
        self.base = prime_field(p)
        self.p = p
        self.zero = RatFn(Poly.zero(p), Poly.const(1, p), self, True)
        self.one = RatFn(Poly.const(1, p), Poly.const(1, p), self, True)
        self.t = RatFn(Poly({1: 1}, p, True), Poly.const(1, p), self, True)

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp(t)", self.p))

    def __repr__(self):
        return f"F_{self.p}(t)"

    @property
    def char(self):
        return self.p

    @property
    def scalar_field(self):
        return self

    def __call__(self, num, den=None):
        if den is None:
            return self.coerce(num)
        return ratfn_normalize(self._poly(num), self._poly(den), self)

    def _poly(self, v):
        if isinstance(v, Poly):
            return v
        if isinstance(v, (int, Fp)):
            return Poly.const(int(v), self.p)
        if isinstance(v, (list, tuple)):
            return Poly.from_dense([int(c) for c in v], self.p)
        raise TypeError(f"cannot read {v!r} as a polynomial")

    def coerce(self, v):
        if isinstance(v, RatFn):
            if v.field != self:
                raise TypeError(f"element of {v.field} is not in {self}")
            return v
        if isinstance(v, (int, Fp)):
            return RatFn(Poly.const(int(v), self.p), Poly.const(1, self.p), self, True)
        if isinstance(v, Poly):
            return RatFn(v, Poly.const(1, self.p), self, True)
        raise TypeError(f"cannot coerce {v!r} into {self}")

    def basis(self):
        return [self.one]

    def generators(self):
        return [self.one, self.t]

    def coords(self, a):
        return [a]

    def from_coords(self, v):
        return v[0]

    @property
    def dim(self):
        return 1

    def random_poly(self, rng, max_deg=2):
        d = rng.randint(0, max_deg)
        return Poly({i: rng.randrange(self.p) for i in range(d + 1)}, self.p)

    def random(self, rng, max_deg=2, polynomial=False, nonzero=False):
        while True:
            num = self.random_poly(rng, max_deg)
            if polynomial:
                den = Poly.const(1, self.p)
            else:
                den = self.random_poly(rng, max_deg)
                if not den:
                    continue
            f = ratfn_normalize(num, den, self)
            if nonzero and not f:
                continue
            return f


def ratfn_normalize(num, den, field=None):
    """Reduce ``num/den`` to lowest terms with a monic denominator."""
    if not den:
        raise ZeroDenominator("denominator is zero")
    if field is None:
        field = RationalFunctionField(num.p)
    p = num.p
    if not num:
        return RatFn(Poly.zero(p), Poly.const(1, p), field, True)
    if den.degree() == 0:
        inv = pow(den.lc(), -1, p)
        return RatFn(num.scale(inv), Poly.const(1, p), field, True)
    g = poly_gcd(num, den)
    if not g.is_one():
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
    inv = pow(den.lc(), -1, p)
    return RatFn(num.scale(inv), den.scale(inv), field, True)


class RatFn:
    """Reduced fraction num/den over F_p; zero is 0/1."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field, _reduced=False):
        if not _reduced:
            r = ratfn_normalize(num, den, field)
            num, den = r.num, r.den
        self.num = num
        self.den = den
        self.field = field

    @property
    def p(self):
        return self.field.p

    def is_polynomial(self):
        return self.den.degree() == 0

    def _lift(self, o):
        if isinstance(o, RatFn):
            return o
        if isinstance(o, (int, Fp)):
            return self.field.coerce(o)
        return None

    def __add__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.is_polynomial():
                return RatFn(self.num + o.num, self.den, self.field, True)
            return ratfn_normalize(self.num + o.num, self.den, self.field)
        return ratfn_normalize(self.num * o.den + o.num * self.den,
                               self.den * o.den, self.field)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, self.field, True)

    def __sub__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        if self.is_polynomial() and o.is_polynomial():
            return RatFn(self.num * o.num, self.den, self.field, True)
        if not self.num or not o.num:
            return self.field.zero
        # cross-cancel so the result is reduced without a full gcd of products
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1, d2 = (self.num // g1, o.den // g1) if not g1.is_one() else (self.num, o.den)
        n2, d1 = (o.num // g2, self.den // g2) if not g2.is_one() else (o.num, self.den)
        num, den = n1 * n2, d1 * d2
        inv = pow(den.lc(), -1, self.p)
        return RatFn(num.scale(inv), den.scale(inv), self.field, True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise NotAUnit("0 is not invertible in F_p(t)")
        inv = pow(self.num.lc(), -1, self.p)
        return RatFn(self.den.scale(inv), self.num.scale(inv), self.field, True)

    def __truediv__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, o):
        if isinstance(o, (int, Fp)):
            o = self.field.coerce(o)
        if not isinstance(o, RatFn):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFn({self})"

    def __str__(self):
        n = str(self.num)
        if self.is_polynomial():
            return n
        d = str(self.den)
        if len(self.num.terms) > 1:
            n = f"({n})"
        if len(self.den.terms) > 1 or self.den.lc() != 1:
            d = f"({d})"
        return f"{n}/{d}"


# --------------------------------------------------------------------------
# endomorphisms and sigma-derivations


class FieldEndo:
    """The endomorphism f(t) -> f(c * t^k); the identity on F_p.

    Always injective, surjective exactly when k == 1.
    """

    def __init__(self, field, c=1, k=1):
        c = int(c) % field.char
        if c == 0:
            raise ValueError("c must be nonzero")
        if k < 1:
            raise ValueError("k must be a positive integer")
        if isinstance(field, PrimeField) and (c, k) != (1, 1):
            raise ValueError("F_p admits only the identity endomorphism")
        self.field = field
        self.c = c
        self.k = k

    def __eq__(self, o):
        return (isinstance(o, FieldEndo) and o.field == self.field
                and (o.c, o.k) == (self.c, self.k))

    def __hash__(self):
        return hash((self.field, self.c, self.k))

    def __repr__(self):
        return f"FieldEndo(c={self.c}, k={self.k})"

    @property
    def is_identity(self):
        return self.c == 1 and self.k == 1

    @property
    def is_surjective(self):
        return self.k == 1

    @property
    def is_injective(self):
        return True

    def __call__(self, f):
        if self.is_identity:
            return f
        num = f.num.compose_monomial(self.c, self.k)
        den = f.den.compose_monomial(self.c, self.k)
        # substitution keeps num and den coprime; only rescale den to monic
        inv = pow(den.lc(), -1, self.field.p)
        return RatFn(num.scale(inv), den.scale(inv), self.field, True)

    def compose(self, other):
        """Return self o other."""
        # other(t) = c2 t^k2, then self gives c2 (c1 t^k1)^k2
        p = self.field.char
        c = other.c * pow(self.c, other.k, p) % p
        return FieldEndo(self.field, c, self.k * other.k)

    def power(self, n):
        out = FieldEndo(self.field)
        for _ in range(n):
            out = self.compose(out)
        return out

    def preimage(self, f):
        """Return g with self(g) == f, or None when f is not in the image."""
        if self.is_identity:
            return f
        k = self.k
        if not (f.num.exponents_divisible_by(k) and f.den.exponents_divisible_by(k)):
            return None
        num = f.num.contract_exponents(k)
        den = f.den.contract_exponents(k)
        cinv = pow(self.c, -1, self.field.p)
        if cinv != 1:
            num = num.compose_monomial(cinv, 1)
            den = den.compose_monomial(cinv, 1)
        inv = pow(den.lc(), -1, self.field.p)
        return RatFn(num.scale(inv), den.scale(inv), self.field, True)


def field_endo_apply(phi, f):
    return phi(f)


def field_endo_preimage(phi, f):
    return phi.preimage(f)


class FieldSigmaDeriv:
    """The sigma-derivation of F_p(t) determined by the value delta(t).

    Additivity and delta(fg) = delta(f) g + sigma(f) delta(g) leave no freedom
    once delta(t) is fixed.  For sigma != id this forces
    delta(f) = beta * (sigma(f) - f) with beta = delta(t) / (sigma(t) - t);
    for sigma = id it is delta(t) times the formal derivative.
    """

    def __init__(self, sigma, image_of_t=None):
        self.sigma = sigma
        field = sigma.field
        self.field = field
        if isinstance(field, PrimeField):
            if image_of_t not in (None, 0) and image_of_t != field.zero:
                raise ValueError("the only sigma-derivation of F_p is zero")
            self.image_of_t = None
            self._beta = None
            return
        self.image_of_t = field.zero if image_of_t is None else field.coerce(image_of_t)
        if sigma.is_identity:
            self._beta = None
        else:
            self._beta = self.image_of_t / (sigma(field.t) - field.t)

    @property
    def is_zero(self):
        return self.image_of_t is None or not self.image_of_t

    def __repr__(self):
        return f"FieldSigmaDeriv({self.sigma!r}, delta(t)={self.image_of_t})"

    def __call__(self, f):
        if self.is_zero:
            return self.field.zero if isinstance(f, RatFn) else f - f
        if self._beta is not None:
            d = self.sigma(f) - f
            if not d:
                return d
            return self._beta * d
        # ordinary derivation: (P'Q - PQ') / Q^2
        num, den = f.num, f.den
        if den.degree() == 0:
            d = RatFn(num.derivative(), den, self.field, True)
        else:
            d = ratfn_normalize(num.derivative() * den - num * den.derivative(),
                                den * den, self.field)
        return self.image_of_t * d


def field_deriv_apply(delta, f):
    return delta(f)


def verify_quantization(sigma, delta, q, samples=20, seed=0):
    """Check delta(sigma(f)) == q * sigma(delta(f)) on t and random samples,
    plus sigma(q) == q and delta(q) == 0."""
    field = sigma.field
    q = field.coerce(q)
    if not q:
        return False
    if sigma(q) != q or delta(q):
        return False
    rng = random.Random(seed)
    pool = list(field.generators())
    if isinstance(field, RationalFunctionField):
        pool += [field.random(rng, 2) for _ in range(samples)]
    for f in pool:
        if delta(sigma(f)) != q * sigma(delta(f)):
            return False
    return True
