"""Finite products of matrix rings over scalar fields, with structured
injective endomorphisms and sigma-derivations.

An endomorphism of R = M_{n_1}(K_1) x ... x M_{n_s}(K_s) is given by a
permutation rho of the factors together with, for each source factor i, a
unit u_i and a scalar endomorphism tau_i; factor i is sent into factor
rho(i) by X -> u_i^{-1} tau_i(X) u_i.  Factors are indexed from 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .checks import Check
from .errors import IncompatibleEntrywisePart, NotAUnit, ShapeMismatch
from .scalars import FieldEndo, Fp, PrimeField, RationalFunctionField


class Matrix:
    """Square matrix with entries in ``ring`` (anything with zero/one/coerce)."""

    __slots__ = ("ring", "rows", "n")

    def __init__(self, ring, rows):
        rows = tuple(tuple(ring.coerce(v) for v in row) for row in rows)
        if any(len(r) != len(rows) for r in rows):
            raise ShapeMismatch("matrix must be square")
        self.ring = ring
        self.rows = rows
        self.n = len(rows)

    @classmethod
    def _raw(cls, ring, rows):
        m = object.__new__(cls)
        m.ring = ring
        m.rows = rows
        m.n = len(rows)
        return m

    @classmethod
    def zero(cls, ring, n):
        z = ring.zero
        return cls._raw(ring, tuple((z,) * n for _ in range(n)))

    @classmethod
    def identity(cls, ring, n):
        return cls.scalar(ring, n, ring.one)

    @classmethod
    def scalar(cls, ring, n, c):
        z = ring.zero
        return cls._raw(ring, tuple(tuple(c if i == j else z for j in range(n))
                                    for i in range(n)))

    @classmethod
    def unit(cls, ring, n, i, j):
        z, o = ring.zero, ring.one
        return cls._raw(ring, tuple(tuple(o if (a, b) == (i, j) else z for b in range(n))
                                    for a in range(n)))

    def _check(self, o):
        if not isinstance(o, Matrix) or o.n != self.n:
            raise ShapeMismatch(f"cannot combine {self.n}x{self.n} matrix with {o!r}")

    def __add__(self, o):
        self._check(o)
        if self.n == 1:
            return Matrix._raw(self.ring, ((self.rows[0][0] + o.rows[0][0],),))
        if isinstance(self.ring, PrimeField):
            f = self.ring
            return Matrix._raw(f, tuple(tuple(Fp(a.v + b.v, f) for a, b in zip(r, s))
                                        for r, s in zip(self.rows, o.rows)))
        return Matrix._raw(self.ring, tuple(tuple(a + b for a, b in zip(r, s))
                                            for r, s in zip(self.rows, o.rows)))

    def __sub__(self, o):
        self._check(o)
        if self.n == 1:
            return Matrix._raw(self.ring, ((self.rows[0][0] - o.rows[0][0],),))
        return Matrix._raw(self.ring, tuple(tuple(a - b for a, b in zip(r, s))
                                            for r, s in zip(self.rows, o.rows)))

    def __neg__(self):
        return Matrix._raw(self.ring, tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, o):
        if not isinstance(o, Matrix):
            c = self.ring.coerce(o)
            return self.map(lambda a: a * c)
        self._check(o)
        if self.n == 1:
            return Matrix._raw(self.ring, ((self.rows[0][0] * o.rows[0][0],),))
        cols = list(zip(*o.rows))
        if isinstance(self.ring, PrimeField):
            # integer arithmetic, one reduction per entry
            f = self.ring
            cv = [[b.v for b in c] for c in cols]
            return Matrix._raw(f, tuple(
                tuple(Fp(sum(a.v * b for a, b in zip(r, c)), f) for c in cv)
                for r in self.rows))
        z = self.ring.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix._raw(self.ring, tuple(out))

    def __rmul__(self, c):
        c = self.ring.coerce(c)
        return self.map(lambda a: c * a)

    def map(self, f):
        return Matrix._raw(self.ring, tuple(tuple(f(a) for a in r) for r in self.rows))

    def __bool__(self):
        if self.n == 1:
            return bool(self.rows[0][0])
        if isinstance(self.ring, PrimeField):
            return any(a.v for r in self.rows for a in r)
        return any(a for r in self.rows for a in r)

    def __eq__(self, o):
        return isinstance(o, Matrix) and o.n == self.n and o.rows == self.rows

    def __hash__(self):
        return hash(self.rows)

    def entries(self):
        return [a for r in self.rows for a in r]

    def is_identity(self):
        return self == Matrix.identity(self.ring, self.n)

    def inverse(self):
        """Gauss-Jordan inverse over a field; NotAUnit if singular."""
        n = self.n
        f = self.ring
        aug = [list(r) + [f.one if i == j else f.zero for j in range(n)]
               for i, r in enumerate(self.rows)]
        red, piv = linalg.rref(aug, f)
        if piv[:n] != list(range(n)):
            raise NotAUnit("singular matrix")
        return Matrix._raw(f, tuple(tuple(row[n:]) for row in red))

    def is_invertible(self):
        try:
            self.inverse()
        except NotAUnit:
            return False
        return True

    def __repr__(self):
        return f"Matrix({self})"

    def __str__(self):
        return "[" + ",".join("[" + ",".join(str(a) for a in r) + "]"
                              for r in self.rows) + "]"


# --------------------------------------------------------------------------


class SSRing:
    """The ring prod_i M_{n_i}(K_i); ``factors`` is a list of (n_i, K_i)."""

    def __init__(self, factors):
        factors = [(int(n), k) for n, k in factors]
        for n, k in factors:
            if n < 1:
                raise ShapeMismatch("matrix sizes must be positive")
            if not isinstance(k, (PrimeField, RationalFunctionField)):
                raise TypeError(f"unsupported scalar field {k!r}")
        self.factors = factors
        self.zero = SSElem(self, tuple(Matrix.zero(k, n) for n, k in factors))
        self.one = SSElem(self, tuple(Matrix.identity(k, n) for n, k in factors))

    def __eq__(self, o):
        return isinstance(o, SSRing) and o.factors == self.factors

    def __hash__(self):
        return hash(tuple(self.factors))

    def __repr__(self):
        if not self.factors:
            return "0"
        return " x ".join(f"M_{n}({k})" if n > 1 else repr(k) for n, k in self.factors)

    def __len__(self):
        return len(self.factors)

    @property
    def is_field(self):
        return len(self.factors) == 1 and self.factors[0][0] == 1

    @property
    def finite(self):
        return all(k.finite for _, k in self.factors)

    @property
    def scalar_field(self):
        """The common scalar field, or None if the factors disagree."""
        fields = {k for _, k in self.factors}
        if len(fields) == 1:
            return fields.pop()
        return None

    @property
    def dim(self):
        return sum(n * n for n, _ in self.factors)

    def coerce(self, v):
        if isinstance(v, SSElem):
            if v.ring != self:
                raise ShapeMismatch(f"element of {v.ring} is not in {self}")
            return v
        if isinstance(v, (tuple, list)):
            return self.from_literal(v)
        return SSElem(self, tuple(Matrix.scalar(k, n, k.coerce(v)) for n, k in self.factors))

    def from_literal(self, parts):
        """Build an element from one entry per factor: a scalar for 1x1
        factors, a list of rows otherwise."""
        if len(parts) != len(self.factors):
            raise ShapeMismatch(f"expected {len(self.factors)} components, got {len(parts)}")
        mats = []
        for (n, k), part in zip(self.factors, parts):
            if isinstance(part, Matrix):
                m = part
            elif isinstance(part, (list, tuple)):
                m = Matrix(k, part)
            else:
                m = Matrix(k, [[part]])
            if m.n != n:
                raise ShapeMismatch(f"expected {n}x{n} component")
            mats.append(m)
        return SSElem(self, tuple(mats))

    def embed(self, f, m):
        mats = list(self.zero.mats)
        mats[f] = m
        return SSElem(self, tuple(mats))

    def central_idempotent(self, f):
        n, k = self.factors[f]
        return self.embed(f, Matrix.identity(k, n))

    def matrix_unit(self, f, i, j):
        n, k = self.factors[f]
        return self.embed(f, Matrix.unit(k, n, i, j))

    def basis(self):
        """Matrix units e_ij of every factor; a basis over the scalar field(s)."""
        return [self.matrix_unit(f, i, j)
                for f, (n, _) in enumerate(self.factors)
                for i in range(n) for j in range(n)]

    def generators(self):
        """Ring generators: matrix units plus t * 1 on each F_p(t) factor."""
        gens = self.basis()
        for f, (n, k) in enumerate(self.factors):
            if isinstance(k, RationalFunctionField):
                gens.append(self.embed(f, Matrix.scalar(k, n, k.t)))
        return gens

    def coords(self, a):
        return [e for m in a.mats for e in m.entries()]

    def from_coords(self, v):
        mats, pos = [], 0
        for n, k in self.factors:
            rows = tuple(tuple(v[pos + i * n + j] for j in range(n)) for i in range(n))
            mats.append(Matrix._raw(k, rows))
            pos += n * n
        return SSElem(self, tuple(mats))

    def elements(self):
        if not self.finite:
            raise TypeError("ring is infinite")
        pools = []
        for n, k in self.factors:
            pools.extend([k.elements()] * (n * n))
        for combo in itertools.product(*pools):
            yield self.from_coords(list(combo))

    def random(self, rng, **kw):
        mats = []
        for n, k in self.factors:
            rows = tuple(tuple(k.random(rng, **kw) for _ in range(n)) for _ in range(n))
            mats.append(Matrix._raw(k, rows))
        return SSElem(self, tuple(mats))

    def random_unit(self, rng, **kw):
        while True:
            a = self.random(rng, **kw)
            if a.is_unit():
                return a

    # blocks -------------------------------------------------------------

    def block(self, indices):
        return SSRing([self.factors[i] for i in indices])

    def project(self, indices, a):
        return SSElem(self.block(indices), tuple(a.mats[i] for i in indices))

    def inject(self, indices, b):
        mats = list(self.zero.mats)
        for i, m in zip(indices, b.mats):
            mats[i] = m
        return SSElem(self, tuple(mats))


class SSElem:
    __slots__ = ("ring", "mats")

    def __init__(self, ring, mats):
        self.ring = ring
        self.mats = tuple(mats)

    def _same(self, o):
        if isinstance(o, SSElem):
            if o.ring is not self.ring and o.ring != self.ring:
                raise ShapeMismatch(f"{o.ring} vs {self.ring}")
            return o
        return self.ring.coerce(o)

    def __add__(self, o):
        o = self._same(o)
        return SSElem(self.ring, tuple(a + b for a, b in zip(self.mats, o.mats)))

    __radd__ = __add__

    def __sub__(self, o):
        o = self._same(o)
        return SSElem(self.ring, tuple(a - b for a, b in zip(self.mats, o.mats)))

    def __rsub__(self, o):
        return self._same(o) - self

    def __neg__(self):
        return SSElem(self.ring, tuple(-a for a in self.mats))

    def __mul__(self, o):
        o = self._same(o)
        return SSElem(self.ring, tuple(a * b for a, b in zip(self.mats, o.mats)))

    def __rmul__(self, o):
        return self._same(o) * self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def inverse(self):
        return SSElem(self.ring, tuple(m.inverse() for m in self.mats))

    def __truediv__(self, o):
        return self * self._same(o).inverse()

    def is_unit(self):
        return all(m.is_invertible() for m in self.mats)

    def __bool__(self):
        return any(self.mats)

    def __eq__(self, o):
        if not isinstance(o, SSElem):
            try:
                o = self.ring.coerce(o)
            except (TypeError, ShapeMismatch):
                return NotImplemented
        return self.mats == o.mats

    def __hash__(self):
        return hash(self.mats)

    def __repr__(self):
        return f"SSElem({self})"

    def __str__(self):
        parts = [str(m.rows[0][0]) if m.n == 1 else str(m) for m in self.mats]
        if len(parts) == 1:
            return parts[0]
        return "(" + ", ".join(parts) + ")"


def ss_multiply(a, b):
    return a * b


def ss_add(a, b):
    return a + b


def ss_invert(a):
    return a.inverse()


def udim_ss(ring):
    """Left uniform dimension of a semisimple ring: the sum of matrix sizes."""
    return sum(n for n, _ in ring.factors)


# --------------------------------------------------------------------------
# endomorphisms


class SSEndo:
    """Structured endomorphism (rho, u_i, tau_i) of an SSRing."""

    def __init__(self, ring, rho=None, units=None, taus=None):
        s = len(ring.factors)
        self.ring = ring
        self.rho = tuple(range(s)) if rho is None else tuple(int(i) for i in rho)
        units = list(units) if units is not None else [None] * s
        taus = list(taus) if taus is not None else [None] * s
        self.units = tuple(
            Matrix.identity(ring.factors[i][1], ring.factors[i][0]) if u is None else u
            for i, u in enumerate(units))
        self.taus = tuple(FieldEndo(ring.factors[i][1]) if t is None else t
                          for i, t in enumerate(taus))
        # finite rings have few elements; skew products revisit them constantly
        self._memo = {} if ring.finite else None

    def __repr__(self):
        return f"SSEndo(rho={list(self.rho)}, taus={list(self.taus)})"

    @cached_property
    def _inv_units(self):
        return tuple(u.inverse() for u in self.units)

    @cached_property
    def _twisted(self):
        return tuple(not u.is_identity() for u in self.units)

    def __call__(self, r):
        memo = self._memo
        if memo is None:
            return self._apply(r)
        v = memo.get(r)
        if v is None:
            v = memo[r] = self._apply(r)
        return v

    def _apply(self, r):
        out = [None] * len(self.rho)
        for i, x in enumerate(r.mats):
            tau = self.taus[i]
            y = x if tau.is_identity else x.map(tau)
            if self._twisted[i]:
                y = self._inv_units[i] * y * self.units[i]
            out[self.rho[i]] = y
        return SSElem(self.ring, tuple(out))

    @property
    def is_surjective(self):
        return all(t.is_surjective for t in self.taus)

    def preimage(self, s):
        """Return r with self(r) == s, or None."""
        mats = []
        for i in range(len(self.rho)):
            y = s.mats[self.rho[i]]
            if self._twisted[i]:
                y = self.units[i] * y * self._inv_units[i]
            tau = self.taus[i]
            if not tau.is_identity:
                rows = []
                for row in y.rows:
                    pre = [tau.preimage(a) for a in row]
                    if any(v is None for v in pre):
                        return None
                    rows.append(tuple(pre))
                y = Matrix._raw(y.ring, tuple(rows))
            mats.append(y)
        return SSElem(self.ring, tuple(mats))

    def compose(self, other):
        """Return self o other in structured form."""
        s = len(self.rho)
        rho, units, taus = [], [], []
        for i in range(s):
            j = other.rho[i]
            tau_j = self.taus[j]
            ui = other.units[i]
            u = (ui.map(tau_j) if not tau_j.is_identity else ui) * self.units[j]
            rho.append(self.rho[j])
            units.append(u)
            taus.append(tau_j.compose(other.taus[i]))
        return SSEndo(self.ring, rho, units, taus)

    def power(self, n):
        out = SSEndo(self.ring)
        for _ in range(n):
            out = self.compose(out)
        return out

    def restrict(self, indices):
        """Restriction to the sub-product on ``indices`` (must be rho-stable)."""
        indices = list(indices)
        pos = {f: a for a, f in enumerate(indices)}
        if any(self.rho[f] not in pos for f in indices):
            raise ValueError("indices are not stable under rho")
        return SSEndo(self.ring.block(indices),
                      [pos[self.rho[f]] for f in indices],
                      [self.units[f] for f in indices],
                      [self.taus[f] for f in indices])

    def verify(self):
        return verify_endomorphism(self)


def ss_endo_apply(sigma, r):
    return sigma(r)


def verify_endomorphism(sigma):
    """Structural and basis-pair checks; reports the first violation."""
    ring = sigma.ring
    s = len(ring.factors)
    if sorted(sigma.rho) != list(range(s)):
        return Check.failed("rho is a permutation", list(sigma.rho))
    for i in range(s):
        n, k = ring.factors[i]
        j = sigma.rho[i]
        if ring.factors[j] != (n, k):
            return Check.failed("factor shapes agree along rho", (i, j))
        u = sigma.units[i]
        if u.n != n or u.ring != k:
            return Check.failed("u has the target factor's shape", i)
        if not u.is_invertible():
            return Check.failed("u invertible", (i, str(u)))
        tau = sigma.taus[i]
        if tau.field != k:
            return Check.failed("tau acts on the factor's scalar field", i)
        if not tau.is_injective:
            return Check.failed("tau injective", i)
    if sigma(ring.one) != ring.one:
        return Check.failed("unital", None)
    gens = ring.generators()
    checked = 0
    for a in gens:
        for b in gens:
            checked += 1
            if sigma(a * b) != sigma(a) * sigma(b):
                return Check.failed("multiplicative on basis pairs", (str(a), str(b)), checked)
    return Check.passed(checked)


@dataclass(frozen=True)
class Orbits:
    orbits: list
    order: int
    # restrictions[i] is sigma^order restricted to factor i
    restrictions: list


def orbits(sigma):
    """Cycles of rho, their lcm l, and sigma^l on each factor."""
    s = len(sigma.rho)
    seen, cycles = set(), []
    for i in range(s):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = sigma.rho[j]
        cycles.append(tuple(cyc))
    order = math.lcm(*(len(c) for c in cycles)) if cycles else 1
    power = sigma.power(order)
    restrictions = [power.restrict([i]) for i in range(s)]
    ring = sigma.ring
    for i in range(s):
        e = ring.central_idempotent(i)
        assert power(e) == e, f"sigma^{order} moves e_{i}"
    return Orbits(cycles, order, restrictions)


# --------------------------------------------------------------------------
# sigma-derivations


class SSDeriv:
    """delta(r) = b r - sigma(r) b + E(r), E entrywise on chosen factors."""

    def __init__(self, sigma, b=None, entrywise=None):
        ring = sigma.ring
        self.sigma = sigma
        self.ring = ring
        self.b = ring.zero if b is None else ring.coerce(b)
        self.entrywise = dict(entrywise or {})
        for f, d in self.entrywise.items():
            if sigma.rho[f] != f:
                raise IncompatibleEntrywisePart(f"factor {f} is moved by rho")
            if not sigma.units[f].is_identity():
                raise IncompatibleEntrywisePart(f"factor {f} carries a nontrivial unit")
            if d.sigma != sigma.taus[f]:
                raise IncompatibleEntrywisePart(f"factor {f}: derivation twisted by {d.sigma}, "
                                                f"factor endomorphism is {sigma.taus[f]}")
        self._memo = {} if ring.finite else None

    def __repr__(self):
        return f"SSDeriv(b={self.b}, entrywise={self.entrywise})"

    @property
    def is_zero(self):
        return not self.b and all(d.is_zero for d in self.entrywise.values())

    def __call__(self, r):
        memo = self._memo
        if memo is None:
            return self._apply(r)
        v = memo.get(r)
        if v is None:
            v = memo[r] = self._apply(r)
        return v

    def _apply(self, r):
        out = self.b * r - self.sigma(r) * self.b if self.b else self.ring.zero
        if self.entrywise:
            mats = list(out.mats)
            for f, d in self.entrywise.items():
                mats[f] = mats[f] + r.mats[f].map(d)
            out = SSElem(self.ring, tuple(mats))
        return out

    def verify(self):
        return verify_sigma_derivation(self, self.sigma)

    def restrict(self, indices):
        indices = list(indices)
        sub = self.sigma.restrict(indices)
        pos = {f: a for a, f in enumerate(indices)}
        return SSDeriv(sub, self.ring.project(indices, self.b),
                       {pos[f]: d for f, d in self.entrywise.items() if f in pos})


class BasisDeriv:
    """A map given by its values on the matrix-unit basis, extended linearly.

    Only meaningful over F_p factors, where additive maps are F_p-linear.
    Nothing guarantees the Leibniz rule; see verify_sigma_derivation.
    """

    def __init__(self, sigma, images):
        ring = sigma.ring
        if not ring.finite:
            raise TypeError("basis-defined derivations need finite scalar fields")
        self.sigma = sigma
        self.ring = ring
        self.images = [ring.coerce(v) for v in images]
        if len(self.images) != ring.dim:
            raise ShapeMismatch(f"need {ring.dim} basis images")

    @property
    def is_zero(self):
        return not any(self.images)

    def __call__(self, r):
        out = self.ring.zero
        for c, img in zip(self.ring.coords(r), self.images):
            if c:
                out = out + img * c
        return out

    def verify(self):
        return verify_sigma_derivation(self, self.sigma)

    def restrict(self, indices):
        return RestrictedDeriv(self, indices)


class RestrictedDeriv:
    """A derivation of R viewed on the sigma-stable block ``indices``."""

    def __init__(self, delta, indices):
        self.parent = delta
        self.indices = list(indices)
        self.sigma = delta.sigma.restrict(self.indices)
        self.ring = self.sigma.ring

    @property
    def is_zero(self):
        return self.parent.is_zero

    def __call__(self, r):
        big = self.parent.ring
        return big.project(self.indices, self.parent(big.inject(self.indices, r)))

    def verify(self):
        return verify_sigma_derivation(self, self.sigma)

    def restrict(self, indices):
        return RestrictedDeriv(self, indices)


def ss_deriv_apply(delta, r):
    return delta(r)


def verify_sigma_derivation(delta, sigma=None):
    """Leibniz delta(ab) = delta(a) b + sigma(a) delta(b) on generator pairs."""
    sigma = delta.sigma if sigma is None else sigma
    ring = sigma.ring
    if delta(ring.one):
        return Check.failed("delta(1) = 0", str(delta(ring.one)))
    gens = ring.generators()
    checked = 0
    for a in gens:
        da = delta(a)
        sa = sigma(a)
        for b in gens:
            checked += 1
            if delta(a * b) != da * b + sa * delta(b):
                return Check.failed("Leibniz rule", (str(a), str(b)), checked)
    return Check.passed(checked)


@dataclass(frozen=True)
class InnerSolution:
    b: SSElem
    kernel_dim: int


def solve_inner(sigma, delta):
    """Find b with delta(r) = b r - sigma(r) b on all generators.

    Returns an InnerSolution (free coordinates set to zero, so the result is
    deterministic) or None when delta is not inner.
    """
    ring = sigma.ring
    field = ring.scalar_field
    if field is None:
        raise ShapeMismatch("solve_inner needs a single scalar field")
    basis = ring.basis()
    gens = ring.generators()
    # column k: the contribution of E_k, as b, to every generator equation
    cols = []
    for e in basis:
        col = []
        for g in gens:
            col.extend(ring.coords(e * g - sigma(g) * e))
        cols.append(col)
    rhs = []
    for g in gens:
        rhs.extend(ring.coords(delta(g)))
    rows = [list(r) for r in zip(*cols)] if cols else []
    sol, kdim = linalg.solve(rows, rhs, field)
    if sol is None:
        return None
    return InnerSolution(ring.from_coords(sol), kdim)


# --------------------------------------------------------------------------
# annihilators


def _left_ann_constraints(ring, s):
    # r -> r s is linear in r; its matrix columns are coords(E_k s)
    images = [ring.coords(e * s) for e in ring.basis()]
    return [list(r) for r in zip(*images)]


def annihilator_chain_length(ring):
    """Longest strict chain of left annihilators in a finite ring.

    Every left annihilator is an intersection of single-element ones, so the
    lattice is the closure of {l.ann(s)} under intersection.
    """
    field = ring.scalar_field
    d = ring.dim
    elems = list(ring.elements())

    def kernel_key(rows):
        if not rows:
            return (d, ())
        red, piv = linalg.rref(rows, field)
        return (d - len(red), tuple(tuple(int(v) for v in r) for r in red))

    lattice = {}
    for s in elems:
        rows = _left_ann_constraints(ring, s)
        red, _ = linalg.rref(rows, field)
        lattice[kernel_key(rows)] = red
    changed = True
    while changed:
        changed = False
        items = list(lattice.items())
        for (k1, r1), (k2, r2) in itertools.combinations(items, 2):
            rows = r1 + r2
            key = kernel_key(rows)
            if key not in lattice:
                lattice[key] = linalg.rref(rows, field)[0]
                changed = True
    # a kernel K1 contains K2 iff the constraints of K1 lie in the span of K2's
    keys = sorted(lattice, key=lambda k: k[0])
    longest = {}
    for k in keys:
        best = 0
        red_k = lattice[k]
        for j in keys:
            if j[0] >= k[0]:
                break
            red_j = lattice[j]
            piv = [next(i for i, v in enumerate(r) if v) for r in red_j]
            if all(linalg.in_span(red_j, piv, row) for row in red_k):
                best = max(best, longest[j] + 1)
        longest[k] = best
    return max(longest.values())
