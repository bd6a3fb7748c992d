"""N x N matrices over F_p that are a finite block plus a scalar tail.

The value with block B (n x n) and tail a is
sum_{i,j<=n} B_ij e_ij + a * sum_{i>n} e_ii.  The shift sigma moves the
block one step down the diagonal and puts the tail value at (1, 1); it is an
injective unital endomorphism that is not onto, and R[x; sigma] contains
the square-zero left ideal e_11 x R[x; sigma].

Matrix units are indexed from 1 in the public helpers, as in e_11.
"""

from __future__ import annotations

import operator
import random
from dataclasses import dataclass, field

from .checks import Check
from .errors import ZeroInput
from .ore import OreContext
from .scalars import prime_field


class EvScalarMat:
    __slots__ = ("p", "block", "tail")

    def __init__(self, p, block, tail):
        rows = [[int(v) % p for v in row] for row in block]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("block must be square")
        tail = int(tail) % p
        # drop trailing rows/columns that already follow the tail pattern
        while n and rows[n - 1][n - 1] == tail and not any(rows[n - 1][:n - 1]) \
                and not any(rows[i][n - 1] for i in range(n - 1)):
            n -= 1
            rows = [r[:n] for r in rows[:n]]
        self.p = p
        self.block = tuple(tuple(r) for r in rows)
        self.tail = tail

    @property
    def n(self):
        return len(self.block)

    def padded(self, m):
        """Block of size m >= n, padded with the tail on the diagonal."""
        n = self.n
        rows = [list(r) + [0] * (m - n) for r in self.block]
        for i in range(n, m):
            row = [0] * m
            row[i] = self.tail
            rows.append(row)
        return rows

    def entry(self, i, j):
        """Entry at 1-based position (i, j)."""
        n = self.n
        if i <= n and j <= n:
            return self.block[i - 1][j - 1]
        return self.tail if i == j else 0

    def _coerce(self, o):
        if isinstance(o, EvScalarMat):
            if o.p != self.p:
                raise ValueError("different characteristics")
            return o
        if isinstance(o, int):
            return EvScalarMat(self.p, (), o)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        m = max(self.n, o.n)
        a, b = self.padded(m), o.padded(m)
        return EvScalarMat(self.p, [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)],
                           self.tail + o.tail)

    __radd__ = __add__

    def __neg__(self):
        return EvScalarMat(self.p, [[-v for v in r] for r in self.block], -self.tail)

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, int):
            return EvScalarMat(self.p, [[v * o for v in r] for r in self.block], self.tail * o)
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        m = max(self.n, o.n)
        a, b = self.padded(m), o.padded(m)
        p = self.p
        cols = list(zip(*b))
        prod = [[sum(map(operator.mul, r, c)) % p for c in cols] for r in a]
        return EvScalarMat(p, prod, self.tail * o.tail)

    def __rmul__(self, o):
        if isinstance(o, int):
            return self * o
        return self._coerce(o) * self

    def __bool__(self):
        return bool(self.tail) or any(any(r) for r in self.block)

    def __eq__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self.block == o.block and self.tail == o.tail

    def __hash__(self):
        return hash((self.block, self.tail))

    def __repr__(self):
        return f"EvScalarMat({self})"

    def __str__(self):
        n = self.n
        wide = n >= 10
        terms = []
        for i in range(n):
            for j in range(n):
                c = self.block[i][j]
                if i == j and c == self.tail:
                    continue
                c -= self.tail if i == j else 0
                c %= self.p
                if not c:
                    continue
                unit = f"e({i + 1},{j + 1})" if wide else f"e{i + 1}{j + 1}"
                terms.append(unit if c == 1 else f"{c}*{unit}")
        if self.tail:
            terms.insert(0, str(self.tail))
        return "+".join(terms) if terms else "0"


def ev_mul(a, b):
    return a * b


def ev_add(a, b):
    return a + b


def shift_sigma(a):
    """The shift: a * e_11 + sum a_ij e_{i+1,j+1} + tail beyond."""
    n = a.n
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    rows[0][0] = a.tail
    for i in range(n):
        for j in range(n):
            rows[i + 1][j + 1] = a.block[i][j]
    return EvScalarMat(a.p, rows, a.tail)


def shift_preimage(b):
    """The A with shift_sigma(A) == b, or None when b is not in the image."""
    rows = b.padded(max(b.n, 1))
    m = len(rows)
    if rows[0][0] != b.tail or any(rows[0][1:]) or any(rows[i][0] for i in range(1, m)):
        return None
    return EvScalarMat(b.p, [r[1:] for r in rows[1:]], b.tail)


class ShiftSigma:
    def __init__(self, ring):
        self.ring = ring

    def __call__(self, a):
        return shift_sigma(a)

    def preimage(self, b):
        return shift_preimage(b)

    is_surjective = False

    def __repr__(self):
        return "shift"

    def verify(self, size=3):
        ring = self.ring
        if shift_sigma(ring.one) != ring.one:
            return Check.failed("unital", None)
        span = ring.spanning_set(size)
        checked = 0
        for a in span:
            for b in span:
                checked += 1
                if shift_sigma(a * b) != shift_sigma(a) * shift_sigma(b):
                    return Check.failed("multiplicative on basis pairs", (str(a), str(b)), checked)
        return Check.passed(checked)


class ShiftRing:
    is_field = False
    finite = False

    def __init__(self, p=2):
        self.p = p
        self.scalar_field = prime_field(p)
        self.zero = EvScalarMat(p, (), 0)
        self.one = EvScalarMat(p, (), 1)

    def __repr__(self):
        return f"EvScalar(F_{self.p})"

    def __eq__(self, o):
        return isinstance(o, ShiftRing) and o.p == self.p

    def __hash__(self):
        return hash(("shift", self.p))

    def coerce(self, v):
        if isinstance(v, EvScalarMat):
            return v
        if isinstance(v, int):
            return EvScalarMat(self.p, (), v)
        raise TypeError(f"cannot coerce {v!r} into {self}")

    def unit(self, i, j):
        """Matrix unit e_ij, 1-based."""
        n = max(i, j)
        rows = [[0] * n for _ in range(n)]
        rows[i - 1][j - 1] = 1
        return EvScalarMat(self.p, rows, 0)

    def spanning_set(self, size=3):
        """e_ij for i, j <= size, then the identity."""
        return [self.unit(i, j) for i in range(1, size + 1)
                for j in range(1, size + 1)] + [self.one]

    def generators(self):
        return self.spanning_set(3)

    def random(self, rng, size=3):
        n = rng.randint(0, size)
        rows = [[rng.randrange(self.p) for _ in range(n)] for _ in range(n)]
        return EvScalarMat(self.p, rows, rng.randrange(self.p))

    def random_nonzero(self, rng, size=3):
        while True:
            a = self.random(rng, size)
            if a:
                return a


def shift_context(p=2):
    ring = ShiftRing(p)
    return OreContext(ring, ShiftSigma(ring), name="shift-ring")


def _first_entry(a):
    for i in range(a.n):
        for j in range(a.n):
            if a.block[i][j]:
                return i + 1, j + 1
    # tail only: the first diagonal position past the block
    return a.n + 1, a.n + 1


def prime_witness(a, b):
    """r = e_jk with a r b != 0, from nonzero entries a_ij and b_kl."""
    if not a or not b:
        raise ZeroInput("prime_witness needs nonzero inputs")
    ring = ShiftRing(a.p)
    _, j = _first_entry(a)
    k, _ = _first_entry(b)
    r = ring.unit(j, k)
    if not (a * r * b):
        raise AssertionError("prime witness failed")
    return r


@dataclass
class ShiftCertificate:
    clauses: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.clauses.values())

    def __bool__(self):
        return self.ok


def nilpotent_ideal_certificate(k_max=8, budget=500, p=2, seed=0, max_degree=5):
    """Evidence that e_11 x R[x; sigma] squares to zero:

    (i)   e_11 x r x^k e_11 = 0 for r in a spanning set and k <= k_max;
    (ii)  (e_11 x f)(e_11 x g) = 0 for ``budget`` random f, g;
    (iii) e_11 sigma(r) lies in F_p e_11 for spanning r.

    Indices up to k_max + 2 suffice in (i): x r x^k e_11 only meets e_11
    through entries of r that the shift moves into rows and columns <= k + 2.
    """
    ctx = shift_context(p)
    ring = ctx.ring
    e11 = ring.unit(1, 1)
    E = ctx.const(e11)
    x = ctx.x
    span = ring.spanning_set(k_max + 2)
    cert = ShiftCertificate()

    res, checked = Check.passed(), 0
    xk = ctx.one
    for k in range(k_max + 1):
        for r in span:
            checked += 1
            if E * x * ctx.const(r) * xk * E:
                res = Check.failed("e11 x r x^k e11 = 0", (str(r), k), checked)
                break
        if not res:
            break
        xk = xk * x
    cert.clauses["e11 x R x^k e11 = 0"] = res if not res.ok else Check.passed(checked)

    rng = random.Random(seed)
    left = E * x
    res = Check.passed(budget)
    for n in range(budget):
        f = ctx.random(rng, max_degree)
        g = ctx.random(rng, max_degree)
        if (left * f) * (left * g):
            res = Check.failed("(e11 x f)(e11 x g) = 0", (str(f), str(g)), n + 1)
            break
    cert.clauses["square-zero products"] = res

    res = Check.passed(len(span))
    for r in span:
        v = e11 * shift_sigma(r)
        if v != e11 * v.entry(1, 1):
            res = Check.failed("e11 sigma(r) in F_p e11", str(r))
            break
    cert.clauses["e11 sigma(R) = F_p e11"] = res
    return cert


def non_surjectivity_witness(ring, samples=200, seed=0):
    """e_11 is not a shift.

    Every shift sigma(A) has (1,1) entry equal to its tail, both being the
    tail of A; e_11 has (1,1) entry 1 and tail 0.  The check confirms the
    image invariant on samples, that e_11 violates it, and that
    shift_preimage rejects e_11.
    """
    e11 = ring.unit(1, 1)
    if shift_preimage(e11) is not None:
        return Check.failed("e11 has no preimage", "shift_preimage returned a value")
    if e11.entry(1, 1) == e11.tail:
        return Check.failed("e11 violates the image invariant", str(e11))
    rng = random.Random(seed)
    for n in range(samples):
        a = ring.random(rng)
        s = shift_sigma(a)
        if s.entry(1, 1) != s.tail or s.tail != a.tail:
            return Check.failed("image invariant sigma(A)_11 = tail", str(a), n + 1)
        if shift_preimage(s) != a:
            return Check.failed("shift_preimage inverts the shift", str(a), n + 1)
    return Check.passed(samples)
