"""Decomposition of R[x; sigma, delta] over a semisimple R.

The sigma-orbits of the factors of R cut R[x; sigma, delta] into a product
of Ore extensions B_j[x; sigma_j, delta_j].  On an orbit with several
factors delta_j is inner, delta_j(r) = b r - sigma_j(r) b, and z = x - b
satisfies z r = sigma_j(r) z.  A single factor M_m(D) with
sigma = I_u o M_m(tau) is brought to M_m(D[y; tau, delta']) by
y = u (x - b), where b and delta'(t) solve a linear system.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg
from .checks import Check
from .errors import InnerSolveFailed, UnsupportedForm
from .ore import OreContext, SkewPoly, _poly_coords
from .scalars import FieldSigmaDeriv, RationalFunctionField
from .semisimple import (Matrix, SSDeriv, SSEndo, SSRing, orbits, solve_inner, udim_ss,
                         verify_endomorphism, verify_sigma_derivation)


def substitute(coeffs, X, ctx):
    """sum coeffs[i] X^i in ctx, by Horner's rule from the left."""
    if not coeffs:
        return ctx.zero
    acc = ctx.const(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * X + ctx.const(c)
    return acc


# --------------------------------------------------------------------------
# single factor


@dataclass
class MatrixForm:
    """Data of R[x; sigma, delta] = M_m(D)[y; M(tau), M(delta')], y = u (x - b)."""

    source: OreContext
    b: object
    u: Matrix
    d: object
    target: OreContext
    scalar_ctx: OreContext
    m: int

    @property
    def delta_prime(self):
        return self.scalar_ctx.delta

    def forward(self, p):
        """Rewrite p using x = u^{-1} y + b."""
        T = self.target
        X = T.const(T.ring.from_literal([self.u.inverse()])) * T.x + T.const(self.b)
        return substitute(list(p.c), X, T)

    def inverse(self, q):
        S = self.source
        Y = S.const(S.ring.from_literal([self.u])) * (S.x - S.const(self.b))
        return substitute(list(q.c), Y, S)

    def to_matrix(self, q):
        """The m x m matrix over D[y; tau, delta'] with the same coefficients."""
        D = self.scalar_ctx
        m = self.m
        return [[SkewPoly(D, [c.mats[0].rows[i][j] for c in q.c]) for j in range(m)]
                for i in range(m)]

    def from_matrix(self, rows):
        T = self.target
        deg = max((e.degree() for row in rows for e in row), default=-1)
        coeffs = []
        for k in range(deg + 1):
            coeffs.append(T.ring.from_literal([[[e[k] for e in row] for row in rows]]))
        return SkewPoly(T, coeffs)

    def verify_identity(self):
        """y r = M(tau)(r) y + M(delta')(r) on generators, computed in the
        source ring."""
        S = self.source
        T = self.target
        Y = S.const(S.ring.from_literal([self.u])) * (S.x - S.const(self.b))
        checked = 0
        for r in S.ring.generators():
            checked += 1
            lhs = Y * S.const(r)
            rhs = S.const(T.sigma(r)) * Y + S.const(T.delta(r) if T.delta else S.ring.zero)
            if lhs != rhs:
                return Check.failed("y r = M(tau)(r) y + M(delta')(r)", str(r), checked)
        return Check.passed(checked)


def matrix_form(ring, sigma, delta, name=""):
    """Normal form of a single-factor extension M_m(D)[x; sigma, delta].

    Unknowns are ordered (delta'(t), b) so that when delta is already
    entrywise the solution has b = 0.  Raises UnsupportedForm when no
    b and delta' exist.
    """
    if len(ring.factors) != 1:
        raise ValueError("matrix_form needs a single factor")
    m, D = ring.factors[0]
    u = sigma.units[0]
    tau = sigma.taus[0]
    uinv = u.inverse()
    gens = ring.generators()
    basis = ring.basis()
    has_d = isinstance(D, RationalFunctionField)
    cols = []
    if has_d:
        unit_d = FieldSigmaDeriv(tau, D.one)
        col = []
        for g in gens:
            img = ring.from_literal([uinv * g.mats[0].map(unit_d)])
            col.extend(ring.coords(img))
        cols.append(col)
    for e in basis:
        col = []
        for g in gens:
            col.extend(ring.coords(e * g - sigma(g) * e))
        cols.append(col)
    rhs = []
    for g in gens:
        rhs.extend(ring.coords(delta(g) if delta is not None else ring.zero))
    rows = [list(r) for r in zip(*cols)]
    sol, _ = linalg.solve(rows, rhs, D)
    if sol is None:
        raise UnsupportedForm("no b and delta' bring delta to entrywise form")
    if has_d:
        d, bv = sol[0], sol[1:]
    else:
        d, bv = D.zero, sol
    b = ring.from_coords(bv)
    dprime = FieldSigmaDeriv(tau, d) if has_d else None
    scalar_ctx = OreContext(D, tau, dprime, name=f"{name}-scalar", var="y")
    msig = SSEndo(ring, taus=[tau])
    mdelta = SSDeriv(msig, entrywise={0: dprime}) if has_d and d else None
    target = OreContext(ring, msig, mdelta, name=f"{name}-matrix", var="y")
    source = OreContext(ring, sigma, delta, name=name)
    return MatrixForm(source, b, u, d, target, scalar_ctx, m)


# --------------------------------------------------------------------------
# decomposition


@dataclass
class Block:
    indices: tuple
    kind: str
    source: OreContext
    target: OreContext
    b: object = None
    form: MatrixForm | None = None
    unsupported: str | None = None

    @property
    def delta_is_zero(self):
        return self.target.delta is None

    def describe(self):
        out = {"factors": [i + 1 for i in self.indices], "kind": self.kind}
        if self.b is not None:
            out["b"] = str(self.b)
        if self.form is not None:
            out["b"] = str(self.form.b)
            out["u"] = str(self.form.u)
            out["delta_prime_t"] = str(self.form.d)
        if self.unsupported:
            out["unsupported"] = self.unsupported
        out["delta_j_zero"] = self.delta_is_zero
        return out


@dataclass
class DecompositionReport:
    ctx: OreContext
    blocks: list
    order: int

    def project(self, block, p):
        ring = self.ctx.ring
        return SkewPoly(block.source, [ring.project(block.indices, c) for c in p.c])

    def inject(self, block, p):
        ring = self.ctx.ring
        return SkewPoly(self.ctx, [ring.inject(block.indices, c) for c in p.c])

    def forward(self, p):
        out = []
        for blk in self.blocks:
            q = self.project(blk, p)
            if blk.kind == "multi":
                Z = blk.target
                X = Z.x + Z.const(blk.b)
                q = substitute(list(q.c), X, Z)
            elif blk.form is not None:
                q = blk.form.forward(q)
            out.append(q)
        return tuple(out)

    def inverse(self, parts):
        total = self.ctx.zero
        for blk, q in zip(self.blocks, parts):
            if blk.kind == "multi":
                S = blk.source
                q = substitute(list(q.c), S.x - S.const(blk.b), S)
            elif blk.form is not None:
                q = blk.form.inverse(q)
            total = total + self.inject(blk, q)
        return total

    def random_target(self, rng, max_degree=3):
        return tuple(blk.target.random(rng, max_degree) for blk in self.blocks)

    def verify(self, samples=200, seed=0, max_degree=3):
        """Sampled check that forward is a bijective ring homomorphism."""
        rng = random.Random(seed)
        ctx = self.ctx
        for blk in self.blocks:
            if blk.kind == "multi" and blk.target.delta is not None:
                return Check.failed("multi-factor blocks have delta_j = 0", blk.indices)
            if blk.form is not None:
                res = blk.form.verify_identity()
                if not res:
                    return res
        checked = 0
        for _ in range(samples):
            p = ctx.random(rng, max_degree)
            q = ctx.random(rng, max_degree)
            checked += 1
            fp, fq = self.forward(p), self.forward(q)
            if self.forward(p * q) != tuple(a * b for a, b in zip(fp, fq)):
                return Check.failed("multiplicative", (str(p), str(q)), checked)
            if self.forward(p + q) != tuple(a + b for a, b in zip(fp, fq)):
                return Check.failed("additive", (str(p), str(q)), checked)
            if self.inverse(fp) != p:
                return Check.failed("inverse o forward = id", str(p), checked)
            t = self.random_target(rng, max_degree)
            if self.forward(self.inverse(t)) != t:
                return Check.failed("forward o inverse = id", [str(v) for v in t], checked)
        return Check.passed(checked)


def decompose(ring, sigma, delta=None, name=""):
    verify_endomorphism(sigma).require()
    if delta is not None:
        verify_sigma_derivation(delta, sigma).require()
    ctx = OreContext(ring, sigma, delta, name=name)
    orb = orbits(sigma)
    blocks = []
    for cyc in orb.orbits:
        idx = tuple(sorted(cyc))
        sub = sigma.restrict(idx)
        dsub = delta.restrict(idx) if ctx.delta is not None else None
        if dsub is not None and getattr(dsub, "is_zero", False):
            dsub = None
        sring = sub.ring
        source = OreContext(sring, sub, dsub, name=f"{name}-block")
        if len(idx) > 1:
            if dsub is None:
                b = sring.zero
            else:
                sol = solve_inner(sub, dsub)
                if sol is None:
                    raise InnerSolveFailed(f"delta is not inner on the orbit {list(idx)}")
                b = sol.b
            target = OreContext(sring, sub, None, name=f"{name}-twist", var="z")
            blocks.append(Block(idx, "multi", source, target, b=b))
            continue
        try:
            form = matrix_form(sring, sub, dsub, name=name)
        except UnsupportedForm as exc:
            blocks.append(Block(idx, "simple", source, source, unsupported=str(exc)))
            continue
        form.source = source
        blocks.append(Block(idx, "simple", source, form.target, form=form))
    return DecompositionReport(ctx, blocks, orb.order)


# --------------------------------------------------------------------------
# uniform dimension


@dataclass
class UdimTrace:
    total: int
    entries: list = field(default_factory=list)
    udim_base: int = 0

    @property
    def consistent(self):
        return self.total == sum(e["value"] for e in self.entries) == self.udim_base


SIMPLE_REASON = ("D[y; tau, delta'] is a principal left ideal domain, hence uniform; "
                 "M_m of it has left uniform dimension m")
UNSUPPORTED_REASON = ("an Ore extension of a simple artinian ring M_m(D) has left "
                      "uniform dimension m")
MULTI_REASON = ("delta_j = 0 after x_j = y_j - b; B_j[x_j; sigma_j] localizes at the powers "
                "of x_j to A_j[x_j, x_j^-1; sigma_j] over the semisimple Jordan extension "
                "A_j, so its left uniform dimension is udim B_j")


def udim_ore(ring, sigma, delta=None, report=None):
    report = decompose(ring, sigma, delta) if report is None else report
    entries = []
    for blk in report.blocks:
        sub = ring.block(blk.indices)
        if blk.kind == "multi":
            value, why = udim_ss(sub), MULTI_REASON
        elif blk.form is not None:
            value, why = blk.form.m, SIMPLE_REASON
        else:
            value, why = sub.factors[0][0], UNSUPPORTED_REASON
        entries.append({"factors": [i + 1 for i in blk.indices], "kind": blk.kind,
                        "value": value, "justification": why})
    total = sum(e["value"] for e in entries)
    trace = UdimTrace(total, entries, udim_ss(ring))
    if not trace.consistent:
        raise AssertionError(f"udim trace {total} disagrees with udim R = {trace.udim_base}")
    return trace


@dataclass
class IndependenceCertificate:
    count: int
    trunc: int
    ranks: list
    total_rank: int

    @property
    def direct(self):
        return self.total_rank == sum(self.ranks) and all(self.ranks)


def independence_witness(ring, sigma, delta=None, trunc=4):
    """n = udim_ss(R) left ideals L = R[x; sigma, delta] e_ii whose sum is
    direct in degrees <= trunc.

    (L)_{<= d} is the span of r x^j e_ii over the matrix-unit basis r and
    j <= d; directness is the rank of the union equalling the sum of ranks.
    """
    field_ = ring.scalar_field
    if field_ is None:
        raise ValueError("independence_witness needs a common scalar field")
    ctx = OreContext(ring, sigma, delta)
    xs = [ctx.one]
    for _ in range(trunc):
        xs.append(xs[-1] * ctx.x)
    basis = [ctx.const(r) for r in ring.basis()]
    ranks, all_rows = [], []
    for f, (n, _) in enumerate(ring.factors):
        for i in range(n):
            e = ctx.const(ring.matrix_unit(f, i, i))
            rows = [_poly_coords(ctx, r * xj * e, trunc) for r in basis for xj in xs]
            ranks.append(linalg.rank(rows, field_))
            all_rows.extend(rows)
    total = linalg.rank(all_rows, field_)
    cert = IndependenceCertificate(len(ranks), trunc, ranks, total)
    return cert.count if cert.direct else 0, cert
