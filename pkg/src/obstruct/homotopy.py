"""Homotopies H(T) on the quadric, chains of them, and translation families.

A homotopy is a quadric point whose coordinates live in a ring with a
designated homotopy variable (``ctx.homotopy_var``).  Chains are checked
junction by junction with exact polynomial equality; nothing here tries to
decide whether two points are homotopic.

Junction numbering for a chain of m entries is 1-based: junction k (k <= m)
compares H_k(0) with whatever precedes it (the declared start for k = 1,
H_{k-1}(1) otherwise), and junction m+1 compares H_m(1) with the declared end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import RingCtx
from .errors import ChainBroken, NotIdentityAtZero, NotOnQuadric
from .orthogonal import SMatrix, act_vector, word_to_matrix
from .quadric import QuadricPoint, gamma


def homotopy_ctx(ctx: RingCtx, var: str = "T") -> RingCtx:
    """``ctx`` with a homotopy variable, appended when missing."""
    if ctx.homotopy_var is not None:
        return ctx
    if var in ctx.vars:
        return RingCtx(ctx.vars, ctx.p, ctx.order, var)
    return RingCtx(ctx.vars + (var,), ctx.p, ctx.order, var)


def base_ctx(ctx: RingCtx) -> RingCtx:
    """The coefficient ring A of A[T]: ``ctx`` with the homotopy variable removed."""
    if ctx.homotopy_var is None:
        return ctx
    return RingCtx(tuple(v for v in ctx.vars if v != ctx.homotopy_var), ctx.p, ctx.order)


def lift_point(v: QuadricPoint, ctx: RingCtx) -> QuadricPoint:
    return QuadricPoint.from_coords(v.variant, [c.to_ctx(ctx) for c in v.coords])


@dataclass(frozen=True)
class Homotopy:
    point: QuadricPoint

    def __post_init__(self):
        if self.point.ctx.homotopy_var is None:
            raise ValueError("a homotopy needs a ring with a homotopy variable")
        r = self.point.residual()
        if not r.is_zero():
            raise NotOnQuadric(r)

    @property
    def ctx(self) -> RingCtx:
        return self.point.ctx

    @property
    def var(self) -> str:
        return self.ctx.homotopy_var

    @property
    def n(self) -> int:
        return self.point.n

    @classmethod
    def from_coords(cls, variant, coords):
        return cls(QuadricPoint.from_coords(variant, coords))

    @classmethod
    def constant(cls, v: QuadricPoint, ctx: RingCtx | None = None):
        return cls(lift_point(v, homotopy_ctx(ctx or v.ctx)))

    def at(self, t) -> QuadricPoint:
        return h_eval(self, t)

    def start(self) -> QuadricPoint:
        return h_eval(self, 0)

    def end(self) -> QuadricPoint:
        return h_eval(self, 1)

    def to_json(self) -> dict:
        return self.point.to_json()

    def __str__(self):
        return str(self.point)


def h_eval(H: Homotopy, t) -> QuadricPoint:
    """Substitute T = t and revalidate quadric membership."""
    v = H.point.subs({H.var: t})
    r = v.residual()
    if not r.is_zero():
        raise NotOnQuadric(r)
    return v


def points_equal(u: QuadricPoint, v: QuadricPoint) -> bool:
    if u.variant != v.variant or u.n != v.n:
        return False
    ctx = u.ctx
    return all(a == b.to_ctx(ctx) for a, b in zip(u.coords, v.coords))


@dataclass(frozen=True)
class Chain:
    homotopies: tuple

    def __post_init__(self):
        object.__setattr__(self, "homotopies", tuple(self.homotopies))
        if not self.homotopies:
            raise ValueError("a chain needs at least one homotopy")

    def __len__(self):
        return len(self.homotopies)

    def __iter__(self):
        return iter(self.homotopies)

    @property
    def ctx(self):
        return self.homotopies[0].ctx


@dataclass(frozen=True)
class ChainCert:
    chain: Chain
    start: QuadricPoint
    end: QuadricPoint
    junctions: tuple


def verify_chain(c: Chain, start: QuadricPoint, end: QuadricPoint) -> ChainCert:
    """Check every membership and junction; raises ``ChainBroken`` at the first failure."""
    hs = list(c.homotopies)
    m = len(hs)
    for k, H in enumerate(hs, 1):
        r = H.point.residual()
        if not r.is_zero():
            raise ChainBroken(k, f"entry {k} is off the quadric, residual {r}")
    junctions = []
    for k in range(m + 1):
        left = start if k == 0 else h_eval(hs[k - 1], 1)
        right = end if k == m else h_eval(hs[k], 0)
        if not points_equal(left, right):
            raise ChainBroken(k + 1, f"{left} != {right}")
        junctions.append(left)
    return ChainCert(c, start, end, tuple(junctions))


def gamma_chain(c: Chain) -> Chain:
    return Chain([Homotopy(gamma(H.point)) for H in c])


def reverse_chain(c: Chain) -> Chain:
    """Run every entry backwards (T -> 1 - T), in reverse order."""
    out = []
    for H in reversed(c.homotopies):
        T = H.ctx.gen(H.var)
        out.append(Homotopy(H.point.subs({H.var: 1 - T})))
    return Chain(out)


def concat(*chains: Chain) -> Chain:
    return Chain([H for c in chains for H in c])


def base_point_chain(n: int, ctx: RingCtx | None = None) -> Chain:
    """Three homotopies joining 0 to 1 on Q_2n:
    (0; T,0..; 0..), (T; 1,0..; T(1-T),0..), (1; 1-T,0..; 0..)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    ctx = homotopy_ctx(ctx or RingCtx(()))
    T, z, one = ctx.gen(ctx.homotopy_var), ctx.zero, ctx.one
    pad = [z] * (n - 1)
    rows = [
        [z, T, *pad, z, *pad],
        [T, one, *pad, T * (1 - T), *pad],
        [one, 1 - T, *pad, z, *pad],
    ]
    return Chain([Homotopy.from_coords("Q", r) for r in rows])


# translation families on Q' -------------------------------------------------


@dataclass(frozen=True)
class TranslationFamily:
    """A word in the elementary generators whose parameters may involve T."""

    word: tuple
    n: int
    ctx: RingCtx

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if self.ctx.homotopy_var is None:
            raise ValueError("translation family needs a ring with a homotopy variable")
        for g in self.word:
            g.check(self.n)

    def matrix(self) -> SMatrix:
        return word_to_matrix(self.word, self.n, self.ctx)

    def at(self, t) -> SMatrix:
        return self.matrix().subs({self.ctx.homotopy_var: t})


@dataclass(frozen=True)
class TranslationCert:
    family: tuple
    input: QuadricPoint
    homotopy: Homotopy
    identity_at_zero: bool


def _check_identity_at_zero(fam: TranslationFamily):
    M0 = fam.at(0)
    if not M0 == SMatrix.identity(M0.size, fam.ctx):
        raise NotIdentityAtZero("word does not evaluate to the identity at T=0")


def _prepare(u: QuadricPoint, ctx: RingCtx) -> QuadricPoint:
    if u.variant != "Qprime":
        raise ValueError("translation families act on points of Q'")
    r = u.residual()
    if not r.is_zero():
        raise NotOnQuadric(r)
    return lift_point(u, ctx)


def verify_translation(fam: TranslationFamily, u: QuadricPoint):
    """H(T) = sigma(T) u with sigma(0) = 1; returns ``(Homotopy, TranslationCert)``."""
    _check_identity_at_zero(fam)
    u = _prepare(u, fam.ctx)
    H = Homotopy.from_coords("Qprime", act_vector(fam.word, list(u.coords), fam.n))
    if not points_equal(h_eval(H, 0), u):
        raise NotIdentityAtZero("H(0) differs from the input point")
    return H, TranslationCert((fam,), u, H, True)


def compose_translations(fams, u: QuadricPoint) -> Homotopy:
    """One homotopy from u to sigma_m(1)...sigma_1(1) u, with all factors moving together."""
    fams = list(fams)
    if not fams:
        raise ValueError("need at least one family")
    ctx = fams[0].ctx
    vec = list(_prepare(u, ctx).coords)
    for fam in fams:
        if fam.ctx != ctx or fam.n != fams[0].n:
            raise ValueError("families live over different rings")
        _check_identity_at_zero(fam)
        vec = act_vector(fam.word, vec, fam.n)
    return Homotopy.from_coords("Qprime", vec)
