"""Points of the quadrics Q_2n and Q'_2n, the alpha/beta change of model,
the involution Gamma and the ideals I(v), J(v).

Coordinates are stored in the order (s; f_1..f_n; g_1..g_n).

* variant ``Q``:      sum f_i g_i + s(s - 1) = 0
* variant ``Qprime``: sum f_i g_i + s^2 - 1  = 0
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Poly, RingCtx
from .errors import NotOnQuadric
from .groebner import Ideal

VARIANTS = ("Q", "Qprime")

# alpha(s; f; g) = ((s + 1)/2; f; g/4), beta its inverse
ALPHA_CONVENTION = "alpha(s;f;g)=((s+1)/2;f;g/4)"


def defining_residual(variant, s, f, g):
    acc = sum((a * b for a, b in zip(f, g)), s * 0)
    if variant == "Q":
        return acc + s * (s - 1)
    if variant == "Qprime":
        return acc + s * s - 1
    raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class QuadricPoint:
    variant: str
    s: Poly
    f: tuple
    g: tuple

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        object.__setattr__(self, "g", tuple(self.g))
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if len(self.f) != len(self.g):
            raise ValueError("f and g rows differ in length")

    @property
    def n(self) -> int:
        return len(self.f)

    @property
    def ctx(self) -> RingCtx:
        return self.s.ctx

    @property
    def coords(self) -> tuple:
        return (self.s,) + self.f + self.g

    @classmethod
    def from_coords(cls, variant, coords):
        coords = tuple(coords)
        if len(coords) % 2 != 1:
            raise ValueError("a quadric point has 2n+1 coordinates")
        n = (len(coords) - 1) // 2
        return cls(variant, coords[0], coords[1:n + 1], coords[n + 1:])

    def residual(self) -> Poly:
        return defining_residual(self.variant, self.s, self.f, self.g)

    def is_valid(self) -> bool:
        return self.residual().is_zero()

    def subs(self, assignment) -> "QuadricPoint":
        return QuadricPoint.from_coords(self.variant, [c.subs(assignment) for c in self.coords])

    def to_json(self) -> dict:
        return {"variant": self.variant, "n": self.n, "s": str(self.s),
                "f": [str(x) for x in self.f], "g": [str(x) for x in self.g]}

    @classmethod
    def from_json(cls, d: dict, ctx: RingCtx) -> "QuadricPoint":
        return check_point([d["s"], *d["f"], *d["g"]], d.get("variant", "Q"),
                           d.get("n", len(d["f"])), ctx)

    def __str__(self):
        f = ", ".join(map(str, self.f))
        g = ", ".join(map(str, self.g))
        return f"({self.s}; {f}; {g})"


def check_point(coords, variant: str, n: int, ctx: RingCtx) -> QuadricPoint:
    """Validate a raw (2n+1)-tuple; raises ``NotOnQuadric`` with the residual."""
    coords = [c if isinstance(c, Poly) else ctx.parse(c) if isinstance(c, str) else ctx.const(c)
              for c in coords]
    if len(coords) != 2 * n + 1:
        raise ValueError(f"expected {2 * n + 1} coordinates, got {len(coords)}")
    v = QuadricPoint.from_coords(variant, coords)
    r = v.residual()
    if not r.is_zero():
        raise NotOnQuadric(r)
    return v


def zero_point(n: int, ctx: RingCtx) -> QuadricPoint:
    z = ctx.zero
    return QuadricPoint("Q", z, (z,) * n, (z,) * n)


def one_point(n: int, ctx: RingCtx) -> QuadricPoint:
    z = ctx.zero
    return QuadricPoint("Q", ctx.one, (z,) * n, (z,) * n)


def base_qprime(n: int, ctx: RingCtx) -> QuadricPoint:
    """u_0 = (1; 0..0; 0..0) on Q'."""
    z = ctx.zero
    return QuadricPoint("Qprime", ctx.one, (z,) * n, (z,) * n)


def alpha(u: QuadricPoint) -> QuadricPoint:
    if u.variant != "Qprime":
        raise ValueError("alpha takes a point of Q'")
    return QuadricPoint("Q", (u.s + 1) / 2, u.f, tuple(x / 4 for x in u.g))


def beta(v: QuadricPoint) -> QuadricPoint:
    if v.variant != "Q":
        raise ValueError("beta takes a point of Q")
    return QuadricPoint("Qprime", 2 * v.s - 1, v.f, tuple(4 * x for x in v.g))


def gamma(v: QuadricPoint) -> QuadricPoint:
    """The involution (s; f; g) -> (1 - s; f; g) on Q."""
    if v.variant != "Q":
        raise ValueError("gamma is defined on Q")
    return QuadricPoint("Q", 1 - v.s, v.f, v.g)


def ideal_I(v: QuadricPoint) -> Ideal:
    return Ideal(v.f + (v.s,), v.ctx)


def ideal_J(v: QuadricPoint) -> Ideal:
    return Ideal(v.f + (1 - v.s,), v.ctx)


def eta(v: QuadricPoint):
    """The local orientation (I(v), f) attached to a point, with its certificate."""
    from .orientation import validate_orientation
    from .errors import NotSurjectiveModSquare, OrientationInvalid

    if v.variant != "Q":
        raise ValueError("eta is defined on Q")
    try:
        return validate_orientation(ideal_I(v), v.f)
    except NotSurjectiveModSquare as exc:
        raise OrientationInvalid(f"eta certificate failed: {exc}") from exc


def random_q_point(ctx: RingCtx, n: int, rng, degree=1, nterms=2, height=4) -> QuadricPoint:
    """Random point of Q: one f_k is s (or 1 - s) and the other g_i carry that factor.

    With f_k = s and g_i = s*h_i (i != k), taking g_k = (1 - s) - sum f_i h_i
    gives sum f_i g_i = s(1 - s) exactly; the 1 - s case is symmetric.
    """
    from .arith import random_poly

    s = random_poly(ctx, rng, degree, nterms, height)
    f = [random_poly(ctx, rng, degree, nterms, height) for _ in range(n)]
    h = [random_poly(ctx, rng, degree, nterms, height) for _ in range(n)]
    k = rng.randrange(n)
    a, b = (s, 1 - s) if rng.random() < 0.5 else (1 - s, s)
    f[k] = a
    g = [a * h[i] for i in range(n)]
    g[k] = b - sum((f[i] * h[i] for i in range(n) if i != k), ctx.zero)
    return check_point([s, *f, *g], "Q", n, ctx)


def random_qprime_point(ctx: RingCtx, n: int, rng, sparsity=0.3, degree=1, nterms=2,
                        height=4) -> QuadricPoint:
    """Random point of Q'.

    One coordinate pair (x_k, y_k) is solved from the equation, with the
    partner that is not solved for set to a nonzero constant.  Other
    coordinates are zeroed with probability ``sparsity`` so the special cases
    of the reduction (x_1 not a unit, only z a unit, ...) occur.  With small
    probability the point is (+-1; 0; 0).
    """
    from .arith import random_poly

    def rp():
        return ctx.zero if rng.random() < sparsity else random_poly(ctx, rng, degree, nterms, height)

    if rng.random() < 0.05:
        z = ctx.one if rng.random() < 0.5 else -ctx.one
        return QuadricPoint("Qprime", z, (ctx.zero,) * n, (ctx.zero,) * n)
    z = rp()
    x = [rp() for _ in range(n)]
    y = [rp() for _ in range(n)]
    k = rng.randrange(n)
    c = ctx.zero
    while not c:
        c = ctx.const(ctx.random_scalar(rng, height))
    rest = 1 - z * z - sum((x[i] * y[i] for i in range(n) if i != k), ctx.zero)
    if rng.random() < 0.5:
        x[k], y[k] = c, rest / c.constant_value()
    else:
        y[k], x[k] = c, rest / c.constant_value()
    return check_point([z, *x, *y], "Qprime", n, ctx)
