"""Local orientations (I, f), their lifts to quadric points, star products,
pseudo-sums and pseudo-differences, and the homotopy combination step.

An orientation over I is a row f = (f_1..f_n) of elements of I with
I = (f) + I^2.  Validity is always certified: each f_i comes with a
membership certificate in I, and each generator of I with one in (f) + I^2.

Lifting uses the determinant trick.  Write each generator h_i of I as
h_i = sum_j C_ij f_j + sum_k a_ik h_k with a_ik in I, so (Id - a) h = C f.
With D = det(Id - a) and s = 1 - D we get s in I and
D h = adj(Id - a) C f, i.e. (1 - s) h_i lies in (f) with explicit
cofactors.  Writing s = sum b_i h_i then gives s(1 - s) = sum f_j g_j.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .arith import Poly, RingCtx, random_poly
from .errors import (CertificateFailure, ComaximalityFailsOnPath, BudgetExhausted, NotComaximal,
                     NotSurjectiveModSquare)
from .groebner import (ComaxCert, Ideal, MembershipCert, comaximal_witness, crt_lift, height,
                       ideal_combine, ideal_member, square_gens)
from .orthogonal import SMatrix
from .quadric import QuadricPoint, check_point, ideal_I, ideal_J


class RowNotInIdeal(NotSurjectiveModSquare):
    def __init__(self, generator, normal_form=None):
        super().__init__(generator, normal_form)
        self.args = (f"row entry {generator} is not in the ideal",)


@dataclass(frozen=True)
class LocalOrientation:
    I: Ideal
    f: tuple
    row_certs: tuple      # f_i in I
    gen_certs: tuple      # each nonzero generator of I in (f) + I^2
    hs: tuple             # the nonzero generators of I, in order

    @property
    def n(self) -> int:
        return len(self.f)

    @property
    def ctx(self) -> RingCtx:
        return self.I.ctx

    def to_json(self) -> dict:
        return {"ideal": [str(g) for g in self.I.gens], "row": [str(x) for x in self.f], "n": self.n}

    def __str__(self):
        return f"({', '.join(map(str, self.I.gens))} | {', '.join(map(str, self.f))})"


def square_ideal(I: Ideal) -> Ideal:
    """I^2 on the products of the nonzero generators (the order certificates use)."""
    return Ideal(square_gens([g for g in I.gens if g]), I.ctx, I.budget)


def validate_orientation(I: Ideal, f) -> LocalOrientation:
    """Certify I = (f) + I^2 and f in I; raises ``NotSurjectiveModSquare`` on failure."""
    f = tuple(x if isinstance(x, Poly) else I.ctx.parse(x) if isinstance(x, str) else I.ctx.const(x)
              for x in f)
    if len(f) < 2:
        raise ValueError("an orientation row needs n >= 2 entries")
    hs = tuple(g for g in I.gens if g)
    base = Ideal(hs, I.ctx, I.budget)
    row_certs = []
    for x in f:
        c = ideal_member(x, base)
        if not c:
            raise RowNotInIdeal(x, c.normal_form)
        row_certs.append(c)
    S = Ideal(f + tuple(square_gens(list(hs))), I.ctx, I.budget)
    gen_certs = []
    for h in hs:
        c = ideal_member(h, S)
        if not c:
            raise NotSurjectiveModSquare(h, c.normal_form)
        gen_certs.append(c)
    return LocalOrientation(I, f, tuple(row_certs), tuple(gen_certs), hs)


def orientation_from_json(d: dict, ctx: RingCtx) -> LocalOrientation:
    I = Ideal([ctx.parse(g) for g in d["ideal"]], ctx)
    return validate_orientation(I, [ctx.parse(x) for x in d["row"]])


def rows_congruent(f1, f2, modulus: Ideal):
    """Certificates that f1_i - f2_i lie in ``modulus``, or ``None``."""
    certs = []
    for a, b in zip(f1, f2):
        c = ideal_member(a - b, modulus)
        if not c:
            return None
        certs.append(c)
    return certs


def orientations_equal(o1: LocalOrientation, o2: LocalOrientation) -> bool:
    """Same ideal (both inclusions) and rows congruent modulo I^2."""
    if o1.n != o2.n or not o1.I.same_as(o2.I):
        return False
    return rows_congruent(o1.f, o2.f, square_ideal(o1.I)) is not None


# lifting ---------------------------------------------------------------------


@dataclass(frozen=True)
class LiftWitness:
    orientation: LocalOrientation
    s: Poly
    g: tuple
    point: QuadricPoint
    s_cert: MembershipCert            # s in I, over the nonzero generators
    annihilator: tuple                # (1 - s) h_i in (f)

    @property
    def f(self):
        return self.point.f


def _adjugate(M: SMatrix):
    m = M.size
    ctx = M.ctx
    adj = [[ctx.zero] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            rows = [{(c if c < i else c - 1): v for c, v in r.items() if c != i}
                    for k, r in enumerate(M.rows) if k != j]
            minor = SMatrix(m - 1, rows, ctx).det() if m > 1 else ctx.one
            adj[i][j] = minor if (i + j) % 2 == 0 else -minor
    return adj


def lift_orientation(o: LocalOrientation) -> LiftWitness:
    """A quadric point (s; f; g) with eta = o, via the determinant trick."""
    ctx, f, hs = o.ctx, o.f, o.hs
    n, m = len(f), len(hs)
    if m == 0:
        z = ctx.zero
        point = check_point([z, *f, *([z] * n)], "Q", n, ctx)
        return LiftWitness(o, z, (z,) * n, point, MembershipCert(z, (), ()), ())
    pairs = [(k, l) for k in range(m) for l in range(k, m)]
    C = [[ctx.zero] * n for _ in range(m)]
    a = [[ctx.zero] * m for _ in range(m)]
    for i, cert in enumerate(o.gen_certs):
        cof = cert.cofactors
        for j in range(n):
            C[i][j] = cof[j]
        for (k, l), e in zip(pairs, cof[n:]):
            if e:
                a[i][k] = a[i][k] + e * hs[l]
    M = SMatrix(m, [{k: (ctx.one if i == k else ctx.zero) - a[i][k] for k in range(m)}
                    for i in range(m)], ctx)
    D = M.det()
    s = 1 - D
    adj = _adjugate(M)
    # a zero f_j carries no information; keep its column (and so g_j) at 0
    AC = [[sum((adj[i][k] * C[k][j] for k in range(m)), ctx.zero) if f[j] else ctx.zero
           for j in range(n)] for i in range(m)]
    annihilator = tuple(MembershipCert(D * hs[i], f, tuple(AC[i])) for i in range(m))
    if not all(c.holds() for c in annihilator):
        raise CertificateFailure("adjugate identity (1 - s) h in (f) failed")
    s_cert = ideal_member(s, Ideal(hs, ctx, o.I.budget))
    if not s_cert:
        raise CertificateFailure(f"Nakayama witness {s} is not in I")
    b = s_cert.cofactors
    g = tuple(sum((b[i] * AC[i][j] for i in range(m)), ctx.zero) for j in range(n))
    point = QuadricPoint("Q", s, f, g)
    if not point.is_valid():
        raise CertificateFailure(f"lifted point is off the quadric: {point.residual()}")
    return LiftWitness(o, s, g, point, s_cert, annihilator)


def eta_of(v: QuadricPoint) -> LocalOrientation:
    """(I(v), f) as a certified orientation."""
    return validate_orientation(ideal_I(v), v.f)


def orientation_gamma(w: LiftWitness) -> LocalOrientation:
    """eta of Gamma(point): the ideal J(point) with the same row."""
    return validate_orientation(ideal_J(w.point), w.point.f)


# star product and pseudo-sums ------------------------------------------------


@dataclass(frozen=True)
class SumRep:
    orientation: LocalOrientation
    left: LocalOrientation
    right: LocalOrientation
    comax: ComaxCert
    left_congruence: tuple    # F_i - left.f_i in left.I^2
    right_congruence: tuple   # F_i - right.f_i in right.I^2
    provenance: dict = field(default_factory=dict)

    @property
    def f(self):
        return self.orientation.f


def star_product(a: LocalOrientation, b: LocalOrientation, kind="star", reduce=True,
                 provenance=None) -> SumRep:
    """Orientation of KI restricting to a on K and to b on I (CRT mod K^2, I^2)."""
    if a.n != b.n or a.ctx != b.ctx:
        raise ValueError("orientations of different rank or over different rings")
    K, I = a.I, b.I
    cert = comaximal_witness(K, I)
    K2, I2 = square_ideal(K), square_ideal(I)
    sq = cert.squared()
    modulus = ideal_combine("product", K2, I2) if reduce else Ideal((), a.ctx)
    F = tuple(crt_lift(K2, I2, x, y, cert=sq, modulus=modulus) for x, y in zip(a.f, b.f))
    left = rows_congruent(F, a.f, K2)
    right = rows_congruent(F, b.f, I2)
    if left is None or right is None:
        raise CertificateFailure("CRT lift is not congruent to the inputs")
    product = ideal_combine("product", K, I)
    o = validate_orientation(product, F)
    prov = {"kind": kind}
    prov.update(provenance or {})
    return SumRep(o, a, b, cert, tuple(left), tuple(right), prov)


def pseudo_sum(a: LocalOrientation, b: LocalOrientation) -> SumRep:
    return star_product(a, b, kind="pseudo-sum")


# moving -------------------------------------------------------------------------


@dataclass(frozen=True)
class MoveBudget:
    attempts: int = 40
    degree: int = 2
    nterms: int = 2
    height: int = 3


@dataclass(frozen=True)
class MoveResult:
    witness: LiftWitness
    J: Ideal
    comax: ComaxCert
    height: object
    lambdas: tuple
    seed: int
    attempt: int


def move_orientation(o: LocalOrientation, K: Ideal, seed=0, budget: MoveBudget = MoveBudget()
                     ) -> MoveResult:
    """Search f_i = a_i + lam_i t^2 (t the Nakayama witness of the plain lift) until
    J = J(point) satisfies J + K = A and height(J) >= n.

    Candidates are enumerated deterministically from ``seed``; the first one
    tried is lam = 0.  Failure raises ``BudgetExhausted``, which is not a proof
    that no move exists.
    """
    ctx, n = o.ctx, o.n
    t = lift_orientation(o).s
    t2 = t * t
    rng = random.Random(seed)
    for attempt in range(budget.attempts):
        if attempt == 0:
            lams = (ctx.zero,) * n
        else:
            grow = 1 + attempt // 10
            lams = tuple(random_poly(ctx, rng, min(budget.degree, grow), budget.nterms,
                                     budget.height * grow) for _ in range(n))
        row = tuple(x + lam * t2 for x, lam in zip(o.f, lams))
        w = lift_orientation(validate_orientation(o.I, row))
        J = ideal_J(w.point)
        try:
            cert = comaximal_witness(J, K)
        except NotComaximal:
            continue
        h = height(J)
        if h < n:
            continue
        return MoveResult(w, J, cert, h, lams, seed, attempt)
    raise BudgetExhausted(f"no admissible move within {budget.attempts} candidates (seed {seed})")


def pseudo_difference(a: LocalOrientation, b: LocalOrientation, seed=0,
                      budget: MoveBudget = MoveBudget()) -> SumRep:
    """a minus b, represented as a star J(v) with v a moved lift of b; depends on the move."""
    mv = move_orientation(b, a.I, seed, budget)
    oj = orientation_gamma(mv.witness)
    prov = {"seed": seed, "attempt": mv.attempt, "witness": mv.witness.point.to_json(),
            "lambdas": [str(x) for x in mv.lambdas]}
    try:
        return star_product(a, oj, kind="pseudo-difference", provenance=prov)
    except NotComaximal as exc:
        raise CertificateFailure("moved ideal is not comaximal with K") from exc


# combining a homotopy with a fixed orientation --------------------------------


@dataclass(frozen=True)
class EndpointCheck:
    t: int
    expected: SumRep
    ideal_equal: bool
    congruence: tuple


@dataclass(frozen=True)
class CombineResult:
    modified: object          # Homotopy H'(T) = (Y'; phi'; gamma')
    sumrep: SumRep            # Omega over J(H') J[T]
    lift: LiftWitness
    homotopy: object          # the lifted homotopy over A[T]
    endpoints: tuple
    lambdas: tuple


def _to_base(v: QuadricPoint, base: RingCtx) -> QuadricPoint:
    return QuadricPoint.from_coords(v.variant, [c.to_ctx(base) for c in v.coords])


def combine_homotopy(H, J: Ideal, wJ: LocalOrientation, lambdas) -> CombineResult:
    """Combine a homotopy H(T) on Q with an orientation (J, wJ) of A.

    With Y = 1 - Z, tau = T(1 - T), phi'_i = phi_i + lam_i Y^2 tau and
    mu = sum lam_i gamma_i, put Y' = Y - Y tau mu and gamma'_i = gamma_i (1 - tau mu).
    Then Y(1 - Y') = sum phi'_i gamma_i, hence Y'(1 - Y') = sum phi'_i gamma'_i
    and H' = (Y'; phi'; gamma') lies on Q over A[T].  The star product of
    (J(H'), phi') with (J[T], wJ) is lifted to a homotopy whose endpoints are
    checked against the star products of eta(H(0)), eta(H(1)) with (J, wJ).
    """
    from .homotopy import Homotopy, base_ctx, h_eval

    ctxT = H.ctx
    base = base_ctx(ctxT)
    n = H.n
    lambdas = tuple(x.to_ctx(ctxT) if isinstance(x, Poly) else ctxT.const(x) for x in lambdas)
    if len(lambdas) != n:
        raise ValueError(f"need {n} lambdas")
    if J.ctx != base or wJ.ctx != base:
        raise ValueError("J and its orientation must live over the coefficient ring")
    Kt = {t: _to_base(h_eval(H, t), base) for t in (0, 1)}
    for t, v in Kt.items():
        try:
            comaximal_witness(ideal_I(v), J)
        except NotComaximal as exc:
            raise NotComaximal(exc.gb) from None

    Z, phi, gam = H.point.s, H.point.f, H.point.g
    T = ctxT.gen(ctxT.homotopy_var)
    tau = T * (1 - T)
    Y = 1 - Z
    phi2 = tuple(p + lam * Y * Y * tau for p, lam in zip(phi, lambdas))
    mu = sum((lam * g for lam, g in zip(lambdas, gam)), ctxT.zero)
    Y2 = Y - Y * tau * mu
    gam2 = tuple(g * (1 - tau * mu) for g in gam)
    Hp = Homotopy(QuadricPoint("Q", Y2, phi2, gam2))

    JH = ideal_J(Hp.point)
    JT = Ideal([g.to_ctx(ctxT) for g in J.gens], ctxT, J.budget)
    try:
        comaximal_witness(JH, JT)
    except NotComaximal:
        raise ComaximalityFailsOnPath("J(H'(T)) + J[T] is not the unit ideal; try other lambdas")
    omega = validate_orientation(JH, phi2)
    wJT = validate_orientation(JT, [x.to_ctx(ctxT) for x in wJ.f])
    sr = star_product(omega, wJT, kind="combine", reduce=False)
    lift = lift_orientation(sr.orientation)
    HH = Homotopy(lift.point)

    checks = []
    for t in (0, 1):
        end = _to_base(h_eval(HH, t), base)
        expected = star_product(eta_of(Kt[t]), wJ)
        got = ideal_I(end)
        same = got.same_as(expected.orientation.I)
        cong = rows_congruent(end.f, expected.f, square_ideal(expected.orientation.I))
        if not same or cong is None:
            raise CertificateFailure(f"endpoint T={t} does not match the star product")
        checks.append(EndpointCheck(t, expected, same, tuple(cong)))
    return CombineResult(Hp, sr, lift, HH, tuple(checks), lambdas)
