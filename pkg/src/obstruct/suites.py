"""Named acceptance suites.

Each suite is deterministic given its seed, counts individual checks, and
reports failures as short strings.  ``run_suite`` is what the CLI and the
acceptance tests call.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .arith import RingCtx, random_poly
from .certs import (chain_to_cert, check, combine_to_cert, lift_to_cert, membership_to_cert,
                    orientation_to_cert, random_mutation, reduction_to_cert, sumrep_to_cert,
                    translation_to_cert)
from .errors import UnknownSuite
from .groebner import Ideal, buchberger, comaximal_witness, height, ideal_combine, ideal_member, intersect
from .homotopy import (Chain, Homotopy, TranslationFamily, base_point_chain, concat, gamma_chain,
                       h_eval, homotopy_ctx, reverse_chain, verify_chain, verify_translation)
from .orientation import (combine_homotopy, eta_of, lift_orientation, orientations_equal,
                          rows_congruent, square_ideal, star_product, validate_orientation)
from .orthogonal import (EOGen, SMatrix, eps, family_of, is_orthogonal, make_generator)
from .quadric import (QuadricPoint, alpha, beta, check_point, gamma, ideal_I, ideal_J, one_point,
                      random_q_point, random_qprime_point, zero_point)
from .reduction import reduce_to_base

# 10003 = 7 * 1429 is composite, so the prime-field suites use the next prime.
SUITE_PRIME = 10007


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and self.checks > 0

    def expect(self, cond, message):
        self.checks += 1
        if not cond:
            self.failures.append(message)
        return bool(cond)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checks": self.checks,
                "failures": self.failures[:20], "seconds": round(self.seconds, 3),
                "notes": self.notes}

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"[{tag}] {self.name}: {self.checks - len(self.failures)}/{self.checks} checks{extra}"


def _fields():
    return [RingCtx((), None), RingCtx((), SUITE_PRIME)]


def _random_pair(family, n, rng):
    X = list(range(1, n + 1))
    if family == 1:
        return 0, rng.choice(X)
    if family == 2:
        return 0, n + rng.choice(X)
    if family == 3:
        i, j = rng.sample(X, 2)
        return i, j
    if family == 4:
        i, k = sorted(rng.sample(X, 2))
        return i, n + k
    k, j = sorted(rng.sample(X, 2))
    return n + k, j


# the displayed n = 2 matrices, entries written in the parameter l
DISPLAYED_N2 = {
    (0, 1): [["1", "l", "0", "0", "0"], ["0", "1", "0", "0", "0"], ["0", "0", "1", "0", "0"],
             ["-2*l", "-l^2", "0", "1", "0"], ["0", "0", "0", "0", "1"]],
    (0, 3): [["1", "0", "0", "l", "0"], ["-2*l", "1", "0", "-l^2", "0"], ["0", "0", "1", "0", "0"],
             ["0", "0", "0", "1", "0"], ["0", "0", "0", "0", "1"]],
    (1, 2): [["1", "0", "0", "0", "0"], ["0", "1", "l", "0", "0"], ["0", "0", "1", "0", "0"],
             ["0", "0", "0", "1", "0"], ["0", "0", "0", "-l", "1"]],
    (1, 4): [["1", "0", "0", "0", "0"], ["0", "1", "0", "0", "l"], ["0", "0", "1", "-l", "0"],
             ["0", "0", "0", "1", "0"], ["0", "0", "0", "0", "1"]],
    (3, 2): [["1", "0", "0", "0", "0"], ["0", "1", "0", "0", "0"], ["0", "0", "1", "0", "0"],
             ["0", "0", "l", "1", "0"], ["0", "-l", "0", "0", "1"]],
}


def suite_orthogonality(seed=0, samples=200) -> SuiteResult:
    res = SuiteResult("orthogonality")
    rng = random.Random(seed)
    for ctx in _fields():
        for n in (2, 3, 4):
            for fam in range(1, 6):
                for _ in range(samples):
                    i, j = _random_pair(fam, n, rng)
                    lam = ctx.const(ctx.random_scalar(rng, 50))
                    M = make_generator(eps(i, j, lam, n), n, ctx)
                    try:
                        is_orthogonal(M, n)
                        ok = True
                    except Exception:
                        ok = False
                    res.expect(ok, f"eps_{{{i},{j}}}({lam}) not orthogonal, n={n}, {ctx.field_tag}")
    L = RingCtx(("l",))
    for (i, j), rows in DISPLAYED_N2.items():
        ours = make_generator(eps(i, j, L.gen("l"), 2), 2, L)
        shown = SMatrix.from_dense([[L.parse(x) for x in r] for r in rows], L)
        res.expect(ours == shown, f"eps_{{{i},{j}}} differs from the displayed matrix")
    return res


def suite_reduction(seed=0, samples=100) -> SuiteResult:
    res = SuiteResult("reduction")
    rng = random.Random(seed)
    steps = {}
    for ctx in _fields():
        for n in (2, 3):
            for _ in range(samples):
                u = random_qprime_point(ctx, n, rng)
                try:
                    rc = reduce_to_base(u)
                except Exception as exc:
                    res.expect(False, f"reduce_to_base failed on {u}: {exc}")
                    continue
                for st in rc.steps:
                    steps[st] = steps.get(st, 0) + 1
                res.expect(len(rc.word) <= 2 * n + 2, f"word too long for {u}")
                ok, why = check(reduction_to_cert(rc))
                res.expect(ok, f"checker rejected reduction of {u}: {why}")
    q = RingCtx(())
    rc = reduce_to_base(check_point([0, 1, 0, 1, 0], "Qprime", 2, q))
    res.expect([str(g) for g in rc.word] == ["eps_{0,1}(1)", "eps_{0,3}(1/2)"],
               f"fixture word is {[str(g) for g in rc.word]}")
    res.notes["step_counts"] = dict(sorted(steps.items()))
    return res


def _random_translation_homotopy(ctxT, n, rng, length=2):
    """alpha(sigma(T) beta(0)) for a random word with parameters c*T, c a random
    polynomial of degree <= 1 in the coefficient ring."""
    T = ctxT.gen(ctxT.homotopy_var)
    base = RingCtx(tuple(v for v in ctxT.vars if v != ctxT.homotopy_var), ctxT.p)
    word = []
    for k in range(length):
        # families 3-5 fix beta(0) = (-1; 0; 0), so start with family 1 or 2
        fam = rng.randrange(1, 3) if k == 0 else rng.randrange(1, 6)
        i, j = _random_pair(fam, n, rng)
        c = ctxT.zero
        while not c:
            c = random_poly(base, rng, 1, 2, 3).to_ctx(ctxT)
        word.append(eps(i, j, c * T, n))
    fam = TranslationFamily(word, n, ctxT)
    start = beta(zero_point(n, ctxT))
    H, _ = verify_translation(fam, start)
    return Homotopy(alpha(H.point)), fam


def suite_involution(seed=0, samples=100) -> SuiteResult:
    res = SuiteResult("involution")
    rng = random.Random(seed)
    R = RingCtx(("x", "y"))
    for k in range(samples):
        ctx = R if k % 2 == 0 else RingCtx(("x", "y"), SUITE_PRIME)
        v = random_q_point(ctx, rng.choice([2, 3]), rng)
        res.expect(gamma(gamma(v)) == v, f"Gamma^2 != id on {v}")
        res.expect(gamma(v).is_valid(), f"Gamma(v) off the quadric for {v}")
    for n in (2, 3, 4):
        q = RingCtx(())
        res.expect(gamma(zero_point(n, q)) == one_point(n, q), f"Gamma(0) != 1 for n={n}")
        c = base_point_chain(n)
        z, o = zero_point(n, c.ctx), one_point(n, c.ctx)
        try:
            verify_chain(gamma_chain(c), o, z)
            ok = True
        except Exception:
            ok = False
        res.expect(ok, f"gamma of the base-point chain fails for n={n}")
    ctxT = homotopy_ctx(R)
    for _ in range(10):
        n = rng.choice([2, 3])
        H, _ = _random_translation_homotopy(ctxT, n, rng)
        chain = Chain([H])
        start, end = h_eval(H, 0), h_eval(H, 1)
        verify_chain(chain, start, end)
        try:
            verify_chain(gamma_chain(chain), gamma(start), gamma(end))
            ok = True
        except Exception:
            ok = False
        res.expect(ok, "gamma of a translation chain does not verify")
    return res


DISPLAYED_N2_CHAIN = ["(0; T, 0; 0, 0)", "(T; 1, 0; -T^2 + T, 0)", "(1; -T + 1, 0; 0, 0)"]
DISPLAYED_N2_CHAIN_INPUT = [["0", "T", "0", "0", "0"], ["T", "1", "0", "T*(1-T)", "0"],
                        ["1", "1-T", "0", "0", "0"]]


def suite_base_chain(seed=0) -> SuiteResult:
    res = SuiteResult("base-chain")
    for n in range(2, 6):
        c = base_point_chain(n)
        for k, H in enumerate(c, 1):
            res.expect(H.point.residual().is_zero(), f"entry {k} off the quadric for n={n}")
        try:
            verify_chain(c, zero_point(n, c.ctx), one_point(n, c.ctx))
            ok = True
        except Exception as exc:
            ok = False
        res.expect(ok, f"base-point chain does not verify for n={n}")
        ok, why = check(chain_to_cert(c, zero_point(n, c.ctx), one_point(n, c.ctx)))
        res.expect(ok, f"checker rejected the base-point chain for n={n}: {why}")
    c = base_point_chain(2)
    for H, text, coords in zip(c, DISPLAYED_N2_CHAIN, DISPLAYED_N2_CHAIN_INPUT):
        parsed = QuadricPoint.from_coords("Q", [c.ctx.parse(x) for x in coords])
        res.expect(H.point == parsed, f"entry {H} differs from the displayed tuple")
        res.expect(str(H) == text, f"entry prints as {H}, expected {text}")
    return res


def suite_alpha_beta(seed=0, samples=100) -> SuiteResult:
    res = SuiteResult("alpha-beta")
    rng = random.Random(seed)
    R = RingCtx(("x", "y"))
    for k in range(samples):
        ctx = R if k % 2 == 0 else RingCtx(("x",), SUITE_PRIME)
        n = rng.choice([2, 3])
        v = random_q_point(ctx, n, rng)
        b = beta(v)
        res.expect(b.is_valid(), f"beta(v) off Q' for {v}")
        res.expect(alpha(b) == v, f"alpha(beta(v)) != v for {v}")
        u = random_qprime_point(ctx, n, rng)
        a = alpha(u)
        res.expect(a.is_valid(), f"alpha(u) off Q for {u}")
        res.expect(beta(a) == u, f"beta(alpha(u)) != u for {u}")
    return res


GB_FIXTURES = [
    ("x", "y"), ("x+y", "x-y"), ("x^2-y", "x*y-1"), ("x^2+y^2-1", "x-y"), ("x*y", "x^2"),
    ("x^3-y^2", "x^2*y-x"), ("x-1", "y-2"), ("x^2", "y^2", "x*y"), ("x+x^2", "y+y^2"),
    ("x*y-1", "y^2-x"), ("x^2-2", "y^2-3"), ("x^2*y-y", "x*y^2-x"), ("x^3", "y^3", "x*y-1"),
    ("x^2-x", "y^2-y", "x*y"), ("x-y^2", "y-x^2"), ("2*x+3*y-1", "x-y+4"), ("x^4-1", "y-x^2"),
    ("x*y+y", "x^2+x"), ("x^2+x*y+y^2", "x^3-y^3"), ("x", "x^2-y^3", "y^5"),
]


def suite_groebner(seed=0) -> SuiteResult:
    res = SuiteResult("groebner")
    rng = random.Random(seed)
    R = RingCtx(("x", "y"))
    for gens in GB_FIXTURES:
        I = Ideal([R.parse(g) for g in gens], R)
        G = I.gb
        for g, tr in zip(G, I.gb_trace):
            res.expect(sum((t * h for t, h in zip(tr, I.gens)), R.zero) == g,
                       f"trace of {g} does not recombine for {gens}")
        again, _ = buchberger(list(G), R)
        res.expect(list(again) == list(G), f"GB not idempotent for {gens}")
        for _ in range(3):
            p = sum((random_poly(R, rng, 2, 2, 5) * h for h in I.gens), R.zero)
            cert = ideal_member(p, I)
            ok = bool(cert) and check(membership_to_cert(cert))[0]
            res.expect(ok, f"membership certificate for a combination of {gens} rejected")
    heights = [(["x"], 1), (["x", "y"], 2), (["1"], float("inf")), ([], 0)]
    for gens, want in heights:
        got = height(Ideal([R.parse(g) for g in gens], R))
        res.expect(got == want, f"height of {gens} is {got}, expected {want}")
    return res


def _point_ideal(ctx, a, b):
    x, y = ctx.gen("x"), ctx.gen("y")
    return Ideal([x - a, y - b], ctx)


def random_point_orientation(ctx, rng, npoints=None):
    """Orientation over a product of distinct point ideals, built as a star product of
    randomly twisted rows (U*(x-a, y-b) + squares, U an invertible constant matrix)."""
    npoints = npoints or rng.choice([1, 2])
    pts = set()
    while len(pts) < npoints:
        pts.add((rng.randint(-3, 3), rng.randint(-3, 3)))
    out = None
    for a, b in sorted(pts):
        I = _point_ideal(ctx, a, b)
        h = I.gens
        while True:
            U = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
            if (U[0][0] * U[1][1] - U[0][1] * U[1][0]) % (ctx.p or 0 or 10 ** 9 + 7):
                break
        sq = [h[0] * h[0], h[0] * h[1], h[1] * h[1]]
        row = [U[r][0] * h[0] + U[r][1] * h[1] + rng.randint(-2, 2) * rng.choice(sq)
               for r in range(2)]
        o = validate_orientation(I, row)
        out = o if out is None else star_product(out, o).orientation
    return out


def suite_lifting(seed=0, samples=50) -> SuiteResult:
    res = SuiteResult("lifting")
    rng = random.Random(seed)
    R = RingCtx(("x", "y"))
    x, y = R.gen("x"), R.gen("y")
    o = validate_orientation(Ideal([x, y], R), [x + x * x, y + y * y])
    w = lift_orientation(o)
    res.expect(w.point.residual().is_zero(), "fixture lift off the quadric")
    res.expect(orientations_equal(eta_of(w.point), o), "eta(fixture lift) != input")
    res.expect(check(lift_to_cert(w))[0], "checker rejected the fixture lift")
    for k in range(samples):
        ctx = R if k % 2 == 0 else RingCtx(("x", "y"), SUITE_PRIME)
        o = random_point_orientation(ctx, rng)
        try:
            w = lift_orientation(o)
        except Exception as exc:
            res.expect(False, f"lift failed for {o}: {exc}")
            continue
        res.expect(w.point.residual().is_zero(), f"lift of {o} off the quadric")
        res.expect(orientations_equal(eta_of(w.point), o), f"eta(lift) != {o}")
        ok, why = check(lift_to_cert(w))
        res.expect(ok, f"checker rejected lift of {o}: {why}")
    return res


def suite_star(seed=0) -> SuiteResult:
    res = SuiteResult("star")
    R = RingCtx(("x", "y"))
    x, y = R.gen("x"), R.gen("y")
    K = validate_orientation(Ideal([x, y], R), [x, y])
    I = validate_orientation(Ideal([x - 1, y], R), [x - 1, y])
    sr = star_product(K, I)
    K2, I2 = square_ideal(K.I), square_ideal(I.I)
    for F, a, b in zip(sr.f, K.f, I.f):
        res.expect(K2.normal_form(F - a).is_zero(), f"{F} not congruent to {a} mod K^2")
        res.expect(I2.normal_form(F - b).is_zero(), f"{F} not congruent to {b} mod I^2")
    KI = ideal_combine("product", K.I, I.I)
    try:
        validate_orientation(KI, sr.f)
        ok = True
    except Exception:
        ok = False
    res.expect(ok, "star product row does not validate over KI")
    rev = star_product(I, K)
    res.expect(rows_congruent(sr.f, rev.f, square_ideal(KI)) is not None,
               "star product is not commutative modulo (KI)^2")
    res.expect(check(sumrep_to_cert(sr))[0], "checker rejected the star product")
    unit = validate_orientation(Ideal([R.one], R), [x, y])
    tr = star_product(K, unit)
    res.expect(rows_congruent(tr.f, K.f, K2) is not None, "unit partner changes the row mod K^2")
    return res


def subtraction_instance(rng, ctx, n):
    """A point v with a presented chain v -> 0: a translation homotopy from 0, reversed."""
    ctxT = homotopy_ctx(ctx)
    H, _ = _random_translation_homotopy(ctxT, n, rng, length=rng.choice([2, 3, 4]))
    chain = reverse_chain(Chain([H]))
    v = h_eval(H, 1)
    return v, chain


def suite_subtraction(seed=0, samples=20) -> SuiteResult:
    res = SuiteResult("subtraction")
    rng = random.Random(seed)
    for k in range(samples):
        ctx = RingCtx(("x",)) if k % 2 == 0 else RingCtx((), SUITE_PRIME)
        n = rng.choice([2, 3])
        v, chain = subtraction_instance(rng, ctx, n)
        ctxT = chain.ctx
        zero = zero_point(n, ctxT)
        res.expect(v != zero, "degenerate instance v = 0")
        verify_chain(chain, v, zero)
        I, J = ideal_I(v), ideal_J(v)
        res.expect(comaximal_witness(I, J).holds(), f"I + J != A for {v}")
        res.expect(intersect(I, J).same_as(Ideal(v.f, ctxT)), f"I cap J != (f) for {v}")
        base = base_point_chain(n, ctxT)
        full = concat(gamma_chain(chain), reverse_chain(base))
        try:
            verify_chain(full, gamma(v), zero)
            ok = True
        except Exception as exc:
            ok = False
        res.expect(ok, f"Gamma(chain) + base chain does not verify for {v}")
        ok, why = check(chain_to_cert(full, gamma(v), zero))
        res.expect(ok, f"checker rejected the mapped chain: {why}")
    return res


def combine_fixtures():
    R = RingCtx(("x", "y"))
    RT = homotopy_ctx(R)
    P = R.parse
    out = []
    v = check_point(["0", "x", "y", "0", "0"], "Q", 2, R)
    J = Ideal([P("x-1"), P("y-1")], R)
    out.append(("constant", Homotopy.constant(v), J,
                validate_orientation(J, [P("x-1"), P("y-1")]), [0, 0]))
    H = Homotopy(check_point(["x*T", "x*T", "y", "1-x*T", "0"], "Q", 2, RT))
    J = Ideal([P("x-2"), P("y-3")], R)
    out.append(("moving", H, J, validate_orientation(J, [P("x-2"), P("y-3")]), [1, 0]))
    base = base_point_chain(2, R)
    J = Ideal([P("x"), P("y")], R)
    out.append(("base-chain entry", base.homotopies[1], J,
                validate_orientation(J, [P("x"), P("y")]), [0, 1]))
    return out


def suite_combine(seed=0) -> SuiteResult:
    res = SuiteResult("combine")
    for name, H, J, wJ, lams in combine_fixtures():
        try:
            out = combine_homotopy(H, J, wJ, lams)
        except Exception as exc:
            res.expect(False, f"{name}: combine failed: {exc}")
            continue
        res.expect(out.modified.point.residual().is_zero(), f"{name}: H' off the quadric")
        res.expect(out.homotopy.point.residual().is_zero(), f"{name}: lifted homotopy off the quadric")
        for e in out.endpoints:
            res.expect(e.ideal_equal and e.congruence is not None,
                       f"{name}: endpoint T={e.t} differs from the star product")
        ok, why = check(combine_to_cert(H, J, wJ, out))
        res.expect(ok, f"{name}: checker rejected the combination: {why}")
    return res


def mutation_pool(seed=0):
    """Valid certificates of every kind the mutation suite perturbs."""
    rng = random.Random(seed)
    pool = []
    for ctx in _fields():
        for n in (2, 3):
            for _ in range(3):
                pool.append(reduction_to_cert(reduce_to_base(random_qprime_point(ctx, n, rng, sparsity=0.1))))
    q = RingCtx(())
    pool.append(reduction_to_cert(reduce_to_base(check_point([0, 1, 0, 1, 0], "Qprime", 2, q))))
    c = base_point_chain(2)
    pool.append(chain_to_cert(c, zero_point(2, c.ctx), one_point(2, c.ctx)))
    v, chain = subtraction_instance(rng, RingCtx(("x",)), 2)
    pool.append(chain_to_cert(chain, v, zero_point(2, chain.ctx)))
    ctxT = homotopy_ctx(RingCtx(()))
    T = ctxT.gen("T")
    fam = TranslationFamily([eps(1, 2, T, 2), eps(0, 3, 2 * T, 2)], 2, ctxT)
    u = check_point([0, 1, 0, 1, 0], "Qprime", 2, ctxT)
    H, _ = verify_translation(fam, u)
    pool.append(translation_to_cert([fam], u, H))
    R = RingCtx(("x", "y"))
    x, y = R.gen("x"), R.gen("y")
    o = validate_orientation(Ideal([x, y], R), [x + x * x, y + y * y])
    pool += [orientation_to_cert(o), lift_to_cert(lift_orientation(o))]
    K = validate_orientation(Ideal([x, y], R), [x, y])
    I = validate_orientation(Ideal([x - 1, y], R), [x - 1, y])
    pool.append(sumrep_to_cert(star_product(K, I)))
    I2 = Ideal([x * x - y, x * y - 1], R)
    pool.append(membership_to_cert(ideal_member(x * x * x - x * y + (x * x - y) * y, I2)))
    name, H, J, wJ, lams = combine_fixtures()[1]
    pool.append(combine_to_cert(H, J, wJ, combine_homotopy(H, J, wJ, lams)))
    return pool


def suite_mutation(seed=0, samples=100) -> SuiteResult:
    res = SuiteResult("mutation")
    rng = random.Random(seed)
    pool = mutation_pool(seed)
    for cert in pool:
        ok, why = check(cert)
        res.expect(ok, f"pool certificate of kind {cert['kind']} is not valid: {why}")
    by_kind = {}
    for cert in pool:
        by_kind.setdefault(cert["kind"], []).append(cert)
    names = sorted(by_kind)
    kinds = {}
    for _ in range(samples):
        group = by_kind[names[rng.randrange(len(names))]]
        cert = group[rng.randrange(len(group))]
        path, bad = random_mutation(cert, rng)
        ok, _ = check(bad)
        kinds[cert["kind"]] = kinds.get(cert["kind"], 0) + 1
        res.expect(not ok, f"mutation at {cert['kind']}:{'/'.join(map(str, path))} went undetected")
    res.notes["mutations_by_kind"] = dict(sorted(kinds.items()))
    return res


SUITES = {
    "orthogonality": suite_orthogonality,
    "reduction": suite_reduction,
    "involution": suite_involution,
    "base-chain": suite_base_chain,
    "alpha-beta": suite_alpha_beta,
    "groebner": suite_groebner,
    "lifting": suite_lifting,
    "star": suite_star,
    "subtraction": suite_subtraction,
    "combine": suite_combine,
    "mutation": suite_mutation,
}


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    t0 = time.perf_counter()
    try:
        res = SUITES[name](seed)
    except Exception as exc:
        res = SuiteResult(name)
        res.expect(False, f"suite crashed: {type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - t0
    return res
