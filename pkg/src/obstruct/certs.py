"""Certificate serialization and an independent checker.

Certificates are plain JSON objects with polynomials written as grammar
strings.  ``verify`` re-checks a certificate using ring arithmetic and
Groebner reduction only: it builds its own generator matrices from the
family definitions and never calls the constructors in the other modules.

Cofactor lists are stored in canonical form so that every stored field takes
part in the identity being checked: standalone membership certificates drop
pairs with a zero generator or cofactor, and fixed-layout lists put 0 against
a zero generator (the checker rejects anything else).  Likewise a lifted
point has g_j = 0 wherever f_j = 0.
"""

from __future__ import annotations

import copy
import json
from functools import lru_cache

from .arith import LocalCtx, LocalFraction, Poly, RingCtx
from .errors import CertificateInvalid
from .groebner import Ideal

SCHEMA_VERSION = "1"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _s(p) -> str:
    return str(p)


def _polys(xs):
    return [str(x) for x in xs]


def _ctx_without(ctx: RingCtx, var) -> RingCtx:
    return RingCtx(tuple(v for v in ctx.vars if v != var), ctx.p, ctx.order)


# serializers ---------------------------------------------------------------------


def membership_to_cert(cert) -> dict:
    pairs = [(g, c) for g, c in zip(cert.gens, cert.cofactors) if g and c]
    return {"kind": "membership", "ctx": cert.element.ctx.to_json(), "element": _s(cert.element),
            "gens": [_s(g) for g, _ in pairs], "cofactors": [_s(c) for _, c in pairs]}


def point_to_cert(v) -> dict:
    return {"kind": "point", "ctx": v.ctx.to_json(), "variant": v.variant, "n": v.n,
            "coords": _polys(v.coords)}


def reduction_to_cert(rc) -> dict:
    from .orthogonal import word_to_json

    u = rc.input
    return {"kind": "reduction", "ctx": u.ctx.to_json(), "n": u.n,
            "local_point": [str(u.ctx.symmetric(x)) for x in rc.lctx.point],
            "input": _polys(u.coords), "word": word_to_json(rc.word)}


def chain_to_cert(chain, start, end) -> dict:
    return {"kind": "chain", "ctx": chain.ctx.to_json(), "variant": start.variant, "n": start.n,
            "homotopies": [_polys(H.point.coords) for H in chain],
            "start": _polys(start.coords), "end": _polys(end.coords)}


def translation_to_cert(fams, u, H) -> dict:
    from .orthogonal import word_to_json

    fams = list(fams)
    word = [g for fam in fams for g in fam.word]
    return {"kind": "translation", "ctx": H.ctx.to_json(), "n": H.n,
            "word": word_to_json(word), "input": _polys(u.coords),
            "homotopy": _polys(H.point.coords)}


def _cof_rows(certs):
    return [[_s(c) if g else "0" for c, g in zip(cert.cofactors, cert.gens)] for cert in certs]


def orientation_to_cert(o) -> dict:
    return {"kind": "orientation", "ctx": o.ctx.to_json(), "n": o.n, "ideal": _polys(o.hs),
            "row": _polys(o.f), "row_cofactors": _cof_rows(o.row_certs),
            "gen_cofactors": _cof_rows(o.gen_certs)}


def lift_to_cert(w) -> dict:
    return {"kind": "lift", "ctx": w.orientation.ctx.to_json(),
            "orientation": orientation_to_cert(w.orientation), "s": _s(w.s), "g": _polys(w.g),
            "s_cofactors": [_s(c) for c in w.s_cert.cofactors],
            "annihilator": _cof_rows(w.annihilator)}


def _on_nonzero(cert):
    """Cofactors restricted to the nonzero generators (the ones orientations list)."""
    return [_s(c) for c, g in zip(cert.cofactors, cert.gens) if g]


def sumrep_to_cert(sr) -> dict:
    c = sr.comax
    return {"kind": "sumrep", "ctx": sr.orientation.ctx.to_json(),
            "provenance": {k: v for k, v in sr.provenance.items()},
            "left": orientation_to_cert(sr.left), "right": orientation_to_cert(sr.right),
            "output": orientation_to_cert(sr.orientation),
            "comax": {"a": _s(c.a), "a_cofactors": _on_nonzero(c.a_cert),
                      "b": _s(c.b), "b_cofactors": _on_nonzero(c.b_cert)},
            "left_congruence": _cof_rows(sr.left_congruence),
            "right_congruence": _cof_rows(sr.right_congruence)}


def combine_to_cert(H, J, wJ, res) -> dict:
    return {"kind": "combine", "ctx": H.ctx.to_json(), "n": H.n,
            "input": _polys(H.point.coords), "lambdas": _polys(res.lambdas),
            "J": _polys(J.gens), "wJ": orientation_to_cert(wJ),
            "modified": _polys(res.modified.point.coords),
            "sumrep": sumrep_to_cert(res.sumrep), "lift": lift_to_cert(res.lift),
            "endpoints": [{"t": e.t, "expected": sumrep_to_cert(e.expected)}
                          for e in res.endpoints]}


# the checker ---------------------------------------------------------------------


def _fail(msg):
    raise CertificateInvalid(msg)


def _ctx(d) -> RingCtx:
    try:
        return RingCtx.from_json(d["ctx"])
    except Exception as exc:  # malformed context is an invalid certificate
        _fail(f"bad ring context: {exc}")


def _parse(ctx, xs):
    return [ctx.parse(x) for x in xs]


def _lin(cofs, gens, ctx):
    if len(cofs) != len(gens):
        _fail(f"cofactor list has {len(cofs)} entries for {len(gens)} generators")
    if any(c and not g for c, g in zip(cofs, gens)):
        _fail("nonzero cofactor on a zero generator (non-canonical certificate)")
    return sum((c * g for c, g in zip(cofs, gens)), ctx.zero)


def _squares(gens):
    return [gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))]


def _residual(variant, coords):
    n = (len(coords) - 1) // 2
    s, f, g = coords[0], coords[1:n + 1], coords[n + 1:]
    acc = sum((a * b for a, b in zip(f, g)), s * 0)
    if variant == "Q":
        return acc + s * s - s
    if variant == "Qprime":
        return acc + s * s - 1
    _fail(f"unknown variant {variant!r}")


def _check_membership(d, ctx):
    el = ctx.parse(d["element"])
    if _lin(_parse(ctx, d["cofactors"]), _parse(ctx, d["gens"]), ctx) != el:
        _fail("membership: cofactors do not recombine to the element")


def _check_point(d, ctx):
    coords = _parse(ctx, d["coords"])
    if len(coords) != 2 * int(d["n"]) + 1:
        _fail("point: wrong number of coordinates")
    r = _residual(d["variant"], coords)
    if r:
        _fail(f"point: defining equation residual {r}")


def _gen_matrix(fam, i, j, lam, n, one, zero):
    """Dense (2n+1)x(2n+1) matrix of one elementary generator, left action on (z; x; y)."""
    size = 2 * n + 1
    M = [[one if a == b else zero for b in range(size)] for a in range(size)]
    X = range(1, n + 1)
    if fam == 1 and i == 0 and j in X:
        M[0][j] = lam
        M[n + j][0] = -2 * lam
        M[n + j][j] = -(lam * lam)
    elif fam == 2 and i == 0 and j - n in X:
        k = j - n
        M[0][j] = lam
        M[k][0] = -2 * lam
        M[k][j] = -(lam * lam)
    elif fam == 3 and i in X and j in X and i != j:
        M[i][j] = lam
        M[n + j][n + i] = -lam
    elif fam == 4 and i in X and j - n in X and i < j - n:
        k = j - n
        M[i][j] = lam
        M[k][n + i] = -lam
    elif fam == 5 and i - n in X and j in X and i - n < j:
        k = i - n
        M[i][j] = lam
        M[n + j][k] = -lam
    else:
        _fail(f"generator ({fam}: {i},{j}) has illegal indices for n={n}")
    return M


def _matmul(A, B, zero):
    size = len(A)
    out = []
    for r in range(size):
        row = []
        for c in range(size):
            acc = zero
            for k in range(size):
                if A[r][k] and B[k][c]:
                    acc = acc + A[r][k] * B[k][c]
            row.append(acc)
        out.append(row)
    return out


def _transpose(A):
    return [list(r) for r in zip(*A)]


def _gram(n, one, zero):
    size = 2 * n + 1
    half = one / 2 if not isinstance(one, LocalFraction) else LocalFraction(one.num / 2)
    B = [[zero] * size for _ in range(size)]
    B[0][0] = one
    for i in range(1, n + 1):
        B[i][n + i] = half
        B[n + i][i] = half
    return B


@lru_cache(maxsize=None)
def _generically_orthogonal(fam, i, j, n, p) -> bool:
    """M^T B M == B with the parameter an indeterminate, so for every value."""
    ring = RingCtx(("lam",), p)
    one, zero = ring.one, ring.zero
    M = _gen_matrix(fam, i, j, ring.gen("lam"), n, one, zero)
    B = _gram(n, one, zero)
    return _matmul(_matmul(_transpose(M), B, zero), M, zero) == B


def _word_matrices(d, ctx, n, one, zero, local):
    mats = []
    for g in d:
        lam = ctx.parse(str(g["lambda"]))
        if local is not None:
            den = ctx.parse(str(g.get("lambda_den", "1")))
            if not local.is_unit(den):
                _fail(f"denominator {den} is not a unit of the local ring")
            lam = LocalFraction(lam, den)
        elif "lambda_den" in g:
            _fail("fractional parameter outside a local ring")
        mats.append(_gen_matrix(int(g["family"]), int(g["i"]), int(g["j"]), lam, n, one, zero))
    return mats


def _apply(M, vec, zero):
    return [sum((a * b for a, b in zip(row, vec) if a and b), zero) for row in M]


def _check_reduction(d, ctx):
    n = int(d["n"])
    local = LocalCtx(ctx, tuple(ctx.coerce(x) for x in d["local_point"]))
    one, zero = LocalFraction(ctx.one), LocalFraction(ctx.zero)
    u = [LocalFraction(c) for c in _parse(ctx, d["input"])]
    if len(u) != 2 * n + 1:
        _fail("reduction: wrong number of coordinates")
    if _residual("Qprime", [x.num for x in u]):
        _fail("reduction: input is not on Q'")
    if len(d["word"]) > 2 * n + 2:
        _fail(f"reduction: word length {len(d['word'])} exceeds 2n+2")
    vec = u
    for k, (g, M) in enumerate(zip(d["word"], _word_matrices(d["word"], ctx, n, one, zero, local))):
        if not _generically_orthogonal(int(g["family"]), int(g["i"]), int(g["j"]), n, ctx.p):
            _fail(f"reduction: generator {k} is not orthogonal")
        vec = _apply(M, vec, zero)
    target = [one] + [zero] * (2 * n)
    if vec != target:
        _fail(f"reduction: word sends the input to {[str(x) for x in vec]}, not u_0")


def _check_chain(d, ctx):
    var = ctx.homotopy_var
    if var is None:
        _fail("chain: ring has no homotopy variable")
    variant = d["variant"]
    hs = [_parse(ctx, h) for h in d["homotopies"]]
    if not hs:
        _fail("chain: empty")
    for k, h in enumerate(hs, 1):
        if len(h) != 2 * int(d["n"]) + 1:
            _fail(f"chain: entry {k} has the wrong length")
        if _residual(variant, h):
            _fail(f"chain: entry {k} is off the quadric")
    at = lambda h, t: [c.subs({var: t}) for c in h]
    start, end = _parse(ctx, d["start"]), _parse(ctx, d["end"])
    seq = [start] + [None] * len(hs)
    for k, h in enumerate(hs, 1):
        prev = start if k == 1 else at(hs[k - 2], 1)
        if at(h, 0) != prev:
            _fail(f"chain: junction {k} does not match")
    if at(hs[-1], 1) != end:
        _fail(f"chain: junction {len(hs) + 1} (end point) does not match")
    del seq


def _check_translation(d, ctx):
    var, n = ctx.homotopy_var, int(d["n"])
    if var is None:
        _fail("translation: ring has no homotopy variable")
    one, zero = ctx.one, ctx.zero
    mats = _word_matrices(d["word"], ctx, n, one, zero, None)
    size = 2 * n + 1
    ident = [[one if a == b else zero for b in range(size)] for a in range(size)]
    P = ident
    for M in mats:
        P = _matmul(M, P, zero)
    if [[x.subs({var: 0}) for x in r] for r in P] != ident:
        _fail("translation: word is not the identity at T=0")
    u = _parse(ctx, d["input"])
    if _residual("Qprime", u):
        _fail("translation: input is not on Q'")
    H = _parse(ctx, d["homotopy"])
    if _apply(P, u, zero) != H:
        _fail("translation: homotopy differs from the word applied to the input")
    if _residual("Qprime", H):
        _fail("translation: homotopy is off the quadric")


def _orientation(d, ctx):
    """Check an orientation certificate; returns (ideal gens, row)."""
    hs, f = _parse(ctx, d["ideal"]), _parse(ctx, d["row"])
    if len(f) != int(d["n"]) or len(f) < 2:
        _fail("orientation: bad row length")
    if any(not h for h in hs):
        _fail("orientation: zero generator listed")
    if len(d["row_cofactors"]) != len(f) or len(d["gen_cofactors"]) != len(hs):
        _fail("orientation: certificate count mismatch")
    for x, cofs in zip(f, d["row_cofactors"]):
        if _lin(_parse(ctx, cofs), hs, ctx) != x:
            _fail(f"orientation: row entry {x} not certified in the ideal")
    big = f + _squares(hs)
    for h, cofs in zip(hs, d["gen_cofactors"]):
        if _lin(_parse(ctx, cofs), big, ctx) != h:
            _fail(f"orientation: generator {h} not certified in (f) + I^2")
    return hs, f


def _check_orientation(d, ctx):
    _orientation(d, ctx)


def _check_lift(d, ctx):
    hs, f = _orientation(d["orientation"], ctx)
    s, g = ctx.parse(d["s"]), _parse(ctx, d["g"])
    if len(g) != len(f):
        _fail("lift: g has the wrong length")
    if any(y and not x for x, y in zip(f, g)):
        _fail("lift: g_j must vanish where f_j does (non-canonical certificate)")
    if _residual("Q", [s, *f, *g]):
        _fail("lift: point is off the quadric")
    if _lin(_parse(ctx, d["s_cofactors"]), hs, ctx) != s:
        _fail("lift: s not certified in I")
    if len(d["annihilator"]) != len(hs):
        _fail("lift: annihilator count mismatch")
    for h, cofs in zip(hs, d["annihilator"]):
        if _lin(_parse(ctx, cofs), f, ctx) != (1 - s) * h:
            _fail(f"lift: (1 - s)*{h} not certified in (f)")


def _nonzero(xs):
    return [x for x in xs if x]


def _check_sumrep(d, ctx):
    K, fa = _orientation(d["left"], ctx)
    I, fb = _orientation(d["right"], ctx)
    P, F = _orientation(d["output"], ctx)
    if P != _nonzero([a * b for a in K for b in I]):
        _fail("sumrep: output ideal is not the product ideal")
    c = d["comax"]
    a, b = ctx.parse(c["a"]), ctx.parse(c["b"])
    if a + b != ctx.one:
        _fail("sumrep: comaximality witness does not sum to 1")
    if _lin(_parse(ctx, c["a_cofactors"]), K, ctx) != a or _lin(_parse(ctx, c["b_cofactors"]), I, ctx) != b:
        _fail("sumrep: comaximality witness not certified")
    for side, gens, row, rows in (("left", K, fa, d["left_congruence"]),
                                  ("right", I, fb, d["right_congruence"])):
        sq = _squares(gens)
        if len(rows) != len(F):
            _fail(f"sumrep: {side} congruence count mismatch")
        for x, y, cofs in zip(F, row, rows):
            if _lin(_parse(ctx, cofs), sq, ctx) != x - y:
                _fail(f"sumrep: output row not congruent to the {side} row")
    return K, fa, I, fb, P, F


def _same_ideal(a, b, ctx):
    A, B = Ideal(a, ctx), Ideal(b, ctx)
    return all(x in B for x in a) and all(x in A for x in b)


def _check_combine(d, ctx):
    var, n = ctx.homotopy_var, int(d["n"])
    if var is None:
        _fail("combine: ring has no homotopy variable")
    base = _ctx_without(ctx, var)
    H = _parse(ctx, d["input"])
    Hp = _parse(ctx, d["modified"])
    lam = _parse(ctx, d["lambdas"])
    if _residual("Q", H) or _residual("Q", Hp):
        _fail("combine: input or modified homotopy is off the quadric")
    T = ctx.gen(var)
    tau = T * (1 - T)
    Y = 1 - H[0]
    for i in range(n):
        if Hp[1 + i] != H[1 + i] + lam[i] * Y * Y * tau:
            _fail(f"combine: modified row entry {i + 1} is not phi + lam Y^2 T(1-T)")
    for t in (0, 1):
        if Hp[0].subs({var: t}) != Y.subs({var: t}):
            _fail(f"combine: Y' and Y differ at T={t}")
    sr = d["sumrep"]
    K, fa, I, fb, P, F = _check_sumrep(sr, ctx)
    if fa != Hp[1:n + 1] or K != _nonzero(Hp[1:n + 1] + [1 - Hp[0]]):
        _fail("combine: left factor is not (J(H'), phi')")
    Jgens = _parse(base, d["J"])
    wJ = d["wJ"]
    Jh, fJ = _orientation(wJ, base)
    if I != _nonzero([x.to_ctx(ctx) for x in Jh]) or fb != [x.to_ctx(ctx) for x in fJ]:
        _fail("combine: right factor is not (J[T], wJ)")
    if not _same_ideal(_nonzero(Jgens), Jh, base):
        _fail("combine: J differs from the ideal of wJ")
    lift = d["lift"]
    _check_lift(lift, ctx)
    if _parse(ctx, lift["orientation"]["ideal"]) != P or _parse(ctx, lift["orientation"]["row"]) != F:
        _fail("combine: lift is not a lift of the combined orientation")
    s, g = ctx.parse(lift["s"]), _parse(ctx, lift["g"])
    for e in d["endpoints"]:
        t = int(e["t"])
        Kt, ft, Jt, gt, Pt, Ft = _check_sumrep(e["expected"], base)
        Ht = [c.subs({var: t}).to_ctx(base) for c in H]
        if ft != Ht[1:n + 1] or not _same_ideal(Kt, _nonzero(Ht[1:n + 1] + [Ht[0]]), base):
            _fail(f"combine: expected endpoint T={t} does not start from eta(H({t}))")
        if Jt != Jh or gt != fJ:
            _fail(f"combine: expected endpoint T={t} uses another orientation of J")
        st = s.subs({var: t}).to_ctx(base)
        Fend = [x.subs({var: t}).to_ctx(base) for x in F]
        if not _same_ideal(_nonzero(Fend + [st]), Pt, base):
            _fail(f"combine: ideal at T={t} differs from the expected product")
        sq = Ideal(_squares(Pt), base)
        if any((x - y) not in sq for x, y in zip(Fend, Ft)):
            _fail(f"combine: row at T={t} not congruent to the expected star product")
    del g


CHECKERS = {
    "membership": _check_membership,
    "point": _check_point,
    "reduction": _check_reduction,
    "chain": _check_chain,
    "translation": _check_translation,
    "orientation": _check_orientation,
    "lift": _check_lift,
    "sumrep": _check_sumrep,
    "combine": _check_combine,
}


def verify(cert: dict) -> bool:
    """Re-check a certificate; returns True or raises ``CertificateInvalid``."""
    if not isinstance(cert, dict) or cert.get("kind") not in CHECKERS:
        _fail(f"unknown certificate kind {cert.get('kind') if isinstance(cert, dict) else cert!r}")
    if cert.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        _fail(f"schema version {cert['schema_version']!r} is not {SCHEMA_VERSION!r}")
    ctx = _ctx(cert)
    try:
        CHECKERS[cert["kind"]](cert, ctx)
    except CertificateInvalid:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        _fail(f"malformed certificate: {type(exc).__name__}: {exc}")
    return True


def check(cert: dict):
    """``(True, None)`` or ``(False, first failing check)``."""
    try:
        verify(cert)
        return True, None
    except CertificateInvalid as exc:
        return False, exc.check


# mutation helpers ------------------------------------------------------------------

_SKIP = {"ctx", "kind", "variant", "n", "local_point", "provenance", "t", "family", "i", "j",
         "lambda_den"}


def mutable_paths(cert, prefix=()):
    """Paths to every polynomial-string leaf that the checker depends on."""
    out = []
    if isinstance(cert, dict):
        for k in sorted(cert):
            if k in _SKIP:
                continue
            out += mutable_paths(cert[k], prefix + (k,))
    elif isinstance(cert, list):
        for i, v in enumerate(cert):
            out += mutable_paths(v, prefix + (i,))
    elif isinstance(cert, str):
        out.append(prefix)
    return out


def mutate(cert: dict, path, delta=1) -> dict:
    """Copy of ``cert`` with the polynomial at ``path`` shifted by ``delta``."""
    ctx = RingCtx.from_json(cert["ctx"])
    out = copy.deepcopy(cert)
    node = out
    for k in path[:-1]:
        node = node[k]
    sub_ctx = ctx
    if "combine" == cert.get("kind") and path and path[0] in ("J", "wJ", "endpoints"):
        sub_ctx = _ctx_without(ctx, ctx.homotopy_var)
    node[path[-1]] = str(sub_ctx.parse(node[path[-1]]) + delta)
    return out


def random_mutation(cert: dict, rng):
    paths = mutable_paths(cert)
    path = paths[rng.randrange(len(paths))]
    return path, mutate(cert, path)
