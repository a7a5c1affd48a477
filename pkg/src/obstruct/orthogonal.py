"""The split form q = sum x_i y_i + z^2, its orthogonal group and the five
families of elementary orthogonal generators.

Vectors are columns (z; x_1..x_n; y_1..y_n) indexed 0..2n, which is the same
layout as a quadric point (s; f; g).  Matrices act on the LEFT.  A word is a
sequence of generators listed in the order they are applied, so the word
[a, b, c] acts as the matrix product c*b*a.

Index ranges (normalized; redundant aliases are rejected):

    family 1: (0, j),      1 <= j <= n          z += l x_j,   y_j -= 2 l z + l^2 x_j
    family 2: (0, n+i),    1 <= i <= n          z += l y_i,   x_i -= 2 l z + l^2 y_i
    family 3: (i, j),      i != j in 1..n       x_i += l x_j, y_j -= l y_i
    family 4: (i, n+k),    1 <= i < k <= n      x_i += l y_k, x_k -= l y_i
    family 5: (n+k, j),    1 <= k < j <= n      y_k += l x_j, y_j -= l x_k
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import LocalFraction, Poly, RingCtx
from .errors import IllegalIndices, NotOnQuadric, NotOrthogonal
from .quadric import QuadricPoint, alpha, beta, defining_residual

ACTION_CONVENTION = "left action on columns (z; x; y); words listed in application order"


class SMatrix:
    """Square sparse matrix over a ring of Poly or LocalFraction entries."""

    __slots__ = ("size", "rows", "ctx")

    def __init__(self, size: int, rows, ctx: RingCtx):
        self.size = size
        self.ctx = ctx
        self.rows = [{c: v for c, v in r.items() if v} for r in rows]

    @classmethod
    def identity(cls, size, ctx):
        return cls(size, [{i: ctx.one} for i in range(size)], ctx)

    @classmethod
    def from_dense(cls, dense, ctx):
        rows = []
        for r in dense:
            rows.append({c: (v if isinstance(v, (Poly, LocalFraction)) else ctx.const(v))
                         for c, v in enumerate(r)})
        return cls(len(dense), rows, ctx)

    def entry(self, i, j):
        return self.rows[i].get(j, self.ctx.zero)

    def __matmul__(self, other: "SMatrix") -> "SMatrix":
        out = []
        for r in self.rows:
            acc = {}
            for k, a in r.items():
                for c, b in other.rows[k].items():
                    acc[c] = acc[c] + a * b if c in acc else a * b
            out.append(acc)
        return SMatrix(self.size, out, self.ctx)

    def transpose(self) -> "SMatrix":
        out = [dict() for _ in range(self.size)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[j][i] = v
        return SMatrix(self.size, out, self.ctx)

    def apply(self, vec):
        return [sum((v * vec[c] for c, v in r.items()), self.ctx.zero) for r in self.rows]

    def __sub__(self, other):
        out = []
        for r1, r2 in zip(self.rows, other.rows):
            acc = dict(r1)
            for c, v in r2.items():
                acc[c] = acc[c] - v if c in acc else -v
            out.append(acc)
        return SMatrix(self.size, out, self.ctx)

    def is_zero(self):
        return all(not r for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, SMatrix) or other.size != self.size:
            return NotImplemented
        return (self - other).is_zero()

    def subs(self, assignment):
        return SMatrix(self.size, [{c: v.subs(assignment) for c, v in r.items()} for r in self.rows],
                       self.ctx)

    def dense(self):
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def det(self):
        """Exact determinant by sparse Laplace expansion along rows."""
        memo = {}
        size = self.size

        def rec(k, free):
            if k == size:
                return self.ctx.one
            key = (k, free)
            if key in memo:
                return memo[key]
            cols = sorted(free)
            acc = self.ctx.zero
            for pos, c in enumerate(cols):
                v = self.rows[k].get(c)
                if not v:
                    continue
                minor = rec(k + 1, free - {c})
                if minor:
                    term = v * minor
                    acc = acc - term if pos % 2 else acc + term
            memo[key] = acc
            return acc

        return rec(0, frozenset(range(size)))

    def __str__(self):
        return "\n".join("[" + ", ".join(str(self.entry(i, j)) for j in range(self.size)) + "]"
                         for i in range(self.size))


def gram_matrix(n: int, ctx: RingCtx) -> SMatrix:
    """Matrix B of the bilinear form with v^T B v = sum x_i y_i + z^2.

    In the (z; x; y) layout B = [[1, 0, 0], [0, 0, I/2], [0, I/2, 0]]; this is
    the block matrix (1/2)[[0, I, 0], [I, 0, 0], [0, 0, 2]] written for the
    (x; y; z) layout, with z moved first.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    half = ctx.const(1) / 2
    rows = [{0: ctx.one}]
    rows += [{n + i: half} for i in range(1, n + 1)]
    rows += [{i: half} for i in range(1, n + 1)]
    return SMatrix(2 * n + 1, rows, ctx)


def family_of(i: int, j: int, n: int) -> int:
    """Family number of a normalized index pair, or ``IllegalIndices``."""
    X = range(1, n + 1)
    Y = range(n + 1, 2 * n + 1)
    if i == 0 and j in X:
        return 1
    if i == 0 and j in Y:
        return 2
    if i in X and j in X and i != j:
        return 3
    if i in X and j in Y:
        if i < j - n:
            return 4
        raise IllegalIndices(f"family 4 needs i < j-n, got ({i}, {j}); use the normalized alias")
    if i in Y and j in X:
        if i - n < j:
            return 5
        raise IllegalIndices(f"family 5 needs i-n < j, got ({i}, {j}); use the normalized alias")
    raise IllegalIndices(f"({i}, {j}) is not a generator index for n={n}")


@dataclass(frozen=True)
class EOGen:
    """One elementary orthogonal generator eps_{i,j}(lam)."""

    family: int
    i: int
    j: int
    lam: object

    def check(self, n: int):
        fam = family_of(self.i, self.j, n)
        if fam != self.family:
            raise IllegalIndices(f"({self.i}, {self.j}) belongs to family {fam}, not {self.family}")
        return self

    def inverse(self) -> "EOGen":
        return EOGen(self.family, self.i, self.j, -self.lam)

    def subs(self, assignment) -> "EOGen":
        return EOGen(self.family, self.i, self.j, self.lam.subs(assignment))

    def __str__(self):
        return f"eps_{{{self.i},{self.j}}}({self.lam})"


def eps(i: int, j: int, lam, n: int) -> EOGen:
    return EOGen(family_of(i, j, n), i, j, lam)


def make_generator(gen: EOGen, n: int, ctx: RingCtx) -> SMatrix:
    gen.check(n)
    lam = gen.lam if isinstance(gen.lam, (Poly, LocalFraction)) else ctx.const(gen.lam)
    size = 2 * n + 1
    rows = [{k: ctx.one} for k in range(size)]
    i, j = gen.i, gen.j
    if gen.family == 1:
        rows[0][j] = lam
        rows[n + j][0] = -2 * lam
        rows[n + j][j] = -(lam * lam)
    elif gen.family == 2:
        k = j - n
        rows[0][j] = lam
        rows[k][0] = -2 * lam
        rows[k][j] = -(lam * lam)
    elif gen.family == 3:
        rows[i][j] = lam
        rows[n + j][n + i] = -lam
    elif gen.family == 4:
        k = j - n
        rows[i][j] = lam
        rows[k][n + i] = -lam
    else:
        k = i - n
        rows[i][j] = lam
        rows[n + j][k] = -lam
    return SMatrix(size, rows, ctx)


def apply_generator(gen: EOGen, vec, n: int):
    """Coordinate formula for the left action of one generator."""
    v = list(vec)
    lam, i, j = gen.lam, gen.i, gen.j
    if gen.family == 1:
        z, x = v[0], v[j]
        v[0] = z + lam * x
        v[n + j] = v[n + j] - 2 * lam * z - lam * lam * x
    elif gen.family == 2:
        k = j - n
        z, y = v[0], v[j]
        v[0] = z + lam * y
        v[k] = v[k] - 2 * lam * z - lam * lam * y
    elif gen.family == 3:
        v[i] = v[i] + lam * v[j]
        v[n + j] = v[n + j] - lam * v[n + i]
    elif gen.family == 4:
        k = j - n
        xi, xk = v[i], v[k]
        v[i] = xi + lam * v[j]
        v[k] = xk - lam * v[n + i]
    else:
        k = i - n
        v[i] = v[i] + lam * v[j]
        v[n + j] = v[n + j] - lam * v[k]
    return v


def is_orthogonal(M: SMatrix, n: int) -> SMatrix:
    """Return ``M`` if M^T B M == B exactly, else raise ``NotOrthogonal``."""
    if M.size != 2 * n + 1:
        raise ValueError(f"matrix size {M.size} does not match n={n}")
    B = gram_matrix(n, M.ctx)
    residual = M.transpose() @ B @ M - B
    if not residual.is_zero():
        raise NotOrthogonal(residual)
    return M


def word_to_matrix(word, n: int, ctx: RingCtx) -> SMatrix:
    """Matrix of a word: the last generator applied is the leftmost factor."""
    M = SMatrix.identity(2 * n + 1, ctx)
    for gen in word:
        M = make_generator(gen, n, ctx) @ M
    return M


def inverse_word(word):
    """Formal inverse: reversed order, eps(lam)^-1 = eps(-lam) in every family."""
    return [g.inverse() for g in reversed(word)]


def act_vector(word_or_matrix, vec, n: int):
    if isinstance(word_or_matrix, SMatrix):
        return word_or_matrix.apply(vec)
    for gen in word_or_matrix:
        gen.check(n)
        vec = apply_generator(gen, vec, n)
    return vec


def act_qprime(M, u: QuadricPoint) -> QuadricPoint:
    """Left action of an orthogonal matrix or a word on a point of Q'."""
    if u.variant != "Qprime":
        raise ValueError("act_qprime needs a point of Q'")
    out = QuadricPoint.from_coords("Qprime", act_vector(M, list(u.coords), u.n))
    r = out.residual()
    if not r.is_zero():
        raise NotOnQuadric(r, "orthogonal action left the quadric (matrix not orthogonal?)")
    return out


def act_q(M, v: QuadricPoint) -> QuadricPoint:
    """Action transported to Q through beta and alpha."""
    return alpha(act_qprime(M, beta(v)))


def word_to_json(word) -> list:
    out = []
    for g in word:
        d = {"family": g.family, "i": g.i, "j": g.j}
        lam = g.lam
        if isinstance(lam, LocalFraction) and not lam.is_polynomial():
            d["lambda"] = str(lam.num)
            d["lambda_den"] = str(lam.den)
        else:
            d["lambda"] = str(lam.num if isinstance(lam, LocalFraction) else lam)
        out.append(d)
    return out


def word_from_json(items, n: int, ctx: RingCtx) -> list:
    word = []
    for d in items:
        lam = ctx.parse(str(d["lambda"]))
        if "lambda_den" in d:
            lam = LocalFraction(lam, ctx.parse(str(d["lambda_den"])))
        word.append(EOGen(int(d["family"]), int(d["i"]), int(d["j"]), lam).check(n))
    return word


def qprime_residual(vec, n):
    return defining_residual("Qprime", vec[0], vec[1:n + 1], vec[n + 1:])
