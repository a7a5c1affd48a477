"""Carry a point of Q'_2n over a local ring to u_0 = (1; 0..0; 0..0).

The word is built in five steps:

1. make x_1 a unit (cases: some y_j with j >= 2 a unit, else y_1, else z);
2. force z = 1 with eps_{0,1}((1 - z)/x_1);
3. clear x_2..x_n with eps_{i,1}(-x_i/x_1);
4. y_1 is now 0 by the quadric equation; clear y_2..y_n with eps_{n+1,i}(y_i/x_1);
5. clear x_1 with eps_{0,n+1}(x_1/2).

Generators whose parameter is 0 are skipped.  Over a field the local context
has no variables and every nonzero constant is a unit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import LocalCtx, LocalFraction, RingCtx, local_invert
from .errors import InternalUnitFailure, NotLocal, NotOnQuadric
from .orthogonal import EOGen, apply_generator, eps, inverse_word
from .quadric import QuadricPoint


@dataclass(frozen=True)
class ReductionCert:
    input: QuadricPoint
    word: tuple
    steps: tuple
    lctx: LocalCtx

    @property
    def n(self):
        return self.input.n

    def bound(self) -> int:
        return 2 * self.n + 2


def field_ctx(ctx: RingCtx) -> LocalCtx:
    return LocalCtx(ctx, (0,) * ctx.nvars)


def _simplify(lam: LocalFraction):
    return lam.num if lam.is_polynomial() else lam


def reduce_to_base(u: QuadricPoint, lctx: LocalCtx | None = None) -> ReductionCert:
    """Return a certified word sigma with sigma u = u_0."""
    if u.variant != "Qprime":
        raise ValueError("reduce_to_base needs a point of Q'")
    n, ctx = u.n, u.ctx
    if n < 2:
        raise ValueError("reduction needs n >= 2")
    if lctx is None:
        if any(not c.is_constant() for c in u.coords):
            raise NotLocal("non-constant coordinates need a local context")
        lctx = field_ctx(ctx)
    if lctx.base != ctx:
        raise NotLocal("local context is over a different ring")
    r = u.residual()
    if not r.is_zero():
        raise NotOnQuadric(r)
    vec = [LocalFraction(c) for c in u.coords]
    unit = lctx.is_unit
    word, steps = [], []

    def push(step, gen):
        nonlocal vec
        if isinstance(gen.lam, LocalFraction):
            gen = EOGen(gen.family, gen.i, gen.j, _simplify(gen.lam))
        vec = apply_generator(gen, vec, n)
        word.append(gen)
        steps.append(step)

    one = LocalFraction(ctx.one)
    target = [one] + [LocalFraction(ctx.zero)] * (2 * n)
    if all(a == b for a, b in zip(vec, target)):
        return ReductionCert(u, (), (), lctx)
    x = lambda i: vec[i]
    y = lambda i: vec[n + i]

    # step 1
    if not unit(x(1)):
        js = [j for j in range(2, n + 1) if unit(y(j))]
        if js:
            push("step1:y_j unit", eps(1, n + js[0], one, n))
        elif unit(y(1)):
            push("step1:y_1 unit", eps(1, 2, one, n))
            if not unit(x(1)):
                push("step1:y_1 unit", eps(1, n + 2, one, n))
        elif unit(vec[0]):
            push("step1:z unit", eps(0, n + 1, one, n))
        else:
            raise InternalUnitFailure("no unit among z, y_1..y_n although x_1 is not a unit")
    if not unit(x(1)):
        raise InternalUnitFailure("step 1 did not produce a unit x_1")
    # step 2
    inv = local_invert(x(1), lctx)
    lam = inv * (1 - vec[0])
    if lam:
        push("step2", eps(0, 1, lam, n))
    # step 3
    for i in range(2, n + 1):
        if x(i):
            push("step3", eps(i, 1, -(inv * x(i)), n))
    # step 4
    if y(1):
        raise InternalUnitFailure(f"y_1 = {y(1)} should vanish after step 3")
    for i in range(2, n + 1):
        if y(i):
            push("step4", eps(n + 1, i, inv * y(i), n))
    # step 5
    if x(1):
        push("step5", eps(0, n + 1, x(1) * LocalFraction(ctx.const(1) / 2), n))
    if any(a != b for a, b in zip(vec, target)):
        raise InternalUnitFailure(f"reduction ended at {vec}")
    return ReductionCert(u, tuple(word), tuple(steps), lctx)


def transport_word(u: QuadricPoint, v: QuadricPoint, lctx: LocalCtx | None = None):
    """A word carrying u to v: reduce u, then undo the reduction of v."""
    wu = reduce_to_base(u, lctx).word
    wv = reduce_to_base(v, lctx).word
    return list(wu) + inverse_word(wv)

