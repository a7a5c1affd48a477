"""Buchberger's algorithm with cofactor tracking, plus ideal predicates.

Every Groebner basis element carries a row of cofactors expressing it in the
original generators, so any reduction to zero can be turned into an explicit
membership certificate ``element = sum(cof_i * gen_i)``.
"""

from __future__ import annotations

import contextvars
import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import combinations

from .arith import Poly, RingCtx
from .errors import NotComaximal, ResourceBudgetExceeded


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 100_000
    max_degree: int = 60


DEFAULT_BUDGET = Budget()
_ACTIVE_BUDGET = contextvars.ContextVar("groebner_budget", default=DEFAULT_BUDGET)


@contextmanager
def budget_scope(budget: Budget):
    """Use ``budget`` wherever a computation would fall back to the default."""
    token = _ACTIVE_BUDGET.set(budget)
    try:
        yield budget
    finally:
        _ACTIVE_BUDGET.reset(token)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def _reduce_terms(ctx: RingCtx, terms: dict, basis, lms, quotients=None):
    """Fully reduce ``terms`` (mutated) by monic ``basis``; return the remainder dict.

    If ``quotients`` is a dict, the multiplier of each basis element is
    accumulated there as a term dict keyed by basis index.
    """
    key, p = ctx.key, ctx.p
    rem = {}
    while terms:
        m = max(terms, key=key)
        c = terms[m]
        for k, lk in enumerate(lms):
            if _divides(lk, m):
                break
        else:
            rem[m] = c
            del terms[m]
            continue
        shift = tuple(a - b for a, b in zip(m, lk))
        for e, v in basis[k].terms.items():
            ee = tuple(a + b for a, b in zip(e, shift))
            nv = terms.get(ee, 0) - c * v
            if p is not None:
                nv %= p
            if nv:
                terms[ee] = nv
            else:
                terms.pop(ee, None)
        if quotients is not None:
            q = quotients.setdefault(k, {})
            nv = q.get(shift, 0) + c
            if p is not None:
                nv %= p
            if nv:
                q[shift] = nv
            else:
                q.pop(shift, None)
    return rem


def _combine(ctx, quotients, traces, width):
    """sum_k q_k * traces[k] as a row of ``width`` polynomials."""
    row = [ctx.zero] * width
    for k, qterms in quotients.items():
        if not qterms:
            continue
        q = Poly._raw(ctx, qterms)
        for j, t in enumerate(traces[k]):
            if t:
                row[j] = row[j] + q * t
    return row


def _update(G, lms, pairs, new):
    """Gebauer-Moeller pair update after appending basis index ``new``."""
    lf = lms[new]
    kept = set()
    for (i, j) in pairs:
        l_ij = _lcm(lms[i], lms[j])
        if (not _divides(lf, l_ij)) or l_ij == _lcm(lms[i], lf) or l_ij == _lcm(lms[j], lf):
            kept.add((i, j))
    by_lcm = {}
    for i in range(new):
        by_lcm.setdefault(_lcm(lms[i], lf), []).append(i)
    fresh = set()
    minimal = []
    for L in sorted(by_lcm, key=lambda e: (sum(e), e)):
        if any(_divides(M, L) for M in minimal):
            continue
        minimal.append(L)
        idx = by_lcm[L]
        if any(_coprime(lms[i], lf) for i in idx):
            continue
        fresh.add((min(idx), new))
    return kept | fresh


def buchberger(gens, ctx: RingCtx, budget: Budget = DEFAULT_BUDGET):
    """Reduced Groebner basis of ``gens`` with cofactor rows.

    Returns ``(basis, traces)`` where ``basis[k] == sum(traces[k][j] * gens[j])``.
    The basis is sorted by increasing leading monomial.
    """
    if budget is DEFAULT_BUDGET:
        budget = _ACTIVE_BUDGET.get()
    width = len(gens)
    G, T, lms = [], [], []
    pairs = set()

    def add(poly, trace):
        if poly.total_degree() > budget.max_degree:
            raise ResourceBudgetExceeded(f"basis degree exceeds {budget.max_degree}")
        inv = ctx.inv(poly.lc)
        G.append(poly.scale(inv))
        T.append([t.scale(inv) for t in trace])
        lms.append(G[-1].lm)
        return len(G) - 1

    for j, g in enumerate(gens):
        if g.is_zero():
            continue
        row = [ctx.zero] * width
        row[j] = ctx.one
        k = add(g, row)
        pairs = _update(G, lms, pairs, k)

    processed = 0
    key = ctx.key
    while pairs:
        i, j = min(pairs, key=lambda pr: (key(_lcm(lms[pr[0]], lms[pr[1]])), pr))
        pairs.discard((i, j))
        processed += 1
        if processed > budget.max_pairs:
            raise ResourceBudgetExceeded(f"more than {budget.max_pairs} S-pairs")
        L = _lcm(lms[i], lms[j])
        si = tuple(a - b for a, b in zip(L, lms[i]))
        sj = tuple(a - b for a, b in zip(L, lms[j]))
        one = ctx.coerce(1)
        s = G[i].mul_term(si, one) - G[j].mul_term(sj, one)
        s_trace = [a.mul_term(si, one) - b.mul_term(sj, one) for a, b in zip(T[i], T[j])]
        quotients = {}
        rem = _reduce_terms(ctx, dict(s.terms), G, lms, quotients)
        if not rem:
            continue
        sub = _combine(ctx, quotients, T, width)
        r = Poly._raw(ctx, rem)
        trace = [a - b for a, b in zip(s_trace, sub)]
        k = add(r, trace)
        if r.is_constant():
            G, T = [G[k]], [T[k]]
            return G, T
        pairs = _update(G, lms, pairs, k)

    # minimalize then interreduce, keeping traces in step
    order = sorted(range(len(G)), key=lambda k: key(lms[k]))
    chosen = []
    for k in order:
        if not any(_divides(lms[c], lms[k]) for c in chosen):
            chosen.append(k)
    basis = [G[k] for k in chosen]
    traces = [T[k] for k in chosen]
    blms = [g.lm for g in basis]
    for idx in range(len(basis)):
        others = [b for t, b in enumerate(basis) if t != idx]
        olms = [l for t, l in enumerate(blms) if t != idx]
        omap = [t for t in range(len(basis)) if t != idx]
        g = basis[idx]
        tail = dict(g.terms)
        lead = tail.pop(blms[idx])
        quotients = {}
        rem = _reduce_terms(ctx, tail, others, olms, quotients)
        if not quotients:
            continue
        rem[blms[idx]] = lead
        sub = _combine(ctx, quotients, [traces[t] for t in omap], width)
        basis[idx] = Poly._raw(ctx, rem)
        traces[idx] = [a - b for a, b in zip(traces[idx], sub)]
    return basis, traces


@dataclass(frozen=True)
class MembershipCert:
    """``element == sum(cofactors[i] * gens[i])`` exactly."""

    element: Poly
    gens: tuple
    cofactors: tuple

    def recombine(self) -> Poly:
        acc = self.element.ctx.zero
        for c, g in zip(self.cofactors, self.gens):
            if c and g:
                acc = acc + c * g
        return acc

    def holds(self) -> bool:
        return len(self.cofactors) == len(self.gens) and self.recombine() == self.element


@dataclass(frozen=True)
class NotMember:
    """Negative membership answer; falsy, carries the nonzero normal form."""

    element: Poly
    normal_form: Poly

    def __bool__(self):
        return False


class Ideal:
    """Ideal given by generators; the Groebner basis is computed once on demand."""

    def __init__(self, gens, ctx: RingCtx | None = None, budget: Budget = DEFAULT_BUDGET):
        gens = tuple(gens)
        if ctx is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit ring")
            ctx = gens[0].ctx
        for g in gens:
            if g.ctx != ctx:
                raise ValueError("generators live in different rings")
        self.ctx = ctx
        self.gens = gens
        self.budget = budget
        self._gb = None

    def _ensure(self):
        if self._gb is None:
            self._gb = buchberger(self.gens, self.ctx, self.budget)
        return self._gb

    @property
    def gb(self):
        return tuple(self._ensure()[0])

    @property
    def gb_trace(self):
        return tuple(tuple(r) for r in self._ensure()[1])

    def is_unit(self) -> bool:
        gb = self.gb
        return len(gb) == 1 and gb[0].is_constant() and not gb[0].is_zero()

    def is_zero(self) -> bool:
        return not self.gb

    def normal_form(self, p: Poly) -> Poly:
        gb = self.gb
        return Poly._raw(self.ctx, _reduce_terms(self.ctx, dict(p.terms), gb, [g.lm for g in gb]))

    def __contains__(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(g in self for g in other.gens)

    def same_as(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"


def groebner_basis(I: Ideal) -> Ideal:
    I._ensure()
    return I


def reduce_with_trace(p: Poly, I: Ideal):
    """Normal form of ``p`` and a certificate for ``p - normal_form`` in ``I``."""
    gb, traces = I._ensure()
    quotients = {}
    rem = _reduce_terms(I.ctx, dict(p.terms), gb, [g.lm for g in gb], quotients)
    nf = Poly._raw(I.ctx, rem)
    cof = _combine(I.ctx, quotients, traces, len(I.gens))
    return nf, MembershipCert(p - nf, I.gens, tuple(cof))


def ideal_member(p: Poly, I: Ideal):
    """``MembershipCert`` for ``p`` in ``I``, or a falsy ``NotMember``."""
    nf, cert = reduce_with_trace(p, I)
    if nf.is_zero():
        return cert
    return NotMember(p, nf)


def square_gens(gens):
    return [gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))]


def product_gens(g1, g2):
    return [a * b for a in g1 for b in g2]


def ideal_combine(kind: str, I: Ideal, J: Ideal | None = None) -> Ideal:
    """``sum``, ``product``, ``square`` or ``intersection`` of ideals."""
    if kind == "square":
        return Ideal(square_gens(I.gens), I.ctx, I.budget)
    if J is None or J.ctx != I.ctx:
        raise ValueError(f"{kind} needs two ideals in the same ring")
    if kind == "sum":
        return Ideal(I.gens + J.gens, I.ctx, I.budget)
    if kind == "product":
        return Ideal(product_gens(I.gens, J.gens), I.ctx, I.budget)
    if kind == "intersection":
        return intersect(I, J)
    raise ValueError(f"unknown combination {kind!r}")


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I cap J by eliminating an auxiliary variable placed in a first block."""
    ctx = I.ctx
    aux = "_t"
    while aux in ctx.vars:
        aux += "_"
    big = ctx.extend(aux, order="block:1")
    t = big.gen(aux)
    gens = [t * g.to_ctx(big) for g in I.gens] + [(1 - t) * g.to_ctx(big) for g in J.gens]
    basis, _ = buchberger(gens, big, I.budget)
    ai = big.index(aux)
    kept = [g.to_ctx(ctx) for g in basis if not any(e[ai] for e in g.terms)]
    return Ideal(kept, ctx, I.budget)


@dataclass(frozen=True)
class ComaxCert:
    """``a + b == 1`` with ``a`` in I and ``b`` in J, each certified."""

    a: Poly
    a_cert: MembershipCert
    b: Poly
    b_cert: MembershipCert

    def holds(self) -> bool:
        return (self.a + self.b == self.a.ctx.one and self.a_cert.holds() and self.b_cert.holds()
                and self.a_cert.element == self.a and self.b_cert.element == self.b)

    def squared(self) -> "ComaxCert":
        """Witness for I^2 + J^2 = A from (a + b)^3 = 1.

        ``a^3 + 3a^2b`` lies in I^2 and ``3ab^2 + b^3`` in J^2; cofactors are
        over the ``square_gens`` generator order.
        """
        a, b = self.a, self.b
        ca = square_cert(self.a_cert, a + 3 * b)
        cb = square_cert(self.b_cert, 3 * a + b)
        return ComaxCert(ca.element, ca, cb.element, cb)


def square_cert(cert: MembershipCert, multiplier: Poly) -> MembershipCert:
    """Certificate for ``x^2 * multiplier`` in I^2 from a certificate for x in I."""
    gens, alpha = cert.gens, cert.cofactors
    m = len(gens)
    cof = []
    for i in range(m):
        for j in range(i, m):
            c = alpha[i] * alpha[j]
            if i != j:
                c = 2 * c
            cof.append(c * multiplier)
    x = cert.element
    return MembershipCert(x * x * multiplier, tuple(square_gens(gens)), tuple(cof))


def product_cert(c1: MembershipCert, c2: MembershipCert) -> MembershipCert:
    """Certificate for ``x*y`` in IJ (``product_gens`` order) from x in I, y in J."""
    cof = [a * b for a in c1.cofactors for b in c2.cofactors]
    return MembershipCert(c1.element * c2.element, tuple(product_gens(c1.gens, c2.gens)), tuple(cof))


def comaximal_witness(I: Ideal, J: Ideal) -> ComaxCert:
    """Split a certificate for 1 in I + J; raises ``NotComaximal`` otherwise."""
    S = ideal_combine("sum", I, J)
    nf, cert = reduce_with_trace(I.ctx.one, S)
    if not nf.is_zero():
        raise NotComaximal(S.gb)
    m = len(I.gens)
    ca, cb = cert.cofactors[:m], cert.cofactors[m:]
    a = sum((c * g for c, g in zip(ca, I.gens)), I.ctx.zero)
    b = sum((c * g for c, g in zip(cb, J.gens)), I.ctx.zero)
    return ComaxCert(a, MembershipCert(a, I.gens, tuple(ca)), b, MembershipCert(b, J.gens, tuple(cb)))


def crt_lift(I: Ideal, J: Ideal, rI: Poly, rJ: Poly, cert: ComaxCert | None = None,
             modulus: Ideal | None = None) -> Poly:
    """Element congruent to ``rI`` mod I and ``rJ`` mod J.

    Built as ``rI*b + rJ*a`` and normal-formed modulo ``modulus`` (default
    the product IJ, which equals I cap J for comaximal ideals).
    """
    if cert is None:
        cert = comaximal_witness(I, J)
    raw = rI * cert.b + rJ * cert.a
    if modulus is None:
        modulus = ideal_combine("product", I, J)
    return modulus.normal_form(raw)


def height(I: Ideal):
    """Codimension via the staircase of the leading-term ideal; ``math.inf`` for (1)."""
    if I.is_unit():
        return math.inf
    lms = [g.lm for g in I.gb]
    n = I.ctx.nvars
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in lms]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            S = frozenset(S)
            if all(not sup <= S for sup in supports):
                return n - size
    return n
