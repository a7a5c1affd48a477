"""Exact sparse multivariate polynomials over Q and F_p.

A polynomial is a map from exponent tuples to nonzero coefficients.  Rational
coefficients are ``fractions.Fraction``; prime-field coefficients are ints in
``[0, p)``.  Values are immutable once built.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .errors import NotAUnit, PolySyntaxError, UnknownVariable

ORDERS = ("degrevlex", "lex")


def _is_prime(p: int) -> bool:
    from sympy import isprime

    return isprime(p)


def order_key(order: str, nvars: int):
    """Return a sort key on exponent tuples; larger key means larger monomial.

    ``block:k`` puts the last ``k`` variables in a first block compared by
    total degree, ties broken by degrevlex on the remaining variables.
    """
    if order == "degrevlex":
        return lambda e: (sum(e), tuple(-x for x in reversed(e)))
    if order == "lex":
        return lambda e: e
    if order.startswith("block:"):
        k = int(order.split(":", 1)[1])
        if not 0 < k <= nvars:
            raise ValueError(f"bad block size in order {order!r}")
        cut = nvars - k

        def key(e):
            head, tail = e[:cut], e[cut:]
            return (sum(tail), tuple(-x for x in reversed(tail)),
                    sum(head), tuple(-x for x in reversed(head)))
        return key
    raise ValueError(f"unknown monomial order {order!r}")


@dataclass(frozen=True)
class RingCtx:
    """Polynomial ring k[vars] with k = Q (``p is None``) or F_p, p odd."""

    vars: tuple = ()
    p: int | None = None
    order: str = "degrevlex"
    homotopy_var: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        for v in self.vars:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        if self.p is not None:
            if self.p == 2 or not _is_prime(self.p):
                raise ValueError(f"field characteristic must be an odd prime, got {self.p}")
        if self.homotopy_var is not None and self.homotopy_var not in self.vars:
            raise ValueError(f"homotopy variable {self.homotopy_var!r} not among {self.vars}")
        order_key(self.order, len(self.vars))

    @classmethod
    def from_spec(cls, field="q", vars=(), order="degrevlex", homotopy_var=None):
        """Build from the CLI/JSON field tag: ``q`` or ``fp:<p>``."""
        if field in ("q", "Q", "rationals"):
            p = None
        elif isinstance(field, str) and field.startswith("fp:"):
            p = int(field[3:])
        else:
            raise ValueError(f"unknown field tag {field!r}")
        if isinstance(vars, str):
            vars = [v.strip() for v in vars.split(",") if v.strip()]
        return cls(tuple(vars), p, order, homotopy_var)

    @property
    def field_tag(self) -> str:
        return "q" if self.p is None else f"fp:{self.p}"

    def to_json(self) -> dict:
        return {"field": self.field_tag, "vars": list(self.vars), "order": self.order,
                "homotopy_var": self.homotopy_var}

    @classmethod
    def from_json(cls, d: dict) -> "RingCtx":
        return cls.from_spec(d.get("field", "q"), d.get("vars", ()),
                             d.get("order", "degrevlex"), d.get("homotopy_var"))

    @cached_property
    def key(self):
        return order_key(self.order, len(self.vars))

    @cached_property
    def _index(self):
        return {v: i for i, v in enumerate(self.vars)}

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def coerce(self, c):
        """Map an int/Fraction/str scalar into the coefficient field."""
        if isinstance(c, str):
            c = Fraction(c)
        if self.p is None:
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise ZeroDivisionError(f"{c} has no image in F_{self.p}")
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return int(c) % self.p

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / c
        return pow(c, -1, self.p)

    def symmetric(self, c):
        """Printable representative: Fractions as-is, F_p in (-p/2, p/2]."""
        if self.p is None:
            return c
        return c - self.p if c > self.p // 2 else c

    def const(self, c) -> "Poly":
        c = self.coerce(c)
        return Poly._raw(self, {(0,) * self.nvars: c} if c else {})

    @property
    def zero(self) -> "Poly":
        return Poly._raw(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def gen(self, name: str) -> "Poly":
        i = self.index(name)
        e = tuple(1 if k == i else 0 for k in range(self.nvars))
        return Poly._raw(self, {e: self.coerce(1)})

    def gens(self):
        return [self.gen(v) for v in self.vars]

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def extend(self, *names: str, order: str | None = None) -> "RingCtx":
        """Same field with extra variables appended last."""
        return RingCtx(self.vars + tuple(names), self.p, order or self.order, self.homotopy_var)

    def with_order(self, order: str) -> "RingCtx":
        return RingCtx(self.vars, self.p, order, self.homotopy_var)

    def random_scalar(self, rng, height=10):
        """A nonzero-biased random field element of bounded height."""
        if self.p is None:
            num = rng.randint(-height, height)
            den = rng.randint(1, max(1, height // 2))
            return Fraction(num, den)
        return rng.randrange(self.p)


class Poly:
    """Immutable sparse polynomial bound to a ``RingCtx``."""

    __slots__ = ("ctx", "terms", "_lm")

    def __init__(self, ctx: RingCtx, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != ctx.nvars:
                raise ValueError(f"exponent {e} has wrong length for {ctx.vars}")
            c = ctx.coerce(c)
            if c:
                clean[e] = c
        self.ctx = ctx
        self.terms = clean
        self._lm = None

    @classmethod
    def _raw(cls, ctx, terms):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        obj._lm = None
        return obj

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if p is not None:
                s %= p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        if p is None:
            return Poly._raw(self.ctx, {e: -c for e, c in self.terms.items()})
        return Poly._raw(self.ctx, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p is None:
            out = {e: c for e, c in out.items() if c}
        else:
            out = {e: c % p for e, c in out.items() if c % p}
        return Poly._raw(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = self.ctx.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = self.ctx.coerce(c)
        if not c:
            return self.ctx.zero
        p = self.ctx.p
        if p is None:
            return Poly._raw(self.ctx, {e: v * c for e, v in self.terms.items()})
        return Poly._raw(self.ctx, {e: v * c % p for e, v in self.terms.items()})

    def mul_term(self, mono, c) -> "Poly":
        """Multiply by the single term ``c * x^mono`` (c already in the field)."""
        p = self.ctx.p
        if p is None:
            return Poly._raw(self.ctx, {tuple(a + b for a, b in zip(e, mono)): v * c
                                        for e, v in self.terms.items()})
        return Poly._raw(self.ctx, {tuple(a + b for a, b in zip(e, mono)): v * c % p
                                    for e, v in self.terms.items()})

    def __truediv__(self, c):
        if isinstance(c, Poly):
            if not c.is_constant() or c.is_zero():
                raise ZeroDivisionError("can only divide by a nonzero constant")
            c = c.constant_value()
        return self.scale(self.ctx.inv(self.ctx.coerce(c)))

    # comparison
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        """Coefficient of the monomial 1."""
        return self.terms.get((0,) * self.ctx.nvars, self.ctx.coerce(0))

    # leading data under the ring's monomial order
    @property
    def lm(self):
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ctx.key)
        return self._lm

    @property
    def lc(self):
        return self.terms[self.lm]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ctx.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def monic(self) -> "Poly":
        return self.scale(self.ctx.inv(self.lc)) if self.terms else self

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ctx.key(t[0]), reverse=True)

    def used_vars(self):
        return {self.ctx.vars[i] for e in self.terms for i, a in enumerate(e) if a}

    # substitution
    def subs(self, assignment: dict) -> "Poly":
        return poly_eval(self, assignment)

    def eval_at(self, point):
        """Scalar value at a full point (sequence of scalars indexed by vars)."""
        ctx = self.ctx
        pt = [ctx.coerce(v) for v in point]
        total = ctx.coerce(0)
        for e, c in self.terms.items():
            v = c
            for x, a in zip(pt, e):
                if a:
                    v = v * x ** a
            total = total + v
        if ctx.p is not None:
            total %= ctx.p
        return total

    def to_ctx(self, ctx: RingCtx) -> "Poly":
        """Re-express in another ring by matching variable names."""
        if ctx == self.ctx:
            return self
        idx = []
        for i, v in enumerate(self.ctx.vars):
            if v in ctx._index:
                idx.append((i, ctx._index[v]))
            elif any(e[i] for e in self.terms):
                raise UnknownVariable(v)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ctx.nvars
            for i, j in idx:
                ne[j] = e[i]
            out[tuple(ne)] = ctx.coerce(c) if ctx.p != self.ctx.p else c
        return Poly(ctx, out)

    def __str__(self):
        return print_poly(self)

    def __repr__(self):
        return f"Poly({print_poly(self)!r})"


# grammar --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text):
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise PolySyntaxError(text, pos, "integer, variable or operator")
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None, expected=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise PolySyntaxError(self.text, tok[2], expected or value or kind)
        self.i += 1
        return tok

    def at_op(self, *ops):
        tok = self.peek()
        return tok[0] == "op" and tok[1] in ops

    def expr(self):
        sign = 1
        if self.at_op("+", "-"):
            sign = -1 if self.take("op")[1] == "-" else 1
        acc = self.term().scale(sign)
        while self.at_op("+", "-"):
            op = self.take("op")[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        tok = self.peek()
        if tok[0] == "int":
            acc = self.coeff()
        else:
            acc = self.factor()
        while self.at_op("*"):
            self.take("op", "*")
            acc = acc * self.factor()
        return acc

    def coeff(self):
        num = int(self.take("int")[1])
        if self.at_op("/"):
            self.take("op", "/")
            tok = self.take("int", expected="unsigned integer denominator")
            den = int(tok[1])
            if den == 0 or (self.ctx.p is not None and den % self.ctx.p == 0):
                raise PolySyntaxError(self.text, tok[2], "invertible denominator")
            return self.ctx.const(Fraction(num, den))
        return self.ctx.const(num)

    def factor(self):
        tok = self.peek()
        if tok[0] == "name":
            self.i += 1
            if tok[1] not in self.ctx._index:
                raise UnknownVariable(tok[1], tok[2])
            base = self.ctx.gen(tok[1])
            if self.at_op("^"):
                self.take("op", "^")
                return base ** int(self.take("int", expected="unsigned exponent")[1])
            return base
        if tok[0] == "op" and tok[1] == "(":
            self.i += 1
            inner = self.expr()
            self.take("op", ")", expected="')'")
            return inner
        raise PolySyntaxError(self.text, tok[2], "variable or '('")


def parse_poly(text: str, ctx: RingCtx) -> Poly:
    """Parse an expression in the polynomial grammar into canonical form."""
    parser = _Parser(text, ctx)
    if parser.peek()[0] == "end":
        raise PolySyntaxError(text, 0, "expression")
    result = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise PolySyntaxError(text, tok[2], "'+', '-', '*' or end of input")
    return result


def _mono_str(ctx, e):
    parts = []
    for v, a in zip(ctx.vars, e):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def print_poly(p: Poly) -> str:
    """Canonical rendering: terms in decreasing monomial order."""
    if not p.terms:
        return "0"
    ctx = p.ctx
    out = []
    for e, c in p.sorted_terms():
        c = ctx.symmetric(c)
        neg = c < 0
        c = -c if neg else c
        mono = _mono_str(ctx, e)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def poly_eval(p: Poly, assignment: dict) -> Poly:
    """Simultaneous substitution of variables by polynomials or scalars."""
    ctx = p.ctx
    subs = {}
    for name, val in assignment.items():
        i = ctx.index(name)
        subs[i] = val if isinstance(val, Poly) else ctx.const(val)
        if subs[i].ctx != ctx:
            raise ValueError("substituted value lives in a different ring")
    if not subs:
        return p
    powers = {i: [ctx.one] for i in subs}

    def power(i, k):
        cache = powers[i]
        while len(cache) <= k:
            cache.append(cache[-1] * subs[i])
        return cache[k]

    acc = ctx.zero
    for e, c in p.terms.items():
        kept = tuple(0 if i in subs else a for i, a in enumerate(e))
        term = Poly._raw(ctx, {kept: c})
        for i in subs:
            if e[i]:
                term = term * power(i, e[i])
        acc = acc + term
    return acc


# localization at a rational point -------------------------------------------


@dataclass(frozen=True)
class LocalCtx:
    """The localization of ``base`` at the maximal ideal of a rational point."""

    base: RingCtx
    point: tuple = ()

    def __post_init__(self):
        pt = tuple(self.base.coerce(v) for v in self.point)
        if len(pt) != self.base.nvars:
            raise ValueError(f"point has {len(pt)} entries, ring has {self.base.nvars} variables")
        object.__setattr__(self, "point", pt)

    def value(self, f) -> object:
        """Residue of ``f`` in the residue field."""
        if isinstance(f, LocalFraction):
            return f.residue(self)
        return f.eval_at(self.point)

    def is_unit(self, f) -> bool:
        return bool(self.value(f))

    def to_json(self):
        return {"point": [str(self.base.symmetric(v)) for v in self.point]}


class LocalFraction:
    """``num/den`` with ``den`` a unit of the local ring (nonzero at the point).

    Denominators that are constants are folded into the numerator, so over a
    bare field every value has ``den == 1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        ctx = num.ctx
        if den is None:
            den = ctx.one
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_constant():
            num = num / den.constant_value()
            den = ctx.one
        else:
            q = _exact_quotient(num, den)
            if q is not None:
                num, den = q, ctx.one
            else:
                inv = ctx.inv(den.lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def ctx(self):
        return self.num.ctx

    def _lift(self, other):
        if isinstance(other, LocalFraction):
            return other
        if isinstance(other, Poly):
            return LocalFraction(other)
        if isinstance(other, (int, Fraction)):
            return LocalFraction(self.ctx.const(other))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return LocalFraction(self.num + o.num, self.den)
        return LocalFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return LocalFraction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LocalFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, k):
        return LocalFraction(self.num ** k, self.den ** k)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return LocalFraction(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        if self.den == self.ctx.one:
            return hash(self.num)
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == self.ctx.one

    def residue(self, lctx: LocalCtx):
        d = self.den.eval_at(lctx.point)
        if not d:
            raise NotAUnit(f"denominator {self.den} vanishes at the point")
        return self.num.eval_at(lctx.point) * self.ctx.inv(d) if self.ctx.p is None else \
            self.num.eval_at(lctx.point) * self.ctx.inv(d) % self.ctx.p

    def subs(self, assignment):
        return LocalFraction(poly_eval(self.num, assignment), poly_eval(self.den, assignment))

    def __str__(self):
        if self.is_polynomial():
            return print_poly(self.num)
        return f"({print_poly(self.num)})/({print_poly(self.den)})"

    __repr__ = __str__


def _exact_quotient(a: Poly, b: Poly):
    """a / b when b divides a exactly, else None (multivariate division by one divisor)."""
    ctx = a.ctx
    lb, cb = b.lm, b.lc
    inv = ctx.inv(cb)
    rest = dict(a.terms)
    quot = {}
    key, p = ctx.key, ctx.p
    while rest:
        m = max(rest, key=key)
        if any(x < y for x, y in zip(m, lb)):
            return None
        c = rest[m] * inv
        if p is not None:
            c %= p
        shift = tuple(x - y for x, y in zip(m, lb))
        quot[shift] = c
        for e, v in b.terms.items():
            ee = tuple(x + y for x, y in zip(e, shift))
            nv = rest.get(ee, 0) - c * v
            if p is not None:
                nv %= p
            if nv:
                rest[ee] = nv
            else:
                rest.pop(ee, None)
    return Poly._raw(ctx, quot)


def local_invert(f, lctx: LocalCtx) -> LocalFraction:
    """``1/f`` in the local ring; ``NotAUnit`` if ``f`` vanishes at the point."""
    if not isinstance(f, LocalFraction):
        f = LocalFraction(f)
    if not lctx.is_unit(f):
        raise NotAUnit(f"{f} vanishes at the point {lctx.point}")
    return LocalFraction(f.den, f.num)


def monomials_up_to(ctx: RingCtx, degree: int):
    """All exponent tuples of total degree <= ``degree`` (small helper for samplers)."""
    n = ctx.nvars
    out = []
    for d in range(degree + 1):
        for bars in combinations(range(d + n - 1), n - 1) if n else [()]:
            if n == 0:
                if d == 0:
                    out.append(())
                continue
            prev, e = -1, []
            for b in bars:
                e.append(b - prev - 1)
                prev = b
            e.append(d + n - 2 - prev)
            out.append(tuple(e))
    return out


def random_poly(ctx: RingCtx, rng, degree=2, nterms=3, height=5) -> Poly:
    """Random polynomial with at most ``nterms`` terms; used by tests and suites."""
    monos = monomials_up_to(ctx, degree)
    terms = {}
    for _ in range(nterms):
        e = rng.choice(monos)
        terms[e] = ctx.coerce(rng.randint(-height, height))
    return Poly(ctx, terms)
