"""Exact multivariate polynomials over QQ and GF(p).

Variables are ``(name, index)`` pairs so that families like ``x_1, x_2, ...``
never need a fixed ambient arity; every value only mentions the finitely
many variables in its support.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

Var = tuple  # (name: str, index: int | None)


class DomainMismatch(ValueError):
    pass


class PolyParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def var_key(v: Var) -> tuple:
    name, idx = v
    return (name, -1 if idx is None else idx)


def var_str(v: Var) -> str:
    name, idx = v
    return name if idx is None else f"{name}_{idx}"


def make_var(name: str, index: int | None = None) -> Var:
    return (name, index)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# --------------------------------------------------------------------------
# coefficient domains


@dataclass(frozen=True)
class Domain:
    """Coefficient field: ``p == 0`` is QQ, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p and not (_is_prime(self.p) and self.p < 2**31):
            raise ValueError(f"GF(p) needs a prime p < 2^31, got {self.p}")

    def __str__(self):
        return "Q" if self.p == 0 else f"Fp({self.p})"

    def convert(self, c):
        if self.p:
            if isinstance(c, Fraction):
                num, den = c.numerator % self.p, c.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"denominator divisible by {self.p}")
                return num * pow(den, -1, self.p) % self.p
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c):
        if self.p:
            return pow(c, -1, self.p)
        return 1 / c

    def fmt(self, c) -> str:
        return str(c)


QQ = Domain(0)


def GF(p: int) -> Domain:
    return Domain(p)


# --------------------------------------------------------------------------
# monomials


class Monomial:
    """Power product with finite support; immutable and hashable."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exps: Mapping[Var, int] | Iterable[tuple[Var, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        clean = {}
        for v, e in items:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                clean[v] = clean.get(v, 0) + e
        self._items = tuple(sorted(clean.items(), key=lambda ve: var_key(ve[0])))
        self._hash = hash(self._items)

    @classmethod
    def of(cls, *pairs) -> "Monomial":
        """``Monomial.of(("x", None), 2, ("y", None), 1)`` style shorthand."""
        return cls(zip(pairs[::2], pairs[1::2]))

    def items(self):
        return self._items

    def as_dict(self) -> dict:
        return dict(self._items)

    @property
    def support(self) -> frozenset:
        return frozenset(v for v, _ in self._items)

    def __getitem__(self, v: Var) -> int:
        for w, e in self._items:
            if w == v:
                return e
        return 0

    @property
    def degree(self) -> int:
        return sum(e for _, e in self._items)

    def is_one(self) -> bool:
        return not self._items

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = self.as_dict()
        for v, e in other._items:
            d[v] = d.get(v, 0) + e
        return Monomial(d)

    def __pow__(self, n: int) -> "Monomial":
        return Monomial({v: e * n for v, e in self._items})

    def divides(self, other: "Monomial") -> bool:
        return all(other[v] >= e for v, e in self._items)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        d = self.as_dict()
        for v, e in other._items:
            left = d.get(v, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            d[v] = left
        return Monomial(d)

    def lcm(self, other: "Monomial") -> "Monomial":
        d = self.as_dict()
        for v, e in other._items:
            d[v] = max(d.get(v, 0), e)
        return Monomial(d)

    def gcd(self, other: "Monomial") -> "Monomial":
        od = other.as_dict()
        return Monomial({v: min(e, od[v]) for v, e in self._items if v in od})

    def squarefree(self) -> "Monomial":
        return Monomial({v: 1 for v, _ in self._items})

    def dense(self, variables) -> tuple:
        d = dict(self._items)
        return tuple(d.get(v, 0) for v in variables)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self._items:
            return "1"
        return "*".join(var_str(v) if e == 1 else f"{var_str(v)}^{e}" for v, e in self._items)

    __repr__ = __str__


ONE = Monomial()


# --------------------------------------------------------------------------
# term orders


def _grevlex(e):
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class TermOrder:
    """Monomial order. Variables are ranked by ``var_key`` (first is largest).

    ``block`` is the front block of a block-elimination order: monomials are
    compared by grevlex on the block variables first, then grevlex on the rest.
    """

    kind: str = "grevlex"
    block: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown term order {self.kind!r}")

    def arrange(self, variables) -> list:
        """Dense variable layout this order compares in."""
        vs = sorted(set(variables), key=var_key)
        if self.kind == "block":
            return [v for v in vs if v in self.block] + [v for v in vs if v not in self.block]
        return vs

    def dense_key(self, variables):
        """Key function on dense exponent tuples laid out by ``arrange``."""
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "grevlex":
            return _grevlex
        b = sum(1 for v in variables if v in self.block)
        return lambda e: (_grevlex(e[:b]), _grevlex(e[b:]))

    def key(self, mono: Monomial, variables) -> tuple:
        layout = self.arrange(variables)
        return self.dense_key(layout)(mono.dense(layout))

    def __str__(self):
        if self.kind == "block":
            return "block(" + ",".join(var_str(v) for v in sorted(self.block, key=var_key)) + ")"
        return self.kind


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


def block_order(drop) -> TermOrder:
    return TermOrder("block", frozenset(drop))


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse polynomial: map Monomial -> nonzero coefficient."""

    __slots__ = ("terms", "domain", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, domain: Domain = QQ):
        self.domain = domain
        clean = {}
        for m, c in (terms or {}).items():
            c = domain.convert(c)
            if c:
                clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, domain: Domain) -> "Polynomial":
        p = cls.__new__(cls)
        p.terms = terms
        p.domain = domain
        p._hash = None
        return p

    @classmethod
    def const(cls, c, domain: Domain = QQ) -> "Polynomial":
        return cls({ONE: c}, domain)

    @classmethod
    def var(cls, name: str, index: int | None = None, domain: Domain = QQ) -> "Polynomial":
        return cls({Monomial({(name, index): 1}): 1}, domain)

    @classmethod
    def monomial(cls, m: Monomial, c=1, domain: Domain = QQ) -> "Polynomial":
        return cls({m: c}, domain)

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m.is_one() for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def support(self) -> frozenset:
        out = set()
        for m in self.terms:
            out |= m.support
        return frozenset(out)

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get(ONE, self.domain.convert(0))

    def sorted_terms(self, order: TermOrder = GREVLEX) -> list:
        vs = self.support
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0], vs), reverse=True)

    def leading_monomial(self, order: TermOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        vs = self.support
        return max(self.terms, key=lambda m: order.key(m, vs))

    def monic(self, order: TermOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.domain.inv(self.terms[self.leading_monomial(order)])
        return self.scale(inv)

    def scale(self, c) -> "Polynomial":
        c = self.domain.convert(c)
        return Polynomial(
            {m: a * c for m, a in self.terms.items()}, self.domain
        ) if c else Polynomial({}, self.domain)

    # arithmetic

    def _check(self, other: "Polynomial"):
        if self.domain != other.domain:
            raise DomainMismatch(f"{self.domain} vs {other.domain}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other, self.domain)
        if isinstance(other, Monomial):
            return Polynomial.monomial(other, 1, self.domain)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        p = self.domain.p
        for m, c in other.terms.items():
            s = d.get(m, 0) + c
            if p:
                s %= p
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Polynomial._raw(d, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: dict = {}
        p = self.domain.p
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = d.get(m, 0) + c1 * c2
                if p:
                    s %= p
                if s:
                    d[m] = s
                else:
                    d.pop(m, None)
        return Polynomial._raw(d, self.domain)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = self.domain.convert(c)
        p = self.domain.p
        return Polynomial._raw(
            {t * m: (a * c % p if p else a * c) for t, a in self.terms.items()}, self.domain
        )

    def exact_divide(self, divisor: "Polynomial", order: TermOrder = GREVLEX) -> "Polynomial":
        """Quotient ``self / divisor``; raises ValueError if not exact."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lm = divisor.leading_monomial(order)
        lc_inv = self.domain.inv(divisor.terms[lm])
        rest = self
        quotient = Polynomial({}, self.domain)
        while not rest.is_zero():
            m = rest.leading_monomial(order)
            if not lm.divides(m):
                raise ValueError("division is not exact")
            t = Polynomial._raw({m / lm: rest.terms[m] * lc_inv % self.domain.p
                                 if self.domain.p else rest.terms[m] * lc_inv}, self.domain)
            quotient = quotient + t
            rest = rest - t * divisor
        return quotient

    # comparison / printing

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other, self.domain)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.domain == other.domain and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, frozenset(self.terms.items())))
        return self._hash

    def to_str(self, order: TermOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms(order)):
            neg = False
            if not self.domain.p and c < 0:
                neg, c = True, -c
            if m.is_one():
                body = str(c)
            elif c == 1:
                body = str(m)
            else:
                body = f"{c}*{m}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r}, {self.domain})"


def poly_from_monomial(m: Monomial, domain: Domain = QQ) -> Polynomial:
    return Polynomial.monomial(m, 1, domain)


# --------------------------------------------------------------------------
# confluent monomial-to-zero rewriting


@dataclass(frozen=True)
class RewriteSystem:
    """Rules ``m -> 0``.

    ``rules`` are explicit monomials. ``schemes`` are index-free templates:
    each is a tuple of ``(name, exponent)`` pairs standing for the family
    ``prod name_i^exponent`` over every index ``i`` (e.g. ``(("x",1),("y",1))``
    is ``x_i*y_i -> 0`` for all i). Monomial-to-zero systems are confluent.
    """

    rules: tuple = ()
    schemes: tuple = ()

    def hits(self, m: Monomial) -> bool:
        if any(r.divides(m) for r in self.rules):
            return True
        if not self.schemes:
            return False
        indices = {idx for (_, idx) in m.support if idx is not None}
        for scheme in self.schemes:
            for i in indices:
                if all(m[(name, i)] >= e for name, e in scheme):
                    return True
        return False


def rewrite_normal_form(p: Polynomial, rs: RewriteSystem) -> Polynomial:
    """Delete every term whose monomial is divisible by a rule's left side."""
    return Polynomial._raw({m: c for m, c in p.terms.items() if not rs.hits(m)}, p.domain)


# --------------------------------------------------------------------------
# parser

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>[a-zA-Z][a-zA-Z0-9]*(?:_\d+)?)|(?P<op>[-+*^/()]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                                 len(text) - len(text[pos:].lstrip()))
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def parse_var(token: str) -> Var:
    if "_" in token:
        name, idx = token.rsplit("_", 1)
        return (name, int(idx))
    return (token, None)


class _Parser:
    def __init__(self, text: str, domain: Domain, allowed):
        self.toks = _tokenize(text)
        self.i = 0
        self.domain = domain
        self.allowed = allowed

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise PolyParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolyParseError(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op, pos = self.take()[1], self.toks[self.i - 1][2]
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or f.is_zero():
                    raise PolyParseError("division only by a nonzero constant", pos)
                acc = acc.scale(self.domain.inv(f.constant_term()))
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise PolyParseError("exponent must be a non-negative integer", pos)
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "num":
            return Polynomial.const(int(val), self.domain)
        if kind == "var":
            v = parse_var(val)
            if self.allowed is not None and v not in self.allowed:
                raise PolyParseError(f"unknown variable {val!r}", pos)
            return Polynomial({Monomial({v: 1}): 1}, self.domain)
        if val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if val == "-":
            return -self.factor()
        raise PolyParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_polynomial(text: str, domain: Domain = QQ, variables=None) -> Polynomial:
    """Parse ``text``; ``variables`` (if given) restricts the allowed names."""
    allowed = None if variables is None else frozenset(variables)
    return _Parser(text, domain, allowed).parse()


def P(text: str, domain: Domain = QQ) -> Polynomial:
    """Terse parser for tests and scripts."""
    return parse_polynomial(text, domain)
