"""Valuation rings given by an ordered value group (Z^k lexicographic or Q).

A ring element is represented only by its value. Ideals of such a ring are
totally ordered "cuts" of the value semigroup; each cut is stored as a
sortable key so that a larger key means a smaller ideal:

* ``Zlex(k)``: a k-tuple of ints, possibly padded on the right with ``-inf``.
  A full tuple ``a`` is the closed cut ``{v >= a}``; ``(a_0..a_{j-1}, -inf..)``
  is the limit cut ``{v : v[:j] >= a[:j]}`` (not finitely generated).
  Open cuts ``{v > a}`` are closed at the successor of ``a``.
* ``Q``: ``(g, 0)`` for ``{v >= g}`` and ``(g, 1)`` for ``{v > g}``.

The zero ideal has key ``ZERO_KEY`` (above everything); the unit ideal is
the closed cut at 0.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction

NEG_INF = -math.inf
INF = "INF"  # value of the ring's zero element


class ValuationError(ValueError):
    pass


class GroupMismatch(ValuationError):
    pass


@dataclass(frozen=True)
class ValueGroup:
    kind: str  # "Zlex" or "Q"
    rank: int = 1

    def __post_init__(self):
        if self.kind not in ("Zlex", "Q"):
            raise ValuationError(f"unknown value group {self.kind!r}")
        if self.kind == "Zlex" and self.rank < 1:
            raise ValuationError("rank must be positive")
        if self.kind == "Q" and self.rank != 1:
            raise ValuationError("Q has rank 1")

    def __str__(self):
        return f"Zlex({self.rank})" if self.kind == "Zlex" else "Q"

    def zero(self):
        return (0,) * self.rank if self.kind == "Zlex" else Fraction(0)

    def convert(self, v):
        if v == INF:
            return INF
        if self.kind == "Zlex":
            if isinstance(v, int):
                v = (v,)
            v = tuple(int(x) for x in v)
            if len(v) != self.rank:
                raise GroupMismatch(f"value {v} does not lie in {self}")
            return v
        if isinstance(v, tuple):
            raise GroupMismatch(f"value {v} does not lie in {self}")
        return Fraction(v)

    def add(self, a, b):
        if a == INF or b == INF:
            return INF
        if self.kind == "Zlex":
            return tuple(x + y for x, y in zip(a, b))
        return a + b

    def neg(self, a):
        return tuple(-x for x in a) if self.kind == "Zlex" else -a

    def positive(self, a) -> bool:
        return a == INF or a > self.zero()

    def fmt(self, v) -> str:
        if v == INF:
            return "inf"
        if self.kind == "Zlex":
            return "(" + ",".join(str(x) for x in v) + ")"
        return str(v)


def Zlex(k: int) -> ValueGroup:
    return ValueGroup("Zlex", k)


QGROUP = ValueGroup("Q")


@dataclass(frozen=True)
class ValElement:
    group: ValueGroup
    value: object

    def __post_init__(self):
        v = self.group.convert(self.value)
        object.__setattr__(self, "value", v)

    def __mul__(self, other: "ValElement") -> "ValElement":
        _same(self.group, other.group)
        return ValElement(self.group, self.group.add(self.value, other.value))

    def __pow__(self, n: int) -> "ValElement":
        if self.value == INF:
            return self
        if self.group.kind == "Zlex":
            return ValElement(self.group, tuple(n * x for x in self.value))
        return ValElement(self.group, n * self.value)

    def __str__(self):
        return f"v={self.group.fmt(self.value)}"


def _same(g: ValueGroup, h: ValueGroup):
    if g != h:
        raise GroupMismatch(f"{g} vs {h}")


def _zero_key(group: ValueGroup):
    return (math.inf,) * group.rank if group.kind == "Zlex" else (math.inf, 0)


@dataclass(frozen=True, order=False)
class CutIdeal:
    group: ValueGroup
    key: tuple

    # ---- constructors

    @classmethod
    def closed(cls, group: ValueGroup, threshold) -> "CutIdeal":
        t = group.convert(threshold)
        key = t if group.kind == "Zlex" else (t, 0)
        return _clamp(cls(group, key))

    @classmethod
    def open(cls, group: ValueGroup, threshold) -> "CutIdeal":
        t = group.convert(threshold)
        if group.kind == "Zlex":
            return _clamp(cls(group, t[:-1] + (t[-1] + 1,)))
        return _clamp(cls(group, (t, 1)))

    @classmethod
    def limit(cls, group: ValueGroup, prefix) -> "CutIdeal":
        """``{v : v[:j] >= prefix}`` with ``j = len(prefix) < rank``."""
        if group.kind != "Zlex" or not 0 < len(prefix) < group.rank:
            raise ValuationError("limit cuts need Zlex(k) and a prefix shorter than k")
        key = tuple(int(x) for x in prefix) + (NEG_INF,) * (group.rank - len(prefix))
        return _clamp(cls(group, key))

    @classmethod
    def zero(cls, group: ValueGroup) -> "CutIdeal":
        return cls(group, _zero_key(group))

    @classmethod
    def unit(cls, group: ValueGroup) -> "CutIdeal":
        return cls.closed(group, group.zero())

    @classmethod
    def principal(cls, z: ValElement) -> "CutIdeal":
        if z.value == INF:
            return cls.zero(z.group)
        return cls.closed(z.group, z.value)

    # ---- shape

    def is_zero(self) -> bool:
        return self.key == _zero_key(self.group)

    def is_unit(self) -> bool:
        return self.key == CutIdeal.unit(self.group).key

    @property
    def depth(self) -> int:
        """Number of finite coordinates of a Zlex key."""
        if self.group.kind != "Zlex":
            raise ValuationError("depth is defined for Zlex cuts")
        return sum(1 for x in self.key if x != NEG_INF)

    def is_limit(self) -> bool:
        return self.group.kind == "Zlex" and not self.is_zero() and self.depth < self.group.rank

    @property
    def boundary(self) -> str:
        if self.group.kind == "Q":
            return "open" if self.key[1] else "closed"
        return "limit" if self.is_limit() else "closed"

    def __str__(self):
        g = self.group
        if self.is_zero():
            return "(0)"
        if self.is_unit():
            return "(1)"
        if g.kind == "Q":
            return f"cut{'>' if self.key[1] else '>='}({self.key[0]})"
        if self.is_limit():
            fin = [str(x) for x in self.key if x != NEG_INF]
            return "cut>=((" + ",".join(fin + ["-inf"] * (g.rank - len(fin))) + "))"
        return "cut>=((" + ",".join(str(x) for x in self.key) + "))"

    __repr__ = __str__


def _clamp(c: CutIdeal) -> CutIdeal:
    """Cuts at or below value 0 are the whole ring."""
    z = c.group.zero()
    base = z if c.group.kind == "Zlex" else (z, 0)
    if c.key <= base:
        return CutIdeal(c.group, base)
    return c


def cut_member(z: ValElement, I: CutIdeal) -> bool:
    _same(z.group, I.group)
    if z.value == INF:
        return True
    if I.is_zero():
        return False
    if I.group.kind == "Zlex":
        return z.value >= I.key
    g, opn = I.key
    return z.value > g or (z.value == g and not opn)


def _key_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _key_sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _quotient_zlex(I: CutIdeal, J: CutIdeal) -> tuple:
    a, b, k = I.key, J.key, I.group.rank
    i, j = I.depth, J.depth
    if j == k:
        return tuple(NEG_INF if x == NEG_INF else x - y for x, y in zip(a, b))
    if i <= j:
        return _key_sub(a[:i], b[:i]) + (NEG_INF,) * (k - i)
    d = _key_sub(a[:j], b[:j])
    return d[:-1] + (d[-1] + 1,) + (NEG_INF,) * (k - j)


def cut_ops(I: CutIdeal, J: CutIdeal, op: str) -> CutIdeal:
    """``intersect``, ``sum``, ``product`` or ``quotient`` (``I : J``)."""
    _same(I.group, J.group)
    g = I.group
    if op == "intersect":
        return I if I.key >= J.key else J
    if op == "sum":
        return I if I.key <= J.key else J
    if op == "product":
        if I.is_zero() or J.is_zero():
            return CutIdeal.zero(g)
        if g.kind == "Zlex":
            return _clamp(CutIdeal(g, _key_add(I.key, J.key)))
        return _clamp(CutIdeal(g, (I.key[0] + J.key[0], max(I.key[1], J.key[1]))))
    if op == "quotient":
        if I.key <= J.key:  # J inside I
            return CutIdeal.unit(g)
        if I.is_zero():
            return CutIdeal.zero(g)
        if g.kind == "Zlex":
            return _clamp(CutIdeal(g, _quotient_zlex(I, J)))
        (gamma, f), (delta, h) = I.key, J.key
        if h:
            return _clamp(CutIdeal(g, (gamma - delta, 0)))
        return _clamp(CutIdeal(g, (gamma - delta, f)))
    raise ValuationError(f"unknown cut operation {op!r}")


def quotient_by_element(I: CutIdeal, z: ValElement) -> CutIdeal:
    return cut_ops(I, CutIdeal.principal(z), "quotient")


# --------------------------------------------------------------------------
# primes and classification


def prime_cuts(group: ValueGroup) -> list:
    """All prime ideals, smallest first: (0), then one per depth."""
    out = [CutIdeal.zero(group)]
    if group.kind == "Q":
        out.append(CutIdeal.open(group, 0))
        return out
    k = group.rank
    for j in range(1, k + 1):
        key = (0,) * (j - 1) + (1,) + (NEG_INF,) * (k - j)
        out.append(CutIdeal(group, key))
    return out


def prime_at_depth(group: ValueGroup, j: int) -> CutIdeal:
    """Zlex prime ``{v : v[:j] > 0}``; depth k is the maximal ideal."""
    k = group.rank
    return CutIdeal(group, (0,) * (j - 1) + (1,) + (NEG_INF,) * (k - j))


def maximal_ideal(group: ValueGroup) -> CutIdeal:
    return CutIdeal.open(group, 0) if group.kind == "Q" else prime_at_depth(group, group.rank)


def prime_depth(p: CutIdeal) -> int:
    if p.is_zero():
        return 0
    return p.depth


def cut_is_prime(I: CutIdeal) -> bool:
    return any(I == p for p in prime_cuts(I.group))


def _first_nonzero(key: tuple) -> int:
    for idx, x in enumerate(key):
        if x != 0:
            return idx
    raise ValuationError("unit cut has no leading coordinate")


def zero_divisor_prime(I: CutIdeal) -> CutIdeal:
    """The set of zero divisors of R/I (a prime cut)."""
    if I.is_zero():
        return CutIdeal.zero(I.group)
    if I.group.kind == "Q":
        return maximal_ideal(I.group)
    return prime_at_depth(I.group, I.depth)


def nilpotent_prime(I: CutIdeal) -> CutIdeal:
    """The radical of I: the elements nilpotent on R/I."""
    if I.is_zero():
        return CutIdeal.zero(I.group)
    if I.group.kind == "Q":
        return maximal_ideal(I.group)
    return prime_at_depth(I.group, _first_nonzero(I.key) + 1)


@dataclass(frozen=True)
class CutClass:
    kind: str  # "prime", "primary" or "neither"
    prime: CutIdeal | None = None

    def __str__(self):
        return self.kind if self.prime is None else f"{self.kind} ({self.prime})"


def cut_classify(I: CutIdeal) -> CutClass:
    if I.is_zero() or I.is_unit():
        raise ValuationError("classification needs a proper nonzero cut")
    if cut_is_prime(I):
        return CutClass("prime", I)
    zd, nil = zero_divisor_prime(I), nilpotent_prime(I)
    if zd == nil:
        return CutClass("primary", zd)
    return CutClass("neither")


def _random_cut(group: ValueGroup, rng: random.Random, span: int = 4) -> CutIdeal:
    if group.kind == "Q":
        g = Fraction(rng.randint(0, 4 * span), rng.randint(1, 4))
        return CutIdeal(group, (g, rng.randint(0, 1))) if g > 0 else CutIdeal.unit(group)
    k = group.rank
    j = rng.randint(1, k)
    pre = tuple(rng.randint(-span, span) for _ in range(j))
    return _clamp(CutIdeal(group, pre + (NEG_INF,) * (k - j)))


@dataclass
class IndecomposableCertificate:
    cut: CutIdeal
    pairs: list = field(default_factory=list)  # (J, K, J ∩ K)

    @property
    def holds(self) -> bool:
        return all(str(m) in (str(a), str(b)) and m != self.cut for a, b, m in self.pairs)


def cut_indecomposable(I: CutIdeal, samples: int = 200, seed: int = 0):
    """Always true: the cut lattice is a chain. Returns (True, certificate)."""
    rng = random.Random(seed)
    bigger = []
    tries = 0
    while len(bigger) < 2 * samples and tries < 50 * samples:
        tries += 1
        c = _random_cut(I.group, rng)
        if c.key < I.key:
            bigger.append(c)
    cert = IndecomposableCertificate(I)
    for a, b in zip(bigger[::2], bigger[1::2]):
        cert.pairs.append((a, b, cut_ops(a, b, "intersect")))
    return cert.holds, cert


# --------------------------------------------------------------------------
# modules R/a and Quot(R)/R


@dataclass(frozen=True)
class CutModule:
    """``R/ideal`` (kind "quotient") or ``Quot(R)/R`` (kind "fraction_mod_ring")."""

    group: ValueGroup
    kind: str = "quotient"
    ideal: CutIdeal | None = None

    def __post_init__(self):
        if self.kind == "quotient":
            if self.ideal is None or self.ideal.is_unit():
                raise ValuationError("R/a needs a proper ideal")
        elif self.kind == "fraction_mod_ring":
            if self.group.rank != 1:
                raise ValuationError("Quot(R)/R is supported for rank-one groups")
        else:
            raise ValuationError(f"unsupported module kind {self.kind!r}")

    def __str__(self):
        return f"R/{self.ideal}" if self.kind == "quotient" else "Quot(R)/R"

    def element(self, value) -> ValElement:
        return ValElement(self.group, value)

    def is_zero_element(self, x: ValElement) -> bool:
        if self.kind == "quotient":
            return cut_member(x, self.ideal)
        return x.value == INF or x.value >= self.group.zero()


def quot_mod_ring(group: ValueGroup) -> CutModule:
    return CutModule(group, "fraction_mod_ring")


def val_annihilator(x: ValElement, M: CutModule) -> CutIdeal:
    if M.is_zero_element(x):
        return CutIdeal.unit(M.group)
    if M.kind == "quotient":
        return quotient_by_element(M.ideal, x)
    return CutIdeal.closed(M.group, M.group.neg(x.value))


def module_annihilator(M: CutModule) -> CutIdeal:
    return M.ideal if M.kind == "quotient" else CutIdeal.zero(M.group)


def val_is_zero_divisor(r: ValElement, M: CutModule) -> bool:
    if M.kind == "quotient":
        return cut_member(r, zero_divisor_prime(M.ideal))
    return M.group.positive(r.value)


def val_is_nilpotent_for(r: ValElement, M: CutModule) -> bool:
    # n * v(r) clears any finite threshold iff v(r) lies in the radical;
    # over Q this is v(r) > 0, decided without search
    if M.kind == "quotient":
        return cut_member(r, nilpotent_prime(M.ideal))
    return M.group.positive(r.value)


def val_is_coprimary(M: CutModule) -> CutIdeal | None:
    if M.kind == "fraction_mod_ring":
        return maximal_ideal(M.group)
    zd, nil = zero_divisor_prime(M.ideal), nilpotent_prime(M.ideal)
    return zd if zd == nil else None


def ass0_witness(M: CutModule, p: CutIdeal) -> ValElement | None:
    """An element whose annihilator is exactly ``p``, if one exists."""
    g = M.group
    if M.kind == "fraction_mod_ring":
        if g.kind == "Zlex" and p == maximal_ideal(g):
            return ValElement(g, (-1,))
        return None
    a = M.ideal
    if p.is_zero():
        return ValElement(g, g.zero()) if a.is_zero() else None
    if a.is_zero() or not cut_is_prime(p) or a.key < p.key:
        return None
    if g.kind == "Q":
        if a.key[1] == 1 and p == maximal_ideal(g):
            return ValElement(g, a.key[0])
        return None
    if a.depth != p.depth:
        return None
    v = tuple(int(x - y) for x, y in zip(a.key[:a.depth], p.key[:a.depth]))
    v = v + (0,) * (g.rank - len(v))
    x = ValElement(g, v)
    assert val_annihilator(x, M) == p
    return x


def ass0_witness_exists(M: CutModule, p: CutIdeal) -> bool:
    return ass0_witness(M, p) is not None


def val_ass0(M: CutModule) -> list:
    return [p for p in prime_cuts(M.group) if ass0_witness_exists(M, p)]


def val_ass1(M: CutModule) -> list:
    g = M.group
    if M.kind == "fraction_mod_ring" or g.kind == "Q":
        if M.kind == "quotient" and M.ideal.is_zero():
            return [CutIdeal.zero(g)]
        return [maximal_ideal(g)]
    a = M.ideal
    if a.is_zero():
        return [CutIdeal.zero(g)]
    # Ann(x) = a - v(x) has leading coordinate anywhere from that of a down to
    # depth(a); each minimal prime sits one past its leading coordinate.
    q = _first_nonzero(a.key)
    return [prime_at_depth(g, j) for j in range(q + 1, a.depth + 1)]


def val_ass(M: CutModule) -> list:
    p = val_is_coprimary(M)
    if p is not None:
        return [p]
    # finitely many Ass1 primes; then Ass and Ass1 agree
    return val_ass1(M)


# --------------------------------------------------------------------------
# literals


_CUT = re.compile(r"^\s*cut\s*(>=|>)\s*\(\s*(.*?)\s*\)\s*$")


def parse_group(text: str) -> ValueGroup:
    text = text.strip()
    if text == "Q":
        return QGROUP
    m = re.fullmatch(r"Zlex\(\s*(\d+)\s*\)", text)
    if m:
        return Zlex(int(m.group(1)))
    if text == "Z":
        return Zlex(1)
    raise ValuationError(f"unknown value group {text!r}")


def parse_value(text: str, group: ValueGroup):
    text = text.strip()
    if group.kind == "Zlex":
        inner = text.strip("()")
        parts = [p.strip() for p in inner.split(",") if p.strip()]
        try:
            return group.convert(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValuationError(f"bad value {text!r}") from exc
    try:
        return Fraction(text)
    except ValueError as exc:
        raise ValuationError(f"bad value {text!r}") from exc


def parse_cut(text: str, group: ValueGroup) -> CutIdeal:
    """``cut>=((1,0))``, ``cut>(0)``, ``cut>=((1,-inf))``, ``0`` or ``1``."""
    t = text.strip()
    if t in ("0", "(0)"):
        return CutIdeal.zero(group)
    if t in ("1", "(1)"):
        return CutIdeal.unit(group)
    m = _CUT.match(t)
    if not m:
        raise ValuationError(f"bad cut literal {text!r}")
    op, body = m.groups()
    if group.kind == "Zlex" and "-inf" in body:
        parts = [p.strip() for p in body.strip("()").split(",")]
        pre = [int(p) for p in parts if p != "-inf"]
        if op != ">=":
            raise ValuationError("limit cuts are written with >=")
        return CutIdeal.limit(group, pre)
    v = parse_value(body, group)
    return CutIdeal.closed(group, v) if op == ">=" else CutIdeal.open(group, v)
