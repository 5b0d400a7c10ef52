"""Buchberger's algorithm, reduced bases, normal forms, membership, elimination.

Internally polynomials are ``{dense exponent tuple: coefficient}`` dicts laid
out by the active term order; the public surface speaks ``Polynomial``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable

from .poly import (GREVLEX, QQ, Domain, Monomial, Polynomial, TermOrder,
                   block_order, var_key)


class BudgetExceeded(RuntimeError):
    """Raised when a computation needs more pair reductions than allowed."""


@dataclass
class Settings:
    budget: int = 50_000
    cache: bool = True


settings = Settings()

_cache: dict = {}
_cache_lock = threading.Lock()


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


# --------------------------------------------------------------------------
# dense kernel


def _to_dense(p: Polynomial, layout) -> dict:
    return {m.dense(layout): c for m, c in p.terms.items()}


def _from_dense(d: dict, layout, domain: Domain) -> Polynomial:
    return Polynomial._raw(
        {Monomial(zip(layout, e)): c for e, c in d.items()}, domain
    )


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class _Kernel:
    def __init__(self, key, p: int):
        self.key = key
        self.p = p

    def lead(self, f: dict):
        return max(f, key=self.key)

    def monic(self, f: dict) -> dict:
        lm = self.lead(f)
        c = f[lm]
        if self.p:
            inv = pow(c, -1, self.p)
            return {m: a * inv % self.p for m, a in f.items()}
        return {m: a / c for m, a in f.items()}

    def sub_mul(self, f: dict, coef, shift, g: dict) -> None:
        """In place: f -= coef * x^shift * g."""
        p = self.p
        for m, a in g.items():
            mm = tuple(x + y for x, y in zip(m, shift))
            s = f.get(mm, 0) - coef * a
            if p:
                s %= p
            if s:
                f[mm] = s
            else:
                del f[mm]

    def reduce(self, f: dict, basis) -> dict:
        """Full reduction of f by monic ``basis`` = list of (lm, dict)."""
        f = dict(f)
        rem = {}
        while f:
            m = self.lead(f)
            c = f[m]
            for lm, g in basis:
                if _divides(lm, m):
                    shift = tuple(x - y for x, y in zip(m, lm))
                    self.sub_mul(f, c, shift, g)
                    break
            else:
                rem[m] = c
                del f[m]
        return rem

    def spoly(self, a, b):
        (la, fa), (lb, fb) = a, b
        l = _lcm(la, lb)
        s = {}
        self.sub_mul(s, -1, tuple(x - y for x, y in zip(l, la)), fa)
        self.sub_mul(s, 1, tuple(x - y for x, y in zip(l, lb)), fb)
        return s


def _buchberger_dense(gens, key, p: int, budget: int):
    k = _Kernel(key, p)
    basis = []
    for f in gens:
        if f:
            f = k.monic(f)
            basis.append((k.lead(f), f))
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    steps = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(_lcm(basis[ij[0]][0], basis[ij[1]][0])),
                                          key(_lcm(basis[ij[0]][0], basis[ij[1]][0])),
                                          ij[1], ij[0]))
        pairs.discard((i, j))
        li, lj = basis[i][0], basis[j][0]
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue  # coprime leading monomials
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"more than {budget} pair reductions")
        h = k.reduce(k.spoly(basis[i], basis[j]), basis)
        if h:
            h = k.monic(h)
            basis.append((k.lead(h), h))
            n = len(basis) - 1
            pairs |= {(m, n) for m in range(n)}
    # minimalize
    basis.sort(key=lambda lf: key(lf[0]))
    minimal = []
    for idx, (lm, f) in enumerate(basis):
        if any(_divides(lm2, lm) for lm2, _ in minimal):
            continue
        if any(_divides(lm2, lm) and lm2 != lm for lm2, _ in basis[idx + 1:]):
            continue
        minimal.append((lm, f))
    # interreduce
    reduced = []
    for idx, (lm, f) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = {m: c for m, c in f.items() if m != lm}
        tail = k.reduce(tail, others)
        tail[lm] = f[lm]
        reduced.append((lm, tail))
    reduced.sort(key=lambda lf: key(lf[0]), reverse=True)
    return reduced


# --------------------------------------------------------------------------
# public types


class GroebnerBasis:
    """Reduced Groebner basis: monic elements sorted by descending leading monomial."""

    def __init__(self, elements, order: TermOrder, domain: Domain):
        self.elements = tuple(elements)
        self.order = order
        self.domain = domain

    @property
    def variables(self) -> frozenset:
        out = set()
        for g in self.elements:
            out |= g.support
        return frozenset(out)

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.order == other.order
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.order, self.elements))

    def __str__(self):
        return "{" + ", ".join(g.to_str(self.order) for g in self.elements) + "}"

    __repr__ = __str__


class PolyIdeal:
    """Finitely generated ideal; the reduced basis is computed on demand and memoized."""

    def __init__(self, generators: Iterable[Polynomial] = (), order: TermOrder = GREVLEX,
                 domain: Domain | None = None):
        gens = [g for g in generators if not g.is_zero()]
        if domain is None:
            domain = gens[0].domain if gens else QQ
        for g in gens:
            if g.domain != domain:
                raise ValueError("generators from different coefficient domains")
        self.generators = tuple(gens)
        self.order = order
        self.domain = domain
        self._basis = None

    @property
    def variables(self) -> frozenset:
        out = set()
        for g in self.generators:
            out |= g.support
        return frozenset(out)

    def basis(self) -> GroebnerBasis:
        if self._basis is None:
            self._basis = buchberger(self)
        return self._basis

    def with_order(self, order: TermOrder) -> "PolyIdeal":
        return PolyIdeal(self.generators, order, self.domain)

    def is_unit(self) -> bool:
        b = self.basis()
        return len(b) == 1 and b.elements[0].is_constant()

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, p: Polynomial) -> bool:
        return ideal_member(p, self)

    def __contains__(self, p: Polynomial) -> bool:
        return ideal_member(p, self)

    def contains_ideal(self, other) -> bool:
        return all(ideal_member(g, self) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, PolyIdeal):
            return NotImplemented
        if self.domain != other.domain:
            return False
        a = self if self.order == GREVLEX else self.with_order(GREVLEX)
        b = other if other.order == GREVLEX else other.with_order(GREVLEX)
        return a.basis().elements == b.basis().elements

    def __hash__(self):
        a = self if self.order == GREVLEX else self.with_order(GREVLEX)
        return hash(a.basis().elements)

    def __add__(self, other: "PolyIdeal") -> "PolyIdeal":
        return PolyIdeal(self.generators + other.generators, self.order, self.domain)

    def __mul__(self, other: "PolyIdeal") -> "PolyIdeal":
        return PolyIdeal([f * g for f in self.generators for g in other.generators],
                         self.order, self.domain)

    def canonical_str(self) -> str:
        b = self.basis()
        if not b.elements:
            return "(0)"
        return "(" + ", ".join(g.to_str(self.order) for g in b.elements) + ")"

    def __str__(self):
        return self.canonical_str()

    def __repr__(self):
        return f"PolyIdeal{self.canonical_str()}"


def ideal(*gens, order: TermOrder = GREVLEX, domain: Domain | None = None) -> PolyIdeal:
    """``ideal("x^2", "x*y")`` or ``ideal(p, q)`` convenience constructor."""
    from .poly import parse_polynomial

    dom = domain or QQ
    polys = [parse_polynomial(g, dom) if isinstance(g, str) else g for g in gens]
    return PolyIdeal(polys, order, domain)


# --------------------------------------------------------------------------
# operations


def buchberger(I: PolyIdeal, budget: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` under ``I.order``."""
    budget = settings.budget if budget is None else budget
    order, domain = I.order, I.domain
    cache_key = (domain, order, frozenset(I.generators))
    if settings.cache:
        with _cache_lock:
            hit = _cache.get(cache_key)
        if hit is not None:
            return hit
    layout = order.arrange(I.variables)
    key = order.dense_key(layout)
    dense = [_to_dense(g, layout) for g in I.generators]
    reduced = _buchberger_dense(dense, key, domain.p, budget)
    gb = GroebnerBasis([_from_dense(f, layout, domain) for _, f in reduced], order, domain)
    if settings.cache:
        with _cache_lock:
            _cache[cache_key] = gb
    return gb


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of ``p`` modulo ``G``; zero iff ``p`` in (G)."""
    if p.is_zero() or not G.elements:
        return p
    if p.domain != G.domain:
        raise ValueError("coefficient domain mismatch")
    layout = G.order.arrange(G.variables | p.support)
    key = G.order.dense_key(layout)
    k = _Kernel(key, G.domain.p)
    basis = []
    for g in G.elements:
        d = _to_dense(g, layout)
        basis.append((k.lead(d), d))
    return _from_dense(k.reduce(_to_dense(p, layout), basis), layout, G.domain)


def ideal_member(p: Polynomial, I: PolyIdeal) -> bool:
    if p.is_zero():
        return True
    return normal_form(p, I.basis()).is_zero()


def eliminate(I: PolyIdeal, drop) -> PolyIdeal:
    """``I`` intersected with the subring in the remaining variables."""
    drop = frozenset(drop)
    if not (drop & I.variables):
        return I
    gb = buchberger(I.with_order(block_order(drop)))
    kept = [g for g in gb.elements if not (g.support & drop)]
    return PolyIdeal(kept, I.order if I.order.kind != "block" else GREVLEX, I.domain)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder = GREVLEX) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    l = lf.lcm(lg)
    a = f.mul_monomial(l / lf, f.domain.inv(f.terms[lf]))
    b = g.mul_monomial(l / lg, g.domain.inv(g.terms[lg]))
    return a - b


def sorted_variables(vs) -> list:
    return sorted(vs, key=var_key)
