"""Ideal calculus: quotients, saturations, intersections, S-components,
monomial primary decomposition and normal representations.

Functions accept either a :class:`MonomialIdeal` or a :class:`PolyIdeal`.
Monomial inputs stay on combinatorial fast paths (divisibility, lcm, exponent
clearing); everything else goes through Groebner bases.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groebner import PolyIdeal, eliminate, ideal_member, normal_form
from .poly import (GREVLEX, ONE, QQ, Domain, Monomial, Polynomial, TermOrder,
                   parse_polynomial, var_key, var_str)


class IdealError(ValueError):
    pass


class UnsupportedSpec(IdealError):
    pass


class DecompositionError(IdealError):
    pass


class Inconclusive(IdealError):
    pass


# --------------------------------------------------------------------------
# monomial ideals


def _mono_sort_key(m: Monomial):
    # degree first, then lexicographic on (variable, exponent) pairs
    return (m.degree, tuple((var_key(v), -e) for v, e in m.items()))


class MonomialIdeal:
    """Monomial ideal held by its unique minimal generating set."""

    __slots__ = ("min_gens", "_hash")

    def __init__(self, gens: Iterable[Monomial] = ()):
        gens = set(gens)
        if ONE in gens:
            mins = [ONE]
        else:
            ordered = sorted(gens, key=_mono_sort_key)
            mins = []
            for g in ordered:
                if not any(h.divides(g) for h in mins):
                    mins.append(g)
        vs = frozenset().union(*(g.support for g in mins)) if mins else frozenset()
        self.min_gens = tuple(sorted(mins, key=lambda g: GREVLEX.key(g, vs), reverse=True))
        self._hash = hash(self.min_gens)

    @classmethod
    def parse(cls, text: str) -> "MonomialIdeal":
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        gens = []
        for part in text.split(","):
            if not part.strip():
                continue
            p = parse_polynomial(part)
            if p.is_zero():
                continue
            if not p.is_monomial():
                raise IdealError(f"{part.strip()!r} is not a monomial")
            gens.append(next(iter(p.terms)))
        return cls(gens)

    @classmethod
    def generated_by_vars(cls, variables) -> "MonomialIdeal":
        return cls(Monomial({v: 1}) for v in variables)

    @property
    def variables(self) -> frozenset:
        out = set()
        for g in self.min_gens:
            out |= g.support
        return frozenset(out)

    def is_unit(self) -> bool:
        return self.min_gens == (ONE,)

    def is_zero(self) -> bool:
        return not self.min_gens

    def is_prime(self) -> bool:
        return not self.is_unit() and all(g.degree == 1 for g in self.min_gens)

    def prime_vars(self) -> frozenset:
        """Variable set of a monomial prime."""
        if not self.is_prime():
            raise IdealError(f"{self} is not a monomial prime")
        return self.variables

    def contains(self, x) -> bool:
        if isinstance(x, Monomial):
            return any(g.divides(x) for g in self.min_gens)
        if isinstance(x, Polynomial):
            return all(self.contains(m) for m in x.terms)
        if isinstance(x, MonomialIdeal):
            return all(self.contains(g) for g in x.min_gens)
        return all(self.contains(g) for g in x.generators)

    __contains__ = contains

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.min_gens + other.min_gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(a * b for a in self.min_gens for b in other.min_gens)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(a.lcm(b) for a in self.min_gens for b in other.min_gens)

    def quotient(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(g / g.gcd(m) for g in self.min_gens)

    def saturate_vars(self, variables) -> "MonomialIdeal":
        variables = frozenset(variables)
        return MonomialIdeal(
            Monomial({v: e for v, e in g.items() if v not in variables}) for g in self.min_gens
        )

    def to_poly(self, domain: Domain = QQ, order: TermOrder = GREVLEX) -> PolyIdeal:
        return PolyIdeal([Polynomial.monomial(g, 1, domain) for g in self.min_gens], order, domain)

    @property
    def generators(self) -> tuple:
        return tuple(Polynomial.monomial(g) for g in self.min_gens)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.min_gens == other.min_gens

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (len(self.min_gens), [_mono_sort_key(g) for g in
                                     sorted(self.min_gens, key=_mono_sort_key)])

    def __str__(self):
        if not self.min_gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.min_gens) + ")"

    __repr__ = __str__


def as_poly_ideal(I, domain: Domain | None = None) -> PolyIdeal:
    if isinstance(I, PolyIdeal):
        return I
    return I.to_poly(domain or QQ)


def as_monomial_ideal(I) -> MonomialIdeal | None:
    """The monomial form of ``I`` if its reduced basis is monomial."""
    if isinstance(I, MonomialIdeal):
        return I
    gb = I.basis()
    if all(g.is_monomial() for g in gb.elements):
        return MonomialIdeal(next(iter(g.terms)) for g in gb.elements)
    return None


def _domain_of(*ideals) -> Domain:
    for I in ideals:
        if isinstance(I, PolyIdeal):
            return I.domain
    return QQ


def same_ideal(a, b) -> bool:
    if isinstance(a, MonomialIdeal) and isinstance(b, MonomialIdeal):
        return a == b
    d = _domain_of(a, b)
    return as_poly_ideal(a, d) == as_poly_ideal(b, d)


def ideal_contains(big, small) -> bool:
    """``small`` is a subset of ``big``."""
    if isinstance(big, MonomialIdeal):
        return big.contains(small)
    gens = small.generators
    if isinstance(small, MonomialIdeal):
        gens = [Polynomial.monomial(g, 1, big.domain) for g in small.min_gens]
    return all(ideal_member(g, big) for g in gens)


def element_in(f: Polynomial, I) -> bool:
    if isinstance(I, MonomialIdeal):
        return I.contains(f)
    return ideal_member(f, I)


def unit_ideal(domain: Domain = QQ) -> PolyIdeal:
    return PolyIdeal([Polynomial.const(1, domain)], GREVLEX, domain)


def _fresh(avoid, stem="_t"):
    names = {v for v in avoid}
    i = None
    while (stem, i) in names:
        i = 0 if i is None else i + 1
    return (stem, i)


def _variables_of(*things) -> frozenset:
    out = set()
    for t in things:
        out |= t.variables if not isinstance(t, Polynomial) else t.support
    return frozenset(out)


# --------------------------------------------------------------------------
# quotient, saturation, intersection


def intersect(I, J):
    """``I`` intersected with ``J``."""
    if isinstance(I, MonomialIdeal) and isinstance(J, MonomialIdeal):
        return I.intersect(J)
    d = _domain_of(I, J)
    I, J = as_poly_ideal(I, d), as_poly_ideal(J, d)
    if I.is_zero() or J.is_zero():
        return PolyIdeal([], GREVLEX, d)
    t = _fresh(_variables_of(I, J))
    tp = Polynomial({Monomial({t: 1}): 1}, d)
    gens = [tp * f for f in I.generators] + [(1 - tp) * g for g in J.generators]
    return eliminate(PolyIdeal(gens, GREVLEX, d), {t})


def intersect_all(ideals: Sequence):
    if not ideals:
        raise IdealError("empty intersection")
    acc = ideals[0]
    for J in ideals[1:]:
        acc = intersect(acc, J)
    return acc


def quotient_by_element(I, f: Polynomial):
    """``(I : f)``."""
    if f.is_zero():
        return unit_ideal(f.domain) if not isinstance(I, MonomialIdeal) else MonomialIdeal([ONE])
    if isinstance(I, MonomialIdeal) and f.is_monomial():
        return I.quotient(next(iter(f.terms)))
    d = _domain_of(I) if isinstance(I, PolyIdeal) else f.domain
    I = as_poly_ideal(I, d)
    if I.is_zero():
        return I
    cap = intersect(I, PolyIdeal([f], GREVLEX, d))
    return PolyIdeal([g.exact_divide(f) for g in cap.generators], GREVLEX, d)


def ideal_quotient(I, J):
    """``(I : J)`` = intersection of ``(I : f)`` over generators f of J."""
    if isinstance(J, MonomialIdeal):
        gens = [Polynomial.monomial(g, 1, _domain_of(I)) for g in J.min_gens]
    else:
        gens = list(J.generators)
    if not gens:
        return MonomialIdeal([ONE]) if isinstance(I, MonomialIdeal) else unit_ideal(I.domain)
    return intersect_all([quotient_by_element(I, f) for f in gens])


def saturate(I, f: Polynomial):
    """``(I : f^inf)``. Monomial data clears exponents, otherwise Rabinowitsch."""
    if f.is_zero():
        raise IdealError("cannot saturate by zero")
    if f.is_constant():
        return I
    if isinstance(I, MonomialIdeal) and f.is_monomial():
        return I.saturate_vars(f.support)
    return saturate_rabinowitsch(I, f)


def saturate_rabinowitsch(I, f: Polynomial) -> PolyIdeal:
    """``(I + (t*f - 1))`` intersected with the original ring."""
    d = f.domain
    I = as_poly_ideal(I, d)
    t = _fresh(_variables_of(I, f))
    tp = Polynomial({Monomial({t: 1}): 1}, d)
    J = PolyIdeal(list(I.generators) + [tp * f - 1], GREVLEX, d)
    return eliminate(J, {t})


def saturate_by_ideal(I, J):
    """``(I : J^inf)`` = intersection of the saturations by the generators of J."""
    if isinstance(J, MonomialIdeal):
        gens = [Polynomial.monomial(g, 1, _domain_of(I)) for g in J.min_gens]
    else:
        gens = list(J.generators)
    if not gens:
        return I
    return intersect_all([saturate(I, f) for f in gens])


def in_radical(f: Polynomial, I) -> bool:
    """Exact radical membership: ``1 in I + (t*f - 1)``."""
    if f.is_zero():
        return True
    if isinstance(I, MonomialIdeal) and f.is_monomial():
        return radical_monomial(I).contains(f)
    d = f.domain
    I = as_poly_ideal(I, d)
    t = _fresh(_variables_of(I, f))
    tp = Polynomial({Monomial({t: 1}): 1}, d)
    return PolyIdeal(list(I.generators) + [tp * f - 1], GREVLEX, d).is_unit()


# --------------------------------------------------------------------------
# multiplicatively closed sets


@dataclass(frozen=True)
class MultSetSpec:
    """A multiplicatively closed set containing 1.

    kinds: ``powers_of`` (elements = (f,)), ``finitely_generated`` (elements =
    generators), ``complement_of_monomial_prime`` (variables = the prime's
    variables), ``extended`` (base * powers of elements[0]).
    """

    kind: str
    elements: tuple = ()
    variables: frozenset = frozenset()
    base: "MultSetSpec | None" = None

    def __str__(self):
        if self.kind == "powers_of":
            return f"powers({self.elements[0]})"
        if self.kind == "finitely_generated":
            return "gens(" + ", ".join(map(str, self.elements)) + ")"
        if self.kind == "complement_of_monomial_prime":
            return "complement(" + ", ".join(var_str(v) for v in
                                             sorted(self.variables, key=var_key)) + ")"
        return f"extended({self.base}, {self.elements[0]})"


def powers_of(f: Polynomial) -> MultSetSpec:
    return MultSetSpec("powers_of", (f,))


def finitely_generated(fs: Iterable[Polynomial]) -> MultSetSpec:
    return MultSetSpec("finitely_generated", tuple(fs))


def complement_of_monomial_prime(variables) -> MultSetSpec:
    if isinstance(variables, MonomialIdeal):
        variables = variables.prime_vars()
    return MultSetSpec("complement_of_monomial_prime", (), frozenset(variables))


def extended(base: MultSetSpec, a: Polynomial) -> MultSetSpec:
    return MultSetSpec("extended", (a,), frozenset(), base)


def one_set() -> MultSetSpec:
    return MultSetSpec("finitely_generated", ())


def _in_monomial_prime(f: Polynomial, prime_vars: frozenset) -> bool:
    return all(m.support & prime_vars for m in f.terms)


def meets_monomial_prime(S: MultSetSpec, prime_vars) -> bool:
    """Whether S intersects the monomial prime generated by ``prime_vars``."""
    prime_vars = frozenset(prime_vars)
    if S.kind in ("powers_of", "finitely_generated"):
        return any(_in_monomial_prime(f, prime_vars) for f in S.elements)
    if S.kind == "complement_of_monomial_prime":
        return not prime_vars <= S.variables
    return meets_monomial_prime(S.base, prime_vars) or _in_monomial_prime(S.elements[0], prime_vars)


def s_component(I, S: MultSetSpec):
    """``{x : s*x in I for some s in S}``."""
    if S.kind == "powers_of":
        return saturate(I, S.elements[0])
    if S.kind == "finitely_generated":
        cur = I
        while True:
            nxt = cur
            for f in S.elements:
                nxt = saturate(nxt, f)
            if same_ideal(nxt, cur):
                return nxt
            cur = nxt
    if S.kind == "complement_of_monomial_prime":
        mono = as_monomial_ideal(I)
        if mono is None:
            raise UnsupportedSpec("complement-of-prime components need a monomial ideal")
        outside = mono.variables - S.variables
        res = mono.saturate_vars(outside)
        return res if isinstance(I, MonomialIdeal) else res.to_poly(I.domain)
    if S.kind == "extended":
        return s_component(s_component(I, powers_of(S.elements[0])), S.base)
    raise UnsupportedSpec(f"unknown multiplicative set kind {S.kind!r}")


# --------------------------------------------------------------------------
# radicals, minimal primes, primary tests


def radical_monomial(I: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(g.squarefree() for g in I.min_gens)


def _minimal_covers(edges: list) -> list:
    if not edges:
        return [frozenset()]
    edge = min(edges, key=lambda e: (len(e), sorted(map(var_key, e))))
    out = set()
    for v in edge:
        rest = [e for e in edges if v not in e]
        for c in _minimal_covers(rest):
            out.add(c | {v})
    return [c for c in out if not any(o < c for o in out)]


def minimal_primes_monomial(I: MonomialIdeal) -> list:
    """Minimal primes of a proper monomial ideal, as sorted monomial primes."""
    if I.is_unit():
        raise IdealError("the unit ideal has no minimal primes")
    edges = [g.support for g in I.min_gens]
    covers = _minimal_covers(edges)
    return sorted({MonomialIdeal.generated_by_vars(c) for c in covers})


def is_primary_monomial(I: MonomialIdeal) -> MonomialIdeal | None:
    """The associated prime if ``I`` is primary, else None.

    A monomial ideal is primary iff every variable that occurs in a minimal
    generator also occurs as a pure power among the minimal generators.
    """
    if I.is_unit():
        raise IdealError("the unit ideal is not proper")
    used = I.variables
    pure = {next(iter(g.support)) for g in I.min_gens if len(g.support) == 1}
    if used <= pure:
        return MonomialIdeal.generated_by_vars(used)
    return None


# --------------------------------------------------------------------------
# decompositions


@dataclass(frozen=True)
class PrimaryComponent:
    component: object  # MonomialIdeal | PolyIdeal
    prime: MonomialIdeal

    def __str__(self):
        return str(self.component)


@dataclass
class DecompositionReport:
    ideal: object
    components: tuple
    normalized: bool
    certificates: dict = field(default_factory=dict)

    @property
    def primes(self) -> list:
        return [c.prime for c in self.components]

    def verify(self) -> bool:
        """Re-check every certificate from scratch."""
        comps = [c.component for c in self.components]
        if not same_ideal(intersect_all(comps), self.ideal):
            return False
        for c in self.components:
            mono = as_monomial_ideal(c.component)
            if mono is not None:
                if is_primary_monomial(mono) != c.prime:
                    return False
        if self.normalized:
            if len({c.prime for c in self.components}) != len(self.components):
                return False
            for i, c in enumerate(self.components):
                others = comps[:i] + comps[i + 1:]
                if others and ideal_contains(c.component, intersect_all(others)):
                    return False
        return True

    def __str__(self):
        return " ∩ ".join(str(c.component) for c in self.components)


def _component_key(c: PrimaryComponent):
    comp = c.component
    ck = comp.sort_key() if isinstance(comp, MonomialIdeal) else (99, str(comp))
    return (c.prime.sort_key(), ck)


def _witness_outside(inside, container):
    """A generator of ``inside`` that is not in ``container``."""
    if isinstance(inside, MonomialIdeal):
        for g in inside.min_gens:
            if not element_in(Polynomial.monomial(g), container):
                return g
        return None
    for g in inside.basis().elements:
        if not element_in(g, container):
            return g
    return None


def normalize_decomposition(components: Sequence[PrimaryComponent], ambient) -> DecompositionReport:
    """Merge components with equal primes, then drop redundant ones greedily."""
    comps = [c.component for c in components]
    if not comps:
        raise DecompositionError("no components")
    if not same_ideal(intersect_all(comps), ambient):
        raise DecompositionError("components do not intersect to the given ideal")
    groups: dict = {}
    for c in components:
        groups.setdefault(c.prime, []).append(c.component)
    merged = [PrimaryComponent(intersect_all(g), p) for p, g in groups.items()]
    merged.sort(key=_component_key)
    changed = True
    while changed and len(merged) > 1:
        changed = False
        for i, c in enumerate(merged):
            others = [o.component for j, o in enumerate(merged) if j != i]
            if ideal_contains(c.component, intersect_all(others)):
                del merged[i]
                changed = True
                break
    certs = _certify(merged, ambient, normalized=True)
    return DecompositionReport(ambient, tuple(merged), True, certs)


def _certify(components, ambient, normalized: bool) -> dict:
    comps = [c.component for c in components]
    cap = intersect_all(comps)
    amb_gens = (ambient.min_gens if isinstance(ambient, MonomialIdeal)
                else ambient.basis().elements)
    cap_gens = cap.min_gens if isinstance(cap, MonomialIdeal) else cap.basis().elements
    certs = {
        "intersection": {
            "input_in_components": [str(g) for g in amb_gens
                                    if all(element_in(_as_poly(g), c) for c in comps)],
            "intersection_in_input": [str(g) for g in cap_gens if element_in(_as_poly(g), ambient)],
            "equal": same_ideal(cap, ambient),
        },
        "primary": [],
        "irredundancy": [],
        "distinct_primes": len({c.prime for c in components}) == len(components),
    }
    for c in components:
        mono = as_monomial_ideal(c.component)
        if mono is not None:
            pure = sorted(str(g) for g in mono.min_gens if len(g.support) == 1)
            certs["primary"].append({"component": str(c.component), "prime": str(c.prime),
                                     "pure_powers": pure,
                                     "ok": is_primary_monomial(mono) == c.prime})
        else:
            certs["primary"].append({"component": str(c.component), "prime": str(c.prime),
                                     "ok": None, "note": "caller-certified"})
    if normalized:
        for i, c in enumerate(components):
            others = comps[:i] + comps[i + 1:]
            if not others:
                certs["irredundancy"].append({"component": str(c.component), "witness": None,
                                              "note": "sole component"})
                continue
            w = _witness_outside(intersect_all(others), c.component)
            certs["irredundancy"].append({"component": str(c.component),
                                          "witness": None if w is None else str(w)})
    return certs


def _as_poly(g):
    return Polynomial.monomial(g) if isinstance(g, Monomial) else g


def _split(I: MonomialIdeal, order: TermOrder, rng: random.Random | None) -> list:
    if is_primary_monomial(I) is not None:
        return [I]
    mixed = [g for g in I.min_gens if len(g.support) > 1]
    if rng is None:
        vs = I.variables
        pick = min(mixed, key=lambda g: order.key(g, vs))
        v = max(pick.support, key=var_key)  # smallest variable
    else:
        pick = rng.choice(mixed)
        v = rng.choice(sorted(pick.support, key=var_key))
    u = Monomial({v: pick[v]})
    w = pick / u
    return (_split(I + MonomialIdeal([u]), order, rng)
            + _split(I + MonomialIdeal([w]), order, rng))


def primary_decompose_monomial(I: MonomialIdeal, order: TermOrder = GREVLEX,
                               rng: random.Random | None = None) -> DecompositionReport:
    """Normal primary decomposition by repeatedly splitting mixed generators.

    ``rng`` randomizes the choice of split generator and variable; by default
    the order-smallest mixed generator is split on its smallest variable.
    """
    if I.is_unit():
        raise IdealError("the unit ideal has no primary decomposition")
    if I.is_zero():
        return normalize_decomposition([PrimaryComponent(I, I)], I)
    leaves = _split(I, order, rng)
    comps = [PrimaryComponent(c, is_primary_monomial(c)) for c in set(leaves)]
    return normalize_decomposition(comps, I)


# --------------------------------------------------------------------------
# prime avoidance


@dataclass(frozen=True)
class AvoidanceResult:
    witness: Polynomial | None = None
    index: int | None = None

    @property
    def contained(self) -> bool:
        return self.index is not None


def prime_avoidance_witness(a, primes: Sequence, rng: random.Random | None = None,
                            tries: int = 200) -> AvoidanceResult:
    """Either an element of ``a`` outside every prime, or an index of a prime containing ``a``."""
    for i, p in enumerate(primes):
        if ideal_contains(p, a):
            return AvoidanceResult(index=i)
    if isinstance(a, MonomialIdeal) and all(isinstance(p, MonomialIdeal) for p in primes):
        chosen = []
        for p in primes:
            g = next(g for g in a.min_gens if not p.contains(g))
            if g not in chosen:
                chosen.append(g)
        w = Polynomial({g: 1 for g in chosen})
        return AvoidanceResult(witness=w)
    gens = list(as_poly_ideal(a).generators)
    d = gens[0].domain

    def avoids(f):
        return not f.is_zero() and not any(element_in(f, p) for p in primes)

    for g in gens:
        if avoids(g):
            return AvoidanceResult(witness=g)
    rng = rng or random.Random(0)
    for _ in range(tries):
        f = Polynomial({}, d)
        for g in gens:
            f = f + g.scale(rng.randint(-3, 3))
        if avoids(f):
            return AvoidanceResult(witness=f)
    # products of generators also lie in the ideal
    for g, h in itertools.combinations_with_replacement(gens, 2):
        for c in range(1, 4):
            f = g + h * g.scale(c) + h
            if avoids(f):
                return AvoidanceResult(witness=f)
    raise Inconclusive("no witness found and containment not provable")


def parse_ideal(text: str, domain: Domain = QQ, variables=None):
    """``"(x^2, x*y)"`` as a MonomialIdeal when every generator is a monomial."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    polys = [parse_polynomial(s, domain, variables) for s in _split_top(body) if s.strip()]
    polys = [p for p in polys if not p.is_zero()]
    if all(p.is_monomial() for p in polys):
        if any(p.is_constant() for p in polys):
            return MonomialIdeal([ONE])
        return MonomialIdeal(next(iter(p.terms)) for p in polys)
    return PolyIdeal(polys, GREVLEX, domain)


def _split_top(body: str) -> list:
    """Split on commas outside parentheses and brackets."""
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts
