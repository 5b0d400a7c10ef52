"""Finitely generated modules ``M = R/I_1 (+) ... (+) R/I_k`` and the
associated-prime apparatus: annihilators, colon ideals, zero divisors,
nilpotence, coprimary tests, Ass0, Ass1, Ass, support and radicals.

The polynomial backend is :class:`FgModule`. Every public function also
accepts a :class:`~assprimes.valuation.CutModule` or a
:class:`~assprimes.zmodules.CyclicSum` and routes to that backend.

Completeness of the Ass0/Ass1 scans on monomial summands: for a monomial
ideal I and a monomial m, ``(I : m)`` only depends on ``min(m_v, e_v)`` where
``e_v`` is the largest exponent of v in a minimal generator of I.  Every
associated prime of R/I has the form ``(I : m)`` for a monomial m, so it
suffices to scan monomials with ``m_v <= e_v`` in the variables of I.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import valuation as val
from . import zmodules as zm
from .groebner import PolyIdeal, normal_form
from .ideals import (IdealError, MonomialIdeal, as_monomial_ideal, element_in,
                     ideal_contains, ideal_quotient, in_radical, intersect_all,
                     minimal_primes_monomial, primary_decompose_monomial,
                     parse_ideal, quotient_by_element, radical_monomial, same_ideal, s_component,
                     complement_of_monomial_prime)
from .poly import ONE, QQ, Domain, Monomial, Polynomial, parse_polynomial


class ModuleError(ValueError):
    pass


class UnsupportedBackend(ModuleError):
    pass


class ZeroModule(ModuleError):
    pass


# --------------------------------------------------------------------------
# prime sets


@dataclass
class PrimeSet:
    """Primes with provenance; equality compares the primes only."""

    entries: dict = field(default_factory=dict)  # prime -> (provenance, witness)
    complete: bool = True

    def add(self, prime, provenance: str, witness=None) -> None:
        self.entries.setdefault(prime, (provenance, witness))

    @property
    def primes(self) -> frozenset:
        return frozenset(self.entries)

    def __contains__(self, p) -> bool:
        return p in self.entries

    def __iter__(self):
        return iter(sorted(self.entries, key=_prime_sort_key))

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if isinstance(other, PrimeSet):
            return self.primes == other.primes
        return self.primes == frozenset(other)

    def __str__(self):
        return "{" + ", ".join(_prime_str(p) for p in self) + "}"

    def describe(self) -> list:
        out = []
        for p in self:
            prov, wit = self.entries[p]
            out.append({"prime": _prime_str(p), "provenance": prov,
                        "witness": None if wit is None else str(wit)})
        return out


def _prime_str(p) -> str:
    return f"({p})" if isinstance(p, int) else str(p)


def _prime_sort_key(p):
    if isinstance(p, MonomialIdeal):
        return (0, p.sort_key())
    if isinstance(p, val.CutIdeal):
        return (1, p.key)
    if isinstance(p, int):
        return (2, p)
    return (3, str(p))


# --------------------------------------------------------------------------
# polynomial modules


def _ideal(x, domain: Domain):
    if isinstance(x, str):
        return _ideal(parse_ideal(x, domain), domain)
    if isinstance(x, PolyIdeal):
        mono = as_monomial_ideal(x)
        return mono if mono is not None else x
    return x


@dataclass(frozen=True)
class FgModule:
    """``R/I_1 (+) ... (+) R/I_k`` over a polynomial ring; unit summands are dropped."""

    summands: tuple
    domain: Domain = QQ

    def __post_init__(self):
        keep = []
        for I in self.summands:
            I = _ideal(I, self.domain)
            unit = I.is_unit() if isinstance(I, MonomialIdeal) else I.is_unit()
            if not unit:
                keep.append(I)
        object.__setattr__(self, "summands", tuple(keep))

    @classmethod
    def cyclic(cls, I, domain: Domain = QQ) -> "FgModule":
        return cls((I,), domain)

    def is_zero(self) -> bool:
        return not self.summands

    def is_monomial(self) -> bool:
        return all(isinstance(I, MonomialIdeal) for I in self.summands)

    @property
    def rank(self) -> int:
        return len(self.summands)

    def element(self, *components) -> "ModElement":
        if len(components) != self.rank:
            raise ModuleError(f"expected {self.rank} components")
        comps = []
        for c, I in zip(components, self.summands):
            if isinstance(c, str):
                c = parse_polynomial(c, self.domain)
            elif isinstance(c, (int, Monomial)):
                c = Polynomial.const(c, self.domain) if isinstance(c, int) \
                    else Polynomial.monomial(c, 1, self.domain)
            comps.append(_reduce(c, I))
        return ModElement(tuple(comps))

    def basis_element(self, i: int) -> "ModElement":
        comps = ["0"] * self.rank
        comps[i] = "1"
        return self.element(*comps)

    def direct_sum(self, other: "FgModule") -> "FgModule":
        return FgModule(self.summands + other.summands, self.domain)

    def __str__(self):
        if not self.summands:
            return "0"
        return " (+) ".join(f"R/{I}" for I in self.summands)


def parse_module(text: str, domain: Domain = QQ, variables=None) -> FgModule:
    """``"R/(x^2, x*y) (+) R/(y)"``; a bare ``R`` is ``R/(0)``."""
    parts = [p.strip() for p in text.split("(+)")]
    ideals = []
    for part in parts:
        if part == "R":
            ideals.append(MonomialIdeal())
            continue
        if not part.startswith("R/"):
            raise ModuleError(f"bad summand {part!r}; expected R/(...)")
        ideals.append(parse_ideal(part[2:], domain, variables))
    return FgModule(tuple(ideals), domain)


def _reduce(c: Polynomial, I) -> Polynomial:
    if isinstance(I, MonomialIdeal):
        return Polynomial({m: a for m, a in c.terms.items() if not I.contains(m)}, c.domain)
    if I.is_zero():
        return c
    return normal_form(c, I.basis())


@dataclass(frozen=True)
class ModElement:
    components: tuple

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def scale(r: Polynomial, x: ModElement, M: FgModule) -> ModElement:
    return ModElement(tuple(_reduce(r * c, I) for c, I in zip(x.components, M.summands)))


@dataclass(frozen=True)
class Submodule:
    """``N = J_1/I_1 (+) ... (+) J_k/I_k`` given by ideals ``J_i`` containing ``I_i``."""

    ideals: tuple

    @classmethod
    def zero(cls, M: FgModule) -> "Submodule":
        return cls(M.summands)


def quotient_module(N: Submodule, M: FgModule) -> FgModule:
    for J, I in zip(N.ideals, M.summands):
        if not ideal_contains(J, I):
            raise ModuleError("submodule ideal must contain the summand ideal")
    return FgModule(N.ideals, M.domain)


# --------------------------------------------------------------------------
# annihilators and colon ideals


def _unit(domain):
    return MonomialIdeal([ONE])


def annihilator(x, M):
    """``Ann(x)``: intersection of ``(I_i : x_i)`` over nonzero components."""
    if isinstance(M, val.CutModule):
        return val.val_annihilator(x, M)
    if isinstance(M, zm.CyclicSum):
        return zm.z_annihilator(x, M)
    parts = [quotient_by_element(I, c) for c, I in zip(x.components, M.summands)
             if not c.is_zero()]
    if not parts:
        return _unit(M.domain)
    return intersect_all(parts)


def module_annihilator(M):
    if isinstance(M, val.CutModule):
        return val.module_annihilator(M)
    if isinstance(M, zm.CyclicSum):
        return zm.z_module_annihilator(M)
    if M.is_zero():
        return _unit(M.domain)
    return intersect_all(list(M.summands))


def colon(N: Submodule, U: Sequence[ModElement], M: FgModule):
    """``(N : U) = {r : r*U inside N}``."""
    parts = []
    for u in U:
        for c, J in zip(u.components, N.ideals):
            if not c.is_zero():
                parts.append(quotient_by_element(J, c))
    if not parts:
        return _unit(M.domain)
    return intersect_all(parts)


# --------------------------------------------------------------------------
# zero divisors and nilpotence


def _as_poly(r, domain) -> Polynomial:
    if isinstance(r, str):
        return parse_polynomial(r, domain)
    if isinstance(r, Monomial):
        return Polynomial.monomial(r, 1, domain)
    if isinstance(r, int):
        return Polynomial.const(r, domain)
    return r


def is_zero_divisor(r, M):
    """``(verdict, witness)``; the witness x != 0 satisfies r*x = 0."""
    if isinstance(M, val.CutModule):
        ok = val.val_is_zero_divisor(r, M)
        return ok, None
    if isinstance(M, zm.CyclicSum):
        return zm.z_is_zero_divisor(r, M), None
    r = _as_poly(r, M.domain)
    for i, I in enumerate(M.summands):
        q = quotient_by_element(I, r)
        gens = q.min_gens if isinstance(q, MonomialIdeal) else q.basis().elements
        for g in gens:
            g = _as_poly(g, M.domain)
            if not element_in(g, I):
                comps = [Polynomial({}, M.domain)] * M.rank
                comps[i] = _reduce(g, I)
                return True, ModElement(tuple(comps))
    return False, None


def is_nilpotent_for(r, M) -> bool:
    if isinstance(M, val.CutModule):
        return val.val_is_nilpotent_for(r, M)
    if isinstance(M, zm.CyclicSum):
        return zm.z_is_nilpotent_for(r, M)
    r = _as_poly(r, M.domain)
    return all(in_radical(r, I) for I in M.summands)


# --------------------------------------------------------------------------
# associated primes


def monomial_cosets(I: MonomialIdeal):
    """Monomials with exponent of v at most the largest exponent of v in I."""
    vs = sorted(I.variables)
    bounds = [max(g[v] for g in I.min_gens) for v in vs]
    for exps in itertools.product(*(range(b + 1) for b in bounds)):
        m = Monomial(zip(vs, exps))
        if not I.contains(m):
            yield m


def _monomial_or_fail(M: FgModule, what: str):
    if not M.is_monomial():
        raise UnsupportedBackend(f"{what} needs monomial summands")


def _require_nonzero(M):
    if isinstance(M, FgModule) and M.is_zero():
        raise ZeroModule("the zero module has no associated primes")


def _element_at(M: FgModule, i: int, m: Monomial) -> ModElement:
    comps = [Polynomial({}, M.domain)] * M.rank
    comps[i] = Polynomial.monomial(m, 1, M.domain)
    return ModElement(tuple(comps))


def ass0(M) -> PrimeSet:
    """Primes that are annihilators of single elements."""
    _require_nonzero(M)
    out = PrimeSet()
    if isinstance(M, val.CutModule):
        for p in val.val_ass0(M):
            out.add(p, "ass0-witness", val.ass0_witness(M, p))
        return out
    if isinstance(M, zm.CyclicSum):
        for p in zm.z_ass0(M):
            out.add(p, "ass0-witness")
        return out
    if not M.is_monomial():
        return _ass_witness_search(M, first_kind=False)
    for i, I in enumerate(M.summands):
        for m in monomial_cosets(I):
            q = I.quotient(m)
            if q.is_prime() or q.is_zero():
                out.add(q, "ass0-witness", _element_at(M, i, m))
    return out


def ass1(M) -> PrimeSet:
    """Primes minimal over the annihilator of some element."""
    _require_nonzero(M)
    out = PrimeSet()
    if isinstance(M, val.CutModule):
        for p in val.val_ass1(M):
            out.add(p, "ass1-minimal-over")
        return out
    if isinstance(M, zm.CyclicSum):
        for p in zm.z_ass0(M):
            out.add(p, "ass1-minimal-over")
        return out
    if not M.is_monomial():
        return _ass_witness_search(M, first_kind=True)
    for i, I in enumerate(M.summands):
        for m in monomial_cosets(I):
            for p in minimal_primes_monomial(I.quotient(m)):
                out.add(p, "ass1-minimal-over", _element_at(M, i, m))
    return out


def _ass_witness_search(M: FgModule, first_kind: bool) -> PrimeSet:
    """Sound but incomplete: annihilators of basis elements that are prime."""
    out = PrimeSet(complete=False)
    for i, I in enumerate(M.summands):
        mono = as_monomial_ideal(I)
        if mono is not None:
            sub = ass1(FgModule((mono,), M.domain)) if first_kind else ass0(FgModule((mono,), M.domain))
            for p in sub:
                out.add(p, sub.entries[p][0])
            continue
        if _is_declared_prime(I):
            out.add(I, "ass1-minimal-over" if first_kind else "ass0-witness",
                    M.basis_element(i))
    return out


def _is_declared_prime(I) -> bool:
    # principal ideals generated by a polynomial linear in some variable with
    # a constant coefficient are prime
    gens = I.basis().elements
    if len(gens) != 1:
        return False
    return linear_prime_certificate(gens[0]) is not None


def linear_prime_certificate(f: Polynomial):
    """A variable in which ``f`` has degree one with a constant coefficient.

    Then ``f = c*v + g`` with g free of v, so k[..]/(f) is a polynomial ring
    and (f) is prime.
    """
    for v in sorted(f.support):
        deg = [m[v] for m in f.terms]
        if max(deg) != 1:
            continue
        lin = [m for m in f.terms if m[v] == 1]
        if len(lin) == 1 and lin[0].degree == 1:
            return v
    return None


def ass(M) -> PrimeSet:
    """Associated primes via a primary decomposition of (0) in M."""
    _require_nonzero(M)
    out = PrimeSet()
    if isinstance(M, val.CutModule):
        for p in val.val_ass(M):
            out.add(p, "decomposition-prime")
        return out
    if isinstance(M, zm.CyclicSum):
        for p in zm.z_ass0(M):
            out.add(p, "decomposition-prime")
        return out
    _monomial_or_fail(M, "ass")
    for i, I in enumerate(M.summands):
        rep = primary_decompose_monomial(I)
        for c in rep.components:
            out.add(c.prime, "decomposition-prime", f"summand {i + 1}: {c.component}")
    return out


def is_coprimary(M):
    """The prime p if M is p-coprimary, else None."""
    if isinstance(M, FgModule) and M.is_zero():
        raise ZeroModule("the zero module is not coprimary")
    if isinstance(M, val.CutModule):
        return val.val_is_coprimary(M)
    if isinstance(M, zm.CyclicSum):
        ps = zm.z_ass0(M)
        return ps[0] if len(ps) == 1 else None
    _monomial_or_fail(M, "is_coprimary")
    ps = ass(M)
    return next(iter(ps)) if len(ps) == 1 else None


@dataclass
class MembershipCertificate:
    prime: object
    member: bool | None
    sound: bool
    witnesses: list = field(default_factory=list)  # per generator
    note: str = ""

    def __str__(self):
        verdict = {True: "member", False: "not a member", None: "inconclusive"}[self.member]
        level = "certified" if self.sound else "witness-level"
        return f"{_prime_str(self.prime)}: {verdict} ({level})"


def ass_membership_witness(p, M: FgModule, seed: int = 42, tries: int = 50) -> MembershipCertificate:
    """Localized zero-divisor criterion for ``p`` in Ass(M).

    For each generator g of p look for x in M, s outside p and k >= 1 with
    s * g^k * x = 0 while Ann(x) lies in p (so x survives localization at p).
    A single x serving every generator certifies membership; separate
    witnesses per generator are only reported as witness-level evidence.
    """
    mono_p = p if isinstance(p, MonomialIdeal) else as_monomial_ideal(p)
    if M.is_monomial() and mono_p is not None:
        for i, I in enumerate(M.summands):
            for m in monomial_cosets(I):
                if I.quotient(m) == mono_p:
                    x = _element_at(M, i, m)
                    wit = [{"generator": str(g), "s": "1", "power": 1, "x": str(x)}
                           for g in mono_p.min_gens]
                    return MembershipCertificate(mono_p, True, True, wit,
                                                 "common witness: Ann(x) = p")
        return MembershipCertificate(mono_p, False, True, [],
                                     "p is not an annihilator of a monomial coset")
    gens = (list(p.generators) if isinstance(p, PolyIdeal)
            else [Polynomial.monomial(g, 1, M.domain) for g in p.min_gens])
    pid = p if isinstance(p, PolyIdeal) else p.to_poly(M.domain)
    rng = random.Random(seed)
    candidates = [M.basis_element(i) for i in range(M.rank)]
    for _ in range(tries):
        comps = [Polynomial.const(rng.randint(0, 2), M.domain) for _ in range(M.rank)]
        candidates.append(M.element(*comps))
    survivors = [x for x in candidates if not x.is_zero()
                 and ideal_contains(pid, annihilator(x, M))]
    outside = [Polynomial.const(1, M.domain)]
    witnesses = []
    common = None
    for x in survivors:
        if all(scale(g, x, M).is_zero() for g in gens):
            common = x
            break
    if common is not None:
        wit = [{"generator": str(g), "s": "1", "power": 1, "x": str(common)} for g in gens]
        return MembershipCertificate(p, True, True, wit, "common witness")
    for g in gens:
        found = None
        for x in survivors:
            for s in outside:
                for k in (1, 2, 3):
                    if scale(s * g ** k, x, M).is_zero():
                        found = {"generator": str(g), "s": str(s), "power": k, "x": str(x)}
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            return MembershipCertificate(p, None, False, witnesses,
                                         f"no witness found for generator {g}")
        witnesses.append(found)
    return MembershipCertificate(p, True, False, witnesses,
                                 "separate witness per generator")


# --------------------------------------------------------------------------
# support and radicals


def supp_contains(p, M) -> bool:
    """Whether p lies in Supp(M): some summand ideal is inside p."""
    if isinstance(M, zm.CyclicSum):
        return zm.z_supp_contains(p, M)
    if isinstance(M, val.CutModule):
        return val.module_annihilator(M).key >= p.key if M.kind == "quotient" else \
            p == val.maximal_ideal(M.group)
    return any(ideal_contains(p, I) for I in M.summands)


def module_radical(N: Submodule, M: FgModule):
    """Elements nilpotent on M/N; for cyclic sums the intersection of the summand radicals."""
    Q = quotient_module(N, M)
    if Q.is_zero():
        return _unit(M.domain)
    _monomial_or_fail(Q, "module_radical")
    return intersect_all([radical_monomial(I) for I in Q.summands])


def essential_primes(N: Submodule, M: FgModule) -> PrimeSet:
    Q = quotient_module(N, M)
    if Q.is_zero():
        raise ModuleError("N must be a proper submodule")
    return ass(Q)


def localize_at_monomial_prime(M: FgModule, q: MonomialIdeal) -> FgModule:
    """Summands replaced by their components for the complement of q."""
    S = complement_of_monomial_prime(q)
    return FgModule(tuple(s_component(I, S) for I in M.summands), M.domain)
