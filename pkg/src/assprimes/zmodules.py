"""Modules over the integers: finite sums of cyclic groups, a truncated sum of
prime-order groups, and Q/Z.  Ideals of Z are written as their nonnegative
generator, so ``0`` is the zero ideal and ``p`` is the prime ideal (p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce


class ZModuleError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(bound: int) -> list:
    return [p for p in range(2, bound + 1) if is_prime(p)]


def prime_factors(n: int) -> list:
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def squarefree_part(n: int) -> int:
    return math.prod(prime_factors(n)) if n else 0


def _lcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class CyclicSum:
    """``Z/(n_1) + ... + Z/(n_k)``; ``n_i = 0`` is a free summand, ``1`` is dropped."""

    moduli: tuple

    def __post_init__(self):
        mods = tuple(abs(int(n)) for n in self.moduli if abs(int(n)) != 1)
        object.__setattr__(self, "moduli", mods)

    def is_zero(self) -> bool:
        return not self.moduli

    def element(self, *xs) -> tuple:
        if len(xs) != len(self.moduli):
            raise ZModuleError("wrong number of components")
        return tuple(x % n if n else x for x, n in zip(xs, self.moduli))

    def cosets(self):
        """All elements of a finite module."""
        if any(n == 0 for n in self.moduli):
            raise ZModuleError("module is infinite")
        out = [()]
        for n in self.moduli:
            out = [e + (r,) for e in out for r in range(n)]
        return out

    def __str__(self):
        if not self.moduli:
            return "0"
        return " (+) ".join("Z" if n == 0 else f"Z/({n})" for n in self.moduli)


def z_annihilator(x: tuple, M: CyclicSum) -> int:
    ann = 1
    for xi, n in zip(x, M.moduli):
        if n == 0:
            if xi:
                return 0
            continue
        ann = _lcm(ann, n // math.gcd(xi, n))
    return ann


def z_module_annihilator(M: CyclicSum) -> int:
    return reduce(_lcm, M.moduli, 1)


def z_ass0(M: CyclicSum) -> list:
    """Associated primes; Z is noetherian so Ass0 = Ass1 = Ass."""
    out = set()
    for n in M.moduli:
        if n == 0:
            out.add(0)
        else:
            out.update(prime_factors(n))
    return sorted(out)


def z_ass0_scan(M: CyclicSum) -> list:
    """Brute force: every annihilator of a nonzero coset that is prime."""
    out = set()
    for x in M.cosets():
        if any(x):
            a = z_annihilator(x, M)
            if is_prime(a):
                out.add(a)
    return sorted(out)


def z_is_zero_divisor(r: int, M: CyclicSum) -> bool:
    if M.is_zero():
        return False
    if r == 0:
        return True
    return any(n != 0 and math.gcd(r, n) > 1 for n in M.moduli)


def z_is_nilpotent_for(r: int, M: CyclicSum) -> bool:
    return all(n != 0 and r % squarefree_part(n) == 0 or n == 0 and r == 0
               for n in M.moduli)


def z_supp_contains(p: int, M: CyclicSum) -> bool:
    """``(p)`` contains ``(n_i)`` for some summand."""
    return any((n == 0) if p == 0 else (n % p == 0) for n in M.moduli)


def z_radical(M: CyclicSum) -> int:
    return reduce(_lcm, (squarefree_part(n) for n in M.moduli), 1)


# --------------------------------------------------------------------------
# infinite torsion modules, truncated for computation


@dataclass(frozen=True)
class PrimeTorsionSum:
    """Sum of ``Z/(p)`` over the primes up to ``bound`` (truncating all primes)."""

    bound: int = 97

    @property
    def primes(self) -> list:
        return primes_up_to(self.bound)

    def annihilator(self, support) -> int:
        """An element supported on the given primes is killed by their product."""
        return math.prod(support)

    def radical_witness(self, n: int):
        """A prime p with p not dividing n, so n^k * e_p != 0 for every k."""
        if n == 0:
            return None
        for p in self.primes:
            if n % p:
                return p
        return None

    def power_nonzero(self, n: int, p: int, k: int) -> bool:
        return pow(n, k, p) != 0


@dataclass(frozen=True)
class RationalsModIntegers:
    """Q/Z with elements stored as fractions in [0, 1)."""

    def element(self, q) -> Fraction:
        q = Fraction(q)
        return q - math.floor(q)

    def annihilator(self, q) -> int:
        return self.element(q).denominator if self.element(q) else 1

    def act(self, r: int, q) -> Fraction:
        return self.element(r * Fraction(q))

    def is_torsion(self, q) -> bool:
        return self.act(self.annihilator(q), q) == 0

    def not_killed_by(self, n: int) -> Fraction:
        """An element that ``n`` does not annihilate."""
        if n == 0:
            raise ZModuleError("0 kills everything")
        return self.element(Fraction(1, 2 * abs(n)))
