"""Executable counterexample gallery.

Each scenario builds its objects, checks a list of claims and returns a
report. A claim's evidence is a list of *facts*: small JSON-friendly
assertions (``{"check": kind, "args": [...]}``) that :func:`check_fact`
re-evaluates against the core modules. A claim passes iff all its facts hold,
so :func:`recheck` can re-verify a stored report without redoing any search.

Infinite objects are truncated; claims that only certify the truncation or a
sample are labelled ``witness-level``, claims decided outright are ``exact``.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from . import modules as md
from . import valuation as val
from . import zmodules as zm
from .ideals import (MonomialIdeal, element_in, ideal_contains, parse_ideal,
                     same_ideal, saturate)
from .poly import (ONE, QQ, Monomial, Polynomial, RewriteSystem, make_var,
                   parse_polynomial, rewrite_normal_form)


class GalleryError(ValueError):
    pass


# --------------------------------------------------------------------------
# facts


def _ideal(s):
    return parse_ideal(s)


def _poly(s):
    return parse_polynomial(s)


def _group(s):
    return val.parse_group(s)


def _valmodule(g, kind, ideal):
    if kind == "fraction_mod_ring":
        return val.quot_mod_ring(g)
    return val.CutModule(g, "quotient", val.parse_cut(ideal, g))


def _schemes(spec):
    return tuple(tuple((name, e) for name, e in rule) for rule in spec)


def _prime_strs(ps) -> list:
    return sorted(md._prime_str(p) for p in ps)


def _f_ideal_eq(a, b):
    return same_ideal(_ideal(a), _ideal(b))


def _f_ideal_sub(small, big):
    return ideal_contains(_ideal(big), _ideal(small))


def _f_ideal_strict_sub(small, big):
    return _f_ideal_sub(small, big) and not _f_ideal_sub(big, small)


def _f_member(f, I):
    return element_in(_poly(f), _ideal(I))


def _f_not_member(f, I):
    return not _f_member(f, I)


def _f_monomial_prime(I):
    J = _ideal(I)
    return isinstance(J, MonomialIdeal) and J.is_prime()


def _f_linear_prime(f):
    return md.linear_prime_certificate(_poly(f)) is not None


def _f_annihilator(module, comps, I):
    M = md.parse_module(module)
    return same_ideal(md.annihilator(M.element(*comps), M), _ideal(I))


def _f_zero_divisor(r, module, expected):
    return md.is_zero_divisor(_poly(r), md.parse_module(module))[0] == expected


def _f_primes(fn, module, primes):
    M = md.parse_module(module)
    got = {"ass0": md.ass0, "ass1": md.ass1, "ass": md.ass}[fn](M)
    return _prime_strs(got) == sorted(primes)


def _f_not_in_primes(fn, module, prime):
    M = md.parse_module(module)
    got = {"ass0": md.ass0, "ass1": md.ass1, "ass": md.ass}[fn](M)
    return prime not in _prime_strs(got)


def _f_saturate(I, f, J):
    return same_ideal(saturate(_ideal(I), _poly(f)), _ideal(J))


def _f_supp(prime, module, expected):
    return md.supp_contains(_ideal(prime), md.parse_module(module)) == expected


def _f_rewrite(poly, schemes, expect_zero):
    nf = rewrite_normal_form(_poly(poly), RewriteSystem((), _schemes(schemes)))
    return nf.is_zero() == expect_zero


def _f_cut_member(group, value, cut, expected):
    g = _group(group)
    return val.cut_member(val.ValElement(g, _value(value)), val.parse_cut(cut, g)) == expected


def _value(v):
    if isinstance(v, list):
        return tuple(v)
    if v == "INF":
        return val.INF
    return Fraction(v)


def _f_cut_eq(group, a, b):
    g = _group(group)
    return val.parse_cut(a, g) == val.parse_cut(b, g)


def _f_cut_intersect(group, a, b, c):
    g = _group(group)
    return str(val.cut_ops(val.parse_cut(a, g), val.parse_cut(b, g), "intersect")) == c


def _f_cut_classify(group, cut, kind):
    g = _group(group)
    return val.cut_classify(val.parse_cut(cut, g)).kind == kind


def _f_valmod(group, kind, ideal, query, arg, expected):
    g = _group(group)
    M = _valmodule(g, kind, ideal)
    if query == "annihilator":
        got = str(val.val_annihilator(val.ValElement(g, _value(arg)), M))
    elif query == "coprimary":
        p = val.val_is_coprimary(M)
        got = None if p is None else str(p)
    elif query == "nilpotent":
        got = val.val_is_nilpotent_for(val.ValElement(g, _value(arg)), M)
    elif query == "zero_divisor":
        got = val.val_is_zero_divisor(val.ValElement(g, _value(arg)), M)
    elif query in ("ass0", "ass1", "ass"):
        got = sorted(str(p) for p in getattr(val, "val_" + query)(M))
        expected = sorted(expected)
    elif query == "ass0_witness":
        got = val.ass0_witness_exists(M, val.parse_cut(arg, g))
    elif query == "module_annihilator":
        got = str(val.module_annihilator(M))
    elif query == "is_zero_element":
        got = M.is_zero_element(val.ValElement(g, _value(arg)))
    else:
        raise GalleryError(f"unknown valuation query {query!r}")
    return got == expected


def _f_cut_prime(group, cut, expected):
    g = _group(group)
    return val.cut_is_prime(val.parse_cut(cut, g)) == expected


def _f_int(op, *args):
    if op == "divides":
        a, b, expected = args
        return (b % a == 0) == expected
    if op == "pow_nonzero_mod":
        n, p, k = args
        return pow(n, k, p) != 0
    if op == "prime":
        return zm.is_prime(args[0])
    if op == "kills_support":
        coeffs, primes = args
        ann = zm.PrimeTorsionSum().annihilator(primes)
        return ann != 0 and all((ann * c) % p == 0 for c, p in zip(coeffs, primes))
    raise GalleryError(f"unknown integer check {op!r}")


def _f_qz(op, r, q, expected):
    Q = zm.RationalsModIntegers()
    if op == "act_zero":
        return (Q.act(r, Fraction(q)) == 0) == expected
    raise GalleryError(f"unknown Q/Z check {op!r}")


FACTS: dict[str, Callable] = {
    "ideal_eq": _f_ideal_eq,
    "ideal_sub": _f_ideal_sub,
    "ideal_strict_sub": _f_ideal_strict_sub,
    "member": _f_member,
    "not_member": _f_not_member,
    "monomial_prime": _f_monomial_prime,
    "linear_prime": _f_linear_prime,
    "annihilator": _f_annihilator,
    "zero_divisor": _f_zero_divisor,
    "primes": _f_primes,
    "not_in_primes": _f_not_in_primes,
    "saturate": _f_saturate,
    "supp": _f_supp,
    "rewrite": _f_rewrite,
    "cut_member": _f_cut_member,
    "cut_eq": _f_cut_eq,
    "cut_intersect": _f_cut_intersect,
    "cut_classify": _f_cut_classify,
    "cut_prime": _f_cut_prime,
    "valmod": _f_valmod,
    "int": _f_int,
    "qz": _f_qz,
}


def fact(check: str, *args) -> dict:
    return {"check": check, "args": list(args)}


def check_fact(f: dict) -> bool:
    fn = FACTS.get(f["check"])
    if fn is None:
        raise GalleryError(f"unknown fact kind {f['check']!r}")
    return bool(fn(*f["args"]))


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class ClaimSpec:
    name: str
    anchor: str
    level: str  # "exact" or "witness-level"


@dataclass
class ClaimResult:
    name: str
    anchor: str
    level: str
    verdict: str
    witness: dict = field(default_factory=dict)


@dataclass
class ExampleReport:
    id: str
    params: dict
    claims: list
    elapsed_ms: float

    @property
    def verdict(self) -> str:
        return "pass" if all(c.verdict == "pass" for c in self.claims) else "fail"

    def to_dict(self) -> dict:
        d = {"id": self.id, "params": self.params, "verdict": self.verdict,
             "claims": [asdict(c) for c in self.claims],
             "elapsed_ms": round(self.elapsed_ms, 3)}
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


@dataclass(frozen=True)
class ExampleScenario:
    id: str
    title: str
    params: dict
    claims: tuple
    runner: Callable = field(repr=False, compare=False)
    notes: str = ""


def _settle(spec: ClaimSpec, facts: list, detail=None) -> ClaimResult:
    failed = [f for f in facts if not check_fact(f)]
    witness = {"facts": facts}
    if detail is not None:
        witness["detail"] = detail
    if failed:
        witness["failed"] = failed
    ok = bool(facts) and not failed
    return ClaimResult(spec.name, spec.anchor, spec.level, "pass" if ok else "fail", witness)


def _rand_poly(rng: random.Random, names: list, terms: int, maxdeg: int,
               const: bool | None = None) -> Polynomial:
    """Random polynomial; ``const`` forces a nonzero (True) or zero (False) constant."""
    out = {}
    for _ in range(terms):
        d = rng.randint(1, maxdeg)
        m = Monomial({})
        for _ in range(d):
            m = m * Monomial({rng.choice(names): 1})
        out[m] = out.get(m, 0) + rng.choice([1, 2, 3, -1, -2])
    if const is True:
        out[ONE] = rng.choice([1, 2, -1, 3])
    elif const is False:
        out.pop(ONE, None)
    elif rng.random() < 0.5:
        out[ONE] = rng.randint(-2, 2)
    return Polynomial(out)


def _xs(n: int) -> list:
    return [make_var("x", i) for i in range(1, n + 1)]


def _prime_ideal_str(names) -> str:
    return "(" + ", ".join(names) + ")"


# --------------------------------------------------------------------------
# scenarios

RANK2 = (
    ClaimSpec("indecomposable", r"$R\cdot\pi_1=\frak a\cap\frak b$", "exact"),
    ClaimSpec("zero-divisor", r"(1,-1)=\nu(\pi_1/\pi_2)", "exact"),
    ClaimSpec("not-nilpotent", r"\nu(\pi_2^i)=(0,i)<(1,0)", "exact"),
)


def _run_rank2(p: dict) -> list:
    G, gs = val.Zlex(2), "Zlex(2)"
    I = val.CutIdeal.closed(G, (1, 0))
    cut = str(I)
    ok, cert = val.cut_indecomposable(I, samples=p["samples"], seed=p["seed"])
    facts = [fact("cut_intersect", gs, str(a), str(b), str(m)) for a, b, m in cert.pairs]
    facts += [fact("cut_eq", gs, str(val.cut_ops(a, b, "intersect")), str(a))
              for a, b, m in cert.pairs if m == a]
    # the largest value below (1,0) is (1,-1): ideals strictly above R*pi1 share it
    facts.append(fact("cut_member", gs, [1, -1], "cut>((1,-1))", False))
    facts.append(fact("cut_member", gs, [1, 0], "cut>((1,-1))", True))
    facts.append(fact("cut_classify", gs, cut, "neither"))
    out = [_settle(RANK2[0], facts, {"sampled_pairs": len(cert.pairs), "all_chain": ok})]
    z = [1, -1]
    facts = [
        fact("cut_member", gs, z, cut, False),
        fact("cut_member", gs, [1, 0], cut, True),  # pi2 * z has value (1,0)
        fact("valmod", gs, "quotient", cut, "zero_divisor", [0, 1], True),
        fact("valmod", gs, "quotient", cut, "annihilator", z, "cut>=((0,1))"),
    ]
    out.append(_settle(RANK2[1], facts, {"x": "value (1,-1)", "pi2*x": "value (1,0)"}))
    facts = [fact("cut_member", gs, [0, i], cut, False) for i in range(1, p["bound"] + 1)]
    facts.append(fact("valmod", gs, "quotient", cut, "nilpotent", [0, 1], False))
    facts.append(fact("valmod", gs, "quotient", cut, "coprimary", None, None))
    out.append(_settle(RANK2[2], facts, {"powers_checked": p["bound"]}))
    return out


DIRECTSUM = (
    ClaimSpec("ann-of-basis", r"$\frak p_i=\operatorname{Ann}_R(e_i)$", "exact"),
    ClaimSpec("ann-below-pn", r"$\operatorname{Ann}_R(y)\subseteq\frak p_n\subsetneq\frak p$",
              "witness-level"),
    ClaimSpec("p-not-in-ass1", r"But $\frak p\notin\operatorname{Ass}_1(M)$", "witness-level"),
    ClaimSpec("p-in-ass-union", r"$\frak p=\bigcup\limits_{i=1}^\infty\frak p_i$", "witness-level"),
)


def _run_directsum(p: dict) -> list:
    n, rng = p["n"], random.Random(p["seed"])
    xs = [f"x_{i}" for i in range(1, n + 2)]
    primes = [_prime_ideal_str(xs[:i]) for i in range(1, n + 1)]
    ptrunc = _prime_ideal_str(xs)
    module = " (+) ".join(f"R/{q}" for q in primes)
    M = md.parse_module(module)
    out = []
    facts = []
    for i, q in enumerate(primes):
        comps = ["0"] * n
        comps[i] = "1"
        facts.append(fact("annihilator", module, comps, q))
        facts.append(fact("monomial_prime", q))
    facts.append(fact("primes", "ass0", module, primes))
    out.append(_settle(DIRECTSUM[0], facts))

    facts, detail = [], []
    names = [make_var("x", i) for i in range(1, n + 2)]
    for _ in range(p["samples"]):
        comps = [_rand_poly(rng, names, rng.randint(1, 3), 2) for _ in range(n)]
        y = M.element(*comps)
        if y.is_zero():
            continue
        i0 = min(i for i, c in enumerate(y.components) if not c.is_zero())
        ann = md.annihilator(y, M)
        cs = [str(c) for c in y.components]
        facts.append(fact("annihilator", module, cs, primes[i0]))
        facts.append(fact("ideal_sub", primes[i0], primes[-1]))
        detail.append({"y": cs, "ann": str(ann), "i0": i0 + 1})
    facts.append(fact("ideal_strict_sub", primes[-1], ptrunc))
    out.append(_settle(DIRECTSUM[1], facts, {"samples": detail, "p_truncated": ptrunc}))

    facts = [fact("primes", "ass1", module, primes),
             fact("not_in_primes", "ass1", module, ptrunc),
             fact("primes", "ass", module, primes)]
    # every sampled annihilator is some p_i whose only minimal prime is itself
    facts += [fact("ideal_strict_sub", d["ann"], ptrunc) for d in detail]
    out.append(_settle(DIRECTSUM[2], facts, {"truncation": n}))

    facts, detail = [], []
    for _ in range(p["samples"]):
        f = _rand_poly(rng, names[:n], rng.randint(1, 3), 3, const=False)
        if f.is_zero():
            continue
        k = max(idx for (_, idx) in f.support)
        facts.append(fact("member", str(f), primes[k - 1]))
        detail.append({"f": str(f), "in": primes[k - 1]})
    facts.append(fact("primes", "ass0", module, primes))
    out.append(_settle(DIRECTSUM[3], facts, {"elements": detail[:10]}))
    return out


CYCLIC = (
    ClaimSpec("basis-A", r"\epsilon_i=0 \text{ if }\nu_i>0", "witness-level"),
    ClaimSpec("no-zero-divisor-outside-p", r"$T\cdot Z\in\frak a'$", "witness-level"),
    ClaimSpec("p-kills-y-product", r"$p\cdot y_1\cdots y_n=0$", "witness-level"),
    ClaimSpec("x-not-nilpotent", r"$x_m^\lambda\cdot z\ne0$", "witness-level"),
)

_CYCLIC_SCHEMES = [[["x", 1], ["y", 1]], [["y", 2]]]


def _run_cyclic(p: dict) -> list:
    n, deg, rng = p["n"], p["degree"], random.Random(p["seed"])
    rs = RewriteSystem((), _schemes(_CYCLIC_SCHEMES))
    xs = [make_var("x", i) for i in range(1, n + 1)]
    ys = [make_var("y", i) for i in range(1, n + 1)]
    allv = xs + ys
    out = []
    # monomials surviving the rewrite rules are exactly the set A
    facts, survivors, total = [], 0, 0
    rels = ", ".join(f"x_{i}*y_{i}, y_{i}^2" for i in range(1, n + 1))
    for d in range(deg + 1):
        for combo in itertools.combinations_with_replacement(allv, d):
            m = Monomial({})
            for v in combo:
                m = m * Monomial({v: 1})
            in_a = all(m[("y", i)] <= 1 and (m[("y", i)] == 0 or m[("x", i)] == 0)
                       for i in range(1, n + 1))
            total += 1
            survivors += in_a
            facts.append(fact("rewrite", str(m) if not m.is_one() else "1", _CYCLIC_SCHEMES,
                              not in_a))
            if d <= 2:
                facts.append(fact("not_member" if in_a else "member",
                                  str(m) if not m.is_one() else "1", f"({rels})"))
    out.append(_settle(CYCLIC[0], facts, {"monomials": total, "basis_elements": survivors,
                                          "truncation": n}))

    facts, detail = [], []
    small = allv[: 2 * min(n, 2)]
    a_small = "(" + ", ".join(f"x_{i}*y_{i}, y_{i}^2" for i in range(1, min(n, 2) + 1)) + ")"
    for _ in range(p["samples"]):
        t = _rand_poly(rng, small, rng.randint(1, 2), 2, const=True)
        mod = f"R/{a_small}"
        facts.append(fact("zero_divisor", str(t), mod, False))
        detail.append(str(t))
    out.append(_settle(CYCLIC[1], facts, {"units_mod_p": detail[:10], "ring": a_small}))

    yprod = "*".join(f"y_{i}" for i in range(1, n + 1))
    facts = [fact("rewrite", yprod, _CYCLIC_SCHEMES, False)]
    for _ in range(p["samples"]):
        f = _rand_poly(rng, allv, rng.randint(1, 4), 3, const=False)
        if f.is_zero():
            continue
        facts.append(fact("rewrite", f"({f})*{yprod}", _CYCLIC_SCHEMES, True))
    out.append(_settle(CYCLIC[2], facts, {"y_product": yprod}))

    facts = []
    for _ in range(p["samples"]):
        z = rewrite_normal_form(_rand_poly(rng, allv, rng.randint(1, 4), 3), rs)
        if z.is_zero():
            continue
        m = n + 1 + rng.randint(0, 2)
        lam = rng.randint(1, p["bound"])
        facts.append(fact("rewrite", f"x_{m}^{lam}*({z})", _CYCLIC_SCHEMES, False))
    out.append(_settle(CYCLIC[3], facts))
    return out


VALQ = (
    ClaimSpec("zero-is-P-primary", r"$p^n\in R\cdot a\subseteq\frak a$", "exact"),
    ClaimSpec("no-annihilator-witness", r"There is no $x\in M$ with $\frak P=\operatorname{Ann}_R(x)$",
              "exact"),
    ClaimSpec("ass0-empty", r"$\operatorname{Ass}_0(M)=\emptyset$", "exact"),
    ClaimSpec("ass-equals-ass1", r"$\operatorname{Ass}(M)=\{\frak P\}$", "exact"),
)


def _run_valq(p: dict) -> list:
    gs, cut, P = "Q", "cut>=(1)", "cut>(0)"
    rng = random.Random(p["seed"])
    out = []
    facts = [fact("cut_classify", gs, cut, "primary"),
             fact("valmod", gs, "quotient", cut, "coprimary", None, P),
             fact("cut_prime", gs, P, True)]
    for _ in range(p["samples"]):
        v = str(Fraction(rng.randint(1, 40), rng.randint(1, 40)))
        facts.append(fact("valmod", gs, "quotient", cut, "nilpotent", v, True))
    out.append(_settle(VALQ[0], facts))
    facts = [fact("valmod", gs, "quotient", cut, "ass0_witness", P, False)]
    for _ in range(p["samples"]):
        v = Fraction(rng.randint(0, 29), 30)
        ann = str(val.val_annihilator(val.ValElement(val.QGROUP, v),
                                      val.CutModule(val.QGROUP, "quotient", val.parse_cut(cut, val.QGROUP))))
        facts.append(fact("valmod", gs, "quotient", cut, "annihilator", str(v), ann))
        facts.append(fact("cut_prime", gs, ann, False))
    out.append(_settle(VALQ[1], facts, {"reason": "annihilators are closed cuts, P is open"}))
    out.append(_settle(VALQ[2], [fact("valmod", gs, "quotient", cut, "ass0", None, [])]))
    out.append(_settle(VALQ[3], [fact("valmod", gs, "quotient", cut, "ass", None, [P]),
                                 fact("valmod", gs, "quotient", cut, "ass1", None, [P])]))
    return out


LOCAL = (
    ClaimSpec("ann-of-basis", r"$\operatorname{Ann}_R(e_p)=R\cdot p$", "exact"),
    ClaimSpec("ann-inside-some-prime", r"$\operatorname{Ann}_R(\xi)\subseteq R\cdot p_0$", "exact"),
    ClaimSpec("m-membership", r"$z\cdot e_p=0$", "witness-level"),
    ClaimSpec("m-not-in-ass1", r"$\frak m:=(X,Y)\in\operatorname{Ass}(M)\setminus\operatorname{Ass}_1(M)$",
              "witness-level"),
)

LOCAL_NOTE = ("The local ring at (x, y) is modelled by the polynomial ring: every check "
              "here is a divisibility or annihilator computation that localization at "
              "(x, y) does not change. Ass1 is only checked on the declared prime list.")


def _local_module(primes) -> str:
    return " (+) ".join(f"R/({q})" for q in primes)


def _run_local(p: dict) -> list:
    primes, rng = list(p["primes"]), random.Random(p["seed"])
    module = _local_module(primes)
    M = md.parse_module(module)
    out = []
    facts = []
    for i, q in enumerate(primes):
        comps = ["0"] * len(primes)
        comps[i] = "1"
        facts.append(fact("annihilator", module, comps, f"({q})"))
        facts.append(fact("linear_prime", q))
    out.append(_settle(LOCAL[0], facts))

    facts, detail = [], []
    names = sorted({v for q in primes for v in parse_polynomial(q).support})
    for _ in range(p["samples"]):
        comps = [_rand_poly(rng, names, rng.randint(1, 2), 2) for _ in primes]
        y = M.element(*comps)
        if y.is_zero():
            continue
        i0 = next(i for i, c in enumerate(y.components) if not c.is_zero())
        ann = md.annihilator(y, M)
        facts.append(fact("annihilator", module, [str(c) for c in y.components], str(ann)))
        facts.append(fact("ideal_sub", str(ann), f"({primes[i0]})"))
        detail.append({"xi": [str(c) for c in y.components], "ann": str(ann), "p0": primes[i0]})
    out.append(_settle(LOCAL[1], facts, {"samples": detail[:10]}))

    cert = md.ass_membership_witness(parse_ideal("(x, y)"), M, seed=p["seed"])
    facts = []
    for i, q in enumerate(primes):
        # z = h*q lies in m and kills e_q
        h = _rand_poly(rng, names, 1, 1, const=True)
        z = h * parse_polynomial(q)
        facts.append(fact("member", str(z), "(x, y)"))
        facts.append(fact("member", str(z), f"({q})"))
    for w in cert.witnesses:
        facts.append(fact("member", w["generator"], "(x, y)"))
    facts.append(fact("linear_prime", "x"))
    out.append(_settle(LOCAL[2], facts, {"certificate": str(cert), "sound": cert.sound,
                                         "per_generator": cert.witnesses, "note": LOCAL_NOTE}))

    facts = [fact("primes", "ass1", module, [str(parse_ideal(f"({q})")) for q in primes]),
             fact("not_in_primes", "ass1", module, "(x, y)")]
    facts += [fact("ideal_strict_sub", f"({q})", "(x, y)") for q in primes]
    out.append(_settle(LOCAL[3], facts, {"declared_primes": primes, "note": LOCAL_NOTE}))
    return out


NOTEXACT = (
    ClaimSpec("m-in-ass-M", r"$\frak m\in\operatorname{Ass}(M)$", "witness-level"),
    ClaimSpec("ass-N", r"$\operatorname{Ass}(M)=\{R\cdot X\}\not\ni\frak m$", "exact"),
    ClaimSpec("x-injective-on-L", r"$X$ is not a zero divisor for", "exact"),
)


def _run_notexact(p: dict) -> list:
    primes = list(p["primes"])
    module = _local_module(primes)
    M = md.parse_module(module)
    N = "R/(x)"
    rest = [q for q in primes if q != "x"]
    L = _local_module(rest)
    out = []
    cert = md.ass_membership_witness(parse_ideal("(x, y)"), M, seed=p["seed"])
    facts = []
    for i, w in enumerate(cert.witnesses):
        facts.append(fact("member", w["generator"], "(x, y)"))
    for i, q in enumerate(primes):
        comps = ["0"] * len(primes)
        comps[i] = "1"
        facts.append(fact("annihilator", module, comps, f"({q})"))
    facts.append(fact("zero_divisor", "x", module, True))
    facts.append(fact("zero_divisor", "y", module, True))
    out.append(_settle(NOTEXACT[0], facts, {"certificate": str(cert),
                                            "per_generator": cert.witnesses, "note": LOCAL_NOTE}))
    out.append(_settle(NOTEXACT[1], [fact("primes", "ass", N, ["(x)"]),
                                     fact("not_in_primes", "ass", N, "(x, y)")]))
    facts = [fact("zero_divisor", "x", L, False)]
    facts += [fact("ideal_eq", f"({q})", str(md.annihilator(
        md.parse_module(f"R/({q})").element("x"), md.parse_module(f"R/({q})"))))
        for q in rest]
    out.append(_settle(NOTEXACT[2], facts, {"L": L}))
    return out


RADZERO = (
    ClaimSpec("zero-not-in-supp", r"$(0)\notin\operatorname{Supp}(M)$, because $M$ is a torsion module",
              "witness-level"),
    ClaimSpec("nonzero-primes-in-supp",
              r"$\operatorname{Supp}(M)=\{(p)\mid 0\ne p\text{ prime element in }\Bbb Z\}$",
              "witness-level"),
    ClaimSpec("radical-zero", r"$p\nmid n^\nu$", "witness-level"),
)


def _run_radzero(p: dict) -> list:
    T = zm.PrimeTorsionSum(p["bound"])
    ps, rng = T.primes, random.Random(p["seed"])
    out = []
    facts = []
    for _ in range(p["samples"]):
        support = sorted(rng.sample(ps, rng.randint(1, min(5, len(ps)))))
        coeffs = [rng.randint(1, q - 1) for q in support]
        facts.append(fact("int", "kills_support", coeffs, support))
    out.append(_settle(RADZERO[0], facts))
    facts = []
    for q in ps:
        facts.append(fact("int", "prime", q))
        facts.append(fact("int", "divides", q, q, True))
    out.append(_settle(RADZERO[1], facts, {"primes": len(ps)}))
    facts, detail = [], []
    for _ in range(p["samples"]):
        n = rng.choice([-1, 1]) * rng.randint(1, 10 ** 6)
        q = T.radical_witness(n)
        if q is None:
            facts.append(fact("int", "prime", 1))  # forces failure: no witness at this truncation
            continue
        facts.append(fact("int", "divides", q, n, False))
        for k in range(1, p["power"] + 1):
            facts.append(fact("int", "pow_nonzero_mod", n, q, k))
        detail.append({"n": n, "p": q})
    out.append(_settle(RADZERO[2], facts, {"samples": detail[:10]}))
    return out


QZ = (
    ClaimSpec("ann-is-zero", r"$\operatorname{Ann}_R(M)=(0)$", "witness-level"),
    ClaimSpec("torsion", r"$M$ is a torsion module", "witness-level"),
    ClaimSpec("zero-not-in-supp", r"$R_{(0)}=\Bbb Q$ is a field and $M$ is a torsion module",
              "witness-level"),
)


def _run_qz(p: dict) -> list:
    Q, rng = zm.RationalsModIntegers(), random.Random(p["seed"])
    out = []
    facts, detail = [], []
    for _ in range(p["samples"]):
        n = rng.choice([-1, 1]) * rng.randint(1, 10 ** 4)
        x = Q.not_killed_by(n)
        facts.append(fact("qz", "act_zero", n, str(x), False))
        detail.append({"n": n, "x": str(x)})
    out.append(_settle(QZ[0], facts, {"samples": detail[:10]}))
    facts = []
    elems = []
    for _ in range(p["samples"]):
        q = Q.element(Fraction(rng.randint(-500, 500), rng.randint(1, 500)))
        b = Q.annihilator(q)
        facts.append(fact("qz", "act_zero", b, str(q), True))
        elems.append((str(q), b))
    out.append(_settle(QZ[1], facts, {"elements": elems[:10]}))
    # every element is killed by a nonzero integer, a unit in the fraction field
    facts = [fact("qz", "act_zero", b, q, True) for q, b in elems]
    facts += [fact("int", "divides", 1, b, True) for _, b in elems if b != 0]
    out.append(_settle(QZ[2], facts))
    return out


NOMIN = (
    ClaimSpec("descending-chain-in-supp", r"\frak p_{i_0}\supsetneq\frak p_{i_0+1}", "witness-level"),
    ClaimSpec("supp-of-summands", r"$\operatorname{Supp}(M_i)=\{\frak p\mid\frak p\supseteq\frak p_i\}$",
              "exact"),
)


def _run_nomin(p: dict) -> list:
    n = p["n"]
    xs = [f"x_{i}" for i in range(1, n + 2)]
    primes = [_prime_ideal_str(xs[i:]) for i in range(n + 1)]
    module = " (+) ".join(f"R/{q}" for q in primes)
    out = []
    facts = []
    for a, b in zip(primes, primes[1:]):
        facts.append(fact("ideal_strict_sub", b, a))
    for q in primes:
        facts.append(fact("supp", q, module, True))
        facts.append(fact("monomial_prime", q))
    out.append(_settle(NOMIN[0], facts, {"chain": primes, "truncation": n}))
    facts = []
    for q in primes:
        summand = f"R/{q}"
        qi = parse_ideal(q)
        for r in range(len(xs) + 1):
            for sub in itertools.combinations(xs, r):
                cand = _prime_ideal_str(sub) if sub else "(0)"
                expected = ideal_contains(parse_ideal(cand), qi) if sub else qi.is_zero()
                facts.append(fact("supp", cand, summand, expected))
    out.append(_settle(NOMIN[1], facts))
    return out


QUOTR = (
    ClaimSpec("ann-is-zero-prime", r"$\operatorname{Ann}_R(M)=(0)$, a prime ideal of $R$", "exact"),
    ClaimSpec("coprimary", r"$M$ is $\frak p$-coprimary", "exact"),
    ClaimSpec("zero-essential-for-ann", r"$(0)$ is essential for", "exact"),
    ClaimSpec("zero-not-associated", r"$\operatorname{Ass}(M)=\{\frak p\}\not\ni(0)$", "exact"),
)


def _run_quotr(p: dict) -> list:
    gs, P = "Zlex(1)", "cut>=((1))"
    kind = "fraction_mod_ring"
    out = []
    facts = [fact("valmod", gs, kind, None, "module_annihilator", None, "(0)"),
             fact("cut_prime", gs, "0", True)]
    for n in range(1, p["samples"] + 1):
        # pi^n does not kill the class of value -(n+1)
        facts.append(fact("valmod", gs, kind, None, "annihilator", [-n], f"cut>=(({n}))"))
        facts.append(fact("cut_member", gs, [n], f"cut>=(({n + 1}))", False))
    out.append(_settle(QUOTR[0], facts))
    facts = [fact("valmod", gs, kind, None, "coprimary", None, P),
             fact("valmod", gs, kind, None, "nilpotent", [1], True),
             fact("valmod", gs, kind, None, "zero_divisor", [0], False)]
    out.append(_settle(QUOTR[1], facts))
    # essential primes of Ann(M) = (0) in R are Ass(R/(0)) = {(0)}
    facts = [fact("valmod", gs, "quotient", "0", "ass", None, ["(0)"])]
    out.append(_settle(QUOTR[2], facts))
    facts = [fact("valmod", gs, kind, None, "ass", None, [P]),
             fact("valmod", gs, kind, None, "ass0", None, [P])]
    out.append(_settle(QUOTR[3], facts))
    return out


SCOMP = (
    ClaimSpec("S(N)=N", r"Then $S(N)=N$", "exact"),
    ClaimSpec("S(Ñ)=Ñ", r"$S(\widetilde N)=\widetilde N$", "exact"),
    ClaimSpec("S(N+Ñ)=R", r"$S(N+\widetilde N)=R\nsubseteq R\cdot X+R\cdot Y$", "exact"),
)


def _run_scomp(p: dict) -> list:
    f = "x + y"
    return [
        _settle(SCOMP[0], [fact("saturate", "(x)", f, "(x)")]),
        _settle(SCOMP[1], [fact("saturate", "(y)", f, "(y)")]),
        _settle(SCOMP[2], [fact("saturate", "(x, y)", f, "(1)"),
                           fact("not_member", "1", "(x, y)")]),
    ]


_LOCAL_PRIMES = ["x", "y", "x + y", "x + y^2"]

CATALOG = (
    ExampleScenario("rank2-valuation", "(0) indecomposable but not coprimary, rank-two valuation ring",
                    {"bound": 64, "samples": 100, "seed": 42}, RANK2, _run_rank2),
    ExampleScenario("ass-vs-ass1-directsum", "Ass strictly larger than Ass1, direct sum of R/p_i",
                    {"n": 4, "samples": 100, "seed": 42}, DIRECTSUM, _run_directsum),
    ExampleScenario("ass-vs-ass1-cyclic", "Ass strictly larger than Ass1, cyclic module",
                    {"n": 4, "degree": 3, "samples": 40, "bound": 8, "seed": 42}, CYCLIC, _run_cyclic),
    ExampleScenario("valuation-Q", "Ass = Ass1 with Ass0 empty, valuation ring with value group Q",
                    {"samples": 50, "seed": 42}, VALQ, _run_valq),
    ExampleScenario("local-noetherian", "noetherian local ring with Ass strictly larger than Ass1",
                    {"primes": _LOCAL_PRIMES, "samples": 30, "seed": 42}, LOCAL, _run_local,
                    LOCAL_NOTE),
    ExampleScenario("ass-not-exact", "Ass of a direct sum exceeds the union of the parts",
                    {"primes": _LOCAL_PRIMES, "seed": 42}, NOTEXACT, _run_notexact, LOCAL_NOTE),
    ExampleScenario("rad-zero-supp", "prime containing the radical but outside the support",
                    {"bound": 97, "samples": 100, "power": 8, "seed": 42}, RADZERO, _run_radzero),
    ExampleScenario("QmodZ", "prime containing the annihilator but outside the support",
                    {"samples": 100, "seed": 42}, QZ, _run_qz),
    ExampleScenario("no-min-supp", "support without minimal elements",
                    {"n": 5}, NOMIN, _run_nomin),
    ExampleScenario("quotR-module", "essential prime of the annihilator that is not associated",
                    {"samples": 6, "seed": 42}, QUOTR, _run_quotr),
    ExampleScenario("scomp-not-additive", "S-components are not additive",
                    {}, SCOMP, _run_scomp),
)

_BY_ID = {s.id: s for s in CATALOG}


def list_examples() -> list:
    return list(CATALOG)


def get_example(example_id: str) -> ExampleScenario:
    try:
        return _BY_ID[example_id]
    except KeyError:
        raise GalleryError(f"unknown example {example_id!r}") from None


def run_example(example_id: str, **overrides) -> ExampleReport:
    sc = get_example(example_id)
    unknown = set(overrides) - set(sc.params)
    if unknown:
        raise GalleryError(f"unknown parameters for {example_id}: {sorted(unknown)}")
    params = dict(sc.params)
    params.update(overrides)
    t0 = time.perf_counter()
    claims = sc.runner(params)
    elapsed = (time.perf_counter() - t0) * 1000
    return ExampleReport(sc.id, params, claims, elapsed)


def recheck(report) -> bool:
    """Re-evaluate every stored fact of a report (dict or ExampleReport)."""
    d = report.to_dict() if isinstance(report, ExampleReport) else report
    for c in d["claims"]:
        facts = c["witness"].get("facts", [])
        ok = bool(facts) and all(check_fact(f) for f in facts)
        if ok != (c["verdict"] == "pass"):
            return False
    return True
