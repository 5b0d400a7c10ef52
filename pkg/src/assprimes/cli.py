"""Script front end.

Statements end with ``;``. Declarations::

    ring R = Q[x,y];            ring S = Fp(7)[x,y];
    valring V = Zlex(2);        valring W = Q;
    ideal I = (x^2, x*y);
    module M = R/(x^2, x*y) (+) R/(y);
    module A = V/cut>=((1,0));  module D = Quot(V)/V;

Commands: decompose, normalize, radical, minprimes, quotient, saturate,
intersect, scomp, ass, ass0, ass1, supp, modradical, colon, gallery, config.

Exit codes: 0 ok, 2 parse or usage error, 3 computation error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import asdict, dataclass, field, fields

from . import gallery, groebner
from . import modules as md
from . import valuation as val
from .groebner import BudgetExceeded, PolyIdeal
from .ideals import (IdealError, MonomialIdeal, PrimaryComponent, _split_top,
                     as_monomial_ideal, complement_of_monomial_prime, extended,
                     finitely_generated, ideal_quotient, intersect,
                     is_primary_monomial, minimal_primes_monomial, normalize_decomposition,
                     parse_ideal, powers_of, primary_decompose_monomial, radical_monomial,
                     s_component, saturate, saturate_by_ideal)
from .poly import GF, GREVLEX, LEX, QQ, PolyParseError, parse_polynomial, parse_var

CONFIG_ENV = "ASSPRIME_CONFIG"

EXIT_OK, EXIT_PARSE, EXIT_COMPUTE, EXIT_BUDGET = 0, 2, 3, 4


class ScriptError(Exception):
    """Malformed statement or misuse (exit 2)."""


@dataclass
class Config:
    order: str = "grevlex"
    pair_budget: int = 50_000
    seed: int = 42
    format: str = "text"
    cache: str = "on"

    def validate(self) -> "Config":
        if self.order not in ("grevlex", "lex"):
            raise ScriptError(f"unknown term order {self.order!r}")
        if not isinstance(self.pair_budget, int) or self.pair_budget <= 0:
            raise ScriptError("budget must be a positive integer")
        if not isinstance(self.seed, int):
            raise ScriptError("seed must be an integer")
        if self.format not in ("text", "json"):
            raise ScriptError(f"unknown format {self.format!r}")
        if self.cache not in ("on", "off"):
            raise ScriptError("cache must be on or off")
        return self

    @classmethod
    def from_file(cls, path: str) -> "Config":
        with open(path) as fh:
            data = json.load(fh)
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ScriptError(f"unknown config keys {sorted(unknown)}")
        return cls(**data).validate()

    def apply(self) -> None:
        groebner.settings.budget = self.pair_budget
        groebner.settings.cache = self.cache == "on"


def load_config(path: str | None = None, overrides: dict | None = None) -> Config:
    """Defaults, then the config file (flag path, else env var), then flags."""
    path = path or os.environ.get(CONFIG_ENV)
    cfg = Config.from_file(path) if path else Config()
    for k, v in (overrides or {}).items():
        if v is not None:
            setattr(cfg, k, v)
    return cfg.validate()


# --------------------------------------------------------------------------
# session


@dataclass
class Session:
    config: Config = field(default_factory=Config)
    rings: dict = field(default_factory=dict)
    valrings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    domain: object = QQ
    variables: frozenset | None = None
    out: list = field(default_factory=list)

    def names(self) -> set:
        return set(self.rings) | set(self.valrings) | set(self.ideals) | set(self.modules)

    def declare(self, table: dict, name: str, value) -> None:
        if name in self.names():
            raise ScriptError(f"{name!r} is already declared")
        table[name] = value

    @property
    def order(self):
        return LEX if self.config.order == "lex" else GREVLEX

    # ---- value parsing

    def poly(self, text: str):
        return parse_polynomial(text.strip(), self.domain, self.variables)

    def ideal(self, text: str):
        t = text.strip()
        if t in self.ideals:
            return self.ideals[t]
        if not (t.startswith("(") and t.endswith(")")):
            raise ScriptError(f"expected an ideal name or (generators), got {t!r}")
        I = parse_ideal(t, self.domain, self.variables)
        if isinstance(I, PolyIdeal) and self.order != GREVLEX:
            I = I.with_order(self.order)
        return I

    def module(self, text: str):
        t = text.strip()
        if t in self.modules:
            return self.modules[t]
        return self.parse_module(t)

    def parse_module(self, t: str):
        m = re.fullmatch(r"Quot\((\w+)\)/(\w+)", t)
        if m:
            g = self.valring(m.group(1))
            return val.quot_mod_ring(g)
        m = re.fullmatch(r"(\w+)/(.+)", t)
        if m and m.group(1) in self.valrings:
            g = self.valrings[m.group(1)]
            return val.CutModule(g, "quotient", val.parse_cut(m.group(2), g))
        try:
            return md.parse_module(t, self.domain, self.variables)
        except md.ModuleError as exc:
            raise ScriptError(str(exc)) from exc

    def valring(self, name: str):
        if name not in self.valrings:
            raise ScriptError(f"unknown valuation ring {name!r}")
        return self.valrings[name]

    def emit(self, command: str, text: str, data=None) -> None:
        if self.config.format == "json":
            self.out.append(json.dumps({"command": command,
                                        "result": data if data is not None else text}))
        else:
            self.out.append(text)


# --------------------------------------------------------------------------
# statements


def split_statements(script: str) -> list:
    lines = []
    for line in script.splitlines():
        s = line.split("#", 1)[0]
        lines.append(s)
    text = "\n".join(lines)
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == ";" and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail:
        raise ScriptError(f"statement not terminated by ';': {tail!r}")
    return [p for p in parts if p]


def _fmt_ideal(I) -> str:
    return str(I)


def _decomp_lines(rep) -> list:
    lines = [str(rep)]
    c = rep.certificates
    lines.append(f"  intersection equals input: {c['intersection']['equal']}")
    for p in c["primary"]:
        extra = ", ".join(p.get("pure_powers", []))
        lines.append(f"  primary {p['component']} for {p['prime']}"
                     + (f" (pure powers {extra})" if extra else ""))
    for w in c["irredundancy"]:
        if w["witness"] is None:
            lines.append(f"  irredundant {w['component']}: {w.get('note', 'no witness')}")
        else:
            lines.append(f"  irredundant {w['component']}: witness {w['witness']}")
    return lines


def _require_monomial(I, what: str):
    mono = as_monomial_ideal(I)
    if mono is None:
        raise IdealError(f"{what} needs a monomial ideal")
    return mono


def _cmd_decompose(s: Session, arg: str):
    I = _require_monomial(s.ideal(arg), "decompose")
    rep = primary_decompose_monomial(I, s.order)
    data = {"decomposition": str(rep),
            "components": [{"component": str(c.component), "prime": str(c.prime)}
                           for c in rep.components],
            "certificates": rep.certificates}
    s.emit("decompose", "\n".join(_decomp_lines(rep)), data)


def _cmd_normalize(s: Session, arg: str):
    m = re.fullmatch(r"(.+?)\s+into\s+(.+)", arg, re.S)
    if not m:
        raise ScriptError("usage: normalize <ideal> into <ideal>, <ideal>, ...;")
    I = s.ideal(m.group(1))
    comps = []
    for part in _split_top(m.group(2)):
        C = _require_monomial(s.ideal(part), "normalize")
        prime = is_primary_monomial(C)
        if prime is None:
            raise IdealError(f"{C} is not primary")
        comps.append(PrimaryComponent(C, prime))
    rep = normalize_decomposition(comps, _require_monomial(I, "normalize"))
    s.emit("normalize", "\n".join(_decomp_lines(rep)),
           {"decomposition": str(rep), "certificates": rep.certificates})


def _cmd_radical(s: Session, arg: str):
    r = radical_monomial(_require_monomial(s.ideal(arg), "radical"))
    s.emit("radical", str(r))


def _cmd_minprimes(s: Session, arg: str):
    ps = minimal_primes_monomial(_require_monomial(s.ideal(arg), "minprimes"))
    s.emit("minprimes", "{" + ", ".join(map(str, ps)) + "}", [str(p) for p in ps])


def _split_kw(arg: str, kw: str, usage: str):
    m = re.fullmatch(rf"(.+?)\s+{kw}\s+(.+)", arg, re.S)
    if not m:
        raise ScriptError(usage)
    return m.group(1), m.group(2)


def _cmd_quotient(s: Session, arg: str):
    a, b = _split_kw(arg, "by", "usage: quotient <ideal> by <ideal>;")
    s.emit("quotient", str(ideal_quotient(s.ideal(a), s.ideal(b))))


def _cmd_saturate(s: Session, arg: str):
    a, b = _split_kw(arg, "by", "usage: saturate <ideal> by <poly or ideal>;")
    I = s.ideal(a)
    b = b.strip()
    if b.startswith("(") or b in s.ideals:
        J = s.ideal(b)
        gens = J.generators
        res = saturate(I, gens[0]) if len(gens) == 1 else saturate_by_ideal(I, J)
    else:
        res = saturate(I, s.poly(b))
    s.emit("saturate", str(res))


def _cmd_intersect(s: Session, arg: str):
    m = re.fullmatch(r"(.+?)\s+with\s+(.+)", arg, re.S)
    parts = [m.group(1), m.group(2)] if m else _split_top(arg)
    if len(parts) < 2:
        raise ScriptError("usage: intersect <ideal> with <ideal>;")
    acc = s.ideal(parts[0])
    for p in parts[1:]:
        acc = intersect(acc, s.ideal(p))
    s.emit("intersect", str(acc))


def _parse_multset(s: Session, text: str):
    t = text.strip()
    m = re.fullmatch(r"(\w+)\((.*)\)", t, re.S)
    if not m:
        raise ScriptError(f"bad multiplicative set {t!r}")
    kind, body = m.group(1), m.group(2)
    args = _split_top(body)
    if kind == "powers" and len(args) == 1:
        return powers_of(s.poly(args[0]))
    if kind == "gens":
        return finitely_generated([s.poly(a) for a in args])
    if kind == "complement":
        return complement_of_monomial_prime([parse_var(a.strip()) for a in args if a.strip()])
    if kind == "extended" and len(args) == 2:
        return extended(_parse_multset(s, args[0]), s.poly(args[1]))
    raise ScriptError(f"bad multiplicative set {t!r}")


def _cmd_scomp(s: Session, arg: str):
    a, b = _split_kw(arg, "by", "usage: scomp <ideal> by powers(f)|gens(..)|complement(..)|extended(..);")
    s.emit("scomp", str(s_component(s.ideal(a), _parse_multset(s, b))))


def _module_arg(s: Session, arg: str):
    t = arg.strip()
    if t.startswith("module "):
        t = t[len("module "):]
    return s.module(t)


def _emit_primes(s: Session, cmd: str, ps):
    text = str(ps)
    if not ps.complete:
        text += "  [incomplete search]"
    lines = [text] + [f"  {d['prime']}  {d['provenance']}" + (f"  {d['witness']}" if d["witness"] else "")
                      for d in ps.describe()]
    s.emit(cmd, "\n".join(lines), {"primes": [md._prime_str(p) for p in ps],
                                   "complete": ps.complete, "entries": ps.describe()})


def _cmd_ass(s, arg):
    _emit_primes(s, "ass", md.ass(_module_arg(s, arg)))


def _cmd_ass0(s, arg):
    _emit_primes(s, "ass0", md.ass0(_module_arg(s, arg)))


def _cmd_ass1(s, arg):
    _emit_primes(s, "ass1", md.ass1(_module_arg(s, arg)))


def _cmd_supp(s: Session, arg: str):
    a, b = _split_kw(arg, "in", "usage: supp <prime> in <module>;")
    M = _module_arg(s, b)
    if isinstance(M, val.CutModule):
        p = val.parse_cut(a, M.group)
    else:
        p = s.ideal(a)
    res = md.supp_contains(p, M)
    s.emit("supp", "true" if res else "false", res)


def _cmd_modradical(s: Session, arg: str):
    M = _module_arg(s, arg)
    if not isinstance(M, md.FgModule):
        raise ScriptError("modradical expects a polynomial module")
    s.emit("modradical", str(md.module_radical(md.Submodule.zero(M), M)))


def _cmd_colon(s: Session, arg: str):
    m = re.fullmatch(r"(.+?)\s+by\s+(.+)", arg, re.S)
    M = _module_arg(s, m.group(1) if m else arg)
    if not isinstance(M, md.FgModule):
        raise ScriptError("colon expects a polynomial module")
    if not m:
        s.emit("colon", str(md.module_annihilator(M)))
        return
    U = []
    for part in _split_top(m.group(2)):
        part = part.strip()
        if not (part.startswith("[") and part.endswith("]")):
            raise ScriptError("elements are written [c1, c2, ...]")
        comps = [c for c in part[1:-1].split(",")]
        U.append(M.element(*[s.poly(c) for c in comps]))
    s.emit("colon", str(md.colon(md.Submodule.zero(M), U, M)))


def _cmd_gallery(s: Session, arg: str):
    words = arg.split()
    if words == ["list"]:
        lines, data = [], []
        for sc in gallery.list_examples():
            names = ", ".join(c.name for c in sc.claims)
            lines.append(f"{sc.id}: {sc.title} [{names}]")
            data.append({"id": sc.id, "title": sc.title, "claims": [c.name for c in sc.claims]})
        s.emit("gallery", "\n".join(lines), data)
        return
    if len(words) >= 2 and words[0] == "run":
        sc = gallery.get_example(words[1])
        overrides = {}
        if "seed" in sc.params:
            overrides["seed"] = s.config.seed
        for kv in words[2:]:
            if "=" not in kv:
                raise ScriptError(f"expected key=value, got {kv!r}")
            k, v = kv.split("=", 1)
            overrides[k] = json.loads(v) if re.fullmatch(r"-?\d+|\[.*\]", v) else v
        rep = gallery.run_example(sc.id, **overrides)
        s.emit("gallery", rep.to_json(), rep.to_dict())
        if rep.verdict != "pass":
            raise ComputationFailed(f"gallery scenario {sc.id} failed")
        return
    raise ScriptError("usage: gallery list; | gallery run <id> [key=value ...];")


class ComputationFailed(Exception):
    pass


def _cmd_config(s: Session, arg: str):
    words = arg.split()
    if len(words) != 2:
        raise ScriptError("usage: config seed|order|budget|format|cache <value>;")
    key, v = words
    key = {"budget": "pair_budget"}.get(key, key)
    if key not in {f.name for f in fields(Config)}:
        raise ScriptError(f"unknown config key {words[0]!r}")
    value = int(v) if key in ("seed", "pair_budget") and re.fullmatch(r"-?\d+", v) else v
    setattr(s.config, key, value)
    s.config.validate()
    s.config.apply()
    s.emit("config", f"{words[0]} = {v}", {words[0]: value})


def _decl_ring(s: Session, name: str, body: str):
    m = re.fullmatch(r"(Q|QQ|Fp\((\d+)\)|GF\((\d+)\))\s*\[(.*)\]", body.strip())
    if not m:
        raise ScriptError("usage: ring <name> = Q[x,y] | Fp(p)[x,y];")
    p = m.group(2) or m.group(3)
    domain = GF(int(p)) if p else QQ
    vs = [parse_var(v.strip()) for v in m.group(4).split(",") if v.strip()]
    s.declare(s.rings, name, (domain, vs))
    s.domain = domain
    s.variables = frozenset(vs)
    s.emit("ring", f"{name} = {domain}[{', '.join(v.strip() for v in m.group(4).split(','))}]")


def _decl_valring(s: Session, name: str, body: str):
    g = val.parse_group(body)
    s.declare(s.valrings, name, g)
    s.emit("valring", f"{name} = valuation ring with value group {g}")


def _decl_ideal(s: Session, name: str, body: str):
    I = s.ideal(body)
    s.declare(s.ideals, name, I)
    s.emit("ideal", f"{name} = {I}")


def _decl_module(s: Session, name: str, body: str):
    M = s.parse_module(body.strip())
    s.declare(s.modules, name, M)
    s.emit("module", f"{name} = {M}")


DECLS = {"ring": _decl_ring, "valring": _decl_valring, "ideal": _decl_ideal,
         "module": _decl_module}

COMMANDS = {
    "decompose": _cmd_decompose, "normalize": _cmd_normalize, "radical": _cmd_radical,
    "minprimes": _cmd_minprimes, "quotient": _cmd_quotient, "saturate": _cmd_saturate,
    "intersect": _cmd_intersect, "scomp": _cmd_scomp, "ass": _cmd_ass, "ass0": _cmd_ass0,
    "ass1": _cmd_ass1, "supp": _cmd_supp, "modradical": _cmd_modradical, "colon": _cmd_colon,
    "gallery": _cmd_gallery, "config": _cmd_config,
}


def execute(stmt: str, s: Session) -> None:
    head, _, rest = stmt.partition(" ")
    head = head.strip()
    if head in DECLS:
        m = re.fullmatch(r"\s*(\w+)\s*=\s*(.+)", rest, re.S)
        if not m:
            raise ScriptError(f"usage: {head} <name> = ...;")
        DECLS[head](s, m.group(1), m.group(2))
        return
    if head not in COMMANDS:
        raise ScriptError(f"unknown command {head!r}")
    COMMANDS[head](s, rest.strip())


def run_script(script: str, config: Config | None = None) -> tuple[int, list]:
    """Execute a script; returns ``(exit code, output lines)``."""
    s = Session(config=config or Config())
    s.config.validate()
    s.config.apply()
    try:
        stmts = split_statements(script)
    except ScriptError as exc:
        return EXIT_PARSE, [f"parse error: {exc}"]
    for stmt in stmts:
        try:
            execute(stmt, s)
        except (ScriptError, PolyParseError, val.ValuationError) as exc:
            if isinstance(exc, val.ValuationError) and not _is_literal_error(exc):
                s.out.append(f"error: {exc}")
                return EXIT_COMPUTE, s.out
            s.out.append(f"parse error in {stmt!r}: {exc}")
            return EXIT_PARSE, s.out
        except BudgetExceeded as exc:
            s.out.append(f"budget exceeded: {exc}")
            return EXIT_BUDGET, s.out
        except (IdealError, md.ModuleError, gallery.GalleryError, ComputationFailed,
                ValueError, ZeroDivisionError) as exc:
            s.out.append(f"error: {exc}")
            return EXIT_COMPUTE, s.out
    return EXIT_OK, s.out


def _is_literal_error(exc) -> bool:
    msg = str(exc)
    return msg.startswith(("bad ", "unknown value group"))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="assprimes", description="Run an ideal/module script.")
    ap.add_argument("script", nargs="?", help="script file (default: stdin)")
    ap.add_argument("-e", "--execute", help="script text given inline")
    ap.add_argument("--config", help="JSON config file")
    ap.add_argument("--format", choices=["text", "json"])
    ap.add_argument("--seed", type=int)
    ap.add_argument("--budget", type=int)
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args.config, {"format": args.format, "seed": args.seed,
                                        "pair_budget": args.budget})
    except (ScriptError, OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.execute is not None:
        text = args.execute
    elif args.script and args.script != "-":
        with open(args.script) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    code, lines = run_script(text, cfg)
    for line in lines:
        stream = sys.stderr if line.startswith(("error:", "parse error", "budget exceeded")) else sys.stdout
        print(line, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
