"""Command line: `monoidvar VERB ACTION ...`.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 error or
INCONCLUSIVE.  `--format structured` prints one JSON object per command.
"""

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import __version__
from .errors import MonoidVarError

SCHEMA_VERSION = 1
OK, NEGATIVE, ERROR = 0, 1, 2


class Report:
    """Collects text lines and structured fields for one command."""

    def __init__(self, command):
        self.data = {"schema": SCHEMA_VERSION, "command": command}
        self.lines = []
        self.code = OK

    def say(self, line=""):
        self.lines.append(str(line))

    def set(self, **kw):
        self.data.update(kw)

    def emit(self, fmt, out=sys.stdout):
        if fmt == "structured":
            self.data["exit"] = self.code
            out.write(json.dumps(self.data, ensure_ascii=False, default=str) + "\n")
        else:
            for line in self.lines:
                out.write(line + "\n")


# ---- helpers ----

def _fixture_path(p):
    """Accept paths relative to the cwd, the fixture root or its subfolders."""
    from .acceptance import FIXTURES
    if os.path.exists(p):
        return Path(p)
    name = Path(p).name
    for base in (FIXTURES, *sorted(d for d in FIXTURES.iterdir() if d.is_dir())):
        for cand in (base / p, base / name):
            if cand.exists():
                return cand
    raise FileNotFoundError(p)


def _read(p):
    return _fixture_path(p).read_text("utf-8")


def _axioms(name, bound=2):
    """Axiom file, inline identities separated by ';', or a system name."""
    from .equational import AxiomSystem
    from .families import named_axioms, resolve_label
    if os.path.exists(name):
        return AxiomSystem.load(Path(name).read_text("utf-8"), Path(name).stem)
    if "=" in name or "≈" in name:
        return AxiomSystem("inline", [resolve_label(s.strip()) for s in name.split(";")])
    return named_axioms(name, bound=bound)


def _monoid_from_spec(spec):
    """rees:W|W, alpha:KIND:SEED|SEED, file:PATH, node:LABEL."""
    from .congruences import build_rees_alpha
    from .lattice import node_monoid
    from .monoids import build_rees, load_monoid
    kind, _, rest = spec.partition(":")
    if kind == "rees":
        return build_rees([s.strip() for s in rest.split("|")])
    if kind == "alpha":
        name, _, seeds = rest.partition(":")
        return build_rees_alpha(name, [s.strip() for s in seeds.split("|")])
    if kind == "file":
        return load_monoid(_read(rest))
    if kind == "node":
        return node_monoid(rest)
    raise ValueError(f"monoid spec must start with rees:, alpha:, file: or node: ({spec!r})")


def _monoid(args):
    from .congruences import build_rees_alpha
    from .monoids import build_rees, load_monoid
    if args.rees:
        return build_rees(args.rees)
    if args.alpha:
        return build_rees_alpha(args.alpha, args.cls)
    if args.file:
        return load_monoid(_read(args.file))
    if args.spec:
        return _monoid_from_spec(args.spec)
    raise ValueError("name a monoid with --rees, --alpha/--class, --file or --spec")


def _prover_config(args, **kw):
    from .equational import ProverConfig
    cfg = ProverConfig(**kw)
    if args.max_len is not None:
        cfg.max_len = args.max_len
    if args.max_nodes is not None:
        cfg.max_nodes = args.max_nodes
    return cfg


def _cap(args):
    from .congruences import ISLAND_CAP
    return args.island_cap if args.island_cap is not None else ISLAND_CAP


# ---- word ----

def cmd_word(args, rep):
    from .words import decompose, format_word, islands, parse_word, reverse, word_stats, factors
    w = parse_word(args.word)
    if args.action == "show":
        st = word_stats(w)
        d = decompose(w)
        rep.say(format_word(w, exponents=True))
        rep.say(f"length {len(w)}; simple {' '.join(sorted(st.simple)) or '-'}; "
                f"multiple {' '.join(sorted(st.multiple)) or '-'}")
        parts = [format_word(d.blocks[0])]
        for t, b in zip(d.separators, d.blocks[1:]):
            parts += [f"| {t} |", format_word(b)]
        rep.say("decomposition " + " ".join(parts))
        rep.set(word=format_word(w), length=len(w), simple=sorted(st.simple),
                multiple=sorted(st.multiple),
                blocks=[format_word(b) for b in d.blocks], separators=list(d.separators))
    elif args.action == "reverse":
        r = reverse(w)
        rep.say(format_word(r))
        rep.set(word=format_word(r))
    elif args.action == "factors":
        fs = sorted(factors(w), key=lambda f: f.key())
        for f in fs:
            rep.say(format_word(f))
        rep.set(factors=[format_word(f) for f in fs])
    elif args.action == "islands":
        out = {a: islands(w, a) for a in dict.fromkeys(w)}
        for a, isl in out.items():
            rep.say(f"{a}: {isl}")
        rep.set(islands={a: list(map(str, v)) for a, v in out.items()})


# ---- cong ----

def cmd_cong(args, rep):
    from . import congruences as cg
    from .words import format_word, parse_word
    kind = cg.get_kind(args.kind)
    if args.action == "equiv":
        u, v = parse_word(args.words[0]), parse_word(args.words[1])
        verdict = kind.equiv(u, v)
        rep.say(verdict)
        rep.set(kind=kind.name, verdict=verdict)
        rep.code = {cg.EQUIV: OK, cg.NOT_EQUIV: NEGATIVE}.get(verdict, ERROR)
    elif args.action == "class":
        c = cg.parse_class(args.words[0], kind.name)
        rep.say(cg.render_class(c))
        rep.say(f"representative {format_word(c.rep)}")
        rep.set(kind=kind.name, cls=cg.render_class(c), rep=format_word(c.rep))
    elif args.action == "closure":
        seeds = [cg.parse_class(s, kind.name) for s in args.words]
        cls = cg.closure(kind, seeds, cap=_cap(args))
        rendered = [cg.render_class(c) for c in cls]
        for r in rendered:
            rep.say(r)
        rep.say(f"# {len(cls)} classes")
        rep.set(kind=kind.name, classes=rendered, count=len(cls))


# ---- monoid ----

def cmd_monoid(args, rep):
    from . import congruences as cg
    from .monoids import (class_stable, combine, dump_monoid, is_isoterm, satisfies,
                          variety_leq)
    from .families import resolve_label
    from .words import format_word, parse_word
    if args.action == "build":
        M = _monoid(args)
        text = dump_monoid(M)
        if args.output:
            Path(args.output).write_text(text, "utf-8")
            rep.say(f"wrote {args.output} ({len(M)} elements)")
        else:
            rep.say(text.rstrip("\n"))
        rep.set(provenance=M.provenance, size=len(M), monoid=text)
    elif args.action == "satisfies":
        M = _monoid(args)
        ident = resolve_label(args.identity)
        r = satisfies(M, ident)
        if r.holds:
            rep.say(f"holds: {ident} in {M.provenance}")
        else:
            rep.say(f"fails: {ident} in {M.provenance}; witness {r.witness}")
        rep.set(identity=str(ident), holds=r.holds,
                witness={k: format_word(v) for k, v in (r.witness or {}).items()})
        rep.code = OK if r.holds else NEGATIVE
    elif args.action == "isoterm":
        M = _monoid(args)
        w = parse_word(args.word)
        v = is_isoterm(M, w, args.bound or max(len(w), 1) + 2)
        rep.say(str(v))
        rep.set(status=v.status, witness=format_word(v.witness) if v.witness is not None else None)
        rep.code = {"ISOTERM_UP_TO_BOUND": OK, "NOT_ISOTERM": NEGATIVE}.get(v.status, ERROR)
    elif args.action == "stable":
        M = _monoid(args)
        c = cg.parse_class(args.word, args.kind)
        v = class_stable(M, args.kind, c, args.bound or len(c.rep) + 2)
        rep.say(str(v))
        rep.set(status=v.status, witness=str(v.witness) if v.witness else None)
        rep.code = {"STABLE_UP_TO_BOUND": OK, "UNSTABLE": NEGATIVE}.get(v.status, ERROR)
    elif args.action == "leq":
        M1, M2 = _monoid_from_spec(args.specs[0]), _monoid_from_spec(args.specs[1])
        v = variety_leq(M1, M2, k=args.k, length=args.length)
        rep.say(str(v))
        rep.set(holds=v.holds, identity=str(v.identity) if v.identity else None)
        rep.code = OK if v.holds else NEGATIVE
    elif args.action == "combine":
        Ms = [_monoid_from_spec(s) for s in args.specs]
        M = combine(Ms[0], Ms[1] if len(Ms) > 1 else None, mode=args.mode)
        text = dump_monoid(M)
        if args.output:
            Path(args.output).write_text(text, "utf-8")
            rep.say(f"wrote {args.output} ({len(M)} elements)")
        else:
            rep.say(text.rstrip("\n"))
        rep.set(provenance=M.provenance, size=len(M), monoid=text)


# ---- deduce / chain ----

def _chain_report(rep, chain, axioms):
    from .equational import verify_chain
    from .words import format_word
    r = verify_chain(chain, axioms)
    steps = []
    for i, s in enumerate(r.steps):
        tag = "OK" if s else "FAIL"
        u, v = chain.words[i], chain.words[i + 1]
        rec = " (reconstructed)" if i in chain.reconstructed else ""
        rep.say(f"step {i}: {format_word(u, True)} ~ {format_word(v, True)} {tag}{rec}")
        steps.append({"index": i, "ok": bool(s), "step": str(s) if s else None})
    if r.ok:
        rep.say(f"all {len(chain)} steps OK")
    else:
        rep.say(f"first failing step: {r.first_failure}")
    rep.set(ok=r.ok, first_failure=r.first_failure, steps=steps)
    rep.code = OK if r.ok else NEGATIVE


def cmd_deduce(args, rep):
    from .equational import directly_deducible, load_chain, prove
    from .families import resolve_label
    from .monoids import build_rees
    from .words import parse_word
    if args.action == "prove":
        ax = _axioms(args.axioms, args.bound)
        models = [_monoid_from_spec(m) if ":" in m else build_rees([m])
                  for m in args.countermodel]
        cfg = _prover_config(args, countermodels=tuple(models))
        r = prove(ax, resolve_label(args.identity), cfg)
        rep.say(r.status)
        if r.chain is not None:
            rep.say(r.chain.dump().rstrip("\n"))
        if r.model is not None:
            rep.say(f"countermodel {r.model.provenance}")
        rep.set(status=r.status, chain=r.chain.dump() if r.chain else None,
                model=r.model.provenance if r.model is not None else None, nodes=r.nodes)
        rep.code = {"PROVED": OK, "REFUTED": NEGATIVE}.get(r.status, ERROR)
    elif args.action == "step":
        s = directly_deducible(parse_word(args.u), parse_word(args.v), resolve_label(args.axiom))
        rep.say(str(s) if s else "not directly deducible")
        rep.set(deducible=s is not None, step=str(s) if s else None)
        rep.code = OK if s else NEGATIVE
    elif args.action == "chain":
        ax = _axioms(args.axioms) if args.axioms else None
        _chain_report(rep, load_chain(_read(args.path)), ax)


def cmd_chain(args, rep):
    from .equational import load_chain
    ax = _axioms(args.axioms) if args.axioms else None
    _chain_report(rep, load_chain(_read(args.path)), ax)


# ---- family ----

def _perm_arg(s):
    if s is None or s in ("", "e", "id"):
        return None
    return tuple(int(a) for a in s.replace("(", "").replace(")", "").split(","))


def cmd_family(args, rep):
    from .families import enum_perms, gen_word, identity_by_number, named_axioms
    from .words import format_word
    if args.action == "gen":
        kw = {}
        for p in args.perm or []:
            name, _, val = p.partition("=")
            kw[name] = _perm_arg(val)
        w = gen_word(args.name, *args.params, **kw)
        rep.say(format_word(w))
        rep.set(word=format_word(w))
    elif args.action == "perms":
        ps = enum_perms(args.name, *args.params)
        for p in ps:
            rep.say(str(p))
        rep.set(perms=[list(p) for p in ps], count=len(ps))
    elif args.action == "axioms":
        ax = named_axioms(args.name, bound=args.bound)
        rep.say(ax.dump().rstrip("\n"))
        rep.set(name=ax.name, identities=[str(s) for s in ax.identities])
    elif args.action == "bynum":
        for n in args.params:
            s = identity_by_number(n)
            rep.say(f"({n}) {s}")
        rep.set(identities={n: str(identity_by_number(n)) for n in args.params})


# ---- lattice ----

def _lattice_source(name):
    from .lattice import lattice_model, load_lattice
    try:
        return lattice_model(name)
    except KeyError:
        return load_lattice(_read(name))


def cmd_lattice(args, rep):
    from .lattice import check_props, corroborate, dump_lattice, models
    if args.action == "build":
        L = _lattice_source(args.source)
        text = dump_lattice(L)
        rep.say(text.rstrip("\n"))
        rep.set(elements=L.labels, covers=L.covers(), top=L.top, bottom=L.bottom)
    elif args.action == "check":
        L = _lattice_source(args.source)
        p = check_props(L)
        rep.say(str(p))
        rep.set(distributive=p.distributive, modular=p.modular, witness=p.witness,
                shape=p.shape, pentagons=len(p.n5), diamonds=len(p.m3))
        rep.code = OK if p.distributive else NEGATIVE
    elif args.action == "models":
        names = [args.source] if args.source else list(models())
        out = {}
        code = OK
        for name in names:
            L = _lattice_source(name)
            rep.say(f"{name}: {len(L)} elements, top {L.top}")
            out[name] = {"elements": L.labels, "covers": L.covers()}
            if args.corroborate:
                checks = corroborate(L, k=args.k, length=args.length)
                for c in checks:
                    rep.say(f"  {c}")
                    code = code if c.ok else NEGATIVE
                out[name]["edges"] = [{"lower": c.lower, "upper": c.upper, "ok": c.ok,
                                       "leq": str(c.leq), "separator": str(c.separator)}
                                      for c in checks]
        rep.set(models=out)
        rep.code = code


# ---- fixtures ----

def cmd_fixtures(args, rep):
    from .acceptance import run_all
    only = set(args.only) if args.only else None
    results = run_all(seed=args.seed, only=only)
    for r in results:
        rep.say(r.line())
    passed = sum(r.ok for r in results)
    rep.say(f"{passed}/{len(results)} criteria pass")
    rep.set(results=[{"criterion": r.number, "title": r.title, "ok": r.ok, "detail": r.detail,
                      "seconds": round(r.seconds, 2)} for r in results])
    rep.code = OK if passed == len(results) else NEGATIVE


# ---- parser ----

def _globals(defaults):
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=["text", "structured"], default=d("text"))
    p.add_argument("--max-len", type=int, default=d(None))
    p.add_argument("--max-nodes", type=int, default=d(None))
    p.add_argument("--island-cap", type=int, default=d(None))
    p.add_argument("--seed", type=int, default=d(0))
    return p


def _monoid_opts(p):
    p.add_argument("--rees", action="append", metavar="WORD", help="M(W); repeat for several words")
    p.add_argument("--alpha", metavar="KIND", help="M_alpha of the --class seeds")
    p.add_argument("--class", dest="cls", action="append", default=[], metavar="CLASS")
    p.add_argument("--file", metavar="PATH")
    p.add_argument("--spec", metavar="SPEC", help="rees:..., alpha:KIND:..., file:..., node:...")


def build_parser():
    g = _globals(False)
    parser = argparse.ArgumentParser(prog="monoidvar", parents=[_globals(True)],
                                     description="identities, congruences and Rees quotient monoids")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbs = parser.add_subparsers(dest="verb", required=True)

    p = verbs.add_parser("word", parents=[g], help="parse and inspect a word")
    p.add_argument("action", choices=["show", "reverse", "factors", "islands"])
    p.add_argument("word")
    p.set_defaults(fn=cmd_word)

    p = verbs.add_parser("cong", parents=[g], help="word congruences")
    p.add_argument("action", choices=["equiv", "class", "closure"])
    p.add_argument("--kind", required=True)
    p.add_argument("words", nargs="+")
    p.set_defaults(fn=cmd_cong)

    p = verbs.add_parser("monoid", parents=[g], help="finite monoids")
    acts = p.add_subparsers(dest="action", required=True)
    for name in ("build", "satisfies", "isoterm", "stable"):
        q = acts.add_parser(name, parents=[g])
        _monoid_opts(q)
        if name == "build":
            q.add_argument("-o", "--output")
        elif name == "satisfies":
            q.add_argument("identity")
        else:
            if name == "stable":
                q.add_argument("--kind", required=True)
            q.add_argument("word")
            q.add_argument("--bound", type=int)
    q = acts.add_parser("leq", parents=[g], help="bounded test of V(A) <= V(B)")
    q.add_argument("specs", nargs=2, metavar="SPEC")
    q.add_argument("-k", type=int, default=3)
    q.add_argument("-L", "--length", type=int, default=7)
    q = acts.add_parser("combine", parents=[g])
    q.add_argument("--mode", choices=["product", "dual", "alpha_join"], default="product")
    q.add_argument("specs", nargs="+", metavar="SPEC")
    q.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_monoid)

    p = verbs.add_parser("deduce", parents=[g], help="equational deduction")
    acts = p.add_subparsers(dest="action", required=True)
    q = acts.add_parser("prove", parents=[g])
    q.add_argument("--axioms", required=True, help="system name (A, H, D1, ...) or axiom file")
    q.add_argument("--bound", type=int, default=2)
    q.add_argument("--countermodel", action="append", default=[], metavar="SPEC",
                   help="monoid spec (or a bare word W for M(W)) to try as a countermodel")
    q.add_argument("identity")
    q = acts.add_parser("step", parents=[g])
    q.add_argument("u")
    q.add_argument("v")
    q.add_argument("axiom")
    q = acts.add_parser("chain", parents=[g])
    q.add_argument("path")
    q.add_argument("--axioms")
    p.set_defaults(fn=cmd_deduce)

    p = verbs.add_parser("chain", parents=[g], help="verify a chain file")
    p.add_argument("action", choices=["verify"])
    p.add_argument("path")
    p.add_argument("--axioms")
    p.set_defaults(fn=cmd_chain)

    p = verbs.add_parser("family", parents=[g], help="word families and axiom systems")
    acts = p.add_subparsers(dest="action", required=True)
    q = acts.add_parser("gen", parents=[g])
    q.add_argument("name")
    q.add_argument("params", nargs="*", type=int)
    q.add_argument("--perm", action="append", metavar="NAME=1,2,...",
                   help="permutation argument, e.g. rho=2,1")
    q = acts.add_parser("perms", parents=[g])
    q.add_argument("name", help="S, S_nm or S_sharp")
    q.add_argument("params", nargs="+", type=int)
    q = acts.add_parser("axioms", parents=[g])
    q.add_argument("name")
    q.add_argument("--bound", type=int, default=2)
    q = acts.add_parser("bynum", parents=[g])
    q.add_argument("params", nargs="+", type=int, metavar="N")
    p.set_defaults(fn=cmd_family)

    p = verbs.add_parser("lattice", parents=[g], help="finite lattices")
    p.add_argument("action", choices=["build", "check", "models"])
    p.add_argument("source", nargs="?", help="lattice file or model name (fig1, d1)")
    p.add_argument("--corroborate", action="store_true",
                   help="with models: check every cover against its monoids")
    p.add_argument("-k", type=int, default=3)
    p.add_argument("-L", "--length", type=int, default=7)
    p.set_defaults(fn=cmd_lattice)

    p = verbs.add_parser("fixtures", parents=[g], help="run the acceptance fixtures")
    p.add_argument("action", choices=["run"])
    p.add_argument("--only", type=int, action="extend", nargs="+", metavar="N")
    p.set_defaults(fn=cmd_fixtures)
    return parser


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    random.seed(args.seed)
    command = " ".join(x for x in (args.verb, getattr(args, "action", None)) if x)
    rep = Report(command)
    if getattr(args, "action", None) in ("build", "check") and args.verb == "lattice" \
            and not args.source:
        parser.error("lattice build/check needs a source")
    try:
        args.fn(args, rep)
    except MonoidVarError as e:
        rep.code = ERROR
        rep.set(error=e.code, message=str(e))
        rep.say(f"error: {e.code}: {e}")
    except (ValueError, KeyError, FileNotFoundError) as e:
        rep.code = ERROR
        code = "USAGE" if isinstance(e, (KeyError, FileNotFoundError)) else "INVALID"
        rep.set(error=code, message=str(e))
        rep.say(f"error: {code}: {e}")
    rep.emit(args.format, out)
    return rep.code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
