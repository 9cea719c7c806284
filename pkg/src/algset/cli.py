"""Command-line front end: batch checks with text or JSON reports.

Exit status: 0 when every record matches its expectation (no refutation
where a pass is expected, no expected refutation missing), 1 otherwise,
2 on unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from algset import __version__
from algset.errors import AlgSetError, InconclusiveError, ResourceBoundError

FIXTURES = Path(__file__).parent / "fixtures"

POSITIVE = {"pass", "WITNESSED", "PASSED-SAMPLED", "holds", "TRUE"}
NEGATIVE = {"REFUTED", "fails"}


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    budget: int | None = None
    ceiling: int | None = None
    rank: int | None = None
    headroom: int | None = None
    json: bool = False
    fixtures: Path = FIXTURES
    seed: int = 0
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("budget", "ceiling", "rank", "headroom"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"--{name} must be non-negative")

    def echo(self) -> dict:
        return {"command": self.command, "inputs": list(self.inputs), "budget": self.budget,
                "ceiling": self.ceiling, "rank": self.rank, "headroom": self.headroom,
                "seed": self.seed, "options": {k: v for k, v in sorted(self.options.items())}}


@dataclass
class Record:
    id: str
    outcome: str
    expected: str | None = None
    evidence: dict = field(default_factory=dict)
    seconds: float = 0.0
    summary: str = ""

    @property
    def mismatch(self) -> bool:
        if self.expected is None:
            return False
        if self.expected in POSITIVE:
            return self.outcome in NEGATIVE
        if self.expected in NEGATIVE:
            return self.outcome != self.expected
        return False

    def to_json(self, timing: bool = True) -> dict:
        out = {"id": self.id, "outcome": self.outcome, "expected": self.expected,
               "matched": not self.mismatch, "evidence": self.evidence}
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class Report:
    config: RunConfig
    records: list[Record] = field(default_factory=list)
    error: str | None = None
    version: str = __version__

    @property
    def exit_status(self) -> int:
        if self.error is not None:
            return 2
        return 1 if any(r.mismatch for r in self.records) else 0

    def to_json(self, timing: bool = True) -> dict:
        return {"tool": "algset", "version": self.version, "config": self.config.echo(),
                "records": [r.to_json(timing) for r in self.records],
                "error": self.error, "exit_status": self.exit_status}

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True, default=str)

    def text(self) -> str:
        lines = []
        for r in self.records:
            flag = "  MISMATCH" if r.mismatch else ""
            exp = f" (expected {r.expected})" if r.expected is not None else ""
            lines.append(f"{r.id:<24} {r.outcome:<16}{exp}{flag}  {r.summary}".rstrip())
        if self.error:
            lines.append(f"error: {self.error}")
        lines.append(f"exit status {self.exit_status}")
        return "\n".join(lines)


def _timed(record_id: str, fn: Callable[[], Record]) -> Record:
    t = time.perf_counter()
    try:
        rec = fn()
    except (ResourceBoundError, InconclusiveError) as exc:
        rec = Record(record_id, "INCONCLUSIVE", evidence={"error": str(exc)}, summary=str(exc))
    rec.seconds = time.perf_counter() - t
    return rec


def _load_json(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise AlgSetError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise AlgSetError(f"{path}: invalid JSON ({exc.msg})") from None


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise AlgSetError(f"cannot read {path}: {exc.strerror}") from None


# -- check-axioms ----------------------------------------------------------------------

def _map_class(cfg: RunConfig, category, default: str | None = None):
    from algset.smallmaps.classes import builtin_class, load_class

    if cfg.options.get("class_file"):
        return load_class(category, _read(cfg.options["class_file"]))
    return builtin_class(category, cfg.options.get("class") or default or "all")


def run_check_axioms(cfg: RunConfig) -> list[Record]:
    from algset.fincat.finset import FINSET
    from algset.smallmaps.axioms import check_axiom
    from algset.smallmaps.catalog import Catalog
    from algset.smallmaps.verdict import AXIOMS, Budget, normalize_axiom

    expected: dict[str, str] = {}
    budget = cfg.budget
    name = None
    if cfg.options.get("fixture"):
        fx = _load_json(cfg.fixtures / "classes" / f"{cfg.options['fixture']}.json")
        name = fx["class"]
        expected = fx.get("expected", {})
        budget = budget if budget is not None else fx.get("budget")
    cls = _map_class(cfg, FINSET, name)
    axioms = cfg.options.get("axioms") or (list(expected) if expected else list(AXIOMS))
    b = Budget(max_size=budget if budget is not None else 4,
               ceiling=cfg.ceiling if cfg.ceiling is not None else 200_000)
    catalog = Catalog(FINSET, b.max_size)
    out = []
    for ax in axioms:
        name = normalize_axiom(ax)

        def one(name=name):
            v = check_axiom(cls, name, b, catalog=catalog)
            return Record(name, v.outcome.value, expected.get(name), v.to_json(),
                          summary=f"{v.instances} instances" + (f"; {v.note}" if v.note else ""))

        out.append(_timed(name, one))
    return out


# -- eval ------------------------------------------------------------------------------

def _decode(index: int, sizes) -> tuple[int, ...]:
    vals = []
    for n in reversed(sizes):
        index, r = divmod(index, n)
        vals.append(r)
    return tuple(reversed(vals))


def run_eval(cfg: RunConfig) -> list[Record]:
    from algset.fincat.base import Subobject
    from algset.fincat.finset import FINSET
    from algset.logic.parser import parse
    from algset.logic.semantics import Environment, kripke_joyal_eval

    if cfg.options.get("fixture"):
        spec = _load_json(cfg.fixtures / "formulas" / f"{cfg.options['fixture']}.json")
    elif cfg.inputs:
        spec = _load_json(Path(cfg.inputs[0]))
    else:
        spec = {"sorts": dict(cfg.options.get("sorts") or {}), "relations": {},
                "formula": cfg.options.get("formula"), "context": []}
    if not spec.get("formula"):
        raise AlgSetError("no formula given")
    sorts = {k: int(v) for k, v in spec["sorts"].items()}
    rels = {}
    for name, r in spec.get("relations", {}).items():
        sizes = [sorts[s] for s in r["sorts"]]
        idx = set()
        for t in r["tuples"]:
            i = 0
            for v, n in zip(t, sizes):
                if not 0 <= v < n:
                    raise AlgSetError(f"relation {name}: value {v} out of range")
                i = i * n + v
            idx.add(i)
        total = 1
        for n in sizes:
            total *= n
        rels[name] = (tuple(r["sorts"]), Subobject(total, frozenset(idx)))
    env = Environment(FINSET, sorts, rels, spec.get("membership"))
    phi = parse(spec["formula"])
    ctx = tuple((v, s) for v, s in spec.get("context", []))

    def one():
        S = kripke_joyal_eval(phi, env, ctx)
        sizes = [sorts[s] for _, s in ctx]
        total = 1
        for n in sizes:
            total *= n
        outcome = "TRUE" if len(S.data) == total else "FALSE" if not S.data else "PARTIAL"
        true_at = [list(_decode(i, sizes)) for i in sorted(S.data)]
        return Record("eval", outcome, spec.get("expected"),
                      {"formula": str(phi), "context": [list(c) for c in ctx], "true_at": true_at},
                      summary=f"{str(phi)}  true at {true_at}")

    return [_timed("eval", one)]


# -- build-v / check-set-axiom ---------------------------------------------------------

def run_build_v(cfg: RunConfig) -> list[Record]:
    from algset.wzf.zf import build_V, check_zf_laws

    rank = cfg.rank if cfg.rank is not None else 4

    def one():
        V = build_V(rank, limit=cfg.ceiling or 50_000)
        laws = check_zf_laws(V)
        return Record(f"V_{rank}", "pass" if all(laws.values()) else "REFUTED", None,
                      {"rank": rank, "size": V.size, "stages": list(V.stages), "laws": laws},
                      summary=f"{V.size} elements")

    return [_timed(f"V_{rank}", one)]


def run_check_set_axiom(cfg: RunConfig) -> list[Record]:
    from algset.logic.parser import parse
    from algset.logic.schemas import SAMPLE_PARAMETERS, SCHEMAS
    from algset.wzf.zf import build_V, check_set_axiom

    expected: dict[str, str] = {}
    rank, headroom = cfg.rank, cfg.headroom
    if cfg.options.get("fixture"):
        fx = _load_json(cfg.fixtures / f"{cfg.options['fixture']}.json")
        expected = fx.get("expected", {})
        rank = fx["rank"] if rank is None else rank
        headroom = fx["headroom"] if headroom is None else headroom
    rank = 4 if rank is None else rank
    headroom = 1 if headroom is None else headroom
    names = cfg.inputs or (list(expected) if expected else list(SCHEMAS))
    V = build_V(rank)
    out = []
    for name in names:
        if name not in SCHEMAS:
            raise AlgSetError(f"unknown axiom schema {name!r}")
        params = [cfg.options["param"]] if cfg.options.get("param") else \
            list(SAMPLE_PARAMETERS.get(name, [None])) if cfg.options.get("samples") else [None]
        for i, p in enumerate(params):
            rid = name if len(params) == 1 else f"{name}[{i}]"

            def one(name=name, p=p, rid=rid):
                v = check_set_axiom(name, V, headroom, parse(p) if p else None)
                return Record(rid, v.status, expected.get(name), v.to_json(),
                              summary="; ".join(str(w) for w in v.witnesses[:2]) or v.note)

            out.append(_timed(rid, one))
    return out


# -- sites and sheaves -----------------------------------------------------------------

def _site(cfg: RunConfig, ref: str | None):
    from algset.sheaves.site import load_site

    if ref is None:
        raise AlgSetError("no site given")
    path = Path(ref)
    if not path.exists():
        path = cfg.fixtures / "sites" / f"{ref}.site"
    if not path.exists():
        raise AlgSetError(f"no site file or fixture named {ref!r}")
    return load_site(_read(path), path.stem), path.stem


def run_validate_site(cfg: RunConfig) -> list[Record]:
    from algset.sheaves.site import bounded_cov_check, validate_site

    refs = cfg.inputs or [cfg.options.get("fixture")]
    exp_path = cfg.fixtures / "sites" / "expected.json"
    all_expected = _load_json(exp_path) if exp_path.exists() else {}
    out = []
    for ref in refs:
        site, stem = _site(cfg, ref)
        expected = all_expected.get(stem, {})
        t = time.perf_counter()
        verdicts = validate_site(site)
        cov = bounded_cov_check(site)
        dt = time.perf_counter() - t
        for ax, v in verdicts.items():
            out.append(Record(f"{stem}:{ax}", "pass" if v.passed else "REFUTED",
                              expected.get(ax), v.to_json(), dt, f"{v.instances} instances"))
        out.append(Record(f"{stem}:bounded-cov", "pass" if cov else "REFUTED",
                          expected.get("bounded-cov"), {"witness": cov.witness}, dt))
    return out


def _presheaves(cfg: RunConfig, site):
    from algset.fincat.presheaf import PresheafCategory

    P = PresheafCategory(site.C)
    if cfg.options.get("presheaf"):
        spec = _load_json(Path(cfg.options["presheaf"]))
        return P, [("input", P.presheaf(spec["sizes"], spec.get("restrict")))]
    limit = cfg.options.get("limit") or 10
    size = cfg.budget if cfg.budget is not None else 3
    found = []
    for X in P.objects(size):
        found.append((f"P{len(found)}", X))
        if len(found) >= limit:
            break
    return P, found


def run_sheafify(cfg: RunConfig) -> list[Record]:
    from algset.sheaves.sheafify import is_sheaf, sheaf_condition, sheafify

    site, stem = _site(cfg, cfg.inputs[0] if cfg.inputs else cfg.options.get("fixture"))
    P, items = _presheaves(cfg, site)
    out = []
    for label, X in items:
        def one(X=X, label=label):
            S, unit = sheafify(site, X, P)
            S2, unit2 = sheafify(site, S, P)
            cond = sheaf_condition(site, S)
            ok = is_sheaf(site, S) and P.is_iso(unit2)
            return Record(f"{stem}:{label}", "pass" if ok else "REFUTED", "pass",
                          {"sizes": list(X.sizes), "sheaf_sizes": list(S.sizes),
                           "unit_iso": P.is_iso(unit), "idempotent": P.is_iso(unit2),
                           "condition_witness": cond},
                          summary=f"{tuple(X.sizes)} -> {tuple(S.sizes)}")

        out.append(_timed(f"{stem}:{label}", one))
    return out


SHEAF_SUITE = ("A1", "A2", "A3", "A4", "A5", "A6", "C", "HB", "US", "BE")


def run_sheaf_suite(cfg: RunConfig) -> list[Record]:
    from algset.fincat.finset import FINSET
    from algset.sheaves.category import sheaf_category
    from algset.smallmaps.axioms import check_axiom
    from algset.smallmaps.verdict import Budget

    site, stem = _site(cfg, cfg.inputs[0] if cfg.inputs else cfg.options.get("fixture") or "two-object")
    base = _map_class(cfg, FINSET)
    b = Budget(max_size=cfg.budget if cfg.budget is not None else 4)
    _, cls = sheaf_category(site, base)
    out = []
    for ax in cfg.options.get("axioms") or SHEAF_SUITE:
        def one(ax=ax):
            v = check_axiom(cls, ax, b)
            return Record(f"{stem}:{ax}", v.outcome.value, "pass", v.to_json(),
                          summary=f"{v.instances} instances")

        out.append(_timed(f"{stem}:{ax}", one))
    return out


# -- ex-complete ----------------------------------------------------------------------

def run_ex_complete(cfg: RunConfig) -> list[Record]:
    from algset.excomp.completion import ex_complete
    from algset.excomp.verify import census, check_bounded_quotients, verify_embedding
    from algset.fincat.finset import FINSET

    if (cfg.options.get("base") or "finset") != "finset":
        raise AlgSetError("only the finite-set base is supported")
    cls = _map_class(cfg, FINSET)
    size = cfg.budget if cfg.budget is not None else 3
    comp = ex_complete(FINSET, cls, ceiling=cfg.ceiling or 50_000)
    out = [Record(f"base:{ax}", outcome, None, {}) for ax, outcome in comp.base_checks.items()]

    def cen():
        c = census(comp, size)
        return Record("census", "INFO", None, {"census": c},
                      summary=", ".join(f"<= {r['bound']}: {r['objects']} objects, "
                                        f"{r['morphisms']} morphisms" for r in c))

    def emb():
        rep = verify_embedding(comp, size)
        return Record("embedding", "pass" if rep.ok else "REFUTED", "pass", rep.to_json(),
                      summary=f"{rep.counts}")

    def quo():
        rep = check_bounded_quotients(comp, min(size, 3), seed=cfg.seed)
        return Record("bounded-quotients", "pass" if rep["ok"] else "REFUTED", "pass", rep,
                      summary=f"{rep['stable']}/{rep['relations']} stable")

    out += [_timed("census", cen), _timed("embedding", emb), _timed("bounded-quotients", quo)]
    return out


COMMANDS: dict[str, Callable[[RunConfig], list[Record]]] = {
    "check-axioms": run_check_axioms,
    "eval": run_eval,
    "build-v": run_build_v,
    "check-set-axiom": run_check_set_axiom,
    "validate-site": run_validate_site,
    "sheafify": run_sheafify,
    "sheaf-suite": run_sheaf_suite,
    "ex-complete": run_ex_complete,
}


def dispatch(config: RunConfig) -> Report:
    if config.command not in COMMANDS:
        raise ValueError(f"unknown command {config.command!r}")
    report = Report(config)
    try:
        report.records = COMMANDS[config.command](config)
    except AlgSetError as exc:
        report.error = str(exc)
    return report


# -- argument parsing ------------------------------------------------------------------

def _sort_arg(text: str) -> tuple[str, int]:
    name, _, size = text.partition("=")
    if not size.isdigit():
        raise argparse.ArgumentTypeError("expected NAME=SIZE")
    return name, int(size)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, help="size bound for enumerated objects")
    common.add_argument("--ceiling", type=int, help="cap on auxiliary searches")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--no-timing", action="store_true", help="omit timings from JSON")
    common.add_argument("--fixtures", type=Path, default=FIXTURES, help="fixture directory")
    common.add_argument("--fixture", help="named fixture inside the fixture directory")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="algset", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"algset {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-axioms", parents=[common], help="run the small-map axiom checks")
    s.add_argument("--class", dest="cls", help="all, mono, even-domain or fibre<k")
    s.add_argument("--class-file", help="JSON class description")
    s.add_argument("--axioms", help="comma-separated axiom names")

    s = sub.add_parser("eval", parents=[common], help="evaluate a formula over finite sets")
    s.add_argument("file", nargs="?", help="JSON formula file")
    s.add_argument("--formula")
    s.add_argument("--sort", action="append", type=_sort_arg, default=[], help="NAME=SIZE")

    s = sub.add_parser("build-v", parents=[common], help="build a truncated cumulative hierarchy")
    s.add_argument("--rank", type=int, default=4)

    s = sub.add_parser("check-set-axiom", parents=[common], help="check set-theoretic axioms in V_n")
    s.add_argument("axioms", nargs="*", help="schema names (default: all)")
    s.add_argument("--rank", type=int)
    s.add_argument("--headroom", type=int)
    s.add_argument("--param", help="parameter formula for a schema")
    s.add_argument("--samples", action="store_true", help="run every sampled parameter")

    s = sub.add_parser("validate-site", parents=[common], help="check coverage axioms of a site")
    s.add_argument("sites", nargs="*", help="site files or fixture names")

    s = sub.add_parser("sheafify", parents=[common], help="sheafify presheaves on a site")
    s.add_argument("site", nargs="?")
    s.add_argument("--presheaf", help="JSON presheaf file")
    s.add_argument("--limit", type=int, help="number of enumerated presheaves")

    s = sub.add_parser("sheaf-suite", parents=[common], help="axiom checks for sheaves on a site")
    s.add_argument("site", nargs="?")
    s.add_argument("--class", dest="cls")
    s.add_argument("--axioms")

    s = sub.add_parser("ex-complete", parents=[common], help="exact completion census and checks")
    s.add_argument("--base", default="finset")
    s.add_argument("--class", dest="cls")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    opts: dict[str, Any] = {"fixture": args.fixture}
    inputs: list[str] = []
    if args.command in ("check-axioms", "sheaf-suite", "ex-complete"):
        opts["class"] = args.cls
        opts["class_file"] = getattr(args, "class_file", None)
        if getattr(args, "axioms", None):
            opts["axioms"] = [a.strip() for a in args.axioms.split(",") if a.strip()]
        if args.command == "sheaf-suite" and args.site:
            inputs = [args.site]
        if args.command == "ex-complete":
            opts["base"] = args.base
    elif args.command == "eval":
        inputs = [args.file] if args.file else []
        opts["formula"] = args.formula
        opts["sorts"] = dict(args.sort)
    elif args.command == "check-set-axiom":
        inputs = list(args.axioms)
        opts["param"] = args.param
        opts["samples"] = args.samples
    elif args.command == "validate-site":
        inputs = list(args.sites)
    elif args.command == "sheafify":
        inputs = [args.site] if args.site else []
        opts["presheaf"] = args.presheaf
        opts["limit"] = args.limit
    for path in inputs:
        if args.command in ("eval",) and not Path(path).exists():
            raise AlgSetError(f"input {path} does not exist")
    return RunConfig(args.command, inputs, args.budget, args.ceiling, getattr(args, "rank", None),
                     getattr(args, "headroom", None), args.json, args.fixtures, args.seed,
                     {k: v for k, v in opts.items() if v not in (None, False, {}, [])})


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (AlgSetError, ValueError) as exc:
        print(f"algset: {exc}", file=sys.stderr)
        return 2
    report = dispatch(cfg)
    print(report.dumps(not args.no_timing) if args.json else report.text())
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
