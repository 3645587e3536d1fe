"""Command-line front end: ``grpdtest <command> [options]``.

Exit codes: 0 every result Yes/pass, 1 some No/fail, 2 some Unknown and no
No, 3 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import __version__, adjoints, corpus, elements, fincat, grpd, homology, io, testcat
from .errors import GrpdTestError, NotStronglySeparating, ParseError, SizeExceeded, ValidationError
from .fincat import DEFAULT_CAP, FinCategory, FinFunctor
from .generators import thomason_instances
from .presheaf import CatPresheaf, Interval, MultiplicativeInterval, PresheafMorphism, identity_morphism
from .verdict import Verdict

SCHEMA = "grpdtest.report/1"
EXIT = {"Yes": 0, "pass": 0, "No": 1, "fail": 1, "Unknown": 2}


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    localizer: str = "w1"
    budget: int = grpd.DEFAULT_BUDGET
    cap: int = DEFAULT_CAP
    dim: int = 3
    catalog: str | None = None
    target: str | None = None
    obj: str | None = None
    discrete: bool = False
    count: int = 0
    seed: int = 0
    output: str | None = None
    fmt: str = "structured"

    def __post_init__(self):
        if self.budget <= 0 or self.cap <= 0 or self.dim < 1 or self.count < 0:
            raise ValueError("budgets must be positive")

    @property
    def loc(self) -> homology.LocalizerSpec:
        return homology.LocalizerSpec(self.localizer, self.budget, self.dim, min(self.cap, 20_000))

    def to_dict(self) -> dict:
        return {"command": self.command, "localizer": self.localizer, "budget": self.budget, "cap": self.cap,
                "dim": self.dim, "catalog": self.catalog, "target": self.target, "object": self.obj,
                "discrete": self.discrete, "count": self.count, "seed": self.seed}


# -- inputs ----------------------------------------------------------------------------


def _read(ref: str) -> str:
    if ref.startswith("corpus:"):
        return corpus.text(ref[len("corpus:"):])
    p = Path(ref)
    if not p.is_file():
        raise FileNotFoundError(f"no such input file: {ref}")
    return p.read_text()


def _digest(ref: str) -> dict:
    return {"ref": ref, "sha256": hashlib.sha256(_read(ref).encode()).hexdigest()}


def _load(ref: str) -> Any:
    return io.loads(_read(ref))


def _expect(value: Any, types, what: str):
    if not isinstance(value, types):
        raise ValidationError(f"expected {what}, got {io.kind_of(value)}")
    return value


def _category(ref: str) -> FinCategory:
    return _expect(_load(ref), FinCategory, "a category")


def _target(cfg: RunConfig) -> FinCategory:
    if not cfg.target:
        raise ValidationError("this command needs --target")
    ref = cfg.target if cfg.target.startswith("corpus:") or Path(cfg.target).exists() else f"corpus:{cfg.target}"
    return _category(ref)


def _catalog(cfg: RunConfig) -> list[tuple[str, FinCategory]] | None:
    if cfg.catalog is None:
        return None
    raw = json.loads(_read(cfg.catalog))
    if not isinstance(raw, list):
        raise ParseError("a catalog is a list of category documents or corpus names", field="catalog")
    out = []
    for n, item in enumerate(raw):
        if isinstance(item, str):
            out.append((item, corpus.load_category(item)))
        else:
            C = io.category_from_body(item.get("body", item), f"catalog[{n}]")
            out.append((C.name or f"entry{n}", C))
    return out


def _diagram(value: Any) -> adjoints.CatDiagram:
    if isinstance(value, FinCategory):
        return adjoints.slice_diagram(value)
    return _expect(value, adjoints.CatDiagram, "a category or diagram")


def _verdict(check: str, v: Verdict, **extra) -> dict:
    return {"check": check, "status": v.answer.value, "evidence": v.evidence, **extra}


def _flag(check: str, ok: bool, **extra) -> dict:
    return {"check": check, "status": "pass" if ok else "fail", **extra}


# -- commands ------------------------------------------------------------------------------


def cmd_validate(cfg):
    v = _load(cfg.inputs[0])
    kind = io.kind_of(v)
    summary: dict[str, Any] = {"kind": kind}
    if isinstance(v, FinCategory):
        summary.update(objects=len(v.objects), morphisms=len(v.morphisms))
    elif isinstance(v, CatPresheaf):
        summary.update(type=v.kind, base=v.base.name, sizes={a: len(v.value(a).objects) for a in v.base.objects})
    return [_flag("validate", True, **summary)]


def _elements_result(cfg, grothendieck: bool):
    X = _expect(_load(cfg.inputs[0]), CatPresheaf, "a presheaf")
    E = elements.grothendieck(X) if grothendieck else elements.elements(X)
    fib = fincat.is_grothendieck_fibration(E.zeta)
    return [_flag("zeta_is_fibration", fib.is_fibration, category=io.to_document(E.total), index=E.sidecar())]


def cmd_elements(cfg):
    return _elements_result(cfg, False)


def cmd_grothendieck(cfg):
    return _elements_result(cfg, True)


def cmd_nerve(cfg):
    N = homology.nerve(_category(cfg.inputs[0]), cfg.dim)
    cc = homology.chain_complex(N)
    return [_flag("nerve", cc.is_complex(), text=f"sizes {N.sizes()}", sizes=N.sizes(), simplices=[[list(s) for s in deg] for deg in N.simplices])]


def cmd_homology(cfg):
    C = _category(cfg.inputs[0])
    H = homology.homology(C, cfg.dim)
    ok = H[0].betti == len(fincat.connected_components(C))
    return [_flag("homology", ok, groups=H.to_dict(), text=str(H), bound=cfg.dim)]


def cmd_pi1(cfg):
    G = grpd.localize(_category(cfg.inputs[0]))
    comps = [{"base": c.base, "vertex_group": grpd.vertex_group(G, n).to_dict(),
              "abelianization": grpd.abelianization(grpd.vertex_group(G, n)).to_dict()}
             for n, c in enumerate(G.components)]
    text = "; ".join(f"{c['base']}: {grpd.vertex_group(G, n)} ab {c['abelianization']['text']}"
                     for n, c in enumerate(comps))
    return [_flag("pi1", True, text=text, groupoid=G.to_dict(), components=comps)]


def cmd_w1(cfg):
    v = _load(cfg.inputs[0])
    u = fincat.to_terminal(v) if isinstance(v, FinCategory) else _expect(v, FinFunctor, "a category or functor")
    return [_verdict("w1", grpd.w1_class(u, cfg.budget))]


def cmd_istar(cfg):
    i = _diagram(_load(cfg.inputs[0]))
    X = adjoints.I_star(i, _target(cfg), discrete=cfg.discrete, cap=cfg.cap)
    return [_flag("istar", True, presheaf=io.to_document(X))]


def cmd_counit(cfg):
    i = _diagram(_load(cfg.inputs[0]))
    alpha = adjoints.counit_alpha(i, _target(cfg))
    return [_flag("counit", True, objects=dict(alpha.omap), morphisms=dict(alpha.mmap))]


def cmd_transpose(cfg):
    X = _expect(_load(cfg.inputs[0]), CatPresheaf, "a presheaf")
    r = adjoints.adjunction_transpose(X, _target(cfg), cap=cfg.cap)
    return [_flag("adjunction", r.ok, **r.to_dict())]


def _interval(cfg):
    v = _expect(_load(cfg.inputs[0]), (Interval, MultiplicativeInterval), "an interval")
    return (v.interval, v) if isinstance(v, MultiplicativeInterval) else (v, None)


def cmd_sieve(cfg):
    I, _ = _interval(cfg)
    try:
        r = adjoints.sieve_classifier(I, cap=cfg.cap)
    except NotStronglySeparating as exc:
        return [_flag("sieve", False, reason=str(exc))]
    return [_flag("sieve", r.squares_commute and r.interval_morphism, zero_set=r.zero_set,
                  squares_commute=r.squares_commute, interval_morphism=r.interval_morphism)]


def cmd_check_aspherical(cfg):
    return [_verdict("aspherical", homology.is_aspherical(_category(cfg.inputs[0]), cfg.loc))]


def cmd_check_morphism(cfg):
    u = _expect(_load(cfg.inputs[0]), FinFunctor, "a functor")
    return [_verdict("aspherical_morphism", homology.is_aspherical_morphism(u, cfg.loc))]


def cmd_check_hierarchy(cfg):
    r = testcat.check_hierarchy(_category(cfg.inputs[0]), cfg.loc, catalog=_catalog(cfg), cap=cfg.cap)
    out = [_verdict(k, v) for k, v in r.verdicts().items()]
    out.append(_flag("cross_check_istar", r.cross_check))
    out.append(_flag("local_test_paths_agree", r.local_test.answer == r.local_test_classical.answer))
    out.append(_flag("implications", r.implications_hold()))
    return out


def cmd_check_weak_test(cfg):
    v = testcat.weak_test_evidence(_category(cfg.inputs[0]), _catalog(cfg), cfg.loc, cap=cfg.cap)
    return [_verdict("weak_test_evidence", v)]


def cmd_check_interval(cfg):
    I, L = _interval(cfg)
    sep = testcat.is_strongly_separating(I)
    out = [_flag("strongly_separating", sep.separating, witness=list(sep.witness) if sep.witness else None)]
    if L is not None:
        m = testcat.verify_multiplicative(L)
        out.append(_flag("multiplicative", m.ok, failing=m.failing, at=m.at))
    return out


def cmd_check_iso_suite(cfg):
    X = _expect(_load(cfg.inputs[0]), CatPresheaf, "a presheaf")
    objs = [cfg.obj] if cfg.obj else list(X.base.objects)
    out = []
    for a in objs:
        r = testcat.canonical_iso_suite(X.base, X, a)
        out.append(_flag(f"iso_suite[{a}]", r.ok, **r.to_dict()))
    return out


def cmd_check_thomason(cfg):
    out = []
    if cfg.inputs:
        v = _load(cfg.inputs[0])
        phi = identity_morphism(v) if isinstance(v, CatPresheaf) else _expect(v, PresheafMorphism, "a presheaf morphism")
        r = homology.thomason_check(phi, cfg.loc)
        out.append(_flag("thomason", r.consistent, **r.to_dict()))
    for inst in thomason_instances(cfg.count, cfg.seed):
        r = homology.thomason_check(inst.phi, cfg.loc)
        out.append(_flag("thomason", r.consistent, instance=inst.label,
                         pointwise=sorted({v.answer.value for v in r.pointwise.values()}), total=r.total.answer.value))
    return out


COMMANDS: dict[str, Callable[[RunConfig], list[dict]]] = {
    "validate": cmd_validate,
    "elements": cmd_elements,
    "grothendieck": cmd_grothendieck,
    "nerve": cmd_nerve,
    "homology": cmd_homology,
    "pi1": cmd_pi1,
    "w1": cmd_w1,
    "istar": cmd_istar,
    "counit": cmd_counit,
    "transpose": cmd_transpose,
    "sieve": cmd_sieve,
    "check aspherical": cmd_check_aspherical,
    "check morphism": cmd_check_morphism,
    "check hierarchy": cmd_check_hierarchy,
    "check weak-test": cmd_check_weak_test,
    "check interval": cmd_check_interval,
    "check iso-suite": cmd_check_iso_suite,
    "check thomason": cmd_check_thomason,
}
CHECKS = ("aspherical", "morphism", "hierarchy", "weak-test", "interval", "iso-suite", "thomason")


# -- dispatch and reports --------------------------------------------------------------------


def overall(results: list[dict]) -> str:
    statuses = {r["status"] for r in results}
    if statuses & {"No", "fail"}:
        return "No"
    if "Unknown" in statuses:
        return "Unknown"
    return "Yes"


def dispatch(cfg: RunConfig) -> tuple[dict, int]:
    report: dict[str, Any] = {"schema": SCHEMA, "tool_version": __version__, "config": cfg.to_dict()}
    start = time.perf_counter()
    try:
        report["inputs"] = [_digest(ref) for ref in cfg.inputs]
        if not cfg.inputs and cfg.command != "check thomason":
            raise ValidationError("this command needs --input")
        results = COMMANDS[cfg.command](cfg)
        status = overall(results)
        report.update(results=results, status=status)
        code = EXIT[status]
    except SizeExceeded as exc:
        report.update(results=[], status="Unknown", error=f"size limit exceeded: {exc}")
        code = 2
    except (GrpdTestError, FileNotFoundError, KeyError, ValueError) as exc:
        report.update(results=[], status="error", error=f"{type(exc).__name__}: {exc}")
        code = 3
    report["exit_code"] = code
    report["timings"] = {"elapsed_s": round(time.perf_counter() - start, 6)}
    return report, code


def strip_timings(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timings"}


def render(report: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    lines = [f"{report['config']['command']}: {report['status']} (exit {report['exit_code']})"]
    if "error" in report:
        lines.append(f"  error: {report['error']}")
    for r in report.get("results", []):
        detail = r.get("text") or r.get("instance") or ""
        reason = r.get("evidence", {}).get("reason") if isinstance(r.get("evidence"), dict) else None
        lines.append(f"  {r['check']}: {r['status']}" + (f"  {detail}" if detail else "")
                     + (f"  ({reason})" if reason else ""))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", default=[], metavar="PATH",
                        help="document path or corpus:NAME")
    common.add_argument("--localizer", choices=("w1", "winf"), default="w1")
    common.add_argument("--budget", type=int, default=grpd.DEFAULT_BUDGET, help="coset enumeration steps")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration candidate cap")
    common.add_argument("--dim", type=int, default=3, help="homology degree bound")
    common.add_argument("--catalog", metavar="PATH", help="JSON list of categories for weak-test evidence")
    common.add_argument("--target", help="target category: path or corpus name")
    common.add_argument("--object", dest="obj", help="base object for iso-suite")
    common.add_argument("--discrete", action="store_true", help="istar: Set-valued i* instead of I*")
    common.add_argument("--count", type=int, default=0, help="thomason: number of random instances")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--format", dest="fmt", choices=("text", "structured"), default="structured")

    parser = argparse.ArgumentParser(prog="grpdtest", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        if not name.startswith("check "):
            sub.add_parser(name, parents=[common])
    check = sub.add_parser("check")
    checks = check.add_subparsers(dest="check", required=True)
    for name in CHECKS:
        checks.add_parser(name, parents=[common])
    sub.add_parser("corpus", help="list the built-in corpus")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 3 if exc.code else 0
    if args.command == "corpus":
        print("\n".join(corpus.names()))
        return 0
    command = f"check {args.check}" if args.command == "check" else args.command
    try:
        cfg = RunConfig(command, args.input, args.localizer, args.budget, args.cap, args.dim, args.catalog,
                        args.target, args.obj, args.discrete, args.count, args.seed, args.output, args.fmt)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    report, code = dispatch(cfg)
    text = render(report, cfg.fmt)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
