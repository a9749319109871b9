from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from .biorder import BiorderedSet, check_axioms, is_regular
from .crossconn import CrossConnection, validate_crossconnection
from .documents import canonical_json, dump, read_document
from .echain import chain_fragment, chain_groupoid
from .equivalence import Workspace, build_catalog, fixture_functors, roundtrip_report
from .errors import ClosureBoundExceeded, CrossigError, InvalidInput
from .fixtures import idempotent_biorder, principal_categories, trace_groupoid
from .functor_ci import build_gamma
from .functor_ic import build_ig
from .groupoid import check_ordered_groupoid
from .inductive import InductiveGroupoid, check_inductive
from .normcat import SubobjectCategory, check_normal_category
from .report import Report
from .semigroup import ACCEPTANCE_FIXTURES, DEFAULT_MAX_SIZE, FiniteSemigroup, builtin


def _section(report: Report) -> dict:
    out = report.to_dict()
    out["verdict"] = "pass" if report.ok else "fail"
    return out


def _verdict(sections: dict) -> str:
    return "pass" if all(s.get("verdict") == "pass" for s in sections.values()) else "fail"


def fixture_label(name: str, params) -> str:
    return f"{name}({','.join(str(p) for p in params)})" if params else name


def load_input(args):
    if args.fixture:
        name, params = args.fixture[0], tuple(int(p) for p in args.fixture[1:])
        return builtin(name, params, max_size=args.max_size), fixture_label(name, params)
    if args.input:
        return read_document(args.input), args.input
    raise InvalidInput("give --input PATH or --fixture NAME [PARAMS...]")


# validate -------------------------------------------------------------------------


def validate_biorder(E: BiorderedSet, closure_cap=None) -> dict:
    sections = {"axioms": _section(check_axioms(E))}
    if sections["axioms"]["verdict"] != "pass":
        return sections
    regular = Report()
    if not is_regular(E):
        empty = next((e, f) for e in range(E.n) for f in range(E.n) if not E.sandwich(e, f))
        regular.add("regular", empty, "empty sandwich set")
    sections["regular"] = _section(regular)
    try:
        g = chain_groupoid(E, closure_cap)
        closed = True
    except ClosureBoundExceeded:
        g = chain_fragment(E)
        closed = False
    chains = check_ordered_groupoid(g)
    chains.stats["closed"] = closed
    sections["chain_groupoid"] = _section(chains)
    return sections


def validate_semigroup(S: FiniteSemigroup, closure_cap=None) -> dict:
    regular = Report()
    witness = S.regularity_witness()
    if witness is not None:
        regular.add("regular", witness, "element has no b with aba = a")
        return {"regular": _section(regular)}
    sections = {"regular": _section(regular)}
    E = idempotent_biorder(S)
    for key, value in validate_biorder(E, closure_cap).items():
        sections["biorder:" + key] = value
    sections["trace_groupoid"] = _section(check_inductive(trace_groupoid(S, E)))
    L_S, R_S = principal_categories(S)
    sections["L_S"] = _section(check_normal_category(L_S))
    sections["R_S"] = _section(check_normal_category(R_S))
    return sections


def validate_any(obj, closure_cap=None) -> dict:
    if isinstance(obj, FiniteSemigroup):
        return validate_semigroup(obj, closure_cap)
    if isinstance(obj, BiorderedSet):
        return validate_biorder(obj, closure_cap)
    if isinstance(obj, InductiveGroupoid):
        return {"inductive": _section(check_inductive(obj))}
    if isinstance(obj, SubobjectCategory):
        return {"normal_category": _section(check_normal_category(obj))}
    if isinstance(obj, CrossConnection):
        return {"cross_connection": _section(validate_crossconnection(obj))}
    raise InvalidInput(f"cannot validate {type(obj).__name__}")


# build ------------------------------------------------------------------------------


def _as_groupoid(obj) -> InductiveGroupoid:
    if isinstance(obj, FiniteSemigroup):
        return trace_groupoid(obj)
    if isinstance(obj, InductiveGroupoid):
        return obj
    raise InvalidInput(f"expected a semigroup or inductive groupoid, got {type(obj).__name__}")


def build_cc(obj) -> dict:
    data = build_gamma(_as_groupoid(obj))
    out = dump(data.x)
    out["canonical"] = {"L": data.L.to_dict()["triples"], "R": data.R.to_dict()["triples"]}
    out["source"] = data.ig.name
    return out


def build_ig_document(obj) -> dict:
    if not isinstance(obj, CrossConnection):
        obj = build_gamma(_as_groupoid(obj)).x
    ig = build_ig(obj)
    return dump(ig)


# roundtrip ----------------------------------------------------------------------------


def roundtrip_fixture(name: str, params=(), max_size: int = DEFAULT_MAX_SIZE) -> dict:
    """Round trip on a builtin with functors to and from every acceptance fixture."""
    S = builtin(name, tuple(params), max_size=max_size)
    pool = [builtin(n, p) for n, p in ACCEPTANCE_FIXTURES]
    pool = [T for T in pool if T.name != S.name] + [S]
    catalog = build_catalog(pool)
    functors = fixture_functors(catalog, S.name)
    return roundtrip_report(catalog[S.name][1], functors, Workspace())


def roundtrip_any(obj, max_size: int = DEFAULT_MAX_SIZE) -> dict:
    if isinstance(obj, FiniteSemigroup):
        catalog = build_catalog([obj])
        return roundtrip_report(catalog[obj.name][1], fixture_functors(catalog, obj.name), Workspace())
    return roundtrip_report(obj)


def _fixture_job(item):
    name, params, max_size = item
    return fixture_label(name, params), roundtrip_fixture(name, params, max_size)


# text output ------------------------------------------------------------------------------


def as_text(doc: dict) -> str:
    lines = [f"{doc.get('command', '')} {doc.get('input', '')}: {doc.get('verdict', '')}".strip()]
    for key, section in sorted(doc.get("sections", {}).items()):
        verdict = section.get("verdict", "")
        first = section.get("violations") or []
        detail = f"  first: {first[0]['check']} {first[0]['witness']}" if first else ""
        lines.append(f"  {key}: {verdict}{detail}")
    return "\n".join(lines) + "\n"


def emit(doc: dict, args) -> None:
    text = as_text(doc) if args.format == "text" else canonical_json(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# main --------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crossig", description="Inductive groupoids and cross-connections of finite regular semigroups")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="structure JSON (semigroup, biorder, inductive_groupoid, category, cross_connection)")
    common.add_argument("--fixture", nargs="+", metavar="NAME_OR_PARAM", help="builtin semigroup, e.g. full_transformation 2")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--closure-cap", type=int, default=None, help="bound on chain-groupoid closure")
    common.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE, help="size cap for builtin semigroups")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for fixture suites")
    common.add_argument("--format", choices=["json", "text"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="axiom report for any structure")
    build = sub.add_parser("build", parents=[common], help="apply the construction I (ig) or C (cc)")
    build.add_argument("target", choices=["ig", "cc"])
    roundtrip = sub.add_parser("roundtrip", parents=[common], help="both round trips with naturality squares")
    roundtrip.add_argument("--all-fixtures", action="store_true", help="run every acceptance fixture")
    sub.add_parser("fixtures", parents=[common], help="emit builtin Cayley tables")
    return parser


def run(args) -> int:
    for flag in ("closure_cap", "max_size", "jobs"):
        value = getattr(args, flag)
        if value is not None and value <= 0:
            raise InvalidInput(f"--{flag.replace('_', '-')} must be positive")
    if args.command == "fixtures":
        if args.fixture:
            S, label = load_input(args)
            tables = {label: dump(S)}
        else:
            tables = {fixture_label(n, p): dump(builtin(n, p)) for n, p in ACCEPTANCE_FIXTURES}
        emit({"command": "fixtures", "fixtures": tables}, args)
        return 0
    if args.command == "roundtrip" and args.all_fixtures:
        items = [(n, p, args.max_size) for n, p in ACCEPTANCE_FIXTURES]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = dict(pool.map(_fixture_job, items))
        else:
            results = dict(_fixture_job(item) for item in items)
        sections = {label: {"verdict": r["verdict"], "ig_side": r.get("ig_side"), "cr_side": r.get("cr_side")}
                    for label, r in results.items()}
        doc = {"command": "roundtrip", "input": "acceptance fixtures", "sections": sections,
               "verdict": _verdict(sections)}
        emit(doc, args)
        return 0 if doc["verdict"] == "pass" else 1
    obj, label = load_input(args)
    if args.command == "validate":
        sections = validate_any(obj, args.closure_cap)
        doc = {"command": "validate", "input": label, "sections": sections, "verdict": _verdict(sections)}
    elif args.command == "build":
        result = build_cc(obj) if args.target == "cc" else build_ig_document(obj)
        doc = {"command": f"build {args.target}", "input": label, "result": result, "verdict": "pass"}
    else:
        if args.fixture:
            result = roundtrip_fixture(args.fixture[0], [int(p) for p in args.fixture[1:]], args.max_size)
        else:
            result = roundtrip_any(obj, args.max_size)
        sections = {k: v for k, v in result.items() if k != "verdict"}
        doc = {"command": "roundtrip", "input": label, "sections": sections, "verdict": result["verdict"]}
    emit(doc, args)
    return 0 if doc["verdict"] == "pass" else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except CrossigError as exc:
        sys.stdout.write(canonical_json(exc.to_dict()))
        return 2
    except OSError as exc:
        sys.stdout.write(canonical_json({"error": "IOError", "message": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
