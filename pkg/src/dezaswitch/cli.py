"""Command-line front end.

Exit codes: 0 success, 1 a verification or task failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional

from . import recipes
from .classify import children, is_strictly_deza, recognize_deza, recognize_srg
from .errors import DezaError, Graph6ParseError, InvalidParameter, NotDeza
from .graph import (
    EmbeddedSubgraph,
    Graph,
    Permutation,
    clebsch_16_10,
    lattice_graph,
    rook_2xm,
    triangular_graph,
)
from .graph6 import from_graph6, to_graph6
from .iso import canonical_form
from .spectra import spectrum
from .switching import (
    SwitchCertificate,
    add_perm_construction,
    chain_gdss2,
    dual_seidel_switch,
    find_seidel_automorphisms,
    gdss_switch,
    perm_shift_construction,
    witness_for,
)

log = logging.getLogger("dezaswitch")

FAMILIES = {
    "lattice": (lattice_graph, 1),
    "triangular": (triangular_graph, 1),
    "clebsch16": (clebsch_16_10, 0),
    "rook2xm": (rook_2xm, 1),
}


class UsageError(Exception):
    pass


def build_family(name: str, params) -> Graph:
    if name not in FAMILIES:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    fn, arity = FAMILIES[name]
    try:
        params = [int(p) for p in params]
    except ValueError as exc:
        raise UsageError(f"bad parameter for {name}: {exc}") from None
    if len(params) != arity:
        raise UsageError(f"family {name} takes {arity} integer parameter(s), got {len(params)}")
    try:
        return fn(*params)
    except InvalidParameter as exc:
        raise UsageError(str(exc)) from None


def _read_graphs(stream) -> list[Graph]:
    return [from_graph6(line) for line in stream.read().split() if line]


def _input_graph(args) -> Graph:
    if args.family:
        return build_family(args.family, args.params or [])
    graphs = _read_graphs(sys.stdin)
    if len(graphs) != 1:
        raise UsageError(f"expected exactly one graph6 line on stdin, got {len(graphs)}")
    return graphs[0]


def _parse_int_list(text: str) -> list[int]:
    text = text.strip().strip("[]")
    return [int(x) for x in text.replace(",", " ").split()]


def _spectrum_json(g: Graph) -> list:
    return [[v if isinstance(v, int) else float(v), m] for v, m in spectrum(g).pairs]


def describe(g: Graph) -> dict:
    """Certified summary of a graph: Deza parameters, spectrum, children, strictness, canonical key."""
    rec: dict = {"graph6": to_graph6(g).decode(), "n": g.n}
    try:
        p = recognize_deza(g)
    except NotDeza as exc:
        rec.update(deza=False, reason=f"{type(exc).__name__}: {exc}")
        p = None
    if p is not None:
        rec.update(deza=True, k=p.k, b=p.b, a=p.a)
    rec["spectrum"] = _spectrum_json(g)
    srg = recognize_srg(g)
    rec["srg"] = list(srg.as_tuple()) if srg else None
    if p is not None and p.b > p.a:
        ch = children(g, p)
        rec["children"] = [_child_json(ch.child_a), _child_json(ch.child_b)]
    else:
        rec["children"] = None
    rec["strict"] = is_strictly_deza(g) if p is not None else False
    rec["canonical"] = canonical_form(g).graph6.decode()
    return rec


def _child_json(h: Graph) -> dict:
    s = recognize_srg(h)
    return {"srg": list(s.as_tuple()) if s else None, "canonical": canonical_form(h).graph6.decode()}


def _cert_json(cert: SwitchCertificate) -> dict:
    return {
        "theorem": cert.theorem,
        "checks": cert.checks,
        "squares": cert.squares,
        "params": list(cert.params.as_tuple()) if cert.params else None,
        "children": [list(c) if c else None for c in cert.children] if cert.children else None,
        "strict": cert.strict,
        "strict_expected": cert.strict_expected,
        "ok": cert.ok,
    }


def cmd_construct(args) -> int:
    g = build_family(args.family, args.params)
    sys.stdout.write(to_graph6(g).decode() + "\n")
    return 0


def cmd_seidel_search(args) -> int:
    g = _input_graph(args)
    for w in find_seidel_automorphisms(g, require_fpf=args.fpf, limit=args.limit):
        print(json.dumps({"image": list(w.perm.image), "fixed_points": list(w.fixed_points),
                          "moved_pairs": [list(p) for p in w.moved_pairs]}))
    return 0


def run_switch(theorem: str, g: Graph, perm: Permutation, subset=None,
               variant: str = "N1") -> tuple[Graph, SwitchCertificate]:
    if theorem == "T1":
        return dual_seidel_switch(g, witness_for(g, perm))
    if theorem in ("T6", "T7"):
        if subset is None:
            raise UsageError("T6/T7 need a vertex subset")
        return gdss_switch(EmbeddedSubgraph(g, tuple(subset)), perm, variant, theorem)
    if theorem == "T8":
        return add_perm_construction(g, witness_for(g, perm, require_fpf=True))
    if theorem == "T9":
        return perm_shift_construction(g, witness_for(g, perm, require_fpf=True))
    raise UsageError(f"unknown theorem tag {theorem!r}")


def cmd_switch(args) -> int:
    g = _input_graph(args)
    perm = Permutation(tuple(_parse_int_list(args.perm)))
    subset = _parse_int_list(args.subset) if args.subset else None
    out, cert = run_switch(args.theorem, g, perm, subset, args.variant)
    sys.stdout.write(to_graph6(out).decode() + "\n")
    if args.certificate:
        sys.stderr.write(json.dumps(_cert_json(cert)) + "\n")
    return 0 if cert.ok else 1


def cmd_verify(args) -> int:
    graphs = _read_graphs(open(args.input) if args.input else sys.stdin)
    ok = True
    for g in graphs:
        rec = describe(g)
        ok &= rec["deza"]
        print(json.dumps(rec))
    return 0 if ok else 1


def cmd_reproduce(args) -> int:
    from .scenarios import run_all

    echo = print if args.verbose else None
    results = run_all(echo)
    if not args.verbose:
        for r in results:
            print(r.verdict())
            if not r.passed:
                for what in r.failures:
                    print(f"  failed: {what}")
            # the headline facts are always printed
            for line in r.lines:
                if "spectrum" in line and "fully certified" not in line or "pairwise" in line:
                    print(line)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} scenarios passed")
    return 0 if passed == len(results) else 1


# ---------------------------------------------------------------- census


def _resolve(spec, default=None):
    """Turn a pipeline value into ints: a literal list, or ``{"recipe": name, "args": [...]}``."""
    if spec is None:
        return default
    if isinstance(spec, list):
        return [int(x) for x in spec]
    if isinstance(spec, dict) and "recipe" in spec:
        fn = getattr(recipes, spec["recipe"], None)
        if fn is None or spec["recipe"].startswith("_"):
            raise UsageError(f"unknown recipe {spec['recipe']!r}")
        out = fn(*spec.get("args", []))
        return list(out.image) if isinstance(out, Permutation) else list(out)
    raise UsageError(f"cannot interpret {spec!r}")


def run_task(task: dict) -> list[tuple[Graph, dict]]:
    """Execute one pipeline task; returns ``(graph, record-without-dedup-fields)`` pairs."""
    g = build_family(task["family"], task.get("params", []))
    construction = task.get("construction", "none")
    inputs = {k: task[k] for k in ("family", "params", "subset", "witness", "variant") if k in task}
    if construction == "none":
        return [(g, {"construction": "none", "inputs": inputs})]
    if construction == "chain":
        m = int(task.get("params", [0])[0])
        return [(out, {"construction": "chain", "inputs": {**inputs, "step": i}, "certificate": _cert_json(cert)})
                for i, (out, cert) in enumerate(chain_gdss2(g, m))]
    subset = _resolve(task.get("subset"))
    witness = task.get("witness")
    if witness == "search":
        target = g if subset is None else g.induced(subset)
        fpf = construction in ("T8", "T9")
        found = find_seidel_automorphisms(target, require_fpf=fpf, limit=int(task.get("index", 0)) + 1)
        if len(found) <= int(task.get("index", 0)):
            raise DezaError("no Seidel automorphism found by search")
        perm = found[int(task.get("index", 0))].perm
    else:
        perm = Permutation(tuple(_resolve(witness)))
    inputs["perm"] = list(perm.image)
    out, cert = run_switch(construction, g, perm, subset, task.get("variant", "N1"))
    return [(out, {"construction": construction, "inputs": inputs, "certificate": _cert_json(cert)})]


def census_record(g: Graph, base: dict) -> dict:
    d = describe(g)
    return {
        "construction": base["construction"],
        "inputs": base["inputs"],
        "graph6": d["graph6"],
        "n": d["n"],
        "k": d.get("k"),
        "b": d.get("b"),
        "a": d.get("a"),
        "spectrum": d["spectrum"],
        "children": d["children"],
        "strict": d["strict"],
        "canonical": d["canonical"],
        "certificate": base.get("certificate"),
    }


def _existing_keys(path: Path) -> set[str]:
    keys = set()
    if path.exists():
        for line in path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                rec = json.loads(line)
                if "canonical" in rec:
                    keys.add(rec["canonical"])
    return keys


def run_census(pipeline: Path, out: Path) -> tuple[int, int, int]:
    """Append new records for every task in ``pipeline``; returns (added, duplicates, errors)."""
    text = pipeline.read_text(encoding="utf-8")
    tasks = [json.loads(line) for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    keys = _existing_keys(out)
    added = dupes = errors = 0
    with out.open("a", encoding="utf-8") as fh:
        for i, task in enumerate(tasks):
            try:
                results = run_task(task)
            except (DezaError, UsageError, KeyError, ValueError, TypeError) as exc:
                errors += 1
                fh.write(json.dumps({"error": f"{type(exc).__name__}: {exc}", "task_index": i, "task": task}) + "\n")
                log.error("task %d failed: %s", i, exc)
                continue
            for g, base in results:
                rec = census_record(g, base)
                if rec["canonical"] in keys:
                    dupes += 1
                    log.info("task %d: duplicate of an existing record, skipped", i)
                    continue
                keys.add(rec["canonical"])
                fh.write(json.dumps(rec) + "\n")
                added += 1
    return added, dupes, errors


def cmd_census(args) -> int:
    pipeline = Path(args.pipeline)
    try:
        added, dupes, errors = run_census(pipeline, Path(args.out))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read pipeline: {exc}", file=sys.stderr)
        return 2
    print(f"added {added}, duplicates skipped {dupes}, errors {errors}", file=sys.stderr)
    return 1 if errors else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dezaswitch", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="print a graph family member as graph6")
    p.add_argument("family", help=", ".join(FAMILIES))
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_construct)

    def graph_source(p):
        p.add_argument("--family", help="build the input graph instead of reading graph6 from stdin")
        p.add_argument("--params", nargs="*", default=[])

    p = sub.add_parser("seidel-search", help="list Seidel automorphisms as JSON lines")
    graph_source(p)
    p.add_argument("--fpf", action="store_true", help="fixed-point-free only")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_seidel_search)

    p = sub.add_parser("switch", help="apply a switching construction, print the result as graph6")
    graph_source(p)
    p.add_argument("--theorem", required=True, choices=["T1", "T6", "T7", "T8", "T9"])
    p.add_argument("--perm", required=True, help="permutation image list, e.g. '0 3 6 1 4 7 2 5 8'")
    p.add_argument("--subset", help="induced subgraph vertices for T6/T7, in block order")
    p.add_argument("--variant", choices=["N1", "N2"], default="N1")
    p.add_argument("--certificate", action="store_true", help="write the certificate as JSON to stderr")
    p.set_defaults(func=cmd_switch)

    p = sub.add_parser("verify", help="classify graph6 graphs, one JSON record per graph")
    p.add_argument("input", nargs="?", help="graph6 file (default stdin)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce-paper", help="run every verification scenario")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("census", help="run a pipeline file and append deduplicated records")
    p.add_argument("pipeline", help="JSON-lines task file")
    p.add_argument("--out", required=True, help="census file (appended to)")
    p.set_defaults(func=cmd_census)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, Graph6ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DezaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
