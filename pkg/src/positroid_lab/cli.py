"""Command-line surface.

Exit codes: 0 success (and verification pass), 1 verification failure,
2 usage errors (malformed or disconnected permutations, exceeded budgets).
"""

from __future__ import annotations

import argparse
import os
import sys

from .cyclic import InvalidInputError
from .necklace import Permutation, necklace_from_permutation, interior_size
from .collection import WSCollection, initial_maximal_collection, tiling
from .graphs import (
    BudgetExceededError,
    canonical_certificate,
    cconstant_graph,
    exchange_graph,
)
from .symmetry import decomposition_set, is_prime, orbit
from . import cache, catalog, classify, serialize


def _perm(text: str) -> Permutation:
    return Permutation.from_string(text)


def _cmd_necklace(args) -> int:
    necklace = necklace_from_permutation(_perm(args.permutation))
    sys.stdout.write(serialize.emit_json(serialize.necklace_document(necklace)))
    return 0


def _cmd_perm(args) -> int:
    text = args.necklace
    if not text.strip().startswith("{") and os.path.exists(text):
        with open(text, encoding="utf-8") as f:
            text = f.read()
    necklace = serialize.parse_necklace_argument(text)
    sys.stdout.write(str(necklace.permutation) + "\n")
    return 0


def _exchange_document(perm: Permutation, budget: int) -> dict:
    key = f"exchange/v{serialize.FORMAT_VERSION}/{perm}/{budget}"
    hit = cache.cache_get(key)
    if hit is not None:
        return hit.value
    graph = exchange_graph(necklace_from_permutation(perm), budget=budget)
    doc = serialize.graph_document(graph)
    doc["certificate"] = canonical_certificate(graph).hex()
    cache.cache_put(key, doc)
    return doc


def _cmd_enumerate(args) -> int:
    perm = _perm(args.permutation)
    doc = _exchange_document(perm, args.budget)
    if args.dot:
        graph = exchange_graph(necklace_from_permutation(perm), budget=args.budget)
        sys.stdout.write(serialize.emit_dot(graph))
    else:
        sys.stdout.write(serialize.emit_json(doc))
    return 0


def _cmd_tiling(args) -> int:
    perm = _perm(args.permutation)
    necklace = necklace_from_permutation(perm)
    if args.collection:
        graph = exchange_graph(necklace, budget=args.budget)
        if not 0 <= args.collection < graph.order:
            raise InvalidInputError(
                f"collection index {args.collection} out of range 0..{graph.order - 1}"
            )
        coll = WSCollection(necklace, graph.vertices[args.collection])
    else:
        coll = initial_maximal_collection(necklace)
    t = tiling(coll)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as f:
            f.write(serialize.emit_svg(t))
    if args.png:
        from . import figures

        figures.save_tiling_figure(t, args.png, title=str(perm))
    if not args.svg and not args.png:
        sys.stdout.write(serialize.emit_svg(t))
    return 0


def _cmd_equiv(args) -> int:
    cls = orbit(_perm(args.permutation))
    doc = {
        "canonical": str(cls.canonical),
        "orbitSize": cls.size,
        "members": [str(p) for p in cls.members()],
    }
    sys.stdout.write(serialize.emit_json(doc))
    return 0


def _cmd_decompose(args) -> int:
    perm = _perm(args.permutation)
    necklace = necklace_from_permutation(perm)
    dec = decomposition_set(necklace)
    doc = {
        "permutation": str(perm),
        "interiorSize": interior_size(perm),
        "prime": dec.is_prime,
        "chords": [[list(a.elements()), list(b.elements())] for a, b in dec.chords],
        "parts": [[list(s.elements()) for s in part] for part in dec.parts],
        "partInteriors": list(dec.part_interiors) if dec.part_interiors else None,
    }
    sys.stdout.write(serialize.emit_json(doc))
    return 0


def _cmd_classify(args) -> int:
    if args.interior >= 4 and not args.full_sweep:
        rows = classify.rows_by_interior(args.interior)[args.interior]
    else:
        rows = classify.classify_prime_vmf(
            args.interior, jobs=args.jobs, experimental=args.experimental
        )
    csv_text = serialize.emit_csv(rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as f:
            f.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.json or args.figures:
        table = classify.compose_table(
            args.interior, full_sweep=args.full_sweep, jobs=args.jobs
        )
        max_order = max(o for o, _ in table[args.interior]["products"].values())
        report = {
            "interior": args.interior,
            "classes": [r.as_dict() for r in rows],
            "catalanMax": max_order,
            "pass": max_order == catalog.CATALAN[args.interior + 1],
        }
        if args.json:
            with open(args.json, "w", encoding="utf-8") as f:
                f.write(serialize.emit_json(report))
    if args.figures:
        from . import figures

        figures.save_classification_figures(
            rows, lambda row: classify._graph_for_canonical(row.canonical), args.figures
        )
    return 0


def _cmd_cconstant(args) -> int:
    perm = _perm(args.permutation)
    necklace = necklace_from_permutation(perm)
    coll = initial_maximal_collection(necklace)
    drop = serialize.parse_set_list(args.drop, necklace.n)
    missing = [m for m in drop if m not in coll.mask_set]
    if missing:
        raise InvalidInputError("dropped sets must belong to the initial collection")
    constant = frozenset(coll.sets) - set(drop)
    graph = exchange_graph(necklace, budget=args.budget)
    sub = cconstant_graph(necklace, constant, graph=graph)
    doc = serialize.graph_document(sub)
    doc["codimension"] = len(coll.sets) - len(constant)
    sys.stdout.write(serialize.emit_json(doc))
    return 0


def _cmd_verify(args) -> int:
    i_max = args.interior_max
    if args.what == "tables":
        table = classify.compose_table(i_max, full_sweep=args.full_sweep, jobs=args.jobs)
        orders_pass = all(table[i]["pass"] for i in table)
        creport = classify.verify_cconstant_tables(codim_max=min(3, i_max))
        report = {
            "check": "tables",
            "orders": {i: list(table[i]["orders"]) for i in table},
            "ordersPass": orders_pass,
            "cconstant": {
                "checked": creport["checked"],
                "violations": creport["violations"],
            },
            "pass": orders_pass and creport["pass"],
        }
    elif args.what == "catalan":
        result = classify.verify_catalan(i_max, full_sweep=args.full_sweep, jobs=args.jobs)
        report = {"check": "catalan", **result}
    elif args.what == "theorems":
        result = classify.verify_tree_cycle_theorems(
            i_max, full_sweep=args.full_sweep, jobs=args.jobs
        )
        report = {"check": "theorems", **result}
    else:
        raise InvalidInputError(f"unknown verification {args.what!r}")
    sys.stdout.write(serialize.emit_json(report))
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="positroid-lab",
        description="Enumerate and classify mutation graphs of weakly separated collections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("necklace", help="boundary data of a permutation")
    p.add_argument("permutation")
    p.set_defaults(func=_cmd_necklace)

    p = sub.add_parser("perm", help="permutation of a necklace document")
    p.add_argument("necklace", help="JSON text or a path to it")
    p.set_defaults(func=_cmd_perm)

    p = sub.add_parser("enumerate", help="exchange graph of a permutation")
    p.add_argument("permutation")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    p.add_argument("--json", action="store_true", help="emit JSON (default)")
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("tiling", help="tiling of one maximal collection")
    p.add_argument("permutation")
    p.add_argument("--collection", type=int, default=0, help="vertex index in the exchange graph")
    p.add_argument("--svg", help="write SVG here")
    p.add_argument("--png", help="write a PNG rendering here")
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=_cmd_tiling)

    p = sub.add_parser("equiv", help="equivalence class of a permutation")
    p.add_argument("permutation")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("decompose", help="chord decomposition of the boundary")
    p.add_argument("permutation")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("classify", help="prime very-mutation-friendly classes")
    p.add_argument("--interior", type=int, required=True)
    p.add_argument("--full-sweep", action="store_true", help="sweep interior 4 exhaustively")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--experimental", action="store_true", help="allow interior sizes above 4")
    p.add_argument("--csv", help="write the row table here instead of stdout")
    p.add_argument("--json", help="write the JSON report here")
    p.add_argument("--figures", help="directory for one PNG per class")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("cconstant", help="induced subgraph fixing some sets")
    p.add_argument("permutation")
    p.add_argument("--drop", required=True, help="comma-separated sets to unfix")
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=_cmd_cconstant)

    p = sub.add_parser("verify", help="recompute the reference tables")
    p.add_argument("what", choices=["tables", "catalan", "theorems"])
    p.add_argument("--interior-max", type=int, default=3)
    p.add_argument("--full-sweep", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except classify.SearchBudgetError as exc:
        print(f"search budget exceeded: {exc}", file=sys.stderr)
        return 2
    except InvalidInputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
