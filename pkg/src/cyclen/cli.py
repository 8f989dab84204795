"""Command-line front end.

Exit codes: 0 success, 2 malformed input, 3 class/forest mismatch,
4 violated precondition (e.g. an edge set outside the cycle space).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any

from . import io
from .graph import GraphError, WalkError, spanning_forest, walk_length
from .homology import (
    ConservationError,
    HomologyClass,
    check_oplus,
    class_of,
    flow_decompose,
    length_of_class,
    min_length_representative,
    primitive_decompose,
    walk_to_circulation,
)
from .metric import (
    PiMultiple,
    cauchy_verify,
    circle_lower_bound,
    d1_upper_bound,
    disc_area_budget,
    is_isometric_cycle,
    sigma_tail_bound,
)
from .spaces import SpaceError, make_comb, make_cycle, make_ladder, make_owl, make_sine_comb, make_space
from .z2 import CycleSpaceError, decompose_edge_disjoint_circuits, is_circuit, verify_two_basis

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_PRECONDITION = 0, 2, 3, 4

DEMOS = ("owl", "ladder", "comb", "sine-comb", "circle")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_json_arg(text: str) -> Any:
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def parse_class_spec(g, forest, spec: str) -> HomologyClass:
    """Accepts ``1,-1``, ``[1,-1]``, ``{"chords": [...]}``, ``{"walk": {...}}``,
    ``{"circulation": [...]}`` or ``@file.json`` holding any of these."""
    try:
        if spec.strip().startswith(("[", "{", "@")):
            data = _load_json_arg(spec.strip())
        else:
            data = [int(x) for x in spec.split(",") if x.strip()]
    except (ValueError, OSError) as exc:
        raise CliError(f"malformed class spec {spec!r}: {exc}", EXIT_INPUT) from exc
    if isinstance(data, dict) and "chords" in data:
        data = data["chords"]
    if isinstance(data, list):
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in data):
            raise CliError("chord vector must hold integers", EXIT_INPUT)
        if len(data) != len(forest.chords):
            raise CliError(
                f"class has {len(data)} coordinates but the forest has {len(forest.chords)} chords", EXIT_MISMATCH
            )
        return HomologyClass(forest, tuple(data))
    if isinstance(data, dict) and "walk" in data:
        try:
            w = io.walk_from_json(data["walk"])
            c = walk_to_circulation(g, w)
        except WalkError as exc:
            raise CliError(f"walk rejected: {exc}", EXIT_PRECONDITION) from exc
        except (ValueError, TypeError) as exc:
            raise CliError(f"malformed walk: {exc}", EXIT_INPUT) from exc
        return class_of(c, forest)
    if isinstance(data, dict) and "circulation" in data:
        try:
            c = io.circulation_from_json(g, data["circulation"])
        except ValueError as exc:
            raise CliError(f"malformed circulation: {exc}", EXIT_INPUT) from exc
        try:
            return class_of(c, forest)
        except ConservationError as exc:
            raise CliError(str(exc), EXIT_PRECONDITION) from exc
    raise CliError(f"unrecognised class spec {spec!r}", EXIT_INPUT)


def _load_graph(path: str | None):
    if not path:
        raise CliError("--graph FILE is required", EXIT_INPUT)
    try:
        return io.load_graph(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_INPUT) from exc
    except GraphError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from exc


def minrep_result(h: HomologyClass) -> dict:
    circ, length = min_length_representative(h)
    cycles = flow_decompose(circ)
    pieces = primitive_decompose(h)
    piece_lengths = [length_of_class(p) for p in pieces]
    return {
        "class": list(h.coords),
        "length": io.exact(length),
        "circulation": io.circulation_to_json(circ),
        "decomposition": [io.cycle_to_json(c) for c in cycles],
        "primitive_classes": [
            {"class": list(p.coords), "length": io.exact(x)} for p, x in zip(pieces, piece_lengths)
        ],
        "pieces_length_sum": io.exact(sum(piece_lengths, Fraction(0))),
        "oplus": check_oplus(h, pieces),
        "d1_upper_bound": io.exact(d1_upper_bound(h)),
    }


def _minrep_job(args: tuple[dict, list[int]]) -> dict:
    graph_json, coords = args
    g = io.graph_from_json(graph_json)
    return minrep_result(HomologyClass(spanning_forest(g), tuple(coords)))


def _report(command: list[str], g, results: Any, witness: Any = None) -> dict:
    return {
        "command": command,
        "input_digest": io.graph_digest(g) if g is not None else None,
        "results": results,
        "witness": witness,
    }


def cmd_minrep(args, argv) -> dict:
    g = _load_graph(args.graph)
    forest = spanning_forest(g)
    specs = args.class_spec or ["0," * len(forest.chords)]
    classes = [parse_class_spec(g, forest, s) for s in specs]
    if args.jobs > 1 and len(classes) > 1:
        payload = [(io.graph_to_json(g), list(h.coords)) for h in classes]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_minrep_job, payload))
    else:
        results = [minrep_result(h) for h in classes]
    if args.dot:
        with open(args.dot, "w") as fh:
            flows = list(io.circulation_from_json(g, results[0]["circulation"]).flows)
            fh.write(io.to_dot(g, flows))
    for r in results:
        print(f"class {r['class']}: minimal length {r['length']['exact']} (~{r['length']['approx']:.6g})")
        for piece in r["decomposition"]:
            print(
                f"  circle edges {piece['edges']} x{piece['multiplicity']}: length {piece['length']['exact']}"
            )
        print(f"  pieces sum to {r['pieces_length_sum']['exact']}; economical: {str(r['oplus']).lower()}")
    witness = {"circulations": [r["circulation"] for r in results], "chords": list(forest.chords)}
    return _report(argv, g, results, witness)


def _parse_edges(text: str) -> list[int]:
    try:
        if text.strip().startswith(("[", "@")):
            data = _load_json_arg(text.strip())
        else:
            data = [int(x) for x in text.split(",") if x.strip()]
    except (ValueError, OSError) as exc:
        raise CliError(f"malformed edge set {text!r}: {exc}", EXIT_INPUT) from exc
    return data


def cmd_decompose_z2(args, argv) -> dict:
    g = _load_graph(args.graph)
    try:
        z = io.edge_set_from_json(g, _parse_edges(args.edges or ""))
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    try:
        circuits = decompose_edge_disjoint_circuits(z)
    except CycleSpaceError as exc:
        raise CliError(f"{exc} (first odd vertex: {exc.vertex})", EXIT_PRECONDITION) from exc
    union = 0
    disjoint = True
    for c in circuits:
        disjoint &= not (union & c.bits)
        union |= c.bits
    total = sum((c.length for c in circuits), Fraction(0))
    results = {
        "edge_set": z.edges,
        "circuits": [{"edges": c.edges, "length": io.exact(c.length), "is_circuit": is_circuit(c)} for c in circuits],
        "partition": disjoint and union == z.bits,
        "length_sum": io.exact(total),
        "edge_set_length": io.exact(z.length),
        "length_conserved": total == z.length,
    }
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(io.to_dot(g, [1 if k in z else 0 for k in range(g.m)]))
    print(f"{len(circuits)} circuit(s):")
    for c in results["circuits"]:
        print(f"  {c['edges']}  length {c['length']['exact']}")
    print(f"partition: {str(results['partition']).lower()}; length conserved: {str(results['length_conserved']).lower()}")
    return _report(argv, g, results, {"circuits": [c.edges for c in circuits]})


def _load_basis(g, path: str):
    try:
        data = _load_json_arg("@" + path)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read basis {path}: {exc}", EXIT_INPUT) from exc
    if isinstance(data, dict):
        if "basis" in data:
            data = data["basis"]
        elif isinstance(data.get("witness"), dict) and "circuits" in data["witness"]:
            data = data["witness"]["circuits"]
    if not isinstance(data, list):
        raise CliError("basis file must hold a list of edge index lists", EXIT_INPUT)
    try:
        return [io.edge_set_from_json(g, item) for item in data]
    except ValueError as exc:
        raise CliError(f"malformed basis: {exc}", EXIT_INPUT) from exc


def cmd_verify_2basis(args, argv) -> dict:
    g = _load_graph(args.graph)
    if not args.basis:
        raise CliError("--basis FILE is required", EXIT_INPUT)
    basis = _load_basis(g, args.basis)
    verdict = verify_two_basis(basis, host=g)
    line = "true" if verdict.ok else f"false: {verdict.diagnostic}"
    print(line)
    return _report(argv, g, {"verdict": verdict.ok, "diagnostic": verdict.diagnostic, "summary": line})


def _demo_owl(n) -> tuple[dict, Any]:
    s = make_owl()
    sig, tau, both = s.classes["sigma"], s.classes["tau"], s.classes["sigma+tau"]
    pieces = primitive_decompose(both)
    res = {
        "length_sigma": io.exact(length_of_class(sig)),
        "length_tau": io.exact(length_of_class(tau)),
        "naive_sum": io.exact(length_of_class(sig) + length_of_class(tau)),
        "length_sigma_plus_tau": io.exact(length_of_class(both)),
        "oplus_sigma_tau": check_oplus(both, [sig, tau]),
        "primitive_pieces": [io.exact(length_of_class(p)) for p in pieces],
        "oplus_primitive": check_oplus(both, pieces),
    }
    print("owl: l(sigma) = {}, l(tau) = {}, l(sigma)+l(tau) = {}".format(
        res["length_sigma"]["exact"], res["length_tau"]["exact"], res["naive_sum"]["exact"]))
    print(f"     l([sigma+tau]) = {res['length_sigma_plus_tau']['exact']} (the middle edge cancels)")
    print(f"     sigma (+) tau economical: {str(res['oplus_sigma_tau']).lower()}")
    print(f"     primitive pieces {[p['exact'] for p in res['primitive_pieces']]}, economical: "
          f"{str(res['oplus_primitive']).lower()}")
    return res, s


def _demo_ladder(n) -> tuple[dict, Any]:
    rows = []
    print(f"{'n':>3} {'walk length':>14} {'net circulation':>16}")
    for i in range(1, n + 1):
        s = make_ladder(i)
        w = s.walks["sigma"]
        c = walk_to_circulation(s.graph, w)
        rows.append({"n": i, "walk_length": io.exact(walk_length(s.graph, w)), "zero": not c})
        print(f"{i:>3} {str(walk_length(s.graph, w)):>14} {'zero' if not c else 'NONZERO':>16}")
    return {"rows": rows, "all_zero": all(r["zero"] for r in rows)}, make_ladder(n)


def _demo_comb(n) -> tuple[dict, Any]:
    rows = []
    print(f"{'n':>3} {'sigma-rep length':>18} {'min class length':>18} {'connected walk':>16} {'tail budget':>14}")
    for i in range(1, n + 1):
        s = make_comb(i)
        rep_len = s.sigma.prefix_length
        walk_len = walk_length(s.graph, s.walks["connected"])
        cls_len = length_of_class(s.classes["sum"])
        tail = sigma_tail_bound(s.sigma, i)
        rows.append(
            {
                "n": i,
                "sigma_rep_length": io.exact(rep_len),
                "class_length": io.exact(cls_len),
                "connected_walk_length": io.exact(walk_len),
                "tail_budget": io.exact(tail),
            }
        )
        print(f"{i:>3} {str(rep_len):>18} {str(cls_len):>18} {str(walk_len):>16} {str(tail):>14}")
    return {"rows": rows}, make_comb(n)


def _demo_sine_comb(n) -> tuple[dict, Any]:
    s = make_sine_comb(n)
    rows = []
    print(f"{'i':>3} {'circle length':>14} {'d1 upper':>12} {'d1 lower':>16} {'tail after i':>14}")
    for i, circle in enumerate(s.circles, start=1):
        h = s.classes[f"circle{i}"]
        upper = d1_upper_bound(h)
        lower = circle_lower_bound(circle.cycle_length) if is_isometric_cycle(s.graph, circle) else None
        tail = sigma_tail_bound(s.sigma, i)
        rows.append(
            {
                "i": i,
                "circle_length": io.exact(circle.cycle_length),
                "d1_upper": io.exact(upper),
                "d1_lower": None if lower is None else io.exact(lower),
                "tail_budget": io.exact(tail),
            }
        )
        print(f"{i:>3} {str(circle.cycle_length):>14} {str(upper):>12} {str(lower):>16} {str(tail):>14}")
    pairs = []
    for i in range(1, n):
        b = d1_upper_bound(s.classes[f"circle{i}"] - s.classes[f"circle{i + 1}"])
        pairs.append({"i": i, "j": i + 1, "d1_upper": io.exact(b)})
    schedule = [Fraction(1, 10**j) for j in range(1, 4)]
    cauchy = cauchy_verify(s.sigma, schedule)
    print(f"partial sums Cauchy for eps in {[str(e) for e in schedule]}: {str(cauchy).lower()}")
    return {"rows": rows, "pairs": pairs, "cauchy": cauchy}, s


def _demo_circle(n) -> tuple[dict, Any]:
    bound = circle_lower_bound(PiMultiple(2))
    k = n or 4
    s = make_cycle(k)
    circle = s.circles[0]
    res = {
        "lower_bound_unit_circle": io.exact(bound),
        "k": k,
        "isometric": is_isometric_cycle(s.graph, circle),
        "lower_bound_k_gon": io.exact(circle_lower_bound(circle.cycle_length)),
        "upper_bound_k_gon": io.exact(disc_area_budget([circle.cycle_length])),
    }
    print(f"circle of circumference 2π: lower bound {bound}")
    print(f"{k}-gon of perimeter 1: lower {circle_lower_bound(circle.cycle_length)}, "
          f"upper {disc_area_budget([circle.cycle_length])}")
    return res, s


def cmd_demo(args, argv) -> dict:
    runners = {
        "owl": _demo_owl,
        "ladder": _demo_ladder,
        "comb": _demo_comb,
        "sine-comb": _demo_sine_comb,
        "circle": _demo_circle,
    }
    if args.name not in runners:
        raise CliError(f"unknown demo {args.name!r}; choose from {', '.join(DEMOS)}", EXIT_INPUT)
    n = args.n if args.n is not None else (None if args.name in ("owl", "circle") else 10)
    if n is not None and n < 1:
        raise CliError("--n must be positive", EXIT_INPUT)
    results, space = runners[args.name](n)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(io.to_dot(space.graph))
    return _report(argv, space.graph, results, {"manifest": space.manifest()})


def cmd_space(args, argv) -> dict:
    try:
        s = make_space(args.name, args.n)
    except SpaceError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    if args.graph_out:
        io.dump_graph(s.graph, args.graph_out)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(io.to_dot(s.graph))
    print(json.dumps(s.manifest(), indent=2))
    return _report(argv, s.graph, {"graph": io.graph_to_json(s.graph)}, {"manifest": s.manifest()})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclen", description="Exact length-weighted cycle space computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        if graph:
            sp.add_argument("--graph", metavar="FILE", help="graph JSON file")
        sp.add_argument("--json", metavar="FILE", help="write the JSON report here ('-' for stdout)")
        sp.add_argument("--dot", metavar="FILE", help="write a DOT rendering of the graph")

    sp = sub.add_parser("minrep", help="minimal-length representative and primitive decomposition")
    common(sp)
    sp.add_argument("--class", dest="class_spec", action="append", metavar="SPEC",
                    help="chord vector '1,-1' or JSON {chords|walk|circulation}; repeat for a batch")
    sp.add_argument("--jobs", type=int, default=1, metavar="K", help="parallel workers for batches")
    sp.set_defaults(func=cmd_minrep)

    sp = sub.add_parser("decompose-z2", help="split an even edge set into edge-disjoint circuits")
    common(sp)
    sp.add_argument("--edges", metavar="SPEC", help="edge indices '0,1,3' or a JSON list")
    sp.set_defaults(func=cmd_decompose_z2)

    sp = sub.add_parser("verify-2basis", help="check a family of edge sets is a 2-basis")
    common(sp)
    sp.add_argument("--basis", metavar="FILE", help="JSON list of edge index lists")
    sp.set_defaults(func=cmd_verify_2basis)

    sp = sub.add_parser("demo", help=f"scripted examples: {', '.join(DEMOS)}")
    common(sp, graph=False)
    sp.add_argument("name")
    sp.add_argument("--n", type=int, default=None, metavar="N")
    sp.set_defaults(func=cmd_demo)

    sp = sub.add_parser("space", help="emit an example graph and its manifest")
    common(sp, graph=False)
    sp.add_argument("name")
    sp.add_argument("--n", type=int, default=None, metavar="N")
    sp.add_argument("--graph-out", metavar="FILE", help="write the graph JSON here")
    sp.set_defaults(func=cmd_space)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args, argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    if args.json:
        text = json.dumps(report, indent=2)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
