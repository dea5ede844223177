"""Command line entry point: ``metric-genesis <subcommand> ...``.

Exit status is 0 on success, 2 on invalid input and 1 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import sys

from . import cantor_reference, dimension_counter, finite_topology, refinement_tree, urysohn
from .errors import InvariantError, ValidationError
from .intervals import UNIT, RationalInterval
from .serialize import (case1_to_dict, case2_to_dict, dumps, frac, interval_pair, load_json,
                        urysohn_to_dict)


def _points_arg(text):
    return [p.strip() for p in text.split(",") if p.strip()]


def _base_arg(text):
    try:
        return RationalInterval.parse(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metric-genesis",
                                     description="Exact finite metric constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument("--json", action="store_true", help="machine-readable output")

    topo = sub.add_parser("topology", help="finite topological spaces")
    topo_sub = topo.add_subparsers(dest="action", required=True)
    check = topo_sub.add_parser("check", parents=[json_flag], help="validate a space file")
    check.add_argument("input", help="space JSON file, or - for stdin")
    check.add_argument("--complete", action="store_true",
                       help="add the empty and full sets before validating")
    enum = topo_sub.add_parser("enumerate", parents=[json_flag], help="list all topologies")
    enum.add_argument("--n", type=int, required=True)
    chain = topo_sub.add_parser("chain", parents=[json_flag], help="greedy closeness chain")
    chain.add_argument("input")
    chain.add_argument("--x", required=True)
    chain.add_argument("--excluded", required=True)
    chain.add_argument("--max-len", type=int, default=None)

    ury = sub.add_parser("urysohn", parents=[json_flag], help="Urysohn function and pseudometric")
    ury.add_argument("input", help='space JSON, optionally with "A", "B" and "depth" keys')
    ury.add_argument("--A", type=_points_arg, default=None)
    ury.add_argument("--B", type=_points_arg, default=None)
    ury.add_argument("--depth", type=int, default=None)

    tree = sub.add_parser("tree", help="refinement trees")
    tree_sub = tree.add_subparsers(dest="action", required=True)
    tree_opts = argparse.ArgumentParser(add_help=False)
    tree_opts.add_argument("input", help="tree JSON file, or - for stdin")
    tree_opts.add_argument("--base", type=_base_arg, default=UNIT, help="interval as a/b,c/d")
    tree_opts.add_argument("--strategy", choices=refinement_tree.STRATEGIES, default="contiguous")
    tree_sub.add_parser("metrize", parents=[json_flag, tree_opts], help="exact metric from leaves")
    trunc = tree_sub.add_parser("truncate", parents=[json_flag], help="cut the tree at depth m")
    trunc.add_argument("input")
    trunc.add_argument("--m", type=int, required=True)
    dist = tree_sub.add_parser("distances", parents=[json_flag, tree_opts],
                               help="distance brackets at depth m")
    dist.add_argument("--m", type=int, required=True)
    dist.add_argument("--R", type=int, default=None)

    cantor = sub.add_parser("cantor", parents=[json_flag], help="Cantor ternary stage")
    cantor.add_argument("--depth", type=int, required=True)

    dims = sub.add_parser("dims", parents=[json_flag], help="exponent cascade and sum of squares")
    dims.add_argument("--n", type=int, required=True)
    dims.add_argument("--k", type=int, required=True)
    return parser


def _emit(doc, as_json, lines):
    if as_json:
        sys.stdout.write(dumps(doc))
    else:
        for line in lines:
            print(line)


def cmd_topology_check(args):
    doc = load_json(args.input)
    if not isinstance(doc, dict) or "points" not in doc or "opens" not in doc:
        raise finite_topology.TopologyError("space document needs 'points' and 'opens' keys")
    opens = [list(s) for s in doc["opens"]]
    notes = []
    if args.complete:
        points = list(doc["points"])
        if [] not in opens:
            opens.append([])
            notes.append("added empty set")
        if not any(set(s) == set(points) for s in opens):
            opens.append(points)
            notes.append("added full set")
    report = finite_topology.validate_family(doc["points"], opens)
    report.notes.extend(notes)
    if not report.valid:
        raise finite_topology.TopologyError("; ".join(report.errors), report.to_dict())
    space = finite_topology.build_space(doc["points"], opens, notes)
    normality = finite_topology.is_normal(space)
    out = report.to_dict()
    out["space"] = finite_topology.space_to_dict(space)
    out["closed"] = [space.ordered(c) for c in space.closed_sets]
    out["normal"] = normality.normal
    if normality.normal:
        out["separations"] = [
            {"A": space.ordered(a), "B": space.ordered(b),
             "U": space.ordered(u), "V": space.ordered(v)}
            for (a, b), (u, v) in normality.witness.items()]
    else:
        out["witness"] = [space.ordered(s) for s in normality.witness]
    lines = [f"valid topology on {len(space.points)} points with {len(space.opens)} open sets",
             f"normal: {normality.normal}"]
    lines += [f"note: {n}" for n in notes]
    _emit(out, args.json, lines)
    return 0


def cmd_topology_enumerate(args):
    spaces = list(finite_topology.enumerate_topologies(args.n))
    doc = {"n": args.n, "count": len(spaces),
           "spaces": [finite_topology.space_to_dict(s) for s in spaces]}
    lines = [" ".join(s.fmt(u) for u in s.opens) for s in spaces]
    lines.append(f"count: {len(spaces)}")
    _emit(doc, args.json, lines)
    return 0


def cmd_topology_chain(args):
    space = finite_topology.space_from_dict(load_json(args.input))
    chain = finite_topology.closeness_chain(space, args.x, args.excluded, args.max_len)
    doc = finite_topology.chain_to_dict(space, chain)
    lines = [" > ".join(space.fmt(s) for s in chain.steps) or "(empty chain)",
             f"depth: {chain.depth}", f"terminated: {chain.terminated}"]
    _emit(doc, args.json, lines)
    return 0


def cmd_urysohn(args):
    doc = load_json(args.input)
    space = finite_topology.space_from_dict(doc)
    a = args.A if args.A is not None else doc.get("A")
    b = args.B if args.B is not None else doc.get("B")
    if a is None or b is None:
        raise ValidationError("A and B are required (in the input file or via --A/--B)")
    depth = args.depth if args.depth is not None else doc.get("depth", urysohn.DEFAULT_DEPTH)
    family, f, table = urysohn.separate(space, a, b, int(depth))
    lines = [f"f({p}) = {v}" for p, v in f.values.items()]
    lines.append(f"verdict: {table.verdict}")
    lines += [f"class: {{{','.join(c)}}}" for c in table.classes]
    lines += [f"note: {n}" for n in family.notes]
    _emit(urysohn_to_dict(family, f, table), args.json, lines)
    return 0


def cmd_tree_metrize(args):
    tree = refinement_tree.build_tree(load_json(args.input))
    result = refinement_tree.case1_metric(tree, args.base, args.strategy)
    lines = [f"phi({e}) = {v}" for e, v in result.embedding.items()]
    lines.append(f"verdict: {result.verdict}")
    lines += [f"shared leaf {a}: {', '.join(es)}" for a, es in result.shared_leaves]
    _emit(case1_to_dict(result), args.json, lines)
    return 0


def cmd_tree_truncate(args):
    tree = refinement_tree.build_tree(load_json(args.input))
    cut = refinement_tree.truncate(tree, args.m)
    doc = refinement_tree.tree_to_dict(cut)
    lines = [f"{addr}: {{{','.join(cut.ordered(node.members))}}}" for addr, node in cut.leaves()]
    _emit(doc, args.json, lines)
    return 0


def cmd_tree_distances(args):
    tree = refinement_tree.build_tree(load_json(args.input))
    table = refinement_tree.case2_distances(tree, args.m, args.base, args.strategy, args.R)
    lines = []
    for i, x in enumerate(table.points):
        for j in range(i + 1, len(table.points)):
            y = table.points[j]
            e = table.entries[i][j]
            lines.append(f"d({x},{y}) in [{e.d_min}, {e.d_max}]")
    _emit(case2_to_dict(table), args.json, lines)
    return 0


def cmd_cantor(args):
    stage = cantor_reference.cantor_stage(args.depth)
    report = cantor_reference.property_report(args.depth, stage)
    measure = cantor_reference.cantor_measure(args.depth)
    doc = {"depth": stage.depth,
           "intervals": [interval_pair(iv) for iv in stage.intervals],
           "count": len(stage.intervals),
           "measure": frac(measure),
           "properties": report.to_dict()}
    lines = [f"[{iv.lo}, {iv.hi}]" for iv in stage.intervals]
    lines += [f"measure: {measure}",
              f"disconnected proxy: {report.disconnected_proxy}",
              f"perfect proxy: {report.perfect_proxy}"]
    _emit(doc, args.json, lines)
    return 0


def cmd_dims(args):
    seq = dimension_counter.exponent_sequence(args.k)
    pop = dimension_counter.population(args.n, args.k)
    rep = dimension_counter.total_points(args.n)
    doc = {
        "n": args.n,
        "k": args.k,
        "exponents": [frac(e) for e in seq.terms],
        "limit": frac(seq.limit),
        "population": {"base": str(pop.n), "exponent": frac(pop.exponent),
                       "exact": None if pop.exact is None else str(pop.exact),
                       "population_approx": pop.approx},
        "total": str(rep.total),
        "ratio": frac(rep.ratio),
        "dim_estimate": None if rep.dim_lo is None else
        {"lo": frac(rep.dim_lo), "hi": frac(rep.dim_hi),
         "dim_approx": float(rep.dim_estimate)},
    }
    lines = ["exponents: " + ", ".join(str(e) for e in seq.terms),
             f"population: {pop.exact}" if pop.is_exact
             else f"population: {pop.n}^({pop.exponent}) ~ {pop.approx:.6g} (approximate)",
             f"total: {rep.total}",
             f"ratio: {rep.ratio}"]
    if rep.dim_lo is not None:
        lines.append(f"dimension estimate: {float(rep.dim_estimate):.9f}")
    _emit(doc, args.json, lines)
    return 0


COMMANDS = {
    ("topology", "check"): cmd_topology_check,
    ("topology", "enumerate"): cmd_topology_enumerate,
    ("topology", "chain"): cmd_topology_chain,
    ("urysohn", None): cmd_urysohn,
    ("tree", "metrize"): cmd_tree_metrize,
    ("tree", "truncate"): cmd_tree_truncate,
    ("tree", "distances"): cmd_tree_distances,
    ("cantor", None): cmd_cantor,
    ("dims", None): cmd_dims,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[(args.command, getattr(args, "action", None))]
    try:
        return handler(args)
    except ValidationError as exc:
        if args.json:
            sys.stdout.write(dumps({"error": {"message": str(exc), "details": exc.details}}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        if args.json:
            sys.stdout.write(dumps({"error": {"message": str(exc), "internal": True}}))
        else:
            print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
