"""Command line entry point emitting JSON run reports.

Every subcommand prints one JSON object to stdout, built only from the
inputs, the seed and the scalar domain, so identical invocations produce
byte-identical output; wall time goes to stderr.  Exit codes: 0 on
success, 2 on invalid input, 3 on a numerical failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import spectral as spectral_mod
from .errors import GraphCurveError, NumericalError, ValidationError
from .framings import (Framing, flat_local_dimension, subspace_flags,
                       vertex_relation_residual, zero_section)
from .graphs import (CATALOG_NAMES, canonical_hash, catalog_graph,
                     graph_from_json, graph_to_json, random_trivalent,
                     spanning_tree)
from .higgs import (higgs_residual, higgs_space, random_higgs_field,
                    residue_parameterization)
from .hitchin import (hitchin_edge_coords, hitchin_image, hitchin_jacobian,
                      is_regular, jacobian_fd_error)
from .scalars import EXACT, FLOAT, check_domain, scalar_to_json
from .sections import bires_coordinates, canonical_space, double_canonical_space

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


def _resolve_graph(spec: str):
    """A catalog name, or a path to a graph JSON file."""
    if spec in CATALOG_NAMES:
        return catalog_graph(spec), spec
    path = Path(spec)
    if not path.exists():
        raise ValidationError(f"{spec!r} is neither a catalog name nor a file")
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"cannot parse {spec!r} as JSON: {exc}") from exc
    graph = graph_from_json(obj)
    return graph, graph_to_json(graph)


def _digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _report(command: str, inputs, domain: str, seed, results: dict) -> dict:
    return {
        "command": command,
        "inputs": _digest(inputs),
        "domain": domain,
        "seed": seed,
        "results": results,
    }


def _jsonable(value):
    if isinstance(value, (Fraction,)):
        return str(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _with_trials(args, one_trial):
    """Run one_trial per seed; a single trial keeps a flat result shape."""
    trials = max(1, args.trials)
    if trials == 1:
        return one_trial(args.seed)
    per_trial = [dict(one_trial(args.seed + k), seed=args.seed + k)
                 for k in range(trials)]
    return {"trials": trials, "per_trial": per_trial}


def cmd_graph(args) -> dict:
    if args.random is not None:
        graph = random_trivalent(args.random, args.seed)
        inputs = {"random": args.random}
    else:
        graph, inputs = _resolve_graph(args.graph)
    results = {
        "vertices": graph.vertex_count,
        "edges": len(graph.edges),
        "genus": graph.genus,
        "loops": sum(graph.is_loop(e) for e in range(len(graph.edges))),
        "hash": canonical_hash(graph),
    }
    return _report("graph", {"graph": inputs}, EXACT, args.seed, results)


def cmd_sections(args) -> dict:
    graph, inputs = _resolve_graph(args.graph)
    domain = args.domain or EXACT
    check_domain(domain)
    can = canonical_space(graph, domain)
    double = double_canonical_space(graph, domain)
    coords = [bires_coordinates(omega) for omega in double.basis]
    ncols = len(graph.edges)
    from .linalg import rank as matrix_rank

    results = {
        "genus": graph.genus,
        "dim_K": can.dim,
        "rank_K": can.rank,
        "dim_2K": double.dim,
        "rank_2K": double.rank,
        "bires_rank": matrix_rank(coords, ncols, domain),
    }
    return _report("sections", {"graph": inputs}, domain, args.seed, results)


def cmd_flat(args) -> dict:
    graph, inputs = _resolve_graph(args.graph)
    domain = args.domain or EXACT

    def one_trial(seed):
        framing = Framing.random(graph, seed, domain)
        bundle = zero_section(framing)
        tree = spanning_tree(graph)
        param = residue_parameterization(framing, domain)
        return {
            "local_dim": flat_local_dimension(bundle),
            "vertex_residual": float(vertex_relation_residual(bundle)),
            "linearization_matches_higgs": param.matches_flat_linearization,
            "flags": subspace_flags(bundle, tree),
        }

    return _report("flat", {"graph": inputs}, domain, args.seed,
                   _with_trials(args, one_trial))


def cmd_higgs(args) -> dict:
    graph, inputs = _resolve_graph(args.graph)
    domain = args.domain or EXACT

    def one_trial(seed):
        framing = Framing.random(graph, seed, domain)
        space = higgs_space(framing, domain)
        residual = max([0.0] + [float(abs(higgs_residual(phi, framing)))
                                for phi in space.basis])
        return {
            "dim": space.dim,
            "rank": space.rank,
            "residual": residual,
        }

    return _report("higgs", {"graph": inputs}, domain, args.seed,
                   _with_trials(args, one_trial))


def cmd_hitchin(args) -> dict:
    graph, inputs = _resolve_graph(args.graph)
    domain = args.domain or EXACT

    def one_trial(seed):
        framing = Framing.random(graph, seed, domain)
        phi = random_higgs_field(framing, seed, domain)
        coords = hitchin_edge_coords(phi)
        jac = hitchin_jacobian(phi, framing)
        float_framing = Framing.random(graph, seed, FLOAT)
        float_phi = random_higgs_field(float_framing, seed, FLOAT)
        return {
            "edge_coords": [scalar_to_json(x) for x in coords],
            "regular": is_regular(hitchin_image(phi)).regular,
            "jacobian_rank": jac.rank,
            "fd_rel_err": jacobian_fd_error(float_phi, float_framing),
        }

    return _report("hitchin", {"graph": inputs}, domain, args.seed,
                   _with_trials(args, one_trial))


def cmd_spectral(args) -> dict:
    graph, inputs = _resolve_graph(args.graph)
    domain = args.domain or FLOAT
    if domain != FLOAT:
        raise ValidationError("spectral computations run in the float domain")

    def one_trial(seed):
        framing = Framing.random(graph, seed, FLOAT)
        phi = spectral_mod.random_regular_higgs(framing, seed)
        curve = spectral_mod.build_spectral_curve(phi, framing)
        prym = spectral_mod.prym_report(graph)
        matching = max(lift.matching_residual for lift in curve.nodes.values())
        return {
            "genus": curve.arithmetic_genus,
            "components": curve.component_count,
            "nodes": curve.node_count,
            "fixed_points": 2 * curve.component_count,
            "quotient_matches_base": True,
            "prym": {
                "b1_base": prym.b1_base,
                "b1_spectral": prym.b1_spectral,
                "pullback_rank": prym.pullback_rank,
                "prym_dim": prym.prym_dim,
            },
            "matching_residual": matching,
            "roundtrip_err": spectral_mod.roundtrip_error(phi, framing),
        }

    return _report("spectral", {"graph": inputs}, domain, args.seed,
                   _with_trials(args, one_trial))


_COMMANDS = {
    "graph": cmd_graph,
    "sections": cmd_sections,
    "flat": cmd_flat,
    "higgs": cmd_higgs,
    "hitchin": cmd_hitchin,
    "spectral": cmd_spectral,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphcurves",
        description="Sections, framings, Higgs fields and spectral curves "
                    "on trivalent graph curves.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        if name == "graph":
            p.add_argument("--graph", default="theta",
                           help="catalog name or graph JSON file")
            p.add_argument("--random", type=int, default=None, metavar="N",
                           help="generate a random graph on N vertices instead")
        else:
            p.add_argument("--graph", default="theta",
                           help="catalog name or graph JSON file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--domain", choices=[EXACT, FLOAT], default=None)
        p.add_argument("--trials", type=int, default=1)
        p.add_argument("--out", default=None, help="also write the report here")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.monotonic()
    try:
        report = _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except GraphCurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    blob = json.dumps(_jsonable(report), sort_keys=True, indent=2)
    print(blob)
    if args.out:
        Path(args.out).write_text(blob + "\n")
    elapsed_ms = (time.monotonic() - start) * 1000
    print(f"# wall_time_ms={elapsed_ms:.1f}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
