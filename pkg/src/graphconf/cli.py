"""Command line interface: build models, compute homology, compare against
the discretized oracle, and run the stabilization experiments.

Exit codes: 0 all asserted checks pass, 1 a mathematical assertion failed,
2 invalid configuration, 3 a cell budget was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass

from . import __version__
from .characters import (
    CorruptedCharacterError,
    character_report,
    stability_verdict,
)
from .complexes import (
    BudgetExceeded,
    CubeComplex,
    DEFAULT_CELL_BUDGET,
    MODEL_KIND,
    ModelError,
    ORACLE_KIND,
    build_abrams_oracle,
    build_model,
)
from .graphs import (
    FamilyDescriptor,
    Graph,
    GraphError,
    SummandSpec,
    normalize_loops,
    realize_family,
)
from .homology import betti_numbers, homology, oracle_betti_numbers
from .linalg import LinAlgError
from .stability import (
    StabilityError,
    dimension_polynomial_check,
    generation_degree_check,
    verify_tree_generators,
)

CACHE_ENV_VAR = "GRAPHCONF_CACHE_DIR"


class ConfigError(ValueError):
    pass


# -- configuration -------------------------------------------------------------


@dataclass
class RunConfig:
    command: str
    graph_path: str | None = None
    family_path: str | None = None
    n: int = 0
    q: int = 0
    sinks: tuple = ()
    oracle: bool = False
    degree: int | None = None
    sizes: int | None = None
    window: tuple = ()
    fit_degree: int = 3
    holdout: int = 1
    qmax: int | None = None
    budget: int = DEFAULT_CELL_BUDGET
    cache_dir: str | None = None
    jobs: int = 1
    out: str | None = None
    csv_out: str | None = None
    seed: int = 0
    search_d_min: bool = True

    def validate(self):
        if self.n < 0:
            raise ConfigError("--n must be nonnegative")
        if self.q < 0:
            raise ConfigError("--q must be nonnegative")
        if self.jobs < 1:
            raise ConfigError("--jobs must be at least 1")
        if self.budget < 1:
            raise ConfigError("--budget must be positive")
        if self.window and self.window[0] > self.window[-1]:
            raise ConfigError("window start must not exceed its end")
        if self.fit_degree < 0 or self.holdout < 0:
            raise ConfigError("--degree and --holdout must be nonnegative")
        if self.oracle and self.sinks:
            raise ConfigError("the discretized cross-check model has no sinks")
        for path in (self.graph_path, self.family_path):
            if path is not None and not os.path.exists(path):
                raise ConfigError(f"input file not found: {path}")
        return self


def _parse_window(text):
    try:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    except ValueError as exc:
        raise ConfigError(f"bad window {text!r}; expected k0..k1") from exc


def _parse_sinks(text):
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad sink list {text!r}") from exc


# -- graph / family files --------------------------------------------------------


def load_graph(path):
    with open(path) as fh:
        data = json.load(fh)
    return graph_from_payload(data)


def graph_from_payload(data):
    try:
        return Graph.from_json(json.dumps(data))
    except (KeyError, TypeError, GraphError) as exc:
        raise ConfigError(f"bad graph payload: {exc}") from exc


def graph_to_payload(graph):
    return json.loads(graph.to_json())


def load_family(path):
    with open(path) as fh:
        data = json.load(fh)
    try:
        kind = data["kind"]
        summands = []
        for item in data["summands"]:
            summands.append(SummandSpec(
                graph=graph_from_payload(item["graph"]),
                summand_vertices=tuple(item.get("summand_vertices", ())),
                base_vertices=tuple(item.get("base_vertices", ())),
                summand_edges=tuple(item.get("summand_edges", ())),
                base_edges=tuple(item.get("base_edges", ())),
            ))
        base = graph_from_payload(data["base"]) if data.get("base") else None
        return FamilyDescriptor(kind, base, tuple(summands))
    except (KeyError, TypeError, GraphError) as exc:
        raise ConfigError(f"bad family payload: {exc}") from exc


def family_to_payload(descriptor):
    return {
        "kind": descriptor.kind,
        "base": graph_to_payload(descriptor.base) if descriptor.base else None,
        "summands": [
            {
                "graph": graph_to_payload(s.graph),
                "summand_vertices": list(s.summand_vertices),
                "base_vertices": list(s.base_vertices),
                "summand_edges": list(s.summand_edges),
                "base_edges": list(s.base_edges),
            }
            for s in descriptor.summands
        ],
    }


# -- cache -----------------------------------------------------------------------


def canonical_json(payload):
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def cache_key(payload):
    """Content hash of the canonical payload, salted with the code version."""
    body = canonical_json({"payload": payload, "code_version": __version__})
    return hashlib.sha256(body.encode()).hexdigest()


def _cell_to_lists(cell):
    vkey, ekey, moves = cell
    return [
        [[v, list(ps)] for v, ps in vkey],
        [[e, list(ps)] for e, ps in ekey],
        [list(m) for m in moves],
    ]


def _cell_from_lists(data):
    vkey, ekey, moves = data
    return (
        tuple((v, tuple(ps)) for v, ps in vkey),
        tuple((e, tuple(ps)) for e, ps in ekey),
        tuple(tuple(m) for m in moves),
    )


def serialize_complex(complex_):
    cells = []
    for q, cs in enumerate(complex_.cells):
        if complex_.kind == MODEL_KIND:
            cells.append([_cell_to_lists(c) for c in cs])
        else:
            cells.append([list(c) for c in cs])
    boundaries = {}
    for q in range(1, complex_.top_dimension + 1):
        mat = complex_.boundary(q)
        boundaries[str(q)] = sorted([r, c, v] for r, c, v in mat.entries())
    return canonical_json({
        "kind": complex_.kind,
        "n": complex_.n,
        "sinks": sorted(complex_.sinks),
        "graph": json.loads(complex_.graph.to_json()),
        "cells": cells,
        "boundaries": boundaries,
    })


def deserialize_complex(text):
    data = json.loads(text)
    graph = graph_from_payload(data["graph"])
    if data["kind"] == MODEL_KIND:
        cells = [[_cell_from_lists(c) for c in cs] for cs in data["cells"]]
    else:
        cells = [[tuple(c) for c in cs] for cs in data["cells"]]
    cx = CubeComplex(graph, data["n"], frozenset(data["sinks"]), data["kind"], cells)
    from .linalg import SparseIntMatrix
    for q_str, triplets in data["boundaries"].items():
        q = int(q_str)
        rows = len(cx.cells[q - 1])
        cols = len(cx.cells[q])
        cx._boundaries[q] = SparseIntMatrix.from_triplets(
            rows, cols, [tuple(t) for t in triplets])
    return cx


class ComplexCache:
    """Content-addressed store of built complexes."""

    def __init__(self, directory):
        self.directory = directory

    def path_for(self, key):
        return os.path.join(self.directory, f"{key}.json")

    def get(self, key):
        path = self.path_for(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path) as fh:
                return deserialize_complex(fh.read())
        except (ValueError, KeyError, TypeError, LinAlgError) as exc:
            print(f"warning: corrupt cache entry {path} ({exc}); recomputing",
                  file=sys.stderr)
            return None

    def put(self, key, complex_):
        os.makedirs(self.directory, exist_ok=True)
        path = self.path_for(key)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(serialize_complex(complex_))
        os.replace(tmp, path)
        return path


def _resolve_cache(config):
    directory = config.cache_dir or os.environ.get(CACHE_ENV_VAR)
    return ComplexCache(directory) if directory else None


def build_model_cached(graph, n, sinks=(), oracle=False, budget=None,
                       cache=None):
    key = cache_key({
        "graph": json.loads(graph.to_json()),
        "n": n,
        "sinks": sorted(sinks),
        "kind": ORACLE_KIND if oracle else MODEL_KIND,
    })
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit, key, True
    if oracle:
        cx = build_abrams_oracle(graph, n, budget=budget or DEFAULT_CELL_BUDGET)
    else:
        cx = build_model(graph, n, sinks, budget=budget or DEFAULT_CELL_BUDGET)
    if cache is not None:
        cache.put(key, cx)
    return cx, key, False


# -- commands ---------------------------------------------------------------------


def _cmd_model(config):
    graph = normalize_loops(load_graph(config.graph_path))
    cache = _resolve_cache(config)
    cx, key, hit = build_model_cached(
        graph, config.n, config.sinks, config.oracle, config.budget, cache)
    report = {
        "command": "model",
        "kind": cx.kind,
        "n": config.n,
        "sinks": sorted(config.sinks),
        "f_vector": cx.f_vector(),
        "euler_characteristic": cx.euler_characteristic(),
        "total_cells": cx.total_cells,
        "cache_key": key,
        "cache_hit": hit,
    }
    return report, True, []


def _cmd_homology(config):
    graph = normalize_loops(load_graph(config.graph_path))
    cache = _resolve_cache(config)
    cx, _, _ = build_model_cached(
        graph, config.n, config.sinks, config.oracle, config.budget, cache)
    pres = homology(cx, config.q, basis=False)
    report = {
        "command": "homology",
        "q": config.q,
        "betti": pres.betti,
        "torsion": list(pres.torsion),
        "cells": cx.f_vector(),
    }
    return report, True, []


def _cmd_oracle_compare(config):
    graph = normalize_loops(load_graph(config.graph_path))
    qmax = config.qmax if config.qmax is not None else min(config.n, 2)
    cx = build_model(graph, config.n, budget=config.budget)
    model_betti = betti_numbers(cx, qmax)
    oracle_betti = oracle_betti_numbers(graph, config.n, qmax,
                                        budget=config.budget)
    match = model_betti == oracle_betti
    report = {
        "command": "oracle-compare",
        "n": config.n,
        "qmax": qmax,
        "model_betti": model_betti,
        "oracle_betti": oracle_betti,
        "match": match,
        "verdict": "MATCH" if match else "MISMATCH",
    }
    return report, match, []


def _cmd_generation_check(config):
    descriptor = load_family(config.family_path)
    if config.degree is None or config.sizes is None:
        raise ConfigError("generation-check needs --d and --K")
    rep = generation_degree_check(
        descriptor, config.n, config.q, config.degree, config.sizes,
        budget=config.budget, search_d_min=config.search_d_min)
    if rep.generates_over_Q and not rep.generates_over_Z:
        print("warning: candidates span over Q but not over Z; "
              "a torsion obstruction is in the way", file=sys.stderr)
    report = {"command": "generation-check", **rep.to_dict()}
    ok = rep.passes_asserted_bound if rep.asserted_bound is not None \
        else rep.generates_over_Z
    rows = [["degree", "generates_over_Q", "generates_over_Z", "missing_rank"]]
    for deg in sorted(rep.per_degree):
        v = rep.per_degree[deg]
        rows.append([deg, v.generates_over_Q, v.generates_over_Z,
                     v.missing_rank])
    return report, bool(ok), rows


def _cmd_tree_generators(config):
    graph = load_graph(config.graph_path)
    result = verify_tree_generators(graph, config.n, config.q, detailed=True)
    report = {
        "command": "tree-generators",
        "n": config.n,
        "q": config.q,
        "generates_over_Q": result.generates_over_Q,
        "generates_over_Z": result.generates_over_Z,
        "missing_rank": result.missing_rank,
    }
    return report, result.generates_over_Z, []


def _cmd_rep_stability(config):
    descriptor = load_family(config.family_path)
    if descriptor.arity != 1:
        raise ConfigError("rep-stability windows run over one-coordinate "
                          "families; decompose product actions via the library")
    if len(config.window) < 2:
        raise ConfigError("rep-stability needs a window of at least two sizes")
    reports = []
    per_k = []
    for k in config.window:
        instance = realize_family(descriptor, (k,) * descriptor.arity)
        cx = build_model(instance.graph, config.n, budget=config.budget)
        pres = homology(cx, config.q)
        rep = character_report(cx, pres, instance)
        reports.append(rep)
        per_k.append({
            "k": k,
            "betti": rep.betti,
            "multiplicities": [
                {"lambda": list(lam), "padded": _padded_label(lam, k),
                 "multiplicity": c}
                for lam, c in rep.multiplicities
            ],
            "characters": [
                {"cycle_type": list(mu), "class_size": size, "value": value}
                for mu, size, value in rep.class_data
            ],
        })
    verdict = stability_verdict(reports)
    report = {
        "command": "rep-stability",
        "n": config.n,
        "q": config.q,
        "window": list(config.window),
        "stable": verdict["stable"],
        "table": [
            {"lambda": list(lam), "multiplicities": list(row)}
            for lam, row in sorted(verdict["table"].items())
        ],
        "excluded": [list(lam) for lam in verdict["excluded"]],
        "per_k": per_k,
    }
    rows = [["k", "betti"] + [str(list(lam)) for lam in sorted(verdict["table"])]]
    for i, k in enumerate(config.window):
        rows.append([k, reports[i].betti] +
                    [verdict["table"][lam][i] for lam in sorted(verdict["table"])])
    return report, verdict["stable"], rows


def _padded_label(lam, k):
    from .characters import pad, pad_is_valid
    return list(pad(lam, k)) if pad_is_valid(lam, k) else None


def _cmd_poly_fit(config):
    descriptor = load_family(config.family_path)
    result = dimension_polynomial_check(
        descriptor, config.n, config.q, list(config.window),
        config.fit_degree, config.holdout, budget=config.budget)
    report = {"command": "poly-fit", "n": config.n, "q": config.q, **result}
    rows = [["k", "betti", "predicted"]]
    for k, b, p in zip(result["window"], result["betti"], result["predicted"]):
        rows.append([k, b, p])
    return report, result["fits"], rows


COMMANDS = {
    "model": _cmd_model,
    "homology": _cmd_homology,
    "oracle-compare": _cmd_oracle_compare,
    "generation-check": _cmd_generation_check,
    "tree-generators": _cmd_tree_generators,
    "rep-stability": _cmd_rep_stability,
    "poly-fit": _cmd_poly_fit,
}


# -- entry point --------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="graphconf",
        description="Configuration spaces of graphs: exact cube-complex "
                    "homology and stabilization experiments.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=False, family=False, q=True):
        if graph:
            p.add_argument("--graph", required=True, help="graph JSON file")
        if family:
            p.add_argument("--family", required=True, help="family JSON file")
        p.add_argument("--n", type=int, required=True, help="particle count")
        if q:
            p.add_argument("--q", type=int, default=1, help="homology degree")
        p.add_argument("--budget", type=int, default=DEFAULT_CELL_BUDGET,
                       help="cell budget per complex")
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--jobs", type=int, default=1,
                       help="worker bound (runs are deterministic)")
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument("--csv", dest="csv_out", default=None,
                       help="write the CSV table here")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("model", help="build a configuration model")
    common(p, graph=True, q=False)
    p.add_argument("--sinks", default="", help="comma-separated sink vertices")
    p.add_argument("--oracle", action="store_true",
                   help="build the discretized cross-check model instead")

    p = sub.add_parser("homology", help="Betti numbers and torsion")
    common(p, graph=True)
    p.add_argument("--sinks", default="")
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("oracle-compare",
                       help="compare both models' Betti numbers")
    common(p, graph=True, q=False)
    p.add_argument("--qmax", type=int, default=None)

    p = sub.add_parser("generation-check",
                       help="finite-generation span check for a family")
    common(p, family=True)
    p.add_argument("--d", type=int, required=True, help="candidate degree")
    p.add_argument("--K", type=int, required=True, help="window size")
    p.add_argument("--no-dmin-search", action="store_true")

    p = sub.add_parser("tree-generators",
                       help="verify the tree generating theorem")
    common(p, graph=True)

    p = sub.add_parser("rep-stability",
                       help="character multiplicities over a window")
    common(p, family=True)
    p.add_argument("--window", required=True, help="k0..k1")

    p = sub.add_parser("poly-fit", help="exact polynomial fit of Betti growth")
    common(p, family=True)
    p.add_argument("--window", required=True, help="k0..k1")
    p.add_argument("--degree", type=int, default=3, dest="fit_degree")
    p.add_argument("--holdout", type=int, default=1)
    return parser


def config_from_args(args):
    cfg = RunConfig(
        command=args.command,
        graph_path=getattr(args, "graph", None),
        family_path=getattr(args, "family", None),
        n=args.n,
        q=getattr(args, "q", 0),
        sinks=_parse_sinks(getattr(args, "sinks", "")),
        oracle=getattr(args, "oracle", False),
        degree=getattr(args, "d", None),
        sizes=getattr(args, "K", None),
        window=_parse_window(args.window) if getattr(args, "window", None) else (),
        fit_degree=getattr(args, "fit_degree", 3),
        holdout=getattr(args, "holdout", 1),
        qmax=getattr(args, "qmax", None),
        budget=args.budget,
        cache_dir=args.cache_dir,
        jobs=args.jobs,
        out=args.out,
        csv_out=args.csv_out,
        seed=args.seed,
        search_d_min=not getattr(args, "no_dmin_search", False),
    )
    return cfg.validate()


def run(config):
    """Dispatch a validated config; returns (report, ok, csv_rows)."""
    handler = COMMANDS.get(config.command)
    if handler is None:
        raise ConfigError(f"unknown command {config.command!r}")
    started = time.perf_counter()
    report, ok, rows = handler(config)
    report["ok"] = bool(ok)
    report["elapsed_seconds"] = round(time.perf_counter() - started, 3)
    report["code_version"] = __version__
    return report, ok, rows


def _emit(config, report, rows):
    text = json.dumps(report, indent=2, sort_keys=True)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if config.csv_out and rows:
        with open(config.csv_out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerows(rows)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report, ok, rows = run(config)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget-exceeded", "detail": str(exc),
                          "command": config.command}, indent=2))
        return 3
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, ModelError, StabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CorruptedCharacterError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return 1
    _emit(config, report, rows)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
