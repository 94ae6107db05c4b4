"""Command-line front end: planning tables, cell assignment, seeded
experiments and greedy routing.

Exit codes: 0 success, 1 table deviation gate failed, 2 usage error,
3 invalid parameter, 4 routing dead end, 5 unreadable or malformed
config/file. Output in csv and json modes is byte-stable for identical
flags and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import planner
from .geometry import CellShape
from .lattice import (
    CellId,
    LatticeSpec,
    assign_cell,
    assign_cell_nearest_int,
    assign_cell_oracle,
    cell_center,
)
from .routing import DEAD_END, greedy_route
from .simulator import (
    Box,
    DeploymentConfig,
    EmptyRegionError,
    accuracy_experiment,
    lifetime_simulation,
)

SQRT17 = math.sqrt(17.0)

TABLE_I_COLUMNS = [
    "shape", "neighbor_count",
    "max_radius_coeff", "max_radius_reference", "max_radius_deviation",
    "min_sensing_coeff", "min_sensing_reference", "min_sensing_deviation",
]

TABLE_II_COLUMNS = [
    "shape",
    "active_node_ratio", "active_node_reference", "active_node_deviation",
    "lifetime_fraction", "lifetime_reference", "lifetime_deviation",
]

ASSIGN_COLUMNS = [
    "shape", "rt", "sink", "point", "method", "u", "v", "w",
    "center_x", "center_y", "center_z", "distance",
    "exact_u", "exact_v", "exact_w", "matches_exact",
]

ACCURACY_COLUMNS = [
    "shape", "rt", "n", "seed",
    "correct_exact", "correct_nearest_int",
    "fraction_exact", "fraction_nearest_int",
]

LIFETIME_COLUMNS = [
    "shape", "rt", "node_count", "seed", "battery_capacity", "k",
    "cells_populated", "mean_nodes_per_cell", "network_lifetime",
    "lifetime_vs_to",
]

ROUTE_COLUMNS = ["step", "u", "v", "w", "metric_to_destination", "outcome"]


def _triple(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z - got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad coordinate triple {text!r}") from exc


def _id_triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected u,v,w - got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad cell id {text!r}") from exc


def _add_output_flags(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
    p.add_argument("--out", default=None, help="write output here instead of stdout")


def _add_spec_flags(p: argparse.ArgumentParser):
    p.add_argument("--shape", choices=[s.value for s in CellShape], required=True)
    p.add_argument("--rt", type=float, required=True, help="transmission range (m)")
    p.add_argument("--rt-sqrt17-units", action="store_true",
                   help="multiply --rt by sqrt(17); lets TO examples use exact steps")
    p.add_argument("--sink", type=_triple, default=(0.0, 0.0, 0.0),
                   help="information-sink location x,y,z (lattice anchor)")


def _spec_from_args(args) -> LatticeSpec:
    rt = args.rt * SQRT17 if args.rt_sqrt17_units else args.rt
    return LatticeSpec(shape=CellShape(args.shape), r_t=rt, sink=args.sink)


def _render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "csv":
        return planner.render_csv(rows, columns)
    if fmt == "json":
        return planner.render_json(rows)
    widths = {c: max(len(c), *(len(_cell_str(r.get(c, ""))) for r in rows)) for c in columns}
    lines = ["  ".join(c.ljust(widths[c]) for c in columns)]
    for r in rows:
        lines.append("  ".join(_cell_str(r.get(c, "")).ljust(widths[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _cell_str(value) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)


def cmd_tables(args) -> int:
    if args.which == "I":
        rows, columns = planner.radius_table(), TABLE_I_COLUMNS
        ok = planner.radius_table_gates_ok()
    else:
        rows, columns = planner.lifetime_table(), TABLE_II_COLUMNS
        ok = planner.lifetime_table_gates_ok()
    _emit(_render(rows, columns, args.format), args.out)
    return 0 if ok else 1


def cmd_assign(args) -> int:
    spec = _spec_from_args(args)
    point = np.asarray(args.point)
    if args.method == "exact":
        cid = assign_cell(spec, point)
    elif args.method == "oracle":
        cid = assign_cell_oracle(spec, point, window=args.window)
    else:
        cid = assign_cell_nearest_int(spec, point)
    center = cell_center(spec, cid)
    row = {
        "shape": spec.shape.value,
        "rt": spec.r_t,
        "sink": "{},{},{}".format(*spec.sink),
        "point": "{},{},{}".format(*point),
        "method": args.method,
        "u": cid.u, "v": cid.v, "w": cid.w,
        "center_x": float(center[0]),
        "center_y": float(center[1]),
        "center_z": float(center[2]),
        "distance": float(np.linalg.norm(point - center)),
        "exact_u": "", "exact_v": "", "exact_w": "", "matches_exact": "",
    }
    if args.method == "nearest_int":
        exact = assign_cell(spec, point)
        row.update(exact_u=exact.u, exact_v=exact.v, exact_w=exact.w,
                   matches_exact=exact == cid)
    _emit(_render([row], ASSIGN_COLUMNS, args.format), args.out)
    return 0


def _load_config(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _config_spec(cfg: dict, shape: str) -> LatticeSpec:
    rt = float(cfg["rt"])
    if cfg.get("rt_sqrt17_units"):
        rt *= SQRT17
    return LatticeSpec(shape=CellShape(shape), r_t=rt,
                       sink=cfg.get("sink", (0.0, 0.0, 0.0)))


def cmd_simulate(args) -> int:
    cfg = _load_config(args.config)
    if args.kind == "accuracy":
        spec = _config_spec(cfg, cfg["shape"])
        report = accuracy_experiment(spec, int(cfg["n"]), args.seed)
        rows = [{
            "shape": spec.shape.value,
            "rt": spec.r_t,
            "n": report.n,
            "seed": args.seed,
            "correct_exact": report.correct_exact,
            "correct_nearest_int": report.correct_nearest_int,
            "fraction_exact": report.fraction_exact,
            "fraction_nearest_int": report.fraction_nearest_int,
        }]
        columns = ACCURACY_COLUMNS
    else:
        shapes = cfg["shapes"] if "shapes" in cfg else [cfg["shape"]]
        box = Box(lo=cfg["box"]["lo"], hi=cfg["box"]["hi"])
        config = DeploymentConfig(box=box, node_count=int(cfg["node_count"]),
                                  seed=args.seed)
        capacity = float(cfg["battery_capacity"])
        k = int(cfg.get("k", 1))
        results = {}
        for shape in shapes:
            spec = _config_spec(cfg, shape)
            results[shape] = (spec, lifetime_simulation(spec, config, capacity, k))
        to_lifetime = results["to"][1].network_lifetime if "to" in results else None
        rows = []
        for shape in shapes:
            spec, res = results[shape]
            rows.append({
                "shape": shape,
                "rt": spec.r_t,
                "node_count": config.node_count,
                "seed": args.seed,
                "battery_capacity": capacity,
                "k": k,
                "cells_populated": res.cells_populated,
                "mean_nodes_per_cell": res.mean_nodes_per_cell,
                "network_lifetime": res.network_lifetime,
                "lifetime_vs_to": (res.network_lifetime / to_lifetime
                                   if to_lifetime else ""),
            })
        columns = LIFETIME_COLUMNS
    if args.out is not None:
        _emit(planner.render_csv(rows, columns), args.out + ".csv")
        _emit(planner.render_json(rows), args.out + ".json")
    else:
        sys.stdout.write(_render(rows, columns, args.format))
    return 0


def _load_dead_cells(path: str) -> set[CellId]:
    dead = set()
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            u, v, w = (int(p) for p in line.split(","))
            dead.add(CellId(u, v, w))
    return dead


def cmd_route(args) -> int:
    spec = _spec_from_args(args)
    dead = _load_dead_cells(args.dead_cells) if args.dead_cells else set()
    alive = (lambda cid: cid not in dead) if dead else None
    path = greedy_route(spec, args.src, args.dst, alive=alive,
                        tie_break=args.tie_break, seed=args.seed)
    dst = CellId(*args.dst)
    rows = []
    for step, hop in enumerate(path.hops):
        metric = (hop.u - dst.u) ** 2 + (hop.v - dst.v) ** 2 + (hop.w - dst.w) ** 2
        rows.append({
            "step": step, "u": hop.u, "v": hop.v, "w": hop.w,
            "metric_to_destination": metric,
            "outcome": path.outcome,
        })
    _emit(_render(rows, ROUTE_COLUMNS, args.format), args.out)
    return 0 if path.outcome != DEAD_END else 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topocell",
        description="Topology control for dense 3D sensor networks via "
                    "space-filling cell tessellations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tables = sub.add_parser("tables", help="planning constant tables")
    p_tables.add_argument("which", choices=("I", "II"),
                          help="I: radii and sensing ranges; II: active-node and lifetime ratios")
    _add_output_flags(p_tables)
    p_tables.set_defaults(func=cmd_tables)

    p_assign = sub.add_parser("assign", help="cell id of a point")
    _add_spec_flags(p_assign)
    p_assign.add_argument("--point", type=_triple, required=True)
    p_assign.add_argument("--method", choices=("exact", "nearest_int", "oracle"),
                          default="exact")
    p_assign.add_argument("--window", type=int, default=3,
                          help="search half-width for --method oracle")
    _add_output_flags(p_assign)
    p_assign.set_defaults(func=cmd_assign)

    p_sim = sub.add_parser("simulate", help="seeded Monte-Carlo experiments")
    p_sim.add_argument("kind", choices=("accuracy", "lifetime"))
    p_sim.add_argument("--config", required=True, help="JSON experiment config")
    p_sim.add_argument("--seed", type=int, required=True)
    _add_output_flags(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_route = sub.add_parser("route", help="greedy cell-id routing")
    _add_spec_flags(p_route)
    p_route.add_argument("--src", type=_id_triple, required=True)
    p_route.add_argument("--dst", type=_id_triple, required=True)
    p_route.add_argument("--dead-cells", default=None,
                         help="text file of dead cell ids, one u,v,w per line")
    p_route.add_argument("--tie-break", choices=("lex", "random"), default="lex")
    p_route.add_argument("--seed", type=int, default=None,
                         help="seed for --tie-break random")
    _add_output_flags(p_route)
    p_route.set_defaults(func=cmd_route)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: malformed config: {exc}", file=sys.stderr)
        return 5
    except EmptyRegionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except KeyError as exc:
        print(f"error: missing config key {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    raise SystemExit(main())
