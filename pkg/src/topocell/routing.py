"""Greedy cell-id routing over the lattice neighbor graph.

Active nodes address each other by cell id, so a packet can be forwarded
with integer arithmetic only: from the current cell, hand the packet to an
alive neighbor whose id is strictly closer to the destination id under the
squared id-space metric (ud-u)^2 + (vd-v)^2 + (wd-w)^2. The metric is a
nonnegative integer that shrinks every hop, so routes always terminate; if
no alive neighbor improves it before the destination is reached, the route
is a dead end (no recovery is attempted).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .lattice import CellId, LatticeSpec, neighbors

DELIVERED = "delivered"
DEAD_END = "dead_end"


@dataclass(frozen=True)
class RoutePath:
    """Hop sequence from source to where forwarding stopped."""

    hops: list[CellId]
    outcome: str

    @property
    def hop_count(self) -> int:
        return len(self.hops) - 1


def _metric(a: CellId, b: CellId) -> int:
    return (a.u - b.u) ** 2 + (a.v - b.v) ** 2 + (a.w - b.w) ** 2


def _qualifying(spec: LatticeSpec, cur: CellId, dst: CellId,
                alive: Callable[[CellId], bool] | None) -> list[tuple[int, CellId]]:
    bar = _metric(cur, dst)
    found = []
    for nb in neighbors(spec, cur):
        if alive is not None and not alive(nb):
            continue
        m = _metric(nb, dst)
        if m < bar:
            found.append((m, nb))
    return found


def greedy_route(spec: LatticeSpec, src, dst,
                 alive: Callable[[CellId], bool] | None = None,
                 tie_break: str = "lex", seed: int | None = None) -> RoutePath:
    """Forward greedily from src to dst over alive cells.

    ``alive`` is a membership predicate over cell ids (None means every
    cell is alive). By default the forwarder takes the neighbor with the
    smallest metric, breaking ties by smallest (u, v, w) for reproducible
    routes; ``tie_break="random"`` instead picks uniformly among all
    qualifying neighbors using the given seed.
    """
    src = CellId(*map(int, tuple(src)))
    dst = CellId(*map(int, tuple(dst)))
    if alive is not None and not alive(src):
        raise ValueError("source cell is not alive")
    if alive is not None and not alive(dst):
        raise ValueError("destination cell is not alive")
    if tie_break not in ("lex", "random"):
        raise ValueError("tie_break must be 'lex' or 'random'")
    rng = np.random.default_rng(seed) if tie_break == "random" else None

    hops = [src]
    cur = src
    while cur != dst:
        options = _qualifying(spec, cur, dst, alive)
        if not options:
            return RoutePath(hops=hops, outcome=DEAD_END)
        if rng is not None:
            cur = options[int(rng.integers(len(options)))][1]
        else:
            cur = min(options)[1]
        hops.append(cur)
    return RoutePath(hops=hops, outcome=DELIVERED)


def neighbor_choice_count(spec: LatticeSpec, current, dst,
                          alive: Callable[[CellId], bool] | None = None) -> int:
    """How many alive neighbors make strict progress toward dst."""
    cur = CellId(*map(int, tuple(current)))
    target = CellId(*map(int, tuple(dst)))
    return len(_qualifying(spec, cur, target, alive))
