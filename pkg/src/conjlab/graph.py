"""Conjugation-graph exploration: balls, distances, and the BC probe.

Vertices are group elements; for every generator x (and its inverse) there
is a directed edge g -> x g x^-1 labeled x.  All searches are budgeted
because the ambient graph is infinite: results either are exact or carry
an explicit AtLeast / incompleteness flag.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import UsageError
from .groups import AtLeast, DEFAULT_NODE_BUDGET, Generator, GroupElement, GroupModel


@dataclass(frozen=True)
class ConjEdge:
    src: GroupElement
    label: Generator
    dst: GroupElement

    def is_loop(self) -> bool:
        return self.src == self.dst


@dataclass
class ConjGraphBall:
    """A BFS ball of the conjugation graph around `base`.

    `complete` is False when the node budget stopped the exploration early;
    `closed` is True when the whole (finite) component fits in the ball.
    """

    base: GroupElement
    radius: int
    vertices: set = field(default_factory=set)
    edges: list = field(default_factory=list)
    dist: dict = field(default_factory=dict)
    complete: bool = True
    closed: bool = False

    def to_json(self) -> dict:
        return {
            "base": self.base.encode(),
            "radius": self.radius,
            "complete": self.complete,
            "closed": self.closed,
            "vertices": sorted(v.encode() for v in self.vertices),
            "edges": sorted(
                [e.src.encode(), e.label.label(), e.dst.encode()] for e in self.edges
            ),
            "dist": {v.encode(): d for v, d in self.dist.items()},
        }


def conj_neighbors(model: GroupModel, h: GroupElement):
    """All conjugation neighbors of h: one entry per generator and inverse,
    self-loops included."""
    out = []
    for gen in model.all_gens():
        x = model.generator_element(gen)
        out.append((gen, model.conjugate(x, h)))
    return out


def explore_component(
    model: GroupModel,
    u0: GroupElement,
    radius: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> ConjGraphBall:
    model._check(u0)
    dist = {u0: 0}
    frontier = [u0]
    complete = True
    closed = False
    for depth in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for _, w in conj_neighbors(model, v):
                if w in dist:
                    continue
                dist[w] = depth
                nxt.append(w)
                if len(dist) > node_budget:
                    complete = False
                    break
            if not complete:
                break
        if not complete:
            break
        frontier = nxt
        if not frontier:
            closed = True
            break
    vertices = set(dist)
    edges = []
    for v in vertices:
        for gen, w in conj_neighbors(model, v):
            if w in vertices:
                edges.append(ConjEdge(v, gen, w))
    edges.sort(key=lambda e: (e.src.encode(), e.label.label(), e.dst.encode()))
    return ConjGraphBall(u0, radius, vertices, edges, dist, complete, closed)


def conj_distance(
    model: GroupModel,
    h1: GroupElement,
    h2: GroupElement,
    budget: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
):
    """Shortest-path distance in the conjugation graph; AtLeast(budget)
    when no path of length <= budget exists (far apart or disconnected)."""
    model._check(h1, h2)
    if h1 == h2:
        return 0
    seen = {h1}
    frontier = [h1]
    for depth in range(1, budget + 1):
        nxt = []
        for v in frontier:
            for _, w in conj_neighbors(model, v):
                if w in seen:
                    continue
                if w == h2:
                    return depth
                seen.add(w)
                nxt.append(w)
                if len(seen) > node_budget:
                    return AtLeast(depth)
        frontier = nxt
        if not frontier:
            break
    return AtLeast(budget)


@dataclass
class BCReport:
    """Evidence for/against the bounded-conjugation condition on a set K."""

    base_set_encoding: list
    shells: list  # (cayley_radius, max_diam: int | AtLeast)
    verdict: str  # "Plateau(C)" | "Growing" | "Inconclusive"

    def to_json(self) -> dict:
        return {
            "K": list(self.base_set_encoding),
            "shells": [
                [r, d if isinstance(d, int) else str(d)] for r, d in self.shells
            ],
            "verdict": self.verdict,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False)


def _set_diameter(model, elems, budget, node_budget):
    """Max pairwise conjugation distance; AtLeast propagates."""
    best = 0
    lower_bound = False
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            d = conj_distance(model, elems[i], elems[j], budget, node_budget)
            if isinstance(d, AtLeast):
                best = max(best, d.bound)
                lower_bound = True
            else:
                best = max(best, d)
    return AtLeast(best) if lower_bound else best


def bc_probe(
    model: GroupModel,
    K,
    max_cayley_radius: int,
    diam_budget: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> BCReport:
    """For each Cayley radius r, the worst diameter of g K g^-1 over all
    conjugators g of length <= r.

    Conjugators acting identically on K are expanded once (memo on the
    tuple of images).  The verdict is a fixed-window heuristic over the
    shell data; the raw shells are always reported.
    """
    K = sorted(set(K))
    if not K:
        raise UsageError("bc_probe needs a nonempty finite set K")
    for k in K:
        model._check(k)
    ball = model.cayley_ball(max_cayley_radius, node_budget)
    by_radius = {}
    for g, r in ball.items():
        by_radius.setdefault(r, []).append(g)
    memo = {}
    shells = []
    running = 0
    running_lb = False
    for r in range(max_cayley_radius + 1):
        for g in by_radius.get(r, ()):
            images = tuple(model.conjugate(g, k) for k in K)
            if images not in memo:
                memo[images] = _set_diameter(model, images, diam_budget, node_budget)
            d = memo[images]
            if isinstance(d, AtLeast):
                running = max(running, d.bound)
                running_lb = True
            else:
                running = max(running, d)
        shells.append((r, AtLeast(running) if running_lb else running))
    verdict = _bc_verdict(shells, max_cayley_radius)
    return BCReport([k.encode() for k in K], shells, verdict)


def _bc_verdict(shells, max_cayley_radius) -> str:
    values = [d for _, d in shells]
    if any(isinstance(d, AtLeast) for d in values):
        return "Inconclusive"
    window = max(1, math.ceil(max_cayley_radius / 2))
    tail = values[-window:]
    if len(set(tail)) == 1:
        return f"Plateau({tail[0]})"
    last3 = values[-3:]
    if len(last3) == 3 and last3[0] < last3[1] < last3[2]:
        return "Growing"
    return "Inconclusive"


def export_dot(ball: ConjGraphBall, suppress_loops: bool = False) -> str:
    """Deterministic DOT rendering; vertex order is the sorted canonical
    encoding; identical balls always render to identical text."""
    lines = ["digraph conj {"]
    for enc in sorted(v.encode() for v in ball.vertices):
        lines.append(f'  "{enc}";')
    seen = set()
    for e in ball.edges:
        if suppress_loops and e.is_loop():
            continue
        key = (e.src.encode(), e.label.label(), e.dst.encode())
        if key in seen:
            continue
        seen.add(key)
        lines.append(f'  "{key[0]}" -> "{key[2]}" [label="{key[1]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
