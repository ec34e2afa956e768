"""Exhaustive enumeration of the embeddings of a small graph.

Rotation systems are generated vertex by vertex (cyclic orders of incoming
arcs) and crossed with all twist assignments, then reduced modulo the
equivalence moves: vertex flips, the global mirror and graph automorphisms.
Classes are keyed by their canonical (lexicographically minimal) member, so
deduplication is exact.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

from .errors import BudgetError, GraphError
from .graph_core import SymmetricDigraph, arc_edge
from .rotation_system import (
    FacialDecomposition,
    RotationSystem,
    flip_vertex,
    mirror,
    trace_faces,
)

__all__ = [
    "EmbeddingClass",
    "GenusSummary",
    "enumerate_embeddings",
    "rank_by_comfortability",
    "min_max_genus",
    "graph_automorphisms",
    "default_budget",
]

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "EW_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise BudgetError(f"{BUDGET_ENV}={raw!r} is not an integer")
    return DEFAULT_BUDGET


def raw_system_count(g: SymmetricDigraph) -> int:
    count = 2 ** g.edge_count
    for x in range(g.vertex_count):
        count *= math.factorial(g.degree(x) - 1)
    return count


def graph_automorphisms(g: SymmetricDigraph) -> list[tuple[int, ...]]:
    """All adjacency-preserving vertex permutations (brute force; desk scale)."""
    adj = {frozenset(e) for e in g.edges()}
    degs = [g.degree(x) for x in range(g.vertex_count)]
    autos = []
    for perm in itertools.permutations(range(g.vertex_count)):
        if any(degs[x] != degs[perm[x]] for x in range(g.vertex_count)):
            continue
        if all(frozenset((perm[u], perm[v])) in adj for u, v in g.edges()):
            autos.append(perm)
    return autos


_Key = tuple[tuple[int, ...], tuple[int, ...]]


def _apply_automorphism(g: SymmetricDigraph, key: _Key, perm) -> _Key:
    rot, twist = key
    amap = [g.arc_between(perm[g.origin[e]], perm[g.terminus[e]]) for e in range(g.arc_count)]
    rot2 = [0] * g.arc_count
    for e in range(g.arc_count):
        rot2[amap[e]] = amap[rot[e]]
    twist2 = [0] * g.edge_count
    for e in range(0, g.arc_count, 2):
        twist2[arc_edge(amap[e])] = twist[arc_edge(e)]
    return tuple(rot2), tuple(twist2)


def _all_keys(g: SymmetricDigraph):
    per_vertex = []
    for x in range(g.vertex_count):
        ax = g.incoming_arcs(x)
        cycles = []
        for perm in itertools.permutations(ax[1:]):
            order = (ax[0],) + perm
            cycles.append(tuple((order[i], order[(i + 1) % len(order)]) for i in range(len(order))))
        per_vertex.append(cycles)
    for combo in itertools.product(*per_vertex):
        rot = [0] * g.arc_count
        for cyc in combo:
            for e, f in cyc:
                rot[e] = f
        rot = tuple(rot)
        for bits in range(2 ** g.edge_count):
            yield rot, tuple((bits >> k) & 1 for k in range(g.edge_count))


@dataclass(frozen=True)
class EmbeddingClass:
    """One embedding up to vertex flips, mirror and graph automorphisms."""

    representative: RotationSystem
    decomposition: FacialDecomposition
    orientable: bool
    genus: int
    face_lengths: tuple[int, ...]
    self_intersection_profile: tuple[tuple[int, int], ...]
    orbit_size: int

    @property
    def surface_label(self) -> str:
        return f"{'g' if self.orientable else 'k'}={self.genus}"

    @property
    def label(self) -> str:
        faces = ",".join(str(x) for x in self.face_lengths)
        return f"{self.surface_label} [{faces}]"


def _class_of(rs: RotationSystem, orbit_size: int) -> EmbeddingClass:
    fd = trace_faces(rs)
    profile = tuple(
        sorted(((len(f), len(fd.self_intersections[i])) for i, f in enumerate(fd.faces)), reverse=True)
    )
    return EmbeddingClass(
        representative=rs,
        decomposition=fd,
        orientable=fd.orientable,
        genus=fd.genus,
        face_lengths=fd.face_lengths,
        self_intersection_profile=profile,
        orbit_size=orbit_size,
    )


def enumerate_embeddings(
    g: SymmetricDigraph, budget: int | None = None
) -> list[EmbeddingClass]:
    """All embedding classes of ``g``, most faces first.

    Raises :class:`BudgetError` when the raw count Prod (deg-1)! * 2^|E|
    exceeds the budget (override with the EW_BUDGET environment variable).
    """
    budget = default_budget() if budget is None else budget
    raw = raw_system_count(g)
    if raw > budget:
        raise BudgetError(
            f"{raw} raw rotation systems exceed the budget {budget}; "
            "try a smaller graph or raise EW_BUDGET"
        )
    autos = graph_automorphisms(g)

    seen: set[_Key] = set()
    classes: list[EmbeddingClass] = []
    for key in _all_keys(g):
        if key in seen:
            continue
        orbit = {key}
        stack = [key]
        while stack:
            cur = stack.pop()
            rs = RotationSystem(g, *cur)
            neighbors = [
                ((f := flip_vertex(rs, x)).rot, f.twist) for x in range(g.vertex_count)
            ]
            m = mirror(rs)
            neighbors.append((m.rot, m.twist))
            neighbors.extend(_apply_automorphism(g, cur, perm) for perm in autos)
            for nxt in neighbors:
                if nxt not in orbit:
                    orbit.add(nxt)
                    stack.append(nxt)
        seen |= orbit
        rep = RotationSystem(g, *min(orbit))
        classes.append(_class_of(rep, len(orbit)))

    classes.sort(key=lambda c: (not c.orientable, c.genus, c.face_lengths, c.self_intersection_profile))
    return classes


@dataclass(frozen=True)
class RankedClass:
    embedding: EmbeddingClass
    average: float
    limit: float


def rank_by_comfortability(classes, a: float) -> list[RankedClass]:
    """Classes sorted by average comfortability at coin parameter ``a``
    (descending); ties keep the enumeration order."""
    from .comfortability import limit_comfortability, positive_coin_average

    if not 0.0 < a < 1.0:
        raise GraphError("ranking needs 0 < a < 1")
    ranked = [
        RankedClass(
            embedding=c,
            average=positive_coin_average(c.decomposition, a),
            limit=limit_comfortability(c.decomposition),
        )
        for c in classes
    ]
    ranked.sort(key=lambda r: -r.average)
    return ranked


@dataclass(frozen=True)
class GenusSummary:
    orientable_min: int | None
    orientable_max: int | None
    nonorientable_min: int | None
    nonorientable_max: int | None


def min_max_genus(classes) -> GenusSummary:
    ori = [c.genus for c in classes if c.orientable]
    non = [c.genus for c in classes if not c.orientable]
    return GenusSummary(
        orientable_min=min(ori) if ori else None,
        orientable_max=max(ori) if ori else None,
        nonorientable_min=min(non) if non else None,
        nonorientable_max=max(non) if non else None,
    )
