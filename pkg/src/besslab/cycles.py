"""Berge-cycle, rainbow-cycle and 3x3-grid detection on linear hypergraphs.

Detectors walk the edge-intersection adjacency (neighbor edge, shared vertex,
part of the shared vertex). They require verified linearity: in a linear
hypergraph adjacent edges share exactly one vertex, which is what makes the
turning vertices of a cycle well defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from besslab import _backend
from besslab.core import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Hypergraph,
    ParameterError,
    check_sparse,
    edge_adjacency,
    is_linear,
)


@dataclass
class BergeCycle:
    """Alternating cycle v1, A1, v2, A2, ..., vk, Ak (0-based tuples here);
    vertices[i] and vertices[i+1 mod k] both lie in edges[i]."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    rainbow: bool

    @property
    def k(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict:
        return {
            "kind": "rainbow-cycle" if self.rainbow else "berge-cycle",
            "k": self.k,
            "vertices": list(self.vertices),
            "edges": list(self.edges),
        }

    def validate(self, h: Hypergraph) -> None:
        """Independent re-check of the cycle invariants."""
        k = self.k
        if k < 2 or len(self.vertices) != k:
            raise AssertionError("cycle must alternate k vertices and k edges")
        if len(set(self.vertices)) != k:
            raise AssertionError("cycle vertices must be distinct")
        if len(set(self.edges)) != k:
            raise AssertionError("cycle edges must be distinct")
        for i in range(k):
            edge = h.edges[self.edges[i]]
            if self.vertices[i] not in edge or self.vertices[(i + 1) % k] not in edge:
                raise AssertionError(f"cycle incidence broken at edge position {i}")
        if self.rainbow:
            if h.parts is None:
                raise AssertionError("rainbow flag requires a partite hypergraph")
            parts = {h.parts[v] for v in self.vertices}
            if len(parts) != k:
                raise AssertionError("rainbow cycle vertices must occupy k distinct parts")


@dataclass
class GridCertificate:
    """Two internally-disjoint edge triples whose nine cross intersections
    are nonempty; the nine shared vertices are then automatically distinct
    and the six edges span exactly 6r-9 vertices."""

    triple_a: tuple[int, int, int]
    triple_b: tuple[int, int, int]
    support: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "kind": "grid",
            "tripleA": list(self.triple_a),
            "tripleB": list(self.triple_b),
            "support": list(self.support),
        }

    def validate(self, h: Hypergraph) -> None:
        edges_a = [set(h.edges[i]) for i in self.triple_a]
        edges_b = [set(h.edges[i]) for i in self.triple_b]
        if len(set(self.triple_a + self.triple_b)) != 6:
            raise AssertionError("grid must name six distinct edges")
        for group in (edges_a, edges_b):
            for i in range(3):
                for j in range(i + 1, 3):
                    if group[i] & group[j]:
                        raise AssertionError("grid triples must be internally disjoint")
        crossing: set[int] = set()
        for ea in edges_a:
            for eb in edges_b:
                shared = ea & eb
                if len(shared) != 1:
                    raise AssertionError("each cross pair must share exactly one vertex")
                crossing.update(shared)
        if len(crossing) != 9:
            raise AssertionError("grid must realize nine distinct crossing vertices")
        union = h.span(self.triple_a + self.triple_b)
        if union != self.support:
            raise AssertionError("grid support mismatch")
        if len(union) != 6 * h.r - 9:
            raise AssertionError("grid support must have exactly 6r-9 vertices")


def _require_linear_partite(h: Hypergraph, need_parts: bool) -> None:
    if need_parts and h.parts is None:
        raise ParameterError("detector requires an r-partite hypergraph")
    if is_linear(h) is not None:
        raise ParameterError("detector requires a linear hypergraph")


def find_rainbow_cycle(h: Hypergraph, k: int) -> Optional[BergeCycle]:
    """First rainbow k-cycle (k in {3, 4}) or None.

    A rainbow k-cycle needs k distinct parts, hence k <= r is a precondition.
    """
    if k not in (3, 4):
        raise ParameterError("rainbow search supports k in {3, 4}")
    _require_linear_partite(h, need_parts=True)
    if h.r < k:
        raise ParameterError(f"rainbow {k}-cycles need r >= {k} parts")
    indptr, nbr_edge, nbr_vertex = edge_adjacency(h)
    assert h.parts is not None
    nbr_part = [h.parts[v] for v in nbr_vertex]
    found = _backend.rainbow_cycle(h.m, indptr, nbr_edge, nbr_vertex, nbr_part, k)
    if found is None:
        return None
    edges, vertices = found
    cycle = BergeCycle(vertices=tuple(vertices), edges=tuple(edges), rainbow=True)
    cycle.validate(h)
    return cycle


def find_grid(h: Hypergraph, budget: int = DEFAULT_BUDGET) -> Optional[GridCertificate]:
    """First G_{3x3} pattern or None; raises BudgetExceeded when inconclusive."""
    if h.r < 3:
        raise ParameterError("grid detection needs r >= 3")
    _require_linear_partite(h, need_parts=False)
    indptr, nbr_edge, _ = edge_adjacency(h)
    status, triples = _backend.grid_search(h.edges, h.n, indptr, nbr_edge, budget)
    if status == 2:
        raise BudgetExceeded("grid search exceeded budget")
    if status == 0:
        return None
    assert triples is not None
    triple_a, triple_b = triples
    cert = GridCertificate(
        triple_a=tuple(triple_a),
        triple_b=tuple(triple_b),
        support=h.span(triple_a + triple_b),
    )
    cert.validate(h)
    return cert


def equivalence_63(h: Hypergraph, budget: int = DEFAULT_BUDGET) -> tuple[bool, bool]:
    """Independently computed (rainbow-3-free, G_r(3r-3,3)-free) flags.

    The two detectors must agree on linear r-partite hypergraphs; a
    disagreement would mean one of them is buggy and is raised as a hard
    internal error rather than returned.
    """
    _require_linear_partite(h, need_parts=True)
    rainbow3_free = find_rainbow_cycle(h, 3) is None
    g63_free = check_sparse(h, 3 * h.r - 3, 3, mode="pruned", budget=budget) is None
    if rainbow3_free != g63_free:
        raise RuntimeError(
            "detector disagreement: rainbow-3-freeness and (3r-3,3)-freeness "
            f"returned {rainbow3_free} vs {g63_free}"
        )
    return rainbow3_free, g63_free
