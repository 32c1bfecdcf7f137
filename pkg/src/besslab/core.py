"""Hypergraph representation and the ground-truth verifiers.

Everything downstream (cycle/grid detectors, the construction pipeline, the
exact oracle) is checked against `is_linear` and `check_sparse`; both operate
on vertex bitmasks so subset unions are single OR + popcount steps.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from besslab import _backend

DEFAULT_BUDGET = 10**9


class MalformedHypergraphError(ValueError):
    """Structural defect: not a valid r-uniform hypergraph at all."""


class ParameterError(ValueError):
    """An operation was called outside its documented parameter range."""


class BudgetExceeded(RuntimeError):
    """Search ran out of budget: the outcome is inconclusive, never a yes."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


@dataclass
class ViolationCertificate:
    """Concrete witness that a forbidden configuration exists.

    For kind="sparse" the certificate names e_bound edges whose union has at
    most v_bound vertices; span is always the exact union of the named edges.
    """

    kind: str  # sparse | linearity | rainbow-cycle | grid
    edge_indices: tuple[int, ...]
    span: tuple[int, ...]
    v_bound: Optional[int] = None
    e_bound: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "edges": list(self.edge_indices),
            "span": list(self.span),
            "v": self.v_bound,
            "e": self.e_bound,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ViolationCertificate":
        return cls(
            kind=obj["kind"],
            edge_indices=tuple(obj["edges"]),
            span=tuple(obj["span"]),
            v_bound=obj.get("v"),
            e_bound=obj.get("e"),
        )

    def validate(self, h: "Hypergraph") -> None:
        """Re-check the certificate against its hypergraph."""
        union: set[int] = set()
        for i in self.edge_indices:
            union.update(h.edges[i])
        if tuple(sorted(union)) != self.span:
            raise AssertionError("certificate span does not match edge union")
        if self.kind == "sparse":
            if len(self.edge_indices) != self.e_bound:
                raise AssertionError("sparse certificate names wrong edge count")
            if len(self.span) > (self.v_bound or 0):
                raise AssertionError("sparse certificate union exceeds v")


@dataclass
class DegreeProfile:
    """Vertex degrees plus the counts used throughout the degree arguments:
    lambda (degree-two vertices) and mu (degree-one vertices)."""

    degrees: dict[int, int]
    lambda_deg2: int
    mu_deg1: int

    @property
    def max_degree(self) -> int:
        return max(self.degrees.values()) if self.degrees else 0


class Hypergraph:
    """Immutable r-uniform hypergraph on vertices 0..n-1.

    parts, when present, maps each vertex to a part index in 0..r-1 and every
    edge meets every part exactly once (r-partite).
    """

    __slots__ = ("r", "n", "edges", "parts", "_masks", "_incidence", "_linear", "_adjacency")

    def __init__(
        self,
        r: int,
        n: int,
        edges: Iterable[Sequence[int]],
        parts: Optional[Sequence[int]] = None,
    ):
        self.r = int(r)
        self.n = int(n)
        norm = []
        for edge in edges:
            t = tuple(sorted(edge))
            if len(t) != self.r or len(set(t)) != self.r:
                raise MalformedHypergraphError(f"edge {edge!r} is not a set of {self.r} vertices")
            if t[0] < 0 or t[-1] >= self.n:
                raise MalformedHypergraphError(f"edge {edge!r} has vertices outside 0..{self.n - 1}")
            norm.append(t)
        if len(set(norm)) != len(norm):
            raise MalformedHypergraphError("duplicate edges")
        self.edges: tuple[tuple[int, ...], ...] = tuple(norm)
        if parts is not None:
            parts = tuple(int(p) for p in parts)
            if len(parts) != self.n:
                raise MalformedHypergraphError("parts must label every vertex")
            if parts and not all(0 <= p < self.r for p in parts):
                raise MalformedHypergraphError("part indices must lie in 0..r-1")
            for t in self.edges:
                if sorted(parts[x] for x in t) != list(range(self.r)):
                    raise MalformedHypergraphError(f"edge {t!r} does not meet every part exactly once")
        self.parts: Optional[tuple[int, ...]] = parts
        self._masks: Optional[list[int]] = None
        self._incidence: Optional[list[list[int]]] = None
        self._linear: Optional[ViolationCertificate | bool] = None
        self._adjacency = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_partite(self) -> bool:
        return self.parts is not None

    def masks(self) -> list[int]:
        if self._masks is None:
            self._masks = _build_masks(self.edges)
        return self._masks

    def incidence(self) -> list[list[int]]:
        """Vertex -> ascending list of incident edge indices."""
        if self._incidence is None:
            inc: list[list[int]] = [[] for _ in range(self.n)]
            for i, edge in enumerate(self.edges):
                for x in edge:
                    inc[x].append(i)
            self._incidence = inc
        return self._incidence

    def span(self, edge_indices: Iterable[int]) -> tuple[int, ...]:
        union: set[int] = set()
        for i in edge_indices:
            union.update(self.edges[i])
        return tuple(sorted(union))

    def __repr__(self) -> str:  # pragma: no cover
        return f"Hypergraph(r={self.r}, n={self.n}, m={self.m}, partite={self.is_partite})"


def _build_masks(edges: Sequence[Sequence[int]]) -> list[int]:
    out = []
    for edge in edges:
        m = 0
        for x in edge:
            m |= 1 << x
        out.append(m)
    return out


def is_linear(h: Hypergraph) -> Optional[ViolationCertificate]:
    """None iff every pair of distinct edges shares at most one vertex;
    otherwise a certificate naming the first offending pair."""
    if h._linear is True:
        return None
    if isinstance(h._linear, ViolationCertificate):
        return h._linear
    seen: dict[tuple[int, int], int] = {}
    for i, edge in enumerate(h.edges):
        for pair in combinations(edge, 2):
            j = seen.get(pair)
            if j is not None:
                cert = ViolationCertificate(
                    kind="linearity",
                    edge_indices=(j, i),
                    span=h.span((j, i)),
                )
                h._linear = cert
                return cert
            seen[pair] = i
    h._linear = True
    return None


def check_sparse(
    h: Hypergraph,
    v: int,
    e: int,
    mode: str = "pruned",
    budget: int = DEFAULT_BUDGET,
) -> Optional[ViolationCertificate]:
    """None iff no e distinct edges of h are spanned by at most v vertices.

    mode="direct" enumerates all C(m, e) subsets and requires that count to
    fit the budget; mode="pruned" runs the depth-first search with union
    growth bounds. Raises BudgetExceeded instead of ever answering yes
    silently.
    """
    if e < 2:
        raise ParameterError("check_sparse requires e >= 2")
    if v < h.r:
        raise ParameterError("check_sparse requires v >= r")
    if mode == "direct":
        if h.m >= e and math.comb(h.m, e) > budget:
            raise BudgetExceeded(f"direct mode needs C({h.m},{e}) > budget subsets")
        masks = h.masks()
        for subset in combinations(range(h.m), e):
            union = 0
            for i in subset:
                union |= masks[i]
            if union.bit_count() <= v:
                return ViolationCertificate("sparse", subset, h.span(subset), v, e)
        return None
    if mode != "pruned":
        raise ParameterError(f"unknown mode {mode!r}")
    linear = is_linear(h) is None
    status, indices, nodes = _backend.sparse_violation(
        h.edges, h.n, h.incidence(), h.r, v, e, budget, linear
    )
    if status == 2:
        raise BudgetExceeded("pruned search exceeded budget", nodes)
    if status == 1:
        assert indices is not None
        return ViolationCertificate("sparse", tuple(indices), h.span(indices), v, e)
    return None


def degree_profile(h: Hypergraph) -> DegreeProfile:
    """Exact incidence counts plus the lambda/mu summary."""
    degrees = {v: 0 for v in range(h.n)}
    for edge in h.edges:
        for x in edge:
            degrees[x] += 1
    values = degrees.values()
    return DegreeProfile(
        degrees=degrees,
        lambda_deg2=sum(1 for d in values if d == 2),
        mu_deg1=sum(1 for d in values if d == 1),
    )


def edge_adjacency(h: Hypergraph) -> tuple[list[int], list[int], list[int]]:
    """CSR edge-intersection adjacency of a linear hypergraph.

    Returns (indptr, nbr_edge, nbr_vertex): for edge i the neighbors are
    nbr_edge[indptr[i]:indptr[i+1]] ascending, sharing nbr_vertex[...].
    """
    if h._adjacency is not None:
        return h._adjacency
    if is_linear(h) is not None:
        raise ParameterError("edge adjacency is defined for linear hypergraphs")
    neighbor: list[list[tuple[int, int]]] = [[] for _ in range(h.m)]
    for vertex, incident in enumerate(h.incidence()):
        if len(incident) < 2:
            continue
        for i in incident:
            for j in incident:
                if i != j:
                    neighbor[i].append((j, vertex))
    indptr = [0]
    nbr_edge: list[int] = []
    nbr_vertex: list[int] = []
    for i in range(h.m):
        neighbor[i].sort()
        for j, vertex in neighbor[i]:
            nbr_edge.append(j)
            nbr_vertex.append(vertex)
        indptr.append(len(nbr_edge))
    h._adjacency = (indptr, nbr_edge, nbr_vertex)
    return h._adjacency


# --- text hypergraph format -------------------------------------------------

def dump_hypergraph(h: Hypergraph) -> str:
    lines = [f"HG r={h.r} n={h.n} m={h.m} partite={1 if h.is_partite else 0}"]
    if h.is_partite:
        assert h.parts is not None
        lines.append("PARTS " + " ".join(str(p) for p in h.parts))
    for edge in h.edges:
        lines.append(" ".join(str(x) for x in edge))
    return "\n".join(lines) + "\n"


def load_hypergraph(text: str) -> Hypergraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("HG "):
        raise MalformedHypergraphError("missing HG header line")
    header: dict[str, int] = {}
    for tok in lines[0].split()[1:]:
        key, _, value = tok.partition("=")
        header[key] = int(value)
    for key in ("r", "n", "m", "partite"):
        if key not in header:
            raise MalformedHypergraphError(f"header missing {key}")
    idx = 1
    parts = None
    if header["partite"]:
        if idx >= len(lines) or not lines[idx].startswith("PARTS"):
            raise MalformedHypergraphError("partite file missing PARTS line")
        parts = [int(t) for t in lines[idx].split()[1:]]
        idx += 1
    edges = []
    for ln in lines[idx:]:
        edges.append(tuple(int(t) for t in ln.split()))
    if len(edges) != header["m"]:
        raise MalformedHypergraphError(f"expected {header['m']} edges, found {len(edges)}")
    return Hypergraph(header["r"], header["n"], edges, parts)


def write_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_hypergraph(h))


def read_hypergraph(path) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_hypergraph(fh.read())


def write_certificate(cert: ViolationCertificate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cert.to_json(), fh, indent=2)
        fh.write("\n")
