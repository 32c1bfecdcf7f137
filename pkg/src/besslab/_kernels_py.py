"""Pure-Python kernels for the hot search loops.

Interface twin of the compiled `_kernels` extension; `besslab._backend` picks
whichever is importable. All functions are deterministic: loops run in
ascending index order and the first witness found is returned.

Status codes shared by the searches: 0 = exhausted with no witness,
1 = witness found, 2 = budget exceeded (inconclusive).
"""

from __future__ import annotations

from typing import Optional, Sequence

BACKEND = "python"


class _Budget(Exception):
    pass


def build_masks(edges: Sequence[Sequence[int]]) -> list[int]:
    """Vertex bitmask per edge."""
    out = []
    for edge in edges:
        m = 0
        for x in edge:
            m |= 1 << x
        out.append(m)
    return out


def _future_growth(r: int, e: int, s: int, linear: bool) -> int:
    # Minimal union growth contributed by edges s..e-1 (0-based count of
    # edges already chosen); in a linear hypergraph edge number j+1 overlaps
    # the previous j edges in at most j vertices.
    if not linear:
        return 0
    total = 0
    for j in range(s, e):
        if r > j:
            total += r - j
    return total


def sparse_violation(
    edges: Sequence[Sequence[int]],
    n: int,
    incidence: Sequence[Sequence[int]],
    r: int,
    v: int,
    e: int,
    budget: int,
    linear: bool,
) -> tuple[int, Optional[tuple[int, ...]], int]:
    """Search for e distinct edges whose union has at most v vertices.

    Depth-first over index-increasing e-subsets.  A partial subset is pruned
    as soon as its union plus the minimal guaranteed growth of the remaining
    edges exceeds v; when the remaining savings budget forces the next edge
    to overlap the current union, candidates are drawn from the incidence
    lists instead of the full edge range.
    """
    m = len(edges)
    if e > m:
        return 0, None, 0
    masks = build_masks(edges)
    nodes = 0
    chosen: list[int] = []

    growth = [_future_growth(r, e, s, linear) for s in range(e + 1)]

    def extend(last: int, union: int, usize: int) -> Optional[tuple[int, ...]]:
        nonlocal nodes
        s = len(chosen)
        if s == e:
            return tuple(chosen)
        # Overlap the next edge must achieve for a violation to stay possible.
        t_min = usize + r + growth[s + 1] - v
        if t_min > min(r, s if linear else r):
            return None
        if t_min >= 1:
            cand: set[int] = set()
            u = union
            while u:
                vert = (u & -u).bit_length() - 1
                u &= u - 1
                for idx in incidence[vert]:
                    if idx > last:
                        cand.add(idx)
            candidates = sorted(cand)
        else:
            candidates = range(last + 1, m)
        for idx in candidates:
            nodes += 1
            if nodes > budget:
                raise _Budget
            new_union = union | masks[idx]
            new_size = new_union.bit_count()
            if new_size + growth[s + 1] > v:
                continue
            chosen.append(idx)
            found = extend(idx, new_union, new_size)
            if found is not None:
                return found
            chosen.pop()
        return None

    try:
        found = extend(-1, 0, 0)
    except _Budget:
        return 2, None, nodes
    if found is None:
        return 0, None, nodes
    return 1, found, nodes


def turan_max(
    cand_edges: Sequence[Sequence[int]],
    n: int,
    v: int,
    e: int,
    budget: int,
) -> tuple[int, int, tuple[int, ...], int]:
    """Branch and bound for the largest candidate family with every e-subset
    spanning at least v+1 vertices.

    Returns (status, best_size, witness_indices, nodes); status 2 means the
    budget ran out and best_size is only a lower bound.
    """
    masks = build_masks(cand_edges)
    m = len(masks)
    best = 0
    witness: tuple[int, ...] = ()
    chosen: list[int] = []
    chosen_masks: list[int] = []
    nodes = 0

    def feasible(mask: int) -> bool:
        # No (e-1)-subset of the chosen family may close a violation with the
        # new edge: search unions staying within v vertices.
        k = len(chosen_masks)
        if k < e - 1:
            return True

        def probe(start: int, acc: int, depth: int) -> bool:
            if depth == e - 1:
                return True  # found e-1 edges with |union + new| <= v
            for i in range(start, k):
                nxt = acc | chosen_masks[i]
                if nxt.bit_count() <= v and probe(i + 1, nxt, depth + 1):
                    return True
            return False

        return not probe(0, mask, 0)

    def walk(start: int) -> None:
        nonlocal best, witness, nodes
        if len(chosen) > best:
            best = len(chosen)
            witness = tuple(chosen)
        for i in range(start, m):
            if len(chosen) + (m - i) <= best:
                break
            nodes += 1
            if nodes > budget:
                raise _Budget
            if masks[i].bit_count() <= v and not feasible(masks[i]):
                continue
            chosen.append(i)
            chosen_masks.append(masks[i])
            walk(i + 1)
            chosen.pop()
            chosen_masks.pop()

    try:
        walk(0)
    except _Budget:
        return 2, best, witness, nodes
    return 0, best, witness, nodes


def _shared(indptr: Sequence[int], nbr: Sequence[int], data: Sequence[int], i: int, j: int) -> int:
    """data value for neighbor j of edge i; -1 when not adjacent."""
    lo, hi = indptr[i], indptr[i + 1]
    while lo < hi:
        mid = (lo + hi) // 2
        if nbr[mid] < j:
            lo = mid + 1
        elif nbr[mid] > j:
            hi = mid
        else:
            return data[mid]
    return -1


def rainbow_cycle(
    m: int,
    indptr: Sequence[int],
    nbr_edge: Sequence[int],
    nbr_vertex: Sequence[int],
    nbr_part: Sequence[int],
    k: int,
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """First rainbow k-cycle (k in {3, 4}) in a linear partite hypergraph.

    The adjacency is CSR over edges: neighbor edge ids ascending with the
    shared vertex and its part in parallel arrays.  Returns (edges, vertices)
    in Berge order (v1, v2 in A1; v2, v3 in A2; ...), or None.
    """
    if k == 3:
        for a in range(m):
            lo, hi = indptr[a], indptr[a + 1]
            span = range(lo, hi)
            for ib in span:
                b = nbr_edge[ib]
                if b <= a:
                    continue
                for ic in span:
                    c = nbr_edge[ic]
                    if c <= b:
                        continue
                    if nbr_part[ib] == nbr_part[ic]:
                        continue
                    pos = _bsearch(indptr, nbr_edge, b, c)
                    if pos < 0:
                        continue
                    if nbr_part[pos] in (nbr_part[ib], nbr_part[ic]):
                        continue
                    # v2 = shared(a,b), v3 = shared(b,c), v1 = shared(c,a)
                    return (a, b, c), (nbr_vertex[ic], nbr_vertex[ib], nbr_vertex[pos])
        return None
    if k == 4:
        for a in range(m):
            lo, hi = indptr[a], indptr[a + 1]
            for ib in range(lo, hi):
                b = nbr_edge[ib]
                if b <= a:
                    continue
                for id_ in range(ib + 1, hi):
                    d = nbr_edge[id_]
                    if nbr_part[ib] == nbr_part[id_]:
                        continue
                    # c adjacent to both b and d, c > a, c not in {b, d}
                    pb, pbe = indptr[b], indptr[b + 1]
                    for ic in range(pb, pbe):
                        c = nbr_edge[ic]
                        if c <= a or c == d:
                            continue
                        if nbr_part[ic] in (nbr_part[ib], nbr_part[id_]):
                            continue
                        pos = _bsearch(indptr, nbr_edge, c, d)
                        if pos < 0:
                            continue
                        if nbr_part[pos] in (nbr_part[ib], nbr_part[id_], nbr_part[ic]):
                            continue
                        # order a, b, c, d: v2=s(a,b) v3=s(b,c) v4=s(c,d) v1=s(d,a)
                        return (
                            (a, b, c, d),
                            (nbr_vertex[id_], nbr_vertex[ib], nbr_vertex[ic], nbr_vertex[pos]),
                        )
        return None
    raise ValueError(f"unsupported cycle length {k}")


def _bsearch(indptr: Sequence[int], nbr: Sequence[int], i: int, j: int) -> int:
    lo, hi = indptr[i], indptr[i + 1]
    while lo < hi:
        mid = (lo + hi) // 2
        if nbr[mid] < j:
            lo = mid + 1
        elif nbr[mid] > j:
            hi = mid
        else:
            return mid
    return -1


def grid_search(
    edges: Sequence[Sequence[int]],
    n: int,
    indptr: Sequence[int],
    nbr_edge: Sequence[int],
    budget: int,
) -> tuple[int, Optional[tuple[tuple[int, int, int], tuple[int, int, int]]]]:
    """Find two internally-disjoint edge triples with all nine cross
    intersections nonempty (the 3x3 grid pattern).

    Canonical scan: i0 is the least edge index of the six; the opposite
    triple lies inside N(i0).  Returns (status, (tripleA, tripleB)).
    """
    m = len(edges)
    masks = build_masks(edges)
    steps = 0
    for i0 in range(m):
        lo, hi = indptr[i0], indptr[i0 + 1]
        nbrs = [nbr_edge[t] for t in range(lo, hi) if nbr_edge[t] > i0]
        ln = len(nbrs)
        for x in range(ln):
            b1 = nbrs[x]
            for y in range(x + 1, ln):
                b2 = nbrs[y]
                steps += 1
                if steps > budget:
                    return 2, None
                if masks[b1] & masks[b2]:
                    continue
                # candidates for the rest of i0's triple: common neighbors of
                # b1 and b2 that avoid i0 entirely
                common = _intersect(indptr, nbr_edge, b1, b2)
                cand = [a for a in common if a > i0 and not (masks[a] & masks[i0])]
                la = len(cand)
                if la < 2:
                    continue
                for p in range(la):
                    a2 = cand[p]
                    for t in range(p + 1, la):
                        a3 = cand[t]
                        steps += 1
                        if steps > budget:
                            return 2, None
                        if masks[a2] & masks[a3]:
                            continue
                        # third opposite edge: meets i0, a2, a3; disjoint
                        # from b1 and b2; larger than b2 (T2 sorted)
                        for b3 in _intersect(indptr, nbr_edge, a2, a3):
                            if b3 <= b2 or b3 == b1:
                                continue
                            if masks[b3] & (masks[b1] | masks[b2]):
                                continue
                            if _bsearch(indptr, nbr_edge, i0, b3) < 0:
                                continue
                            return 1, ((i0, a2, a3), (b1, b2, b3))
    return 0, None


def _intersect(indptr: Sequence[int], nbr: Sequence[int], i: int, j: int) -> list[int]:
    a, ae = indptr[i], indptr[i + 1]
    b, be = indptr[j], indptr[j + 1]
    out = []
    while a < ae and b < be:
        x, y = nbr[a], nbr[b]
        if x == y:
            out.append(x)
            a += 1
            b += 1
        elif x < y:
            a += 1
        else:
            b += 1
    return out
