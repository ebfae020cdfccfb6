"""Biclique partitions: edge-disjoint complete bipartite pieces of a graph.

The canonical instance is a vertex count plus a biclique list; the graph
is derived by taking the union of all cross pairs, which makes
edge-disjointness structural (union_graph refuses collisions) and lets
validate() stay total over arbitrary input.  Also holds the two cheap
coloring constructions and the exact minimum biclique partition oracle.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import CapacityError, EdgeCollisionError, OracleLimitError
from .graphs import Coloring, Graph

BITVECTOR_MAX = 62
DEFAULT_BP_VERTEX_LIMIT = 8
DEFAULT_BP_EDGE_LIMIT = 20

# Violation kinds reported by validate().
OVERLAPPING_PARTS = "overlapping-parts"
EMPTY_PART = "empty-part"
EDGE_COLLISION = "edge-collision"
UNCOVERED_EDGE = "uncovered-edge"
NON_EDGE_COVERED = "non-edge-covered"


@dataclass(frozen=True)
class Biclique:
    """One complete bipartite piece with an ordered (part_a, part_b) split.

    The (A, B) order is significant downstream: the recursive coloring
    picks one named side of a pivot biclique, so (A, B) and (B, A) are
    different objects even though they cover the same pairs.  Parts are
    stored as sorted duplicate-free tuples.  Construction does not check
    disjointness or nonemptiness; validate() reports those.
    """

    part_a: tuple[int, ...]
    part_b: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "part_a", tuple(sorted(set(self.part_a))))
        object.__setattr__(self, "part_b", tuple(sorted(set(self.part_b))))
        for v in (*self.part_a, *self.part_b):
            if v < 0:
                raise ValueError("vertices must be nonnegative")

    @cached_property
    def a_mask(self) -> int:
        return sum(1 << v for v in self.part_a)

    @cached_property
    def b_mask(self) -> int:
        return sum(1 << v for v in self.part_b)

    @property
    def size(self) -> int:
        return len(self.part_a) * len(self.part_b)

    def pairs(self) -> Iterator[tuple[int, int]]:
        """All cross pairs, normalized to sorted order."""
        for a in self.part_a:
            for b in self.part_b:
                yield (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class BicliquePartition:
    """A vertex count plus a biclique list; the graph is derived, not stored.

    Vertices belonging to no biclique are legal isolated vertices.
    """

    n: int
    bicliques: tuple[Biclique, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bicliques", tuple(self.bicliques))
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for i, b in enumerate(self.bicliques):
            for v in (*b.part_a, *b.part_b):
                if v >= self.n:
                    raise ValueError(
                        f"biclique {i} uses vertex {v}, outside 0..{self.n - 1}"
                    )

    @property
    def m(self) -> int:
        return len(self.bicliques)

    @cached_property
    def graph(self) -> Graph:
        """Union of all cross pairs; raises EdgeCollisionError if not disjoint."""
        return union_graph(self)


@dataclass(frozen=True)
class Violation:
    kind: str
    details: dict


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def union_graph(p: BicliquePartition) -> Graph:
    """Union of every cross pair of every biclique, refusing duplicates."""
    seen: dict[tuple[int, int], int] = {}
    for i, b in enumerate(p.bicliques):
        for u, v in b.pairs():
            if u == v:
                raise ValueError(f"biclique {i} has overlapping parts at vertex {u}")
            if (u, v) in seen:
                raise EdgeCollisionError(
                    f"edge ({u}, {v}) covered by bicliques {seen[(u, v)]} and {i}"
                )
            seen[(u, v)] = i
    return Graph(p.n, frozenset(seen))


def validate(p: BicliquePartition, graph: Graph | None = None) -> ValidationReport:
    """Report every violated partition invariant with a concrete witness.

    Total: never raises on semantically bad input, it reports instead.
    With `graph` supplied, additionally compares the covered pairs against
    that graph's edge set (kinds uncovered-edge / non-edge-covered);
    without it the derived union graph makes those two kinds impossible.
    """
    out: list[Violation] = []
    for i, b in enumerate(p.bicliques):
        overlap = sorted(set(b.part_a) & set(b.part_b))
        if overlap:
            out.append(Violation(OVERLAPPING_PARTS, {"biclique": i, "vertices": overlap}))
        if not b.part_a or not b.part_b:
            out.append(Violation(EMPTY_PART, {"biclique": i}))
    covered: dict[tuple[int, int], int] = {}
    for i, b in enumerate(p.bicliques):
        for u, v in b.pairs():
            if u == v:
                continue  # consequence of overlapping parts, reported above
            first = covered.get((u, v))
            if first is not None and first != i:
                out.append(
                    Violation(EDGE_COLLISION, {"edge": [u, v], "bicliques": [first, i]})
                )
            else:
                covered[(u, v)] = i
    if graph is not None:
        if graph.n != p.n:
            raise ValueError(f"comparison graph has {graph.n} vertices, partition has {p.n}")
        for e in sorted(graph.edges - set(covered)):
            out.append(Violation(UNCOVERED_EDGE, {"edge": list(e)}))
        for e in sorted(set(covered) - graph.edges):
            out.append(Violation(NON_EDGE_COVERED, {"edge": list(e)}))
    return ValidationReport(tuple(out))


def _raw_biclique(part_a: tuple[int, ...], part_b: tuple[int, ...]) -> Biclique:
    # parts already sorted, duplicate-free and nonnegative: skip normalization
    b = object.__new__(Biclique)
    object.__setattr__(b, "part_a", part_a)
    object.__setattr__(b, "part_b", part_b)
    return b


def _restrict_with_indices(
    p: BicliquePartition, members: Iterable[int]
) -> tuple[BicliquePartition, list[int]]:
    keep = sorted(set(members))
    for v in keep:
        if not 0 <= v < p.n:
            raise ValueError(f"vertex {v} outside 0..{p.n - 1}")
    index = {v: i for i, v in enumerate(keep)}
    kept_bicliques: list[Biclique] = []
    kept_idx: list[int] = []
    for i, b in enumerate(p.bicliques):
        a = tuple(index[v] for v in b.part_a if v in index)
        bb = tuple(index[v] for v in b.part_b if v in index)
        # a biclique survives only if both sides still have a vertex
        if a and bb:
            kept_bicliques.append(_raw_biclique(a, bb))
            kept_idx.append(i)
    return BicliquePartition(len(keep), tuple(kept_bicliques)), kept_idx


def _restrict_drop(
    p: BicliquePartition, removed: list[int]
) -> tuple[BicliquePartition, list[int]]:
    """Restrict to the complement of the sorted vertex list `removed`.

    Same result as restricting to the kept set, but the work is linear in
    the partition size rather than the vertex count, which matters when a
    deep recursion peels a couple of vertices per level off a big instance.
    """
    kept_bicliques: list[Biclique] = []
    kept_idx: list[int] = []
    if len(removed) == 1:
        # single-vertex drop is the overwhelmingly common case in the
        # recursion; inline arithmetic beats bisect plus set hashing
        r0 = removed[0]
        for i, b in enumerate(p.bicliques):
            a = tuple(v if v < r0 else v - 1 for v in b.part_a if v != r0)
            if not a:
                continue
            bb = tuple(v if v < r0 else v - 1 for v in b.part_b if v != r0)
            if not bb:
                continue
            kept_bicliques.append(_raw_biclique(a, bb))
            kept_idx.append(i)
        return BicliquePartition(p.n - 1, tuple(kept_bicliques)), kept_idx
    rset = set(removed)
    for i, b in enumerate(p.bicliques):
        a = tuple(v - bisect_left(removed, v) for v in b.part_a if v not in rset)
        if not a:
            continue
        bb = tuple(v - bisect_left(removed, v) for v in b.part_b if v not in rset)
        if not bb:
            continue
        kept_bicliques.append(_raw_biclique(a, bb))
        kept_idx.append(i)
    return BicliquePartition(p.n - len(removed), tuple(kept_bicliques)), kept_idx


def restrict(p: BicliquePartition, members: Iterable[int]) -> BicliquePartition:
    """Induced partition on a vertex subset, relabeled order-preservingly.

    Each biclique keeps its intersection with the subset and is dropped
    when either side empties; what remains partitions exactly the induced
    subgraph of the union graph.
    """
    return _restrict_with_indices(p, members)[0]


def bitvector_coloring(p: BicliquePartition) -> Coloring:
    """Color each vertex by its membership pattern in the B sides.

    Bit i of the color of v is 1 iff v lies in part_b of biclique i.  For a
    valid partition this is proper: the one biclique covering an edge
    separates its endpoints at its own bit.  Capped at 62 bicliques so the
    colors stay comfortable machine-word integers.
    """
    if p.m > BITVECTOR_MAX:
        raise CapacityError(
            f"{p.m} bicliques exceed the {BITVECTOR_MAX}-bit color budget"
        )
    colors = [0] * p.n
    for i, b in enumerate(p.bicliques):
        for v in b.part_b:
            colors[v] |= 1 << i
    return Coloring(tuple(colors))


def product_coloring(g: Graph, c1: Coloring, c2: Coloring) -> Coloring:
    """Combine two colorings by pairing, provided every edge is split by one.

    Raises ValueError with the offending edge if some edge is monochromatic
    under both inputs.  Uses at most num_colors(c1) * num_colors(c2) colors.
    """
    if c1.n != g.n or c2.n != g.n:
        raise ValueError("both colorings must cover the graph")
    for u, v in sorted(g.edges):
        if c1.colors[u] == c1.colors[v] and c2.colors[u] == c2.colors[v]:
            raise ValueError(f"edge ({u}, {v}) is monochromatic under both colorings")
    pairs = list(zip(c1.colors, c2.colors))
    rank = {pc: i for i, pc in enumerate(sorted(set(pairs)))}
    return Coloring(tuple(rank[pc] for pc in pairs))


# ----------------------------------------------------------------------
# exact minimum biclique partition
# ----------------------------------------------------------------------

def _pair_order(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _candidates(
    n: int, u: int, v: int, umask: int, pair_bit: dict[tuple[int, int], int]
) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """All bicliques (A, B) with u in A, v in B whose cross pairs lie in umask.

    Fixing which side holds u kills the A/B swap symmetry.  Grown by
    deciding skip / join-A / join-B per remaining vertex with incremental
    feasibility, then ordered largest-first for a deterministic search.
    """
    others = [w for w in range(n) if w != u and w != v]
    out: list[tuple[tuple[int, ...], tuple[int, ...], int]] = []

    def grow(i: int, a: list[int], b: list[int], emask: int) -> None:
        if i == len(others):
            out.append((tuple(sorted(a)), tuple(sorted(b)), emask))
            return
        w = others[i]
        grow(i + 1, a, b, emask)
        add = 0
        for x in b:
            bit = pair_bit[(w, x) if w < x else (x, w)]
            if not umask >> bit & 1:
                add = -1
                break
            add |= 1 << bit
        if add >= 0:
            a.append(w)
            grow(i + 1, a, b, emask | add)
            a.pop()
        add = 0
        for x in a:
            bit = pair_bit[(w, x) if w < x else (x, w)]
            if not umask >> bit & 1:
                add = -1
                break
            add |= 1 << bit
        if add >= 0:
            b.append(w)
            grow(i + 1, a, b, emask | add)
            b.pop()

    base = pair_bit[(u, v)]
    grow(0, [u], [v], 1 << base)
    out.sort(key=lambda cand: (-cand[2].bit_count(), cand[0], cand[1]))
    return out


def _bp_mask(
    umask: int,
    pairs: list[tuple[int, int]],
    pair_bit: dict[tuple[int, int], int],
    n: int,
    memo: dict,
) -> int:
    """Minimum bicliques partitioning the edge set umask; memoized on umask.

    Branches on the lexicographically smallest uncovered edge: every
    partition contains exactly one biclique covering it, so trying each
    candidate containing that edge is exhaustive.
    """
    if umask == 0:
        return 0
    hit = memo.get(umask)
    if hit is not None:
        return hit[0]
    e = (umask & -umask).bit_length() - 1
    u, v = pairs[e]
    best = None
    best_ab = None
    for a, b, emask in _candidates(n, u, v, umask, pair_bit):
        sub = _bp_mask(umask & ~emask, pairs, pair_bit, n, memo)
        if best is None or sub + 1 < best:
            best = sub + 1
            best_ab = (a, b, emask)
    memo[umask] = (best, best_ab)
    return best


def bp_exact(
    g: Graph,
    max_n: int = DEFAULT_BP_VERTEX_LIMIT,
    max_edges: int = DEFAULT_BP_EDGE_LIMIT,
    memo: dict | None = None,
) -> tuple[int, BicliquePartition]:
    """Exact minimum number of bicliques partitioning E(g), with a witness.

    Exhaustive search over edge subsets; refuses instances beyond the caps
    rather than degrading.  A memo dict may be shared across calls, but
    only between graphs with the same vertex count, because keys are
    bitmasks over the K_n pair ordering.

    Returns:
        (m, witness) where witness is a valid partition of g into m pieces.
    """
    if g.n > max_n:
        raise OracleLimitError(f"bp oracle capped at {max_n} vertices, got {g.n}")
    if len(g.edges) > max_edges:
        raise OracleLimitError(
            f"bp oracle capped at {max_edges} edges, got {len(g.edges)}"
        )
    pairs = _pair_order(g.n)
    pair_bit = {e: i for i, e in enumerate(pairs)}
    umask = 0
    for e in g.edges:
        umask |= 1 << pair_bit[e]
    if memo is None:
        memo = {}
    m = _bp_mask(umask, pairs, pair_bit, g.n, memo)
    witness: list[Biclique] = []
    cur = umask
    while cur:
        _, (a, b, emask) = memo[cur]
        witness.append(Biclique(a, b))
        cur &= ~emask
    return m, BicliquePartition(g.n, tuple(witness))
