"""Recursive coloring of a graph through its biclique partition.

The guarantee being exercised: a graph that splits into m edge-disjoint
bicliques can be properly colored with F(m) colors, where F solves
F(m) = F(m-1) + F(floor((m-1)/4)).  The engine behind it is an auxiliary
digraph D on the biclique indices: draw i -> j when some cross pair of
biclique i lies entirely inside one part of biclique j.  Edge-disjointness
forces D to be oriented (no two-cycles) and pins each edge to exactly one
part, the side tag.  An oriented digraph has a vertex of indegree at most
floor((m-1)/2); picking that biclique as pivot and the side with fewer
incoming tags leaves at most floor((m-1)/4) bicliques alive inside the
chosen part, and at most m-1 outside it.  Recursing on both parts with
disjoint palettes yields the recurrence.

Three pivot strategies are provided:

    thm1   minimum indegree pivot, lighter side: the F(m-1) + F((m-1)/4) bound
    prop2  always pivot on index 0: the weaker F(m-1) + F((m-1)/2) bound
    greedy scan all (pivot, side) choices for the fewest surviving bicliques;
           never worse than thm1's guarantee

Recursion is driven by an explicit work stack, so instances with
thousands of bicliques do not hit the interpreter depth limit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .bicliques import (
    Biclique,
    BicliquePartition,
    _restrict_drop,
    _restrict_with_indices,
)
from .errors import InvalidPartitionError
from .graphs import Coloring, combine_colorings

STRATEGIES = ("thm1", "prop2", "greedy")

SIDE_A = "A"
SIDE_B = "B"


@dataclass
class AuxiliaryDigraph:
    """Digraph on biclique indices 0..m-1 with side-tagged edges.

    edges maps (i, j) to the part of biclique j ("A" or "B") that contains
    a cross pair of biclique i.  Oriented by construction: builders refuse
    inputs that would produce both (i, j) and (j, i).
    """

    m: int
    edges: dict[tuple[int, int], str]
    indegree: tuple[int, ...]

    def side_counts(self, j: int) -> tuple[int, int]:
        """Incoming edges of j tagged A and tagged B."""
        ca = cb = 0
        for (_, jj), side in self.edges.items():
            if jj == j:
                if side == SIDE_A:
                    ca += 1
                else:
                    cb += 1
        return ca, cb


def internal_edge_side(h_i: Biclique, h_j: Biclique) -> str | None:
    """Which part of h_j contains a cross pair of h_i, if any.

    A cross pair of h_i lies inside part_a of h_j exactly when both parts
    of h_i meet part_a of h_j, and likewise for part_b.  If both hold, h_i
    and h_j necessarily share a cross pair, so the input cannot be
    edge-disjoint and InvalidPartitionError is raised.
    """
    in_a = bool(h_i.a_mask & h_j.a_mask) and bool(h_i.b_mask & h_j.a_mask)
    in_b = bool(h_i.a_mask & h_j.b_mask) and bool(h_i.b_mask & h_j.b_mask)
    if in_a and in_b:
        raise InvalidPartitionError(
            "one biclique has cross pairs inside both parts of another; "
            "the bicliques cannot be edge-disjoint"
        )
    if in_a:
        return SIDE_A
    if in_b:
        return SIDE_B
    return None


def build_auxiliary_digraph(p: BicliquePartition) -> AuxiliaryDigraph:
    """Scan all ordered index pairs for side relations.

    Raises InvalidPartitionError on a two-cycle (both i -> j and j -> i),
    which certifies the input is not edge-disjoint.  Asserts the pigeonhole
    consequence of orientedness on every build: some vertex has indegree
    at most floor((m-1)/2).
    """
    bic = p.bicliques
    m = len(bic)
    supports = []
    union = 0
    total = 0
    # masks built inline: restrict() hands over fresh Biclique objects every
    # level, so the per-object mask caches would never pay for themselves here
    for b in bic:
        s = 0
        for v in b.part_a:
            s |= 1 << v
        for v in b.part_b:
            s |= 1 << v
        supports.append(s)
        union |= s
        total += s.bit_count()
    edges: dict[tuple[int, int], str] = {}
    indeg = [0] * m
    # pairwise disjoint supports admit no relations at all; this keeps
    # huge matching-like instances linear instead of quadratic
    if total != union.bit_count():
        for j in range(m):
            hj = bic[j]
            sj = supports[j]
            for i in range(m):
                if i == j or not supports[i] & sj:
                    continue
                side = internal_edge_side(bic[i], hj)
                if side is None:
                    continue
                if (j, i) in edges:
                    raise InvalidPartitionError(
                        f"bicliques {i} and {j} each have a cross pair inside "
                        "a part of the other; the input cannot be edge-disjoint"
                    )
                edges[(i, j)] = side
                indeg[j] += 1
    if m and min(indeg) > (m - 1) // 2:
        raise AssertionError(
            "oriented digraph lost its low-indegree vertex; internal invariant broken"
        )
    return AuxiliaryDigraph(m, edges, tuple(indeg))


@dataclass(frozen=True)
class PivotChoice:
    pivot: int
    side: str
    indegree: int
    contributing: int


def choose_pivot(
    p: BicliquePartition, d: AuxiliaryDigraph, strategy: str = "thm1"
) -> PivotChoice:
    """Pick a pivot biclique and side under the given strategy.

    Ties break deterministically: smallest index first, side A before B.
    `contributing` counts the incoming edges tagged with the chosen side,
    which is exactly how many bicliques survive inside that part.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")
    if d.m == 0:
        raise ValueError("cannot choose a pivot in an empty partition")
    counts = [[0, 0] for _ in range(d.m)]
    for (_, j), side in d.edges.items():
        counts[j][0 if side == SIDE_A else 1] += 1
    if strategy == "greedy":
        best: tuple[int, int, int] | None = None
        for j in range(d.m):
            for rank, c in enumerate(counts[j]):
                if best is None or (c, j, rank) < best:
                    best = (c, j, rank)
        c, j, rank = best
        return PivotChoice(j, SIDE_A if rank == 0 else SIDE_B, d.indegree[j], c)
    j = 0 if strategy == "prop2" else min(range(d.m), key=lambda i: (d.indegree[i], i))
    ca, cb = counts[j]
    side = SIDE_A if ca <= cb else SIDE_B
    return PivotChoice(j, side, d.indegree[j], min(ca, cb))


@dataclass(frozen=True)
class TraceRow:
    """One recursion level: the pivot decision and its local outcome.

    pivot is reported in the original instance numbering, not the
    recursion-local one.  colors is the number of colors the subinstance
    at this level ended up using.
    """

    m: int
    pivot: int
    side: str
    indegree: int
    contributing: int
    inside_size: int
    outside_size: int
    colors: int


RecursionTrace = list[TraceRow]


def asz_color(
    p: BicliquePartition, strategy: str = "thm1"
) -> tuple[Coloring, RecursionTrace]:
    """Properly color the union graph of a valid partition, with a trace.

    Each level pivots per the strategy, restricts to the chosen part and
    its complement, recurses on both, and merges with disjoint palettes.
    Trace rows appear in pre-order (a level before its sublevels, inside
    branch before outside branch).

    Color count guarantees, with F_rec4 / F_rec2 the recurrence tables:
    thm1 and greedy stay within F_rec4(m), prop2 within F_rec2(m).

    Raises InvalidPartitionError if the digraph construction discovers the
    input is not edge-disjoint.  Vertices in no biclique are colored like
    any other isolated vertex.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")
    trace: RecursionTrace = []
    results: list[Coloring] = []
    # ("solve", partition, original-index map) computes one subinstance;
    # ("combine", partition, inside vertices, trace row index) merges the
    # two child results sitting on top of the results stack.
    work: list[tuple] = [("solve", p, tuple(range(p.m)))]
    while work:
        item = work.pop()
        if item[0] == "solve":
            _, q, orig = item
            if q.m == 0:
                results.append(Coloring((0,) * q.n))
                continue
            d = build_auxiliary_digraph(q)
            choice = choose_pivot(q, d, strategy)
            pivot_b = q.bicliques[choice.pivot]
            inside_v = set(pivot_b.part_a if choice.side == SIDE_A else pivot_b.part_b)
            removed = sorted(inside_v)
            if choice.contributing == 0:
                # no incoming tag on the chosen side means no biclique
                # survives inside, so the restriction is edgeless; skipping
                # the scan keeps matching-like instances near linear
                inside_p: BicliquePartition = BicliquePartition(len(removed), ())
                kept_in: list[int] = []
            else:
                inside_p, kept_in = _restrict_with_indices(q, inside_v)
                if inside_p.m != choice.contributing:
                    raise AssertionError(
                        f"side-tag accounting broke: {inside_p.m} bicliques "
                        f"survived inside, tags promised {choice.contributing}"
                    )
            outside_p, kept_out = _restrict_drop(q, removed)
            trace.append(
                TraceRow(
                    m=q.m,
                    pivot=orig[choice.pivot],
                    side=choice.side,
                    indegree=choice.indegree,
                    contributing=choice.contributing,
                    inside_size=len(removed),
                    outside_size=q.n - len(removed),
                    colors=0,
                )
            )
            work.append(("combine", q, inside_v, len(trace) - 1))
            work.append(("solve", outside_p, tuple(orig[i] for i in kept_out)))
            work.append(("solve", inside_p, tuple(orig[i] for i in kept_in)))
        else:
            _, q, inside_v, row_idx = item
            c_outside = results.pop()
            c_inside = results.pop()
            merged = combine_colorings(q.graph, inside_v, c_inside, c_outside)
            trace[row_idx] = replace(trace[row_idx], colors=merged.num_colors)
            results.append(merged)
    return results.pop(), trace
