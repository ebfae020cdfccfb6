"""Small undirected graphs, colorings, and an exact chromatic number oracle.

Vertices are the integers 0..n-1.  Edges are stored as sorted pairs, and
adjacency is kept as one bitmask per vertex, which is all the machinery
the rest of the package needs.  The exact oracle is an iterative-deepening
backtracker meant for desk-scale instances (default cap 16 vertices).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import OracleLimitError

DEFAULT_CHI_LIMIT = 16


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Edges must be sorted pairs (u, v) with u < v; use from_edges to
    normalize arbitrary pair iterables.  n = 0 is legal.
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for a graph on {self.n} vertices")

    @staticmethod
    def from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from unordered endpoint pairs, dropping duplicates."""
        norm = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            norm.add((u, v) if u < v else (v, u))
        return Graph(n, frozenset(norm))

    @staticmethod
    def complete(n: int) -> "Graph":
        return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbor bitmask per vertex."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges


@dataclass(frozen=True)
class Coloring:
    """Total vertex coloring, stored positionally: colors[v] is v's color.

    Color values are arbitrary nonnegative integers; they need not be
    contiguous (the bitvector coloring uses sparse values on purpose).
    num_colors counts distinct values actually used.
    """

    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        for c in self.colors:
            if c < 0:
                raise ValueError("colors must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))


def is_proper(g: Graph, coloring: Coloring) -> bool:
    """True iff no edge of g is monochromatic.  The coloring must cover g."""
    if coloring.n != g.n:
        raise ValueError(f"coloring covers {coloring.n} vertices, graph has {g.n}")
    cols = coloring.colors
    return all(cols[u] != cols[v] for u, v in g.edges)


def greedy_coloring(g: Graph, order: list[int] | None = None) -> Coloring:
    """First-fit coloring along the given vertex order (natural order by default)."""
    if order is None:
        order = list(range(g.n))
    adj = g.adjacency
    colors = [-1] * g.n
    for v in order:
        forb = 0
        mask = adj[v]
        while mask:
            w = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            if colors[w] >= 0:
                forb |= 1 << colors[w]
        c = 0
        while forb >> c & 1:
            c += 1
        colors[v] = c
    return Coloring(tuple(colors))


def greedy_clique(g: Graph) -> list[int]:
    """A maximal clique grown greedily by descending degree; lower-bounds chi."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    clique: list[int] = []
    cmask = 0
    for v in order:
        if g.adjacency[v] & cmask == cmask:
            clique.append(v)
            cmask |= 1 << v
    return clique


def _search_k_coloring(adj: tuple[int, ...], order: list[int], q: int) -> list[int] | None:
    # Canonical-color backtracking: vertex order[i] may only open color
    # index used+1, so each proper q-coloring is visited once up to
    # palette permutation.
    n = len(order)
    colors = [-1] * n

    def dfs(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        forb = 0
        mask = adj[v]
        while mask:
            w = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            if colors[w] >= 0:
                forb |= 1 << colors[w]
        for c in range(min(used + 1, q)):
            if not forb >> c & 1:
                colors[v] = c
                if dfs(i + 1, max(used, c + 1)):
                    return True
        colors[v] = -1
        return False

    return colors if dfs(0, 0) else None


def chromatic_number_exact(g: Graph, limit: int = DEFAULT_CHI_LIMIT) -> tuple[int, Coloring]:
    """Exact chromatic number with a witness coloring.

    Iterative deepening between a greedy clique lower bound and a greedy
    coloring upper bound, with backtracking in between.  Instances above
    `limit` vertices are refused rather than silently attempted.

    Returns:
        (chi, witness) where witness is a proper coloring using chi colors.
    """
    if g.n > limit:
        raise OracleLimitError(
            f"chromatic oracle capped at {limit} vertices, got {g.n}"
        )
    if g.n == 0:
        return 0, Coloring(())
    if not g.edges:
        return 1, Coloring((0,) * g.n)
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    lb = max(2, len(greedy_clique(g)))
    ub_witness = greedy_coloring(g, order)
    ub = ub_witness.num_colors
    for q in range(lb, ub):
        got = _search_k_coloring(g.adjacency, order, q)
        if got is not None:
            return q, Coloring(tuple(got))
    return ub, ub_witness


def induced_subgraph(g: Graph, members: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on a vertex subset plus the old-to-new index map.

    The map is order preserving: the i-th smallest member becomes vertex i.
    """
    mem = sorted(set(members))
    for v in mem:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    index = {v: i for i, v in enumerate(mem)}
    edges = frozenset(
        (index[u], index[v]) for u, v in g.edges if u in index and v in index
    )
    return Graph(len(mem), edges), index


def _dense_ranks(colors: tuple[int, ...]) -> tuple[int, ...]:
    rank = {c: i for i, c in enumerate(sorted(set(colors)))}
    return tuple(rank[c] for c in colors)


def combine_colorings(
    g: Graph,
    inside: Iterable[int],
    c_inside: Coloring,
    c_outside: Coloring,
) -> Coloring:
    """Merge colorings of an induced split of g into one proper coloring.

    c_inside colors the induced subgraph on `inside` (in induced numbering),
    c_outside the induced subgraph on the complement.  Outside vertices keep
    their colors; inside colors are re-ranked dense and shifted past the
    largest outside color, so the palettes cannot collide and the result
    uses exactly c_inside.num_colors + c_outside.num_colors colors.  When
    either side is empty the other coloring is returned unchanged.

    Raises ValueError if either input coloring is improper on its side or
    has the wrong length.
    """
    s = sorted(set(inside))
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    sset = set(s)
    comp = [v for v in range(g.n) if v not in sset]
    if c_inside.n != len(s):
        raise ValueError(f"inside coloring covers {c_inside.n} vertices, subset has {len(s)}")
    if c_outside.n != len(comp):
        raise ValueError(f"outside coloring covers {c_outside.n} vertices, complement has {len(comp)}")
    g_in, _ = induced_subgraph(g, s)
    g_out, _ = induced_subgraph(g, comp)
    if not is_proper(g_in, c_inside):
        raise ValueError("inside coloring is improper on its induced subgraph")
    if not is_proper(g_out, c_outside):
        raise ValueError("outside coloring is improper on its induced subgraph")
    if not s:
        return c_outside
    if not comp:
        return c_inside
    offset = max(c_outside.colors) + 1
    dense_in = _dense_ranks(c_inside.colors)
    merged = [0] * g.n
    for i, v in enumerate(comp):
        merged[v] = c_outside.colors[i]
    for i, v in enumerate(s):
        merged[v] = offset + dense_in[i]
    return Coloring(tuple(merged))
