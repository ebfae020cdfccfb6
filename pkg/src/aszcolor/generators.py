"""Instance generators and the exhaustive small-graph conjecture sweep.

The sweep enumerates every labeled graph on up to n_max vertices, computes
the exact chromatic number and the exact minimum biclique partition size,
and confirms chi <= bp + 1 throughout (the small-case regime where the
conjectured bound is a theorem), recording every graph attaining equality.
Sharing one bp memo per vertex count turns the 2^15 graphs at n = 6 into
one subset-lattice computation instead of 32768 independent searches.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bicliques import Biclique, BicliquePartition, _bp_mask, _pair_order
from .errors import OracleLimitError
from .graphs import Graph, chromatic_number_exact

MASK64 = (1 << 64) - 1
SWEEP_GUARD = 7
PROGRESS_VERSION = 1


class SplitMix64:
    """splitmix64: a tiny 64-bit mixing generator, bit-stable everywhere.

    State advances by the golden-ratio constant, output is two xor-shift
    multiplies.  The same seed yields the same stream on every platform
    and Python version, which is what makes fuzz instances replayable.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Draw from [0, bound); modulo bias is irrelevant at fuzz scale."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def sample(self, pool: list[int], k: int) -> list[int]:
        """k distinct elements via a partial Fisher-Yates shuffle."""
        pool = list(pool)
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def gen_star_partition(n: int) -> BicliquePartition:
    """The classic n-1 star partition of the complete graph K_n.

    Biclique i is ({i}, {i+1, ..., n-1}); together the stars cover every
    pair exactly once.  n = 1 gives the empty partition on one vertex.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    stars = tuple(
        Biclique((i,), tuple(range(i + 1, n))) for i in range(n - 1)
    )
    return BicliquePartition(n, stars)


def gen_matching(m: int) -> BicliquePartition:
    """m disjoint single edges on 2m vertices; the digraph has no edges."""
    if m < 0:
        raise ValueError("need m >= 0")
    return BicliquePartition(
        2 * m, tuple(Biclique((2 * i,), (2 * i + 1,)) for i in range(m))
    )


def gen_random_partition(n: int, m: int, seed: int) -> BicliquePartition:
    """A random valid partition, deterministic in (n, m, seed).

    Bicliques are built sequentially: sample a vertex subset, split it into
    nonempty (A, B), and reject the attempt if any cross pair collides with
    an already-used edge.  After 100 failures the subset size cap shrinks;
    a biclique whose every attempt collides is dropped, so the result may
    have fewer than m bicliques but is never invalid.
    """
    if n < 0 or m < 0:
        raise ValueError("need n >= 0 and m >= 0")
    if m > 0 and n < 2:
        raise ValueError("a biclique needs at least two vertices")
    rng = SplitMix64(seed)
    verts = list(range(n))
    used: set[tuple[int, int]] = set()
    out: list[Biclique] = []
    for _ in range(m):
        placed = False
        hi = min(n, 10)
        while hi >= 2 and not placed:
            for _ in range(100):
                size = 2 if hi == 2 else 2 + rng.below(hi - 1)
                chosen = sorted(rng.sample(verts, size))
                part_a = [chosen[0]]
                part_b = [chosen[-1]]
                for v in chosen[1:-1]:
                    (part_a if rng.next_u64() & 1 else part_b).append(v)
                cross = [
                    (x, y) if x < y else (y, x) for x in part_a for y in part_b
                ]
                if all(pr not in used for pr in cross):
                    used.update(cross)
                    out.append(Biclique(tuple(part_a), tuple(part_b)))
                    placed = True
                    break
            hi -= 1
    return BicliquePartition(n, tuple(out))


def disjoint_union(p1: BicliquePartition, p2: BicliquePartition) -> BicliquePartition:
    """Place p2 after p1 on fresh vertices; the digraph becomes block diagonal."""
    shift = p1.n
    moved = tuple(
        Biclique(
            tuple(v + shift for v in b.part_a),
            tuple(v + shift for v in b.part_b),
        )
        for b in p2.bicliques
    )
    return BicliquePartition(p1.n + p2.n, p1.bicliques + moved)


# ----------------------------------------------------------------------
# conjecture sweep
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SweepReport:
    """Aggregate outcome of an exhaustive small-graph sweep.

    Witness entries are {"n", "edges", "chi", "bp"} dicts sorted by
    (n, edges).  gap_counts histograms chi - bp over every graph checked.
    """

    n_max: int
    dedup: bool
    graphs_checked: int
    per_n: dict[int, int]
    max_gap: int | None
    gap_counts: dict[int, int]
    violations: tuple[dict, ...]
    extremal_witnesses: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _perm_pair_maps(n: int) -> list[tuple[int, ...]]:
    pairs = _pair_order(n)
    pair_bit = {e: i for i, e in enumerate(pairs)}
    maps = []
    for perm in itertools.permutations(range(n)):
        maps.append(
            tuple(
                pair_bit[
                    (perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])
                ]
                for (u, v) in pairs
            )
        )
    return maps


def _is_canonical(mask: int, maps: list[tuple[int, ...]]) -> bool:
    # canonical = lexicographically least edge mask over all relabelings
    for mp in maps:
        img = 0
        rem = mask
        while rem:
            i = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            img |= 1 << mp[i]
        if img < mask:
            return False
    return True


def _fresh_state() -> dict:
    return {
        "count": 0,
        "per_n": {},
        "max_gap": None,
        "gap_counts": {},
        "violations": [],
        "extremal": [],
    }


def _record(state: dict, n: int, mask: int, pairs: list[tuple[int, int]], chi: int, bp: int) -> None:
    gap = chi - bp
    state["count"] += 1
    state["per_n"][n] = state["per_n"].get(n, 0) + 1
    state["gap_counts"][gap] = state["gap_counts"].get(gap, 0) + 1
    if state["max_gap"] is None or gap > state["max_gap"]:
        state["max_gap"] = gap
    if gap >= 1:
        entry = {
            "n": n,
            "edges": [list(pairs[i]) for i in _bits(mask)],
            "chi": chi,
            "bp": bp,
        }
        if gap > 1:
            state["violations"].append(entry)
        else:
            state["extremal"].append(entry)


def _merge_state(into: dict, part: dict) -> None:
    into["count"] += part["count"]
    for k, v in part["per_n"].items():
        into["per_n"][k] = into["per_n"].get(k, 0) + v
    for k, v in part["gap_counts"].items():
        into["gap_counts"][k] = into["gap_counts"].get(k, 0) + v
    if part["max_gap"] is not None:
        if into["max_gap"] is None or part["max_gap"] > into["max_gap"]:
            into["max_gap"] = part["max_gap"]
    into["violations"].extend(part["violations"])
    into["extremal"].extend(part["extremal"])


def _examine_span(n: int, mask_lo: int, mask_hi: int, dedup: bool, skip: int = 0) -> dict:
    """Sweep masks [mask_lo, mask_hi) at vertex count n into a fresh state."""
    pairs = _pair_order(n)
    pair_bit = {e: i for i, e in enumerate(pairs)}
    memo: dict = {}
    maps = _perm_pair_maps(n) if dedup else None
    state = _fresh_state()
    for mask in range(mask_lo + skip, mask_hi):
        if dedup and not _is_canonical(mask, maps):
            continue
        g = Graph(n, frozenset(pairs[i] for i in _bits(mask)))
        chi, _ = chromatic_number_exact(g)
        bp = _bp_mask(mask, pairs, pair_bit, n, memo)
        _record(state, n, mask, pairs, chi, bp)
    return state


def _examine_span_args(args: tuple) -> dict:
    return _examine_span(*args)


def _chunk_plan(n_max: int, chunk: int = 4096) -> list[tuple[int, int, int, int]]:
    """Deterministic (n, mask_lo, mask_hi, global_base) chunks in sweep order."""
    plan = []
    gidx = 0
    for n in range(1, n_max + 1):
        total = 1 << (n * (n - 1) // 2)
        lo = 0
        while lo < total:
            hi = min(lo + chunk, total)
            plan.append((n, lo, hi, gidx + lo))
            lo = hi
        gidx += total
    return plan


def _state_to_json(state: dict) -> dict:
    out = dict(state)
    out["per_n"] = {str(k): v for k, v in state["per_n"].items()}
    out["gap_counts"] = {str(k): v for k, v in state["gap_counts"].items()}
    return out


def _state_from_json(obj: dict) -> dict:
    state = dict(obj)
    state["per_n"] = {int(k): v for k, v in obj["per_n"].items()}
    state["gap_counts"] = {int(k): v for k, v in obj["gap_counts"].items()}
    return state


def _save_progress(path: str, n_max: int, dedup: bool, next_index: int, state: dict) -> None:
    payload = {
        "version": PROGRESS_VERSION,
        "n_max": n_max,
        "dedup": dedup,
        "next_index": next_index,
        "state": _state_to_json(state),
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def _load_progress(path: str, n_max: int, dedup: bool) -> tuple[int, dict] | None:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if (
        payload.get("version") != PROGRESS_VERSION
        or payload.get("n_max") != n_max
        or payload.get("dedup") != dedup
    ):
        return None
    return payload["next_index"], _state_from_json(payload["state"])


def _finalize(n_max: int, dedup: bool, state: dict) -> SweepReport:
    key = lambda e: (e["n"], e["edges"])
    return SweepReport(
        n_max=n_max,
        dedup=dedup,
        graphs_checked=state["count"],
        per_n=dict(sorted(state["per_n"].items())),
        max_gap=state["max_gap"],
        gap_counts=dict(sorted(state["gap_counts"].items())),
        violations=tuple(sorted(state["violations"], key=key)),
        extremal_witnesses=tuple(sorted(state["extremal"], key=key)),
    )


def conjecture_sweep(
    n_max: int,
    dedup: bool = False,
    jobs: int = 1,
    progress_path: str | None = None,
    checkpoint_every: int = 5000,
) -> SweepReport:
    """Exhaustively check chi <= bp + 1 over all labeled graphs up to n_max.

    Graphs are enumerated in a canonical order (vertex count ascending,
    then edge mask ascending), and the report lists witnesses in that
    order no matter how the work was scheduled.  A progress file keyed by
    the global graph index allows interrupted sweeps to resume; stale
    files (different n_max or dedup flag) are ignored.  jobs > 1 spreads
    chunks of the enumeration over worker processes.

    With dedup=True only lexicographically-least representatives under
    vertex relabeling are examined; brute force over all n! relabelings,
    so expect it to be slow at n = 7.

    The guard n_max <= 7 keeps the exact oracles in their comfort zone.
    """
    if not 1 <= n_max <= SWEEP_GUARD:
        raise OracleLimitError(
            f"sweep guard allows 1 <= n_max <= {SWEEP_GUARD}, got {n_max}"
        )
    state = _fresh_state()
    start = 0
    if progress_path is not None:
        loaded = _load_progress(progress_path, n_max, dedup)
        if loaded is not None:
            start, state = loaded
    plan = _chunk_plan(n_max, chunk=max(1, checkpoint_every))
    todo = []
    ends = []
    for n, lo, hi, base in plan:
        span = hi - lo
        if base + span <= start:
            continue  # fully done in a previous run
        skip = max(0, start - base)
        todo.append((n, lo, hi, dedup, skip))
        ends.append(base + span)
    if jobs <= 1:
        parts = map(_examine_span_args, todo)
    else:
        pool = ProcessPoolExecutor(max_workers=jobs)
        parts = pool.map(_examine_span_args, todo)
    for done_index, part in zip(ends, parts):
        _merge_state(state, part)
        if progress_path is not None:
            _save_progress(progress_path, n_max, dedup, done_index, state)
    if jobs > 1:
        pool.shutdown()
    return _finalize(n_max, dedup, state)
