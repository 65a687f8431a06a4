"""Exact counting of connected, dominating-connected and independent sets.

Two independent engines are provided.  The brute engine sweeps all 2^n
vertex subsets with a flood fill (vectorized over blocks of subsets); the
recursive engine starts from the full vertex set and peels off non-cut
vertices, deduplicating visited sets by their bitmask.  Counts are exact
Python integers throughout.

Conventions: connected and dominating-connected counts exclude the empty
set, the independent-set count includes it.
"""

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, articulation_mask, bits, induced_is_connected

DEFAULT_BUDGET = 30
_CHUNK_BITS = 20

MODES = ("connected", "dominating_connected", "independent")


class BudgetError(ValueError):
    """Raised when a subset sweep would exceed its iteration budget."""


class MemoLimitError(RuntimeError):
    """Raised when the recursion memo grows past the allowed size."""


@dataclass(frozen=True)
class CountResult:
    n: int
    count: int
    mode: str
    c: float


# ---------------------------------------------------------------------------
# brute-force engine: one flood fill per subset, vectorized over subsets
# ---------------------------------------------------------------------------

def _check_budget(g: Graph, budget: int):
    if g.n > budget:
        raise BudgetError(
            f"order {g.n} exceeds the 2^n sweep budget (n <= {budget}); "
            "use the recursive engine"
        )


def _chunks(n: int):
    total = 1 << n
    step = min(total, 1 << _CHUNK_BITS)
    for lo in range(0, total, step):
        yield np.arange(lo, lo + step, dtype=np.int64)


def _connected_flags(adj, n, masks):
    """Boolean array: induced subgraph of each mask is nonempty and connected."""
    visited = masks & -masks
    frontier = visited.copy()
    while True:
        grown = np.zeros_like(masks)
        for v in range(n):
            hit = -((frontier >> v) & 1)
            grown |= hit & adj[v]
        grown &= masks & ~visited
        if not grown.any():
            break
        visited |= grown
        frontier = grown
    return (visited == masks) & (masks != 0)


def count_connected_brute(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Number of nonempty vertex subsets inducing a connected subgraph."""
    _check_budget(g, budget)
    if g.n == 0:
        return 0
    adj = np.array(g.adj, dtype=np.int64)
    total = 0
    for masks in _chunks(g.n):
        total += int(np.count_nonzero(_connected_flags(adj, g.n, masks)))
    return total


def count_dom_connected_brute(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Number of connected dominating vertex subsets (nonempty)."""
    _check_budget(g, budget)
    if g.n == 0:
        return 0
    adj = np.array(g.adj, dtype=np.int64)
    closed = np.array([g.adj[v] | (1 << v) for v in range(g.n)], dtype=np.int64)
    total = 0
    for masks in _chunks(g.n):
        ok = _connected_flags(adj, g.n, masks)
        for v in range(g.n):
            ok &= (masks & closed[v]) != 0
        total += int(np.count_nonzero(ok))
    return total


def count_independent_brute(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Number of independent sets, the empty set included."""
    _check_budget(g, budget)
    if g.n == 0:
        return 1
    total = 0
    edge_masks = np.array(
        [(1 << u) | (1 << v) for u, v in g.edges()], dtype=np.int64
    )
    for masks in _chunks(g.n):
        ok = np.ones(masks.shape, dtype=bool)
        for em in edge_masks:
            ok &= (masks & em) != em
        total += int(np.count_nonzero(ok))
    return total


# ---------------------------------------------------------------------------
# recursive engine: peel non-cut vertices downward from the full set
# ---------------------------------------------------------------------------

def _count_recursive(g: Graph, dominating: bool, limit) -> int:
    n = g.n
    if n == 0:
        raise ValueError("recursive engine needs a nonempty graph")
    full = (1 << n) - 1
    if not induced_is_connected(g, full):
        raise ValueError("recursive engine needs a connected graph")
    adj = g.adj
    seen = {full}
    stack = [full]
    count = 0
    while stack:
        mask = stack.pop()
        count += 1
        removable = mask & ~articulation_mask(adj, mask)
        m = removable
        while m:
            b = m & -m
            m ^= b
            sub = mask ^ b
            if not sub or sub in seen:
                continue
            if dominating:
                u = b.bit_length() - 1
                out = adj[u] & ~mask
                ok = True
                while out:
                    wb = out & -out
                    out ^= wb
                    if not adj[wb.bit_length() - 1] & sub:
                        ok = False
                        break
                if not ok:
                    continue
            seen.add(sub)
            stack.append(sub)
        if limit is not None and len(seen) > limit:
            raise MemoLimitError(f"memo exceeded {limit} sets")
    return count


def count_connected_recursive(g: Graph, limit=None) -> int:
    """Connected-set count via downward generation; requires a connected graph."""
    return _count_recursive(g, dominating=False, limit=limit)


def count_dom_connected_recursive(g: Graph, limit=None) -> int:
    """Dominating-connected-set count via downward generation.

    A vertex is only removed when every outside neighbor it was dominating
    keeps another dominator, so every generated set is dominating.
    """
    return _count_recursive(g, dominating=True, limit=limit)


# ---------------------------------------------------------------------------
# dispatch and the growth base c(G)
# ---------------------------------------------------------------------------

def count_sets(g: Graph, mode: str = "connected", engine: str = "auto",
               budget: int = DEFAULT_BUDGET) -> int:
    """Count sets in the given mode with the chosen engine.

    ``engine='auto'`` uses the brute sweep for small orders and the
    recursive engine beyond; disconnected graphs fall back to per-component
    sums (connected mode) or 0 (dominating mode).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "independent":
        return count_independent_brute(g, budget=budget)
    dominating = mode == "dominating_connected"
    if engine == "brute":
        fn = count_dom_connected_brute if dominating else count_connected_brute
        return fn(g, budget=budget)
    if engine == "recursive":
        fn = count_dom_connected_recursive if dominating else count_connected_recursive
        return fn(g)
    if engine != "auto":
        raise ValueError(f"unknown engine {engine!r}")
    if g.n == 0:
        return 0
    connected = induced_is_connected(g, g.vertex_mask)
    if not connected:
        if dominating:
            return 0
        from .graphs import components

        return sum(
            count_sets(_induced_subgraph(g, comp), mode, engine="auto", budget=budget)
            for comp in components(g, g.vertex_mask)
        )
    if g.n <= 20:
        fn = count_dom_connected_brute if dominating else count_connected_brute
        return fn(g, budget=max(budget, g.n))
    fn = count_dom_connected_recursive if dominating else count_connected_recursive
    return fn(g)


def _induced_subgraph(g: Graph, s: int) -> Graph:
    verts = list(bits(s))
    pos = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for v in verts:
        for u in bits(g.adj[v] & s):
            adj[pos[v]] |= 1 << pos[u]
    return Graph(len(verts), tuple(adj))


def count_result(g: Graph, mode: str = "connected", engine: str = "auto") -> CountResult:
    cnt = count_sets(g, mode, engine)
    c = c_value(cnt, g.n) if cnt >= 1 and g.n >= 1 else float("nan")
    return CountResult(n=g.n, count=cnt, mode=mode, c=c)


def c_value(count: int, n: int) -> float:
    """count**(1/n) with relative error well below 1e-12.

    The big integer is split into a 53-bit mantissa and an exponent so no
    precision is lost narrowing to float.
    """
    if count < 1 or n < 1:
        raise ValueError("c_value needs count >= 1 and n >= 1")
    shift = max(count.bit_length() - 53, 0)
    log2c = math.log2(count >> shift) + shift
    return 2.0 ** (log2c / n)


def round_up_4dec(count: int, n: int) -> float:
    """Smallest 4-decimal value >= count**(1/n), decided by exact integer tests."""
    t = int(math.floor(c_value(count, n) * 10000))
    target = count * 10 ** (4 * n)
    while t ** n < target:
        t += 1
    while t > 1 and (t - 1) ** n >= target:
        t -= 1
    return t / 10000.0
