"""Exhaustive extremal search over connected regular graphs of small order.

Generation walks partial graphs (adjacency rows completed in index order)
and prunes isomorphic partial states via canonical forms colored by the
remaining degree deficit, so every output graph appears exactly once up
to isomorphism.  The search harness counts each graph exactly and keeps
the argmax set.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .counting import c_value, count_sets, round_up_4dec
from .graphs import Graph, bits, girth, induced_is_connected, parse_graph6, read_graph6_file, to_graph6
from .isomorph import canonical_form

GENERATION_LIMITS = {3: 14, 4: 10}
_DEFAULT_LIMIT = 10


@dataclass
class SearchReport:
    n: int
    d: int | None
    girth_min: int
    mode: str
    max_count: int
    c: float
    extremal: list[Graph]
    graphs_examined: int
    extremal_girth: int


class ScaleLimitError(ValueError):
    """Requested generation order is out of reach; ingest a graph6 corpus instead."""


def generate_regular(n: int, d: int, girth_min: int = 3):
    """Yield all connected d-regular graphs on n vertices with girth >= girth_min.

    Each isomorphism class appears exactly once.  Native generation is
    capped at small orders; larger corpora must be ingested from files.
    """
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if (n * d) % 2:
        raise ValueError(f"parity violation: n*d = {n * d} is odd")
    if d >= n:
        return
    if d == 2:
        # the only connected 2-regular graph is the cycle
        if n >= max(3, girth_min):
            from .families import cycle_graph

            yield cycle_graph(n)
        return
    limit = GENERATION_LIMITS.get(d, _DEFAULT_LIMIT)
    if n > limit:
        raise ScaleLimitError(
            f"native generation of {d}-regular graphs stops at n = {limit}; "
            "ingest a graph6 file for larger orders"
        )
    if d <= 1:
        if d == 0 and n == 1:
            yield Graph(1, (0,))
        if d == 1 and n == 2:
            yield Graph.from_edges(2, [(0, 1)])
        return
    yield from _generate(n, d, girth_min)


def _girth_ok_after(adj, n, v, girth_min):
    # shortest cycle through v, BFS; cheap because rows are small
    if girth_min <= 3:
        return True
    dist = [-1] * n
    parent = [-1] * n
    dist[v] = 0
    queue = [v]
    qi = 0
    best = math.inf
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        if 2 * dist[u] >= best - 1 or 2 * dist[u] + 1 >= girth_min + 1:
            break
        for w in bits(adj[u]):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
            elif parent[u] != w:
                cyc = dist[u] + dist[w] + 1
                if cyc < best:
                    best = cyc
    return best >= girth_min


def _generate(n: int, d: int, girth_min: int):
    seen_partial = set()
    emitted = set()

    def rec(adj, deg, level):
        # level = first vertex whose adjacency row is not finalized
        while level < n and deg[level] == d:
            level += 1
        if level == n:
            g = Graph(n, tuple(adj))
            if induced_is_connected(g, g.vertex_mask):
                cert = canonical_form(g)
                if cert not in emitted:
                    emitted.add(cert)
                    yield g
            return
        # connectivity prune: the component of vertex 0 must stay extendable
        comp = 1
        frontier = 1
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= adj[u]
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        open_comp = any(deg[u] < d for u in bits(comp))
        if comp != (1 << n) - 1 and not open_comp:
            return
        need = d - deg[level]
        cands = [u for u in range(level + 1, n) if deg[u] < d and not (adj[level] >> u) & 1]
        for chosen in combinations(cands, need):
            for u in chosen:
                adj[level] |= 1 << u
                adj[u] |= 1 << level
                deg[u] += 1
            deg[level] = d
            if _girth_ok_after(adj, n, level, girth_min):
                key = canonical_form(Graph(n, tuple(adj)),
                                     colors=tuple(d - dv for dv in deg))
                if key not in seen_partial:
                    seen_partial.add(key)
                    yield from rec(adj, deg, level + 1)
            deg[level] -= need
            for u in chosen:
                adj[level] &= ~(1 << u)
                adj[u] &= ~(1 << level)
                deg[u] -= 1

    adj = [0] * n
    deg = [0] * n
    # the first vertex's neighborhood is 1..d up to relabeling
    for u in range(1, d + 1):
        adj[0] |= 1 << u
        adj[u] |= 1
        deg[u] = 1
    deg[0] = d
    yield from rec(adj, deg, 1)


def _count_one(args):
    g6, mode = args
    g = parse_graph6(g6)
    return g6, count_sets(g, mode)


def search_extremal(graphs, mode: str = "connected", girth_min: int = 3,
                    jobs: int = 1) -> SearchReport:
    """Scan a stream of same-order graphs and report the count maximizers.

    The extremal list is deduplicated up to isomorphism; ``jobs`` > 1
    counts graphs in a process pool.
    """
    best = -1
    best_graphs: list[Graph] = []
    examined = 0
    n = None
    d = None
    if jobs > 1:
        graphs = list(graphs)
        work = [(to_graph6(g), mode) for g in graphs]
        by_g6 = {to_graph6(g): g for g in graphs}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_count_one, work, chunksize=8))
        pairs = [(by_g6[g6], cnt) for g6, cnt in results]
    else:
        pairs = ((g, count_sets(g, mode)) for g in graphs)
    from .graphs import regular_degree

    for g, cnt in pairs:
        if n is None:
            n = g.n
            d = regular_degree(g)
        elif g.n != n:
            raise ValueError("stream mixes graph orders")
        examined += 1
        if cnt > best:
            best = cnt
            best_graphs = [g]
        elif cnt == best:
            best_graphs.append(g)
    if n is None:
        raise ValueError("empty graph stream")
    forms = {}
    for g in best_graphs:
        forms.setdefault(canonical_form(g), g)
    extremal = [forms[k] for k in sorted(forms)]
    return SearchReport(
        n=n,
        d=d,
        girth_min=girth_min,
        mode=mode,
        max_count=best,
        c=c_value(best, n) if best >= 1 else float("nan"),
        extremal=extremal,
        graphs_examined=examined,
        extremal_girth=min(girth(g) for g in extremal),
    )


def corpus_path(directory, n: int, d: int, girth_min: int) -> Path:
    return Path(directory) / f"d{d}_n{n}_g{girth_min}.g6"


def graphs_for_order(n: int, d: int, girth_min: int, corpus=None):
    """Generated stream when in reach, else the ingested corpus file."""
    if corpus is not None:
        path = corpus_path(corpus, n, d, girth_min)
        if path.exists():
            return read_graph6_file(path)
    try:
        return generate_regular(n, d, girth_min)
    except ScaleLimitError:
        where = corpus_path(corpus, n, d, girth_min) if corpus is not None else \
            f"d{d}_n{n}_g{girth_min}.g6 (pass a corpus directory)"
        raise ScaleLimitError(
            f"order {n} is beyond native generation; provide {where} "
            "from an external regular-graph generator"
        ) from None


def table_rows(d: int, g: int, orders, mode: str = "connected", corpus=None,
               jobs: int = 1):
    """Rows (n, g, c rounded up to 4 decimals, extremal girth) per order."""
    rows = []
    for n in orders:
        report = search_extremal(graphs_for_order(n, d, g, corpus), mode,
                                 girth_min=g, jobs=jobs)
        rows.append((n, g, round_up_4dec(report.max_count, n), report.extremal_girth))
    return rows
