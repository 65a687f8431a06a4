"""Canonical labeling and automorphisms for small (optionally colored) graphs.

Equitable color refinement first; if the partition is not discrete, branch
on the first non-singleton cell and keep the lexicographically smallest
certificate.  Intended for orders up to a few dozen vertices.
"""

from .graphs import Graph, bits


def _refine(n, adj, colors):
    colors = list(colors)
    while True:
        keys = []
        for v in range(n):
            nms = sorted(colors[u] for u in bits(adj[v]))
            keys.append((colors[v], tuple(nms)))
        order = sorted(set(keys))
        rank = {k: i for i, k in enumerate(order)}
        new = [rank[k] for k in keys]
        if new == colors:
            return new
        colors = new


def _first_cell(n, colors):
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    for c in sorted(cells):
        if len(cells[c]) > 1:
            return cells[c]
    return None


def _certificate(n, adj, colors, base):
    perm = sorted(range(n), key=lambda v: colors[v])
    pos = {v: i for i, v in enumerate(perm)}
    bits_out = []
    for j in range(1, n):
        vj = perm[j]
        for i in range(j):
            bits_out.append((adj[vj] >> perm[i]) & 1)
    return (tuple(base[v] for v in perm), tuple(bits_out)), perm, pos


def _canon(n, adj, colors, base):
    colors = _refine(n, adj, colors)
    cell = _first_cell(n, colors)
    if cell is None:
        cert, _, _ = _certificate(n, adj, colors, base)
        return cert
    best = None
    for v in cell:
        branched = list(colors)
        branched[v] = -1
        cert = _canon(n, adj, branched, base)
        if best is None or cert < best:
            best = cert
    return best


def canonical_form(g: Graph, colors=None):
    """Hashable certificate equal for exactly the isomorphic (colored) graphs."""
    base = tuple(colors) if colors is not None else (0,) * g.n
    if g.n == 0:
        return ((), ())
    start = [(c,) for c in base]
    order = sorted(set(start))
    rank = {k: i for i, k in enumerate(order)}
    return _canon(g.n, g.adj, [rank[k] for k in start], base)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    return canonical_form(g) == canonical_form(h)


def automorphisms(n: int, adj, colors=None) -> list[tuple[int, ...]]:
    """All color- and adjacency-preserving vertex permutations.

    Plain backtracking with degree and color filtering; fine for the
    gadget-sized graphs this package handles.
    """
    if colors is None:
        colors = (0,) * n
    if n == 0:
        return [()]
    deg = [adj[v].bit_count() for v in range(n)]
    cands = [
        [w for w in range(n) if colors[w] == colors[v] and deg[w] == deg[v]]
        for v in range(n)
    ]
    perms = []
    image = [-1] * n
    used = [False] * n

    def place(v):
        if v == n:
            perms.append(tuple(image))
            return
        av = adj[v]
        for w in cands[v]:
            if used[w]:
                continue
            ok = True
            for u in range(v):
                if ((av >> u) & 1) != ((adj[w] >> image[u]) & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                place(v + 1)
                used[w] = False
        image[v] = -1

    place(0)
    return perms
