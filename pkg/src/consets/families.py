"""Constructors for the named graphs and parametric families under study.

Labelings are frozen so graph6 output is reproducible byte for byte:
cycles go 0,1,...,n-1 in order, bipartite parts are consecutive index
blocks, generalized Petersen graphs put the outer cycle first.
"""

from dataclasses import dataclass

from .graphs import MAX_VERTICES, Graph


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts are vertices 0..a-1 and a..a+b-1."""
    if a < 1 or b < 1:
        raise ValueError("complete bipartite needs both parts nonempty")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_multipartite(sizes) -> Graph:
    """Parts are consecutive index blocks in the given order."""
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    n = starts[-1]
    edges = []
    for p in range(len(sizes)):
        for q in range(p + 1, len(sizes)):
            for i in range(starts[p], starts[p + 1]):
                for j in range(starts[q], starts[q + 1]):
                    edges.append((i, j))
    return Graph.from_edges(n, edges)


def moebius_ladder(n: int) -> Graph:
    """Cycle 0..n-1 plus the n/2 antipodal chords; cubic on even n >= 4."""
    if n < 4 or n % 2:
        raise ValueError("Moebius ladder needs even n >= 4")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, i + n // 2) for i in range(n // 2)]
    return Graph.from_edges(n, edges)


def generalized_petersen(n: int, k: int) -> Graph:
    """GP(n,k): outer cycle u_0..u_{n-1}, spokes u_i-w_i, inner w_i-w_{i+k}."""
    if n < 3 or not 1 <= k < n / 2:
        raise ValueError("GP(n,k) needs n >= 3 and 1 <= k < n/2")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    edges += [(n + i, n + (i + k) % n) for i in range(n)]
    return Graph.from_edges(2 * n, edges)


def petersen() -> Graph:
    return generalized_petersen(5, 2)


def heawood() -> Graph:
    """14-cycle 0..13 with chords i - (i+5 mod 14) for even i (girth 6)."""
    edges = [(i, (i + 1) % 14) for i in range(14)]
    edges += [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return Graph.from_edges(14, edges)


def mcgee() -> Graph:
    """24-cycle with chords +12 / +7 / -7 by residue of the vertex mod 3."""
    edges = [(i, (i + 1) % 24) for i in range(24)]
    jump = {0: 12, 1: 7, 2: -7}
    for i in range(24):
        j = (i + jump[i % 3]) % 24
        if i < j:
            edges.append((i, j))
    return Graph.from_edges(24, edges)


_STANDARD = {
    "cycle": (cycle_graph, 1),
    "complete": (complete_graph, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "complete_multipartite": (complete_multipartite, None),
    "moebius_ladder": (moebius_ladder, 1),
    "petersen": (petersen, 0),
    "heawood": (heawood, 0),
    "mcgee": (mcgee, 0),
}


def standard_family(name: str, params=()) -> Graph:
    """Build a named graph; ``params`` is the integer parameter list."""
    try:
        builder, arity = _STANDARD[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; known: {sorted(_STANDARD)}") from None
    params = list(params)
    if arity is None:
        return builder(params)
    if len(params) != arity:
        raise ValueError(f"family {name!r} takes {arity} parameter(s), got {len(params)}")
    return builder(*params)


@dataclass(frozen=True)
class Gadget:
    """A base graph plus an ordered cycle along which copies are glued.

    ``cycle`` lists distinct vertices of ``m`` in cyclic order; consecutive
    entries (wrapping around) must be adjacent in ``m``.
    """

    m: Graph
    cycle: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cycle", tuple(self.cycle))
        cyc = self.cycle
        if len(cyc) < 3:
            raise ValueError("gadget cycle needs length >= 3")
        if len(set(cyc)) != len(cyc):
            raise ValueError("gadget cycle vertices must be distinct")
        for v in cyc:
            if not 0 <= v < self.m.n:
                raise ValueError(f"cycle vertex {v} outside graph")
        for i, v in enumerate(cyc):
            w = cyc[(i + 1) % len(cyc)]
            if not self.m.has_edge(v, w):
                raise ValueError(f"cycle vertices {v},{w} not adjacent in the base graph")

    @property
    def order(self) -> int:
        return self.m.n

    def cycle_edge_mask(self) -> set[frozenset]:
        return {frozenset((self.cycle[i], self.cycle[(i + 1) % len(self.cycle)]))
                for i in range(len(self.cycle))}


def glue(gadget: Gadget, k: int) -> Graph:
    """Glue ``k`` copies of the base graph cyclically along the gadget cycle.

    Vertex (row i of copy j) gets index j*n0 + i for j in 0..k-1.  Edges:

    1. within a copy, every base edge that is not a cycle edge;
    2. between consecutive copies, same cycle row: (c_r, j) - (c_r, j+1);
    3. the wrap-around from the first copy back to the last, shifted one
       step along the cycle: (c_r, 0) - (c_{r-1}, k-1).

    For k = 1 rule 3 reproduces the cycle edges, so the result is the base
    graph itself.
    """
    if k < 1:
        raise ValueError("glue needs k >= 1")
    m = gadget.m
    n0 = m.n
    n = k * n0
    if n > MAX_VERTICES:
        raise ValueError(f"glued order {n} exceeds {MAX_VERTICES}")
    cyc = gadget.cycle
    cyc_edges = gadget.cycle_edge_mask()
    edges = []
    for j in range(k):
        base = j * n0
        for u, v in m.edges():
            if frozenset((u, v)) not in cyc_edges:
                edges.append((base + u, base + v))
    for j in range(k - 1):
        for r in cyc:
            edges.append((j * n0 + r, (j + 1) * n0 + r))
    last = (k - 1) * n0
    for i in range(len(cyc)):
        edges.append((cyc[i], last + cyc[i - 1]))
    return Graph.from_edges(n, edges)


def near_extremal(n: int, d: int) -> Graph:
    """d-regular graph on n vertices built from K_{d,n-d} plus a small overlay.

    For r = 2d - n the overlay on the size-d side (vertices 0..d-1) is:
    nothing (r = 0), a perfect matching (r = 1, d even), or the cycle C_d
    (r = 2).  Larger r is not covered.
    """
    if not d < n <= 2 * d:
        raise ValueError("need d < n <= 2d")
    r = 2 * d - n
    if r not in (0, 1, 2):
        raise ValueError(f"overlay degree {r} not supported (only 0, 1, 2)")
    if r == 1 and d % 2:
        raise ValueError("matching overlay needs even d")
    edges = [(i, d + j) for i in range(d) for j in range(n - d)]
    if r == 1:
        edges += [(2 * i, 2 * i + 1) for i in range(d // 2)]
    elif r == 2:
        edges += [(i, (i + 1) % d) for i in range(d)]
    return Graph.from_edges(n, edges)
