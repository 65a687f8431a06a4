"""Bit-set graphs, the graph6 codec and structural predicates.

Vertices are integers ``0..n-1`` and every vertex set is a plain ``int``
bitmask, so the hot counting loops stay allocation-free.  Capacity is one
machine word: graphs on more than 64 vertices are rejected everywhere.
"""

import math
from dataclasses import dataclass

MAX_VERTICES = 64


class Graph6Error(ValueError):
    """Malformed graph6 input (bad length field, byte out of range, junk)."""


def bits(mask: int):
    """Iterate over the set bit positions of ``mask``, ascending."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(vertices) -> int:
    """Bitmask with the given vertex indices set."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbor bitmask of ``v``.

    Invariants checked on construction: symmetric adjacency, no loops,
    all neighbor bits below ``n``, and ``n <= 64``.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"order {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbor bit >= n")
            if (row >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
        for v in range(self.n):
            for u in bits(self.adj[v]):
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self):
        for v in range(self.n):
            for u in bits(self.adj[v]):
                if u > v:
                    yield (v, u)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)


# ---------------------------------------------------------------------------
# graph6 codec
#
# Byte layout: N(n) = chr(n + 63) for n <= 62, otherwise chr(126) followed by
# three bytes holding n in big-endian 6-bit groups, each + 63.  Then the upper
# triangle bits x(0,1), x(0,2), x(1,2), x(0,3), ... packed 6 per byte
# (most significant first), zero padded, each byte + 63.
# ---------------------------------------------------------------------------

_HEADER = ">>graph6<<"


def parse_graph6(text) -> Graph:
    """Decode one graph6 line (optional ``>>graph6<<`` header allowed)."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    line = text.strip()
    if line.startswith(_HEADER):
        line = line[len(_HEADER):]
    if not line:
        raise Graph6Error("empty graph6 input")
    data = [ord(ch) for ch in line]
    for ch in data:
        if not 63 <= ch <= 126:
            raise Graph6Error(f"byte {ch} outside graph6 range [63,126]")
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("malformed length field: 8-byte orders unsupported")
        if len(data) < 4:
            raise Graph6Error("malformed length field: truncated long form")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    if n > MAX_VERTICES:
        raise Graph6Error(f"order {n} exceeds the {MAX_VERTICES}-vertex capacity")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise Graph6Error("truncated adjacency bits")
    if len(body) > need:
        raise Graph6Error("trailing garbage after adjacency bits")
    adj = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[idx // 6] - 63
            if (byte >> (5 - idx % 6)) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            idx += 1
    return Graph(n, tuple(adj))


def to_graph6(g: Graph) -> str:
    """Encode a graph as one graph6 line (no header, no newline)."""
    n = g.n
    if n <= 62:
        out = [n + 63]
    else:
        out = [126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)]
    acc = 0
    nacc = 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | ((g.adj[i] >> j) & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return "".join(chr(b) for b in out)


def read_graph6_file(path):
    """Yield graphs from a file with one graph6 line per graph."""
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield parse_graph6(line)


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------

def induced_is_connected(g: Graph, s: int) -> bool:
    """True iff the subgraph induced by the bitmask ``s`` is connected.

    The empty set is not connected.  Flood fill from the lowest vertex.
    """
    if s == 0:
        return False
    adj = g.adj
    start = s & -s
    visited = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= s & ~visited
        visited |= nxt
        frontier = nxt
    return visited == s


def components(g: Graph, s: int) -> list[int]:
    """Connected components of the induced subgraph, as bitmasks."""
    comps = []
    rest = s
    adj = g.adj
    while rest:
        start = rest & -rest
        visited = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= rest & ~visited
            visited |= nxt
            frontier = nxt
        comps.append(visited)
        rest &= ~visited
    return comps


def is_dominating(g: Graph, s: int) -> bool:
    """True iff every vertex outside ``s`` has a neighbor in ``s``."""
    for v in bits(g.vertex_mask & ~s):
        if not g.adj[v] & s:
            return False
    return True


def cut_vertices(g: Graph, s: int) -> int:
    """Articulation vertices of the induced subgraph, as a bitmask.

    Requires ``G[s]`` connected and nonempty; linear-time Tarjan DFS.
    """
    if s == 0:
        raise ValueError("cut_vertices: empty vertex set")
    if not induced_is_connected(g, s):
        raise ValueError("cut_vertices: induced subgraph is disconnected")
    return articulation_mask(g.adj, s)


def articulation_mask(adj, s: int) -> int:
    """Tarjan articulation points of the connected induced subgraph ``s``.

    No validation; callers guarantee connectivity.  Returns a bitmask.
    """
    root = (s & -s).bit_length() - 1
    disc = [0] * 64
    low = [0] * 64
    for v in bits(s):
        disc[v] = 0
    timer = 1
    disc[root] = low[root] = timer
    timer += 1
    cuts = 0
    root_children = 0
    sv = [root]
    sp = [-1]
    sr = [adj[root] & s]
    while sv:
        rem = sr[-1]
        if rem:
            b = rem & -rem
            sr[-1] = rem ^ b
            w = b.bit_length() - 1
            v = sv[-1]
            if disc[w] == 0:
                disc[w] = low[w] = timer
                timer += 1
                sv.append(w)
                sp.append(v)
                sr.append(adj[w] & s & ~(1 << v))
            elif disc[w] < low[v]:
                low[v] = disc[w]
        else:
            w = sv.pop()
            parent = sp.pop()
            sr.pop()
            if parent == -1:
                break
            lw = low[w]
            if lw < low[parent]:
                low[parent] = lw
            if parent != root:
                if lw >= disc[parent]:
                    cuts |= 1 << parent
            else:
                root_children += 1
    if root_children > 1:
        cuts |= 1 << root
    return cuts


def girth(g: Graph):
    """Length of the shortest cycle, or ``math.inf`` for forests.

    BFS from every vertex; a non-tree edge met at depths d1, d2 closes a
    cycle of length d1 + d2 + 1.
    """
    best = math.inf
    adj = g.adj
    for src in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[src] = 0
        queue = [src]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            if 2 * dist[v] >= best - 1:
                break
            for u in bits(adj[v]):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif parent[v] != u:
                    cyc = dist[v] + dist[u] + 1
                    if cyc < best:
                        best = cyc
    return best


def regular_degree(g: Graph):
    """Common degree if the graph is regular, else ``None``."""
    if g.n == 0:
        return None
    d = g.adj[0].bit_count()
    for row in g.adj:
        if row.bit_count() != d:
            return None
    return d


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple((full & ~row) & ~(1 << v) for v, row in enumerate(g.adj)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; vertices of ``h`` are relabeled by offset ``g.n``."""
    n = g.n + h.n
    if n > MAX_VERTICES:
        raise ValueError(f"combined order {n} exceeds {MAX_VERTICES}")
    adj = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(n, tuple(adj))
