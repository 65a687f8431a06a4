"""Column-state machinery for cyclically glued gadget families.

Vertex subsets of a glued graph are cells on an n0 x k board (rows follow
the base-graph labeling, columns are the copies).  A column state records,
per row: occupied and already connected to the first column (fixed),
occupied but not yet connected (loose), or empty; in dominating mode empty
cells additionally carry whether something placed so far dominates them.

A state t may follow a state s when: every occupied t-component (under
within-column edges, the base edges off the cycle) is labeled fixed
exactly if one of its cells sits on a cycle row whose same-row s-cell is
fixed; every loose s-component keeps at least one of its cycle rows
occupied in t (otherwise it can never reach the first column); every
undominated s-cell is covered by its same-row t-cell; and the
dominated/undominated labels of empty t-cells match what s and t actually
dominate.  Column states are type vectors only, and fixedness never
transmits sideways through loose cells of the previous column; this
bookkeeping can undercount boards where such transmission would occur, so
it is a conservative lower-bound device, cross-validated per gadget by
the exact-count ratio check.

The transfer matrix counts valid transitions; its dominant eigenvalue
lambda gives the growth rate of board tilings and the bound lambda**(1/n0)
on the per-vertex growth base of the glued family.
"""

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np
import scipy.sparse

from .counting import BudgetError, count_sets
from .families import Gadget, glue
from .graphs import bits, mask_of
from .isomorph import automorphisms

STATE_BUDGET_ROWS = 16

_FIXTURE_DIR = Path(__file__).parent / "fixtures"
FIXTURE_MATRICES = {
    "k4_connected": ("k4_connected_9x9.txt", 5, 4),
    "k4_dominating": ("k4_dominating_13x13.txt", 12, 4),
}


class CellType(Enum):
    OCC_FIXED = "F"
    OCC_LOOSE = "L"
    EMPTY = "E"
    EMPTY_DOM = "D"
    EMPTY_UNDOM = "U"


_CONNECTED_TYPES = {CellType.OCC_FIXED, CellType.OCC_LOOSE, CellType.EMPTY}
_DOMINATING_TYPES = {
    CellType.OCC_FIXED, CellType.OCC_LOOSE, CellType.EMPTY_DOM, CellType.EMPTY_UNDOM,
}


@dataclass(frozen=True)
class ColumnState:
    """Cell types for one board column; index = row = base-graph vertex."""

    cells: tuple[CellType, ...]

    def __str__(self):
        return "".join(c.value for c in self.cells)


@dataclass
class TransferMatrix:
    """Sparse nonnegative integer matrix over column states.

    ``entries`` holds (row, col, value) triples where row indexes the
    successor state and col the predecessor.  ``full_index`` points at the
    all-fixed column.  ``states`` is None for matrices loaded from dumps.
    """

    dim: int
    entries: list[tuple[int, int, int]]
    full_index: int
    states: list[ColumnState] | None = None
    n0: int | None = None

    def to_dump(self) -> str:
        lines = [f"{self.dim} {self.dim} {len(self.entries)}"]
        for r, c, v in sorted(self.entries):
            lines.append(f"{r} {c} {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dump(cls, text: str, full_index: int, n0=None) -> "TransferMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        nrows, ncols, nnz = map(int, lines[0].split())
        if nrows != ncols:
            raise ValueError("dump is not square")
        entries = []
        for ln in lines[1:]:
            r, c, v = map(int, ln.split())
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise ValueError("dump entry out of range")
            entries.append((r, c, v))
        if len(entries) != nnz:
            raise ValueError("dump entry count mismatch")
        if not 0 <= full_index < nrows:
            raise ValueError("full_index out of range")
        return cls(dim=nrows, entries=entries, full_index=full_index, n0=n0)

    def rows(self) -> list[list[tuple[int, int]]]:
        table = [[] for _ in range(self.dim)]
        for r, c, v in self.entries:
            table[r].append((c, v))
        return table

    def csr(self):
        if not self.entries:
            return scipy.sparse.csr_matrix((self.dim, self.dim), dtype=float)
        rows, cols, vals = zip(*self.entries)
        return scipy.sparse.csr_matrix(
            (np.array(vals, dtype=float), (rows, cols)), shape=(self.dim, self.dim)
        )


@dataclass
class SpectralResult:
    lam: float
    second_modulus: float | None
    iterations: int
    residual: float
    bound: float | None


class ConvergenceError(RuntimeError):
    """Iteration budget exhausted; ``estimate`` holds the best value seen."""

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


def load_fixture_matrix(name: str) -> TransferMatrix:
    """Load one of the shipped coefficient-matrix fixtures by short name."""
    try:
        fname, full_index, n0 = FIXTURE_MATRICES[name]
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; known: {sorted(FIXTURE_MATRICES)}") from None
    text = (_FIXTURE_DIR / fname).read_text()
    return TransferMatrix.from_dump(text, full_index=full_index, n0=n0)


# ---------------------------------------------------------------------------
# board tables and the successor function
# ---------------------------------------------------------------------------

class _Board:
    """Per-gadget lookup tables for column-state work.

    States are packed triples (occ, fix, dom) of row bitmasks; in connected
    mode dom is simply the set of empty rows, which makes the undominated
    set vacuously empty and unifies the two code paths.
    """

    def __init__(self, gadget: Gadget, mode: str):
        if mode not in ("connected", "dominating"):
            raise ValueError(f"unknown transfer mode {mode!r}")
        n0 = gadget.order
        if n0 > STATE_BUDGET_ROWS:
            raise BudgetError(f"gadget order {n0} exceeds the {STATE_BUDGET_ROWS}-row state budget")
        self.mode = mode
        self.n0 = n0
        self.all_mask = (1 << n0) - 1
        self.cyc_mask = mask_of(gadget.cycle)
        cyc_edges = gadget.cycle_edge_mask()
        intra = list(gadget.m.adj)
        for e in cyc_edges:
            u, v = tuple(e)
            intra[u] &= ~(1 << v)
            intra[v] &= ~(1 << u)
        self.intra = tuple(intra)
        size = 1 << n0
        comps_of = [()] * size
        for m in range(size):
            comps = []
            rest = m
            while rest:
                start = rest & -rest
                comp = start
                frontier = start
                while frontier:
                    nxt = 0
                    for v in bits(frontier):
                        nxt |= intra[v]
                    nxt &= rest & ~comp
                    comp |= nxt
                    frontier = nxt
                comps.append(comp)
                rest &= ~comp
            comps_of[m] = tuple(comps)
        self.comps_of = comps_of
        dominated = [0] * size
        for m in range(1, size):
            low = m & -m
            dominated[m] = dominated[m ^ low] | intra[low.bit_length() - 1]
        self.dominated_rows = dominated
        self.full = (self.all_mask, self.all_mask, 0)
        self._sig_succ = {}

    # -- packing ------------------------------------------------------------

    def pack(self, state: ColumnState):
        if len(state.cells) != self.n0:
            raise ValueError("state length does not match gadget order")
        allowed = _DOMINATING_TYPES if self.mode == "dominating" else _CONNECTED_TYPES
        occ = fix = dom = 0
        for r, cell in enumerate(state.cells):
            if cell not in allowed:
                raise ValueError(f"cell type {cell} not valid in {self.mode} mode")
            b = 1 << r
            if cell is CellType.OCC_FIXED:
                occ |= b
                fix |= b
            elif cell is CellType.OCC_LOOSE:
                occ |= b
            elif cell is not CellType.EMPTY_UNDOM:
                dom |= b
        if self.mode == "connected":
            dom = ~occ & self.all_mask
        return occ, fix, dom

    def unpack(self, packed) -> ColumnState:
        occ, fix, dom = packed
        cells = []
        for r in range(self.n0):
            b = 1 << r
            if occ & b:
                cells.append(CellType.OCC_FIXED if fix & b else CellType.OCC_LOOSE)
            elif self.mode == "connected":
                cells.append(CellType.EMPTY)
            else:
                cells.append(CellType.EMPTY_DOM if dom & b else CellType.EMPTY_UNDOM)
        return ColumnState(tuple(cells))

    # -- raw state enumeration ------------------------------------------------

    def raw_states(self):
        """All packed states meeting the column-state invariants, sorted."""
        out = []
        cyc = self.cyc_mask
        allm = self.all_mask
        for occ in range(1, allm + 1):
            comps = self.comps_of[occ]
            nc = len(comps)
            empty = allm & ~occ
            for sel in range(1, 1 << nc):
                fix = 0
                s = sel
                while s:
                    i = (s & -s).bit_length() - 1
                    s &= s - 1
                    fix |= comps[i]
                if self.mode == "connected":
                    out.append((occ, fix, empty))
                else:
                    ecyc = empty & cyc
                    forced = empty & ~cyc
                    sub = ecyc
                    while True:
                        out.append((occ, fix, sub | forced))
                        if sub == 0:
                            break
                        sub = (sub - 1) & ecyc
        out.sort()
        return out

    # -- transitions ----------------------------------------------------------

    def signature(self, packed):
        """Transition-relevant summary of a state, or None for dead ends.

        Successors depend on a state only through its undominated rows,
        the cycle rows of its fixed cells, and the cycle-row footprint of
        each loose component, so the successor list is cached per
        signature.  A loose component without cycle rows can never reach
        the first column; such states have no successors.
        """
        occ, fix, dom = packed
        und = ~occ & ~dom & self.all_mask
        footprints = set()
        for cm in self.comps_of[occ]:
            if cm & fix:
                continue
            cp = cm & self.cyc_mask
            if cp == 0:
                return None
            footprints.add(cp)
        return (fix & self.cyc_mask, tuple(sorted(footprints)), und)

    def successors_of_sig(self, sig):
        cached = self._sig_succ.get(sig)
        if cached is not None:
            return cached
        fixcyc, footprints, und = sig
        cyc = self.cyc_mask
        allm = self.all_mask
        dominating = self.mode == "dominating"
        occ_cyc = fixcyc
        for cp in footprints:
            occ_cyc |= cp
        comps_of = self.comps_of
        out = []
        free = allm & ~und
        sub = free
        while True:
            T = sub | und
            if T:
                ok = True
                for cp in footprints:
                    if not cp & T:
                        ok = False
                        break
                if ok:
                    fix_t = 0
                    for cm in comps_of[T]:
                        if cm & fixcyc:
                            fix_t |= cm
                    if fix_t:
                        if dominating:
                            dom_t = ~T & (self.dominated_rows[T] | (cyc & occ_cyc)) & allm
                            if (~T & ~dom_t & allm) & ~cyc:
                                dom_t = None
                        else:
                            dom_t = ~T & allm
                        if dom_t is not None:
                            out.append((T, fix_t, dom_t))
            if sub == 0:
                break
            sub = (sub - 1) & free
        self._sig_succ[sig] = out
        return out

    def successors(self, packed):
        sig = self.signature(packed)
        if sig is None:
            return []
        return self.successors_of_sig(sig)

    # -- symmetry -------------------------------------------------------------

    def group_perms(self):
        """Row permutations preserving the within-column edges and cycle rows."""
        colors = tuple(1 if (self.cyc_mask >> r) & 1 else 0 for r in range(self.n0))
        return automorphisms(self.n0, self.intra, colors)


def _permute_mask(mask, perm):
    out = 0
    while mask:
        b = mask & -mask
        mask ^= b
        out |= 1 << perm[b.bit_length() - 1]
    return out


def _apply_perm(packed, perm):
    occ, fix, dom = packed
    return (_permute_mask(occ, perm), _permute_mask(fix, perm), _permute_mask(dom, perm))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def enumerate_states(gadget: Gadget, mode: str) -> list[ColumnState]:
    """All column states satisfying the validity invariants, sorted."""
    board = _Board(gadget, mode)
    return [board.unpack(p) for p in board.raw_states()]


def transition_valid(gadget: Gadget, s: ColumnState, t: ColumnState, mode: str) -> bool:
    """True iff column state ``t`` may directly follow ``s``."""
    board = _Board(gadget, mode)
    sp = board.pack(s)
    tp = board.pack(t)
    return tp in board.successors(sp)


def _reach_and_coreach(nstates, succ_lists, start):
    fwd = [False] * nstates
    fwd[start] = True
    stack = [start]
    while stack:
        i = stack.pop()
        for j in succ_lists[i]:
            if not fwd[j]:
                fwd[j] = True
                stack.append(j)
    pred = [[] for _ in range(nstates)]
    for i, row in enumerate(succ_lists):
        for j in row:
            pred[j].append(i)
    bwd = [False] * nstates
    bwd[start] = True
    stack = [start]
    while stack:
        j = stack.pop()
        for i in pred[j]:
            if not bwd[i]:
                bwd[i] = True
                stack.append(i)
    return [i for i in range(nstates) if fwd[i] and bwd[i]]


def build_matrix(gadget: Gadget, mode: str, merge: bool = False,
                 trim: bool = True) -> TransferMatrix:
    """Assemble the transition-count matrix over column states.

    Unmerged entries are 0/1 indicators.  With ``merge`` states are lumped
    into orbits under the board symmetries and the entry (T, S) counts the
    members of orbit S that may precede a fixed representative of orbit T.
    With ``trim`` states unreachable from the full column, or unable to
    reach it again, are dropped; this never changes full-to-full path
    counts or the dominant eigenvalue.
    """
    board = _Board(gadget, mode)
    if merge:
        return _build_merged(board, trim)
    if trim:
        states = [board.full]
        index = {board.full: 0}
        succ_lists = []
        i = 0
        while i < len(states):
            row = []
            for t in board.successors(states[i]):
                j = index.get(t)
                if j is None:
                    j = len(states)
                    index[t] = j
                    states.append(t)
                row.append(j)
            succ_lists.append(row)
            i += 1
        keep = _reach_and_coreach(len(states), succ_lists, 0)
    else:
        states = board.raw_states()
        index = {s: i for i, s in enumerate(states)}
        succ_lists = [
            [index[t] for t in board.successors(s)] for s in states
        ]
        keep = list(range(len(states)))
    kept_states = sorted(states[i] for i in keep)
    new_index = {s: i for i, s in enumerate(kept_states)}
    old_to_new = {i: new_index[states[i]] for i in keep}
    entries = []
    for i in keep:
        si = old_to_new[i]
        for j in succ_lists[i]:
            if j in old_to_new:
                entries.append((old_to_new[j], si, 1))
    entries.sort()
    return TransferMatrix(
        dim=len(kept_states),
        entries=entries,
        full_index=new_index[board.full],
        states=[board.unpack(p) for p in kept_states],
        n0=board.n0,
    )


def _build_merged(board: _Board, trim: bool) -> TransferMatrix:
    perms = board.group_perms()

    def canon(packed):
        return min(_apply_perm(packed, p) for p in perms)

    def orbit_size(packed):
        return len({_apply_perm(packed, p) for p in perms})

    if trim:
        reps = [board.full]
        index = {board.full: 0}
        tallies = []
        i = 0
        while i < len(reps):
            tally = {}
            for t in board.successors(reps[i]):
                tc = canon(t)
                tally[tc] = tally.get(tc, 0) + 1
            for tc in tally:
                if tc not in index:
                    index[tc] = len(reps)
                    reps.append(tc)
            tallies.append(tally)
            i += 1
        succ_lists = [[index[tc] for tc in tally] for tally in tallies]
        keep = set(_reach_and_coreach(len(reps), succ_lists, 0))
    else:
        reps = sorted({canon(s) for s in board.raw_states()})
        index = {s: i for i, s in enumerate(reps)}
        tallies = []
        for rep in reps:
            tally = {}
            for t in board.successors(rep):
                tc = canon(t)
                tally[tc] = tally.get(tc, 0) + 1
            tallies.append(tally)
        keep = set(range(len(reps)))
    sizes = {rep: orbit_size(rep) for rep in reps}
    kept_reps = sorted(reps[i] for i in keep)
    new_index = {rep: i for i, rep in enumerate(kept_reps)}
    entries = []
    for i, rep in enumerate(reps):
        if i not in keep:
            continue
        si = new_index[rep]
        for tc, m in tallies[i].items():
            if tc not in new_index:
                continue
            num = m * sizes[rep]
            den = sizes[tc]
            if num % den:
                raise AssertionError("orbit lumping produced a fractional entry")
            entries.append((new_index[tc], si, num // den))
    entries.sort()
    return TransferMatrix(
        dim=len(kept_reps),
        entries=entries,
        full_index=new_index[canon(board.full)],
        states=[board.unpack(p) for p in kept_reps],
        n0=board.n0,
    )


def dominant_eigenvalue(tm: TransferMatrix, tol: float = 1e-10,
                        max_iter: int = 100_000) -> SpectralResult:
    """Dominant eigenvalue by power iteration from the all-ones vector.

    Stops once successive Rayleigh quotients agree within ``tol`` and the
    residual |A v - lambda v| (sup norm, v normalized) is below
    ``tol * max(1, lambda)``.
    """
    if tm.dim == 0:
        raise ValueError("empty matrix")
    if any(v < 0 for _, _, v in tm.entries):
        raise ValueError("matrix must be nonnegative")
    if not tm.entries:
        raise ValueError("zero matrix has no dominant eigenvalue")
    A = tm.csr()
    x = np.ones(tm.dim) / math.sqrt(tm.dim)
    lam_old = None
    lam = 0.0
    for it in range(1, max_iter + 1):
        y = A @ x
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            raise ConvergenceError("power iteration hit the zero vector", 0.0)
        lam = float(x @ y)
        x = y / ny
        if lam_old is not None and abs(lam - lam_old) <= tol:
            resid = float(np.max(np.abs(A @ x - lam * x)))
            if resid <= tol * max(1.0, abs(lam)):
                bound = lam ** (1.0 / tm.n0) if tm.n0 else None
                return SpectralResult(lam=lam, second_modulus=None, iterations=it,
                                      residual=resid, bound=bound)
        lam_old = lam
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} iterations", lam
    )


def second_modulus(tm: TransferMatrix, spectral: SpectralResult,
                   rel_tol: float = 0.05, max_iter: int = 20_000) -> float:
    """Modulus of the second-largest eigenvalue, best effort.

    Power iteration on the matrix deflated by the dominant left/right
    eigenvector pair.  Complex conjugate pairs make single-step quotients
    oscillate, so the growth rate is averaged over a window and accepted at
    the loose relative tolerance.
    """
    A = tm.csr()
    x = np.ones(tm.dim) / math.sqrt(tm.dim)
    for _ in range(max(200, 4 * tm.dim)):
        y = A @ x
        n = float(np.linalg.norm(y))
        if n == 0.0:
            return 0.0
        x = y / n
    v = x
    At = A.T.tocsr()
    w = np.ones(tm.dim) / math.sqrt(tm.dim)
    for _ in range(max(200, 4 * tm.dim)):
        y = At @ w
        n = float(np.linalg.norm(y))
        if n == 0.0:
            return 0.0
        w = y / n
    lam = spectral.lam
    wv = float(w @ v)
    if abs(wv) < 1e-14:
        raise ConvergenceError("degenerate left/right eigenvector pair", 0.0)

    def deflated(z):
        return A @ z - (lam * float(w @ z) / wv) * v

    rng = np.random.default_rng(7)
    z = rng.random(tm.dim) + 0.5
    z -= (float(w @ z) / wv) * v
    nz = float(np.linalg.norm(z))
    if nz == 0.0:
        return 0.0
    z /= nz
    window = 24
    factors = []
    est_prev = None
    for it in range(1, max_iter + 1):
        y = deflated(z)
        n = float(np.linalg.norm(y))
        if n == 0.0:
            return 0.0
        factors.append(n)
        z = y / n
        if len(factors) >= window and it % window == 0:
            block = factors[-window:]
            est = math.exp(sum(math.log(f) for f in block) / window)
            if est_prev is not None and abs(est - est_prev) <= rel_tol * 0.2 * max(est, 1e-30):
                return est
            est_prev = est
    raise ConvergenceError("second modulus did not stabilize", est_prev or 0.0)


def growth_bound(gadget: Gadget, mode: str, merge: bool = False, trim: bool = True,
                 tol: float = 1e-10, max_iter: int = 100_000) -> SpectralResult:
    """lambda of the gadget's transfer matrix and the bound lambda**(1/n0)."""
    tm = build_matrix(gadget, mode, merge=merge, trim=trim)
    return dominant_eigenvalue(tm, tol=tol, max_iter=max_iter)


def path_count(tm: TransferMatrix, k: int) -> int:
    """Exact (A^k e_full)[full]: board tilings of width k+1 closing on full columns."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    rows = tm.rows()
    vec = [0] * tm.dim
    vec[tm.full_index] = 1
    for _ in range(k):
        vec = [sum(v * vec[c] for c, v in row) for row in rows]
    return vec[tm.full_index]


def ratio_estimate(gadget: Gadget, mode: str, k_max: int) -> list[float]:
    """Successive count ratios N(k+1)/N(k) of the glued family, k = 2..k_max-1.

    Exact counts from the counting module; the ratios converge to the
    transfer matrix's dominant eigenvalue.
    """
    if k_max < 3:
        raise ValueError("k_max must be at least 3")
    if k_max * gadget.order > 64:
        raise BudgetError("glued order exceeds the 64-vertex capacity")
    count_mode = "dominating_connected" if mode == "dominating" else "connected"
    counts = {}
    for k in range(2, k_max + 1):
        counts[k] = count_sets(glue(gadget, k), count_mode, engine="recursive")
    return [counts[k + 1] / counts[k] for k in range(2, k_max)]
