"""Exact combinatorial oracles: maximum pairwise-distinguishable codes
M(G,n), maximum cliques of power graphs restricted to walk sets, and
maximum symmetric cliques of digraph powers.

The kernel is a branch-and-bound maximum-clique search with greedy-coloring
upper bounds; adjacency rows are packed into Python ints used as bitsets.
Results are deterministic: vertices are always processed in a fixed order
and, in deterministic mode, the returned witness is the lexicographically
smallest maximum clique.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .model import (
    Code,
    ChannelGraph,
    Digraph,
    PAIR_LETTERS,
    ResourceCapExceeded,
    SpecError,
    all_words,
    enumerate_walks,
)

DEFAULT_EXACT_M_CAP = 14          # max block length for exact_M
DEFAULT_UNIVERSE_CAP = 2**20      # max vertex count for generic clique search


def thread_count() -> int:
    """Worker count from ZECAP_THREADS; absent or invalid means 1.
    The search kernel is sequential, so any value yields identical sizes."""
    raw = os.environ.get("ZECAP_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class SearchResult:
    size: int
    witness: list
    nodes_explored: int
    elapsed: float
    deterministic: bool = True

    def to_record(self, problem: str, n: int) -> dict:
        return {
            "problem": problem,
            "n": n,
            "size": self.size,
            "witness": sorted(self.witness),
            "nodes_explored": self.nodes_explored,
            "elapsed_ms": int(self.elapsed * 1000),
            "deterministic": self.deterministic,
        }


class _CliqueKernel:
    """Tomita-style branch and bound on bitset adjacency rows."""

    def __init__(self, adj: list[int], n: int):
        self.adj = adj
        self.n = n
        self.nodes = 0
        self.best = 0
        self.best_set: list[int] = []

    def run(self, seed: Sequence[int] = ()) -> None:
        if seed:
            self.best = len(seed)
            self.best_set = list(seed)
        full = (1 << self.n) - 1
        self._expand([], full)

    def _expand(self, R: list[int], P: int) -> None:
        self.nodes += 1
        adj = self.adj
        # greedy coloring of P; order holds vertices by nondecreasing color
        order: list[int] = []
        colors: list[int] = []
        uncolored = P
        color = 0
        while uncolored:
            color += 1
            q = uncolored
            while q:
                v = (q & -q).bit_length() - 1
                bit = 1 << v
                q &= ~adj[v]
                q &= ~bit
                uncolored &= ~bit
                order.append(v)
                colors.append(color)
        depth = len(R)
        for i in range(len(order) - 1, -1, -1):
            if depth + colors[i] <= self.best:
                return
            v = order[i]
            new_P = P & adj[v]
            R.append(v)
            if new_P:
                self._expand(R, new_P)
            elif len(R) > self.best:
                self.best = len(R)
                self.best_set = list(R)
            R.pop()
            P &= ~(1 << v)


def _greedy_clique_in(adj: list[int], P: int) -> int:
    """Size of the first-fit clique inside bitset P."""
    size = 0
    while P:
        v = (P & -P).bit_length() - 1
        size += 1
        P &= adj[v]
    return size


def _has_clique_of_size(adj: list[int], P: int, need: int,
                        kernel_nodes: list[int]) -> bool:
    """Decision variant: does the graph induced on bitset P contain a clique
    of `need` vertices?  Greedy lower bound first, then the coloring bound."""
    if need <= 0:
        return True
    if P.bit_count() < need:
        return False
    if _greedy_clique_in(adj, P) >= need:
        return True
    # color P
    order: list[int] = []
    colors: list[int] = []
    uncolored = P
    color = 0
    while uncolored:
        color += 1
        q = uncolored
        while q:
            v = (q & -q).bit_length() - 1
            bit = 1 << v
            q &= ~adj[v]
            q &= ~bit
            uncolored &= ~bit
            order.append(v)
            colors.append(color)
    if colors[-1] < need:
        return False
    kernel_nodes[0] += 1
    rest = P
    for i in range(len(order) - 1, -1, -1):
        if colors[i] < need:
            return False
        v = order[i]
        if _has_clique_of_size(adj, rest & adj[v], need - 1, kernel_nodes):
            return True
        rest &= ~(1 << v)
    return False


def _lex_min_witness(adj: list[int], n: int, size: int,
                     nodes: list[int]) -> list[int]:
    """Lexicographically smallest clique of the known maximum size, built by
    confirming one vertex at a time with decision searches."""
    chosen: list[int] = []
    P = (1 << n) - 1
    need = size
    v = 0
    while need > 0:
        while True:
            bit = 1 << v
            if P & bit and _has_clique_of_size(adj, P & adj[v], need - 1,
                                               nodes):
                break
            v += 1
        chosen.append(v)
        P &= adj[v]
        need -= 1
        v += 1
    return chosen


def max_clique_bitset(adj: list[int], n: int,
                      seed: Sequence[int] = (),
                      lex_min: bool = True) -> SearchResult:
    """Exact maximum clique for adjacency bitset rows adj[0..n-1].

    `seed` is a known clique used as the initial incumbent; `lex_min`
    additionally replaces the witness by the lexicographically smallest
    maximum clique (deterministic mode)."""
    if n > DEFAULT_UNIVERSE_CAP:
        raise ResourceCapExceeded(f"universe {n} exceeds cap")
    import sys
    if sys.getrecursionlimit() < n + 1000:
        sys.setrecursionlimit(n + 1000)
    t0 = time.perf_counter()
    if n == 0:
        return SearchResult(0, [], 0, time.perf_counter() - t0)
    kern = _CliqueKernel(adj, n)
    kern.run(seed)
    if kern.best == 0:
        # every graph with a vertex has a 1-clique; seed was empty
        kern.best, kern.best_set = 1, [0]
    witness = kern.best_set
    nodes = [kern.nodes]
    if lex_min:
        witness = _lex_min_witness(adj, n, kern.best, nodes)
    return SearchResult(kern.best, sorted(witness), nodes[0],
                        time.perf_counter() - t0)


def max_clique(universe: Sequence, predicate: Callable, *,
               lex_min: bool = True,
               cap: int = DEFAULT_UNIVERSE_CAP) -> SearchResult:
    """Maximum clique for an explicit vertex universe and a symmetric pair
    predicate; witness holds universe elements."""
    m = len(universe)
    if m > cap:
        raise ResourceCapExceeded(f"universe {m} exceeds cap {cap}")
    mat = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(i + 1, m):
            if predicate(universe[i], universe[j]):
                mat[i, j] = mat[j, i] = True
    keep = dominated_vertex_mask(mat)
    idx = np.flatnonzero(keep)
    adj = _rows_to_bitsets(mat[np.ix_(idx, idx)])
    seed = _greedy_clique(adj, len(idx))
    res = max_clique_bitset(adj, len(idx), seed=seed, lex_min=lex_min)
    res.witness = [universe[int(idx[i])] for i in res.witness]
    return res


def _pair_codes(n: int) -> np.ndarray:
    """(2^n, n-1) array; entry [w, i] is the pair-letter index of word w at
    coordinate i."""
    words = np.arange(2**n, dtype=np.uint32)
    cols = []
    for i in range(n - 1):
        shift = n - 2 - i
        cols.append((words >> shift) & 3)
    return np.stack(cols, axis=1).astype(np.uint8)


def _edge_matrix(G: ChannelGraph) -> np.ndarray:
    mat = np.zeros((4, 4), dtype=bool)
    for a, b in G.edge_list():
        ia, ib = PAIR_LETTERS.index(a), PAIR_LETTERS.index(b)
        mat[ia, ib] = mat[ib, ia] = True
    return mat


def _rows_to_bitsets(mat: np.ndarray) -> list[int]:
    packed = np.packbits(mat, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def distinguishability_matrix(G: ChannelGraph, n: int) -> np.ndarray:
    """Boolean adjacency of the distinguishability graph on all 2^n
    length-n words (word w <-> vertex int(w, 2))."""
    N = 2**n
    if n == 1:
        return np.zeros((2, 2), dtype=bool)
    codes = _pair_codes(n)
    emat = _edge_matrix(G)
    adj = np.zeros((N, N), dtype=bool)
    for i in range(n - 1):
        col = codes[:, i]
        adj |= emat[col[:, None], col[None, :]]
    return adj


def distinguishability_adjacency(G: ChannelGraph, n: int) -> list[int]:
    """Bitset adjacency rows of the distinguishability graph."""
    return _rows_to_bitsets(distinguishability_matrix(G, n))


def dominated_vertex_mask(adj: np.ndarray) -> np.ndarray:
    """Keep-mask after iterated removal of dominated vertices.

    u is dominated by v when they are non-adjacent and N(u) is a subset of
    N(v); any clique through u then maps to one through v, so u can be
    dropped without changing the clique number.  Twins (equal neighborhoods)
    keep their smallest index for determinism."""
    n = adj.shape[0]
    keep = np.ones(n, dtype=bool)
    while True:
        idx = np.flatnonzero(keep)
        a = adj[np.ix_(idx, idx)]
        f = a.astype(np.float32)
        common = (f @ f.T).astype(np.int64)
        deg = a.sum(axis=1)
        dom = (~a) & (common == deg[:, None])     # dom[u,v]: v covers u
        np.fill_diagonal(dom, False)
        strict = dom & ~dom.T
        twins = dom & dom.T
        lower = np.tril(np.ones_like(dom), k=-1)  # twin with smaller index
        remove = strict.any(axis=1) | (twins & lower).any(axis=1)
        if not remove.any():
            return keep
        keep[idx[remove]] = False


def greedy_code(G: ChannelGraph, n: int, order: Sequence[str] | None = None
                ) -> Code:
    """Maximal pairwise-distinguishable code by greedy scan; lexicographic
    order unless an explicit word order is given."""
    words = list(order) if order is not None else list(all_words(n))
    if n == 1:
        return Code(n, {words[0]}, provenance="greedy")
    emat = _edge_matrix(G)
    codes = _pair_codes(n)
    kept: list[str] = []
    kept_codes: list[np.ndarray] = []
    for w in words:
        c = codes[int(w, 2)]
        if not kept:
            kept.append(w)
            kept_codes.append(c)
            continue
        block = np.stack(kept_codes)
        if bool(emat[block, c[None, :]].any(axis=1).all()):
            kept.append(w)
            kept_codes.append(c)
    return Code(n, set(kept), provenance="greedy")


def exact_M(G: ChannelGraph, n: int, *, cap: int = DEFAULT_EXACT_M_CAP,
            lex_min: bool = True) -> SearchResult:
    """M(G,n): the largest set of length-n words that are pairwise
    distinguishable for G, with a witness code."""
    if n < 1:
        raise SpecError("n must be >= 1")
    if n > cap:
        raise ResourceCapExceeded(f"n={n} exceeds exact_M cap {cap}")
    t0 = time.perf_counter()
    if n == 1:
        # no coordinate pair exists, so no two words are distinguishable
        return SearchResult(1, ["0"], 0, time.perf_counter() - t0)
    mat = distinguishability_matrix(G, n)
    keep = dominated_vertex_mask(mat)
    idx = np.flatnonzero(keep)
    adj = _rows_to_bitsets(mat[np.ix_(idx, idx)])
    m = len(idx)
    seed = _greedy_clique(adj, m)
    res = max_clique_bitset(adj, m, seed=seed, lex_min=lex_min)
    res.witness = [format(int(idx[v]), f"0{n}b") for v in res.witness]
    res.elapsed = time.perf_counter() - t0
    return res


def _greedy_clique(adj: list[int], n: int) -> list[int]:
    """First-fit clique over vertices in index order; the incumbent seed."""
    clique: list[int] = []
    cand = (1 << n) - 1
    while cand:
        v = (cand & -cand).bit_length() - 1
        clique.append(v)
        cand &= adj[v]
    return clique


def naive_exact_M(G: ChannelGraph, n: int) -> int:
    """Independent oracle: plain recursive maximum-clique search with only
    the trivial |R|+|P| bound, no coloring, no ordering, no greedy seed."""
    words = list(all_words(n))
    adj = [0] * len(words)
    from .model import distinguishable
    for i, x in enumerate(words):
        for j in range(i + 1, len(words)):
            if distinguishable(x, words[j], G):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    best = [0]

    def grow(size: int, P: int) -> None:
        if P == 0:
            if size > best[0]:
                best[0] = size
            return
        while P:
            if size + P.bit_count() <= best[0]:
                return
            v = (P & -P).bit_length() - 1
            grow(size + 1, P & adj[v])
            P &= ~(1 << v)
        if size > best[0]:
            best[0] = size

    grow(0, (1 << len(words)) - 1)
    return max(best[0], 1)


def _walk_universe(P: Digraph, m: int, cap: int) -> list[tuple[int, ...]]:
    walks = enumerate_walks(P, m, cap=cap)
    if len(walks) > cap:
        raise ResourceCapExceeded(f"walk universe {len(walks)} exceeds cap")
    return walks


def omega_power_markov(G: ChannelGraph, P: Digraph, m: int, *,
                       cap: int = DEFAULT_UNIVERSE_CAP,
                       lex_min: bool = True) -> SearchResult:
    """omega of the graph the m-th power of G induces on the walk set
    V^m(P); P's vertices index the pair alphabet."""
    if P.k != 4:
        raise SpecError("omega_power_markov expects a digraph on the 4 "
                        "pair letters")
    walks = _walk_universe(P, m, cap)
    emat = _edge_matrix(G)

    def adjacent(u: tuple[int, ...], v: tuple[int, ...]) -> bool:
        return any(emat[a, b] for a, b in zip(u, v))

    res = max_clique(walks, adjacent, lex_min=lex_min, cap=cap)
    res.witness = ["".join(PAIR_LETTERS[v] for v in w) for w in res.witness]
    return res


def omega_s(D: Digraph, P: Digraph, n: int, *,
            cap: int = DEFAULT_UNIVERSE_CAP,
            lex_min: bool = True) -> SearchResult:
    """Largest symmetric clique of the n-th power of digraph D restricted to
    V^n(P): every ordered pair of distinct members must have a coordinate
    arc in each direction.  Loop arcs of D are ignored."""
    if D.k != P.k:
        raise SpecError(f"vertex-count mismatch: D has {D.k}, P has {P.k}")
    D = D.without_loops()
    walks = _walk_universe(P, n, cap)
    arcs = D.arcs

    def forward(u: tuple[int, ...], v: tuple[int, ...]) -> bool:
        return any((a, b) in arcs for a, b in zip(u, v))

    # symmetric clique == clique in the AND of the two oriented relations
    def both(u, v):
        return forward(u, v) and forward(v, u)

    res = max_clique(walks, both, lex_min=lex_min, cap=cap)
    res.witness = ["".join(str(v) for v in w) for w in res.witness]
    return res
