"""Core vocabulary: binary words, the pair alphabet, confusability graphs,
digraphs and their walk sets, and the distinguishability predicate.

Words are plain strings of '0'/'1' characters.  Pair letters are the four
two-character strings "00", "01", "10", "11", totally ordered lexicographically;
every serialized artifact uses that order.  Documentation follows the 1-based
index convention; serialized positions are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

PAIR_LETTERS = ("00", "01", "10", "11")

DEFAULT_WALK_CAP = 2**24


class SpecError(ValueError):
    """Malformed channel/digraph/word spec text."""


class ResourceCapExceeded(RuntimeError):
    """An enumeration or search universe would exceed its configured cap."""


def check_word(w: str) -> str:
    if not w or any(c not in "01" for c in w):
        raise SpecError(f"not a binary word: {w!r}")
    return w


@dataclass(frozen=True)
class ChannelGraph:
    """Undirected loop-free graph on the 4-letter pair alphabet."""

    edges: frozenset[frozenset[str]]
    name: str = ""

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise SpecError(f"loop or malformed edge: {set(e)}")
            for v in e:
                if v not in PAIR_LETTERS:
                    raise SpecError(f"not a pair letter: {v!r}")

    def has_edge(self, a: str, b: str) -> bool:
        return a != b and frozenset((a, b)) in self.edges

    def edge_list(self) -> list[tuple[str, str]]:
        """Edges as sorted pairs, sorted; the canonical serialization order."""
        return sorted(tuple(sorted(e)) for e in self.edges)

    def to_spec(self) -> str:
        return ";".join(f"{a}-{b}" for a, b in self.edge_list())


@dataclass(frozen=True)
class Digraph:
    """Directed graph on vertices 0..k-1; loops allowed."""

    k: int
    arcs: frozenset[tuple[int, int]]
    name: str = ""

    def __post_init__(self):
        if self.k < 1:
            raise SpecError("digraph needs at least one vertex")
        for a, b in self.arcs:
            if not (0 <= a < self.k and 0 <= b < self.k):
                raise SpecError(f"arc ({a},{b}) out of range for k={self.k}")

    def has_arc(self, a: int, b: int) -> bool:
        return (a, b) in self.arcs

    def without_loops(self) -> "Digraph":
        return Digraph(self.k, frozenset(a for a in self.arcs if a[0] != a[1]),
                       self.name)

    def to_spec(self) -> str:
        return ";".join(f"{a}>{b}" for a, b in sorted(self.arcs))


@dataclass
class Code:
    """A set of distinct equal-length binary words."""

    n: int
    words: set[str] = field(default_factory=set)
    provenance: str = ""

    def __post_init__(self):
        for w in self.words:
            check_word(w)
            if len(w) != self.n:
                raise SpecError(f"word {w!r} has length {len(w)}, expected {self.n}")

    def sorted_words(self) -> list[str]:
        return sorted(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: str) -> bool:
        return w in self.words


def parse_channel_spec(text: str, name: str = "") -> ChannelGraph:
    """Parse "ab-cd;ef-gh" edge lists over the pair alphabet."""
    edges: set[frozenset[str]] = set()
    if text.strip():
        for token in text.split(";"):
            token = token.strip()
            parts = token.split("-")
            if len(parts) != 2:
                raise SpecError(f"malformed edge token: {token!r}")
            a, b = parts
            if a not in PAIR_LETTERS or b not in PAIR_LETTERS:
                raise SpecError(f"not a pair letter in edge: {token!r}")
            if a == b:
                raise SpecError(f"loop edge forbidden: {token!r}")
            edges.add(frozenset((a, b)))
    return ChannelGraph(frozenset(edges), name=name)


def parse_digraph_spec(text: str, k: int, name: str = "") -> Digraph:
    """Parse "a>b;c>d" arc lists on vertices 0..k-1."""
    arcs: set[tuple[int, int]] = set()
    if text.strip():
        for token in text.split(";"):
            token = token.strip()
            parts = token.split(">")
            if len(parts) != 2:
                raise SpecError(f"malformed arc token: {token!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise SpecError(f"malformed arc token: {token!r}") from None
            if not (0 <= a < k and 0 <= b < k):
                raise SpecError(f"vertex out of range in arc: {token!r} (k={k})")
            arcs.add((a, b))
    return Digraph(k, frozenset(arcs), name=name)


def word_pairs(x: str) -> tuple[str, ...]:
    """The sequence of consecutive bit-pairs of x; injective on words of
    equal length, since consecutive pairs overlap in one bit."""
    check_word(x)
    if len(x) < 2:
        raise SpecError(f"word_pairs needs length >= 2, got {len(x)}")
    return tuple(x[i:i + 2] for i in range(len(x) - 1))


def distinguishable(x: str, y: str, G: ChannelGraph) -> bool:
    """True iff some coordinate pair of x and y falls on an edge of G."""
    if len(x) != len(y):
        raise SpecError(f"length mismatch: {len(x)} vs {len(y)}")
    edges = G.edges
    for i in range(len(x) - 1):
        a = x[i:i + 2]
        b = y[i:i + 2]
        if a != b and frozenset((a, b)) in edges:
            return True
    return False


def enumerate_walks(P: Digraph, n: int, cap: int = DEFAULT_WALK_CAP
                    ) -> list[tuple[int, ...]]:
    """All length-n vertex sequences whose consecutive pairs are arcs of P,
    in lexicographic order.  Raises ResourceCapExceeded before materializing
    more than `cap` walks."""
    if n < 1:
        raise SpecError("walk length must be >= 1")
    succ = [sorted(b for (a, b) in P.arcs if a == v) for v in range(P.k)]
    walks: list[tuple[int, ...]] = [(v,) for v in range(P.k)]
    for _ in range(n - 1):
        nxt: list[tuple[int, ...]] = []
        for w in walks:
            for v in succ[w[-1]]:
                nxt.append(w + (v,))
                if len(nxt) > cap:
                    raise ResourceCapExceeded(
                        f"walk universe exceeds cap {cap}")
        walks = nxt
    return walks


def count_walks(P: Digraph, n: int) -> int:
    """|V^n(P)| by exact integer transfer-matrix counting."""
    if n < 1:
        raise SpecError("walk length must be >= 1")
    counts = [1] * P.k
    succ = [[b for (a, b) in P.arcs if a == v] for v in range(P.k)]
    for _ in range(n - 1):
        nxt = [0] * P.k
        for v in range(P.k):
            for u in succ[v]:
                nxt[v] += counts[u]
        counts = nxt
    return sum(counts)


def all_words(n: int) -> Iterator[str]:
    """All binary words of length n in lexicographic order."""
    for v in range(2**n):
        yield format(v, f"0{n}b")


# Named graphs from the triangle/star theorems and the Sperner examples.

def _triangle(a: str, b: str, c: str, name: str) -> ChannelGraph:
    return parse_channel_spec(f"{a}-{b};{a}-{c};{b}-{c}", name=name)


def _star(center: str, name: str) -> ChannelGraph:
    others = [p for p in PAIR_LETTERS if p != center]
    return parse_channel_spec(";".join(f"{center}-{p}" for p in others),
                              name=name)


TRIANGLE_F = _triangle("00", "01", "10", "F")
TRIANGLE_G = _triangle("00", "01", "11", "G")
STAR_L = _star("00", "L")
STAR_Q = _star("01", "Q")

NAMED_CHANNELS = {g.name: g for g in (TRIANGLE_F, TRIANGLE_G, STAR_L, STAR_Q)}

FIBONACCI_DIGRAPH = parse_digraph_spec("0>0;0>1;1>0", 2, name="fibonacci")
SINGLE_ARC_DIGRAPH = parse_digraph_spec("0>1", 2, name="arc01")


def pair_shift_digraph() -> Digraph:
    """De Bruijn shift on the pair alphabet: arc (ab) -> (cd) iff b == c.
    Vertex i is PAIR_LETTERS[i]; walks of length m correspond bijectively to
    binary words of length m+1."""
    arcs = set()
    for i, p in enumerate(PAIR_LETTERS):
        for j, q in enumerate(PAIR_LETTERS):
            if p[1] == q[0]:
                arcs.add((i, j))
    return Digraph(4, frozenset(arcs), name="pair-shift")


def complete_digraph(k: int, loops: bool = False) -> Digraph:
    arcs = {(a, b) for a in range(k) for b in range(k) if loops or a != b}
    return Digraph(k, frozenset(arcs), name=f"K{k}")


def cycle_sym_digraph(k: int) -> Digraph:
    """k-cycle with both arc directions on every edge."""
    arcs = set()
    for v in range(k):
        arcs.add((v, (v + 1) % k))
        arcs.add(((v + 1) % k, v))
    return Digraph(k, frozenset(arcs), name=f"C{k}sym")


def walk_to_word(walk: Sequence[int]) -> str:
    """Inverse of the pair-shift embedding: a walk on pair letters whose
    consecutive letters overlap maps back to the binary word one bit longer."""
    letters = [PAIR_LETTERS[v] for v in walk]
    out = letters[0]
    for prev, cur in zip(letters, letters[1:]):
        if prev[1] != cur[0]:
            raise SpecError("walk letters do not overlap; not a pair-shift walk")
        out += cur[1]
    return out


NAMED_DIGRAPHS = {
    "fibonacci": FIBONACCI_DIGRAPH,
    "pair-shift": pair_shift_digraph(),
    "C5sym": cycle_sym_digraph(5),
    "K5": complete_digraph(5),
}
