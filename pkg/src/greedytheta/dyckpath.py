"""The c_n sequence and maximal Dyck paths (lower Christoffel words)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache


@lru_cache(maxsize=None)
def c_seq(r: int, n: int) -> int:
    """c_0 = -1, c_1 = 0, c_n = r c_{n-1} - c_{n-2}; extended backwards too."""
    if n == 0:
        return -1
    if n == 1:
        return 0
    if n > 1:
        return r * c_seq(r, n - 1) - c_seq(r, n - 2)
    return r * c_seq(r, n + 1) - c_seq(r, n + 2)


class CSeq:
    """c_n for a fixed r, stored as it is extended."""

    def __init__(self, r: int) -> None:
        if r < 1:
            raise ValueError("r must be positive")
        self.r = r
        self.values = [-1, 0]

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return c_seq(self.r, n)
        while len(self.values) <= n:
            self.values.append(self.r * self.values[-1] - self.values[-2])
        return self.values[n]

    def identities_hold(self, top: int = 12) -> bool:
        """c_n c_{l+1} - c_{n+1} c_l = c_{n-l+1} and c_{n+1} c_{l+1} - c_n c_l = c_{n+l}."""
        c = self
        return all(c[n] * c[l + 1] - c[n + 1] * c[l] == c[n - l + 1]
                   and c[n + 1] * c[l + 1] - c[n] * c[l] == c[n + l]
                   for n in range(1, top + 1) for l in range(1, n + 1))


def c_value(r: int, n: int, alpha: int = 1, beta: int = 0) -> int:
    """alpha * c_n + beta * c_{n-1}."""
    return alpha * c_seq(r, n) + beta * c_seq(r, n - 1)


def general_recursion(r: int, alpha: int, beta: int, k: int) -> int:
    """f(0) = alpha, f(1) = beta, f(k+1) = r f(k) - f(k-1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    prev, cur = alpha, beta
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, r * cur - prev
    return cur


@dataclass(frozen=True)
class Edge:
    """An edge of a path: kind 'E' (eta_index) or 'N' (nu_index)."""

    kind: str
    index: int  # 1-based eta / nu index
    position: int  # 0-based position along the word

    @property
    def horizontal(self) -> bool:
        return self.kind == "E"

    def name(self) -> str:
        return f"{'eta' if self.horizontal else 'nu'}{self.index}"


@dataclass(frozen=True)
class DyckPath:
    word: str

    def __post_init__(self):
        if set(self.word) - {"E", "N"}:
            raise ValueError("path words use only E and N")

    @property
    def ell(self) -> int:
        return self.word.count("E")

    @property
    def h(self) -> int:
        return self.word.count("N")

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return self.word

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        out, ne, nn = [], 0, 0
        for pos, step in enumerate(self.word):
            if step == "E":
                ne += 1
                out.append(Edge("E", ne, pos))
            else:
                nn += 1
                out.append(Edge("N", nn, pos))
        return tuple(out)

    @cached_property
    def eta_positions(self) -> tuple[int, ...]:
        """Word position of eta_i, indexed from 1 (slot 0 unused)."""
        return (-1,) + tuple(e.position for e in self.edges if e.horizontal)

    @cached_property
    def nu_positions(self) -> tuple[int, ...]:
        return (-1,) + tuple(e.position for e in self.edges if not e.horizontal)

    def eta(self, i: int) -> Edge:
        return self.edges[self.eta_positions[i]]

    def nu(self, j: int) -> Edge:
        return self.edges[self.nu_positions[j]]

    @cached_property
    def vertices(self) -> tuple[tuple[int, int], ...]:
        pts, x, y = [(0, 0)], 0, 0
        for step in self.word:
            if step == "E":
                x += 1
            else:
                y += 1
            pts.append((x, y))
        return tuple(pts)

    def anchor(self, edge: Edge) -> int:
        """Vertex index of p_e: left end of a horizontal, top of a vertical."""
        return edge.position if edge.horizontal else edge.position + 1

    def segment(self, start: int, stop: int) -> list[Edge]:
        """Edges walked east from vertex start to vertex stop, wrapping around."""
        n = len(self.word)
        if n == 0:
            return []
        if stop < start:
            stop += n
        return [self.edges[k % n] for k in range(start, stop)]

    def cyclic_subpath(self, e: Edge, f: Edge) -> tuple[int, int]:
        """(start, stop) vertex indices of the subpath from p_e to p_f,
        with stop unwrapped past len(path) when it wraps."""
        if e == f:
            raise ValueError("subpath between identical edges is undefined")
        n = len(self.word)
        start, stop = self.anchor(e), self.anchor(f)
        if e.position > f.position or stop < start:
            stop += n
        return start, stop

    def cyclic_subpath_counts(self, u, w) -> tuple[int, int]:
        """(|uw|_1, |uw|_2) for vertices (ints) or edges."""
        if isinstance(u, Edge) and isinstance(w, Edge):
            start, stop = self.cyclic_subpath(u, w)
        else:
            start = self.anchor(u) if isinstance(u, Edge) else u
            stop = self.anchor(w) if isinstance(w, Edge) else w
            if stop < start:
                stop += len(self.word)
        seg = [self.edges[k % len(self.word)] for k in range(start, stop)]
        horiz = sum(1 for s in seg if s.horizontal)
        return horiz, len(seg) - horiz

    def is_below_diagonal(self) -> bool:
        ell, h = self.ell, self.h
        return all(h * x - ell * y >= 0 for x, y in self.vertices)

    def __add__(self, other: DyckPath) -> DyckPath:
        return DyckPath(self.word + other.word)


@lru_cache(maxsize=None)
def maximal_dyck_path(ell: int, h: int) -> DyckPath:
    """Greedy: step north whenever the new vertex stays weakly below the diagonal."""
    if ell < 0 or h < 0:
        raise ValueError("sizes must be nonnegative")
    x = y = 0
    steps = []
    while (x, y) != (ell, h):
        if y < h and h * x - ell * (y + 1) >= 0:
            y += 1
            steps.append("N")
        else:
            x += 1
            steps.append("E")
    return DyckPath("".join(steps))


def cluster_path(r: int, n: int) -> DyckPath:
    """C_n = P(c_{n-1}, c_{n-2})."""
    return maximal_dyck_path(c_seq(r, n - 1), c_seq(r, n - 2))


@dataclass(frozen=True)
class Block:
    offset: int  # word position of the block's first edge
    eta_offset: int
    nu_offset: int
    path: DyckPath


@dataclass(frozen=True)
class MonomialPath:
    path: DyckPath
    blocks: tuple[Block, ...]


def monomial_path(r: int, n: int, alpha: int, beta: int) -> MonomialPath:
    """P(alpha c_{n+1} + beta c_n, alpha c_n + beta c_{n-1}) with its blocks."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if alpha < 0 or beta < 0 or alpha + beta == 0:
        raise ValueError("need alpha, beta >= 0, not both zero")
    big = maximal_dyck_path(c_seq(r, n + 1), c_seq(r, n))
    small = maximal_dyck_path(c_seq(r, n), c_seq(r, n - 1))
    # alpha big blocks and beta small ones, interleaved along P(beta, alpha):
    # an east step there is a small block, a north step a big one
    pattern = maximal_dyck_path(beta, alpha).word
    blocks, word = [], ""
    ne = nn = 0
    for step in pattern:
        piece = small if step == "E" else big
        blocks.append(Block(len(word), ne, nn, piece))
        word += piece.word
        ne += piece.ell
        nn += piece.h
    return MonomialPath(DyckPath(word), tuple(blocks))
