"""Immutable simple digraphs, vertex subsets, and in-degree Laplacians.

Vertices are labeled 1..n, the usual convention in the robustness
literature.  Internally a vertex v occupies bit v-1 of a single machine
word, which caps graphs at 64 nodes; everything downstream (subset
enumeration, MILP construction) relies on that representation.

An edge (i, j) is directed from i to j, so i is an in-neighbor of j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_NODES = 64


class GraphError(ValueError):
    """Invalid graph construction or vertex argument."""


def _check_node_count(n: int) -> None:
    if n < 0:
        raise GraphError(f"node count must be nonnegative, got {n}")
    if n > MAX_NODES:
        raise GraphError(
            f"node count {n} exceeds the supported maximum of {MAX_NODES} "
            "(vertex subsets are single 64-bit masks)"
        )


@dataclass(frozen=True)
class NodeSet:
    """Subset of the vertices 1..n, stored as a bitmask (vertex v <-> bit v-1)."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        _check_node_count(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise GraphError(f"mask {self.mask:#x} out of range for n={self.n}")

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> NodeSet:
        mask = 0
        for v in vertices:
            if not 1 <= v <= n:
                raise GraphError(f"vertex {v} out of range 1..{n}")
            mask |= 1 << (v - 1)
        return cls(mask, n)

    @classmethod
    def from_indicator(cls, entries: Sequence[int]) -> NodeSet:
        """Inverse of :meth:`indicator`: entry j-1 nonzero puts vertex j in the set."""
        mask = 0
        for i, e in enumerate(entries):
            if e not in (0, 1):
                raise GraphError(f"indicator entries must be 0 or 1, got {e!r}")
            mask |= e << i
        return cls(mask, len(entries))

    @classmethod
    def empty(cls, n: int) -> NodeSet:
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> NodeSet:
        _check_node_count(n)
        return cls((1 << n) - 1, n)

    def indicator(self) -> tuple[int, ...]:
        """Binary membership vector: entry j-1 is 1 iff vertex j is in the set."""
        return tuple((self.mask >> i) & 1 for i in range(self.n))

    def vertices(self) -> tuple[int, ...]:
        return tuple(self)

    def complement(self) -> NodeSet:
        return NodeSet(self.mask ^ ((1 << self.n) - 1), self.n)

    def isdisjoint(self, other: NodeSet) -> bool:
        return (self.mask & other.mask) == 0

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return 1 <= v <= self.n and (self.mask >> (v - 1)) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length()
            m ^= low

    def __repr__(self) -> str:
        return f"NodeSet({{{', '.join(map(str, self))}}}, n={self.n})"


class Digraph:
    """Simple directed graph: no self-loops, no duplicate edges, immutable."""

    __slots__ = ("n", "_in_masks", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        _check_node_count(n)
        in_masks = [0] * n
        m = 0
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise GraphError(f"self-loop ({i}, {j}) not allowed in a simple digraph")
            bit = 1 << (i - 1)
            if in_masks[j - 1] & bit:
                raise GraphError(f"duplicate edge ({i}, {j})")
            in_masks[j - 1] |= bit
            m += 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_in_masks", tuple(in_masks))
        object.__setattr__(self, "_m", m)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Digraph:
        return cls(n, edges)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Digraph is immutable")

    def __reduce__(self):
        # slots plus the immutability guard break default pickling
        return (Digraph, (self.n, self.edges()))

    # -- queries -------------------------------------------------------------

    def in_neighbor_mask(self, j: int) -> int:
        """Bitmask of the in-neighbors of vertex j (hot path for enumeration)."""
        self._check_vertex(j)
        return self._in_masks[j - 1]

    def in_neighbors(self, j: int) -> frozenset[int]:
        return frozenset(NodeSet(self.in_neighbor_mask(j), self.n))

    def in_degree(self, j: int) -> int:
        return self.in_neighbor_mask(j).bit_count()

    def min_in_degree(self) -> int:
        if self.n == 0:
            raise GraphError("minimum in-degree is undefined for the empty graph")
        return min(m.bit_count() for m in self._in_masks)

    def has_edge(self, i: int, j: int) -> bool:
        self._check_vertex(i)
        return (self.in_neighbor_mask(j) >> (i - 1)) & 1 == 1

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges, sorted lexicographically."""
        out = []
        for j, mask in enumerate(self._in_masks, start=1):
            for i in NodeSet(mask, self.n):
                out.append((i, j))
        out.sort()
        return tuple(out)

    @property
    def edge_count(self) -> int:
        return self._m

    def reachability(self, s: NodeSet) -> int:
        """Largest r for which the subset is r-reachable; 0 for the empty set.

        Scans only vertices inside the set: the maximum of |N_i \\ S| over
        i in S.  Nonnegative by construction.
        """
        if s.n != self.n:
            raise GraphError(f"subset over n={s.n} used with graph of n={self.n}")
        best = 0
        rem = s.mask
        outside = ~s.mask
        while rem:
            low = rem & -rem
            rem ^= low
            deg = (self._in_masks[low.bit_length() - 1] & outside).bit_count()
            if deg > best:
                best = deg
        return best

    def laplacian(self) -> Laplacian:
        return Laplacian(self)

    def _check_vertex(self, j: int) -> None:
        if not 1 <= j <= self.n:
            raise GraphError(f"vertex {j} out of range 1..{self.n}")

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self._in_masks == other._in_masks

    def __hash__(self) -> int:
        return hash((self.n, self._in_masks))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self._m})"


class Laplacian:
    """Integer in-degree Laplacian: diagonal |N_j|, -1 at (j, i) for i in N_j.

    Rows are exact integer tuples; every row sums to zero.
    """

    __slots__ = ("n", "rows")

    def __init__(self, d: Digraph) -> None:
        rows = []
        for j in range(1, d.n + 1):
            mask = d.in_neighbor_mask(j)
            row = [-((mask >> i) & 1) for i in range(d.n)]
            row[j - 1] = mask.bit_count()
            rows.append(tuple(row))
        object.__setattr__(self, "n", d.n)
        object.__setattr__(self, "rows", tuple(rows))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Laplacian is immutable")

    def row(self, j: int) -> tuple[int, ...]:
        if not 1 <= j <= self.n:
            raise GraphError(f"row index {j} out of range 1..{self.n}")
        return self.rows[j - 1]

    def row_action(self, j: int, s: NodeSet) -> int:
        """Integer dot product of row j with the indicator vector of the subset.

        Evaluated as an explicit sum so it stays an independent check of the
        bitmask reachability path.
        """
        if s.n != self.n:
            raise GraphError(f"subset over n={s.n} used with Laplacian of n={self.n}")
        row = self.row(j)
        return sum(row[v - 1] for v in s)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Laplacian):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Laplacian(n={self.n})"


def complete_digraph(n: int) -> Digraph:
    """Every ordered pair of distinct vertices is an edge."""
    return Digraph(n, ((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j))


def directed_cycle(n: int) -> Digraph:
    """Edges 1->2->...->n->1."""
    if n < 2:
        raise GraphError("a directed cycle needs at least 2 vertices")
    return Digraph(n, [(i, i % n + 1) for i in range(1, n + 1)])
