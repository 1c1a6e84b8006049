"""Mixed-integer program whose optimum is the maximum robustness.

Variables are [t, b1, b2]: a continuous epigraph variable t at index 0,
then two blocks of n binaries marking the two vertex subsets.  Minimizing
t subject to both Laplacian blocks staying at or below t, disjointness,
and the cardinality bounds 1 <= sum(b) <= n-1 per block reproduces the
pair search exactly: the integer-feasible (b1, b2) are precisely the
indicator images of the disjoint nonempty subset pairs, and the minimal
feasible t for such a point is the larger of the two reachabilities.

All constraint coefficients are integers; rows are stored sparsely as
``a @ x <= rhs``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Laplacian, NodeSet
from .exhaustive import SubsetPair

ROW_EPIGRAPH = "epigraph"
ROW_DISJOINT = "disjoint"
ROW_CARDINALITY = "cardinality"
ROW_SYMMETRY = "symmetry"


@dataclass(frozen=True)
class BinaryPair:
    """Two binary vectors of equal length n (indicator form of a subset pair)."""

    b1: tuple[int, ...]
    b2: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.b1) != len(self.b2):
            raise ValueError("binary vectors must have equal length")
        for vec in (self.b1, self.b2):
            for e in vec:
                if e not in (0, 1):
                    raise ValueError(f"binary vector entries must be 0 or 1, got {e!r}")

    @property
    def n(self) -> int:
        return len(self.b1)


@dataclass(frozen=True)
class Row:
    """One sparse inequality sum(coef * x[idx]) <= rhs."""

    kind: str
    coeffs: tuple[tuple[int, int], ...]  # (variable index, integer coefficient)
    rhs: int


@dataclass(frozen=True)
class MilpModel:
    """Immutable model: minimize x[0] subject to the rows and bounds below.

    Variable order: index 0 is t; 1..n is the first binary block; n+1..2n
    the second.  ``upper[0]`` is None (t unbounded above); binaries live in
    [0, 1] with integrality flags set.
    """

    n: int
    num_vars: int
    objective: tuple[int, ...]
    rows: tuple[Row, ...]
    lower: tuple[int, ...]
    upper: tuple[int | None, ...]
    integrality: tuple[bool, ...]

    def var_name(self, idx: int) -> str:
        if idx == 0:
            return "t"
        if 1 <= idx <= self.n:
            return f"b1[{idx}]"
        if self.n < idx <= 2 * self.n:
            return f"b2[{idx - self.n}]"
        raise ValueError(f"variable index {idx} out of range")

    def rows_of_kind(self, kind: str) -> tuple[Row, ...]:
        return tuple(r for r in self.rows if r.kind == kind)

    def binary_indices(self) -> range:
        return range(1, 2 * self.n + 1)


def build_milp(lap: Laplacian, *, symmetry_break: bool = True) -> MilpModel:
    """Assemble the robustness MILP from a Laplacian.

    Row layout: 2n epigraph rows (block 1 then block 2, each in vertex
    order), n disjointness rows, 4 one-sided cardinality rows, then the
    optional symmetry-break row ``b2[1] <= 0``.  The symmetry row is valid
    because swapping the two blocks preserves feasibility and objective, so
    some optimum always has vertex 1 outside the second subset; it halves
    the search space and is on by default.
    """
    n = lap.n
    if n < 2:
        raise ValueError(
            f"the robustness MILP needs n >= 2 (cardinality rows are infeasible at n={n})"
        )
    rows: list[Row] = []
    for offset in (1, n + 1):
        for j in range(1, n + 1):
            coeffs = [(0, -1)]
            for i, c in enumerate(lap.row(j), start=1):
                if c:
                    coeffs.append((offset + i - 1, c))
            rows.append(Row(ROW_EPIGRAPH, tuple(coeffs), 0))
    for v in range(1, n + 1):
        rows.append(Row(ROW_DISJOINT, ((v, 1), (n + v, 1)), 1))
    for offset in (1, n + 1):
        block = tuple(range(offset, offset + n))
        rows.append(Row(ROW_CARDINALITY, tuple((v, -1) for v in block), -1))
        rows.append(Row(ROW_CARDINALITY, tuple((v, 1) for v in block), n - 1))
    if symmetry_break:
        rows.append(Row(ROW_SYMMETRY, ((n + 1, 1),), 0))

    num_vars = 2 * n + 1
    return MilpModel(
        n=n,
        num_vars=num_vars,
        objective=(1,) + (0,) * (2 * n),
        rows=tuple(rows),
        lower=(0,) * num_vars,
        upper=(None,) + (1,) * (2 * n),
        integrality=(False,) + (True,) * (2 * n),
    )


def check_feasible(pair: BinaryPair) -> bool:
    """Membership test for the integer feasible set: disjoint marks, each
    block selecting between 1 and n-1 vertices."""
    n = pair.n
    if any(a + b > 1 for a, b in zip(pair.b1, pair.b2)):
        return False
    for vec in (pair.b1, pair.b2):
        if not 1 <= sum(vec) <= n - 1:
            return False
    return True


def encode_pair(pair: SubsetPair) -> BinaryPair:
    """Indicator image of a subset pair."""
    return BinaryPair(pair.s1.indicator(), pair.s2.indicator())


def decode_pair(pair: BinaryPair) -> SubsetPair:
    """Inverse of :func:`encode_pair`; rejects vectors outside the feasible set."""
    if not check_feasible(pair):
        raise ValueError(f"{pair!r} is not a feasible binary pair")
    return SubsetPair(NodeSet.from_indicator(pair.b1), NodeSet.from_indicator(pair.b2))


def block_objective(rows: Sequence[Sequence[int]], pair: BinaryPair) -> int:
    """Larger, over both binary blocks, of the maximum row product.

    Pure integer arithmetic; the rows are Laplacian rows, so for a feasible
    pair this equals the larger of the two decoded subsets' reachabilities.
    """
    best = None
    for vec in (pair.b1, pair.b2):
        for row in rows:
            val = sum(c * e for c, e in zip(row, vec))
            if best is None or val > best:
                best = val
    assert best is not None
    return best


def objective_value(lap: Laplacian, pair: BinaryPair) -> int:
    """Exact integer objective of a feasible binary pair."""
    if pair.n != lap.n:
        raise ValueError(f"binary pair of length {pair.n} used with Laplacian of n={lap.n}")
    if not check_feasible(pair):
        raise ValueError(f"{pair!r} is not a feasible binary pair")
    return block_objective(lap.rows, pair)


def enumerate_binary_pairs(n: int) -> Iterator[BinaryPair]:
    """All 2^(2n) candidate binary pairs (feasible or not), for counting checks."""
    for m1 in range(1 << n):
        b1 = tuple((m1 >> i) & 1 for i in range(n))
        for m2 in range(1 << n):
            yield BinaryPair(b1, tuple((m2 >> i) & 1 for i in range(n)))


def dump_model(model: MilpModel) -> str:
    """Stable LP-style text rendering, used for debugging and golden tests.

    Layout: a header line, the objective, one line per row in stored order
    with per-kind counters, then bounds and the binary marker line.
    """
    lines = [f"milp n={model.n} vars={model.num_vars} rows={len(model.rows)}"]
    lines.append("minimize t")
    counters: dict[str, int] = {}
    for row in model.rows:
        counters[row.kind] = counters.get(row.kind, 0) + 1
        terms = " ".join(
            f"{'+' if c >= 0 else '-'}{abs(c)} {model.var_name(i)}" for i, c in row.coeffs
        )
        lines.append(f"{row.kind}[{counters[row.kind]}]: {terms} <= {row.rhs}")
    lines.append("t >= 0")
    lines.append(
        "binary " + " ".join(model.var_name(i) for i in model.binary_indices())
    )
    return "\n".join(lines) + "\n"
