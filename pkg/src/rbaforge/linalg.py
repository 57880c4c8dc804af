"""Exact linear solves over :class:`RadicalNumber`.

Pivots are chosen as the first nonzero entry in the column; with exact
arithmetic there is no conditioning to protect.
"""

from __future__ import annotations

from typing import Sequence

from .exactreal import ONE, ZERO, RadicalNumber, as_radical, radical_sum


class RankError(ArithmeticError):
    """The vectors or the system are rank deficient."""


class InconsistentSystemError(ArithmeticError):
    """The right-hand side is not in the column span."""


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[RadicalNumber]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [[as_radical(x) for x in row] for row in matrix]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def solve_unique(rows: Sequence[Sequence], rhs: Sequence) -> list[RadicalNumber]:
    """Solve a consistent system that has exactly one solution."""
    if not rows:
        raise RankError("empty system")
    n = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if n in pivots:
        raise InconsistentSystemError("system has no solution")
    if len(pivots) < n:
        raise RankError(f"solution not unique: rank {len(pivots)} < {n}")
    out = [ZERO] * n
    for r, c in enumerate(pivots):
        out[c] = m[r][n]
    return out


def inverse(matrix: Sequence[Sequence]) -> list[list[RadicalNumber]]:
    n = len(matrix)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise RankError("matrix is singular")
    return [row[n:] for row in m]


class SpanSolver:
    """Coordinates of vectors in the span of a fixed independent family.

    ``vectors`` are the family members (equal length).  A square invertible
    subsystem is selected once; each query costs one sparse mat-vec plus, when
    the family does not span the whole space, a closure check on every position.
    """

    def __init__(self, vectors: Sequence[Sequence[RadicalNumber]]):
        self.vectors = [[as_radical(x) for x in v] for v in vectors]
        k = len(self.vectors)
        if k == 0:
            raise RankError("empty family")
        length = len(self.vectors[0])
        # independent coordinate positions = pivot columns of the family as rows
        _, pivots = rref(self.vectors)
        if len(pivots) < k:
            raise RankError(f"family is dependent: rank {len(pivots)} < {k}")
        self.rows = pivots
        square = [[self.vectors[j][r] for j in range(k)] for r in pivots]
        self._inv = inverse(square)
        self.length = length

    def coordinates(self, v: Sequence[RadicalNumber]) -> list[RadicalNumber]:
        """Coordinates of ``v``; raises :class:`InconsistentSystemError` if outside the span."""
        k = len(self.vectors)
        picked = [(col, v[r]) for col, r in enumerate(self.rows) if v[r]]
        coords = [radical_sum(self._inv[i][col] * x for col, x in picked) for i in range(k)]
        if k == self.length:
            # square invertible system: every vector is in the span
            return coords
        for pos in range(self.length):
            acc = radical_sum(c * self.vectors[j][pos] for j, c in enumerate(coords) if c and self.vectors[j][pos])
            if acc != v[pos]:
                raise InconsistentSystemError(f"vector leaves the span at position {pos}")
        return coords
