"""Linear algebra over GF(2)."""

from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from galois import GF2


def incidence_matrix(
    row_index: Dict[str, int],
    col_index: Dict[str, int],
    entries: Iterable[Tuple[str, str]],
) -> GF2:
    """Matrix with a 1 at (row, col) for every (row, col) entry (summed mod 2)."""
    array = np.zeros((len(row_index), len(col_index)), dtype=np.uint8)
    for row, col in entries:
        array[row_index[row], col_index[col]] ^= 1

    return GF2(array)


def rank(matrix: GF2) -> int:
    if matrix.size == 0:
        return 0

    return int(np.linalg.matrix_rank(matrix))


def null_space(matrix: GF2) -> GF2:
    """Rows form a basis of {x : matrix @ x = 0}."""
    num_rows, num_cols = matrix.shape
    if num_cols == 0:
        return GF2.Zeros((0, 0))

    if (num_rows == 0) or (not np.any(matrix)):
        return GF2.Identity(num_cols)

    return matrix.null_space()


def column_rank_increases(base: GF2, extra: GF2) -> bool:
    """True if some column of extra is outside the column space of base."""
    if extra.size == 0:
        return False

    if base.size == 0:
        return rank(extra) > 0

    return rank(GF2(np.hstack([base.view(np.ndarray), extra.view(np.ndarray)]))) > rank(
        base
    )


def solve(matrix: GF2, rhs: GF2) -> Optional[GF2]:
    """One solution x of matrix @ x = rhs, or None if the system is inconsistent."""
    num_rows, num_cols = matrix.shape
    if num_rows == 0:
        return GF2.Zeros(num_cols)

    augmented = np.zeros((num_rows, num_cols + 1), dtype=np.uint8)
    augmented[:, :num_cols] = matrix.view(np.ndarray)
    augmented[:, num_cols] = rhs.view(np.ndarray)

    reduced = GF2(augmented).row_reduce().view(np.ndarray)
    solution = np.zeros(num_cols, dtype=np.uint8)
    for row in reduced:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            continue

        pivot = int(nonzero[0])
        if pivot == num_cols:
            # 0 = 1
            return None

        solution[pivot] = row[num_cols]

    return GF2(solution)
