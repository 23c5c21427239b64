"""Exact arithmetic and linear algebra over prime fields F_p.

Everything here works on plain Python integers reduced mod p. Elimination
uses exact modular inverses (``pow(x, -1, p)``), never floating point, so
results are bit-identical across platforms and runs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence


class FieldError(ValueError):
    """Invalid matrix construction or incompatible operands."""


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (fine for small moduli)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def smallest_prime_geq(n: int) -> int:
    """Smallest prime >= n, for n >= 1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    candidate = max(n, 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate


@dataclass(frozen=True)
class FpMatrix:
    """Immutable matrix over F_p, entries stored row-major in [0, p)."""

    p: int
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows_data: Iterable[Sequence[int]], p: int) -> "FpMatrix":
        if not is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        data = tuple(tuple(int(x) % p for x in row) for row in rows_data)
        n_rows = len(data)
        n_cols = len(data[0]) if data else 0
        if any(len(row) != n_cols for row in data):
            raise FieldError("ragged rows")
        return FpMatrix(p=p, rows=n_rows, cols=n_cols, entries=data)

    @staticmethod
    def zeros(rows: int, cols: int, p: int) -> "FpMatrix":
        return FpMatrix.from_rows([[0] * cols for _ in range(rows)], p)

    @staticmethod
    def identity(n: int, p: int) -> "FpMatrix":
        return FpMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], p
        )

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column_block(self, columns: Sequence[int]) -> "FpMatrix":
        """Submatrix keeping the given columns, in the given order."""
        return FpMatrix.from_rows(
            [[row[c] for c in columns] for row in self.entries], self.p
        )

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def stack(*matrices: FpMatrix) -> FpMatrix:
    """Stack matrices vertically; all must share p and column count."""
    mats = [m for m in matrices if m.rows > 0 or m.cols > 0]
    if not mats:
        raise FieldError("nothing to stack")
    p, cols = mats[0].p, mats[0].cols
    for m in mats:
        if m.p != p:
            raise FieldError(f"modulus mismatch: {m.p} vs {p}")
        if m.cols != cols:
            raise FieldError(f"column mismatch: {m.cols} vs {cols}")
    rows: list[tuple[int, ...]] = []
    for m in mats:
        rows.extend(m.entries)
    return FpMatrix(p=p, rows=len(rows), cols=cols, entries=tuple(rows))


def mat_mul(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    if a.p != b.p:
        raise FieldError("modulus mismatch")
    if a.cols != b.rows:
        raise FieldError(f"shape mismatch: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    p = a.p
    bt = list(zip(*b.entries)) if b.entries else [()] * b.cols
    out = [
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt)
        for row in a.entries
    ]
    return FpMatrix(p=p, rows=a.rows, cols=b.cols, entries=tuple(out))


def mat_rank(m: FpMatrix) -> int:
    """Rank over F_p by Gaussian elimination with exact modular inverses."""
    if m.rows == 0 or m.cols == 0:
        return 0
    p = m.p
    work = [list(row) for row in m.entries]
    rank = 0
    for col in range(m.cols):
        pivot = None
        for r in range(rank, m.rows):
            if work[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [(x * inv) % p for x in work[rank]]
        pivot_row = work[rank]
        for r in range(rank + 1, m.rows):
            factor = work[r][col] % p
            if factor:
                work[r] = [(x - factor * y) % p for x, y in zip(work[r], pivot_row)]
        rank += 1
        if rank == m.rows:
            break
    return rank


def rowspace_contains(a: FpMatrix, b: FpMatrix) -> bool:
    """True iff every row of b lies in the row space of a.

    Equivalent to rank(a) == rank(stack(a, b)).
    """
    if a.p != b.p:
        raise FieldError("modulus mismatch")
    if a.cols != b.cols:
        raise FieldError(f"column mismatch: {a.cols} vs {b.cols}")
    if b.rows == 0:
        return True
    return mat_rank(a) == mat_rank(stack(a, b))


def solve_row_combination(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    """Find D with D @ a == b, i.e. express each row of b in rows of a.

    Raises FieldError when some row of b is outside the row space of a.
    """
    if a.p != b.p or a.cols != b.cols:
        raise FieldError("incompatible shapes for solve")
    p = a.p
    # Row-reduce a while tracking the transform T with T @ a == reduced.
    work = [list(row) for row in a.entries]
    transform = [
        [1 if i == j else 0 for j in range(a.rows)] for i in range(a.rows)
    ]
    pivots: list[tuple[int, int]] = []  # (pivot row in reduced form, column)
    rank = 0
    for col in range(a.cols):
        pivot = None
        for r in range(rank, a.rows):
            if work[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        transform[rank], transform[pivot] = transform[pivot], transform[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [(x * inv) % p for x in work[rank]]
        transform[rank] = [(x * inv) % p for x in transform[rank]]
        for r in range(a.rows):
            if r != rank and work[r][col] % p:
                factor = work[r][col] % p
                work[r] = [(x - factor * y) % p for x, y in zip(work[r], work[rank])]
                transform[r] = [
                    (x - factor * y) % p for x, y in zip(transform[r], transform[rank])
                ]
        pivots.append((rank, col))
        rank += 1
        if rank == a.rows:
            break
    out_rows: list[list[int]] = []
    for target in b.entries:
        residual = list(target)
        coeffs = [0] * a.rows
        for row_idx, col in pivots:
            factor = residual[col] % p
            if factor:
                residual = [
                    (x - factor * y) % p for x, y in zip(residual, work[row_idx])
                ]
                coeffs = [
                    (c + factor * t) % p
                    for c, t in zip(coeffs, transform[row_idx])
                ]
        if any(x % p for x in residual):
            raise FieldError("row not in row space")
        out_rows.append(coeffs)
    return FpMatrix.from_rows(out_rows, p)


def vandermonde(rows: int, cols: int, p: int) -> FpMatrix:
    """Vandermonde matrix with evaluation points 1, 2, ..., rows (mod p).

    Distinct points require rows <= p; any cols x cols submatrix is then
    nonsingular, which is the MDS property the code constructions rely on.
    """
    if not is_prime(p):
        raise FieldError(f"modulus {p} is not prime")
    if rows > p:
        raise FieldError(
            f"cannot build {rows} distinct evaluation points in F_{p}; raise p"
        )
    data = []
    for i in range(rows):
        x = (i + 1) % p
        row, power = [], 1
        for _ in range(cols):
            row.append(power)
            power = (power * x) % p
        data.append(row)
    return FpMatrix.from_rows(data, p)


def random_matrix(rows: int, cols: int, p: int, rng: random.Random) -> FpMatrix:
    """Matrix with entries i.i.d. uniform over [0, p) from the given generator."""
    if not is_prime(p):
        raise FieldError(f"modulus {p} is not prime")
    return FpMatrix.from_rows(
        [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)], p
    )
