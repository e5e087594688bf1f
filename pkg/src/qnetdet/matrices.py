"""Small dense complex matrices and the spectral routines on them.

Everything here is sized for local dimensions up to 16; the verifier
and the combination rules never need more.  The heavy lifting happens
in the kernel backend (compiled when available).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .backend import kernels
from .errors import DimensionTooLarge, NotHermitian, ShapeMismatch

# Dense kernels are validated up to this dimension.
MAX_DIM = 16


@dataclass(frozen=True)
class ComplexMatrix:
    """Immutable row-major complex matrix."""

    rows: int
    cols: int
    data: Tuple[complex, ...]

    def __init__(self, rows: int, cols: int, data: Iterable[complex]):
        flat = tuple(complex(v) for v in data)
        if rows < 1 or cols < 1 or len(flat) != rows * cols:
            raise ShapeMismatch(f"{len(flat)} entries for shape {rows}x{cols}")
        object.__setattr__(self, "rows", int(rows))
        object.__setattr__(self, "cols", int(cols))
        object.__setattr__(self, "data", flat)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[complex]]) -> "ComplexMatrix":
        if not rows:
            raise ShapeMismatch("no rows")
        ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ShapeMismatch("ragged rows")
        return cls(len(rows), ncols, [v for r in rows for v in r])

    def entry(self, r: int, c: int) -> complex:
        return self.data[r * self.cols + c]

    def to_rows(self) -> list:
        return [
            [self.data[r * self.cols + c] for c in range(self.cols)]
            for r in range(self.rows)
        ]


def fourier_matrix(d: int) -> ComplexMatrix:
    """d-dimensional discrete Fourier matrix with 1-based indices.

    Entry (mu, nu) for mu, nu = 1..d is exp(-2*pi*i*mu*nu/d)/sqrt(d).
    Unitary for every d; note the 1-based convention shifts both index
    ranges by one relative to the usual DFT matrix.
    """
    if d < 1:
        raise ShapeMismatch("dimension must be positive")
    rd = 1.0 / math.sqrt(d)
    data = [
        rd * cmath.exp(-2j * cmath.pi * mu * nu / d)
        for mu in range(1, d + 1)
        for nu in range(1, d + 1)
    ]
    return ComplexMatrix(d, d, data)


def singular_values_desc(m: ComplexMatrix) -> list:
    """Singular values of m, descending.  Dimensions capped at 16."""
    if max(m.rows, m.cols) > MAX_DIM:
        raise DimensionTooLarge(f"kernel supports dimensions up to {MAX_DIM}")
    return kernels.sv_desc(m.rows, m.cols, list(m.data))


def hermitian_eigenvalues_desc(m: ComplexMatrix, tol: float = 1e-10) -> list:
    """Eigenvalues of a Hermitian matrix, descending.

    Raises
    ------
    ShapeMismatch
        Not square.
    NotHermitian
        Some entry differs from the conjugate of its transpose partner
        by more than tol relative to the Frobenius norm.
    DimensionTooLarge
        Dimension above 16.
    """
    if m.rows != m.cols:
        raise ShapeMismatch(f"{m.rows}x{m.cols} matrix is not square")
    if m.rows > MAX_DIM:
        raise DimensionTooLarge(f"kernel supports dimensions up to {MAX_DIM}")
    scale = math.sqrt(frobenius_norm_sq(m))
    atol = tol * max(1.0, scale)
    n = m.rows
    for j in range(n):
        for k in range(j, n):
            if abs(m.data[j * n + k] - m.data[k * n + j].conjugate()) > atol:
                raise NotHermitian(f"entries ({j},{k})/({k},{j}) inconsistent")
    return kernels.eigh_desc(n, list(m.data))


def frobenius_norm_sq(m: ComplexMatrix) -> float:
    """Sum of squared moduli of the entries."""
    return math.fsum(v.real * v.real + v.imag * v.imag for v in m.data)
