"""Combination rules for links of a quantum network.

Two operations generate everything:

* the series (swapping) rule: the Schmidt vector obtained
  deterministically when two links meet at an intermediate node and the
  node measures in a generalized Bell basis, and
* the parallel (purification) rule: the largest Schmidt vector (in the
  majorization order) reachable with certainty from a bundle of links,
  found by an equal-share water-filling scan.

Together with the classic formula for the optimal conversion
probability between two pure states they drive the network reduction
and the verification suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

from .backend import kernels
from .errors import (
    DimensionMismatch,
    DimensionTooSmall,
    InvalidPovm,
    LengthMismatchAfterPadding,
    ShapeMismatch,
)
from .matrices import ComplexMatrix
from .schmidt import MAJORIZATION_ATOL, SchmidtVector, ProbabilisticEnsemble, majorizes, normalize_descending

# Measurement outcomes below this probability are dropped when
# enumerating swap outcomes.
OUTCOME_PROB_FLOOR = 1e-14


@dataclass(frozen=True)
class Povm:
    """Measurement in vectorized form: square matrices X_alpha whose
    vectorizations satisfy the completeness relation
    sum_alpha conj(X_alpha[mu,nu]) X_alpha[mu',nu'] = delta delta."""

    elements: Tuple[ComplexMatrix, ...]

    def __init__(self, elements: Iterable[ComplexMatrix]):
        elems = tuple(elements)
        if not elems:
            raise ShapeMismatch("measurement needs at least one element")
        d = elems[0].rows
        for e in elems:
            if e.rows != e.cols or e.rows != d:
                raise ShapeMismatch("elements must be square and equally sized")
        object.__setattr__(self, "elements", elems)

    @property
    def dimension(self) -> int:
        return self.elements[0].rows

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def swap_rule(x: SchmidtVector, y: SchmidtVector) -> SchmidtVector:
    """Series rule: Schmidt vector produced by a deterministic swap at a
    node joining links x and y.

    Equals d times the squared singular values of
    diag(sqrt(x)) V diag(sqrt(y)) with V the Fourier matrix; computed
    here as eigenvalues of the Hermitian form, which keeps small entries
    at high relative accuracy.

    Raises
    ------
    DimensionMismatch
        Links of different local dimension.
    """
    if not isinstance(x, SchmidtVector):
        x = SchmidtVector(x)
    if not isinstance(y, SchmidtVector):
        y = SchmidtVector(y)
    if x.dimension != y.dimension:
        raise DimensionMismatch(f"dimensions {x.dimension} and {y.dimension} differ")
    return normalize_descending(kernels.swap_eig(list(x.entries), list(y.entries)))


def _swap_raw(xs, ys) -> list:
    """Series rule on raw, possibly unnormalized nonnegative vectors.

    Scale covariant: output total is (sum xs) * (sum ys).  Used by the
    determinant duality checks, which need the rule on adjugate vectors
    that do not sum to one.
    """
    if len(xs) != len(ys):
        raise DimensionMismatch(f"lengths {len(xs)} and {len(ys)} differ")
    return kernels.swap_eig([float(v) for v in xs], [float(v) for v in ys])


def _swap_raw_sv(xs, ys) -> list:
    """Series rule via the singular-value route; cross-check twin of _swap_raw."""
    if len(xs) != len(ys):
        raise DimensionMismatch(f"lengths {len(xs)} and {len(ys)} differ")
    return kernels.swap_sv([float(v) for v in xs], [float(v) for v in ys])


def purify_rule(x, d: int) -> SchmidtVector:
    """Parallel rule: the majorization-largest d-dimensional Schmidt
    vector deterministically reachable from Schmidt vector x.

    Entry l of the result is the larger of the l-th largest entry of x
    and an equal share of the mass not yet assigned; the scan preserves
    the total.  x may be longer than d (a bundle of links is combined by
    applying this to their tensor product).

    Raises
    ------
    DimensionTooSmall
        d < 1 or x shorter than d.
    """
    xs = list(x.entries) if isinstance(x, SchmidtVector) else [float(v) for v in x]
    if d < 1 or len(xs) < d:
        raise DimensionTooSmall(f"cannot map length {len(xs)} to dimension {d}")
    return normalize_descending(kernels.purify_kernel(xs, d))


def conversion_probability(source: SchmidtVector, target: SchmidtVector) -> float:
    """Greatest probability of converting the source pure state into the
    target by local operations and classical communication.

    The value is min over prefixes k of the tail-mass ratio
    (1 - sum of the k largest source entries) / (1 - same for target),
    with the target zero-padded to the source length.  Prefixes where
    the target tail vanishes are skipped.  Returns exactly 1.0 whenever
    the padded target majorizes the source, which is the condition for a
    deterministic conversion.

    Raises
    ------
    LengthMismatchAfterPadding
        Target strictly longer than the source; padding cannot reconcile
        a rank increase.
    """
    src = sorted(source.entries if isinstance(source, SchmidtVector) else map(float, source), reverse=True)
    tgt = sorted(target.entries if isinstance(target, SchmidtVector) else map(float, target), reverse=True)
    m = len(src)
    if len(tgt) > m:
        raise LengthMismatchAfterPadding(f"target length {len(tgt)} exceeds source length {m}")
    tgt = tgt + [0.0] * (m - len(tgt))
    if majorizes(tgt, src, MAJORIZATION_ATOL):
        return 1.0
    best = 1.0
    ps = 0.0
    pt = 0.0
    for k in range(m):
        if k > 0:
            ps += src[k - 1]
            pt += tgt[k - 1]
        den = 1.0 - pt
        if den <= 1e-15:
            continue
        num = 1.0 - ps
        if num < 0.0:
            num = 0.0
        ratio = num / den
        if ratio < best:
            best = ratio
    return best


def enumerate_swap_outcomes(x: SchmidtVector, y: SchmidtVector, povm: Povm) -> ProbabilisticEnsemble:
    """All measurement outcomes of swapping links x and y through the
    given measurement, as (probability, Schmidt vector) pairs.

    Element alpha produces the matrix Psi[j,k] = sqrt(x_j) X_alpha[j,k]
    sqrt(y_k); its squared Frobenius norm is the outcome probability and
    its squared singular values, renormalized, the outcome Schmidt
    vector.  Outcomes below probability 1e-14 are dropped.

    Raises
    ------
    DimensionMismatch, InvalidPovm
    """
    if not isinstance(x, SchmidtVector):
        x = SchmidtVector(x)
    if not isinstance(y, SchmidtVector):
        y = SchmidtVector(y)
    d = x.dimension
    if y.dimension != d or povm.dimension != d:
        raise DimensionMismatch("links and measurement must share one dimension")
    if not validate_povm(povm):
        raise InvalidPovm("completeness relation fails")
    rx = [math.sqrt(v) for v in x.entries]
    ry = [math.sqrt(v) for v in y.entries]
    outcomes = []
    for elem in povm:
        psi = [
            rx[j] * elem.data[j * d + k] * ry[k]
            for j in range(d)
            for k in range(d)
        ]
        p = math.fsum(v.real * v.real + v.imag * v.imag for v in psi)
        if p < OUTCOME_PROB_FLOOR:
            continue
        sv = kernels.sv_desc(d, d, psi)
        outcomes.append((p, normalize_descending(s * s for s in sv)))
    return ProbabilisticEnsemble(outcomes)


def validate_povm(povm: Povm, tol: float = 1e-10) -> bool:
    """Check the vectorized completeness relation: the Gram matrix of the
    vectorized elements must be the identity within tol (max entry
    deviation)."""
    d = povm.dimension
    n = d * d
    vecs = [list(e.data) for e in povm]
    for i in range(n):
        for j in range(i, n):
            acc = 0j
            for v in vecs:
                acc += v[i].conjugate() * v[j]
            want = 1.0 if i == j else 0.0
            if abs(acc - want) > tol:
                return False
    return True


def deterministic_swap_povm(d: int) -> Povm:
    """The d*d-element measurement whose every outcome reproduces the
    series rule exactly: element alpha = 1..d^2 has entries
    exp(-alpha(d mu + nu) 2 pi i / d^2 - 2 pi i mu nu / d) / d
    for mu, nu = 1..d."""
    if d < 1:
        raise ShapeMismatch("dimension must be positive")
    elems = []
    for alpha in range(1, d * d + 1):
        data = []
        for mu in range(1, d + 1):
            for nu in range(1, d + 1):
                ang = -2.0 * math.pi * alpha * (d * mu + nu) / (d * d) - 2.0 * math.pi * mu * nu / d
                data.append(cmath.exp(1j * ang) / d)
        elems.append(ComplexMatrix(d, d, data))
    return Povm(elems)


def bell_povm_d2() -> Povm:
    """The four-element qubit Bell measurement in vectorized form."""
    s = 1.0 / math.sqrt(2.0)
    mats = [
        [[s, 0], [0, s]],
        [[s, 0], [0, -s]],
        [[0, s], [s, 0]],
        [[0, s], [-s, 0]],
    ]
    return Povm(ComplexMatrix.from_rows(m) for m in mats)
