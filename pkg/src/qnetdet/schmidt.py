"""Schmidt vectors, majorization predicates and entanglement monotones.

A Schmidt vector collects the squared Schmidt coefficients of a
bipartite pure state: nonnegative numbers, sorted in descending order,
summing to one.  Everything downstream (combination rules, network
reduction, the verification suite) works on these vectors; the state
vectors themselves never appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .backend import kernels
from .errors import (
    DimensionMismatch,
    EmptyEnsemble,
    EmptyInput,
    KOutOfRange,
    LengthMismatch,
    NegativeEntry,
    ZeroSum,
)

# Shared absolute tolerance for every majorization comparison in the
# package.  Prefix-sum comparisons are made at this slack; callers that
# need a different strictness pass tol explicitly.
MAJORIZATION_ATOL = 1e-9

# Entries this far below zero are treated as roundoff and clamped.
_NEG_EPS = 1e-12


def _values_of(x) -> list:
    if isinstance(x, SchmidtVector):
        return list(x.entries)
    return [float(v) for v in x]


@dataclass(frozen=True)
class SchmidtVector:
    """Immutable descending probability vector.

    Parameters
    ----------
    entries : tuple of float
        Nonnegative values summing to 1 within 1e-12.  The constructor
        sorts them, so callers may pass any order; entries below zero by
        at most 1e-12 are clamped to zero.

    Raises
    ------
    EmptyInput, NegativeEntry, ValueError
    """

    entries: Tuple[float, ...]

    def __init__(self, entries: Iterable[float]):
        vals = [float(v) for v in entries]
        if not vals:
            raise EmptyInput("SchmidtVector needs at least one entry")
        clamped = []
        for v in vals:
            if v < -_NEG_EPS:
                raise NegativeEntry(f"entry {v!r} below zero")
            clamped.append(v if v > 0.0 else 0.0)
        clamped.sort(reverse=True)
        total = math.fsum(clamped)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"entries sum to {total!r}, expected 1 within 1e-12")
        object.__setattr__(self, "entries", tuple(clamped))

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


@dataclass(frozen=True)
class ProbabilisticEnsemble:
    """Finite ensemble of Schmidt vectors with outcome probabilities.

    Probabilities must be nonnegative and sum to 1 within 1e-9; all
    member vectors must share one dimension.
    """

    outcomes: Tuple[Tuple[float, SchmidtVector], ...]

    def __init__(self, outcomes: Iterable[Tuple[float, SchmidtVector]]):
        items = []
        for p, vec in outcomes:
            p = float(p)
            if p < -_NEG_EPS:
                raise NegativeEntry(f"probability {p!r} below zero")
            if not isinstance(vec, SchmidtVector):
                vec = SchmidtVector(vec)
            items.append((p if p > 0.0 else 0.0, vec))
        if not items:
            raise EmptyEnsemble("ensemble needs at least one outcome")
        d = items[0][1].dimension
        for _, vec in items:
            if vec.dimension != d:
                raise DimensionMismatch("ensemble members must share a dimension")
        total = math.fsum(p for p, _ in items)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {total!r}, expected 1 within 1e-9")
        object.__setattr__(self, "outcomes", tuple(items))

    @property
    def dimension(self) -> int:
        return self.outcomes[0][1].dimension

    def __len__(self) -> int:
        return len(self.outcomes)

    def __iter__(self):
        return iter(self.outcomes)


def normalize_descending(values: Iterable[float]) -> SchmidtVector:
    """Clamp roundoff negatives, divide by the total, sort descending.

    Raises
    ------
    EmptyInput
        No entries.
    NegativeEntry
        An entry below -1e-12.
    ZeroSum
        All entries vanish, nothing to normalize.
    """
    vals = [float(v) for v in values]
    if not vals:
        raise EmptyInput("nothing to normalize")
    clamped = []
    for v in vals:
        if v < -_NEG_EPS:
            raise NegativeEntry(f"entry {v!r} below zero")
        clamped.append(v if v > 0.0 else 0.0)
    total = math.fsum(clamped)
    if total <= 0.0:
        raise ZeroSum("entries sum to zero")
    return SchmidtVector(v / total for v in clamped)


def majorizes(x, y, tol: float = MAJORIZATION_ATOL) -> bool:
    """True when x majorizes y: every descending prefix sum of x is at
    least the matching prefix sum of y (within tol) and the totals agree
    within tol.

    Both arguments may be SchmidtVectors or plain sequences; they are
    sorted internally, so input order never matters.

    Raises
    ------
    LengthMismatch
        The two vectors differ in length.
    """
    xs = sorted(_values_of(x), reverse=True)
    ys = sorted(_values_of(y), reverse=True)
    if len(xs) != len(ys):
        raise LengthMismatch(f"lengths {len(xs)} and {len(ys)} differ")
    px = 0.0
    py = 0.0
    for k in range(len(xs) - 1):
        px += xs[k]
        py += ys[k]
        if px < py - tol:
            return False
    return abs(math.fsum(xs) - math.fsum(ys)) <= tol


def weakly_submajorizes(x, y, tol: float = MAJORIZATION_ATOL) -> bool:
    """True when every descending prefix sum of x is at least the
    matching prefix sum of y within tol.  No constraint on the totals;
    entries may be negative (the predicate is applied to logarithms).
    """
    xs = sorted(_values_of(x), reverse=True)
    ys = sorted(_values_of(y), reverse=True)
    if len(xs) != len(ys):
        raise LengthMismatch(f"lengths {len(xs)} and {len(ys)} differ")
    px = 0.0
    py = 0.0
    for k in range(len(xs)):
        px += xs[k]
        py += ys[k]
        if px < py - tol:
            return False
    return True


def kron(x, y) -> SchmidtVector:
    """Schmidt vector of the tensor product state: all pairwise products,
    renormalized and sorted descending."""
    xs = _values_of(x)
    ys = _values_of(y)
    return normalize_descending(a * b for a in xs for b in ys)


def elementary_symmetric(values, k: int) -> float:
    """k-th elementary symmetric polynomial of the entries.

    k = 0 gives 1 by convention.

    Raises
    ------
    EmptyInput, KOutOfRange
    """
    vals = _values_of(values)
    if not vals:
        raise EmptyInput("no entries")
    if k < 0 or k > len(vals):
        raise KOutOfRange(f"k={k} outside 0..{len(vals)}")
    return kernels.esym(vals, k)


def concurrence(x, k: int) -> float:
    """Normalized k-concurrence of a Schmidt vector.

    C_k(x) = [S_k(x) / S_k(u)]^(1/k) where S_k is the k-th elementary
    symmetric polynomial and u the uniform vector of the same dimension,
    so C_k = 1 on the maximally entangled state and C_k(x) = 0 exactly
    when x has fewer than k nonzero entries.  C_1 is identically 1;
    C_d(x) = d * (prod x_j)^(1/d).

    Raises
    ------
    EmptyInput, KOutOfRange
    """
    vals = _values_of(x)
    if not vals:
        raise EmptyInput("no entries")
    d = len(vals)
    if k < 1 or k > d:
        raise KOutOfRange(f"k={k} outside 1..{d}")
    sk = kernels.esym(vals, k)
    if sk <= 0.0:
        return 0.0
    ref = math.comb(d, k) / float(d**k)
    return (sk / ref) ** (1.0 / k)


def average_concurrence(ensemble: ProbabilisticEnsemble, k: int) -> float:
    """Probability-weighted mean of the k-concurrence over the ensemble."""
    if not isinstance(ensemble, ProbabilisticEnsemble):
        ensemble = ProbabilisticEnsemble(ensemble)
    return math.fsum(p * concurrence(vec, k) for p, vec in ensemble)


def worst_case_concurrence(ensemble: ProbabilisticEnsemble, k: int) -> float:
    """Minimum k-concurrence over the outcomes that can actually occur
    (probability above 1e-15)."""
    if not isinstance(ensemble, ProbabilisticEnsemble):
        ensemble = ProbabilisticEnsemble(ensemble)
    vals = [concurrence(vec, k) for p, vec in ensemble if p > 1e-15]
    if not vals:
        raise EmptyEnsemble("no outcome has positive probability")
    return min(vals)


def det_vec(x) -> float:
    """Product of the entries."""
    vals = _values_of(x)
    if not vals:
        raise EmptyInput("no entries")
    out = 1.0
    for v in vals:
        out *= v
    return out


def trace_vec(x) -> float:
    """Sum of the entries."""
    vals = _values_of(x)
    if not vals:
        raise EmptyInput("no entries")
    return math.fsum(vals)


def adjugate_vec(x) -> list:
    """Per-coordinate products of the remaining entries.

    Entry i is prod_{j != i} x_j, computed from prefix and suffix
    products so vectors containing zeros stay finite.  The result is
    aligned with the input order, not resorted.
    """
    vals = _values_of(x)
    n = len(vals)
    if n == 0:
        raise EmptyInput("no entries")
    prefix = [1.0] * (n + 1)
    for i in range(n):
        prefix[i + 1] = prefix[i] * vals[i]
    suffix = [1.0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] * vals[i]
    return [prefix[i] * suffix[i + 1] for i in range(n)]
