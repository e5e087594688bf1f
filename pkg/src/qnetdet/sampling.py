"""Seeded samplers feeding the Monte Carlo verification suite.

Every function takes an explicit ``numpy.random.Generator``.  Generators
are minted by :func:`substream` from a (seed, stream name, trial index)
hash, so any single trial of any check can be replayed in isolation and
full runs aggregate to identical reports regardless of evaluation order.
"""

import hashlib
import logging

import numpy as np

from .errors import RejectionBudgetExceeded, SingularNormalizer
from .matrices import ComplexMatrix
from .network import Edge, QuantumNetwork
from .rules import Povm
from .schmidt import SchmidtVector, majorizes

logger = logging.getLogger(__name__)

__all__ = [
    "substream",
    "random_schmidt",
    "random_positive",
    "sample_povm",
    "sample_povm_arrays",
    "sample_local_kraus",
    "sample_wide_kraus",
    "dominated_vector",
    "log_damped",
    "dominating_candidate",
    "tail_collapse",
    "random_network",
]

RESAMPLE_BUDGET = 8

# below this ratio of extreme normalizer eigenvalues the inverse square
# root is numerically meaningless and the draw is rejected
_COND_FLOOR = 1e-10


def substream(seed, name, trial):
    """Independent generator for one named trial.

    Parameters
    ----------
    seed : int
        Run seed; any integer.
    name : str
        Stream label, typically the check name.
    trial : int
        Trial index within the stream.

    Returns
    -------
    numpy.random.Generator
        Philox-backed generator keyed by the SHA-256 hash of the
        arguments.  Distinct labels give independent streams, so trials
        never share state and may be evaluated in any order.
    """
    digest = hashlib.sha256(f"{seed}|{name}|{trial}".encode()).digest()
    key = np.frombuffer(digest[:16], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def random_schmidt(dimension, rng):
    """Random Schmidt vector from the flat Dirichlet measure."""
    return SchmidtVector(rng.dirichlet(np.ones(dimension)))


def random_positive(length, rng, scale=1.0):
    """Strictly positive vector with entries spread over ~two decades.

    The additive offset keeps log-domain checks away from -inf without
    thinning the exponential tail.
    """
    return (rng.exponential(scale, size=length) + 0.01 * scale).tolist()


def _complex_gaussian(shape, rng):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample_povm_arrays(dimension, count, rng):
    """Random complete swap measurement as a (count, d, d) complex array.

    Draws ``count`` complex-Gaussian d x d matrices and right-normalizes
    them in the vectorized picture: with M the Gram operator
    sum_a vec(A_a) vec(A_a)^dagger, the elements are
    unvec(M^{-1/2} vec(A_a)), which satisfies the completeness relation
    by construction whenever M is invertible.  Invertibility requires
    count >= d^2.

    Raises
    ------
    SingularNormalizer
        The Gram operator stayed numerically singular over the resample
        budget; always the case when count < d^2.
    """
    n = dimension * dimension
    for _ in range(RESAMPLE_BUDGET):
        raw = _complex_gaussian((count, n), rng)
        gram = raw.T @ raw.conj()
        w, u = np.linalg.eigh(gram)
        if w[0] < _COND_FLOOR * w[-1]:
            continue
        half = (u * (w**-0.5)) @ u.conj().T
        return (half @ raw.T).T.reshape(count, dimension, dimension)
    raise SingularNormalizer(
        f"Gram operator of {count} elements at dimension {dimension} stayed singular"
    )


def sample_povm(dimension, count, rng):
    """Random complete swap measurement; see sample_povm_arrays."""
    arrays = sample_povm_arrays(dimension, count, rng)
    return Povm(
        ComplexMatrix(dimension, dimension, [complex(v) for v in m.ravel()])
        for m in arrays
    )


def _right_normalized(raw, rng_label):
    # raw has shape (count, rows, cols); right-normalize so that
    # sum_a K_a^dagger K_a = identity on the cols space
    t = np.einsum("aji,ajk->ik", raw.conj(), raw)
    w, u = np.linalg.eigh(t)
    if w[0] < _COND_FLOOR * w[-1]:
        return None
    half = (u * (w**-0.5)) @ u.conj().T
    return raw @ half


def sample_local_kraus(dimension, count, rng):
    """Random one-sided measurement: ``count`` d x d Kraus operators
    K_a with sum_a K_a^dagger K_a = identity, as a (count, d, d) array.

    Applying them to one half of a pure state yields a probabilistic
    ensemble whose sorted-spectrum average majorizes the source
    spectrum, the locality limit every protocol check builds on.
    """
    for _ in range(RESAMPLE_BUDGET):
        out = _right_normalized(_complex_gaussian((count, dimension, dimension), rng), "local")
        if out is not None:
            return out
    raise SingularNormalizer("one-sided Kraus normalizer stayed singular")


def sample_wide_kraus(dimension, count, rng):
    """Random measurement mapping a d^2-level system to d levels:
    ``count`` d x d^2 Kraus operators with the completeness relation on
    the d^2 side.  Needs count >= d.

    Raises
    ------
    SingularNormalizer
    """
    n = dimension * dimension
    for _ in range(RESAMPLE_BUDGET):
        out = _right_normalized(_complex_gaussian((count, dimension, n), rng), "wide")
        if out is not None:
            return out
    raise SingularNormalizer(
        f"{count} operators cannot complete a {n}-level measurement"
        if count < dimension
        else "rank-reducing Kraus normalizer stayed singular"
    )


def dominated_vector(base, steps, rng):
    """Vector majorized by ``base``: applies ``steps`` random pairwise
    transfers, each moving two coordinates toward their mean.

    Transfers preserve the total and can only lower sorted partial
    sums, so the result is majorized by the input for any step count.
    """
    out = np.array(base, dtype=float)
    n = len(out)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        t = rng.uniform(0.0, 0.5)
        a, b = out[i], out[j]
        out[i] = (1.0 - t) * a + t * b
        out[j] = t * a + (1.0 - t) * b
    return out.tolist()


def log_damped(base, rng, floor=0.5):
    """Entrywise product of ``base`` with factors in [floor, 1).

    The log of the result sits pointwise below the log of ``base``, so
    after sorting it is weakly submajorized by it.
    """
    u = rng.uniform(floor, 1.0, size=len(base))
    return (np.asarray(base, dtype=float) * u).tolist()


def tail_collapse(values, dimension):
    """Shortest deterministic dominator: keep the dimension-1 largest
    entries and merge the remaining tail mass into one entry."""
    xs = sorted((float(v) for v in values), reverse=True)
    head = xs[: dimension - 1]
    head.append(float(np.sum(xs[dimension - 1 :])))
    return sorted(head, reverse=True)


def dominating_candidate(values, dimension, budget, rng):
    """Rejection-sample a ``dimension``-entry unit vector whose
    zero-padding majorizes ``values``.

    Returns
    -------
    (SchmidtVector, int)
        The accepted candidate and the number of draws used.

    Raises
    ------
    RejectionBudgetExceeded
        No draw accepted within ``budget`` attempts.
    """
    xs = [float(v) for v in values]
    pad = len(xs) - dimension
    for attempt in range(1, budget + 1):
        cand = random_schmidt(dimension, rng)
        if majorizes(list(cand.entries) + [0.0] * pad, xs):
            return cand, attempt
    raise RejectionBudgetExceeded(f"no dominating candidate in {budget} draws")


def random_network(dimension, max_edges, rng):
    """Random two-terminal series-parallel network with 1..max_edges
    edges; links are flat-Dirichlet Schmidt vectors.

    Grown from a single terminal-to-terminal edge by repeatedly either
    splitting an edge in series through a fresh node or duplicating an
    edge in parallel, so the result reduces by construction.
    """
    pairs = [("A", "B")]
    fresh = 0
    target = int(rng.integers(1, max_edges + 1))
    while len(pairs) < target:
        k = int(rng.integers(0, len(pairs)))
        u, v = pairs[k]
        if rng.random() < 0.5:
            fresh += 1
            mid = f"n{fresh}"
            pairs[k] = (u, mid)
            pairs.append((mid, v))
        else:
            pairs.append((u, v))
    edges = [Edge(u, v, random_schmidt(dimension, rng)) for u, v in pairs]
    return QuantumNetwork(dimension, ("A", "B"), edges)
