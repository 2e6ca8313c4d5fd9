"""Recovering a matrix, up to relabeling, from the measures it generates.

A matrix with uniform index weights is pinned down by its generated measure
set up to switching equivalence (A = P B P^T for a permutation P).  The
procedure implemented here makes that constructive:

1. pick a test vector whose permutation orbit produces as many distinct
   measures as possible; such a vector is irreducible (its orbit collapses
   only through permutations commuting with the matrix) and can be taken
   with pairwise-distinct entries;
2. choose a perturbation scale epsilon small enough that orbit measures stay
   isolated: each measure of the base orbit has a unique partner within
   epsilon/4 in the orbit of any single-coordinate perturbation;
3. read the ordered support of one base measure, match its first component
   against the test vector to learn the combined relabeling, then recover
   each matrix column from the difference quotient of ordered supports
   between the base and the matching perturbed measure.

All information flows through a ``MeasureOracle`` that answers only with
ordered supports and orbit sizes, never with the hidden matrix itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .matrices import MeasuredMatrix, norm_inf_to_1, orbit_measures, perturb
from .measures import WeightedPointMeasure, lp_distance, lp_feasible

KERNEL_RESIDUAL_TOL = 1e-9
IRREDUCIBLE_LIMIT = 6
ORBIT_SEARCH_LIMIT = 7

# Below this single-coordinate shift the column difference quotients lose
# float accuracy (and the perturbed orbit approaches the measure-dedup
# tolerance), so smaller epsilons are treated as failures.
_MIN_SHIFT = 1e-6


class DegenerateSupportError(ValueError):
    """A planar measure had tied first coordinates, so no unique ordered support."""


class ReconstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class OrderedSupport:
    """Measure on R^2 written as paired vectors with xs strictly increasing."""

    xs: np.ndarray
    ys: np.ndarray
    weights: np.ndarray


def ordered_support(mu: WeightedPointMeasure) -> OrderedSupport:
    """The unique ordered support of a planar measure with distinct xs."""
    if mu.dim != 2:
        raise ValueError("ordered supports exist for planar measures only")
    xs = mu.points[:, 0].copy()
    if np.any(np.diff(xs) <= 0.0):
        raise DegenerateSupportError("tied first coordinates; support not unique")
    return OrderedSupport(xs, mu.points[:, 1].copy(), mu.weights.copy())


def support_measure(support: OrderedSupport) -> WeightedPointMeasure:
    return WeightedPointMeasure(np.column_stack((support.xs, support.ys)),
                                support.weights)


def permutation_commutator(a: np.ndarray, sigma: Sequence[int]) -> np.ndarray:
    """PA - AP for the permutation acting as (Px)_i = x_{sigma(i)}.

    (PA)_{ij} = A_{sigma(i), j} and (AP)_{ij} = A_{i, sigma^-1(j)}.
    """
    idx = np.asarray(sigma, dtype=int)
    return a[idx, :] - a[:, np.argsort(idx)]


def _commutator_stack(matrix: MeasuredMatrix) -> np.ndarray:
    """All nonzero PA - AP over index permutations, stacked."""
    a = matrix.entries
    kernels = []
    for sigma in itertools.permutations(range(matrix.n)):
        commutator = permutation_commutator(a, sigma)
        if np.max(np.abs(commutator)) > KERNEL_RESIDUAL_TOL:
            kernels.append(commutator)
    if not kernels:
        return np.empty((0, matrix.n, matrix.n))
    return np.stack(kernels)


def is_irreducible(matrix: MeasuredMatrix, v, tol: float = KERNEL_RESIDUAL_TOL) -> bool:
    """Whether the orbit of ``v`` collapses only through commuting permutations.

    Checked through the kernel formulation: for every permutation P with
    PA != AP and every permutation P1, the vector P1 v must avoid
    ker(PA - AP).  Residuals are measured against tol * ||v||.
    """
    v = np.asarray(v, dtype=float).ravel()
    if v.shape[0] != matrix.n:
        raise ValueError("vector length must equal the matrix order")
    if matrix.n > IRREDUCIBLE_LIMIT:
        raise ValueError(f"irreducibility check limited to order {IRREDUCIBLE_LIMIT}")
    kernels = _commutator_stack(matrix)
    if len(kernels) == 0:
        return True
    permuted = np.stack([v[np.array(sigma)]
                         for sigma in itertools.permutations(range(matrix.n))])
    residuals = np.einsum("kij,mj->kmi", kernels, permuted)
    norms = np.sqrt((residuals ** 2).sum(axis=2))
    scale = float(np.linalg.norm(v))
    return bool(norms.min() > tol * max(scale, 1e-30))


def _distinct_entry_vector(rng: np.random.Generator, n: int,
                           min_gap: float | None = None) -> np.ndarray:
    if min_gap is None:
        min_gap = 1e-3 / n
    for _ in range(10000):
        v = rng.uniform(-1.0, 1.0, n)
        if n == 1 or np.min(np.diff(np.sort(v))) > min_gap:
            return v
    raise RuntimeError("could not draw a vector with distinct entries")


def find_irreducible_vector(matrix: MeasuredMatrix, rng_seed: int = 0,
                            max_tries: int = 100) -> np.ndarray:
    """A pairwise-distinct-entry vector passing the irreducibility check.

    Random draws avoid the finitely many commutator kernels almost surely;
    each draw is verified before being returned.  If every permutation
    commutes with the matrix, any distinct-entry vector qualifies.
    """
    if matrix.n > IRREDUCIBLE_LIMIT:
        raise ValueError(f"construction limited to order {IRREDUCIBLE_LIMIT}")
    rng = np.random.default_rng(rng_seed)
    for _ in range(max_tries):
        v = _distinct_entry_vector(rng, matrix.n)
        if is_irreducible(matrix, v):
            return v
    raise ReconstructionError(
        "no irreducible vector found; the residual tolerance is degenerate "
        "for this matrix")


def switching_witness(a, b, tol: float = 1e-9) -> Optional[np.ndarray]:
    """A permutation sigma with A[i, j] == B[sigma(i), sigma(j)], or None.

    Equivalently A = P B P^T for the matrix P acting as (Px)_i = x_{sigma(i)}.
    Backtracking over vertex images, pruned by diagonal values and sorted
    row/column multisets; guaranteed fast up to order 7 and practical at 9.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("switching equivalence needs equal-order square matrices")
    n = a.shape[0]

    rows_a = np.sort(a, axis=1)
    rows_b = np.sort(b, axis=1)
    cols_a = np.sort(a.T, axis=1)
    cols_b = np.sort(b.T, axis=1)
    candidates: list[list[int]] = []
    for i in range(n):
        options = [j for j in range(n)
                   if abs(a[i, i] - b[j, j]) <= tol
                   and np.all(np.abs(rows_a[i] - rows_b[j]) <= tol)
                   and np.all(np.abs(cols_a[i] - cols_b[j]) <= tol)]
        if not options:
            return None
        candidates.append(options)

    sigma = np.full(n, -1, dtype=int)
    used = [False] * n

    def assign(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for t in range(i):
                if (abs(a[i, t] - b[j, sigma[t]]) > tol
                        or abs(a[t, i] - b[sigma[t], j]) > tol):
                    ok = False
                    break
            if ok:
                sigma[i] = j
                used[j] = True
                if assign(i + 1):
                    return True
                used[j] = False
        sigma[i] = -1
        return False

    return sigma.copy() if assign(0) else None


def max_orbit_vector(matrix: MeasuredMatrix, trials: int = 20,
                     rng_seed: int = 0) -> np.ndarray:
    """Best of ``trials`` random distinct-entry vectors by orbit size.

    For generic vectors the orbit size equals n! divided by the number of
    weight-preserving permutations commuting with the matrix, so the argmax
    is an irreducible vector; success is verified downstream rather than
    assumed.
    """
    if matrix.n > ORBIT_SEARCH_LIMIT:
        raise ValueError(f"orbit search limited to order {ORBIT_SEARCH_LIMIT}")
    rng = np.random.default_rng(rng_seed)
    best_vector = None
    best_size = -1
    for _ in range(max(1, trials)):
        v = _distinct_entry_vector(rng, matrix.n)
        size = len(orbit_measures(matrix, v))
        if size > best_size:
            best_size = size
            best_vector = v
    return best_vector


def choose_epsilon(matrix: MeasuredMatrix, v, norm_bound: float | None = None,
                   metric: str = "euclidean") -> float:
    """Perturbation scale meeting the two isolation conditions.

    epsilon must stay below half the smallest LP distance between distinct
    orbit measures of ``v`` (so perturbed measures attach uniquely), and
    epsilon^2 / (64 K) must stay below half the smallest entry gap of ``v``
    (so single-coordinate shifts preserve the sorted order).  With a
    singleton orbit only the ordering condition binds.
    """
    v = np.asarray(v, dtype=float).ravel()
    gaps = np.diff(np.sort(v))
    if len(gaps) == 0 or np.min(gaps) <= 0.0:
        raise ValueError("epsilon selection needs pairwise-distinct entries")
    gap = float(np.min(gaps))
    k_bound = max(1.0, float(norm_bound) if norm_bound is not None
                  else norm_inf_to_1(matrix).value)
    eps_order = float(np.sqrt(32.0 * k_bound * gap))
    orbit = orbit_measures(matrix, v)
    if len(orbit) < 2:
        return eps_order
    separation = min_pairwise_lp(orbit, metric)
    return min(separation / 2.0, eps_order)


def min_pairwise_lp(measures, metric: str = "euclidean") -> float:
    """Smallest LP distance between distinct members of a collection."""
    members = list(measures)
    best = np.inf
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            d = lp_distance(members[i], members[j], metric)
            if d < best:
                best = d
    return float(best)


class MeasureOracle:
    """Query interface over the measure family of a hidden matrix.

    Callers see orbit sizes and ordered supports for vectors of their
    choosing, plus a disclosed bound on the hidden (inf -> 1) norm; the
    matrix itself never crosses the interface.  Queries are answered
    serially and logged in order.
    """

    def __init__(self, matrix: MeasuredMatrix):
        self._matrix = matrix
        self._log: list[tuple[str, np.ndarray]] = []

    @property
    def dimension(self) -> int:
        return self._matrix.n

    @property
    def weights(self) -> np.ndarray:
        return self._matrix.p

    @property
    def query_count(self) -> int:
        return len(self._log)

    @property
    def query_log(self) -> list[tuple[str, np.ndarray]]:
        return list(self._log)

    def norm_bound(self) -> float:
        """Disclosed upper bound on the hidden (inf -> 1) operator norm."""
        return norm_inf_to_1(self._matrix).value

    def orbit_size(self, x) -> int:
        x = np.asarray(x, dtype=float).ravel()
        self._log.append(("orbit_size", x.copy()))
        return len(orbit_measures(self._matrix, x))

    def orbit_supports(self, x) -> tuple[OrderedSupport, ...]:
        """Ordered supports of every measure in the orbit of ``x``."""
        x = np.asarray(x, dtype=float).ravel()
        self._log.append(("orbit_supports", x.copy()))
        return tuple(ordered_support(mu) for mu in orbit_measures(self._matrix, x))


def reconstruct(oracle: MeasureOracle, norm_bound: float | None = None,
                trials: int = 12, rng_seed: int = 2024,
                max_halvings: int = 6) -> np.ndarray:
    """Recover a matrix switching-equivalent to the oracle's hidden one.

    Requires uniform index weights and a hidden order within the factorial
    enumeration range.  ``norm_bound`` defaults to the oracle's disclosed
    norm bound.  When a perturbed orbit fails to contain a unique measure
    within epsilon/4 of its base partner, epsilon is halved (at most
    ``max_halvings`` times); a degenerate ordered support triggers a fresh
    test vector instead.
    """
    n = oracle.dimension
    if n > IRREDUCIBLE_LIMIT:
        raise ValueError(f"reconstruction limited to order {IRREDUCIBLE_LIMIT}")
    if not np.allclose(oracle.weights, np.full(n, 1.0 / n), atol=1e-12):
        raise ValueError("reconstruction requires uniform index weights")
    k_bound = max(1.0, float(norm_bound) if norm_bound is not None
                  else oracle.norm_bound())
    rng = np.random.default_rng(rng_seed)

    for _ in range(8):  # fresh test vector on degenerate draws
        # Healthy entry gaps keep the perturbation scale, and with it the
        # accuracy of the column difference quotients, well conditioned.
        drawn = [_distinct_entry_vector(rng, n, min_gap=0.3 / n)
                 for _ in range(max(1, trials))]
        sizes = [oracle.orbit_size(x) for x in drawn]
        largest = max(sizes)
        v = max((x for x, size in zip(drawn, sizes) if size == largest),
                key=lambda x: float(np.min(np.diff(np.sort(x)))))

        try:
            supports = oracle.orbit_supports(v)
        except DegenerateSupportError:
            continue
        base = supports[0]
        base_measure = support_measure(base)

        order = np.argsort(v)
        if not np.array_equal(base.xs, v[order]):
            continue  # non-generic draw; first components must be sorted v

        gap = float(np.min(np.diff(base.xs)))
        eps = float(np.sqrt(32.0 * k_bound * gap))
        if len(supports) > 1:
            separation = min_pairwise_lp(
                (support_measure(s) for s in supports))
            eps = min(separation / 2.0, eps)

        for _ in range(max_halvings + 1):
            if eps * eps / (64.0 * k_bound) < _MIN_SHIFT:
                break
            recovered = _recover_columns(oracle, v, order, base, base_measure,
                                         eps, k_bound)
            if recovered is not None:
                return recovered
            eps /= 2.0

    raise ReconstructionError("reconstruction failed: no epsilon satisfied the "
                              "isolation conditions for any sampled test vector")


def _recover_columns(oracle: MeasureOracle, v: np.ndarray, order: np.ndarray,
                     base: OrderedSupport, base_measure: WeightedPointMeasure,
                     eps: float, k_bound: float) -> Optional[np.ndarray]:
    n = len(v)
    shift = eps * eps / (64.0 * k_bound)
    result = np.empty((n, n))
    for i in range(n):
        j = int(order[i])  # perturbing v at j moves sorted position i
        probe = perturb(v, j, eps, k_bound)
        try:
            supports = oracle.orbit_supports(probe)
        except DegenerateSupportError:
            return None
        near = [s for s in supports
                if lp_feasible(base_measure, support_measure(s), eps / 4.0)]
        if len(near) != 1:
            return None
        partner = near[0]
        expected_xs = base.xs.copy()
        expected_xs[i] += shift
        if not np.allclose(partner.xs, expected_xs, atol=shift * 1e-6 + 1e-12):
            return None
        result[:, i] = (partner.ys - base.ys) / shift
    return result
