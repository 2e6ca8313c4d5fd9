"""Graph and matrix properties read off generated measures.

Eigenvalues show up as measures supported on a line through the origin, the
all-ones test vector exposes the row sums (vertex degrees for adjacency
matrices), and from those two ingredients the star and cycle homomorphism
counts follow in closed form.  A brute-force homomorphism counter serves as
the independent cross-check.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

import numpy as np

from .matrices import Graph, MeasuredMatrix, generate_measure
from .measures import WeightedPointMeasure

JACOBI_OFF_TOL = 1e-12

_HOM_PATTERN_LIMIT = 6
_HOM_TARGET_LIMIT = 8


def jacobi_eigh(matrix, off_tol: float = JACOBI_OFF_TOL,
                max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps rotate away each off-diagonal entry in turn until the off-diagonal
    Frobenius norm drops below ``off_tol``.  Returns eigenvalues in ascending
    order with eigenvectors as the matching columns.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a[0, :1].copy(), v
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off < off_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                sign = 1.0 if theta >= 0.0 else -1.0
                t = sign / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    else:
        raise RuntimeError("Jacobi rotations did not converge")
    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues)
    return eigenvalues[order], v[:, order]


def detect_line_support(mu: WeightedPointMeasure, tol: float = 1e-8) -> Optional[float]:
    """Slope of the line y = lambda * x carrying the measure, if any.

    The slope is fitted by weighted least squares through the origin; the
    measure qualifies when every atom (x, y) satisfies
    |y - lambda x| <= tol * max(1, |x|).  A measure generated by a matrix
    passes exactly when the test vector was an eigenvector, and the slope is
    then the eigenvalue.
    """
    if mu.dim != 2:
        raise ValueError("line detection expects a planar measure")
    xs = mu.points[:, 0]
    ys = mu.points[:, 1]
    sxx = float(mu.weights @ (xs * xs))
    if sxx <= 1e-300:
        slope = 0.0
    else:
        slope = float(mu.weights @ (xs * ys)) / sxx
    residuals = np.abs(ys - slope * xs)
    if np.all(residuals <= tol * np.maximum(1.0, np.abs(xs))):
        return slope
    return None


def row_sums_from_measure(matrix: MeasuredMatrix) -> list[tuple[float, float]]:
    """(value, weight) pairs of the row sums, read from the all-ones measure.

    The measure generated at the all-ones vector sits on the vertical line
    x = 1 and its second coordinates are the row sums; for a graph adjacency
    matrix with uniform weights this is the degree distribution.
    """
    mu = generate_measure(matrix, np.ones(matrix.n))
    return [(float(p[1]), float(w)) for p, w in zip(mu.points, mu.weights)]


def hom_star(degrees: Sequence[float], k: int) -> int:
    """Homomorphism count of the k-vertex star into a graph with the given
    degree sequence: sum of d^(k-1)."""
    if k < 2:
        raise ValueError("a star needs at least 2 vertices")
    total = float(np.sum(np.asarray(degrees, dtype=float) ** (k - 1)))
    return int(round(total))


class CycleHomCount(NamedTuple):
    raw: float
    rounded: Optional[int]


def hom_cycle(matrix: MeasuredMatrix, k: int) -> CycleHomCount:
    """Homomorphism count of the k-cycle: sum of adjacency eigenvalues^k.

    Eigenvalues come from the Jacobi solver.  ``rounded`` is filled whenever
    the matrix entries are integral; ``raw`` always carries the float sum.
    """
    if k < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    a = matrix.entries
    if not np.allclose(a, a.T, atol=1e-12, rtol=0.0):
        raise ValueError("cycle homomorphism counts need a symmetric matrix")
    eigenvalues, _ = jacobi_eigh(a)
    raw = float(np.sum(eigenvalues ** k))
    integral = bool(np.all(np.abs(a - np.round(a)) <= 1e-12))
    return CycleHomCount(raw, int(round(raw)) if integral else None)


def count_homomorphisms(pattern: Graph, target: Graph) -> int:
    """Exact homomorphism count by exhaustive assignment with pruning."""
    if pattern.n > _HOM_PATTERN_LIMIT:
        raise ValueError(f"pattern graph limited to {_HOM_PATTERN_LIMIT} vertices")
    if target.n > _HOM_TARGET_LIMIT:
        raise ValueError(f"target graph limited to {_HOM_TARGET_LIMIT} vertices")
    adj_target = target.adjacency_matrix() > 0.5
    earlier_neighbors: list[list[int]] = [[] for _ in range(pattern.n)]
    for u, v in pattern.edges:
        lo, hi = min(u, v), max(u, v)
        earlier_neighbors[hi].append(lo)

    assignment = [0] * pattern.n

    def assign(vertex: int) -> int:
        if vertex == pattern.n:
            return 1
        count = 0
        for image in range(target.n):
            if all(adj_target[assignment[w], image] for w in earlier_neighbors[vertex]):
                assignment[vertex] = image
                count += assign(vertex + 1)
        return count

    return assign(0)
