"""Finitely supported probability measures on R^d and metrics between them.

A measure is a finite weighted sum of Dirac atoms.  The central metric is the
Levy-Prokhorov distance, computed exactly through its coupling
characterization: an epsilon is feasible iff a coupling places mass at least
1 - epsilon on atom pairs at distance at most epsilon, which is a bipartite
maximum-flow question.  The max flow is a step function of epsilon, constant
between consecutive pairwise support distances, so the exact infimum is found
by searching the breakpoint intervals.

A brute-force subset-enumeration oracle (``lp_oracle``) evaluates the two
defining inequalities directly over all unions of support atoms and is used
to cross-check the flow computation on small instances.

Semantics note: the enlargement U^eps is taken closed (distance <= eps) and
the infimum over the finite candidate set is attained, so the returned value
is a minimum.  For finitely supported measures the open and closed
conventions only disagree on a measure-zero set of epsilon values.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .flows import bipartite_max_flow

# Two tolerance tiers: numerical noise in a matrix-vector product must never
# split an atom, while genuinely distinct generated measures must not be
# merged when collected into sets.
ATOM_MERGE_TOL = 1e-12
SET_DEDUP_TOL = 1e-9
WEIGHT_SUM_TOL = 1e-12
MASS_SLACK = 1e-12

METRICS = ("euclidean", "chebyshev")

_ORACLE_MAX_POINTS = 16


class WeightedPointMeasure:
    """Probability measure with finitely many atoms in R^d.

    Atoms are canonicalized at construction: points coinciding componentwise
    within ``ATOM_MERGE_TOL`` are merged (weights summed) and the remaining
    atoms are sorted lexicographically by coordinates, which makes equality
    testing deterministic and order-insensitive.

    Parameters
    ----------
    points : array_like, shape (m, d) or (m,)
        Atom locations; a 1-D input is treated as m points in R^1.
    weights : array_like, shape (m,)
        Strictly positive atom weights summing to 1 within 1e-12.
    """

    __slots__ = ("points", "weights", "_key", "_mean")

    def __init__(self, points, weights):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        w = np.asarray(weights, dtype=float).ravel()
        if pts.ndim != 2 or pts.shape[0] != w.shape[0]:
            raise ValueError("points and weights must have matching leading length")
        if pts.shape[0] == 0:
            raise ValueError("a measure needs at least one atom")
        if not np.all(np.isfinite(pts)) or not np.all(np.isfinite(w)):
            raise ValueError("atoms must be finite")
        if np.any(w <= 0.0):
            raise ValueError("atom weights must be strictly positive")
        total = float(w.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"atom weights sum to {total!r}, expected 1")

        order = np.lexsort(pts.T[::-1])
        pts = pts[order]
        w = w[order]

        merged_pts = [pts[0]]
        merged_w = [w[0]]
        for r in range(1, len(w)):
            if np.all(np.abs(pts[r] - merged_pts[-1]) <= ATOM_MERGE_TOL):
                merged_w[-1] += w[r]
            else:
                merged_pts.append(pts[r])
                merged_w.append(w[r])

        self.points = np.array(merged_pts, dtype=float)
        self.weights = np.array(merged_w, dtype=float)
        self.points.setflags(write=False)
        self.weights.setflags(write=False)
        self._key = np.column_stack((self.points, self.weights))
        self._key.setflags(write=False)
        self._mean = self.weights @ self.points

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def atom_count(self) -> int:
        return self.points.shape[0]

    @property
    def mean(self) -> np.ndarray:
        """Weighted mean of the atom locations."""
        return self._mean

    def atoms(self) -> list[tuple[np.ndarray, float]]:
        return [(self.points[i], float(self.weights[i])) for i in range(self.atom_count)]

    def to_text(self) -> str:
        """Serialize as ``d m`` followed by ``w x_1 ... x_d`` lines."""
        lines = [f"{self.dim} {self.atom_count}"]
        for i in range(self.atom_count):
            coords = " ".join(format(c, ".17g") for c in self.points[i])
            lines.append(f"{format(self.weights[i], '.17g')} {coords}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "WeightedPointMeasure":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 2:
            raise ValueError("measure text must start with a 'd m' line")
        d, m = int(rows[0][0]), int(rows[0][1])
        if len(rows) != m + 1:
            raise ValueError(f"expected {m} atom lines, found {len(rows) - 1}")
        pts = np.empty((m, d))
        w = np.empty(m)
        for i, row in enumerate(rows[1:]):
            if len(row) != d + 1:
                raise ValueError(f"atom line {i + 1} has {len(row)} fields, expected {d + 1}")
            w[i] = float(row[0])
            pts[i] = [float(c) for c in row[1:]]
        return cls(pts, w)

    def __repr__(self) -> str:
        return f"WeightedPointMeasure(dim={self.dim}, atoms={self.atom_count})"


def dirac(point) -> WeightedPointMeasure:
    """Point mass at ``point``."""
    return WeightedPointMeasure(np.asarray(point, dtype=float)[None, :], [1.0])


def measure_equal(mu: WeightedPointMeasure, nu: WeightedPointMeasure,
                  tol: float = SET_DEDUP_TOL) -> bool:
    """Whether the canonical atom lists match pairwise within ``tol``."""
    if mu.dim != nu.dim:
        raise ValueError(f"dimension mismatch: {mu.dim} vs {nu.dim}")
    if mu.atom_count != nu.atom_count:
        return False
    return bool(np.all(np.abs(mu._key - nu._key) <= tol))


class _Bucket:
    """Growable stack of canonical key arrays with one atom count."""

    def __init__(self, shape: tuple[int, int]):
        self.data = np.empty((4,) + shape)
        self.k = 0

    def matches(self, key: np.ndarray, tol: float) -> bool:
        if self.k == 0:
            return False
        close = np.abs(self.data[: self.k] - key) <= tol
        return bool(close.all(axis=(1, 2)).any())

    def add(self, key: np.ndarray) -> None:
        if self.k == len(self.data):
            grown = np.empty((2 * self.k,) + self.data.shape[1:])
            grown[: self.k] = self.data
            self.data = grown
        self.data[self.k] = key
        self.k += 1


class MeasureSet:
    """Deduplicated finite collection of same-dimension measures.

    No two members are equal under canonical-atom comparison at the
    construction tolerance (``SET_DEDUP_TOL`` by default).
    """

    __slots__ = ("dim", "members")

    def __init__(self, dim: int, members: tuple[WeightedPointMeasure, ...]):
        self.dim = dim
        self.members = members

    @classmethod
    def from_measures(cls, measures: Iterable[WeightedPointMeasure],
                      tol: float = SET_DEDUP_TOL) -> "MeasureSet":
        members: list[WeightedPointMeasure] = []
        buckets: dict[int, _Bucket] = {}
        exact: set[bytes] = set()
        dim = None
        for mu in measures:
            if dim is None:
                dim = mu.dim
            elif mu.dim != dim:
                raise ValueError("all members of a measure set must share a dimension")
            raw = mu._key.tobytes()
            if raw in exact:
                continue
            bucket = buckets.get(mu.atom_count)
            if bucket is None:
                bucket = _Bucket(mu._key.shape)
                buckets[mu.atom_count] = bucket
            if bucket.matches(mu._key, tol):
                continue
            exact.add(raw)
            bucket.add(mu._key)
            members.append(mu)
        if dim is None:
            raise ValueError("a measure set needs at least one measure")
        return cls(dim, tuple(members))

    def contains(self, mu: WeightedPointMeasure, tol: float = SET_DEDUP_TOL) -> bool:
        return any(measure_equal(mu, member, tol) for member in self.members
                   if member.atom_count == mu.atom_count)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self) -> str:
        return f"MeasureSet(dim={self.dim}, size={len(self.members)})"


def measure_sets_equal(x: MeasureSet, y: MeasureSet, tol: float = SET_DEDUP_TOL) -> bool:
    if len(x) != len(y):
        return False
    return all(y.contains(m, tol) for m in x) and all(x.contains(m, tol) for m in y)


def _point_distances(a: np.ndarray, b: np.ndarray, metric: str) -> np.ndarray:
    diff = a[:, None, :] - b[None, :, :]
    if metric == "euclidean":
        return np.sqrt((diff * diff).sum(axis=-1))
    if metric == "chebyshev":
        return np.abs(diff).max(axis=-1)
    raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")


def _check_pair(mu: WeightedPointMeasure, nu: WeightedPointMeasure) -> None:
    if mu.dim != nu.dim:
        raise ValueError(f"dimension mismatch: {mu.dim} vs {nu.dim}")


def lp_feasible(mu: WeightedPointMeasure, nu: WeightedPointMeasure, eps: float,
                metric: str = "euclidean") -> bool:
    """Whether ``eps`` is feasible for the Levy-Prokhorov inequalities.

    Decided through the coupling characterization: feasible iff a coupling
    puts mass >= 1 - eps on atom pairs at distance <= eps.
    """
    _check_pair(mu, nu)
    eps = float(eps)
    if eps < 0.0:
        raise ValueError("eps must be nonnegative")
    if eps >= 1.0:
        return True
    dist = _point_distances(mu.points, nu.points, metric)
    flow = bipartite_max_flow(mu.weights, nu.weights, dist <= eps)
    return flow >= 1.0 - eps - MASS_SLACK


def lp_distance(mu: WeightedPointMeasure, nu: WeightedPointMeasure,
                metric: str = "euclidean") -> float:
    """Exact Levy-Prokhorov distance between two discrete measures.

    The max coupling mass F(eps) is constant between consecutive pairwise
    support distances.  On the interval starting at breakpoint d_t the least
    feasible eps is max(d_t, 1 - F(d_t)); the first term is nondecreasing
    and the second nonincreasing in t, so the minimum over intervals sits at
    their crossing and a binary search over breakpoints finds it exactly.

    Measures equal within ``SET_DEDUP_TOL`` are at distance exactly 0, which
    keeps distances between a matrix and its relabelings identically zero.
    """
    _check_pair(mu, nu)
    if measure_equal(mu, nu, SET_DEDUP_TOL):
        return 0.0
    # Canonical orientation so the float result is exactly symmetric.
    if (nu.atom_count, nu._key.tobytes()) < (mu.atom_count, mu._key.tobytes()):
        mu, nu = nu, mu
    dist = _point_distances(mu.points, nu.points, metric)
    bp = np.unique(np.concatenate(([0.0], dist[dist <= 1.0].ravel())))

    flows: dict[int, float] = {}

    def flow_at(t: int) -> float:
        if t not in flows:
            flows[t] = bipartite_max_flow(mu.weights, nu.weights, dist <= bp[t])
        return flows[t]

    def candidate(t: int) -> float:
        return max(float(bp[t]), 1.0 - flow_at(t))

    hi = len(bp) - 1
    if bp[hi] < 1.0 - flow_at(hi):
        # No crossing below the largest kept breakpoint; the candidate
        # sequence is nonincreasing throughout.
        return float(min(candidate(hi), 1.0))
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if bp[mid] >= 1.0 - flow_at(mid):
            hi = mid
        else:
            lo = mid + 1
    result = candidate(lo)
    if lo > 0:
        result = min(result, candidate(lo - 1))
    return float(min(result, 1.0))


def _combined_support(mu: WeightedPointMeasure, nu: WeightedPointMeasure):
    points: list[np.ndarray] = []

    def index_of(p: np.ndarray) -> int:
        for idx, q in enumerate(points):
            if np.all(np.abs(p - q) <= ATOM_MERGE_TOL):
                return idx
        points.append(p)
        return len(points) - 1

    idx_mu = [index_of(p) for p in mu.points]
    idx_nu = [index_of(p) for p in nu.points]
    w1 = np.zeros(len(points))
    w2 = np.zeros(len(points))
    for i, k in enumerate(idx_mu):
        w1[k] += mu.weights[i]
    for j, k in enumerate(idx_nu):
        w2[k] += nu.weights[j]
    return np.array(points), w1, w2


def lp_oracle(mu: WeightedPointMeasure, nu: WeightedPointMeasure,
              metric: str = "euclidean") -> float:
    """Direct-definition Levy-Prokhorov distance by subset enumeration.

    For testing only.  Candidate eps values are all pairwise support
    distances together with all values 1 - (s1 + s2) where s1, s2 range over
    subset sums of the two weight lists; the least candidate for which both
    defining inequalities hold over every union of support atoms is
    returned.  Requires at most 16 distinct support points in total.
    """
    _check_pair(mu, nu)
    points, w1, w2 = _combined_support(mu, nu)
    k_pts = len(points)
    if k_pts > _ORACLE_MAX_POINTS:
        raise ValueError(
            f"combined support has {k_pts} points; subset enumeration is "
            f"limited to {_ORACLE_MAX_POINTS}")

    point_dist = _point_distances(points, points, metric)
    n_masks = 1 << k_pts
    masks = np.arange(n_masks)
    eta1 = np.zeros(n_masks)
    eta2 = np.zeros(n_masks)
    for k in range(k_pts):
        sel = (masks >> k) & 1 == 1
        eta1[sel] += w1[k]
        eta2[sel] += w2[k]

    sums1 = np.unique(eta1)
    sums2 = np.unique(eta2)
    cand = np.concatenate([point_dist.ravel(),
                           (1.0 - np.add.outer(sums1, sums2)).ravel()])
    cand = np.unique(cand[(cand >= 0.0) & (cand <= 1.0)])
    if cand[-1] != 1.0:
        cand = np.append(cand, 1.0)

    def feasible(eps: float) -> bool:
        neighborhoods = np.zeros(k_pts, dtype=np.int64)
        within = point_dist <= eps
        for k in range(k_pts):
            neighborhoods[k] = int(np.sum(within[k].astype(np.int64) << masks[:k_pts]))
        enlarged = np.zeros(n_masks, dtype=np.int64)
        for k in range(k_pts):
            enlarged[(masks >> k) & 1 == 1] |= neighborhoods[k]
        bound = eps + MASS_SLACK
        return bool(np.all(eta1 <= eta2[enlarged] + bound)
                    and np.all(eta2 <= eta1[enlarged] + bound))

    lo, hi = 0, len(cand) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(float(cand[mid])):
            hi = mid
        else:
            lo = mid + 1
    return float(cand[lo])


def hausdorff_distance(x: MeasureSet, y: MeasureSet, metric: str = "euclidean") -> float:
    """Hausdorff distance between finite measure sets under ``lp_distance``.

    Exact max of the two directed sup-inf values.  The inner minimum search
    is pruned: candidates are visited in order of proximity of weighted atom
    means, and the scan stops once the running minimum cannot raise the
    directed maximum.
    """
    if len(x) == 0 or len(y) == 0:
        raise ValueError("Hausdorff distance needs nonempty measure sets")
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")

    means_x = np.stack([m.mean for m in x.members])
    means_y = np.stack([m.mean for m in y.members])
    memo: dict[tuple[int, int], float] = {}

    def dist(i: int, j: int) -> float:
        key = (i, j)
        if key not in memo:
            memo[key] = lp_distance(x.members[i], y.members[j], metric)
        return memo[key]

    def directed(members_a, means_a, means_b, lookup) -> float:
        cmax = 0.0
        for i in range(len(members_a)):
            proximity = np.linalg.norm(means_b - means_a[i], axis=1)
            best = np.inf
            for j in np.argsort(proximity, kind="stable"):
                d = lookup(i, int(j))
                if d < best:
                    best = d
                    if best <= cmax:
                        break
            if best > cmax:
                cmax = best
        return cmax

    forward = directed(x.members, means_x, means_y, dist)
    backward = directed(y.members, means_y, means_x, lambda i, j: dist(j, i))
    return max(forward, backward)


def pushforward_distance_bound(x_values: Sequence, y_values: Sequence,
                               weights: Sequence) -> float:
    """Upper bound on the LP distance between laws of coupled vectors.

    For two R^k-valued discrete random vectors defined on the same weighted
    index space, the Levy-Prokhorov distance of their laws is at most
    tau^(1/2) * k^(3/4), where tau is the largest coordinatewise weighted
    mean absolute difference.
    """
    xs = np.asarray(x_values, dtype=float)
    ys = np.asarray(y_values, dtype=float)
    if xs.ndim == 1:
        xs = xs[:, None]
    if ys.ndim == 1:
        ys = ys[:, None]
    w = np.asarray(weights, dtype=float).ravel()
    if xs.shape != ys.shape or xs.shape[0] != w.shape[0]:
        raise ValueError("value arrays and weights must have matching lengths")
    tau = float(np.max(np.abs(xs - ys).T @ w))
    k = xs.shape[1]
    return float(np.sqrt(tau) * k ** 0.75)
