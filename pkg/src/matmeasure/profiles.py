"""Sampled test-vector profiles and the profile distances built on them.

The k-profile of a measured matrix collects the joint laws of
(Z_1, A Z_1, ..., Z_k, A Z_k) over test vectors with entries in [-1, 1].
Two matrices are compared through the Hausdorff distance between their
profiles: the 1-profile distance uses k = 1 alone, the action-convergence
distance sums Hausdorff terms over k with geometric weights 2^-k, so
truncating at kmax leaves a tail of at most 2^-kmax.

Profiles over the full test-vector space are infinite; this module works
with two finite stand-ins.  Sampled mode draws a deterministic canonical
family of test vectors (the distance is then an estimate with uncontrolled
error sign, so count and seed travel with every result).  Exact-orbit mode
closes a small base family under all index permutations, which makes the
distance between a matrix and any relabeling of it exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np
from scipy.stats import qmc

from .matrices import MeasuredMatrix, orbit_measures
from .measures import MeasureSet, WeightedPointMeasure, hausdorff_distance

MODES = ("sampled", "exact_orbit")
HALTON_BLOCK = 32
EXACT_ORBIT_LIMIT = 7


@dataclass(frozen=True)
class SamplingConfig:
    """Reproducibility block carried alongside every profile distance."""

    count: int = 500
    seed: int = 42
    metric: str = "euclidean"
    mode: str = "sampled"
    kmax: int = 3

    def to_text(self) -> str:
        return (f"count {self.count}\nseed {self.seed}\nkmax {self.kmax}\n"
                f"metric {self.metric}\nmode {self.mode}\n")

    @classmethod
    def from_text(cls, text: str) -> "SamplingConfig":
        fields: dict[str, str] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            key, _, value = line.partition(" ")
            fields[key] = value.strip()
        return cls(count=int(fields["count"]), seed=int(fields["seed"]),
                   kmax=int(fields["kmax"]), metric=fields["metric"],
                   mode=fields["mode"])


@dataclass
class ProfileSample:
    """A finite stand-in for a k-profile.

    ``base_vectors`` holds the test-vector tuples (k vectors each, entries in
    [-1, 1]); ``measures`` the deduplicated laws on R^(2k).  In exact-orbit
    mode the measures are closed under index permutations and ``seed`` is
    None (the base family is supplied by the caller).
    """

    k: int
    base_vectors: list[tuple[np.ndarray, ...]]
    measures: MeasureSet
    seed: int | None
    mode: str


def canonical_vector_stream(n: int, seed: int) -> Iterator[np.ndarray]:
    """Deterministic test-vector stream in [-1, 1]^n.

    Order: the all-ones vector (row-sum witness), the canonical basis
    vectors, a fixed low-discrepancy block, then seeded uniform draws.
    """
    yield np.ones(n)
    for i in range(n):
        basis = np.zeros(n)
        basis[i] = 1.0
        yield basis
    sampler = qmc.Halton(d=n, scramble=False)
    for row in sampler.random(HALTON_BLOCK):
        yield 2.0 * row - 1.0
    rng = np.random.default_rng(seed)
    while True:
        yield rng.uniform(-1.0, 1.0, n)


def tuple_law(matrix: MeasuredMatrix, vectors: Sequence[np.ndarray]) -> WeightedPointMeasure:
    """Law of (Z_1, A Z_1, ..., Z_k, A Z_k) under the index weights."""
    columns = []
    for z in vectors:
        z = np.asarray(z, dtype=float).ravel()
        columns.append(z)
        columns.append(matrix.entries @ z)
    return WeightedPointMeasure(np.column_stack(columns), matrix.p)


def sample_profile(matrix: MeasuredMatrix, k: int, count: int, seed: int) -> ProfileSample:
    """Sampled k-profile: ``count`` tuples off the canonical stream.

    Deterministic given (n, k, count, seed).  Tuples are consecutive groups
    of k stream vectors, so the k = 1 family is the stream prefix itself.
    """
    if k < 1:
        raise ValueError("profile order k must be at least 1")
    if count < 1:
        raise ValueError("count must be at least 1")
    stream = canonical_vector_stream(matrix.n, seed)
    tuples = [tuple(next(stream) for _ in range(k)) for _ in range(count)]
    measures = MeasureSet.from_measures(tuple_law(matrix, t) for t in tuples)
    return ProfileSample(k, tuples, measures, seed, "sampled")


def orbit_base_family(n: int, seed: int) -> list[np.ndarray]:
    """Seeded base family for exact-orbit profiles.

    One vector with pairwise-distinct entries plus its n single-coordinate
    perturbations, all within [-1, 1]^n.  The perturbation is a fraction of
    the smallest entry gap so the perturbed vectors stay distinct-entry.
    """
    rng = np.random.default_rng(seed)
    if n == 1:
        return [rng.uniform(-0.9, 0.9, 1), rng.uniform(-0.9, 0.9, 1)]
    for _ in range(1000):
        v = rng.uniform(-0.9, 0.9, n)
        gaps = np.diff(np.sort(v))
        if gaps.min() > 0.05 / n:
            break
    else:
        raise RuntimeError("could not draw a well-separated base vector")
    delta = min(float(gaps.min()) / 8.0, 0.05)
    family = [v]
    for i in range(n):
        shifted = v.copy()
        shifted[i] += delta
        family.append(shifted)
    return family


def exact_orbit_profile(matrix: MeasuredMatrix,
                        base_vectors: Sequence[np.ndarray]) -> ProfileSample:
    """1-profile closed under index permutations, over a base family.

    Each base vector is replaced by its sorted-entry normalization before the
    orbit is expanded; the orbit only depends on the entry multiset, and the
    normalization makes relabeled matrices produce identical profiles.
    """
    if matrix.n > EXACT_ORBIT_LIMIT:
        raise ValueError(
            f"order {matrix.n} exceeds the exact-orbit limit {EXACT_ORBIT_LIMIT}")
    normalized = [np.sort(np.asarray(v, dtype=float).ravel()) for v in base_vectors]
    collected: list[WeightedPointMeasure] = []
    for v in normalized:
        if v.shape[0] != matrix.n:
            raise ValueError("base vector length must equal the matrix order")
        collected.extend(orbit_measures(matrix, v))
    measures = MeasureSet.from_measures(collected)
    return ProfileSample(1, [(v,) for v in normalized], measures, None, "exact_orbit")


def _one_profiles(ma: MeasuredMatrix, mb: MeasuredMatrix,
                  cfg: SamplingConfig) -> tuple[ProfileSample, ProfileSample]:
    if cfg.mode == "sampled":
        return (sample_profile(ma, 1, cfg.count, cfg.seed),
                sample_profile(mb, 1, cfg.count, cfg.seed))
    if cfg.mode == "exact_orbit":
        pa = exact_orbit_profile(ma, orbit_base_family(ma.n, cfg.seed))
        pb = exact_orbit_profile(mb, orbit_base_family(mb.n, cfg.seed))
        return pa, pb
    raise ValueError(f"unknown mode {cfg.mode!r}; expected one of {MODES}")


def one_profile_distance(ma: MeasuredMatrix, mb: MeasuredMatrix,
                         cfg: SamplingConfig = SamplingConfig()) -> float:
    """Hausdorff distance between the two 1-profiles under ``cfg``.

    An estimate of the full 1-profile distance in sampled mode; exact on the
    chosen base family in exact-orbit mode.
    """
    pa, pb = _one_profiles(ma, mb, cfg)
    return hausdorff_distance(pa.measures, pb.measures, cfg.metric)


class ActionDistance(NamedTuple):
    value: float
    tail_bound: float


def action_distance(ma: MeasuredMatrix, mb: MeasuredMatrix, kmax: int | None = None,
                    cfg: SamplingConfig = SamplingConfig()) -> ActionDistance:
    """Truncated action-convergence distance over sampled k-profiles.

    Sum of 2^-k Hausdorff terms for k = 1..kmax; each dropped term is at most
    2^-k because the Hausdorff distance is bounded by 1, so the truncation
    tail is bounded by 2^-kmax.  The k = 1 term uses the same sample family
    as ``one_profile_distance`` under an equal cfg.
    """
    if kmax is None:
        kmax = cfg.kmax
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    if cfg.mode != "sampled":
        raise ValueError("action distance needs sampled mode; k-profiles above "
                         "k = 1 have no exact-orbit form")
    total = 0.0
    for k in range(1, kmax + 1):
        pa = sample_profile(ma, k, cfg.count, cfg.seed)
        pb = sample_profile(mb, k, cfg.count, cfg.seed)
        total += 2.0 ** -k * hausdorff_distance(pa.measures, pb.measures, cfg.metric)
    return ActionDistance(total, 2.0 ** -kmax)
