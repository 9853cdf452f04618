"""Random-instance property suites.

Each suite draws its instances from ``numpy.random.default_rng(seed)`` and
reports the worst deviation seen against a fixed tolerance. The analytic
side is always looked up through the :mod:`tsvf` module at call time, so a
patched formula is what gets tested.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tsvf
from .hilbert import random_degenerate_hermitian, random_hermitian, random_state
from .measurement import MeasurementChain, ProjectiveMeasurement, simulate
from .scenarios import binomial_tolerance, derive_seed


@dataclass(frozen=True)
class SuiteResult:
    name: str
    instances: int
    worst: float  # worst deviation, or worst deviation / tolerance for Monte Carlo suites
    tolerance: float
    passed: bool


def _random_measurement(dim: int, rng: np.random.Generator, label: str = "m") -> ProjectiveMeasurement:
    levels = int(rng.integers(2, dim + 1))
    return ProjectiveMeasurement.from_observable(random_degenerate_hermitian(dim, levels, rng), label)


def _random_tsv(dim: int, rng: np.random.Generator) -> tsvf.TwoStateVector:
    return tsvf.TwoStateVector(random_state(dim, rng), random_state(dim, rng))


def oracle_equivalence(instances: int = 50, trials: int = 100_000, seed: int = 42, sigma: float = 4.0,
                       max_dim: int = 4) -> SuiteResult:
    """Two-sided probabilities against post-selected Monte Carlo frequencies.

    Even instances post-select on a rank-1 projector (``abl_table``), odd
    instances of dim >= 3 on a random rank-2 subspace (``abl_general``).
    ``worst`` is the largest ``|estimate - analytic| / tolerance``.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    done = 0
    while done < instances:
        dim = int(rng.integers(2, max_dim + 1))
        pre = random_state(dim, rng)
        m = _random_measurement(dim, rng)
        if done % 2 == 1 and dim >= 3:
            q, _ = np.linalg.qr(rng.normal(size=(dim, 2)) + 1j * rng.normal(size=(dim, 2)))
            p2 = q @ q.conj().T
            expected = tsvf.abl_general(pre, m, p2)
        else:
            post = random_state(dim, rng)
            p2 = post.projector()
            expected = tsvf.abl_table(tsvf.TwoStateVector(pre, post), m)
        final = ProjectiveMeasurement.binary(p2, "final", "post", "other")
        batch = simulate(MeasurementChain(pre, (m, final)), trials, derive_seed(seed, done))
        kept = batch.mask(1, "post")
        if kept.sum() < 0.02 * trials:
            continue  # too few survivors for a meaningful comparison; draw another instance
        table = batch.frequencies(0, kept)
        for label, p in expected.items():
            tol = binomial_tolerance(p, table.retained, sigma)
            worst = max(worst, abs(table.frequencies[label] - p) / tol)
        done += 1
    return SuiteResult("oracle equivalence", instances, worst, 1.0, worst <= 1.0)


def decomposition_identity(instances: int = 100, seed: int = 42, max_dim: int = 4, tol: float = 1e-10) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        dim = int(rng.integers(2, max_dim + 1))
        pre = random_state(dim, rng)
        m_mid, m_final = _random_measurement(dim, rng, "mid"), _random_measurement(dim, rng, "final")
        for label in m_mid.labels:
            lhs, rhs = tsvf.decomposition_check(pre, m_mid, m_final, label)
            worst = max(worst, abs(lhs - rhs))
    return SuiteResult("decomposition identity", instances, worst, tol, worst <= tol)


def abl_normalization(instances: int = 50, seed: int = 42, max_dim: int = 4, tol: float = 1e-12) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        dim = int(rng.integers(2, max_dim + 1))
        table = tsvf.abl_table(_random_tsv(dim, rng), _random_measurement(dim, rng))
        worst = max(worst, abs(sum(table.values()) - 1.0))
    return SuiteResult("two-sided probabilities sum to one", instances, worst, tol, worst <= tol)


def swap_symmetry(instances: int = 50, seed: int = 42, max_dim: int = 4, tol: float = 1e-12) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        dim = int(rng.integers(2, max_dim + 1))
        tsv = _random_tsv(dim, rng)
        m = _random_measurement(dim, rng)
        fwd, rev = tsvf.abl_table(tsv, m), tsvf.abl_table(tsvf.time_reverse(tsv), m)
        worst = max(worst, max(abs(fwd[k] - rev[k]) for k in fwd))
    return SuiteResult("two-sided probabilities invariant under time reversal", instances, worst, tol, worst <= tol)


def weak_value_conjugation(instances: int = 50, seed: int = 42, max_dim: int = 4, tol: float = 1e-12) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        dim = int(rng.integers(2, max_dim + 1))
        tsv = _random_tsv(dim, rng)
        a = random_hermitian(dim, rng)
        fwd = tsvf.weak_value(tsv, a)
        rev = tsvf.weak_value(tsvf.time_reverse(tsv), a)
        worst = max(worst, abs(rev - fwd.conjugate()))
    return SuiteResult("weak value conjugated under time reversal", instances, worst, tol, worst <= tol)


def weak_value_linearity(instances: int = 50, seed: int = 42, max_dim: int = 4, tol: float = 1e-12) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    done = 0
    while done < instances:
        dim = int(rng.integers(2, max_dim + 1))
        tsv = _random_tsv(dim, rng)
        a, b = random_hermitian(dim, rng), random_hermitian(dim, rng)
        if np.linalg.norm(a.matrix @ b.matrix - b.matrix @ a.matrix) < 1e-3:
            continue
        lhs = tsvf.weak_value(tsv, a + b)
        rhs = tsvf.weak_value(tsv, a) + tsvf.weak_value(tsv, b)
        worst = max(worst, abs(lhs - rhs))
        done += 1
    return SuiteResult("weak value linear for non-commuting pairs", instances, worst, tol, worst <= tol)


def run_selftest(seed: int = 42, trials: int = 20_000) -> list[SuiteResult]:
    return [
        oracle_equivalence(seed=seed, trials=trials),
        decomposition_identity(seed=seed),
        abl_normalization(seed=seed),
        swap_symmetry(seed=seed),
        weak_value_conjugation(seed=seed),
        weak_value_linearity(seed=seed),
    ]
