"""Analytic quantities for pre- and post-selected systems.

All functions here are closed-form; none of them sample. Their Monte Carlo
counterparts live in :mod:`tsvf_lab.measurement`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import StateVector, as_matrix, inner
from .measurement import ProjectiveMeasurement, born_prob

ABL_DENOMINATOR_MIN = 1e-30
WEAK_OVERLAP_MIN = 1e-12


class UnreachablePostSelection(ValueError):
    pass


class UndefinedWeakValue(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TwoStateVector:
    """Post-selected bra and pre-selected ket describing the system at time t.

    ``pre`` is prepared at t1, ``post`` is found at t2 > t.
    """

    pre: StateVector
    post: StateVector

    def __post_init__(self):
        if self.pre.dim != self.post.dim:
            raise ValueError(f"pre and post dims differ: {self.pre.dim} vs {self.post.dim}")

    @property
    def dim(self) -> int:
        return self.pre.dim

    @property
    def overlap(self) -> complex:
        return inner(self.post, self.pre)


def time_reverse(tsv: TwoStateVector) -> TwoStateVector:
    return TwoStateVector(pre=tsv.post, post=tsv.pre)


def abl_amplitudes(tsv: TwoStateVector, m: ProjectiveMeasurement) -> np.ndarray:
    """``<post|P_i|pre>`` for every outcome, in the measurement's order."""
    if m.dim != tsv.dim:
        raise ValueError(f"dimension mismatch: tsv dim {tsv.dim}, measurement dim {m.dim}")
    return np.einsum("i,kij,j->k", tsv.post.amplitudes.conj(), m.projector_stack, tsv.pre.amplitudes)


def abl_table(tsv: TwoStateVector, m: ProjectiveMeasurement) -> dict[str, float]:
    weights = np.abs(abl_amplitudes(tsv, m)) ** 2
    total = weights.sum()
    if total <= ABL_DENOMINATOR_MIN:
        raise UnreachablePostSelection("post-selection unreachable through this measurement")
    return {label: float(w / total) for label, w in zip(m.labels, weights)}


def abl_prob(tsv: TwoStateVector, m: ProjectiveMeasurement, outcome: str) -> float:
    m.index(outcome)
    return abl_table(tsv, m)[outcome]


def abl_general(pre: StateVector, m: ProjectiveMeasurement, post_projector) -> dict[str, float]:
    """Conditional outcome probabilities when post-selecting on a subspace.

    ``Prob(a_i) = ||P2 P_i |pre>||^2 / sum_j ||P2 P_j |pre>||^2``; for a
    rank-1 ``P2 = |post><post|`` this is :func:`abl_table`.
    """
    p2 = as_matrix(post_projector)
    if p2.shape != (pre.dim, pre.dim) or m.dim != pre.dim:
        raise ValueError("dimension mismatch between pre state, measurement and post projector")
    vecs = np.einsum("ij,kjl,l->ki", p2, m.projector_stack, pre.amplitudes)
    weights = np.einsum("ki,ki->k", vecs.conj(), vecs).real
    total = weights.sum()
    if total <= ABL_DENOMINATOR_MIN:
        raise UnreachablePostSelection("post-selection unreachable through this measurement")
    return {label: float(w / total) for label, w in zip(m.labels, weights)}


def final_outcome_probs(pre: StateVector, m_mid: ProjectiveMeasurement, m_final: ProjectiveMeasurement) -> dict[str, float]:
    """Final-outcome probabilities given that the intermediate measurement was performed."""
    vecs = np.einsum("fij,kjl,l->fki", m_final.projector_stack, m_mid.projector_stack, pre.amplitudes)
    probs = np.einsum("fki,fki->f", vecs.conj(), vecs).real
    return {label: float(p) for label, p in zip(m_final.labels, probs)}


def decomposition_check(pre: StateVector, m_mid: ProjectiveMeasurement, m_final: ProjectiveMeasurement,
                        outcome: str) -> tuple[float, float]:
    """Return (Born probability of ``outcome``, sum_f Prob(f) Prob(outcome | f)).

    ``Prob(f)`` is computed with the intermediate measurement performed and
    ``Prob(outcome | f)`` by post-selecting on the final projector. Final
    outcomes of zero probability contribute nothing.
    """
    lhs = born_prob(pre, m_mid.projector(outcome))
    rhs = 0.0
    for f, p_f in final_outcome_probs(pre, m_mid, m_final).items():
        if p_f <= ABL_DENOMINATOR_MIN:
            continue
        rhs += p_f * abl_general(pre, m_mid, m_final.projector(f))[outcome]
    return lhs, rhs


def weak_value(tsv: TwoStateVector, obs) -> complex:
    """``<post|A|pre> / <post|pre>``."""
    a = as_matrix(obs)
    if a.shape != (tsv.dim, tsv.dim):
        raise ValueError(f"dimension mismatch: tsv dim {tsv.dim}, operator shape {a.shape}")
    overlap = tsv.overlap
    if abs(overlap) <= WEAK_OVERLAP_MIN:
        raise UndefinedWeakValue("weak value undefined at orthogonal post-selection")
    return complex(np.vdot(tsv.post.amplitudes, a @ tsv.pre.amplitudes) / overlap)


def certain_outcome(tsv: TwoStateVector, m: ProjectiveMeasurement, tol: float = 1e-12) -> str | None:
    """Label of the outcome with ABL probability 1 (within ``tol``), if any."""
    for label, p in abl_table(tsv, m).items():
        if abs(p - 1.0) <= tol:
            return label
    return None
