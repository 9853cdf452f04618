"""Ideal projective measurements and a seeded Monte Carlo chain simulator.

The simulator is the independent oracle for the analytic formulas in
:mod:`tsvf_lab.tsvf`: it only ever applies the Born rule and Lüders
collapse, one event at a time, and post-selection is done by discarding
records.

Two execution paths exist. :func:`sample_outcome` / :func:`run_chain` follow
one trial; :func:`simulate` runs many trials at once on stacked state
vectors. Both draw ``u = uniform(seed, stream=trial, draw=event)`` and pick
the first outcome whose cumulative probability reaches ``u``, so they agree
trial by trial.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .hilbert import Observable, StateVector, as_matrix, is_projector_set, spectral_decompose
from .rng import RngStream, uniforms

PROB_CLAMP = 1e-12
PROB_SUM_TOL = 1e-9
_BATCH = 1 << 14


class ImpossibleOutcome(ValueError):
    pass


class EmptyPostSelection(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Outcome:
    label: str
    eigenvalue: float
    projector: np.ndarray


def format_eigenvalue(value: float) -> str:
    v = round(float(value), 9)
    if v == 0:
        return "0"
    if v == int(v):
        return f"{int(v):+d}"
    return f"{v:+.6g}"


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Labeled complete set of orthogonal projectors.

    Outcome order is fixed at construction; sampling walks the outcomes in
    this order.
    """

    label: str
    outcomes: tuple[Outcome, ...]

    def __post_init__(self):
        outcomes = tuple(
            Outcome(o.label, float(o.eigenvalue), np.array(as_matrix(o.projector), dtype=complex))
            for o in self.outcomes
        )
        labels = [o.label for o in outcomes]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate outcome labels in {self.label!r}: {labels}")
        if not is_projector_set([o.projector for o in outcomes]):
            raise ValueError(f"measurement {self.label!r} is not a complete orthogonal projector set")
        stack = np.array([o.projector for o in outcomes])
        stack.setflags(write=False)
        for o in outcomes:
            o.projector.setflags(write=False)
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "_stack", stack)

    @classmethod
    def from_observable(cls, obs, label: str = "", labels: Sequence[str] | None = None) -> "ProjectiveMeasurement":
        """Measure a Hermitian observable; outcomes ordered by ascending eigenvalue."""
        sf = spectral_decompose(obs)
        if labels is None:
            labels = [format_eigenvalue(v) for v in sf.eigenvalues]
        if len(labels) != len(sf.eigenvalues):
            raise ValueError(f"expected {len(sf.eigenvalues)} labels, got {len(labels)}")
        return cls(label, tuple(Outcome(lab, v, p) for lab, v, p in zip(labels, sf.eigenvalues, sf.projectors)))

    @classmethod
    def binary(cls, projector, label: str, yes: str, no: str) -> "ProjectiveMeasurement":
        """Two-outcome measurement {P, 1-P} with eigenvalues 1 and 0."""
        p = as_matrix(projector)
        return cls(label, (Outcome(yes, 1.0, p), Outcome(no, 0.0, np.eye(p.shape[0]) - p)))

    @classmethod
    def from_states(cls, named_states: Iterable[tuple[str, StateVector]], label: str = "") -> "ProjectiveMeasurement":
        """Rank-1 measurement over an orthonormal basis; eigenvalues are the outcome indices."""
        return cls(label, tuple(Outcome(n, float(k), s.projector()) for k, (n, s) in enumerate(named_states)))

    @property
    def dim(self) -> int:
        return self._stack.shape[1]

    @property
    def labels(self) -> list[str]:
        return [o.label for o in self.outcomes]

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([o.eigenvalue for o in self.outcomes])

    @property
    def projector_stack(self) -> np.ndarray:
        return self._stack

    def index(self, label: str) -> int:
        for k, o in enumerate(self.outcomes):
            if o.label == label:
                return k
        raise KeyError(f"{self.label!r} has no outcome {label!r}; outcomes are {self.labels}")

    def projector(self, label: str) -> np.ndarray:
        return self.outcomes[self.index(label)].projector

    def observable(self) -> Observable:
        return Observable(np.einsum("k,kij->ij", self.eigenvalues, self._stack))


def _check_dim(state: StateVector, projector: np.ndarray) -> None:
    if projector.shape != (state.dim, state.dim):
        raise ValueError(f"dimension mismatch: state dim {state.dim}, operator shape {projector.shape}")


def born_prob(state: StateVector, projector) -> float:
    p = as_matrix(projector)
    _check_dim(state, p)
    prob = float(np.vdot(state.amplitudes, p @ state.amplitudes).real)
    if -PROB_CLAMP <= prob < 0.0:
        return 0.0
    if 1.0 < prob <= 1.0 + PROB_CLAMP:
        return 1.0
    return prob


def collapse(state: StateVector, projector) -> StateVector:
    p = as_matrix(projector)
    _check_dim(state, p)
    v = p @ state.amplitudes
    norm = np.linalg.norm(v)
    if norm ** 2 <= PROB_CLAMP:
        raise ImpossibleOutcome("impossible outcome: projection has zero probability")
    return StateVector(v / norm)


def _cdf(probs: np.ndarray) -> np.ndarray:
    total = probs.sum(axis=-1, keepdims=True)
    if np.any(np.abs(total - 1.0) > PROB_SUM_TOL):
        raise ValueError(f"outcome probabilities sum to {total.ravel()[:4]}, not 1")
    cdf = np.cumsum(probs / total, axis=-1)
    cdf[..., -1] = 1.0
    return cdf


def _pick(cdf: np.ndarray, u) -> np.ndarray:
    # first index with u <= cdf[k]; ties on a boundary go to the lower index
    return np.minimum((cdf < np.expand_dims(u, -1)).sum(axis=-1), cdf.shape[-1] - 1)


def sample_outcome(state: StateVector, m: ProjectiveMeasurement, rng: RngStream, draw: int = 0) -> tuple[str, StateVector]:
    if m.dim != state.dim:
        raise ValueError(f"dimension mismatch: state dim {state.dim}, measurement dim {m.dim}")
    amps = m.projector_stack @ state.amplitudes
    probs = np.einsum("ki,ki->k", amps.conj(), amps).real
    k = int(_pick(_cdf(probs), rng.uniform(draw)))
    return m.outcomes[k].label, StateVector(amps[k] / np.sqrt(probs[k]))


@dataclass(frozen=True, eq=False)
class MeasurementChain:
    initial: StateVector
    events: tuple[ProjectiveMeasurement, ...]

    def __post_init__(self):
        events = tuple(self.events)
        for m in events:
            if m.dim != self.initial.dim:
                raise ValueError(f"event {m.label!r} has dim {m.dim}, initial state has dim {self.initial.dim}")
        object.__setattr__(self, "events", events)


@dataclass(frozen=True)
class ChainRecord:
    trial_index: int
    outcomes: tuple[str, ...]


def run_chain(chain: MeasurementChain, rng: RngStream) -> ChainRecord:
    state = chain.initial
    labels = []
    for draw, m in enumerate(chain.events):
        label, state = sample_outcome(state, m, rng, draw)
        labels.append(label)
    return ChainRecord(rng.stream_index, tuple(labels))


@dataclass(frozen=True)
class FrequencyTable:
    frequencies: dict[str, float]
    counts: dict[str, int]
    retained: int
    total: int

    @property
    def yield_fraction(self) -> float:
        return self.retained / self.total if self.total else 0.0

    def __getitem__(self, label: str) -> float:
        return self.frequencies[label]


def _table(counts: dict[str, int], total: int) -> FrequencyTable:
    retained = sum(counts.values())
    if retained == 0:
        raise EmptyPostSelection("empty post-selected ensemble")
    return FrequencyTable({k: c / retained for k, c in counts.items()}, counts, retained, total)


def post_selected_frequencies(records: Sequence[ChainRecord], select_event: int, select_label: str,
                              target_event: int) -> FrequencyTable:
    """Relative frequencies of ``target_event`` outcomes among records whose
    ``select_event`` outcome equals ``select_label``."""
    if select_event == target_event:
        raise ValueError("select_event and target_event must differ")
    n_events = len(records[0].outcomes) if records else 0
    for i in (select_event, target_event):
        if not 0 <= i < n_events:
            raise IndexError(f"event index {i} out of range")
    counts = Counter(r.outcomes[target_event] for r in records if r.outcomes[select_event] == select_label)
    return _table(dict(sorted(counts.items())), len(records))


@dataclass(frozen=True, eq=False)
class ChainBatch:
    """Outcomes of ``trials`` independent runs of one chain, as an index array."""

    chain: MeasurementChain
    seed: int
    first_trial: int
    outcome_index: np.ndarray = field(repr=False)  # shape (trials, n_events)

    @property
    def trials(self) -> int:
        return self.outcome_index.shape[0]

    def labels(self, event: int) -> np.ndarray:
        return np.array(self.chain.events[event].labels, dtype=object)[self.outcome_index[:, event]]

    def values(self, event: int) -> np.ndarray:
        return self.chain.events[event].eigenvalues[self.outcome_index[:, event]]

    def records(self) -> list[ChainRecord]:
        names = [m.labels for m in self.chain.events]
        return [
            ChainRecord(self.first_trial + i, tuple(names[e][k] for e, k in enumerate(row)))
            for i, row in enumerate(self.outcome_index.tolist())
        ]

    def mask(self, event: int, label: str) -> np.ndarray:
        return self.outcome_index[:, event] == self.chain.events[event].index(label)

    def frequencies(self, event: int, where: np.ndarray | None = None) -> FrequencyTable:
        idx = self.outcome_index[:, event] if where is None else self.outcome_index[where, event]
        m = self.chain.events[event]
        counts = np.bincount(idx, minlength=len(m.outcomes))
        return _table({lab: int(c) for lab, c in zip(m.labels, counts)}, self.trials)

    def post_selected(self, select_event: int, select_label: str, target_event: int) -> FrequencyTable:
        if select_event == target_event:
            raise ValueError("select_event and target_event must differ")
        return self.frequencies(target_event, self.mask(select_event, select_label))


def simulate(chain: MeasurementChain, trials: int, seed: int, first_trial: int = 0) -> ChainBatch:
    """Run ``trials`` trials; trial ``i`` uses stream ``first_trial + i``."""
    n_events = len(chain.events)
    dtype = np.int16 if max((len(m.outcomes) for m in chain.events), default=1) < 2 ** 15 else np.int64
    out = np.empty((trials, n_events), dtype=dtype)
    for start in range(0, trials, _BATCH):
        stop = min(start + _BATCH, trials)
        streams = np.arange(first_trial + start, first_trial + stop, dtype=np.uint64)
        states = np.broadcast_to(chain.initial.amplitudes, (stop - start, chain.initial.dim))
        rows = np.arange(stop - start)
        for e, m in enumerate(chain.events):
            amps = np.einsum("kij,nj->nki", m.projector_stack, states)
            probs = np.einsum("nki,nki->nk", amps.conj(), amps).real
            k = _pick(_cdf(probs), uniforms(seed, streams, e))
            states = amps[rows, k] / np.sqrt(probs[rows, k])[:, None]
            out[start:stop, e] = k
    return ChainBatch(chain, seed, first_trial, out)
