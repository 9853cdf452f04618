"""Gaussian pointer coupled to an observable by an impulsive ``g p A`` interaction.

After the interaction and post-selection the pointer wavefunction is

    Phi(q) = sum_i <post|P_i|pre> phi0(q - g a_i)

with ``phi0`` a real Gaussian of position standard deviation ``width``
centered at zero. Only the integrated coupling ``g`` enters, so no time
grid is needed. The pointer readout is the position mean, which tends to
``g * Re(A_w)`` as ``g / width -> 0``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import spectral_decompose
from .tsvf import TwoStateVector, UnreachablePostSelection, weak_value


@dataclass(frozen=True)
class PointerModel:
    coupling: float
    width: float = 1.0
    grid_step: float | None = None  # default width / 50
    grid_halfwidth: float | None = None  # default coupling * max|a_i| + 8 * width

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("pointer width must be positive")
        if self.grid_step is not None and not self.grid_step > 0:
            raise ValueError("grid_step must be positive")

    def with_coupling(self, coupling: float) -> "PointerModel":
        return PointerModel(coupling, self.width, self.grid_step, self.grid_halfwidth)

    def grid(self, max_abs_eigenvalue: float) -> np.ndarray:
        need = abs(self.coupling) * max_abs_eigenvalue + 8.0 * self.width
        half = need if self.grid_halfwidth is None else self.grid_halfwidth
        if half < need * (1 - 1e-12):
            raise ValueError(f"grid_halfwidth {half} is below g*max|a| + 8*width = {need}")
        step = self.width / 50 if self.grid_step is None else self.grid_step
        n = int(np.ceil(half / step))
        return np.arange(-n, n + 1) * step


@dataclass(frozen=True, eq=False)
class PointerDistribution:
    grid: np.ndarray
    density: np.ndarray
    retained_norm: float


def _gaussian_amplitude(q: np.ndarray, width: float) -> np.ndarray:
    return (2 * np.pi * width ** 2) ** -0.25 * np.exp(-q ** 2 / (4 * width ** 2))


def pointer_distribution(tsv: TwoStateVector, obs, pm: PointerModel) -> PointerDistribution:
    sf = spectral_decompose(obs)
    amps = np.einsum("i,kij,j->k", tsv.post.amplitudes.conj(), sf.projectors, tsv.pre.amplitudes)
    if np.all(np.abs(amps) ** 2 <= 1e-30):
        raise UnreachablePostSelection("post-selection unreachable")
    q = pm.grid(float(np.max(np.abs(sf.eigenvalues))))
    phi = np.zeros(q.shape, dtype=complex)
    for c, a in zip(amps, sf.eigenvalues):
        phi += c * _gaussian_amplitude(q - pm.coupling * a, pm.width)
    raw = np.abs(phi) ** 2
    norm = float(np.trapezoid(raw, q))
    return PointerDistribution(q, raw / norm, norm)


def pointer_mean(dist: PointerDistribution) -> float:
    return float(np.trapezoid(dist.grid * dist.density, dist.grid))


def weak_convergence_report(tsv: TwoStateVector, obs, pm_base: PointerModel | None = None,
                            halvings: int = 3) -> list[tuple[float, float]]:
    """``(g, |mean/g - Re(A_w)|)`` for ``g = g0, g0/2, ..., g0/2**halvings``.

    Defaults to ``g0 = 0.1 * width`` with unit width.
    """
    if pm_base is None:
        pm_base = PointerModel(coupling=0.1, width=1.0)
    target = weak_value(tsv, obs).real
    report = []
    g = pm_base.coupling
    for _ in range(halvings + 1):
        mean = pointer_mean(pointer_distribution(tsv, obs, pm_base.with_coupling(g)))
        report.append((g, abs(mean / g - target)))
        g /= 2
    return report


def is_converging(report: list[tuple[float, float]], target_scale: float = 1.0, slack: float = 1e-12) -> bool:
    """Errors non-increasing (up to ``slack``) and final error below 0.02 * max(1, scale)."""
    errors = [e for _, e in report]
    monotone = all(b <= a + slack for a, b in zip(errors, errors[1:]))
    return monotone and errors[-1] < 0.02 * max(1.0, abs(target_scale))
