import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from tsvf_lab.hilbert import SIGMA_X, SIGMA_Z, UP, UP_X, DOWN, StateVector, random_state
from tsvf_lab.tsvf import TwoStateVector, UnreachablePostSelection
from tsvf_lab.weakpointer import (PointerModel, is_converging, pointer_distribution, pointer_mean,
                                  weak_convergence_report)


def three_box():
    return TwoStateVector(StateVector.from_amplitudes([1, 1, 1]), StateVector.from_amplitudes([1, 1, -1]))


def box(k):
    p = np.zeros((3, 3))
    p[k, k] = 1
    return p


def three_box_c_mean_over_g(g, width):
    """Closed form: Phi = (1/3)[2 phi0(q) - phi0(q - g)] for P_C.

    With overlap integral <phi0(q)|phi0(q-g)> = exp(-x), x = g^2 / (8 width^2):
    norm = (5 - 4 e^-x) / 9, first moment = g (1 - 2 e^-x) / 9.
    """
    e = math.exp(-g * g / (8 * width * width))
    return (1 - 2 * e) / (5 - 4 * e)


def test_strong_measurement_of_eigenstate():
    g = 20.0
    dist = pointer_distribution(TwoStateVector(UP, UP), SIGMA_Z, PointerModel(g))
    assert abs(pointer_mean(dist) - g) <= 1e-6 * g
    assert dist.grid[np.argmax(dist.density)] == pytest.approx(g, abs=0.02)
    assert np.trapezoid(dist.density, dist.grid) == pytest.approx(1, abs=1e-6)


@pytest.mark.parametrize("g", [0.01, 0.1, 1.0])
def test_symmetric_amplitudes_give_zero_mean(g):
    dist = pointer_distribution(TwoStateVector(UP, UP), SIGMA_X, PointerModel(g))
    assert abs(pointer_mean(dist)) < 1e-9


@pytest.mark.parametrize("g,width", [(0.01, 1.0), (0.1, 1.0), (0.5, 2.0), (2.0, 1.0)])
def test_three_box_pc_closed_form(g, width):
    mean = pointer_mean(pointer_distribution(three_box(), box(2), PointerModel(g, width)))
    assert mean / g == pytest.approx(three_box_c_mean_over_g(g, width), abs=1e-9)


def test_three_box_weak_limits():
    pm = PointerModel(0.01)
    assert pointer_mean(pointer_distribution(three_box(), box(2), pm)) / 0.01 == pytest.approx(-1, abs=1e-2)
    assert pointer_mean(pointer_distribution(three_box(), box(0), pm)) / 0.01 == pytest.approx(1, abs=1e-2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(2, 4), st.floats(0.01, 3.0))
def test_identity_retained_norm(seed, dim, g):
    rng = np.random.default_rng(seed)
    tsv = TwoStateVector(random_state(dim, rng), random_state(dim, rng))
    dist = pointer_distribution(tsv, np.eye(dim), PointerModel(g))
    assert dist.retained_norm == pytest.approx(abs(tsv.overlap) ** 2, abs=1e-9)


@pytest.mark.parametrize("g", [0.05, 0.5, 3.0])
def test_grid_refinement_stable(g):
    coarse = pointer_mean(pointer_distribution(three_box(), box(2), PointerModel(g)))
    fine = pointer_mean(pointer_distribution(three_box(), box(2), PointerModel(g, grid_step=1 / 100)))
    assert abs(coarse - fine) < 1e-8


def test_convergence_report_three_box():
    report = weak_convergence_report(three_box(), box(2))
    assert [g for g, _ in report] == pytest.approx([0.1, 0.05, 0.025, 0.0125])
    assert is_converging(report)
    assert report[-1][1] < 0.02
    # error is quadratic in g: each halving shrinks it roughly fourfold
    errs = [e for _, e in report]
    for a, b in zip(errs, errs[1:]):
        assert 3.5 < a / b < 4.5


def test_convergence_report_eigenstate_is_exact():
    for _, err in weak_convergence_report(TwoStateVector(UP, UP), SIGMA_Z):
        assert err < 1e-9


def test_convergence_report_spin():
    report = weak_convergence_report(TwoStateVector(UP, UP_X), SIGMA_Z)
    assert is_converging(report)


def test_is_converging_rejects_bad_sequences():
    assert not is_converging([(0.1, 0.01), (0.05, 0.02)])
    assert not is_converging([(0.1, 0.5), (0.05, 0.1)])


def test_pointer_model_validation():
    with pytest.raises(ValueError):
        PointerModel(0.1, width=0)
    with pytest.raises(ValueError):
        PointerModel(0.1, grid_step=-1)
    with pytest.raises(ValueError, match="grid_halfwidth"):
        pointer_distribution(TwoStateVector(UP, UP), SIGMA_Z, PointerModel(5.0, grid_halfwidth=6.0))


def test_unreachable_post_selection():
    with pytest.raises(UnreachablePostSelection, match="post-selection unreachable"):
        pointer_distribution(TwoStateVector(UP, DOWN), SIGMA_Z, PointerModel(0.1))
