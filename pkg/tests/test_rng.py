import numpy as np
from hypothesis import given
import hypothesis.strategies as st

from tsvf_lab.rng import RngStream, hash64, to_unit, uniforms


@given(st.integers(0, 2 ** 64 - 1), st.integers(0, 2 ** 40), st.integers(0, 64))
def test_scalar_and_vector_paths_agree(seed, stream, draw):
    assert uniforms(seed, [stream], draw)[0] == RngStream(seed, stream).uniform(draw)


def test_pure_function_of_key():
    a = RngStream(42, 7)
    assert a.uniform(3) == RngStream(42, 7).uniform(3)
    assert a.uniform(3) != a.uniform(4)
    assert a.uniform(3) != RngStream(42, 8).uniform(3)
    assert a.uniform(3) != RngStream(43, 7).uniform(3)


def test_open_unit_interval():
    assert 0.0 < to_unit(0) < 1e-15
    assert 1 - 1e-15 < to_unit(2 ** 64 - 1) < 1.0
    u = uniforms(1, np.arange(10 ** 5), 0)
    assert u.min() > 0 and u.max() < 1


def test_uniformity_and_independence():
    n = 200_000
    u = uniforms(123, np.arange(n), 0)
    v = uniforms(123, np.arange(n), 1)
    counts, _ = np.histogram(u, bins=20, range=(0, 1))
    chi2 = (((counts - n / 20) ** 2) / (n / 20)).sum()
    assert chi2 < 45  # 19 dof, p ~ 1e-3
    assert abs(u.mean() - 0.5) < 4 * np.sqrt(1 / 12 / n)
    assert abs(np.corrcoef(u, v)[0, 1]) < 4 / np.sqrt(n)
    assert abs(np.corrcoef(u[:-1], u[1:])[0, 1]) < 4 / np.sqrt(n)


def test_negative_seed_wraps():
    assert RngStream(-1).seed == 2 ** 64 - 1
    assert hash64(2 ** 64 - 1, 0, 0) == hash64(-1 & (2 ** 64 - 1), 0, 0)
