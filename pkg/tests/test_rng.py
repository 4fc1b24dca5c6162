"""Determinism and splitting behaviour of the random streams."""

import numpy as np
import pytest

from logshift import DomainError, RngStream


def test_same_seed_same_draws():
    a = RngStream(42).uniform(1000)
    b = RngStream(42).uniform(1000)
    assert np.array_equal(a, b)


def test_substream_reconstructible_from_path():
    a = RngStream(7).substream(3).substream(1).uniform(100)
    b = RngStream(7, path=(3, 1)).uniform(100)
    assert np.array_equal(a, b)


def test_substreams_differ_from_parent_and_each_other():
    root = RngStream(0)
    draws = {tuple(np.round(root.substream(i).uniform(8), 12)) for i in range(20)}
    assert len(draws) == 20


def test_uniform_open_stays_inside_interval():
    u = RngStream(123).uniform_open(200_000)
    assert u.min() > 0.0
    assert u.max() < 1.0


def test_substreams_look_independent():
    a = RngStream(5).substream(0).uniform(50_000)
    b = RngStream(5).substream(1).uniform(50_000)
    corr = np.corrcoef(a, b)[0, 1]
    assert abs(corr) < 0.02


def test_permutation_deterministic():
    assert np.array_equal(RngStream(9).permutation(50), RngStream(9).permutation(50))


def test_seed_validation():
    with pytest.raises(DomainError):
        RngStream(-1)
    with pytest.raises(DomainError):
        RngStream(2**64)
    with pytest.raises(DomainError):
        RngStream(1).substream(-2)
