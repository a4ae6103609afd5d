import math

import pytest
from hypothesis import given, strategies as st

from lerchkit.identities import registry, sample_domain
from lerchkit.identities.catalog import FORCED_K, _rejection


def test_samples_are_deterministic():
    for ident in registry():
        a = sample_domain(ident.id, 6, seed=11)
        b = sample_domain(ident.id, 6, seed=11)
        assert [s.values for s in a] == [s.values for s in b]


def test_seed_changes_samples():
    a = sample_domain("THM-SS", 8, seed=1)
    b = sample_domain("THM-SS", 8, seed=2)
    assert [s.values for s in a] != [s.values for s in b]


def test_identities_use_independent_streams():
    a = sample_domain("DEG-SS", 4, seed=0)
    b = sample_domain("DEG-CC", 4, seed=0)
    assert [s.values["m"] for s in a] != [s.values["m"] for s in b]


def test_sample_keys_match_parameters():
    for ident in registry():
        names = {p.name for p in ident.params}
        for s in sample_domain(ident.id, 3, seed=0):
            assert set(s.values) == names


def test_theorem_samples():
    samples = sample_domain("THM-SS", 50, seed=0, n_range=(1, 4))
    assert [s.values["k"] for s in samples[: len(FORCED_K)]] == list(FORCED_K)
    assert any(isinstance(s.values["k"], complex) for s in samples)
    for s in samples:
        assert 0.05 <= s.values["m"].imag <= 0.5
        assert 1 <= s.values["n"] <= 4


def test_degenerate_samples_avoid_poles():
    for ident in ("DEG-SS", "DEG-CC", "DEG-SS1"):
        for s in sample_domain(ident, 100, seed=0):
            m = s.values["m"]
            assert isinstance(m, float)
            assert 1 <= s.values["n"] <= 6


def test_gamma_product_avoids_poles():
    for s in sample_domain("GP-SS", 200, seed=0):
        a = s.values["a"]
        assert 0.2 <= a <= 3.0
        assert min(abs(a - 1), abs(a - 2)) >= 1e-3


def test_functional_domain():
    for s in sample_domain("FE-9A", 100, seed=0):
        v = s.values
        assert abs(v["z"]) <= 0.9
        assert abs(v["s"]) <= 3
        assert 0.1 <= v["a"] <= 2


def test_parameterless_identity_has_one_sample():
    assert len(sample_domain("AP-SS", 25, seed=0)) == 1


@pytest.mark.parametrize("n_range", [(0, 3), (4, 2), (-1, 1)])
def test_bad_n_range(n_range):
    with pytest.raises(ValueError):
        sample_domain("DEG-SS", 3, seed=0, n_range=n_range)


def test_bad_count():
    with pytest.raises(ValueError):
        sample_domain("DEG-SS", 0, seed=0)


def test_unknown_identity():
    with pytest.raises(KeyError):
        sample_domain("NOPE", 3, seed=0)


def test_rejection_gives_up():
    with pytest.raises(ValueError):
        _rejection(lambda: None)
    assert _rejection(lambda: 5) == 5


@given(st.integers(0, 2**31), st.integers(1, 6))
def test_n_range_respected(seed, hi):
    for s in sample_domain("CP-SS", 5, seed=seed, n_range=(1, hi)):
        assert 1 <= s.values["n"] <= hi
        assert math.isfinite(s.values["m"]) and math.isfinite(s.values["r"])
