import math

import pytest
from hypothesis import given, strategies as st

from absorbest import AbsorbanceChannel, DomainError, reparametrize_fisher

channels = st.builds(
    AbsorbanceChannel,
    a=st.floats(0.0, 10.0),
    length=st.floats(0.0, 10.0),
    beta=st.floats(0.0, 5.0),
    gamma=st.floats(0.01, 1.0),
)


def test_lossless_channel():
    ch = AbsorbanceChannel(a=0.0, length=5.0, beta=0.0, gamma=1.0)
    t = ch.transmissions()
    assert (t.sample, t.instrumental, t.total) == (1.0, 1.0, 1.0)


def test_facet_only_loss():
    # gamma = sqrt(0.38) = 0.62-ish facet transmission squares to 0.3844.
    ch = AbsorbanceChannel(a=1.0, length=0.0, beta=0.0, gamma=0.62)
    t = ch.transmissions()
    assert t.sample == 1.0
    assert t.instrumental == pytest.approx(0.3844, abs=1e-12)
    assert t.total == pytest.approx(0.3844, abs=1e-12)


def test_unit_absorbance():
    ch = AbsorbanceChannel(a=1.0, length=1.0)
    t = ch.transmissions()
    assert t.sample == pytest.approx(math.exp(-1.0), rel=1e-15)
    assert t.instrumental == 1.0
    assert t.total == pytest.approx(math.exp(-1.0), rel=1e-15)


@given(channels)
def test_transmissions_are_fractions(ch):
    t = ch.transmissions()
    for value in (t.sample, t.instrumental, t.total):
        assert 0.0 < value <= 1.0
    assert t.total <= t.sample + 1e-15
    assert t.total <= t.instrumental + 1e-15


@given(st.floats(0.0, 5.0), st.floats(0.01, 5.0), st.floats(0.01, 1.0))
def test_path_additivity(a, length, gamma):
    # Halving the length and squaring composes back, up to the facet factor
    # that a physical split would double-count.
    full = AbsorbanceChannel(a, length, 0.0, gamma)
    half = AbsorbanceChannel(a, length / 2.0, 0.0, gamma)
    assert full.total_transmission == pytest.approx(
        half.total_transmission**2 / gamma**2, rel=1e-9
    )


@pytest.mark.parametrize(
    "f_eta, a, L, expected",
    [
        (1.0, 0.0, 1.0, 1.0),
        (1.0, 1.0, 1.0, math.exp(-2.0)),
        (2.0, 0.5, 2.0, 4.0 * math.exp(-2.0) * 2.0),
    ],
)
def test_reparametrize_values(f_eta, a, L, expected):
    assert reparametrize_fisher(f_eta, a, L) == pytest.approx(expected, rel=1e-12)


@given(st.floats(0.0, 4.0), st.floats(0.01, 4.0), st.floats(0.1, 3.0))
def test_reparametrize_matches_finite_difference(a, L, f_eta):
    # Jacobian (d eta / d a)^2 by central differences on exp(-a L).
    h = 1e-6 * max(a, 1.0)
    deta_da = (math.exp(-(a + h) * L) - math.exp(-(a - h) * L)) / (2.0 * h)
    expected = deta_da**2 * f_eta
    assert reparametrize_fisher(f_eta, a, L) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(a=-0.1, length=1.0),
        dict(a=1.0, length=-1.0),
        dict(a=1.0, length=1.0, beta=-0.5),
        dict(a=1.0, length=1.0, gamma=0.0),
        dict(a=1.0, length=1.0, gamma=1.5),
        dict(a=math.nan, length=1.0),
    ],
)
def test_invalid_channels_rejected(kwargs):
    with pytest.raises(DomainError):
        AbsorbanceChannel(**kwargs)


def test_reparametrize_rejects_negative_inputs():
    with pytest.raises(DomainError):
        reparametrize_fisher(-1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        reparametrize_fisher(1.0, 1.0, -1.0)
