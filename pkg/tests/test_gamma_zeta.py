from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from lerchkit.mpcore import DomainError, PrecisionContext
from lerchkit.specfun import (
    bernoulli,
    gamma,
    hurwitz_zeta,
    hurwitz_zeta_sderiv,
    log_gamma,
    polygamma,
)

from conftest import close

# Reference values frozen from mpmath at 70 digits.
GAMMA_REF = [
    (0.3, "2.99156898768759074464216067519604118377689910648847527572752", "0"),
    (2.5 + 3j, "-0.218118971081122897476741581494914867657306945446691563094968",
     "0.072034763407175033564849239495757034994414276891619798768988"),
    (-2.5, "-0.945308720482941881225689324448610764158693043265273135047364", "0"),
    (50.25, "1.61447647124124411759244377349357216884356649835587167693086e+63", "0"),
]
LOG_GAMMA_REF = [
    (-3.5 + 0.1j, "-1.35632020929685187334336914044656936616036037997937982908907",
     "-12.4274732641108713574116517548874308782826685418743894686979"),
    (100 + 50j, "347.053049933172473631303430409572215380293519756742797124811",
     "231.969701846462209760579764815490554223140883956848181210671"),
]
POLYGAMMA_REF = [
    (0, 0.25, "-4.22745353337626540808953014609668357736724443870824227165528", "0"),
    (1, 0.5 + 1j, "0.0367245519410145445607447454784424898427143577970883507906831",
     "-1.11706865782960012681188853987073651358418457311831021877535"),
    (2, 3.7, "-0.0953953087285540334827211089970800540599273590215606446474963", "0"),
    (4, 1 + 1j, "3.27950816904404931951127439155186212904118934260880492985301",
     "-2.58061205136196842642138307123449716470803048843315259055215"),
]
ZETA_REF = [
    (2, 0.5, "4.93480220054467930941724549993807556765684970362039531320667", "0"),
    (0.5 + 14j, 1, "0.0222411426099935892462131992039686263867862431949236324759365",
     "-0.103258123266450057902363095552573834507549030464100714717429"),
    (-1.5, 2.25, "-1.53765178156820623387916764462860093491947946353046131096925", "0"),
    (3 - 2j, 0.3 + 0.1j, "-16.1513275160958627932515537278851812004740946459737820799836",
     "2.29461569898046524368655540598408857171750660183072885053682"),
]
ZETA_SDERIV_REF = [
    (2, 0.5, "1.74808087962387976879059715226580244717293849961411923255979", "0"),
    (-1, 1, "-0.165421143700450929213919660242780642764036380335201783666522", "0"),
    (0.5 + 1j, 2, "0.558982477475463149657783829223505066417134033949354363524223",
     "-0.648808213692399450987449931765358250934321978345519533622916"),
]


def ref(mp, re, im):
    return mp.mpc(mp.mpf(re), mp.mpf(im))


@pytest.mark.parametrize("z, re, im", GAMMA_REF)
def test_gamma_reference(ctx, z, re, im):
    assert close(gamma(z, ctx), ref(ctx.mp, re, im), 50)


@pytest.mark.parametrize("z, re, im", LOG_GAMMA_REF)
def test_log_gamma_reference(ctx, z, re, im):
    assert close(log_gamma(z, ctx), ref(ctx.mp, re, im), 50)


@pytest.mark.parametrize("m, z, re, im", POLYGAMMA_REF)
def test_polygamma_reference(ctx, m, z, re, im):
    assert close(polygamma(m, z, ctx), ref(ctx.mp, re, im), 50)


@pytest.mark.parametrize("s, v, re, im", ZETA_REF)
def test_hurwitz_zeta_reference(ctx, s, v, re, im):
    assert close(hurwitz_zeta(s, v, ctx), ref(ctx.mp, re, im), 50)


@pytest.mark.parametrize("s, v, re, im", ZETA_SDERIV_REF)
def test_hurwitz_zeta_sderiv_reference(ctx, s, v, re, im):
    assert close(hurwitz_zeta_sderiv(s, v, ctx), ref(ctx.mp, re, im), 48)


def test_bernoulli_exact():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(30) == Fraction(8615841276005, 14322)


def test_log_gamma_examples(ctx):
    mp = ctx.mp
    assert abs(log_gamma(1, ctx)) < ctx.eps
    assert close(log_gamma(0.5, ctx), mp.log(mp.sqrt(mp.pi)), 50)
    assert close(log_gamma(5, ctx), mp.log(24), 50)


def test_polygamma_examples(ctx):
    mp = ctx.mp
    assert close(polygamma(0, 1, ctx), -mp.euler, 50)
    assert close(polygamma(1, 1, ctx), mp.pi**2 / 6, 50)
    assert close(polygamma(1, 0.5, ctx), mp.pi**2 / 2, 50)


def test_zeta_examples(ctx):
    mp = ctx.mp
    assert close(hurwitz_zeta(2, 1, ctx), mp.pi**2 / 6, 50)
    assert close(hurwitz_zeta(0, mp.mpf("0.3"), ctx), mp.mpf("0.2"), 50)
    assert close(hurwitz_zeta(-1, 1, ctx), mp.mpf(-1) / 12, 50)


def test_zeta_sderiv_examples(ctx):
    mp = ctx.mp
    with mpmath.workdps(70):
        log_a = mp.mpf(mpmath.log(mpmath.glaisher))
    assert close(hurwitz_zeta_sderiv(-1, 1, ctx), mp.mpf(1) / 12 - log_a, 48)
    assert close(hurwitz_zeta_sderiv(0, 1, ctx), -mp.log(2 * mp.pi) / 2, 48)


@pytest.mark.parametrize("z", [0, -1, -7])
def test_gamma_poles(ctx, z):
    with pytest.raises(DomainError):
        gamma(z, ctx)
    with pytest.raises(DomainError):
        log_gamma(z, ctx)
    with pytest.raises(DomainError):
        polygamma(1, z, ctx)


def test_zeta_domain(ctx):
    with pytest.raises(DomainError):
        hurwitz_zeta(1, 0.5, ctx)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, -3, ctx)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0, ctx)


def test_polygamma_negative_order(ctx):
    with pytest.raises((DomainError, ValueError)):
        polygamma(-1, 1, ctx)


CTX = PrecisionContext(30)
cplx = st.complex_numbers(max_magnitude=25, allow_nan=False, allow_infinity=False)
off_poles = cplx.filter(lambda z: abs(z.imag) > 0.05 or z.real > 0.05)


@given(off_poles)
def test_gamma_recurrence(z):
    z = CTX.mp.convert(z)
    assert close(gamma(z + 1, CTX), z * gamma(z, CTX), 27)


@given(st.complex_numbers(max_magnitude=6, allow_nan=False, allow_infinity=False)
       .filter(lambda z: abs(z.imag) > 0.1))
def test_gamma_reflection(z):
    mp = CTX.mp
    lhs = gamma(z, CTX) * gamma(1 - mp.convert(z), CTX)
    assert close(lhs, mp.pi / mp.sin(mp.pi * mp.convert(z)), 26)


@given(st.complex_numbers(max_magnitude=8, allow_nan=False, allow_infinity=False)
       .filter(lambda s: abs(s - 1) > 0.1),
       st.floats(0.05, 5))
def test_zeta_shift(s, v):
    mp = CTX.mp
    v = mp.convert(v)
    lhs = hurwitz_zeta(s, v, CTX) - hurwitz_zeta(s, v + 1, CTX)
    assert close(lhs, mp.power(v, -mp.convert(s)), 24)


@given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
       .filter(lambda z: z.real > 0.05 or abs(z.imag) > 0.05))
def test_trigamma_is_zeta_two(z):
    assert close(polygamma(1, z, CTX), hurwitz_zeta(2, z, CTX), 26)
