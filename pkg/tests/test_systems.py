import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idqm import systems as S
from idqm import verify as V
from idqm.errors import (
    DomainError,
    IndexBeyondSpectrum,
    RangeViolation,
)
from idqm.fixtures import FIXTURES, fixture

PI = math.pi

# (phi_n, phi_n) by scipy's adaptive quad on panels of [-60, 60] (or [0, 60])
FROZEN_NORMS = {
    "vii_basic": [0.0012048500355917335, 0.05706251671255482],
    "v_two": [0.0036902942623562663, 0.010463041546862431, 0.23896016372160783],
    "viii_km1": [0.032254777807847634, 0.11809931510783034, 0.9400243722297623],
}

seeds = st.integers(0, 2 ** 32 - 1)
cases = st.sampled_from(S.CASES)


def test_fixture_vii_basic_spectrum():
    p = fixture("vii_basic")
    assert p.n_max == 1
    g, a = PI / 5, -6.0
    assert S.energy(p, 0) == 0
    assert S.energy(p, 1) == pytest.approx(4 * math.sin(g / 2) * math.sin(g * (2 * a) / 2), rel=1e-14)
    assert S.energy(p, 1) == pytest.approx(0.726542528005361, rel=1e-13)


@pytest.mark.parametrize("name", sorted(FROZEN_NORMS))
def test_conjectured_norms_match_frozen_quadrature(name):
    p = fixture(name)
    for n, ref in enumerate(FROZEN_NORMS[name]):
        h = S.conjectured_norm(p, n)
        assert abs(h.real / ref - 1) < 1e-9
        assert abs(h.imag) < 1e-10 * abs(h)


def test_case_aliases_and_K_only_for_viii():
    a = S.build_system("7", rational=(1, 5), alpha1=-3, alpha2=-3)
    b = S.build_system("vii", rational=(1, 5), alpha1=-3, alpha2=-3, K=-1)
    assert a == b and a.case == "VII" and a.K == 1
    with pytest.raises(DomainError):
        S.build_system("IX", 0.5, -1, -1)


@pytest.mark.parametrize("kw, fragment", [
    (dict(case="V", gamma=3.5, alpha1=-1, alpha2=-1), "0 < gamma < pi"),
    (dict(case="V", gamma=0.6, alpha1=-6, alpha2=-1), "-pi < gamma*alpha1 <= pi"),
    (dict(case="V", gamma=0.6, alpha1=-5, alpha2=-0.5 / 0.6), "gamma - pi < gamma*alpha1 < 0"),
    (dict(case="VII", gamma=0.6, alpha1=-1, alpha2=-1), "-gamma*alpha > pi + gamma/2"),
    (dict(case="VIII", gamma=0.6, alpha1=2.5, alpha2=2.5, K=-1), "-gamma*alpha > K*pi + gamma/2"),
    (dict(case="VIII", gamma=0.6, alpha1=-2, alpha2=-2, K=-1), "gamma < gamma*alpha1 < pi"),
    (dict(case="VIII", gamma=0.6, alpha1=-4, alpha2=-4, K=2), "K in {1, -1, 0}"),
])
def test_range_violation_names_the_inequality(kw, fragment):
    with pytest.raises(RangeViolation) as err:
        S.build_system(**kw)
    assert fragment in err.value.which


def test_rational_declaration_is_exact():
    p = S.build_system("VII", rational=(2, 10), alpha1=-3, alpha2=-3)
    assert p.rational == (1, 5) and p.gamma == PI / 5
    assert p.half_ctx.rational == (1, 10)
    with pytest.raises(DomainError):
        S.build_system("VII", gamma=0.7, rational=(1, 5), alpha1=-3, alpha2=-3)


def test_index_outside_spectrum():
    p = fixture("vii_basic")
    with pytest.raises(IndexBeyondSpectrum):
        S.energy(p, 2)
    with pytest.raises(IndexBeyondSpectrum):
        S.eigenpoly(p, -1, 0.3)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_star_operation_and_reality(name):
    p = fixture(name)
    x = np.linspace(0.1, 3.0, 9) if p.case == "VII" else np.linspace(-3, 3, 9)
    z = x + 0.3j
    assert np.allclose(S.potential_star(p, z), np.conj(S.potential(p, np.conj(z))), rtol=1e-13)
    assert np.allclose(S.sqrt_potential(p, z) ** 2, S.potential(p, z), rtol=1e-12)
    phi = S.groundstate(p, x)
    assert np.max(np.abs(phi.imag) / np.abs(phi)) < 1e-12
    w = S.weight(p, x)
    assert np.all(w > 0) and np.allclose(w, np.abs(phi) ** 2, rtol=1e-12)
    for n in range(p.n_max + 1):
        P = S.eigenpoly(p, n, S.eta(p, x))
        assert np.max(np.abs(P.imag)) < 1e-11 * max(1.0, np.max(np.abs(P)))


def test_vii_weight_is_even():
    p = fixture("vii_two")
    x = np.array([0.3, 1.1, 2.4])
    assert np.allclose(S.weight(p, -x), S.weight(p, x), rtol=1e-14)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_decay_exponents_match_the_ground_state(name):
    p = fixture(name)
    r_right, r_left = S.decay_exponents(p)
    lg = lambda x: float(S.log_groundstate(p, np.array([x]))[0].real)
    assert (lg(40.0) - lg(30.0)) / 10 == pytest.approx(r_right, abs=1e-6)
    if p.case != "VII":
        assert (lg(-40.0) - lg(-30.0)) / 10 == pytest.approx(r_left, abs=1e-6)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_recurrence_reproduces_polynomials(name):
    p = fixture(name)
    e = np.array([0.2 + 0.1j, -1.3, 2.0 - 0.5j])
    for n in range(p.n_max):
        A, B, C = S.recurrence(p, n)
        lhs = e * S.eigenpoly_formula(p, n, e)
        rhs = A * S.eigenpoly_formula(p, n + 1, e) + B * S.eigenpoly_formula(p, n, e)
        if n:
            rhs = rhs + C * S.eigenpoly_formula(p, n - 1, e)
        assert np.max(np.abs(lhs - rhs)) < 1e-10 * np.max(np.abs(lhs) + 1)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_leading_coefficient_and_coefficients(name):
    p = fixture(name)
    for n in range(p.n_max + 1):
        c = S.eigenpoly_coefficients(p, n)
        assert c[-1] == pytest.approx(S.leading_coefficient(p, n), rel=1e-12)
        e = np.array([0.3, -0.8 + 0.2j])
        assert np.allclose(np.polyval(c[::-1], e), S.eigenpoly(p, n, e), rtol=1e-11)


# ---------------------------------------------------------------- properties

def _draw(case, seed, n_cap=6):
    return S.random_params(case, np.random.default_rng(seed), n_cap=n_cap)


@settings(max_examples=40, deadline=None)
@given(cases, seeds)
def test_property_spectrum_shape(case, seed):
    p = _draw(case, seed, n_cap=None)
    E = S.spectrum(p)
    assert E[0] == 0
    assert np.all(np.diff(E) > 0)
    bound = 0.5 - p.alpha - p.Keff * PI / p.gamma
    assert p.n_max < bound <= p.n_max + 1


@settings(max_examples=30, deadline=None)
@given(cases, seeds)
def test_property_zero_mode_and_eigen_equation(case, seed):
    p = _draw(case, seed)
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.05 if case == "VII" else -4, 4, 8)
    assert V.zero_mode_residual(p, x) < 1e-9
    z = x + 1j * rng.uniform(-0.3, 0.3, 8)
    for n in range(p.n_max + 1):
        assert V.htpn_residual(p, n, z) < 1e-9


@settings(max_examples=30, deadline=None)
@given(cases, seeds)
def test_property_norm_recurrences(case, seed):
    from idqm import oracle as O
    p = _draw(case, seed)
    for n in range(1, p.n_max + 1):
        r = O.norm_recurrence_residuals(p, n)
        assert r["three_term"] < 1e-7
        assert not (r["shift"] >= 1e-7)   # nan when lambda + delta is out of range
