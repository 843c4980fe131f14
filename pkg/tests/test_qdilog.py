import cmath
import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idqm.errors import DomainError, InvalidRho, PoleProximity, StripViolation
from idqm.qdilog import (
    QDilogContext,
    dilog,
    eval_faddeev_product,
    eval_qdilog,
    eval_qdilog_integral,
    eval_qdilog_series,
    lattice_point,
    log_qdilog,
    nearest_pole,
    pole_lattice,
    product_relation,
    qpochhammer_inf,
)

PI = math.pi
REFERENCE = json.loads((Path(__file__).parent / "data" / "qdilog_reference.json").read_text())
CONTEXTS = {"0.7": QDilogContext(0.7), "pi/4": QDilogContext.from_rational(1, 4), "1.9": QDilogContext(1.9)}

gammas = st.sampled_from([0.4, 0.7, 1.3, 2.2, "1/4", "2/5", "1/3"])


def ctx_of(g):
    if isinstance(g, str):
        m, n = map(int, g.split("/"))
        return QDilogContext.from_rational(m, n)
    return QDilogContext(g)


@pytest.mark.parametrize("ref", REFERENCE, ids=lambda r: f"{r['gamma']}@{r['z']}")
def test_matches_high_precision_reference(ref):
    ctx = CONTEXTS[ref["gamma"]]
    v = eval_qdilog(ctx, complex(*ref["z"]))
    assert abs(v - complex(*ref["phi"])) <= 1e-12 * abs(complex(*ref["phi"]))


def test_value_at_origin_is_a_square_root_of_the_product_relation():
    # Phi(0)^2 = exp(i (gamma^2 + pi^2) / (12 gamma)) and Phi(0) has unit modulus
    for g in (0.3, 1.0, 2.5):
        ctx = QDilogContext(g)
        assert abs(eval_qdilog(ctx, 0.0) - cmath.exp(1j * (g * g + PI * PI) / (24 * g))) < 1e-13


def test_gamma_shift_at_zero_gives_one_half():
    ctx = QDilogContext(0.9)
    assert abs(eval_qdilog(ctx, 0.9j) / eval_qdilog(ctx, -0.9j) - 0.5) < 1e-13


def test_tends_to_one_far_left():
    ctx = QDilogContext(0.8)
    assert abs(eval_qdilog(ctx, -40.0 + 0.5j) - 1) < 1e-12


def test_series_two_sided_limit_on_imaginary_axis():
    ctx = QDilogContext(0.7)
    for y in (0.0, 1.0, -2.5):
        v = eval_qdilog_series(ctx, 1j * y, eps=0.01)
        assert abs(v - eval_qdilog(ctx, 1j * y)) < 1e-3 * abs(v)


@pytest.mark.parametrize("rel", [1e-12, 1e-9, 1e-7, 1e-5, 1e-3])
def test_near_rational_decimal_gamma_stays_accurate(rel):
    # small divisors push the series to the contour quadrature
    ctx = QDilogContext(PI / 3 * (1 + rel))
    for z in (1.2 + 0.3j, -0.8 - 1.0j, 8.0 + 0.2j, 0.6 + 2.0j):
        ref = eval_qdilog_integral(ctx, z, 0.5)
        assert abs(eval_qdilog(ctx, z) - ref) < 1e-12 * abs(ref)


def test_log_qdilog_is_the_analytic_log():
    ctx = QDilogContext(1.1)
    z = np.linspace(-6, 6, 41) + 0.7j
    ell = log_qdilog(ctx, z)
    assert np.max(np.abs(np.exp(ell) - eval_qdilog(ctx, z))) < 1e-12
    # no 2 pi i jumps along a path
    assert np.max(np.abs(np.diff(ell.imag))) < 1.0


def test_log_qdilog_rejects_points_outside_strip():
    ctx = QDilogContext(0.5)
    with pytest.raises(StripViolation):
        log_qdilog(ctx, 4.0j)


def test_integral_representation_parameter_checks():
    ctx = QDilogContext(0.7)
    with pytest.raises(InvalidRho):
        eval_qdilog_integral(ctx, 0.1, rho=2.0)
    with pytest.raises(StripViolation):
        eval_qdilog_integral(ctx, 4.0j, rho=0.3)


@pytest.mark.parametrize("bad", [0.0, -1.0, PI, 4.0, math.inf])
def test_context_rejects_gamma_outside_range(bad):
    with pytest.raises(DomainError):
        QDilogContext(bad)


def test_context_rational_declaration():
    ctx = QDilogContext.from_rational(2, 8)
    assert ctx.rational == (1, 4)
    assert ctx.gamma == PI / 4
    with pytest.raises(DomainError):
        QDilogContext(0.7, rational=(1, 4))
    assert ctx.scaled(2).rational == (1, 2)


def test_pole_lattice_and_proximity():
    ctx = QDilogContext(0.6)
    poles = pole_lattice(ctx, "pole", 12.0)
    assert poles[0].location == pytest.approx(complex(0, 0.6 + PI))
    assert all(p.location.imag <= 12.0 for p in poles)
    assert lattice_point(ctx, "zero", 1, 1).location == pytest.approx(complex(0, -(0.6 + PI)))
    loc, d = nearest_pole(ctx, 1e-9 + 1j * (3 * 0.6 + PI))
    assert loc == pytest.approx(complex(0, 3 * 0.6 + PI)) and d < 1e-8
    with pytest.raises(PoleProximity):
        eval_qdilog(ctx, 1j * (3 * 0.6 + PI) + 1e-9)


def test_dilog_matches_its_series_and_reflection():
    z = np.array([0.3 + 0.2j, -0.5j, 0.6])
    series = sum(z ** k / k ** 2 for k in range(1, 400))
    assert np.max(np.abs(dilog(z) - series)) < 1e-14
    w = 2.5 + 0.5j
    # Li2(w) + Li2(1/w) = -pi^2/6 - log(-w)^2 / 2
    assert abs(dilog(w) + dilog(1 / w) + PI ** 2 / 6 + cmath.log(-w) ** 2 / 2) < 1e-12


def test_qpochhammer_inf_requires_inner_q():
    assert abs(qpochhammer_inf(0.5, 0.3) - np.prod([1 - 0.5 * 0.3 ** k for k in range(80)])) < 1e-15
    with pytest.raises(DomainError):
        qpochhammer_inf(0.5, 1.0)


@pytest.mark.parametrize("b", [0.8 * cmath.exp(0.3j), 1.2 * cmath.exp(0.5j)])
def test_faddeev_product_shift_relations(b):
    # Phi_gamma(z) = Phi^F_b(z / (2 sqrt(pi gamma)))^{-1} turns the gamma and pi
    # shifts into Phi^F(w + i c/2) = (1 + e^{2 pi c w}) Phi^F(w - i c/2), c = b, 1/b
    for w in (0.2 + 0.1j, -0.4 + 0.3j):
        for c in (b, 1 / b):
            lhs = eval_faddeev_product(b, w + 0.5j * c)
            rhs = (1 + cmath.exp(2 * PI * c * w)) * eval_faddeev_product(b, w - 0.5j * c)
            assert abs(lhs - rhs) < 1e-10 * abs(rhs)
    with pytest.raises(DomainError):
        eval_faddeev_product(0.9, 0.1)


# ---------------------------------------------------------------- properties

points = st.complex_numbers(max_magnitude=4.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(gammas, points)
def test_property_gamma_shift(g, z):
    ctx = ctx_of(g)
    lhs = eval_qdilog(ctx, z + 1j * ctx.gamma) * (1 + cmath.exp(z))
    rhs = eval_qdilog(ctx, z - 1j * ctx.gamma)
    assert abs(lhs - rhs) <= 1e-11 * max(abs(rhs), abs(lhs), 1e-300)


@settings(max_examples=60, deadline=None)
@given(gammas, points)
def test_property_pi_shift(g, z):
    ctx = ctx_of(g)
    lhs = eval_qdilog(ctx, z + 1j * PI) * (1 + cmath.exp(PI * z / ctx.gamma))
    rhs = eval_qdilog(ctx, z - 1j * PI)
    assert abs(lhs - rhs) <= 1e-11 * max(abs(rhs), abs(lhs), 1e-300)


@settings(max_examples=60, deadline=None)
@given(gammas, points)
def test_property_conjugation_and_product(g, z):
    ctx = ctx_of(g)
    v = eval_qdilog(ctx, z)
    assert abs(np.conj(eval_qdilog(ctx, np.conj(z))) * v - 1) < 1e-11
    pr = product_relation(ctx, z)
    assert abs(v * eval_qdilog(ctx, -z) - pr) <= 1e-11 * abs(pr)


@settings(max_examples=60, deadline=None)
@given(gammas, st.floats(-30, 30))
def test_property_unit_modulus_on_real_axis(g, x):
    assert abs(abs(eval_qdilog(ctx_of(g), x)) - 1) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(0.15, 3.0), st.floats(-3, 3), st.floats(-0.85, 0.85))
def test_property_matches_integral_representation(g, x, frac):
    ctx = QDilogContext(g)
    z = complex(x, frac * ctx.half_width)
    ref = eval_qdilog_integral(ctx, z, 0.5 * min(PI / g, 1.0))
    assert abs(eval_qdilog(ctx, z) - ref) <= 1e-10 * max(1.0, abs(ref))
