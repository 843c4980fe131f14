"""Independent cross-checks from the general theory of solvable idQM.

Everything here is built from the real constants v_{k,l} of the potential
and the coefficients g_n^(k) of the sinusoidal coordinate, without using
the closed-form Askey-Wilson type expressions, so agreement with
:mod:`idqm.systems` is a genuine check.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import comb, factorial
from typing import Dict, Tuple

import numpy as np

from . import systems as S
from .errors import DomainError, ShiftedParamsOutOfRange
from .systems import SystemParams

ALL_CASES = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII")


# --------------------------------------------------------------------------
# [[n]] and g_n^(k)
# --------------------------------------------------------------------------

def bracket(case: str, n, gamma: float = 1.0) -> complex:
    """[[n]] for the given sinusoidal coordinate."""
    case = case.upper()
    if case in ("I", "II"):
        return complex(n)
    if case in ("III", "IV"):
        return (math.exp(-gamma * n) - math.exp(gamma * n)) / (math.exp(-gamma) - math.exp(gamma)) + 0j
    return complex(math.sin(gamma * n) / math.sin(gamma))


def bracket_n(p: SystemParams, n) -> complex:
    return bracket(p.case, n, p.gamma)


def g_coefficient(case: str, n: int, k: int, gamma: float = 1.0) -> complex:
    """g_n^(k); zero unless 0 <= k <= n."""
    case = case.upper()
    if n < 0 or k < 0 or k > n:
        return 0j
    if case == "I":
        return complex((-1) ** (k // 2) * comb(n + 1, k + 1)) if k % 2 == 0 else 0j
    if case == "II":
        return complex((-1) ** k * comb(2 * n + 2, 2 * k + 1) / 2)
    if case in ("V", "VI"):
        return bracket(case, n + 1, gamma) if k == 0 else 0j
    if k % 2:
        return 0j
    h = k // 2
    tot = 0j
    for r in range(h + 1):
        tot += (comb(n - k + r, r) * (-1) ** r * bracket(case, n - k + 1 + 2 * r, gamma)
                / (factorial(h - r) * factorial(n - h + 1 + r)))
    tot *= factorial(n + 1) / 2 ** k
    if case == "VIII":
        tot *= (-1) ** h
    return tot


def coordinate(case: str, x, gamma: float = 1.0):
    """eta(x) for all eight coordinates (used to test the g_n^(k) identity)."""
    case = case.upper()
    x = np.asarray(x, dtype=complex)
    return {"I": lambda: x, "II": lambda: x * x, "III": lambda: np.cos(x), "IV": lambda: np.sin(x),
            "V": lambda: np.exp(-x), "VI": lambda: np.exp(x), "VII": lambda: np.cosh(x),
            "VIII": lambda: np.sinh(x)}[case]()


def g_identity_residual(case: str, n: int, x, gamma: float = 1.0) -> float:
    """Max residual of the defining identity of g_n^(k) at x, relative to the term sizes."""
    case = case.upper()
    if case in ("I", "II"):
        gamma = 1.0
    em = coordinate(case, np.asarray(x) - 1j * gamma, gamma)
    ep = coordinate(case, np.asarray(x) + 1j * gamma, gamma)
    e0 = coordinate(case, x, gamma)
    terms = [em ** (n - j) * ep ** j for j in range(n + 1)]
    lhs = sum(terms)
    rhs = sum(g_coefficient(case, n, k, gamma) * e0 ** (n - k) for k in range(n + 1))
    # relative to the term sizes: the sum itself can cancel to ~0
    scale = np.maximum(sum(np.abs(t) for t in terms), 1e-300)
    return float(np.max(np.abs(lhs - rhs) / scale))


# --------------------------------------------------------------------------
# potential constants v_{k,l}
# --------------------------------------------------------------------------

def overall_scale(p: SystemParams) -> float:
    """The real overall scale A of the factorised potential."""
    g = p.gamma
    s = math.sin(g / 2) * math.sin(g) / abs(p.a[0] * p.a[1])
    if p.case in ("V", "VI"):
        return 4 * s
    if p.case == "VII":
        return s
    return (-1) ** (p.K + 1) * s


def vkl_from_factorisation(p: SystemParams) -> Dict[Tuple[int, int], complex]:
    """v_{k,l} (k + l <= 2, with v_{0,2} = 0) in terms of a_j and A."""
    g = p.gamma
    a1, a2 = p.a
    c1, c2 = a1.conjugate(), a2.conjugate()
    A = overall_scale(p)
    e, ei = cmath.exp(1j * g), cmath.exp(-1j * g)
    D = e - ei
    v = {(0, 2): 0j}
    if p.case in ("V", "VI"):
        v[0, 0] = A + 0j
        v[0, 1] = -A * (a1 + a2 - c1 - c2) / D
        v[1, 0] = A * (e * (a1 + a2) - ei * (c1 + c2)) / D
        v[1, 1] = -A * (a1 * a2 - c1 * c2) / D
        v[2, 0] = A * (e * a1 * a2 - ei * c1 * c2) / D
        return v
    sg = 1 if p.case == "VII" else -1
    m1, m2 = 1 + sg * abs(a1) ** 2, 1 + sg * abs(a2) ** 2
    if sg == 1:
        v[0, 0] = A * ((1 - a1 * a2) * (1 - c1 * c2) + (a1 + a2) * (c1 + c2))
    else:
        v[0, 0] = A * ((1 + a1 * a2) * (1 + c1 * c2) - (a1 + a2) * (c1 + c2))
    v[0, 1] = -2 * A * ((a1 - c1) * m2 + (a2 - c2) * m1) / D
    v[1, 0] = 2 * A * (e * (a1 * m2 + a2 * m1) - ei * (c1 * m2 + c2 * m1)) / D
    v[1, 1] = -4 * A * (a1 * a2 - c1 * c2) / D
    v[2, 0] = 4 * A * (e * a1 * a2 - ei * c1 * c2) / D
    return v


def potential_from_vkl(p: SystemParams, x, v=None):
    """V(x) rebuilt as Vt(x) / ((eta(x-ig)-eta(x)) (eta(x-ig)-eta(x+ig)))."""
    v = vkl_from_factorisation(p) if v is None else v
    x = np.asarray(x, dtype=complex)
    g = p.gamma
    e0, em, ep = S.eta(p, x), S.eta(p, x - 1j * g), S.eta(p, x + 1j * g)
    vt = sum(c * e0 ** k * em ** l for (k, l), c in v.items())
    return vt / ((em - e0) * (em - ep))


# --------------------------------------------------------------------------
# triangular action and determinant polynomial
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TriangularAction:
    entries: np.ndarray  # entries[m, n] = Ht_{m,n}

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries)


def _e_term(v, g, m, j, n):
    tot = 0j
    for l in range(0, 2 - m + j + 1):
        key = (2 - m + j - l, l)
        c = v.get(key, 0j)
        if c == 0:
            continue
        tot += c * sum(g(n + l - r - 2, j) for r in range(n))
    return tot


def triangular_matrix(p: SystemParams, n: int) -> TriangularAction:
    """Matrix of H-tilde on Span[1, eta, ..., eta^n]."""
    v = vkl_from_factorisation(p)
    cache = {}

    def g(nn, k):
        if (nn, k) not in cache:
            cache[nn, k] = g_coefficient(p.case, nn, k, p.gamma)
        return cache[nn, k]

    M = np.zeros((n + 1, n + 1), dtype=complex)
    for col in range(n + 1):
        for m in range(col + 1):
            d = col - m
            M[m, col] = sum(_e_term(v, g, d, j, col) for j in range(max(col - 2 - m, 0), d + 1))
    return TriangularAction(M)


def ht_pointwise(p: SystemParams, k: int, x):
    """(H-tilde eta^k)(x) evaluated directly from the potential."""
    x = np.asarray(x, dtype=complex)
    g = p.gamma
    e0, em, ep = S.eta(p, x), S.eta(p, x - 1j * g), S.eta(p, x + 1j * g)
    return S.potential(p, x) * (em ** k - e0 ** k) + S.potential_star(p, x) * (ep ** k - e0 ** k)


def determinant_eigenpoly_raw(p: SystemParams, n: int) -> np.ndarray:
    """Ascending eta-coefficients of the determinant, by first-row cofactors."""
    H = triangular_matrix(p, n).entries
    E = np.diag(H)
    if n == 0:
        return np.array([1.0 + 0j])
    body = np.zeros((n, n + 1), dtype=complex)
    for i in range(n):
        body[i, i] = E[i] - E[n]
        body[i, i + 1:] = H[i, i + 1:]
    coef = np.empty(n + 1, dtype=complex)
    for k in range(n + 1):
        minor = np.delete(body, k, axis=1)
        coef[k] = (-1) ** k * np.linalg.det(minor)
    return coef


def closed_form_prefactor(p: SystemParams, n: int) -> complex:
    """Ratio between the evaluated determinant and P_n(eta; lambda)."""
    g = p.gamma
    A = overall_scale(p)
    ab = abs(p.a[0] * p.a[1])
    val = (A * ab / (math.sin(g / 2) * math.sin(g))) ** n
    for k in range(1, n + 1):
        val *= math.sin(k * g / 2)
    if p.case in ("V", "VI"):
        val *= 2.0 ** (-n)
    return complex(val)


def determinant_eigenpoly(p: SystemParams, n: int) -> np.ndarray:
    """Determinant polynomial scaled to the leading coefficient of P_n."""
    raw = determinant_eigenpoly_raw(p, n)
    return raw * (S.leading_coefficient(p, n) / raw[-1])


def determinant_vs_closed_form(p: SystemParams, n: int) -> float:
    """Max coefficient-wise relative difference between the two polynomials."""
    d = determinant_eigenpoly(p, n)
    c = S.eigenpoly_coefficients(p, n)
    return float(np.max(np.abs(d - c)) / np.max(np.abs(c)))


# --------------------------------------------------------------------------
# closure relation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureCoefficients:
    r1_1: complex
    r1_0: complex
    r0_2: complex
    r0_1: complex
    r0_0: complex
    rm1_2: complex
    rm1_1: complex
    rm1_0: complex
    B1: complex
    B2: complex
    C: complex


def closure_coefficients(p: SystemParams) -> ClosureCoefficients:
    g = p.gamma
    a, a1, a2 = p.alpha, p.alpha1, p.alpha2
    E = lambda t: cmath.exp(1j * t)
    s2 = (E(g / 2) - E(-g / 2)) ** 2
    if p.case in ("V", "VI"):
        B = [math.exp(-g * b) for b in p.betas]
    elif p.case == "VII":
        B = [math.cosh(g * b) for b in p.betas]
    else:
        B = [-math.sinh(g * b) for b in p.betas]
    C = (-1) ** (p.K + 1) if p.case == "VIII" else 1
    r1_1 = s2
    r1_0 = -s2 * (E(-g / 2 + g * a) + E(g / 2 - g * a)) * C
    r0_0 = s2 * (E(g * a) - E(-g * a)) * (E(-g + g * a) - E(g - g * a))
    rm1_1 = -s2 * ((E(-g / 2 + g * a1) + E(g / 2 - g * a1)) * B[1]
                   + (E(-g / 2 + g * a2) + E(g / 2 - g * a2)) * B[0]) * C
    rm1_0 = s2 * (E(-g + g * a) - E(g - g * a)) * ((E(g * a1) - E(-g * a1)) * B[1]
                                                    + (E(g * a2) - E(-g * a2)) * B[0])
    return ClosureCoefficients(r1_1, r1_0, r1_1, 2 * r1_0, r0_0, 0j, rm1_1, rm1_0, B[0], B[1], C)


def _eta_matrix(size: int) -> np.ndarray:
    X = np.zeros((size, size), dtype=complex)
    for k in range(size - 1):
        X[k + 1, k] = 1
    return X


def verify_closure(p: SystemParams, n: int) -> float:
    """Max relative entry residual of the double-commutator identity on
    columns 0..n of the truncated polynomial space of degree n + 2."""
    size = n + 3
    H = triangular_matrix(p, size - 1).entries
    X = _eta_matrix(size)
    c = closure_coefficients(p)
    I = np.eye(size)
    HX = H @ X - X @ H
    lhs = H @ HX - HX @ H
    R1 = c.r1_1 * H + c.r1_0 * I
    R0 = c.r0_2 * H @ H + c.r0_1 * H + c.r0_0 * I
    Rm1 = c.rm1_2 * H @ H + c.rm1_1 * H + c.rm1_0 * I
    rhs = X @ R0 + HX @ R1 + Rm1
    cols = slice(0, n + 1)
    scale = max(np.max(np.abs(lhs[:, cols])), np.max(np.abs(rhs[:, cols])), 1e-300)
    return float(np.max(np.abs(lhs[:, cols] - rhs[:, cols])) / scale)


# --------------------------------------------------------------------------
# shape invariance and shift operators
# --------------------------------------------------------------------------

def shifted_system(p: SystemParams, k: int = 1) -> SystemParams:
    try:
        return p.shifted(k)
    except DomainError as e:
        raise ShiftedParamsOutOfRange(f"lambda + {k} delta leaves the parameter range: {e}") from e


def fn_bn(p: SystemParams, n: int) -> Tuple[float, float]:
    """(f_n, b_{n-1}) with E_n = f_n b_{n-1}."""
    if p.case == "V":
        sg = -1
    elif p.case == "VIII":
        sg = (-1) ** (p.K + 1)
    else:
        sg = 1
    return sg * S.energy_formula(p, n), float(sg)


def shift_forward(p: SystemParams, n: int, x):
    """(F(lambda) P_n)(x) = i varphi(x)^{-1} (P_n(eta(x-ig/2)) - P_n(eta(x+ig/2)))."""
    x = np.asarray(x, dtype=complex)
    g = p.gamma
    Pm = S.eigenpoly_formula(p, n, S.eta(p, x - 0.5j * g))
    Pp = S.eigenpoly_formula(p, n, S.eta(p, x + 0.5j * g))
    return 1j * (Pm - Pp) / S.varphi(p, x)


def shift_backward(p: SystemParams, n: int, x):
    """(B(lambda) P_{n-1}(.; lambda + delta))(x)."""
    x = np.asarray(x, dtype=complex)
    g = p.gamma
    ps = shifted_system(p)
    xm, xp = x - 0.5j * g, x + 0.5j * g
    Pm = S.eigenpoly_formula(ps, n - 1, S.eta(p, xm))
    Pp = S.eigenpoly_formula(ps, n - 1, S.eta(p, xp))
    return -1j * (S.potential(p, x) * S.varphi(p, xm) * Pm - S.potential_star(p, x) * S.varphi(p, xp) * Pp)


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def shift_residuals(p: SystemParams, n: int, x) -> Tuple[float, float]:
    """Relative residuals of F P_n = f_n P_{n-1}(lambda+delta) and
    B P_{n-1}(lambda+delta) = b_{n-1} P_n."""
    ps = shifted_system(p)
    f, b = fn_bn(p, n)
    x = np.asarray(x, dtype=complex)
    rf = _rel(shift_forward(p, n, x), f * S.eigenpoly_formula(ps, n - 1, S.eta(p, x)))
    rb = _rel(shift_backward(p, n, x), b * S.eigenpoly_formula(p, n, S.eta(p, x)))
    return rf, rb


def shape_invariance_check(p: SystemParams, x) -> Dict[str, float]:
    """Residuals of the potential and ground-state shape-invariance relations."""
    ps = shifted_system(p)
    x = np.asarray(x, dtype=complex)
    g = p.gamma
    lhs_v = S.potential(ps, x)
    rhs_v = S.varphi(p, x - 1j * g) / S.varphi(p, x) * S.potential(p, x - 0.5j * g)
    lhs_p = S.groundstate(ps, x)
    rhs_p = S.varphi(p, x) * S.sqrt_potential(p, x + 0.5j * g) * S.groundstate(p, x + 0.5j * g)
    return {"potential_shift": _rel(lhs_v, rhs_v), "groundstate_shift": _rel(lhs_p, rhs_p)}


def norm_recurrence_residuals(p: SystemParams, n: int) -> Dict[str, float]:
    """Relative residuals of the two recurrences for the conjectured h_n.

    ``shift``: h_n(lambda) = (f_n / b_{n-1}) h_{n-1}(lambda + delta);
    ``three_term``: h_n / h_{n-1} = (c_n / c_{n-1}) C_n.
    The shift entry is nan when lambda + delta leaves the range.
    """
    hn = S.conjectured_norm(p, n)
    hm = S.conjectured_norm(p, n - 1)
    cn, cm = S.leading_coefficient(p, n), S.leading_coefficient(p, n - 1)
    Cn = S.recurrence_c(p, n)
    out = {"three_term": abs(hn / hm - cn / cm * Cn) / abs(hn / hm)}
    try:
        ps = shifted_system(p)
        f, b = fn_bn(p, n)
        out["shift"] = abs(hn - f / b * S.conjectured_norm(ps, n - 1)) / abs(hn)
    except ShiftedParamsOutOfRange:
        out["shift"] = math.nan
    return out
