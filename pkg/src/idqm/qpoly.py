"""q-series kernel: q-Pochhammer symbols, terminating basic hypergeometric
series, Askey-Wilson polynomials at complex q and their p-tilde limit, with
the recurrence data and the classical polynomials used in limit checks.

Polynomials are returned either as values (scalar or array eta) or as
coefficient arrays in ascending powers of eta (``*_coefficients``).
"""
from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import special

from .errors import DenominatorPochhammerZero, DomainError, RecurrenceDenominatorZero

# |(b;q)_k| below this is treated as a vanishing denominator
POCH_ZERO = 1e-14


class AWParameterQuad(NamedTuple):
    a1: complex
    a2: complex
    a3: complex
    a4: complex

    @property
    def b4(self) -> complex:
        return self.a1 * self.a2 * self.a3 * self.a4

    def permuted(self, order: Sequence[int]) -> "AWParameterQuad":
        return AWParameterQuad(*(self[i] for i in order))

    def inverted(self) -> "AWParameterQuad":
        return AWParameterQuad(*(1 / complex(a) for a in self))


class RecurrenceTriple(NamedTuple):
    A: complex
    B: complex
    C: complex


def qpochhammer(a, q, n: int):
    """(a; q)_n = prod_{k=1}^n (1 - a q^{k-1}); ``a`` may be an array."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a = np.asarray(a, dtype=complex)
    out = np.ones(a.shape, dtype=complex)
    qk = 1.0 + 0j
    for _ in range(n):
        out = out * (1 - a * qk)
        qk *= q
    return complex(out) if out.ndim == 0 else out


def _check_den(dens, q, n):
    for which, b in enumerate(dens):
        val = 1.0 + 0j
        for k in range(1, n + 1):
            val *= 1 - b * q ** (k - 1)
            if abs(val) < POCH_ZERO:
                raise DenominatorPochhammerZero(k, which)


def basic_hypergeom_terminating(numerator, denominator, q, z, n: int):
    """Terminating r_phi_s with numerator parameter q^{-n}, summed to k = n.

    Numerator parameters may be arrays (broadcast together);
    denominators are scalars.
    """
    q = complex(q)
    qn = q ** (-n)
    if not any(np.ndim(a) == 0 and abs(complex(a) - qn) <= 1e-12 * max(1.0, abs(qn))
               for a in numerator):
        raise DomainError("terminating series needs q^{-n} among the numerator parameters")
    _check_den(denominator, q, n)
    r, s = len(numerator), len(denominator)
    e = 1 + s - r
    nums = [np.asarray(a, dtype=complex) for a in numerator]
    shape = np.broadcast_shapes(*(a.shape for a in nums), np.shape(z))
    term = np.ones(shape, dtype=complex)
    total = term.copy()
    for k in range(n):
        # ratio t_{k+1}/t_k
        num = np.ones(shape, dtype=complex)
        for a in nums:
            num = num * (1 - a * q ** k)
        den = 1 - q ** (k + 1)
        for b in denominator:
            den *= 1 - b * q ** k
        term = term * num / den * z * ((-1) ** e * q ** (e * k))
        total = total + term
    return complex(total) if total.ndim == 0 else total


def _aw_pair_poch(a1, q, eta, k):
    # (a1 e^{ix}, a1 e^{-ix}; q)_k written as a polynomial in eta = cos x
    eta = np.asarray(eta, dtype=complex)
    out = np.ones(eta.shape, dtype=complex)
    for j in range(k):
        out = out * (1 - 2 * a1 * q ** j * eta + (a1 * q ** j) ** 2)
    return out


def _series_terms(n, params: AWParameterQuad, q, variant):
    """Coefficients w_k of the sum over k and the per-k eta factor."""
    a1, a2, a3, a4 = (complex(a) for a in params)
    q = complex(q)
    b4 = params.b4
    if variant == "aw":
        dens = [a1 * a2, a1 * a3, a1 * a4]
        pre = a1 ** (-n) * qpochhammer(a1 * a2, q, n) * qpochhammer(a1 * a3, q, n) * qpochhammer(a1 * a4, q, n)
    else:
        dens = [a1 * a3, a1 * a4]
        pre = a1 ** (-n) * qpochhammer(a1 * a3, q, n) * qpochhammer(a1 * a4, q, n)
    _check_den(dens, q, n)
    w = []
    for k in range(n + 1):
        num = qpochhammer(q ** (-n), q, k) * qpochhammer(b4 * q ** (n - 1), q, k)
        den = qpochhammer(q, q, k)
        for b in dens:
            den *= qpochhammer(b, q, k)
        # both 4phi3 and 3phi2 here are balanced (1 + s - r = 0)
        w.append(pre * num / den * q ** k)
    return w


def askey_wilson(n: int, eta, params: AWParameterQuad, q):
    """p_n(eta; a1, a2, a3, a4 | q) from the a1-prefactored 4phi3.

    The pair (a1 e^{ix}, a1 e^{-ix}; q)_k is expanded as
    prod_j (1 - 2 a1 q^j eta + a1^2 q^{2j}), which is the same product with no
    root of eta^2 - 1 to choose.
    """
    q = complex(q)
    a1 = complex(params.a1)
    w = _series_terms(n, params, q, "aw")
    eta_arr = np.asarray(eta, dtype=complex)
    total = np.zeros(eta_arr.shape, dtype=complex)
    for k, wk in enumerate(w):
        total = total + wk * _aw_pair_poch(a1, q, eta_arr, k)
    return complex(total) if total.ndim == 0 else total


def askey_wilson_via_root(n: int, eta, params: AWParameterQuad, q, root: int = 1):
    """Same polynomial evaluated with e^{ix} = eta + root*sqrt(eta^2 - 1)."""
    eta = complex(eta)
    a1, a2, a3, a4 = (complex(a) for a in params)
    z = eta + root * np.sqrt(eta * eta - 1)
    pre = a1 ** (-n) * qpochhammer(a1 * a2, q, n) * qpochhammer(a1 * a3, q, n) * qpochhammer(a1 * a4, q, n)
    return pre * basic_hypergeom_terminating(
        [q ** (-n), params.b4 * q ** (n - 1), a1 * z, a1 / z], [a1 * a2, a1 * a3, a1 * a4], q, q, n)


def ptilde(n: int, eta, params: AWParameterQuad, q):
    """p-tilde_n(eta; a1, a2, a3, a4 | q) from its 3phi2 form."""
    q = complex(q)
    a1 = complex(params.a1)
    w = _series_terms(n, params, q, "pt")
    eta_arr = np.asarray(eta, dtype=complex)
    total = np.zeros(eta_arr.shape, dtype=complex)
    for k, wk in enumerate(w):
        total = total + wk * qpochhammer(a1 * eta_arr, q, k)
    return complex(total) if total.ndim == 0 else total


def askey_wilson_coefficients(n: int, params: AWParameterQuad, q) -> np.ndarray:
    """Ascending eta-coefficients of p_n, assembled exactly from the series."""
    q = complex(q)
    a1 = complex(params.a1)
    w = _series_terms(n, params, q, "aw")
    out = np.zeros(n + 1, dtype=complex)
    fac = np.array([1.0 + 0j])
    for k, wk in enumerate(w):
        out[: fac.size] += wk * fac
        j = k
        fac = npoly.polymul(fac, [1 + (a1 * q ** j) ** 2, -2 * a1 * q ** j])
    return out


def ptilde_coefficients(n: int, params: AWParameterQuad, q) -> np.ndarray:
    """Ascending eta-coefficients of p-tilde_n."""
    q = complex(q)
    a1 = complex(params.a1)
    w = _series_terms(n, params, q, "pt")
    out = np.zeros(n + 1, dtype=complex)
    fac = np.array([1.0 + 0j])
    for k, wk in enumerate(w):
        out[: fac.size] += wk * fac
        fac = npoly.polymul(fac, [1, -a1 * q ** k])
    return out


def leading_coefficient(n: int, params: AWParameterQuad, q, variant: str = "aw") -> complex:
    """c_n = 2^n (b4 q^{n-1}; q)_n, or c-tilde_n = c_n / 2^n for ``variant='pt'``."""
    c = qpochhammer(params.b4 * complex(q) ** (n - 1), q, n)
    return 2 ** n * c if variant == "aw" else c


def aw_recurrence(n: int, params: AWParameterQuad, q, variant: str = "aw") -> RecurrenceTriple:
    """(A_n, B_n, C_n) with eta p_n = A_n p_{n+1} + B_n p_n + C_n p_{n-1}."""
    q = complex(q)
    a = [complex(x) for x in params]
    a1, a2, a3, a4 = a
    b4 = params.b4
    d0, d1, d2 = 1 - b4 * q ** (2 * n - 2), 1 - b4 * q ** (2 * n - 1), 1 - b4 * q ** (2 * n)
    if min(abs(d0), abs(d1), abs(d2)) < POCH_ZERO:
        raise RecurrenceDenominatorZero(f"1 - b4 q^(2n-j) vanishes at n={n}")
    u = 1 - b4 * q ** (n - 1)
    qn = 1 - q ** n
    if variant == "aw":
        A = u / (2 * d1 * d2)
        p = 1.0 + 0j
        for j in (1, 2, 3):
            p *= 1 - a1 * a[j] * q ** n
        r = 1.0 + 0j
        for j in (1, 2, 3):
            for k in range(j + 1, 4):
                r *= 1 - a[j] * a[k] * q ** (n - 1)
        B = (a1 + 1 / a1) / 2 - u * p / (2 * a1 * d1 * d2) - a1 * qn * r / (2 * d0 * d1)
    elif variant == "pt":
        A = u / (d1 * d2)
        B = (1 / a1 - u * (1 - a1 * a3 * q ** n) * (1 - a1 * a4 * q ** n) / (a1 * d1 * d2)
             + a1 * a3 * a4 * q ** (n - 1) * qn * (1 - a2 * a3 * q ** (n - 1)) * (1 - a2 * a4 * q ** (n - 1))
             / (d0 * d1))
    else:
        raise ValueError(variant)
    return RecurrenceTriple(A, B, recurrence_c(n, params, q, variant))


def recurrence_c(n: int, params: AWParameterQuad, q, variant: str = "aw") -> complex:
    """C_n alone; it needs only 1 - b4 q^(2n-2) and 1 - b4 q^(2n-1) to be non-zero,
    so it stays defined at the top of a finite spectrum where A_n has a pole."""
    q = complex(q)
    a = [complex(x) for x in params]
    b4 = params.b4
    d0, d1 = 1 - b4 * q ** (2 * n - 2), 1 - b4 * q ** (2 * n - 1)
    if min(abs(d0), abs(d1)) < POCH_ZERO:
        raise RecurrenceDenominatorZero(f"1 - b4 q^(2n-j) vanishes at n={n}")
    qn = 1 - q ** n
    c = 1.0 + 0j
    if variant == "aw":
        for j in range(4):
            for k in range(j + 1, 4):
                c *= 1 - a[j] * a[k] * q ** (n - 1)
        return qn * c / (2 * d0 * d1)
    if variant == "pt":
        for j in a[:2]:
            for k in a[2:]:
                c *= 1 - j * k * q ** (n - 1)
        return -a[2] * a[3] * q ** (n - 1) * qn * c / (d0 * d1)
    raise ValueError(variant)


def _poly(variant):
    return askey_wilson if variant == "aw" else ptilde


def duality_check(n: int, params: AWParameterQuad, q, variant: str = "aw", etas=None) -> float:
    """Max relative residual of the q -> 1/q duality over sample eta."""
    q = complex(q)
    if q == 0:
        raise DomainError("q must be non-zero")
    if etas is None:
        etas = np.array([0.3 + 0.1j, -0.7 + 0.4j, 1.2 - 0.5j, 0.05 - 1.1j])
    f = _poly(variant)
    lhs = f(n, etas, params, 1 / q)
    inv = params.inverted()
    if variant == "pt":
        inv = inv.permuted((2, 3, 0, 1))
    rhs = (-1) ** n * params.b4 ** n * q ** (-1.5 * n * (n - 1)) * f(n, etas, inv, q)
    return float(np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs))))


def reflection_check(n: int, params: AWParameterQuad, q, etas=None) -> float:
    """Max relative residual of p_n(-eta; a) = (-1)^n p_n(eta; -a)."""
    if etas is None:
        etas = np.array([0.3 + 0.1j, -0.7 + 0.4j, 1.2 - 0.5j])
    neg = AWParameterQuad(*(-complex(a) for a in params))
    lhs = askey_wilson(n, -np.asarray(etas), params, q)
    rhs = (-1) ** n * askey_wilson(n, etas, neg, q)
    return float(np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs))))


# --------------------------------------------------------------------------
# classical reference polynomials
# --------------------------------------------------------------------------

def _poch(a, k):
    out = 1.0 + 0j
    for j in range(k):
        out *= a + j
    return out


def _hyper_terminating(num, den, z, n):
    # terminating pFq at argument z; num[0] must be -n
    term = 1.0 + 0j
    total = term
    for k in range(n):
        r = z / (k + 1)
        for a in num:
            r *= a + k
        for b in den:
            r /= b + k
        term = term * r
        total = total + term
    return total


def wilson(n: int, x2, a1, a2, a3, a4):
    """Wilson W_n(x^2; a1..a4) = (a1+a2, a1+a3, a1+a4)_n 4F3(-n, n+s-1, a1+ix, a1-ix; ...; 1)."""
    x = np.sqrt(np.asarray(x2, dtype=complex))
    s = a1 + a2 + a3 + a4
    pre = _poch(a1 + a2, n) * _poch(a1 + a3, n) * _poch(a1 + a4, n)
    f = np.vectorize(lambda xx: _hyper_terminating(
        [-n, n + s - 1, a1 + 1j * xx, a1 - 1j * xx], [a1 + a2, a1 + a3, a1 + a4], 1.0, n))
    out = pre * f(x)
    return complex(out) if np.ndim(out) == 0 else out


def continuous_hahn(n: int, x, a1, a2, a3, a4):
    """p_n(x; a1..a4) = i^n (a1+a3, a1+a4)_n / n! 3F2(-n, n+s-1, a1+ix; a1+a3, a1+a4; 1)."""
    s = a1 + a2 + a3 + a4
    pre = 1j ** n * _poch(a1 + a3, n) * _poch(a1 + a4, n) / math.factorial(n)
    f = np.vectorize(lambda xx: _hyper_terminating(
        [-n, n + s - 1, a1 + 1j * xx], [a1 + a3, a1 + a4], 1.0, n))
    out = pre * f(np.asarray(x, dtype=complex))
    return complex(out) if np.ndim(out) == 0 else out


def jacobi_complex(n: int, al, be, z):
    """P_n^(al,be)(z) = (al+1)_n/n! 2F1(-n, n+al+be+1; al+1; (1-z)/2), complex safe."""
    pre = _poch(al + 1, n) / math.factorial(n)
    f = np.vectorize(lambda zz: _hyper_terminating([-n, n + al + be + 1], [al + 1], (1 - zz) / 2, n))
    out = pre * f(np.asarray(z, dtype=complex))
    return complex(out) if np.ndim(out) == 0 else out


def classical_poly(kind: str, n: int, arg, *params):
    """Reference polynomial by name: laguerre(alpha), jacobi(alpha, beta),
    wilson(a1..a4) at eta = x^2, continuous_hahn(a1..a4) at x."""
    kind = kind.lower()
    if kind == "laguerre":
        (al,) = params
        return special.eval_genlaguerre(n, al, arg)
    if kind == "jacobi":
        al, be = params
        if all(np.isrealobj(v) for v in (al, be, arg)):
            return special.eval_jacobi(n, al, be, arg)
        return jacobi_complex(n, al, be, arg)
    if kind == "wilson":
        return wilson(n, arg, *params)
    if kind in ("continuous_hahn", "chahn", "hahn"):
        return continuous_hahn(n, arg, *params)
    raise ValueError(f"unknown polynomial kind {kind!r}")
