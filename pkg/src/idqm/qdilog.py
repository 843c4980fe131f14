"""Quantum dilogarithm Phi_gamma(z).

Phi_gamma is meromorphic in z.  In the strip |Im z| < gamma + pi it is

    Phi_gamma(z) = exp( int_{R+i0} exp(-izt) / (4 sinh(gamma t) sinh(pi t)) dt/t ),

and it is continued to the whole plane with

    Phi(z + i gamma) / Phi(z - i gamma) = 1 / (1 + e^z).

Three independent evaluators are provided:

* :func:`series_log` -- the exponential series, valid on either open half
  plane Re z > 0 / Re z < 0.  This is the production path away from the
  imaginary axis.
* :func:`contour_log` -- trapezoidal quadrature of the defining integral on a
  horizontal line Im t = -+c.  The integrand is analytic in a strip around
  that line and decays exponentially, so the trapezoidal rule converges
  geometrically.  Used near Re z = 0 where the series is slow.
* :func:`eval_qdilog_integral` -- adaptive quadrature of the half line plus
  semicircle split.  This is the oracle; it shares no code with the other two.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from scipy import integrate, special

from .errors import (
    DomainError,
    InvalidRho,
    PoleProximity,
    QuadratureNotConverged,
    StripViolation,
    TruncationNotConverged,
)

PI = math.pi

# |Re z| at or above which log_qdilog/eval_qdilog use the series
SERIES_THRESHOLD = 0.5
# largest tolerated rounding-error estimate of a series log before falling back
ROUNDING_LIMIT = 1e-12


@dataclass(frozen=True)
class QDilogContext:
    """Immutable evaluation context for Phi_gamma.

    ``rational=(M, N)`` declares gamma = M*pi/N exactly (M, N coprime); the
    rational series is then used.  Floating gamma is never sniffed for
    rationality.
    """

    gamma: float
    rational: Optional[Tuple[int, int]] = None
    series_truncation: int = 10000
    strip_margin: float = field(default=PI)

    def __post_init__(self):
        if not (0 < self.gamma < PI):
            # gamma >= pi (double poles at gamma = pi) is not supported
            raise DomainError(f"gamma must lie in (0, pi), got {self.gamma}")
        if self.rational is not None:
            M, N = self.rational
            if M <= 0 or N <= 0 or math.gcd(M, N) != 1:
                raise DomainError(f"rational gamma needs coprime positive M, N; got {M}/{N}")
            if abs(self.gamma - M * PI / N) > 1e-14 * max(1.0, self.gamma):
                raise DomainError(f"gamma={self.gamma} is not {M}*pi/{N}")
        if self.series_truncation < 1:
            raise DomainError("series_truncation must be positive")
        if self.strip_margin < 0:
            raise DomainError("strip_margin must be non-negative")

    @classmethod
    def from_rational(cls, M: int, N: int, **kw) -> "QDilogContext":
        """Context for gamma = (M/N) pi, reducing M/N to lowest terms."""
        f = Fraction(M, N)
        return cls(f.numerator * PI / f.denominator, (f.numerator, f.denominator), **kw)

    def scaled(self, factor: Fraction | int) -> "QDilogContext":
        """Context for factor*gamma, keeping the rationality declaration."""
        factor = Fraction(factor)
        if self.rational is None:
            return QDilogContext(self.gamma * float(factor), None, self.series_truncation, self.strip_margin)
        M, N = self.rational
        f = Fraction(M, N) * factor
        return QDilogContext(f.numerator * PI / f.denominator, (f.numerator, f.denominator),
                             self.series_truncation, self.strip_margin)

    @property
    def half_width(self) -> float:
        """Half width gamma + pi of the strip of the integral representation."""
        return self.gamma + PI


@dataclass(frozen=True)
class PoleZeroLattice:
    kind: str  # "pole" or "zero"
    n1: int
    n2: int
    location: complex


def lattice_point(ctx: QDilogContext, kind: str, n1: int, n2: int) -> PoleZeroLattice:
    if n1 < 1 or n2 < 1:
        raise ValueError("lattice indices start at 1")
    y = (2 * n1 - 1) * ctx.gamma + (2 * n2 - 1) * PI
    if kind == "pole":
        return PoleZeroLattice("pole", n1, n2, complex(0.0, y))
    if kind == "zero":
        return PoleZeroLattice("zero", n1, n2, complex(0.0, -y))
    raise ValueError(kind)


def pole_lattice(ctx: QDilogContext, kind: str, max_imag: float) -> list[PoleZeroLattice]:
    """All poles (or zeros) with |Im| <= max_imag, sorted by |Im|."""
    out = []
    n2 = 1
    while (2 * n2 - 1) * PI + ctx.gamma <= max_imag:
        n1 = 1
        while (2 * n1 - 1) * ctx.gamma + (2 * n2 - 1) * PI <= max_imag:
            out.append(lattice_point(ctx, kind, n1, n2))
            n1 += 1
        n2 += 1
    out.sort(key=lambda p: abs(p.location.imag))
    return out


def nearest_pole(ctx: QDilogContext, z: complex) -> Tuple[complex, float]:
    """Nearest pole of Phi_gamma to z and its distance."""
    z = complex(z)
    y = max(z.imag, ctx.gamma + PI)
    best, dist = None, math.inf
    n2 = 1
    while (2 * n2 - 1) * PI + ctx.gamma <= y + ctx.gamma + PI:
        rem = z.imag - (2 * n2 - 1) * PI
        n1c = max(1, int(round((rem / ctx.gamma + 1) / 2)))
        for n1 in (n1c - 1, n1c, n1c + 1):
            if n1 < 1:
                continue
            loc = complex(0.0, (2 * n1 - 1) * ctx.gamma + (2 * n2 - 1) * PI)
            d = abs(z - loc)
            if d < dist:
                best, dist = loc, d
        n2 += 1
    return best, dist


def _quadratic(gamma, z):
    return 1j / (4 * gamma) * (z * z + (gamma * gamma + PI * PI) / 3)


def product_relation(ctx: QDilogContext, z):
    """exp(i/(4 gamma) (z^2 + (gamma^2 + pi^2)/3)) = Phi(z) Phi(-z)."""
    return np.exp(_quadratic(ctx.gamma, np.asarray(z, dtype=complex)))


# --------------------------------------------------------------------------
# series
# --------------------------------------------------------------------------

def _series_sum(ctx: QDilogContext, w: np.ndarray, tol: float = 1e-17,
                max_rounding: float = ROUNDING_LIMIT) -> np.ndarray:
    """i * sum_n (-1)^n/(2n) (e^{-pi w n/gamma}/sin(pi^2 n/gamma) + e^{-w n}/sin(gamma n)).

    ``w`` must have Re w > 0.  For rational gamma the singular index pairs
    are replaced by their finite limit.
    """
    g = ctx.gamma
    xmin = float(np.min(w.real))
    nneed = int(math.ceil((math.log(1 / tol) + 2) / xmin)) + 8
    if nneed > ctx.series_truncation:
        raise TruncationNotConverged(
            f"series needs {nneed} terms at Re z={xmin:.3g}, cap is {ctx.series_truncation}")
    n = np.arange(1, nneed + 1, dtype=float)
    ni = np.arange(1, nneed + 1)
    sign = np.where(ni % 2 == 0, 1.0, -1.0)
    s_pi = np.sin(PI * PI * n / g)
    s_g = np.sin(g * n)
    if ctx.rational is None:
        c_pi = sign / (2 * n * s_pi)
        c_g = sign / (2 * n * s_g)
    else:
        M, N = ctx.rational
        c_pi = np.where(ni % M != 0, sign / (2 * n * np.where(ni % M != 0, s_pi, 1.0)), 0.0)
        c_g = np.where(ni % N != 0, sign / (2 * n * np.where(ni % N != 0, s_g, 1.0)), 0.0)
    W = w[..., None]
    t_pi = c_pi * np.exp(-PI * W * n / g)
    t_g = c_g * np.exp(-W * n)
    total = np.sum(t_pi + t_g, axis=-1)
    # near-rational gamma: a small sin(arg) carries the absolute rounding error
    # eps*|arg| of its argument, so each term has relative error eps*(1 + |arg/sin|)
    cond_pi = 1 + PI * PI * n / (g * np.maximum(np.abs(s_pi), 1e-300))
    cond_g = 1 + g * n / np.maximum(np.abs(s_g), 1e-300)
    if ctx.rational is not None:
        cond_pi, cond_g = np.where(ni % M != 0, cond_pi, 1.0), np.where(ni % N != 0, cond_g, 1.0)
    err = np.finfo(float).eps * np.max(np.sum(np.abs(t_pi) * cond_pi + np.abs(t_g) * cond_g, axis=-1))
    if err > max_rounding:
        raise TruncationNotConverged(
            f"series rounding error ~{err:.1e} (small divisors); declare gamma rational or use the contour")
    if ctx.rational is not None:
        M, N = ctx.rational
        k = np.arange(1, nneed // N + 2, dtype=float)
        ki = np.arange(1, nneed // N + 2)
        sk = np.where(((M + N) * ki) % 2 == 0, 1.0, -1.0)
        total = total + np.sum(
            -sk * np.exp(-W * N * k) * (W * N * k + 1) / (2 * N * N * k * k * g), axis=-1)
    return 1j * total


def series_log(ctx: QDilogContext, z, max_rounding: float = ROUNDING_LIMIT) -> np.ndarray:
    """log Phi_gamma(z) from the exponential series; requires Re z != 0.

    The result is the analytic logarithm that vanishes as Re z -> -inf, so it
    agrees with the integral exponent inside the strip.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.real == 0):
        raise DomainError("series_log needs Re z != 0")
    out = np.empty(z.shape, dtype=complex)
    pos = z.real > 0
    if np.any(pos):
        zp = z[pos]
        out[pos] = _quadratic(ctx.gamma, zp) + _series_sum(ctx, zp, max_rounding=max_rounding)
    if np.any(~pos):
        out[~pos] = -_series_sum(ctx, -z[~pos], max_rounding=max_rounding)
    return out


def eval_qdilog_series(ctx: QDilogContext, z, eps: float = 1e-2) -> complex:
    """Phi_gamma(z) by the series, for a scalar z in the strip.

    On Re z = 0 the two one-sided limits at Re z = +-eps are evaluated and
    must agree; the average is returned.
    """
    z = complex(z)
    if abs(z.imag) >= ctx.half_width:
        raise StripViolation(f"|Im z|={abs(z.imag):.6g} >= gamma+pi={ctx.half_width:.6g}")
    if z.real != 0:
        return complex(np.exp(series_log(ctx, z)))
    # the two one-sided values differ by O(eps); the midpoint is O(eps^2)
    # (far above the rounding of the long series near the axis)
    lo = complex(np.exp(series_log(ctx, z - eps, max_rounding=1e-8)))
    hi = complex(np.exp(series_log(ctx, z + eps, max_rounding=1e-8)))
    if abs(lo - hi) > 10 * eps * max(abs(lo), abs(hi), 1.0) * (1 + abs(z.imag)):
        raise TruncationNotConverged("one-sided limits at Re z = 0 disagree")
    return 0.5 * (lo + hi)


# --------------------------------------------------------------------------
# contour quadrature (trapezoidal, shifted line)
# --------------------------------------------------------------------------

def _logsinh(w):
    # log sinh(w) up to a multiple of i*pi, without overflow
    w = np.asarray(w, dtype=complex)
    flip = w.real < 0
    s = np.where(flip, -w, w)
    return s + np.log1p(-np.exp(-2 * s)) - math.log(2) + np.where(flip, 1j * PI, 0)


def _contour_nodes(ctx: QDilogContext, xmax: float, ymax: float):
    g = ctx.gamma
    m = min(PI / g, 1.0)
    c = 0.5 * m
    # analyticity half-width 0.75c: discretisation error ~ exp(-2 pi d / h)
    h = 2 * PI * 0.75 * c / 43.0
    floor = math.log(1 + 1 / (g * c) + 1 / c)
    L = 4.0
    while True:
        # log of the integrand bound at |u| = L
        t = L + 1j * c
        lb = ymax * L + c * xmax - math.log(4 * L) - float(
            (_logsinh(g * t) + _logsinh(PI * t)).real)
        if lb < math.log(1e-19) - floor or L > 1e4:
            break
        L *= 1.25
    u = np.arange(-L, L + 0.5 * h, h)
    return c, h, u


def contour_log(ctx: QDilogContext, z) -> np.ndarray:
    """log Phi_gamma(z) by trapezoidal quadrature along Im t = -c (Re z >= 0)
    or Im t = +c (Re z < 0).

    Valid in the whole strip, but node count grows as |Im z| approaches
    gamma + pi; callers reduce Im z first (see :func:`log_qdilog`).
    """
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z.imag) >= ctx.half_width):
        raise StripViolation("contour_log needs |Im z| < gamma + pi")
    flat = z.ravel()
    out = np.empty(flat.shape, dtype=complex)
    if flat.size == 0:
        return out.reshape(z.shape)
    g = ctx.gamma
    c, h, u = _contour_nodes(ctx, float(np.max(np.abs(flat.real))), float(np.max(np.abs(flat.imag))))
    for sgn in (1, -1):
        sel = (flat.real >= 0) if sgn == 1 else (flat.real < 0)
        if not np.any(sel):
            continue
        t = u - 1j * c * sgn
        logbase = -(_logsinh(g * t) + _logsinh(PI * t) + np.log(4 * t))
        zs = flat[sel]
        acc = np.empty(zs.shape, dtype=complex)
        step = max(1, 2_000_000 // u.size)
        for i in range(0, zs.size, step):
            blk = zs[i:i + step]
            acc[i:i + step] = h * np.sum(np.exp(-1j * blk[:, None] * t[None, :] + logbase), axis=1)
        if sgn == 1:
            acc = acc + _quadratic(g, zs)
        out[sel] = acc
    return out.reshape(z.shape)


def _log1pexp(w):
    # principal Log(1 + e^w); the split keeps it accurate for large Re w
    w = np.asarray(w, dtype=complex)
    big = w.real > 0
    out = np.empty_like(w)
    out[big] = w[big] + np.log1p(np.exp(-w[big]))
    out[~big] = np.log1p(np.exp(w[~big]))
    return out


def _reduce_imag(ctx: QDilogContext, z: np.ndarray, target: float):
    """Shift Im z into [-target, target] (target >= gamma) by steps of 2i*gamma.

    Returns (z_reduced, log_factor) with log Phi(z) = log Phi(z_red) + log_factor.
    Inside the strip every Log(1 + e^w) is taken with |Im w| < pi, so the
    accumulated logarithm is the analytic one.
    """
    g = ctx.gamma
    z = z.copy()
    acc = np.zeros(z.shape, dtype=complex)
    while True:
        up = z.imag > target
        dn = z.imag < -target
        if not (np.any(up) or np.any(dn)):
            return z, acc
        if np.any(up):
            acc[up] -= _log1pexp(z[up] - 1j * g)
            z[up] -= 2j * g
        if np.any(dn):
            acc[dn] += _log1pexp(z[dn] + 1j * g)
            z[dn] += 2j * g


def log_qdilog(ctx: QDilogContext, z) -> np.ndarray:
    """Analytic log Phi_gamma(z) in the strip |Im z| < gamma + pi (vectorised).

    This is the exponent of the integral representation, so it is single
    valued in the strip and tends to 0 as Re z -> -inf.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z.imag) >= ctx.half_width):
        raise StripViolation(
            f"|Im z| max {np.max(np.abs(z.imag)):.6g} >= gamma+pi={ctx.half_width:.6g}")
    out = np.empty(z.shape, dtype=complex)
    far = np.abs(z.real) >= SERIES_THRESHOLD
    near = ~far
    if np.any(far):
        try:
            out[far] = series_log(ctx, z[far])
        except TruncationNotConverged:
            near = np.ones(z.shape, dtype=bool)
    if np.any(near):
        zr, acc = _reduce_imag(ctx, z[near], max(ctx.gamma, ctx.half_width - ctx.strip_margin))
        out[near] = contour_log(ctx, zr) + acc
    return out


def eval_qdilog(ctx: QDilogContext, z, exclusion: Optional[float] = None):
    """Phi_gamma(z) anywhere off the pole lattice.

    Away from the imaginary axis the series is used directly (it converges on
    the whole open half plane).  Near the axis Im z is mapped into the strip
    core with the functional equation.  The accumulated factor is exponentiated,
    so no branch choice enters the value.
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if exclusion is None:
        exclusion = 1e-6 * ctx.half_width
    out = np.empty(z.shape, dtype=complex)
    for idx in np.ndindex(z.shape):
        zz = complex(z[idx])
        if abs(zz.real) < 2 * exclusion + 1e-300 and zz.imag > 0:
            loc, d = nearest_pole(ctx, zz)
            if d < exclusion:
                raise PoleProximity(loc, d)
    far = np.abs(z.real) >= SERIES_THRESHOLD
    logs = np.empty(z.shape, dtype=complex)
    near = ~far
    if np.any(far):
        try:
            logs[far] = series_log(ctx, z[far])
        except TruncationNotConverged:
            near = np.ones(z.shape, dtype=bool)
    if np.any(near):
        zr, acc = _reduce_imag(ctx, z[near], max(ctx.gamma, ctx.half_width - ctx.strip_margin))
        logs[near] = contour_log(ctx, zr) + acc
    out = np.exp(logs)
    return complex(out[0]) if scalar else out


# --------------------------------------------------------------------------
# oracle: half line + semicircle
# --------------------------------------------------------------------------

def _cquad(f, a, b, epsabs, epsrel, limit):
    with warnings.catch_warnings():
        # the error estimate is checked by the caller
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return _cquad_raw(f, a, b, epsabs, epsrel, limit)


def _cquad_raw(f, a, b, epsabs, epsrel, limit):
    re, er = integrate.quad(lambda t: f(t).real, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit)
    im, ei = integrate.quad(lambda t: f(t).imag, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit)
    return complex(re, im), math.hypot(er, ei)


def eval_qdilog_integral(ctx: QDilogContext, z, rho: float, *, log: bool = False,
                         epsabs: float = 1e-15, epsrel: float = 1e-13):
    """Phi_gamma(z) from the half-line + semicircle split of the integral.

    The half-line piece runs over [rho, T] with T chosen so the integrand bound
    e^{|Im z| t} / e^{(gamma+pi) t} is below 1e-18.
    """
    z = complex(z)
    g = ctx.gamma
    if not (0 < rho < min(PI / g, 1.0)):
        raise InvalidRho(f"rho={rho} outside (0, {min(PI / g, 1.0)})")
    gap = g + PI - abs(z.imag)
    if gap <= 0:
        raise StripViolation(f"|Im z|={abs(z.imag):.6g} >= gamma+pi")
    T = max(rho * 2, (math.log(1e18) + 4) / gap)

    def half(t):
        lam = (g + PI) * t
        num = (np.exp(1j * z * t - lam) - np.exp(-1j * z * t - lam)) / 2j
        den = (1 - math.exp(-2 * g * t)) * (1 - math.exp(-2 * PI * t)) * 0.25
        return num / (den * 2j * t)

    def arc(th):
        t = rho * np.exp(1j * th)
        return np.exp(-1j * z * t) / (4j * np.sinh(g * t) * np.sinh(PI * t))

    # split the oscillatory half line so QUADPACK sees a few periods per panel
    period = 2 * PI / max(abs(z.real), 1.0)
    edges = np.unique(np.concatenate([np.arange(rho, T, 8 * period), [T]]))
    tot, err = 0j, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        v, e = _cquad(half, a, b, epsabs, epsrel, 200)
        tot += v
        err += e
    v, e = _cquad(arc, 0.0, PI, epsabs, epsrel, 200)
    tot += v
    err += e
    if not math.isfinite(abs(tot)) or err > 1e-8 * max(1.0, abs(tot)):
        raise QuadratureNotConverged(f"integral representation error estimate {err:.3g}")
    return tot if log else complex(np.exp(tot))


# --------------------------------------------------------------------------
# dilogarithm and Faddeev's product form
# --------------------------------------------------------------------------

def dilog(z):
    """Li_2(z) = sum z^k / k^2, continued to the cut plane C \\ [1, inf)."""
    z = np.asarray(z, dtype=complex)
    out = special.spence(1 - z)
    return complex(out) if out.ndim == 0 else out


def qpochhammer_inf(x, q, tol: float = 1e-17, max_terms: int = 100000) -> complex:
    """(x; q)_inf for |q| < 1."""
    x, q = complex(x), complex(q)
    if abs(q) >= 1:
        raise DomainError(f"(x;q)_inf needs |q| < 1, got |q|={abs(q):.6g}")
    prod = 1.0 + 0j
    term = x
    for _ in range(max_terms):
        prod *= 1 - term
        if abs(term) < tol:
            return prod
        term *= q
    raise TruncationNotConverged("q-product did not converge")


def eval_faddeev_product(b, z, tol: float = 1e-17) -> complex:
    """Faddeev's Phi^F_b(z) from its infinite product form (Im b^2 > 0)."""
    b, z = complex(b), complex(z)
    if (b * b).imag <= 0:
        raise DomainError("product form needs Im b^2 > 0 (|q| = 1 is outside its domain)")
    q = np.exp(2j * PI * b * b)
    qt = np.exp(-2j * PI / (b * b))
    num = qpochhammer_inf(-np.exp(2 * PI * z / b - 1j * PI / (b * b)), qt, tol)
    den = qpochhammer_inf(-np.exp(2 * PI * b * z + 1j * PI * b * b), q, tol)
    return num / den
