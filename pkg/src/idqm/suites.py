"""Named verification suites.

Each suite returns a list of :class:`~idqm.verify.VerificationReport`.  The CLI
``verify`` command and the acceptance tests both run these.  Random sample
points come from a ``numpy.random.Generator`` so a run is fixed by its seed.
"""
from __future__ import annotations

import math
from typing import Dict, Iterable, List, Optional

import numpy as np

from . import oracle as O
from . import qpoly
from . import systems as S
from . import verify as V
from .errors import DegenerateParameters, DomainError, ShiftedParamsOutOfRange
from .fixtures import all_fixtures
from .qdilog import (
    QDilogContext,
    eval_qdilog,
    eval_qdilog_integral,
    eval_qdilog_series,
    product_relation,
)
from .systems import SystemParams
from .verify import VerificationReport

PI = math.pi
SUITES = ("qdilog", "polynomials", "systems", "oracle", "quadrature", "limits", "all")
VIII_KS = (1, -1, 0)


def _rel(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.abs(b)))


def _sample_x(p: SystemParams, rng: np.random.Generator, n: int) -> np.ndarray:
    lo = 0.05 if p.case == "VII" else -4.0
    return rng.uniform(lo, 4.0, n)


def _draws(case: str, rng: np.random.Generator, count: int, n_cap: Optional[int] = None) -> List[SystemParams]:
    if case != "VIII":
        return [S.random_params(case, rng, n_cap=n_cap) for _ in range(count)]
    # cycle through the three admissible K
    return [S.random_params(case, rng, K=VIII_KS[i % 3], n_cap=n_cap) for i in range(count)]


# --------------------------------------------------------------------------
# quantum dilogarithm
# --------------------------------------------------------------------------

def qdilog_contexts() -> Dict[str, QDilogContext]:
    return {"gamma=0.7": QDilogContext(0.7), "gamma=pi/4": QDilogContext.from_rational(1, 4)}


def qdilog_suite(rng: np.random.Generator, grid: int = 20, points: int = 50) -> List[VerificationReport]:
    """Series vs integral representation on a grid in the strip, and the
    functional relations at random points of the plane."""
    reps = []
    for label, ctx in qdilog_contexts().items():
        w = ctx.half_width
        # an even grid keeps Re z = 0 (a two-sided limit of the series) off the nodes
        xs = np.linspace(-3.0, 3.0, grid)
        ys = np.linspace(-0.9 * w, 0.9 * w, grid)
        rho = 0.5 * min(PI / ctx.gamma, 1.0)
        diff = 0.0
        for x in xs:
            for y in ys:
                z = complex(x, y)
                diff = max(diff, abs(eval_qdilog_series(ctx, z) - eval_qdilog_integral(ctx, z, rho)))
        params = {"gamma": ctx.gamma, "rational": list(ctx.rational) if ctx.rational else None}
        reps.append(VerificationReport("qdilog_series_vs_integral", params, diff, 1e-10,
                                       notes=f"{label}; max abs difference on a {grid}x{grid} grid"))

        z = rng.uniform(-3, 3, points) + 1j * rng.uniform(-1.5 * w, 1.5 * w, points)
        g = ctx.gamma
        F = lambda u: eval_qdilog(ctx, u)
        res = {
            "gamma_shift": _rel(F(z + 1j * g) * (1 + np.exp(z)), F(z - 1j * g)),
            "pi_shift": _rel(F(z + 1j * PI) * (1 + np.exp(PI * z / g)), F(z - 1j * PI)),
            "conjugation": float(np.max(np.abs(np.conj(F(np.conj(z))) * F(z) - 1))),
            "product": _rel(F(z) * F(-z), product_relation(ctx, z)),
            "unit_modulus": float(np.max(np.abs(np.abs(F(z.real)) - 1))),
        }
        for k, r in res.items():
            reps.append(VerificationReport(f"qdilog_{k}", params, r, 1e-11,
                                           notes=f"{label}; {points} random points"))
    return reps


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

def polynomials_suite(rng: np.random.Generator, draws: int = 5, nmax: int = 6) -> List[VerificationReport]:
    """Askey-Wilson identities, the three-term recurrence, coefficient
    assembly and the g_n^(k) identity for every sinusoidal coordinate."""
    worst = {"duality_aw": 0.0, "duality_pt": 0.0, "reflection": 0.0, "root_choice": 0.0,
             "coefficients": 0.0, "recurrence": 0.0}
    etas = np.array([0.3 + 0.1j, -0.7 + 0.4j, 1.2 - 0.5j, 0.05 - 1.1j])
    for _ in range(draws):
        q = np.exp(-1j * rng.uniform(0.3, 2.5))
        prm = qpoly.AWParameterQuad(*(rng.uniform(0.4, 1.6, 4) * np.exp(1j * rng.uniform(0, 2 * PI, 4))))
        for n in range(nmax + 1):
            worst["duality_aw"] = max(worst["duality_aw"], qpoly.duality_check(n, prm, q, "aw", etas))
            worst["duality_pt"] = max(worst["duality_pt"], qpoly.duality_check(n, prm, q, "pt", etas))
            worst["reflection"] = max(worst["reflection"], qpoly.reflection_check(n, prm, q, etas))
            direct = qpoly.askey_wilson(n, etas, prm, q)
            scale = max(1.0, float(np.max(np.abs(direct))))
            for root in (1, -1):
                via = np.array([qpoly.askey_wilson_via_root(n, e, prm, q, root) for e in etas])
                worst["root_choice"] = max(worst["root_choice"], float(np.max(np.abs(via - direct)) / scale))
            for variant, f, fc in (("aw", qpoly.askey_wilson, qpoly.askey_wilson_coefficients),
                                   ("pt", qpoly.ptilde, qpoly.ptilde_coefficients)):
                val = f(n, etas, prm, q)
                c = fc(n, prm, q)
                worst["coefficients"] = max(worst["coefficients"], float(
                    np.max(np.abs(np.polyval(c[::-1], etas) - val)) / max(1.0, np.max(np.abs(val)))))
                if n < nmax:
                    A, B, C = qpoly.aw_recurrence(n, prm, q, variant)
                    lhs = etas * val
                    rhs = A * f(n + 1, etas, prm, q) + B * val
                    if n > 0:
                        rhs = rhs + C * f(n - 1, etas, prm, q)
                    worst["recurrence"] = max(worst["recurrence"], float(
                        np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(lhs)))))
    reps = [VerificationReport(f"poly_{k}", {"draws": draws, "nmax": nmax}, r, 1e-9)
            for k, r in worst.items()]
    g_worst = 0.0
    x = rng.uniform(-1.5, 1.5, 8) + 1j * rng.uniform(-0.2, 0.2, 8)
    for case in O.ALL_CASES:
        gamma = -0.7 if case == "IV" else 0.7
        for n in range(nmax + 1):
            g_worst = max(g_worst, O.g_identity_residual(case, n, x, gamma))
    reps.append(VerificationReport("g_coefficient_identity", {"cases": list(O.ALL_CASES), "nmax": nmax},
                                   g_worst, 1e-9))
    return reps


# --------------------------------------------------------------------------
# systems
# --------------------------------------------------------------------------

def zero_mode_reports(fixtures: Dict[str, SystemParams], rng: np.random.Generator,
                      points: int = 20) -> List[VerificationReport]:
    reps = []
    for name, p in fixtures.items():
        x = _sample_x(p, rng, points)
        r = V.zero_mode_residual(p, x)
        ph = S.groundstate(p, x)
        im = float(np.max(np.abs(ph.imag) / np.abs(ph)))
        reps.append(VerificationReport("zero_mode", p.as_dict(), r, 1e-9,
                                       notes=f"{name}; {points} real x; max |Im phi0|/|phi0| = {im:.1e}"))
    return reps


def htpn_reports(fixtures: Dict[str, SystemParams], rng: np.random.Generator,
                 points: int = 20) -> List[VerificationReport]:
    reps = []
    for name, p in fixtures.items():
        z = _sample_x(p, rng, points) + 1j * rng.uniform(-0.3, 0.3, points)
        r = max(V.htpn_residual(p, n, z) for n in range(p.n_max + 1))
        reps.append(VerificationReport("eigen_equation", p.as_dict(), r, 1e-9,
                                       notes=f"{name}; n = 0..{p.n_max} at {points} complex points"))
    return reps


def schrodinger_reports(fixtures: Dict[str, SystemParams], rng: np.random.Generator,
                        points: int = 20) -> List[VerificationReport]:
    reps = []
    for name, p in fixtures.items():
        x = _sample_x(p, rng, points)
        r = max(V.schrodinger_residual(p, n, x) for n in range(p.n_max + 1))
        reps.append(VerificationReport("schrodinger", p.as_dict(), r, 1e-9,
                                       notes=f"{name}; H phi_n = E_n phi_n at {points} real x"))
    return reps


def _nmax_reference(p: SystemParams) -> int:
    """Largest integer strictly below 1/2 - alpha - K pi/gamma, by counting."""
    bound = 0.5 - p.alpha - p.Keff * PI / p.gamma
    n = -1
    while n + 1 < bound:
        n += 1
    return n


def _raw_draw(case: str, rng: np.random.Generator, K: int):
    g = rng.uniform(0.25, 2.5)
    lo_band, hi_band = (g - PI, 0.0), (g, PI)
    if case != "VIII" or K == 1:
        bands = (lo_band, lo_band)
    elif K == -1:
        bands = (hi_band, hi_band)
    else:
        bands = (lo_band, hi_band) if rng.random() < 0.5 else (hi_band, lo_band)
    ga = [rng.uniform(*b) for b in bands]
    b = rng.uniform(-1, 1, 2) / g
    return dict(case=case, gamma=g, alpha1=ga[0] / g, alpha2=ga[1] / g, beta1=b[0], beta2=b[1], K=K)


def spectrum_shape_reports(rng: np.random.Generator, draws: int = 100) -> List[VerificationReport]:
    """E_0 = 0, strictly increasing E_n and n_max from the counting rule for
    random draws inside the range gates; counts any root-of-unity trigger."""
    reps = []
    for case in S.CASES:
        bad, triggers, accepted, tries = 0, 0, 0, 0
        while accepted < draws and tries < 50 * draws:
            tries += 1
            K = VIII_KS[accepted % 3] if case == "VIII" else 1
            kw = _raw_draw(case, rng, K)
            try:
                p = S.build_system(**kw)
            except DegenerateParameters:
                triggers += 1
                continue
            except DomainError:
                continue
            accepted += 1
            E = S.spectrum(p)
            ok = E[0] == 0 and bool(np.all(np.diff(E) > 0)) and p.n_max == _nmax_reference(p)
            bad += not ok
        reps.append(VerificationReport("spectrum_shape", {"case": case, "draws": accepted}, bad + triggers, 0,
                                       notes=f"{bad} shape failures, {triggers} root-of-unity triggers "
                                             f"in {accepted} accepted draws"))
    return reps


def systems_suite(fixtures: Dict[str, SystemParams], rng: np.random.Generator,
                  draws: int = 100) -> List[VerificationReport]:
    return (zero_mode_reports(fixtures, rng) + htpn_reports(fixtures, rng)
            + schrodinger_reports(fixtures, rng) + spectrum_shape_reports(rng, draws))


# --------------------------------------------------------------------------
# oracle
# --------------------------------------------------------------------------

def determinant_reports(rng: np.random.Generator, draws: int = 10, ncap: int = 6) -> List[VerificationReport]:
    reps = []
    for case in S.CASES:
        worst = 0.0
        for p in _draws(case, rng, draws):
            for n in range(1, min(p.n_max, ncap) + 1):
                worst = max(worst, O.determinant_vs_closed_form(p, n))
        reps.append(VerificationReport("determinant_vs_closed_form", {"case": case, "draws": draws}, worst,
                                       1e-10, notes=f"n <= min(n_max, {ncap}); relative coefficient-wise"))
    return reps


def closure_reports(fixtures: Dict[str, SystemParams], rng: np.random.Generator,
                    draws: int = 5) -> List[VerificationReport]:
    reps = []
    for case in S.CASES:
        systems = [p for p in fixtures.values() if p.case == case] + _draws(case, rng, draws, n_cap=12)
        worst, constr = 0.0, 0.0
        for p in systems:
            worst = max(worst, O.verify_closure(p, p.n_max))
            c = O.closure_coefficients(p)
            constr = max(constr, abs(c.rm1_2), abs(c.r0_2 - c.r1_1), abs(c.r0_1 - 2 * c.r1_0))
        reps.append(VerificationReport("closure", {"case": case, "systems": len(systems)}, worst, 1e-9,
                                       notes="double commutator at n = n_max"))
        reps.append(VerificationReport("closure_constraints", {"case": case}, constr, 0.0,
                                       notes="rm1_2 = 0, r0_2 = r1_1, r0_1 = 2 r1_0"))
    return reps


def shape_invariance_reports(fixtures: Dict[str, SystemParams], rng: np.random.Generator,
                             points: int = 12) -> List[VerificationReport]:
    reps = []
    for name, p in fixtures.items():
        x = _sample_x(p, rng, points)
        z = x + 1j * rng.uniform(-0.2, 0.2, points)
        try:
            res = O.shape_invariance_check(p, x)
        except ShiftedParamsOutOfRange:
            # lambda + delta leaves the range; nothing to check
            continue
        fb = [O.shift_residuals(p, n, z) for n in range(1, p.n_max + 1)]
        res["forward_shift"] = max(r[0] for r in fb)
        res["backward_shift"] = max(r[1] for r in fb)
        ps = O.shifted_system(p)
        res["energy_shift"] = max(abs(S.energy(p, n) - S.energy(ps, n - 1) - S.energy(p, 1))
                                  / max(1.0, abs(S.energy(p, n))) for n in range(1, p.n_max + 1))
        r = max(res.values())
        reps.append(VerificationReport("shape_invariance", p.as_dict(), r, 1e-9,
                                       notes=name + "; " + ", ".join(f"{k} {v:.1e}" for k, v in res.items()),
                                       data=res))
        prod = max(abs(S.energy(p, n) - np.prod(O.fn_bn(p, n))) for n in range(1, p.n_max + 1))
        reps.append(VerificationReport("energy_factorisation", p.as_dict(), prod, 4 * np.finfo(float).eps,
                                       notes=f"{name}; E_n = f_n b_(n-1)"))
    return reps


def norm_recurrence_reports(fixtures: Dict[str, SystemParams]) -> List[VerificationReport]:
    reps = []
    for name, p in fixtures.items():
        three, shift = 0.0, []
        for n in range(1, p.n_max + 1):
            r = O.norm_recurrence_residuals(p, n)
            three = max(three, r["three_term"])
            if math.isfinite(r["shift"]):
                shift.append(r["shift"])
        reps.append(VerificationReport("norm_recurrence_three_term", p.as_dict(), three, 1e-7, notes=name))
        if shift:
            reps.append(VerificationReport("norm_recurrence_shift", p.as_dict(), max(shift), 1e-7, notes=name))
    return reps


def oracle_suite(fixtures: Dict[str, SystemParams], rng: np.random.Generator,
                 draws: int = 10) -> List[VerificationReport]:
    return (determinant_reports(rng, draws) + closure_reports(fixtures, rng)
            + shape_invariance_reports(fixtures, rng) + norm_recurrence_reports(fixtures))


# --------------------------------------------------------------------------
# quadrature
# --------------------------------------------------------------------------

def hermiticity_reports(fixtures: Dict[str, SystemParams],
                        cfg: V.QuadratureConfig = V.QuadratureConfig()) -> List[VerificationReport]:
    reps = []
    for name, p in fixtures.items():
        worst, pairs = 0.0, 0
        for n1 in range(p.n_max + 1):
            for n2 in range(n1, p.n_max + 1):
                try:
                    V.degree_bound(p, n1, n2)
                except DomainError:
                    continue
                worst = max(worst, V.hermiticity_residual(p, n1, n2, cfg))
                pairs += 1
        reps.append(VerificationReport("hermiticity", p.as_dict(), worst, 1e-8,
                                       notes=f"{name}; {pairs} admissible degree pairs"))
    return reps


def quadrature_suite(fixtures: Dict[str, SystemParams],
                     cfg: V.QuadratureConfig = V.QuadratureConfig()) -> List[VerificationReport]:
    reps = []
    for name, p in fixtures.items():
        _, r = V.orthogonality_report(p, cfg)
        for rep in r:
            rep.notes = f"{name}; {rep.notes}"
        reps += r
    return reps + hermiticity_reports(fixtures, cfg)


# --------------------------------------------------------------------------
# limits
# --------------------------------------------------------------------------

def limits_suite(cases: Optional[Iterable[str]] = None) -> List[VerificationReport]:
    cases = list(S.CASES) if cases is None else [S._norm_case(c) for c in cases]
    reps = [V.oqm_limit_check(c) for c in cases]
    reps += [V.wilson_hahn_limit_check(c) for c in cases if c in ("VI", "VII")]
    return reps


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

def run_suite(name: str, rng: np.random.Generator, fixtures: Optional[Dict[str, SystemParams]] = None,
              cases: Optional[Iterable[str]] = None) -> List[VerificationReport]:
    """Run one named suite (or ``all``) on the given systems (default: shipped fixtures)."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if fixtures is None:
        fixtures = all_fixtures()
    if cases is not None:
        keep = {S._norm_case(c) for c in cases}
        fixtures = {k: p for k, p in fixtures.items() if p.case in keep}
    runners = {
        "qdilog": lambda: qdilog_suite(rng),
        "polynomials": lambda: polynomials_suite(rng),
        "systems": lambda: systems_suite(fixtures, rng),
        "oracle": lambda: oracle_suite(fixtures, rng),
        "quadrature": lambda: quadrature_suite(fixtures),
        "limits": lambda: limits_suite(cases),
    }
    if name == "all":
        return [r for k in SUITES[:-1] for r in runners[k]()]
    return runners[name]()
