"""Shipped parameter sets used by the tests, the CLI and the demos.

Each entry is a keyword dict for :func:`idqm.systems.build_system`.  The
case VIII sets cover K = 1, -1, 0; VI mirrors V.
"""
from __future__ import annotations

import math

from .systems import SystemParams, build_system

_G = 0.6

FIXTURES = {
    "vii_basic": dict(case="VII", rational=(1, 5), alpha1=-3.0, alpha2=-3.0),
    "vii_two": dict(case="VII", rational=(1, 5), alpha1=-3.2, alpha2=-3.6, beta1=0.3, beta2=-0.5),
    "v_two": dict(case="V", gamma=_G, alpha1=-2.2 / _G, alpha2=-2.1 / _G, beta1=0.4, beta2=-0.2),
    "vi_two": dict(case="VI", gamma=_G, alpha1=-2.2 / _G, alpha2=-2.1 / _G, beta1=0.4, beta2=-0.2),
    "viii_k1": dict(case="VIII", gamma=_G, alpha1=-2.2 / _G, alpha2=-2.1 / _G, beta1=0.3, beta2=0.5, K=1),
    "viii_km1": dict(case="VIII", gamma=_G, alpha1=0.9 / _G, alpha2=1.0 / _G, beta1=0.2, beta2=-0.4, K=-1),
    "viii_k0": dict(case="VIII", rational=(1, 5), alpha1=-2.0 * 5 / math.pi, alpha2=0.9 * 5 / math.pi,
                    beta1=0.3, beta2=0.1, K=0),
}


def fixture(name: str) -> SystemParams:
    return build_system(**FIXTURES[name])


def all_fixtures() -> dict:
    return {k: fixture(k) for k in FIXTURES}
