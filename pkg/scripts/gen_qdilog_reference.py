"""Regenerate tests/data/qdilog_reference.json.

log Phi_gamma(z) is integrated in 30-digit arithmetic on the line Im t = c,
0 < c < min(1, pi/gamma), which passes above the double pole at t = 0 and
below every other pole.  This shares no code with the package.
"""
import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 30

POINTS = [0, 0.5, -1.25, 2.0 + 1.5j, -0.7 - 2.2j, 0.3 + 3.0j, -2.5 + 0.4j, 1.1 - 3.4j]
GAMMAS = {"0.7": mp.mpf("0.7"), "pi/4": mp.pi / 4, "1.9": mp.mpf("1.9")}


def log_phi(gamma, z):
    c = min(mp.mpf(1), mp.pi / gamma) / 2
    f = lambda s: (mp.exp(-1j * z * (s + 1j * c))
                   / (4 * mp.sinh(gamma * (s + 1j * c)) * mp.sinh(mp.pi * (s + 1j * c)) * (s + 1j * c)))
    return mp.quad(f, [-mp.inf, -5, -1, 0, 1, 5, mp.inf])


def main():
    out = []
    for label, g in GAMMAS.items():
        for z in POINTS:
            zz = mp.mpc(z)
            if abs(zz.imag) >= g + mp.pi:
                continue
            v = mp.exp(log_phi(g, zz))
            out.append({"gamma": label, "z": [float(zz.real), float(zz.imag)],
                        "phi": [float(v.real), float(v.imag)]})
    path = Path(__file__).resolve().parent.parent / "tests" / "data" / "qdilog_reference.json"
    path.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {len(out)} values to {path}")


if __name__ == "__main__":
    main()
