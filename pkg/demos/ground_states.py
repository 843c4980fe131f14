"""Walk through the four fixtures' spectra, ground states and norms.

Run with ``python3 demos/ground_states.py``.
"""
import numpy as np

from idqm import systems as S
from idqm import verify as V
from idqm.fixtures import all_fixtures


def main():
    for name, p in all_fixtures().items():
        print(f"== {name}: case {p.case}, gamma = {p.gamma:.6g}, n_max = {p.n_max}")
        E = S.spectrum(p)
        print("   energies      ", np.array2string(E, precision=6))

        # phi0 is real on the real line and decays at the ends of the domain
        x = np.linspace(0.1, 4.0, 5) if p.case == "VII" else np.linspace(-4, 4, 5)
        print("   phi0(x)       ", np.array2string(S.groundstate(p, x).real, precision=3))
        right, left = S.decay_exponents(p)
        print(f"   decay exponents right {right:.4f}, left {left:.4f}")

        # conjectured norms against the quadrature of phi0^2 |P_n|^2
        Gn, reps = V.orthogonality_report(p)
        h = [S.conjectured_norm(p, n).real for n in range(p.n_max + 1)]
        print("   h_n           ", np.array2string(np.array(h), precision=6))
        for r in reps:
            print(f"   {r.check_id:<16} residual {r.residual:.2e}")


if __name__ == "__main__":
    main()
