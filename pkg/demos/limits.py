"""Show how the systems approach their undeformed counterparts.

As gamma -> 0 the ground states and rescaled eigenpolynomials tend to
ordinary quantum mechanics (see ``verify.OQM_TARGETS`` for the target of
each case).  As R -> infinity cases VI and VII tend to continuous Hahn and
Wilson polynomials.  Run with ``python3 demos/limits.py``.
"""
from idqm import verify as V


def main():
    for case in ("V", "VI", "VII", "VIII"):
        r = V.oqm_limit_check(case)
        print(f"gamma -> 0, case {case}: {r.notes}")
        for k, d in r.data["distances"].items():
            print(f"   {k:<5}", "  ".join(f"{v:.2e}" for v in d), f"  order {r.data['orders'][k]:.2f}")
    for case in ("VI", "VII"):
        r = V.wilson_hahn_limit_check(case)
        print(f"R -> infinity, case {case}: {r.notes}")
        for k, d in r.data["distances"].items():
            print(f"   {k:<5}", "  ".join(f"{v:.2e}" for v in d))


if __name__ == "__main__":
    main()
