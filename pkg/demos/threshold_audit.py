"""Locate the Riemannian threshold with the inertia oracle and compare candidate formulas."""

from gamma_sym.signature import quadratic_fraction, riemann_threshold, threshold_audit

for conv in ("split", "invariant"):
    print(f"convention {conv}")
    for k in (1, 2, 3, 4):
        rep = threshold_audit(k, conv)
        print(f"  k={k}: oracle boundary {rep.boundary}, closed form {riemann_threshold(k, conv)}, passed {rep.passed}")
        for name, value in rep.candidates.items():
            mark = "matches" if value == rep.boundary else "differs"
            print(f"      {name:28s} {str(value):6s} {mark}")

print("quadratic fraction at m=2, 3, 4:", [str(quadratic_fraction(m)) for m in (2, 3, 4)])
