"""Compare the two Gram conventions: invariance, form space, Killing form, natural reductivity."""

from fractions import Fraction as F

from gamma_sym.grading import graded_basis
from gamma_sym.metrics import (
    MetricParams,
    build_form,
    invariance_residual,
    invariant_form_space,
    killing_restriction,
    natural_reductivity_check,
    spans_equal,
    unit_forms,
)

for k in (1, 2):
    dec = graded_basis(k)
    space = invariant_form_space(dec)
    print(f"k={k}: invariant form space has dim {len(space)}")
    for conv in ("split", "invariant"):
        print(f"  {conv}: unit forms span it: {spans_equal(unit_forms(dec, conv), space)}")
        for raw in ("1,1/2,1,1/2,1,1/2", "1,1,2,-1,3,1/3"):
            p = MetricParams.parse(raw)
            res = invariance_residual(dec, build_form(dec, p, conv))
            print(f"    params {p}: invariance residual {res.value}")

    _, kp = killing_restriction(dec)
    print(f"  Killing form restricted to m has params {kp}")

dec = graded_basis(2)
for raw in ("1,1/2,1,1/2,1,1/2", "-2,-1,-2,-1,-2,-1", "1,1/2,2,1,1,1/2", "1,1,1,1,1,1"):
    p = MetricParams.parse(raw)
    ok = natural_reductivity_check(dec, build_form(dec, p)).passed
    print(f"naturally reductive at {p}: {ok}")

# On the line lam1 = 2 lam2 both conventions give the same matrix
p = MetricParams.uniform(F(2), F(1))
same = build_form(dec, p, "split").matrix == build_form(dec, p, "invariant").matrix
print("conventions agree on lam1 = 2 lam2:", bool(same))
