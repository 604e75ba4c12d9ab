"""Build the Z2 x Z2 grading of so(4k) and print its certificates."""

from gamma_sym.grading import build_involutions, explicit_s3_fixture, graded_basis, symmetric_pair_check, verify_fixed_algebra, verify_grading

for k in (1, 2, 3):
    inv = build_involutions(k)
    print(f"k={k}: involution checks", all(c.passed for c in inv.checks()))
    dec = graded_basis(k)
    print("  dims", {g.value: n for g, n in dec.dims().items()})
    print(f"  grading certificate passed: {verify_grading(dec).passed}")
    fixed = verify_fixed_algebra(dec)
    print(f"  fixed algebra rank {fixed.info['rank']}, passed: {fixed.passed}")
    for g in ("a", "b", "c"):
        sp = symmetric_pair_check(dec, g)
        print(f"  g_e + g_{g}: dim {sp.info['dim']}, centre {sp.info['center_dim']}, derived {sp.info['derived_dim']}")

# The rank-1 literal matrices reproduce the same grading
cert = explicit_s3_fixture()
print("literal rank-1 fixture passed:", cert.passed, tuple(cert.decomposition.dims().values()))

dec = graded_basis(2)
print("first basis labels of g_a at k=2:", dec.components["a"].labels[:4])
