from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gamma_sym.exact import DimensionError, ExactMatrix
from gamma_sym.grading import (
    CHARACTER,
    LABELS,
    ODD_LABELS,
    S3_J_A,
    S3_J_B,
    InvolutionSet,
    KleinLabel,
    build_involutions,
    cached_graded_basis,
    decompose,
    explicit_s3_fixture,
    grading_document,
    graded_basis,
    klein_mul,
    project,
    relabeled,
    s3_involutions,
    symmetric_pair_check,
    tau,
    verify_fixed_algebra,
    verify_grading,
)
from gamma_sym.lie import killing_form, so_basis, structure_constants

E, A, B, C = LABELS

# Block patterns: entry (row, col) -> (sign, species, transposed). Species 0..3
# is the block in the first block row. The g_b row signs are the ones that
# make the pattern a tau-eigenspace.
PATTERNS = {
    E: [[(1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0)],
        [(-1, 1, 0), (1, 0, 0), (1, 3, 0), (-1, 2, 0)],
        [(-1, 2, 1), (-1, 3, 1), (1, 0, 0), (1, 1, 0)],
        [(-1, 3, 1), (1, 2, 1), (-1, 1, 0), (1, 0, 0)]],
    A: [[(1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0)],
        [(1, 1, 0), (-1, 0, 0), (-1, 3, 0), (1, 2, 0)],
        [(-1, 2, 1), (1, 3, 1), (-1, 0, 0), (-1, 1, 0)],
        [(-1, 3, 1), (-1, 2, 1), (-1, 1, 0), (1, 0, 0)]],
    B: [[(1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0)],
        [(-1, 1, 0), (1, 0, 0), (1, 3, 0), (-1, 2, 0)],
        [(-1, 2, 1), (-1, 3, 1), (-1, 0, 0), (-1, 1, 0)],
        [(-1, 3, 1), (1, 2, 1), (1, 1, 0), (-1, 0, 0)]],
    C: [[(1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0)],
        [(1, 1, 0), (-1, 0, 0), (-1, 3, 0), (1, 2, 0)],
        [(-1, 2, 1), (1, 3, 1), (1, 0, 0), (1, 1, 0)],
        [(-1, 3, 1), (-1, 2, 1), (1, 1, 0), (-1, 0, 0)]],
}
SYMMETRIC = {E: {1, 2, 3}, A: {3}, B: {1}, C: {2}}


def fill_pattern(label, first_row):
    k = first_row[0].shape[0]
    out = np.zeros((4 * k, 4 * k), dtype=object)
    for r in range(4):
        for c in range(4):
            sgn, sp, tr = PATTERNS[label][r][c]
            blk = first_row[sp].T if tr else first_row[sp]
            out[r * k:(r + 1) * k, c * k:(c + 1) * k] = sgn * blk
    return out


def first_row_blocks(m):
    f = m.to_fractions()
    k = m.size // 4
    return [f[:k, s * k:(s + 1) * k] for s in range(4)]


def test_klein_table():
    assert klein_mul("a", "b") is C
    assert klein_mul(A, A) is E
    assert klein_mul(E, C) is C
    for x in LABELS:
        for y in LABELS:
            assert x * y is y * x
            for z in LABELS:
                assert (x * y) * z is x * (y * z)


def test_characters_are_homomorphisms():
    for g in LABELS:
        for s in LABELS:
            for t in LABELS:
                assert CHARACTER[g][s] * CHARACTER[g][t] == CHARACTER[g][klein_mul(s, t)]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_involution_invariants(k):
    inv = build_involutions(k)
    assert inv.J_a.size == 4 * k
    assert all(c.passed for c in inv.checks())


def test_rank_one_involutions_are_the_literal_matrices():
    inv = build_involutions(1)
    assert inv.J_a == S3_J_A and inv.J_b == S3_J_B


def test_bad_rank():
    with pytest.raises(ValueError):
        build_involutions(0)
    with pytest.raises(ValueError):
        graded_basis(0)


def test_tau_preserves_so_and_is_involutive():
    inv = build_involutions(2)
    for m in so_basis(8):
        for g in ODD_LABELS:
            t = tau(g, m, inv)
            assert t.is_antisymmetric()
            assert tau(g, t, inv) == m
        assert tau(E, m, inv) == m
    with pytest.raises(DimensionError):
        tau(A, ExactMatrix.identity(4), inv)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_projectors_complete_and_orthogonal(k):
    inv = build_involutions(k)
    for m in so_basis(4 * k):
        parts = {g: project(g, m, inv) for g in LABELS}
        total = parts[E] + parts[A] + parts[B] + parts[C]
        assert total == m
        for g in LABELS:
            for h in LABELS:
                ph = project(h, parts[g], inv)
                assert ph == (parts[g] if g is h else ExactMatrix.zeros(4 * k))


@pytest.mark.parametrize("k,dims", [(1, (3, 1, 1, 1)), (2, (10, 6, 6, 6)), (3, (21, 15, 15, 15)),
                                    (4, (36, 28, 28, 28))])
def test_dimension_law(k, dims):
    dec = cached_graded_basis(k)
    assert tuple(dec.dims()[g] for g in LABELS) == dims
    assert sum(dims) == 4 * k * (4 * k - 1) // 2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_tau_signs_on_components(k):
    dec = cached_graded_basis(k)
    for g in LABELS:
        for m in dec.components[g]:
            for s in ODD_LABELS:
                assert tau(s, m, dec.involutions) == m.scale(CHARACTER[g][s])
    m = dec.components[A][0]
    assert tau(B, m, dec.involutions) == m and tau(A, m, dec.involutions) == -m


@pytest.mark.parametrize("k", [1, 2, 3])
def test_block_patterns(k):
    dec = cached_graded_basis(k)
    for g in LABELS:
        for m in dec.components[g]:
            row = first_row_blocks(m)
            assert (fill_pattern(g, row) == m.to_fractions()).all()
            for s in range(4):
                want = row[s].T if s in SYMMETRIC[g] else -row[s].T
                assert (row[s] == want).all()
        assert set(dec.symmetric_species(g)) <= SYMMETRIC[g]
    for g, sp in ((A, 3), (B, 1), (C, 2)):
        assert dec.symmetric_species(g) == [sp]


def test_canonical_labels(dec2):
    assert dec2.components[A].labels == ("X1[1,2]", "Y1[1,2]", "Z1[1,2]", "T1[1,1]", "T1[1,2]", "T1[2,2]")
    assert dec2.components[B].labels[:2] == ("X2[1,2]", "Y2[1,1]")
    assert dec2.diagonal_positions(A) == [3, 5]


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=28, max_size=28))
@settings(max_examples=15)
def test_random_projection_matches_pattern(coeffs):
    dec = cached_graded_basis(2)
    m = so_basis(8).combination(coeffs)
    for g in LABELS:
        p = project(g, m, dec.involutions)
        assert (fill_pattern(g, first_row_blocks(p)) == p.to_fractions()).all()
        assert dec.components[g].contains(p)


def test_killing_is_tau_invariant():
    inv = build_involutions(2)
    b = so_basis(8)
    for x in b[:10]:
        for y in b:
            for g in ODD_LABELS:
                assert killing_form(tau(g, x, inv), tau(g, y, inv)) == killing_form(x, y)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_verify_grading_passes(k):
    cert = verify_grading(cached_graded_basis(k))
    assert cert.passed, [c.name for c in cert.failures()]
    assert all(r == 0 for _, _, r in cert.pair_residuals)
    n = 2 * k * (4 * k - 1)
    assert cert.info["pairs_checked"] == n * (n + 1) // 2


def test_swapped_vector_is_caught(dec2):
    bad = relabeled(dec2, {(A, 0): B})
    cert = verify_grading(bad)
    assert not cert.passed
    names = " ".join(c.detail for c in cert.failures())
    assert "X1[1,2]" in names


@pytest.mark.parametrize("k", [1, 2, 3])
def test_fixed_algebra(k):
    cert = verify_fixed_algebra(cached_graded_basis(k))
    assert cert.passed, [(c.name, c.detail) for c in cert.failures()]
    assert cert.info["rank"] == k


def test_corrupted_involution_breaks_commutant():
    inv = build_involutions(2)
    jb = inv.J_b.to_fractions()
    jb[:2, :] *= -1  # sign flip on the first block row of J_b
    bad = InvolutionSet(2, inv.J_a, ExactMatrix(jb), inv.J_a @ ExactMatrix(jb))
    dec = cached_graded_basis(2)
    cert = verify_fixed_algebra(type(dec)(2, bad, dec.components, dec.layout))
    failed = {c.name for c in cert.failures()}
    assert "g_e = commutant of {J_a, J_b} in so(N)" in failed


@pytest.mark.parametrize("k", [1, 2, 3])
def test_symmetric_pairs(k):
    dec = cached_graded_basis(k)
    triples = set()
    for g in ODD_LABELS:
        cert = symmetric_pair_check(dec, g)
        assert cert.passed, [(c.name, c.detail) for c in cert.failures()]
        triples.add((cert.info["dim"], cert.info["center_dim"], cert.info["derived_dim"]))
    assert triples == {(4 * k * k, 1, 4 * k * k - 1)}
    with pytest.raises(ValueError):
        symmetric_pair_check(dec, E)


def test_s3_fixture():
    cert = explicit_s3_fixture()
    assert cert.passed, [(c.name, c.detail) for c in cert.failures()]
    assert all(len(cert.decomposition.components[g]) == 1 for g in ODD_LABELS)


def test_two_rank_one_constructions_agree():
    lit = decompose(s3_involutions())
    kron = cached_graded_basis(1)
    for g in LABELS:
        assert lit.components[g].elements == kron.components[g].elements
    assert (structure_constants(lit.components[E]) == structure_constants(kron.components[E])).all()


def test_component_alone_is_not_closed(dec2):
    from gamma_sym.lie import ClosureError
    with pytest.raises(ClosureError):
        structure_constants(dec2.components[A])


def test_certificate_document_is_stable():
    import json
    d1 = json.dumps(grading_document(graded_basis(1), [verify_grading(graded_basis(1))]))
    d2 = json.dumps(grading_document(graded_basis(1), [verify_grading(graded_basis(1))]))
    assert d1 == d2
    doc = json.loads(d1)
    assert doc["dims"] == {"e": 3, "a": 1, "b": 1, "c": 1}
    assert doc["involutions"]["J_a"][0] == [0, -1, 0, 0]
    assert all(c.get("residual", "0") == "0" for c in doc["certificates"][0]["checks"])
