from fractions import Fraction
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gamma_sym.exact import ExactMatrix
from gamma_sym.grading import ODD_LABELS, KleinLabel, cached_graded_basis
from gamma_sym.metrics import (
    MetricParams,
    build_form,
    form_from_matrix,
    in_locus,
    invariance_residual,
    invariant_form_space,
    killing_restriction,
    metric_report,
    natural_reductivity_check,
    natural_reductivity_locus,
    spans_equal,
    unit_forms,
)
from gamma_sym.signature import component_signature, component_spectrum

rat = st.fractions(min_value=-4, max_value=4, max_denominator=6)
params_st = st.builds(lambda v: MetricParams.from_sequence(v), st.lists(rat, min_size=6, max_size=6))


def test_params_parse_and_format():
    p = MetricParams.parse("1,-1/2,3,0,2/4,7")
    assert p.lam2_a == Fraction(-1, 2) and p.lam1_c == Fraction(1, 2)
    assert str(p) == "1,-1/2,3,0,1/2,7"
    with pytest.raises(ValueError):
        MetricParams.parse("1,2,3")
    with pytest.raises(ValueError):
        MetricParams.parse("1,2,3,4,5,0.5")


def test_build_form_example(dec2):
    form = build_form(dec2, MetricParams.uniform(1, 1))
    want = np.diag([Fraction(1)] * 6).astype(object)
    want[3, 5] = want[5, 3] = Fraction(1, 4)
    assert (form.block("a").to_fractions() == want).all()


def test_build_form_rank_one():
    dec = cached_graded_basis(1)
    form = build_form(dec, MetricParams(5, 2, -7, 3, 11, Fraction(1, 2)))
    assert form.matrix == ExactMatrix([[2, 0, 0], [0, 3, 0], [0, 0, Fraction(1, 2)]])


@given(params_st)
@settings(max_examples=25)
def test_block_diagonal_and_symmetric(p):
    dec = cached_graded_basis(2)
    for conv in ("split", "invariant"):
        f = build_form(dec, p, conv)
        assert f.matrix.is_symmetric()
        g = f.fractions()
        for x, y in itertools.permutations(ODD_LABELS, 2):
            rx, ry = f.block_index[x], f.block_index[y]
            assert not g[rx.start:rx.stop, ry.start:ry.stop].any()


@given(rat, rat, st.lists(rat, min_size=4, max_size=4))
@settings(max_examples=30)
def test_completed_square_identity(l1, l2, v):
    # q = l1(alpha^2 + beta^2 + gamma^2 + (d2)^2) + (3 l2/4 - l1/8)(d1 + d3)^2 + (l2/4 + l1/8)(d1 - d3)^2
    dec = cached_graded_basis(2)
    g = build_form(dec, MetricParams(l1, l2, 1, 1, 1, 1)).block("a").to_fractions()
    al, be, ga, d1, d2, d3 = v[0], v[1], v[2], v[3], Fraction(1, 3) * v[0] - v[2], v[3] - v[1]
    x = np.array([al, be, ga, d1, d2, d3], dtype=object)
    q = x.dot(g.dot(x))
    want = l1 * (al ** 2 + be ** 2 + ga ** 2 + d2 ** 2) + (3 * l2 / 4 - l1 / 8) * (d1 + d3) ** 2 \
        + (l2 / 4 + l1 / 8) * (d1 - d3) ** 2
    assert q == want


@pytest.mark.parametrize("k", [1, 2, 3])
def test_invariant_convention_is_invariant(k):
    dec = cached_graded_basis(k)
    p = MetricParams.from_sequence([3, 1, 2, Fraction(-5, 3), Fraction(1, 2), 7])
    assert invariance_residual(dec, build_form(dec, p, "invariant")).value == 0


@pytest.mark.parametrize("k", [2, 3])
def test_split_convention_invariant_only_on_killing_ratio(k):
    dec = cached_graded_basis(k)
    assert invariance_residual(dec, build_form(dec, MetricParams.uniform(2, 1))).value == 0
    res = invariance_residual(dec, build_form(dec, MetricParams.uniform(1, 1)))
    assert res.value != 0 and res.witness is not None


def test_rank_one_split_family_invariant():
    dec = cached_graded_basis(1)
    assert invariance_residual(dec, build_form(dec, MetricParams(1, 2, 3, 4, 5, 6))).value == 0


def test_corrupted_form_has_witness(dec2):
    g = build_form(dec2, MetricParams.uniform(2, 1)).fractions()
    g[0, 6] = g[6, 0] = Fraction(1)
    res = invariance_residual(dec2, form_from_matrix(dec2, g))
    assert res.value > 0
    h, x, y = res.witness
    assert h in dec2.components[KleinLabel.E].labels


@pytest.mark.parametrize("k,dim", [(1, 3), (2, 6), (3, 6)])
def test_invariant_form_space(k, dim):
    dec = cached_graded_basis(k)
    space = invariant_form_space(dec)
    assert len(space) == dim
    for f in space:
        assert invariance_residual(dec, f).value == 0
        assert f.matrix.is_symmetric()
    # the invariant-convention family fills the whole space
    assert spans_equal(space, unit_forms(dec, "invariant"))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_killing_restriction(k):
    dec = cached_graded_basis(k)
    form, p = killing_restriction(dec)
    assert p.lam1_a == p.lam1_b == p.lam1_c == 2 * p.lam2_a == 2 * p.lam2_b == 2 * p.lam2_c > 0
    assert build_form(dec, p).matrix == form.matrix
    assert build_form(dec, p, "invariant").matrix == form.matrix
    assert invariance_residual(dec, form).value == 0
    assert natural_reductivity_check(dec, form).passed


def test_natural_reductivity_examples(dec2):
    assert natural_reductivity_check(dec2, build_form(dec2, MetricParams.uniform(1, Fraction(1, 2)))).passed
    cert = natural_reductivity_check(dec2, build_form(dec2, MetricParams(1, 1, 1, Fraction(1, 2), 1, Fraction(1, 2))))
    assert not cert.passed
    assert "witness" in cert.checks[0].detail


@pytest.mark.parametrize("conv", ["split", "invariant"])
def test_locus_is_the_killing_line(dec2, conv):
    locus = natural_reductivity_locus(dec2, conv)
    assert len(locus) == 1
    v = locus[0]
    assert v[0] == v[2] == v[4] == 2 * v[1] == 2 * v[3] == 2 * v[5] != 0


def test_locus_grid():
    dec = cached_graded_basis(2)
    locus = natural_reductivity_locus(dec)
    vals = [Fraction(x) for x in (-2, -1, Fraction(-1, 2), Fraction(1, 2), 1, 2)]
    passing = []
    off_locus_checked = 0
    for tup in itertools.product(vals, repeat=6):
        p = MetricParams.from_sequence(tup)
        if any(component_signature(component_spectrum(p, g, 2)).zero for g in ODD_LABELS):
            continue
        if in_locus(p, locus):
            passing.append(p)
        elif off_locus_checked < 200 and hash(tup) % 97 == 0:
            assert not natural_reductivity_check(dec, build_form(dec, p)).passed
            off_locus_checked += 1
    expected = [MetricParams.uniform(2 * t, t) for t in vals if 2 * t in vals]
    assert sorted(map(str, passing)) == sorted(map(str, expected))
    for p in passing:
        assert natural_reductivity_check(dec, build_form(dec, p)).passed
    assert off_locus_checked >= 100


def test_metric_report(dec2):
    rep = metric_report(dec2, MetricParams.uniform(2, 1))
    assert rep["invariance"] == "pass" and rep["naturally_reductive"] == "pass"
    assert rep["params"]["lam1_a"] == "2"
    assert all(isinstance(t[2], str) for t in rep["gram"])
    rep = metric_report(cached_graded_basis(1), MetricParams.uniform(2, 1))
    assert rep["unused"] == ["lam1_a", "lam1_b", "lam1_c"]
