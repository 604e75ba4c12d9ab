from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gamma_sym.exact import DomainError, ExactMatrix
from gamma_sym.lie import (
    ClosureError,
    LieBasis,
    ad_matrix,
    bracket,
    killing_form,
    killing_form_adtrace,
    so_basis,
    structure_constants,
)


def E(N, i, j):
    # 1-based E_ij - E_ji
    return ExactMatrix.elementary(N, i - 1, j - 1) - ExactMatrix.elementary(N, j - 1, i - 1)


@pytest.mark.parametrize("N,dim", [(2, 1), (3, 3), (4, 6), (8, 28)])
def test_so_basis_size(N, dim):
    b = so_basis(N)
    assert len(b) == dim
    assert all(e.is_antisymmetric() for e in b)


def test_so_basis_order_and_small_cases():
    assert so_basis(2)[0] == E(2, 1, 2)
    assert so_basis(4).labels[:3] == ("E1,2", "E1,3", "E1,4")
    with pytest.raises(ValueError):
        so_basis(1)


def test_bracket_examples():
    x = E(4, 1, 2)
    assert bracket(x, x).is_zero()
    assert bracket(E(3, 1, 2), E(3, 1, 3)) == -E(3, 2, 3)
    assert bracket(ExactMatrix.identity(4), x).is_zero()


def test_killing_examples():
    # (N - 2) tr(X^2) = 2 * (-2)
    assert killing_form(E(4, 1, 2), E(4, 1, 2)) == -4
    assert killing_form_adtrace(E(4, 1, 2), E(4, 1, 2)) == -4
    assert killing_form(E(4, 1, 2), E(4, 3, 4)) == 0
    with pytest.raises(DomainError):
        killing_form(ExactMatrix.identity(4), E(4, 1, 2))


def _int_stack(basis):
    return np.array([e.num * 1 for e in basis], dtype=np.int64)


@pytest.mark.parametrize("N", [4, 8, 12])
def test_killing_closed_form_matches_adtrace(N):
    basis = so_basis(N)
    ads = np.array([ad_matrix(e, basis).astype(np.int64) for e in basis])
    k_ad = np.einsum("aij,bji->ab", ads, ads)
    k_closed = np.array([[killing_form(x, y) for y in basis] for x in basis], dtype=object)
    assert (k_ad == k_closed).all()


@pytest.mark.parametrize("N", [3, 4, 5, 6, 7, 8])
def test_jacobi_all_triples(N):
    e = _int_stack(so_basis(N))
    br = np.einsum("aij,bjk->abik", e, e)
    br = br - br.transpose(1, 0, 2, 3)
    # [x, [y, z]] for all triples
    t = np.einsum("aij,bcjk->abcik", e, br) - np.einsum("bcij,ajk->abcik", br, e)
    assert not (t + t.transpose(1, 2, 0, 3, 4) + t.transpose(2, 0, 1, 3, 4)).any()


antisym = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=6, max_size=6)


@given(antisym, antisym, antisym)
def test_jacobi_on_rational_elements(u, v, w):
    b = so_basis(4)
    x, y, z = (b.combination(c) for c in (u, v, w))
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert total.is_zero()


@given(antisym, antisym)
def test_killing_symmetric_and_spans(u, v):
    b = so_basis(4)
    x, y = b.combination(u), b.combination(v)
    assert killing_form(x, y) == killing_form(y, x)
    assert b.coordinates(x) == tuple(Fraction(c) for c in u)


def test_structure_constants_so3():
    c = structure_constants(so_basis(3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                assert c[i, j, k] == -c[j, i, k]
                assert c[i, j, k] == c[j, k, i]
                assert c[i, j, k] in (0, 1, -1)
                assert (c[i, j, k] != 0) == (len({i, j, k}) == 3)


def test_structure_constants_abelian():
    b = LieBasis([E(4, 1, 2), E(4, 3, 4)], ["h1", "h2"])
    assert all(v == 0 for v in structure_constants(b).flat)


def test_closure_error_names_pair():
    b = LieBasis([E(4, 1, 2), E(4, 1, 3)], ["x", "y"])
    with pytest.raises(ClosureError) as err:
        structure_constants(b)
    assert err.value.pair == (0, 1)
    assert "x" in str(err.value)


def test_basis_rejects_dependent_and_symmetric():
    with pytest.raises(ValueError):
        LieBasis([E(3, 1, 2), E(3, 1, 2).scale(2)])
    with pytest.raises(DomainError):
        LieBasis([ExactMatrix.identity(3)])
