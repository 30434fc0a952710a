from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from contactlab.linalg import (Matrix, Polynomial, char_poly, column_space_basis, congruence_signature,
                               coordinates, generalized_eigenspace, in_polynomial_span, in_span,
                               jordan_chevalley, kernel_basis, minimal_poly, poly_gcd, q, rref, solve,
                               squarefree_part, wedge_square_operator)

F = Fraction


def leibniz_det(m: Matrix) -> Fraction:
    n = m.nrows
    total = F(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = F(-1) ** inv
        for i in range(n):
            term *= m[i, perm[i]]
        total += term
    return total


small = st.integers(-3, 3)


@st.composite
def square(draw, lo=1, hi=4):
    n = draw(st.integers(lo, hi))
    den = draw(st.sampled_from([1, 1, 2, 3]))
    return Matrix([[F(draw(small), den) for _ in range(n)] for _ in range(n)])


@st.composite
def rect(draw):
    r, c = draw(st.integers(1, 4)), draw(st.integers(1, 5))
    return Matrix([[draw(small) for _ in range(c)] for _ in range(r)])


def test_floats_rejected():
    with pytest.raises(TypeError):
        q(0.5)
    with pytest.raises(TypeError):
        Matrix([[1.0, 0], [0, 1]])


def test_rref_small_example():
    r, rank, piv = rref(Matrix([[2, 4, 2], [1, 2, 3]]))
    assert rank == 2 and piv == [0, 2]
    assert r == Matrix([[1, 2, 0], [0, 0, 1]])
    assert kernel_basis(Matrix([[2, 4, 2], [1, 2, 3]])) == [(F(-2), F(1), F(0))]


def test_solve_inconsistent_is_none():
    assert solve(Matrix([[1, 1], [1, 1]]), [1, 2]) is None
    assert solve(Matrix([[1, 1], [1, -1]]), [2, 0]) == (F(1), F(1))


def test_inverse_of_singular_raises():
    with pytest.raises(ZeroDivisionError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_char_poly_non_square_raises():
    with pytest.raises(ValueError):
        char_poly(Matrix([[1, 2, 3]]))


@settings(max_examples=60, deadline=None)
@given(square())
def test_det_matches_leibniz(m):
    assert m.det() == leibniz_det(m)


@settings(max_examples=60, deadline=None)
@given(square())
def test_char_poly_matches_leibniz_at_points(m):
    n = m.nrows
    p = char_poly(m)
    assert p.degree == n and p.lead == 1
    for t in range(n + 1):
        assert p(F(t)) == leibniz_det(Matrix.identity(n) * t - m)


@settings(max_examples=60, deadline=None)
@given(square())
def test_cayley_hamilton_and_minimal_poly(m):
    p, mp = char_poly(m), minimal_poly(m)
    assert p(m).is_zero()
    assert mp(m).is_zero()
    assert (p % mp).is_zero()
    # no lower-degree annihilator: powers I..m^(deg-1) are independent
    powers = [Matrix.identity(m.nrows)]
    for _ in range(mp.degree - 1):
        powers.append(powers[-1] @ m)
    assert Matrix.from_columns([x.flat() for x in powers]).rank() == mp.degree


@settings(max_examples=60, deadline=None)
@given(rect())
def test_rank_nullity_and_kernel(m):
    ker = kernel_basis(m)
    assert m.rank() + len(ker) == m.ncols
    for v in ker:
        assert not any(m @ v)
    assert len(column_space_basis(m)) == m.rank()
    r, _, _ = rref(m)
    assert rref(r)[0] == r


@settings(max_examples=40, deadline=None)
@given(square())
def test_inverse_and_coordinates(m):
    if m.det() == 0:
        return
    inv = m.inverse()
    assert m @ inv == Matrix.identity(m.nrows)
    cols = m.columns()
    v = tuple(F(i + 1) for i in range(m.nrows))
    c = coordinates(v, cols)
    assert m @ c == v and in_span(v, cols)


def _conjugate(p: Matrix, core: Matrix) -> Matrix:
    return p @ core @ p.inverse()


JC_CASES = [
    # (diagonal part, nilpotent part on the same basis, conjugator)
    ([2, 2, -1], [[0, 1, 0], [0, 0, 0], [0, 0, 0]], [[1, 1, 0], [0, 1, 2], [1, 0, 1]]),
    ([F(1, 2), F(1, 2), F(1, 2), 3], [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
     [[1, 0, 0, 1], [2, 1, 0, 0], [0, 3, 1, 0], [0, 0, 1, 1]]),
    ([0, 0, 5, 5], [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, -2], [0, 0, 0, 0]],
     [[1, 2, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 0, 1, 3]]),
]


@pytest.mark.parametrize("diag,nil,conj", JC_CASES)
def test_jordan_chevalley_against_known_form(diag, nil, conj):
    p = Matrix(conj)
    m = _conjugate(p, Matrix.diag(diag) + Matrix(nil))
    s, n = jordan_chevalley(m)
    assert s == _conjugate(p, Matrix.diag(diag))
    assert n == _conjugate(p, Matrix(nil))


def test_jordan_chevalley_irrational_spectrum():
    # rotation-like block plus a nilpotent coupling: eigenvalues +-i, each twice
    core = Matrix([[0, -1, 1, 0], [1, 0, 0, 1], [0, 0, 0, -1], [0, 0, 1, 0]])
    s, n = jordan_chevalley(core)
    assert s == Matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    assert n == Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]])


@settings(max_examples=50, deadline=None)
@given(square())
def test_jordan_chevalley_properties(m):
    s, n = jordan_chevalley(m)
    assert s + n == m
    assert (s @ n - n @ s).is_zero()
    assert (n ** m.nrows).is_zero()
    assert in_polynomial_span(s, m) and in_polynomial_span(n, m)
    mp = minimal_poly(s)
    assert squarefree_part(mp) == mp


def test_polynomial_tools():
    x = Polynomial.x()
    p = (x - 1) ** 2 * (x + F(1, 2)) * (x * x + 1)
    assert p.rational_roots() == {F(1): 2, F(-1, 2): 1}
    assert not p.splits_over_q()
    assert squarefree_part(p) == ((x - 1) * (x + F(1, 2)) * (x * x + 1)).monic()
    assert poly_gcd(p, (x - 1) * (x - 3)) == x - 1
    with pytest.raises(ValueError):
        squarefree_part(Polynomial([]))
    assert divmod(x ** 3, x - 2) == (x * x + 2 * x + 4, Polynomial([8]))


def test_generalized_eigenspace():
    m = Matrix([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
    assert len(generalized_eigenspace(m, 2)) == 2
    assert len(generalized_eigenspace(m, 3)) == 1
    assert generalized_eigenspace(m, 5) == []


@settings(max_examples=40, deadline=None)
@given(square(2, 4), square(2, 4))
def test_wedge_square_is_derivation(a, b):
    if a.nrows != b.nrows:
        return
    # u^v -> Au^v + u^Av is a Lie algebra map gl(n) -> gl(Lambda^2)
    wa, wb = wedge_square_operator(a), wedge_square_operator(b)
    assert wedge_square_operator(a @ b - b @ a) == wa @ wb - wb @ wa
    assert wedge_square_operator(a).trace() == (a.nrows - 1) * a.trace()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=1, max_size=4), st.data())
def test_congruence_signature_is_sylvester_invariant(d, data):
    n = len(d)
    rows = [[data.draw(small) for _ in range(n)] for _ in range(n)]
    p = Matrix(rows)
    if p.det() == 0:
        return
    b = p.T @ Matrix.diag(d) @ p
    expect = (sum(x > 0 for x in d), sum(x < 0 for x in d), sum(x == 0 for x in d))
    assert congruence_signature(b) == expect


def test_congruence_signature_zero_diagonal():
    assert congruence_signature(Matrix([[0, 1], [1, 0]])) == (1, 1, 0)
    with pytest.raises(ValueError):
        congruence_signature(Matrix([[0, 1], [0, 0]]))
