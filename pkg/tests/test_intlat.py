from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from springer_toric.intlat import (
    FiniteAbelianGroup,
    LatticeError,
    det,
    express_in_basis,
    identity,
    lattice_basis,
    lattice_subspace_intersection,
    mat_mul,
    quotient_group,
    smith_normal_form,
    solve_rows,
)
from springer_toric.rootsys import Weight, build_root_system


def diag(D):
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def is_diagonal(D):
    return all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)


def weight_basis(name):
    return [list(w.coords) for w in build_root_system(name).fundamental_weights()]


# ---------------------------------------------------------------- SNF


def test_snf_identity():
    U, D, V = smith_normal_form(identity(4))
    assert (U, D, V) == (identity(4), identity(4), identity(4))


@pytest.mark.parametrize("name,expected", [("A3", [1, 1, 4]), ("D4", [1, 1, 2, 2]), ("E6", [1] * 5 + [3]), ("G2", [1, 1])])
def test_snf_of_cartan(name, expected):
    A = [list(r) for r in build_root_system(name).cartan]
    U, D, V = smith_normal_form(A)
    assert mat_mul(mat_mul(U, A), V) == D
    assert diag(D) == expected


def test_snf_rectangular_and_zero():
    m = [[2, 4, 4], [-6, 6, 12]]
    U, D, V = smith_normal_form(m)
    assert mat_mul(mat_mul(U, m), V) == D
    assert diag(D) == [2, 6]
    U, D, V = smith_normal_form([[0, 0], [0, 0]])
    assert diag(D) == [0, 0]


int_matrices = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 8).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(int_matrices)
def test_snf_round_trip(m):
    U, D, V = smith_normal_form(m)
    assert mat_mul(mat_mul(U, m), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    assert is_diagonal(D)
    d = diag(D)
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


# ---------------------------------------------------------------- quotient groups


def test_finite_abelian_group_validation():
    assert FiniteAbelianGroup.from_diagonal([2, 3]) == FiniteAbelianGroup((6,))
    assert str(FiniteAbelianGroup((2, 2))) == "Z/2 x Z/2"
    assert FiniteAbelianGroup().order == 1
    with pytest.raises(ValueError):
        FiniteAbelianGroup((2, 3))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1,))


def test_quotient_examples():
    I3 = identity(3)
    assert quotient_group(I3, weight_basis("A3")) == FiniteAbelianGroup((4,))
    assert quotient_group(identity(4), weight_basis("D4")) == FiniteAbelianGroup((2, 2))
    assert quotient_group(weight_basis("A3"), weight_basis("A3")).is_trivial()


def test_quotient_errors():
    with pytest.raises(LatticeError):
        quotient_group(weight_basis("A3"), identity(3))  # P is not inside Q
    with pytest.raises(LatticeError):
        quotient_group(identity(2), identity(3))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(st.lists(st.fractions(-3, 3, max_denominator=4), min_size=n, max_size=n), min_size=n, max_size=n),
    )
))
def test_quotient_order_is_index(pair):
    M, sup = pair
    dM, dS = det(M), det(sup)
    if dM == 0 or dS == 0:
        return
    sub = mat_mul(M, sup)
    g = quotient_group(sub, sup)
    assert g.order == abs(dM)


# ---------------------------------------------------------------- lattice cap subspace


def test_intersection_trivial_cases():
    assert lattice_subspace_intersection(identity(2), [[1, 0]]) == [[1, 0]]
    assert lattice_subspace_intersection(weight_basis("A3"), []) == []
    assert lattice_subspace_intersection(weight_basis("A3"), [[0, 0, 0]]) == []


def in_row_lattice(v, basis):
    if not basis:
        return all(x == 0 for x in v)
    try:
        c = solve_rows(basis, [v])[0]
    except LatticeError:
        return False
    return all(x.denominator == 1 for x in c)


def test_a3_weight_lattice_in_hyperplane():
    rs = build_root_system("A3")
    got = lattice_subspace_intersection(weight_basis("A3"), [[1, 0, 0], [0, 0, 1]])
    assert len(got) == 2
    for b in got:
        assert b[1] == 0
        assert all(c.denominator == 1 for c in rs.coroot_pairings(Weight(b)))
    # oracle: every P-point with denominator dividing 4, a2 = 0, in a small box is an integer combination
    cartan = rs.cartan
    hits = 0
    for y1, y3 in product(range(-8, 9), repeat=2):
        v = [F(y1, 4), F(0), F(y3, 4)]
        if all(sum(cartan[i][j] * v[j] for j in range(3)).denominator == 1 for i in range(3)):
            hits += 1
            assert in_row_lattice(v, got)
    assert hits > 0
    for v in ([1, 0, 0], [0, 0, 1], [F(1, 2), 0, F(1, 2)]):
        assert in_row_lattice(v, got)
    assert not in_row_lattice([F(1, 4), 0, F(3, 4)], got)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=2))
def test_intersection_is_saturated(span):
    L = weight_basis("A3")
    got = lattice_subspace_intersection(L, span)
    # any lattice vector in the span with small coordinates lies in the returned lattice
    for c in product(range(-2, 3), repeat=3):
        v = [sum(c[k] * L[k][j] for k in range(3)) for j in range(3)]
        assert _in_span(v, span) == in_row_lattice(v, got)


def _in_span(v, rows):
    basis = lattice_basis(rows)
    if not basis:
        return all(x == 0 for x in v)
    try:
        solve_rows(basis, [v])
    except LatticeError:
        return False
    return True


# ---------------------------------------------------------------- coordinates


def test_express_in_basis_sl4():
    rs = build_root_system("A3")
    lam = [F(3, 4), F(1, 2), F(1, 4)], [F(1, 2), 0, F(1, 2)], [F(1, 4), F(1, 2), F(3, 4)]
    assert express_in_basis([1, 0, 0], lam) == [1, 1, -1]
    assert express_in_basis([0, 1, 0], lam) == [1, -2, 1]
    assert express_in_basis([0, 0, 1], lam) == [-1, 1, 1]
    assert express_in_basis([F(2, 3), 5], [[F(2, 3), 5]]) == [1]
    with pytest.raises(LatticeError):
        express_in_basis([0, 1], [[1, 0]])
