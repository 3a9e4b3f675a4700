import warnings

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from typetree.generate import ORIENTABLE_PROFILES, PROFILES
from typetree.intlinalg import bareiss_det, kernel_basis, rank, scaled_inverse
from typetree.problem import (
    ParseError,
    ProblemInstance,
    ReducedSystem,
    SparsityWarning,
    bounding_constant,
    coordinate_bound,
    drop_redundant_rows,
    format_problem,
    parse_problem,
    reduce_columns,
)

from conftest import PAPER_M, PAPER_REDUCED


def test_parse_empty_matrix():
    inst = parse_problem("tets 1\nrows 0\nmatrix\n")
    assert inst.n == 1
    assert inst.matrix == ()
    assert inst.orientable is None


def test_parse_paper_matrix():
    text = "# example\ntets 2\nrows 2\norientable 1\nmatrix\n0 1 -1 2 -1 -1\n-2 0 2 -2 0 2\n"
    inst = parse_problem(text)
    assert (inst.n, inst.rows) == (2, 2)
    assert inst.matrix == PAPER_M
    assert inst.orientable is True


def test_parse_arity_error_has_line_number():
    with pytest.raises(ParseError, match="row has 4 entries, expected 3") as exc:
        parse_problem("tets 1\nrows 1\nmatrix\n1 -1 0 0\n")
    assert exc.value.line == 4


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("rows 0\nmatrix\n", "missing 'tets'"),
        ("tets x\nrows 0\nmatrix\n", "needs an integer"),
        ("tets 1\nrows 2\nmatrix\n1 0 0\n", "matrix has 1 rows, expected 2"),
        ("tets 1\nrows 1\nmatrix\n1 a 0\n", "non-integer"),
        ("tets 1\nrows 0\n", "missing 'matrix'"),
        ("tets 1\nrows 0\nbogus 3\nmatrix\n", "unknown header"),
        ("tets 1\nrows 0\norientable 2\nmatrix\n", "orientable must be 0 or 1"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_problem(text)


def test_sparsity_violation_is_a_warning():
    with pytest.warns(SparsityWarning):
        inst = parse_problem("tets 1\nrows 1\nmatrix\n5 0 0\n")
    assert inst.matrix == ((5, 0, 0),)


def test_format_round_trip(paper_instance):
    assert parse_problem(format_problem(paper_instance)) == paper_instance


def test_reduce_columns_paper_example():
    rows, d, big_d = reduce_columns(PAPER_M)
    assert tuple(rows) == PAPER_REDUCED
    assert d == (2, 1, 1, 2, 1, 1)
    assert big_d == 2


def test_reduce_columns_fixed_point_and_zero_column():
    rows, d, big_d = reduce_columns(PAPER_REDUCED)
    assert tuple(rows) == PAPER_REDUCED and set(d) == {1} and big_d == 1
    rows, d, big_d = reduce_columns([[0], [0]])
    assert rows == [(0,), (0,)] and d == (1,) and big_d == 1


def test_drop_redundant_rows():
    rows, k = drop_redundant_rows(PAPER_M)
    assert rows == list(PAPER_M) and k == 2
    assert k == sympy.Matrix(PAPER_M).rank()
    rows, k = drop_redundant_rows([PAPER_M[0], PAPER_M[1], PAPER_M[0]])
    assert rows == list(PAPER_M) and k == 2
    rows, k = drop_redundant_rows([[0, 0, 0], [0, 0, 0]])
    assert rows == [] and k == 0


def test_bounding_constant_examples():
    assert bounding_constant(PAPER_REDUCED, 2) == 5
    assert bounding_constant([], 0) == 1
    assert bounding_constant([[1], [0]], 1) == 1
    # sqrt(2) * 1 rounds up to 2.
    assert bounding_constant([[1, 1], [1, 0]], 2) == 2


def test_coordinate_bound_examples():
    assert coordinate_bound(2, 2, 5, True).vertex == 90
    assert coordinate_bound(2, 2, 5, False).vertex == 780
    assert coordinate_bound(2, 2, 5, None).vertex == 780
    assert coordinate_bound(1, 0, 1, True).vertex == 2
    b = coordinate_bound(3, 3, 5, False)
    assert (b.fallback_orientable, b.fallback_general) == (15, 32)
    assert b.storage_bits == 32


def test_reduced_system(paper_instance):
    rs = ReducedSystem.from_instance(paper_instance)
    assert rs.matrix == PAPER_REDUCED
    assert (rs.rank, rs.delta, rs.lcm) == (2, 5, 2)


# -- properties --------------------------------------------------------------

small_matrix = st.integers(1, 4).flatmap(
    lambda e: st.integers(1, 6).flatmap(
        lambda m: st.lists(st.lists(st.integers(-4, 4), min_size=m, max_size=m), min_size=e, max_size=e)
    )
)


@given(small_matrix)
def test_reduce_columns_idempotent(m):
    once, _, _ = reduce_columns(m)
    twice, d, big_d = reduce_columns(once)
    assert once == twice and set(d) == {1} and big_d == 1


@given(small_matrix)
def test_rank_matches_sympy(m):
    rows, k = drop_redundant_rows(m)
    assert k == sympy.Matrix(m).rank() == sympy.Matrix(rows).rank() == len(rows)


@given(st.integers(1, 5).flatmap(
    lambda k: st.lists(st.lists(st.integers(-5, 5), min_size=k, max_size=k), min_size=k, max_size=k)))
def test_scaled_inverse_and_det(a):
    det = sympy.Matrix(a).det()
    assert bareiss_det(a) == det
    if det == 0:
        with pytest.raises(ZeroDivisionError):
            scaled_inverse(a)
        return
    inv, d = scaled_inverse(a)
    assert d == abs(det)
    assert sympy.Matrix(inv) / d == sympy.Matrix(a).inv()


@given(small_matrix)
def test_kernel_basis_spans_null_space(m):
    ncols = len(m[0])
    basis = kernel_basis(m, ncols)
    assert len(basis) == ncols - sympy.Matrix(m).rank()
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    if basis:
        assert sympy.Matrix(basis).rank() == len(basis)


def _sparse_columns(profiles):
    return st.integers(1, 6).flatmap(
        lambda e: st.integers(1, 4).flatmap(
            lambda n: st.lists(
                st.tuples(st.sampled_from([p for p in profiles if len(p) <= e]),
                          st.permutations(range(e)),
                          st.lists(st.sampled_from((-1, 1)), min_size=4, max_size=4)),
                min_size=3 * n, max_size=3 * n,
            ).map(lambda cols: _assemble(e, cols))
        )
    )


def _assemble(e, cols):
    m = [[0] * len(cols) for _ in range(e)]
    for c, (prof, rows, signs) in enumerate(cols):
        for mag, r, s in zip(prof, rows, signs):
            m[r][c] = mag * s
    return m


@settings(max_examples=200)
@given(_sparse_columns(PROFILES))
def test_delta_within_general_bound(m):
    inst = ProblemInstance(len(m[0]) // 3, m)
    assert not inst.sparsity_violations()
    rs = ReducedSystem.from_instance(inst)
    assert rs.delta <= rs.bound.fallback_general
    for c in range(rs.ncols):
        col = [r[c] for r in rs.matrix if r[c]]
        assert sum(abs(v) for v in col) <= 4


@settings(max_examples=200)
@given(_sparse_columns(ORIENTABLE_PROFILES))
def test_delta_within_orientable_bound(m):
    inst = ProblemInstance(len(m[0]) // 3, m, orientable=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert not inst.sparsity_violations()
    rs = ReducedSystem.from_instance(inst)
    assert rs.delta <= rs.bound.fallback_orientable


def test_rank_helper():
    assert rank(PAPER_M) == 2
