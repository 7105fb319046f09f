from __future__ import annotations

import random

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from fss.errors import ClosureOverflow, ShapeMismatch
from fss.field import FieldSpec
from fss.linalg import (
    Matrix,
    Subspace,
    algebra_closure,
    charpoly,
    kernel,
    matrix_inverse,
    poly_eval_matrix,
    rank,
    rref,
    solve,
    spin,
)

QQ = FieldSpec.rational()
GF7 = FieldSpec.prime(7)


def random_matrix(F, rows, cols, rng, density=0.7):
    return Matrix._trusted(
        F, [[F.random_element(rng) if rng.random() < density else F.zero for _ in range(cols)] for _ in range(rows)]
    )


def to_sympy(m: Matrix) -> sympy.Matrix:
    if m.field.p is None:
        return sympy.Matrix([[sympy.Rational(int(mpq(v).numerator), int(mpq(v).denominator)) for v in r] for r in m.data])
    return sympy.Matrix([[int(v) for v in r] for r in m.data])


def sympy_rank(m: Matrix) -> int:
    s = to_sympy(m)
    if m.field.p is None:
        return s.rank()
    return sympy.polys.matrices.DomainMatrix.from_Matrix(s).convert_to(sympy.GF(m.field.p)).rank()


@pytest.mark.parametrize("F", [QQ, GF7], ids=str)
def test_rank_and_solve_against_sympy(F):
    rng = random.Random(f"systems/{F}")
    for _ in range(250):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        a = random_matrix(F, r, c, rng, density=rng.choice([0.3, 0.7, 1.0]))
        assert rank(a) == sympy_rank(a)
        for v in kernel(a):
            assert not any(a.apply(v))
        assert len(kernel(a)) == c - rank(a)
        x_true = [F.random_element(rng) for _ in range(c)]
        b = a.apply(x_true)
        x = solve(a, b)
        assert x is not None and a.apply(x) == b


def test_solve_inconsistent():
    a = Matrix.from_entries(QQ, [[1, 1], [2, 2]])
    assert solve(a, [1, 3]) is None


@pytest.mark.parametrize("F", [QQ, GF7], ids=str)
def test_inverse_and_charpoly_against_sympy(F):
    rng = random.Random(f"square/{F}")
    x = sympy.Symbol("x")
    for _ in range(60):
        n = rng.randint(1, 6)
        a = random_matrix(F, n, n, rng)
        inv = matrix_inverse(a)
        assert (inv is None) == (sympy_rank(a) < n)
        if inv is not None:
            assert a @ inv == Matrix.identity(F, n) == inv @ a
        cp = charpoly(a)
        ref = to_sympy(a).charpoly(x).all_coeffs()[::-1]
        if F.p is None:
            assert [sympy.Rational(int(mpq(c).numerator), int(mpq(c).denominator)) for c in cp] == ref
        else:
            assert cp == [int(c) % F.p for c in ref]
        assert poly_eval_matrix(cp, a).is_zero()


def test_rref_shape():
    m, r, piv = rref(Matrix.from_entries(QQ, [[0, 2, 4], [0, 1, 2], [1, 0, 1]]))
    assert r == 2 and piv == [0, 1]
    assert m.to_strings() == [["1", "0", "1"], ["0", "1", "2"], ["0", "0", "0"]]


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=0, max_size=6))
def test_subspace_properties(vectors):
    sub = Subspace.span(QQ, 4, vectors)
    assert sub.dim == sympy_rank(Matrix.from_entries(QQ, vectors)) if vectors else sub.dim == 0
    for v in vectors:
        c = sub.coordinates([mpq(a) for a in v])
        assert c is not None and sub.combine(c) == [mpq(a) for a in v]
    assert Subspace.span(QQ, 4, sub.basis) == sub


def test_spin_and_closure():
    r = Matrix.from_entries(QQ, [[0, -1], [1, 0]])
    s = Matrix.from_entries(QQ, [[1, 0], [0, -1]])
    assert spin([[1, 0]], [r]).dim == 2
    assert spin([[1, 0]], [s]).dim == 1
    basis, words = algebra_closure([r, s])
    assert len(basis) == 4
    for b, w in zip(basis, words):
        assert w.evaluate([r, s], Matrix.identity(QQ, 2)) == b
    assert len(algebra_closure([Matrix.identity(QQ, 3)])[0]) == 1
    with pytest.raises(ShapeMismatch):
        spin([[1, 0]], [], field=None)
    with pytest.raises(ShapeMismatch):
        Matrix.from_entries(QQ, [[1, 2]]) @ Matrix.from_entries(QQ, [[1, 2]])


def test_closure_overflow_guard():
    # a cyclic shift needs words up to length n - 1, so a cap of 0 must trip
    shift = Matrix.from_entries(QQ, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    with pytest.raises((ClosureOverflow, ShapeMismatch)):
        algebra_closure([shift], n=1)
