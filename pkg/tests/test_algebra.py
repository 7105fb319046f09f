from __future__ import annotations

import random

import pytest

from fss.algebra import BlackBoxAlgebra, annihilator, build_algebra, is_scalar_action, radical
from fss.errors import FieldTooSmall, InconsistentDims, NotAHomomorphism
from fss.field import FieldSpec
from fss.fixtures import fixture, upper_triangular
from fss.linalg import Matrix

from conftest import algebra_for

QQ = FieldSpec.rational()


def test_d8_basis_and_module_images():
    alg = algebra_for("d8-plane")
    assert alg.dim == 8 and alg.d == 8 and alg.m == 2
    r, s = alg.generators
    r4 = r.power(4)
    assert r4.is_one()
    assert (s * r * s) == r.power(3)
    for b, w in zip(alg.basis, alg.words):
        assert alg.evaluate_word(w.letters) == b
        assert b.act == alg.evaluate_word(w.letters).act


def test_coordinates_round_trip():
    alg = algebra_for("s3")
    rng = random.Random(3)
    for _ in range(20):
        a = alg.random_element(rng)
        c = alg.coordinates(a)
        assert alg.element(c) == a
    stray = Matrix.unit(QQ, alg.d, 0, 1)
    assert alg.coordinates_of_matrix(stray) is None


@pytest.mark.parametrize("name", ["c6", "s3", "s4", "d8", "q8"])
def test_group_algebras_are_semisimple(name):
    rad = radical(algebra_for(name))
    assert rad.dim == 0 and rad.power_dims == (0,)


def test_upper_triangular_radical():
    alg = build_algebra(upper_triangular(2))
    rad = radical(alg)
    assert rad.dim == 1
    (v,) = rad.basis
    assert alg.element(v).rep == Matrix.unit(QQ, 2, 0, 1)
    assert rad.power_dims == (1, 0) and rad.nilpotency_index == 1

    alg3 = build_algebra(upper_triangular(3))
    rad3 = radical(alg3)
    assert rad3.dim == 3 and rad3.power_dims == (3, 1, 0)


def test_annihilator():
    alg = algebra_for("d8-plane")
    ann = annihilator(alg, [1, 0])
    assert ann.dim == 6  # the action map A -> M has rank 2
    for v in ann.basis:
        assert not any(alg.element(v).acts_on([1, 0]))


def test_construction_errors():
    doc = fixture("d8-plane")
    with pytest.raises(InconsistentDims):
        BlackBoxAlgebra(QQ, ["r"], doc.faithful, doc.module)
    bad = [doc.module[1], doc.module[0]]
    with pytest.raises(NotAHomomorphism):
        BlackBoxAlgebra(QQ, doc.names, doc.faithful, bad)
    gf5 = FieldSpec.prime(5)
    g = [Matrix.from_entries(gf5, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]), Matrix.from_entries(gf5, [[1, 0, 0], [0, 2, 0], [0, 0, 3]])]
    with pytest.raises(FieldTooSmall):
        BlackBoxAlgebra(gf5, ["a", "b"], g, g)


def test_scalar_action():
    assert is_scalar_action([Matrix.identity(QQ, 3).scale(5)])
    assert not is_scalar_action([Matrix.unit(QQ, 2, 0, 0)])
    assert is_scalar_action([])
