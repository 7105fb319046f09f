from __future__ import annotations

import pytest

from fss.algebra import build_algebra
from fss.errors import GroupTooLarge, TooLargeToEnumerate
from fss.field import FieldSpec
from fss.fixtures import cycles_to_perms, fixture
from fss.linalg import Matrix
from fss.meataxe import SimpleSubmodule
from fss.oracle import enumerate_group, exhaustive_simplicity, oracle_dim, perm_group_fixture

QQ = FieldSpec.rational()
GF2 = FieldSpec.prime(2)


def test_oracle_dim_examples():
    assert oracle_dim(fixture("d8").faithful) == 8
    assert oracle_dim([Matrix.identity(QQ, 3)]) == 1
    units = [Matrix.unit(QQ, 2, i, j) for i in range(2) for j in range(2)]
    assert oracle_dim(units) == 4


@pytest.mark.parametrize("name,order", [("c6", 6), ("s3", 6), ("s4", 24), ("d8", 8), ("q8", 8)])
def test_group_order_matches_oracle(name, order):
    doc = fixture(name)
    assert doc.metadata["order"] == order
    assert oracle_dim(doc.faithful) == order
    build_algebra(doc)  # homomorphism spot-check passes


def test_perm_group_fixture_shapes():
    d8 = perm_group_fixture(cycles_to_perms(["(1,2,3,4)(1,3)"]))
    assert d8.faithful[0].shape == (8, 8) and d8.module[0].shape == (4, 4)
    triv = perm_group_fixture(cycles_to_perms(["()"]))
    assert triv.faithful[0].shape == (1, 1) and triv.metadata["order"] == 1
    s4 = perm_group_fixture(cycles_to_perms(["(1,2,3,4)(1,2)"]))
    assert s4.metadata["order"] == 24


def test_group_too_large():
    s8 = cycles_to_perms(["(1,2,3,4,5,6,7,8)(1,2)"])
    with pytest.raises(GroupTooLarge):
        enumerate_group(s8, 8)


def test_exhaustive_simplicity():
    one = Matrix.identity(GF2, 1)
    line = SimpleSubmodule(_full(GF2, 1), (one,), {})
    assert exhaustive_simplicity(line)
    ident = Matrix.identity(GF2, 2)
    plane = SimpleSubmodule(_full(GF2, 2), (ident,), {})
    assert not exhaustive_simplicity(plane)
    big = SimpleSubmodule(_full(FieldSpec.prime(3), 9), (Matrix.identity(FieldSpec.prime(3), 9),), {})
    with pytest.raises(TooLargeToEnumerate):
        exhaustive_simplicity(big)


def _full(F, n):
    from fss.linalg import Subspace

    return Subspace.span(F, n, [[F.one if i == j else F.zero for i in range(n)] for j in range(n)])
