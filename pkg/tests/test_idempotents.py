from __future__ import annotations

import random

import pytest

from fss.algebra import build_algebra, radical
from fss.errors import NotNilpotentDefect
from fss.fixtures import upper_triangular
from fss.idempotents import check_frame, lift_frame, lift_idempotent, matrix_units_in_image
from fss.linalg import Matrix
from fss.meataxe import endo_ring, find_simple_submodules

from conftest import ALL_FIXTURES, algebra_for


def nilpotent_defect_inputs(count: int = 50):
    """Elements e with e^2 - e in J: a diagonal 0/1 pattern plus random radical noise."""
    out = []
    for seed in range(count):
        rng = random.Random(f"lift/{seed}")
        n = 3 if seed < 25 else 4
        alg = build_algebra(upper_triangular(n))
        rad = radical(alg)
        F = alg.field
        diag = [rng.randint(0, 1) for _ in range(n)]
        rep = [[F.zero] * n for _ in range(n)]
        for i in range(n):
            rep[i][i] = F.element(diag[i])
            for j in range(i + 1, n):
                rep[i][j] = F.random_element(rng)
        coords = alg.coordinates_of_matrix(Matrix._trusted(F, rep))
        out.append((alg, rad, alg.element(coords, with_expr=False)))
    return out


_CASES = nilpotent_defect_inputs()


@pytest.mark.parametrize("case", range(50))
def test_lift_idempotent(case):
    alg, rad, e = _CASES[case]
    lifted, degree = lift_idempotent(alg, e, rad)
    assert lifted * lifted == lifted
    assert rad.contains(alg.coordinates(lifted - e))
    # the lift of 1 - e is 1 - (lift of e)
    comp, _ = lift_idempotent(alg, alg.identity - e, rad)
    assert comp == alg.identity - lifted
    assert degree >= 1


def test_upper_triangular_example():
    alg = build_algebra(upper_triangular(3))
    rad = radical(alg)
    F = alg.field
    # E11 + E12 + E23 is idempotent modulo J but not exactly
    rep = Matrix.from_entries(F, [[1, 1, 0], [0, 0, 1], [0, 0, 0]])
    e = alg.element(alg.coordinates_of_matrix(rep))
    assert e * e != e
    lifted, degree = lift_idempotent(alg, e, rad)
    assert lifted * lifted == lifted and degree == 2


def test_not_nilpotent_defect():
    alg = build_algebra(upper_triangular(2))
    rad = radical(alg)
    with pytest.raises(NotNilpotentDefect):
        lift_idempotent(alg, alg.identity.scale(2), rad)


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_frames_on_every_simple(name):
    alg = algebra_for(name)
    rad = radical(alg)
    for n in find_simple_submodules(alg.module, seed=0)[:3]:
        if endo_ring(n, require_split=False).dim_over_K != 1:
            continue
        frame = lift_frame(alg, n, rad)
        flags = check_frame(frame, n)
        assert all(flags.values()), flags
        assert len(frame.e) == n.dim


def test_matrix_units_d8():
    alg = algebra_for("d8-plane")
    (n,) = find_simple_submodules(alg.module)
    exprs = matrix_units_in_image(n)
    assert set(exprs) == {(0, 0), (0, 1), (1, 0), (1, 1)}
