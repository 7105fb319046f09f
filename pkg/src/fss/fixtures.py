"""Named inputs: small group algebras, triangular algebras and seeded random examples."""

from __future__ import annotations

import random
import re
from typing import Callable

from .errors import CycleSyntaxError
from .field import FieldSpec
from .io import InputDocument
from .linalg import Matrix, matrix_inverse
from .oracle import perm_group_fixture

QQ = FieldSpec.rational()


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycle_group(text: str) -> list[list[int]]:
    body = text.strip()
    if not body:
        raise CycleSyntaxError("empty generator")
    if _CYCLE_RE.sub("", body).strip():
        raise CycleSyntaxError(f"unexpected text outside cycles in {text!r}")
    cycles = []
    for inner in _CYCLE_RE.findall(body):
        parts = [t for t in re.split(r"[,\s]+", inner.strip()) if t]
        if not all(t.isdigit() and int(t) >= 1 for t in parts):
            raise CycleSyntaxError(f"cycle points must be positive integers: ({inner})")
        pts = [int(t) for t in parts]
        if len(set(pts)) != len(pts):
            raise CycleSyntaxError(f"repeated point in cycle ({inner})")
        cycles.append(pts)
    return cycles


def cycles_to_perms(args: list[str], degree: int | None = None) -> list[tuple[int, ...]]:
    """Cycle notation to 0-based image tuples.

    A single argument without ``;`` makes every cycle its own generator, so
    ``"(1,2,3,4)(1,3)"`` is D8.  Generators made of several cycles are
    separated by ``;`` or passed as separate arguments, and their cycles are
    applied left to right.  ``"()"`` is the trivial group.  Points are
    1-based.
    """
    if not args:
        raise CycleSyntaxError("no generators given")
    if len(args) == 1 and ";" not in args[0]:
        groups = [[c] for c in _parse_cycle_group(args[0])]
    else:
        pieces = [p for a in args for p in a.split(";")]
        groups = [_parse_cycle_group(p) for p in pieces]
    top = max((max(c) for g in groups for c in g if c), default=1)
    if degree is None:
        degree = top
    elif degree < top:
        raise CycleSyntaxError(f"point {top} exceeds degree {degree}")
    gens = []
    for cycles in groups:
        img = list(range(degree))
        for cyc in cycles:
            step = {a - 1: b - 1 for a, b in zip(cyc, cyc[1:] + cyc[:1])}
            img = [step.get(v, v) for v in img]
        gens.append(tuple(img))
    return gens


def cyclic6() -> InputDocument:
    return perm_group_fixture(cycles_to_perms(["(1,2,3,4,5,6)"]), names=["c"])


def symmetric3() -> InputDocument:
    return perm_group_fixture(cycles_to_perms(["(1,2,3)(1,2)"]), names=["r", "s"])


def symmetric4() -> InputDocument:
    return perm_group_fixture(cycles_to_perms(["(1,2,3,4)(1,2)"]), names=["r", "s"])


def dihedral8() -> InputDocument:
    """<(1234), (13)> acting on the square's vertices."""
    return perm_group_fixture(cycles_to_perms(["(1,2,3,4)(1,3)"]), names=["r", "s"])


def dihedral8_plane() -> InputDocument:
    """D8 with its 2-dimensional reflection module: r a quarter turn, s a reflection."""
    base = dihedral8()
    r = Matrix.from_entries(QQ, [[0, -1], [1, 0]])
    s = Matrix.from_entries(QQ, [[1, 0], [0, -1]])
    meta = dict(base.metadata, module="plane")
    return InputDocument(QQ, ["r", "s"], base.faithful, [r, s], meta)


_Q8_MUL = {
    # quaternion units as (sign, unit) with unit in 1, i, j, k
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion8() -> InputDocument:
    """Q8 through its left regular action on its eight elements."""
    elems = [(sg, u) for sg in (1, -1) for u in ("1", "i", "j", "k")]
    index = {e: n for n, e in enumerate(elems)}

    def left(g):
        out = []
        for sg, u in elems:
            sign, w = _Q8_MUL[(g[1], u)]
            out.append(index[(g[0] * sg * sign, w)])
        return tuple(out)

    return perm_group_fixture([left((1, "i")), left((1, "j"))], 8, names=["i", "j"])


def upper_triangular(n: int = 2, field: FieldSpec = QQ) -> InputDocument:
    """Upper triangular n x n matrices, generated by E_ii and E_{i,i+1}."""
    gens = [Matrix.unit(field, n, i, i) for i in range(n - 1)]
    gens += [Matrix.unit(field, n, i, i + 1) for i in range(n - 1)]
    names = [f"e{i + 1}{i + 1}" for i in range(n - 1)] + [f"e{i + 1}{i + 2}" for i in range(n - 1)]
    return InputDocument(field, names, list(gens), list(gens), {"source": f"upper-triangular-{n}"})


def _random_invertible(F: FieldSpec, n: int, rng: random.Random) -> tuple[Matrix, Matrix]:
    while True:
        m = Matrix._trusted(F, [[F.random_element(rng) for _ in range(n)] for _ in range(n)])
        inv = matrix_inverse(m)
        if inv is not None:
            return m, inv


def random_block_triangular(
    seed: int, blocks: tuple[int, ...] = (2, 2, 2), p: int = 101, ngens: int = 2
) -> InputDocument:
    """A random subalgebra of block upper-triangular matrices over GF(p), in a random basis.

    The module is the natural one, so faithful and module matrices coincide.
    """
    F = FieldSpec.prime(p)
    rng = random.Random(f"block-triangular/{seed}")
    n = sum(blocks)
    starts = [sum(blocks[:k]) for k in range(len(blocks))]
    owner = [k for k, b in enumerate(blocks) for _ in range(b)]
    conj, conj_inv = _random_invertible(F, n, rng)
    gens = []
    for _ in range(ngens):
        data = [
            [F.random_element(rng) if owner[i] <= owner[j] else F.zero for j in range(n)] for i in range(n)
        ]
        gens.append(conj @ Matrix._trusted(F, data) @ conj_inv)
    names = [f"a{k + 1}" for k in range(ngens)]
    meta = {"source": "random-block-triangular", "seed": seed, "blocks": list(blocks), "starts": starts}
    return InputDocument(F, names, gens, list(gens), meta)


RANDOM_BLOCKS = [(0, (2, 2, 2)), (1, (3, 3)), (2, (2, 1, 3))]


def random_module(seed: int, p: int, dim: int, ngens: int = 2) -> list[Matrix]:
    """Generator matrices of a random GF(p)-module, often reducible by construction."""
    F = FieldSpec.prime(p)
    rng = random.Random(f"meataxe-module/{seed}")
    split = rng.randint(0, dim - 1)
    conj, conj_inv = _random_invertible(F, dim, rng)
    out = []
    for _ in range(ngens):
        data = [
            [F.zero if (split and i >= split > j) else F.random_element(rng) for j in range(dim)]
            for i in range(dim)
        ]
        out.append(conj @ Matrix._trusted(F, data) @ conj_inv)
    return out


FIXTURES: dict[str, Callable[[], InputDocument]] = {
    "c6": cyclic6,
    "s3": symmetric3,
    "s4": symmetric4,
    "d8": dihedral8,
    "d8-plane": dihedral8_plane,
    "q8": quaternion8,
    "ut2": lambda: upper_triangular(2),
    "ut3": lambda: upper_triangular(3),
}
for _seed, _blocks in RANDOM_BLOCKS:
    FIXTURES[f"gf101-{_seed}"] = lambda s=_seed, b=_blocks: random_block_triangular(s, b)


def fixture(name: str) -> InputDocument:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}") from None
