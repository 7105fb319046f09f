"""Brute-force certifiers that share nothing with the pipeline beyond field and linalg.

``oracle_dim`` grows a span by left multiplication (the pipeline's closure
multiplies on the right and tracks words), ``exhaustive_simplicity`` spins
every vector of a small module, and ``perm_group_fixture`` enumerates a
permutation group to build group-algebra inputs.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .errors import GroupTooLarge, ShapeMismatch, TooLargeToEnumerate
from .field import FieldSpec
from .linalg import Echelon, Matrix, spin

ENUMERATION_LIMIT = 3**8
GROUP_ORDER_CAP = 10_000


def oracle_dim(gens: Sequence[Matrix]) -> int:
    """Dimension of the unital algebra generated by square matrices."""
    if not gens:
        raise ShapeMismatch("need at least one generator")
    F = gens[0].field
    n = gens[0].rows
    e = Echelon(F, n * n)
    e.insert(Matrix.identity(F, n).flat())
    frontier = [Matrix.identity(F, n)]
    while frontier:
        nxt = []
        for b in frontier:
            for g in gens:
                c = g @ b
                if e.insert(c.flat()):
                    nxt.append(c)
        frontier = nxt
    return e.rank


def exhaustive_simplicity(n) -> bool:
    """True iff every nonzero vector of N spins to all of N (small finite fields only).

    Vectors are enumerated up to scalars: the first nonzero coordinate is 1.
    """
    F: FieldSpec = n.field
    k = n.dim
    if F.p is None:
        raise TooLargeToEnumerate("exhaustive search needs a finite field")
    if F.p**k > ENUMERATION_LIMIT:
        raise TooLargeToEnumerate(f"{F.p}^{k} vectors exceed the limit {ENUMERATION_LIMIT}")
    acts = list(n.actions)
    for lead in range(k):
        for tail in product(range(F.p), repeat=k - lead - 1):
            v = [0] * lead + [1] + list(tail)
            if spin([v], acts, ambient=k, field=F).dim != k:
                return False
    return True


Perm = tuple[int, ...]


def _compose(g: Perm, h: Perm) -> Perm:
    # apply h first, then g
    return tuple(g[h[i]] for i in range(len(h)))


def enumerate_group(gens: Sequence[Perm], degree: int, cap: int = GROUP_ORDER_CAP) -> list[Perm]:
    """Elements of <gens> in breadth-first order, identity first."""
    ident = tuple(range(degree))
    for g in gens:
        if len(g) != degree or sorted(g) != list(ident):
            raise ValueError(f"{g!r} is not a permutation of {degree} points")
    elems = [ident]
    seen = {ident}
    head = 0
    while head < len(elems):
        h = elems[head]
        head += 1
        for g in gens:
            c = _compose(g, h)
            if c not in seen:
                seen.add(c)
                elems.append(c)
                if len(elems) > cap:
                    raise GroupTooLarge(f"group order exceeds {cap}")
    return elems


def permutation_matrix(F: FieldSpec, g: Perm) -> Matrix:
    """P with P e_i = e_{g(i)}."""
    n = len(g)
    data = [[F.zero] * n for _ in range(n)]
    for i, gi in enumerate(g):
        data[gi][i] = F.one
    return Matrix._trusted(F, data)


def perm_group_fixture(
    gens: Sequence[Sequence[int]],
    degree: int | None = None,
    *,
    field: FieldSpec | None = None,
    names: Sequence[str] | None = None,
    cap: int = GROUP_ORDER_CAP,
):
    """Group-algebra input: regular representation as faithful, permutation matrices as module.

    ``gens`` are 0-based image tuples.  The regular representation uses
    L_g e_h = e_{gh}, indexed by the enumeration order.
    """
    from .io import InputDocument

    F = field or FieldSpec.rational()
    gens = [tuple(int(i) for i in g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    if not gens:
        gens = [tuple(range(degree))]
    elems = enumerate_group(gens, degree, cap)
    index = {g: k for k, g in enumerate(elems)}
    faithful = [permutation_matrix(F, tuple(index[_compose(g, h)] for h in elems)) for g in gens]
    module = [permutation_matrix(F, g) for g in gens]
    names = list(names) if names is not None else [f"g{i + 1}" for i in range(len(gens))]
    meta = {"source": "permutation-group", "degree": degree, "order": len(elems)}
    return InputDocument(F, names, faithful, module, meta)
