"""Randomised search for simple submodules (MeatAxe with Norton's criterion)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Any, Sequence

import sympy
from gmpy2 import mpq

from .errors import NonSplitSimple, ShapeMismatch
from .field import FieldSpec
from .linalg import Matrix, Subspace, charpoly, kernel, kernel_of_rows, poly_eval_matrix, spin

DEFAULT_BUDGET = 32

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class SimpleSubmodule:
    """A certified simple submodule N of M.

    ``actions`` are the generator matrices restricted to N in the coordinates
    of N's RREF basis; ``witness`` records how simplicity was certified.
    """

    subspace: Subspace
    actions: tuple
    witness: dict = dc_field(compare=False, hash=False)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def field(self) -> FieldSpec:
        return self.subspace.field


@dataclass(frozen=True)
class EndoRingInfo:
    dim_over_K: int
    basis: tuple


def restrict(actions: Sequence[Matrix], sub: Subspace) -> list[Matrix]:
    """Matrices of the actions on an invariant subspace, in its RREF-basis coordinates."""
    out = []
    for g in actions:
        cols = []
        for b in sub.basis:
            c = sub.coordinates(g.apply(b))
            if c is None:
                raise ShapeMismatch("subspace is not invariant under the action")
            cols.append(c)
        out.append(Matrix._trusted(sub.field, [list(r) for r in zip(*cols)]))
    return out


def _embed(sub: Subspace, local: Sequence[Sequence[Any]]) -> list[list]:
    return [sub.combine(v) for v in local]


# ----------------------------------------------------------------------
# polynomial factorisation


def _to_sympy(field: FieldSpec, coeffs: Sequence[Any]) -> sympy.Poly:
    hi_first = list(reversed(coeffs))
    if field.p is None:
        vals = [sympy.Rational(int(mpq(c).numerator), int(mpq(c).denominator)) for c in hi_first]
        return sympy.Poly(vals, _X, domain="QQ")
    return sympy.Poly([int(c) for c in hi_first], _X, modulus=field.p)


@lru_cache(maxsize=4096)
def _factor_cached(field: FieldSpec, coeffs: tuple) -> tuple:
    poly = _to_sympy(field, coeffs)
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        f = f.monic()
        vals = f.all_coeffs()[::-1]
        if field.p is None:
            raw = tuple(mpq(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in vals)
        else:
            raw = tuple(int(v) % field.p for v in vals)
        out.append((raw, mult))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return tuple(out)


def irreducible_factors(field: FieldSpec, coeffs: Sequence[Any]) -> list[tuple[tuple, int]]:
    """Monic irreducible factors (constant term first) with multiplicities, smallest degree first."""
    return list(_factor_cached(field, tuple(coeffs)))


# ----------------------------------------------------------------------
# random algebra elements


def random_algebra_element(actions: Sequence[Matrix], rng: random.Random) -> tuple[Matrix, list]:
    """A random K-combination of at most 2*dim short words in the generators."""
    F = actions[0].field
    n = actions[0].rows
    nwords = rng.randint(1, max(1, 2 * n))
    theta = Matrix.zeros(F, n, n)
    recipe = []
    for _ in range(nwords):
        length = rng.randint(1, 3)
        letters = tuple(rng.randrange(len(actions)) for _ in range(length))
        c = F.random_element(rng, spread=3, nonzero=True)
        w = actions[letters[0]]
        for i in letters[1:]:
            w = w @ actions[i]
        theta = theta + w.scale(c)
        recipe.append((F.format(c), letters))
    return theta, recipe


def _norton(actions: Sequence[Matrix], rng: random.Random) -> tuple[str, Any]:
    """One MeatAxe round on the module given by ``actions`` (in local coordinates).

    Returns ``("simple", witness)``, ``("proper", local vectors spanning a
    proper nonzero submodule)`` or ``("inconclusive", None)``.
    """
    F = actions[0].field
    n = actions[0].rows
    theta, recipe = random_algebra_element(actions, rng)
    cp = charpoly(theta)
    transposed = None
    for coeffs, mult in irreducible_factors(F, cp):
        ftheta = poly_eval_matrix(coeffs, theta)
        null = kernel(ftheta)
        if not null:
            continue
        sub = spin([null[0]], actions, ambient=n, field=F)
        if sub.dim < n:
            return "proper", [list(v) for v in sub.basis]
        deg = len(coeffs) - 1
        if len(null) != deg:
            continue
        if transposed is None:
            transposed = [g.transpose() for g in actions]
        null_t = kernel(ftheta.transpose())
        sub_t = spin([null_t[0]], transposed, ambient=n, field=F)
        if sub_t.dim < n:
            # the annihilator of a proper invariant subspace for the transposed action
            return "proper", kernel_of_rows(F, n, [list(r) for r in sub_t.basis])
        witness = {
            "theta": recipe,
            "factor": [F.format(c) for c in coeffs],
            "nullity": len(null),
            "kind": "norton",
        }
        return "simple", witness
    return "inconclusive", None


def _reduce_to_simple(
    actions: Sequence[Matrix], sub: Subspace, rng: random.Random, budget: int
) -> SimpleSubmodule | None:
    """Descend from an invariant subspace to a simple submodule inside it."""
    attempts = 0
    while True:
        local = restrict(actions, sub)
        if sub.dim == 1:
            return SimpleSubmodule(sub, tuple(local), {"kind": "dimension-one"})
        if attempts >= budget:
            return None
        attempts += 1
        verdict, data = _norton(local, rng)
        if verdict == "simple":
            return SimpleSubmodule(sub, tuple(local), data)
        if verdict == "proper":
            sub = Subspace.span(sub.field, sub.ambient, _embed(sub, data))


def find_simple_submodules(
    actions: Sequence[Matrix], seed: int | str = 0, budget: int = DEFAULT_BUDGET
) -> list[SimpleSubmodule]:
    """All distinct certified simple submodules discovered with ``budget`` random elements.

    Each random element contributes one candidate per irreducible factor of
    its characteristic polynomial: the spin of a kernel vector, reduced to a
    simple submodule.  Stops early once the whole module is certified simple.
    Results are sorted by decreasing dimension, then by RREF basis.
    """
    if not actions:
        raise ShapeMismatch("need at least one action matrix")
    F = actions[0].field
    n = actions[0].rows
    for g in actions:
        if g.shape != (n, n):
            raise ShapeMismatch("action matrices must be square of one size")
    rng = random.Random(seed)
    found: dict[Subspace, SimpleSubmodule] = {}
    whole = Subspace.span(F, n, [[F.one if i == j else F.zero for i in range(n)] for j in range(n)])
    if n == 1:
        return [SimpleSubmodule(whole, tuple(actions), {"kind": "dimension-one"})]
    for _ in range(budget):
        theta, _ = random_algebra_element(actions, rng)
        for coeffs, _mult in irreducible_factors(F, charpoly(theta)):
            null = kernel(poly_eval_matrix(coeffs, theta))
            if not null:
                continue
            sub = spin([null[0]], actions, ambient=n, field=F)
            simple = _reduce_to_simple(actions, sub, rng, budget)
            if simple is not None and simple.subspace not in found:
                found[simple.subspace] = simple
        if whole in found:
            break
    return sorted(found.values(), key=lambda s: (-s.dim, s.subspace.sort_key()))


def endo_ring(n: SimpleSubmodule, require_split: bool = True) -> EndoRingInfo:
    """The commutant End_A(N) of the restricted action, by a linear solve."""
    acts = n.actions
    F = n.field
    k = n.dim
    rows = []
    # (X g - g X)_{ij} = sum_t X_it g_tj - g_it X_tj, unknown X_ab at index a*k + b
    for g in acts:
        gd = g.data
        for i in range(k):
            for j in range(k):
                row = [F.zero] * (k * k)
                for t in range(k):
                    row[i * k + t] = F.reduce(row[i * k + t] + gd[t][j])
                    row[t * k + j] = F.reduce(row[t * k + j] - gd[i][t])
                rows.append(row)
    sols = kernel_of_rows(F, k * k, rows)
    basis = tuple(Matrix.from_flat(F, v, k) for v in sols)
    info = EndoRingInfo(len(basis), basis)
    if require_split and info.dim_over_K != 1:
        raise NonSplitSimple(f"End_A(N) has dimension {info.dim_over_K} over {F}; a field extension is needed")
    return info


def simple_submodule(
    actions: Sequence[Matrix],
    seed: int | str = 0,
    budget: int = DEFAULT_BUDGET,
    *,
    min_dim: int = 2,
    require_split: bool = False,
) -> SimpleSubmodule | None:
    """A simple submodule of dimension >= ``min_dim``, preferring the largest.

    Ties are broken by the smallest RREF basis.  With ``require_split`` the
    candidates whose endomorphism ring is larger than K are passed over.
    Returns None when nothing qualifying is found within the budget.
    """
    if not actions or actions[0].rows < min_dim:
        return None
    for cand in find_simple_submodules(actions, seed, budget):
        if cand.dim < min_dim:
            continue
        if require_split and endo_ring(cand, require_split=False).dim_over_K != 1:
            continue
        return cand
    return None
