"""Finite-dimensional algebras given by a faithful matrix representation.

An algebra ``A = K<S>`` is handed to us as two lists of matrices indexed by
the generators: a faithful representation (used to decide equality in A) and
the action on a module M (possibly far from faithful).  Elements carry both
images so products never need to be recomputed on the module side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import FieldTooSmall, InconsistentDims, NotAHomomorphism, RadicalNotNilpotent
from .field import FieldSpec
from .linalg import (
    Echelon,
    Matrix,
    SpanSolver,
    Subspace,
    Word,
    algebra_closure,
    kernel,
    kernel_of_rows,
    linear_combination,
    trace_of_product,
)

EXPR_TERM_CAP = 64


# formal noncommutative polynomials: {letters: coeff}


def _expr_add(field: FieldSpec, a: dict, b: dict, sign: int = 1) -> dict | None:
    out = dict(a)
    for w, c in b.items():
        out[w] = field.reduce(out.get(w, field.zero) + sign * c)
    out = {w: c for w, c in out.items() if c != 0}
    return out if len(out) <= EXPR_TERM_CAP else None


def _expr_mul(field: FieldSpec, a: dict, b: dict) -> dict | None:
    if len(a) * len(b) > EXPR_TERM_CAP * 4:
        return None
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            out[w] = field.reduce(out.get(w, field.zero) + ca * cb)
    out = {w: c for w, c in out.items() if c != 0}
    return out if len(out) <= EXPR_TERM_CAP else None


def evaluate_expr(expr: dict, gens: Sequence[Matrix], identity: Matrix) -> Matrix:
    field = identity.field
    terms = [Word(w).evaluate(gens, identity) for w in expr]
    if not terms:
        return Matrix.zeros(field, identity.rows, identity.cols)
    return linear_combination(field, list(expr.values()), terms)


def format_expr(field: FieldSpec, expr: dict | None, names: Sequence[str]) -> str | None:
    if expr is None:
        return None
    if not expr:
        return "0"
    parts = []
    for w, c in sorted(expr.items(), key=lambda t: (len(t[0]), t[0])):
        mono = Word(w).label(names)
        parts.append(mono if c == 1 else f"({field.format(c)})*{mono}")
    return " + ".join(parts)


class AlgebraElement:
    """An element of A seen through the faithful (``rep``) and module (``act``) images."""

    __slots__ = ("rep", "act", "expr")

    def __init__(self, rep: Matrix, act: Matrix, expr: dict | None = None) -> None:
        self.rep = rep
        self.act = act
        self.expr = expr

    @property
    def field(self) -> FieldSpec:
        return self.rep.field

    @classmethod
    def identity(cls, field: FieldSpec, d: int, m: int) -> AlgebraElement:
        return cls(Matrix.identity(field, d), Matrix.identity(field, m), {(): field.one})

    @classmethod
    def zero(cls, field: FieldSpec, d: int, m: int) -> AlgebraElement:
        return cls(Matrix.zeros(field, d, d), Matrix.zeros(field, m, m), {})

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        expr = None
        if self.expr is not None and other.expr is not None:
            expr = _expr_mul(self.field, self.expr, other.expr)
        return AlgebraElement(self.rep @ other.rep, self.act @ other.act, expr)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        expr = None
        if self.expr is not None and other.expr is not None:
            expr = _expr_add(self.field, self.expr, other.expr)
        return AlgebraElement(self.rep + other.rep, self.act + other.act, expr)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        expr = None
        if self.expr is not None and other.expr is not None:
            expr = _expr_add(self.field, self.expr, other.expr, sign=-1)
        return AlgebraElement(self.rep - other.rep, self.act - other.act, expr)

    def __neg__(self) -> AlgebraElement:
        return self.scale(-1)

    def scale(self, c: Any) -> AlgebraElement:
        F = self.field
        c = F.element(c)
        expr = None if self.expr is None else {w: F.reduce(c * v) for w, v in self.expr.items() if F.reduce(c * v) != 0}
        return AlgebraElement(self.rep.scale(c), self.act.scale(c), expr)

    def power(self, k: int) -> AlgebraElement:
        d, m = self.rep.rows, self.act.rows
        out = AlgebraElement.identity(self.field, d, m)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def is_one(self) -> bool:
        return self.rep.scalar_value() == 1

    def acts_on(self, vec: Sequence[Any]) -> list:
        return self.act.apply(vec)

    def without_expr(self) -> AlgebraElement:
        return AlgebraElement(self.rep, self.act, None)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self) -> int:
        return hash(self.rep)

    def __repr__(self) -> str:
        return f"AlgebraElement({self.rep!r})"


def sum_elements(field: FieldSpec, coeffs: Sequence[Any], elems: Sequence[AlgebraElement]) -> AlgebraElement:
    rep = linear_combination(field, coeffs, [e.rep for e in elems])
    act = linear_combination(field, coeffs, [e.act for e in elems])
    expr: dict | None = {}
    for c, e in zip(coeffs, elems):
        if not c:
            continue
        if e.expr is None or expr is None:
            expr = None
            continue
        expr = _expr_add(field, expr, {w: field.reduce(c * v) for w, v in e.expr.items()})
    return AlgebraElement(rep, act, expr)


class BlackBoxAlgebra:
    """The algebra generated by paired faithful/module generator matrices.

    Construction computes a word-tracked basis by closure of the faithful
    generators, derives the module images of the basis from the words and
    spot-checks that faithful -> module is multiplicative on that basis.
    """

    def __init__(
        self,
        field: FieldSpec,
        gen_names: Sequence[str],
        faithful: Sequence[Matrix],
        module: Sequence[Matrix],
        *,
        spot_checks: int = 100,
        seed: int = 0,
    ) -> None:
        if len(faithful) != len(module):
            raise InconsistentDims(f"{len(faithful)} faithful vs {len(module)} module generators")
        if len(gen_names) != len(faithful):
            raise InconsistentDims("generator names do not match generator count")
        if not faithful:
            raise InconsistentDims("at least one generator is required")
        d, m = faithful[0].rows, module[0].rows
        for name, f, a in zip(gen_names, faithful, module):
            if f.field != field or a.field != field:
                raise InconsistentDims(f"generator {name} lives over the wrong field")
            if f.shape != (d, d):
                raise InconsistentDims(f"faithful image of {name} has shape {f.shape}, expected {(d, d)}")
            if a.shape != (m, m):
                raise InconsistentDims(f"module image of {name} has shape {a.shape}, expected {(m, m)}")
        self.field = field
        self.gen_names = list(gen_names)
        self.faithful = list(faithful)
        self.module = list(module)
        self.d = d
        self.m = m

        basis, words = algebra_closure(self.faithful)
        self.words = words
        self.dim = len(basis)
        if field.p is not None and field.p <= self.dim:
            raise FieldTooSmall(f"GF({field.p}) needs p > dim A = {self.dim}")

        acts: dict[tuple, Matrix] = {(): Matrix.identity(field, m)}
        for w in words:
            if w.letters not in acts:
                acts[w.letters] = acts[w.letters[:-1]] @ self.module[w.letters[-1]]
        self.basis = [
            AlgebraElement(b, acts[w.letters], {w.letters: field.one}) for b, w in zip(basis, words)
        ]
        self._solver = SpanSolver(basis)
        self.homomorphism_checks = self._spot_check(spot_checks, seed)

    @classmethod
    def from_elements(cls, elems: Sequence[AlgebraElement], names: Sequence[str] | None = None, **kw) -> BlackBoxAlgebra:
        """The subalgebra generated by existing elements (their module images are trusted)."""
        names = list(names) if names is not None else [f"u{i}" for i in range(len(elems))]
        return cls(elems[0].field, names, [e.rep for e in elems], [e.act for e in elems], **kw)

    # ------------------------------------------------------------------

    def _spot_check(self, count: int, seed: int) -> int:
        for j, (f, a) in enumerate(zip(self.faithful, self.module)):
            if self.element(self.coordinates_of_matrix(f)).act != a:
                raise NotAHomomorphism(f"generator {self.gen_names[j]} is not compatible with the basis")
        D = self.dim
        if D * D <= count:
            pairs = [(i, j) for i in range(D) for j in range(D)]
        else:
            rng = random.Random(seed)
            pairs = [(rng.randrange(D), rng.randrange(D)) for _ in range(count)]
        for i, j in pairs:
            bi, bj = self.basis[i], self.basis[j]
            predicted = self.element(self.coordinates_of_matrix(bi.rep @ bj.rep), with_expr=False).act
            if predicted != bi.act @ bj.act:
                raise NotAHomomorphism(f"module action fails on the product of basis elements {i}, {j}")
        return len(pairs)

    @property
    def generators(self) -> list[AlgebraElement]:
        return [
            AlgebraElement(f, a, {(j,): self.field.one}) for j, (f, a) in enumerate(zip(self.faithful, self.module))
        ]

    @property
    def identity(self) -> AlgebraElement:
        return AlgebraElement.identity(self.field, self.d, self.m)

    def zero(self) -> AlgebraElement:
        return AlgebraElement.zero(self.field, self.d, self.m)

    def coordinates_of_matrix(self, rep: Matrix, check: bool = True) -> list | None:
        return self._solver.coordinates(rep, check=check)

    def coordinates(self, elem: AlgebraElement, check: bool = True) -> list | None:
        return self._solver.coordinates(elem.rep, check=check)

    def contains(self, elem: AlgebraElement) -> bool:
        return self._solver.contains(elem.rep)

    def element(self, coords: Sequence[Any], with_expr: bool = True) -> AlgebraElement:
        if len(coords) != self.dim:
            raise InconsistentDims(f"{len(coords)} coordinates for an algebra of dimension {self.dim}")
        e = sum_elements(self.field, coords, self.basis)
        return e if with_expr else e.without_expr()

    def scalar(self, c: Any) -> AlgebraElement:
        return self.identity.scale(c)

    def evaluate_word(self, letters: Sequence[int]) -> AlgebraElement:
        out = self.identity
        gens = self.generators
        for i in letters:
            out = out * gens[i]
        return out

    def random_element(self, rng: random.Random, spread: int = 3) -> AlgebraElement:
        coeffs = [self.field.random_element(rng, spread) for _ in range(self.dim)]
        return self.element(coeffs)

    def subspace(self, coord_vectors: Iterable[Sequence[Any]]) -> Subspace:
        return Subspace.span(self.field, self.dim, coord_vectors)

    def __repr__(self) -> str:
        return f"BlackBoxAlgebra({self.field}, gens={self.gen_names}, dim={self.dim}, d={self.d}, m={self.m})"


def build_algebra(doc, *, spot_checks: int = 100, seed: int = 0) -> BlackBoxAlgebra:
    """Build the algebra described by a parsed input document."""
    if doc.faithful is None or any(f is None for f in doc.faithful):
        raise InconsistentDims("every generator needs a faithful matrix to build the algebra")
    return BlackBoxAlgebra(doc.field, doc.names, doc.faithful, doc.module, spot_checks=spot_checks, seed=seed)


def annihilator(alg: BlackBoxAlgebra, x: Sequence[Any]) -> Subspace:
    """Coordinates c (over ``alg.basis``) with (sum c_i b_i) x = 0."""
    if len(x) != alg.m:
        raise InconsistentDims(f"vector of length {len(x)} for a module of dimension {alg.m}")
    columns = [b.act.apply(x) for b in alg.basis]
    rows = [list(r) for r in zip(*columns)]
    return alg.subspace(kernel_of_rows(alg.field, alg.dim, rows))


@dataclass(frozen=True, eq=False)
class Radical(Subspace):
    """J(A) in basis coordinates plus the dimensions of its powers J, J^2, ..., 0."""

    power_dims: tuple = ()

    @property
    def nilpotency_index(self) -> int:
        return len(self.power_dims) - 1


def _ideal_power_chain(alg: BlackBoxAlgebra, space: Subspace) -> tuple[int, ...]:
    dims = [space.dim]
    if space.dim == 0:
        return tuple(dims)
    gens = [alg.element(v, with_expr=False) for v in space.basis]
    current = gens
    for _ in range(alg.dim + 1):
        e = Echelon(alg.field, alg.dim)
        for a in current:
            for b in gens:
                e.insert(alg.coordinates(a * b, check=False))
        nxt = e.subspace()
        if not space.contains_subspace(nxt):
            raise RadicalNotNilpotent("J^k is not contained in J")
        if nxt.dim >= dims[-1] and nxt.dim > 0:
            raise RadicalNotNilpotent(f"powers of the trace radical stall at dimension {nxt.dim}")
        dims.append(nxt.dim)
        if nxt.dim == 0:
            return tuple(dims)
        current = [alg.element(v, with_expr=False) for v in nxt.basis]
    raise RadicalNotNilpotent("radical powers did not reach zero")


def radical(alg: BlackBoxAlgebra) -> Radical:
    """Jacobson radical as the kernel of the trace form of the faithful representation.

    Valid in characteristic 0 or p > dim A; the returned object carries the
    dimensions of J^k down to zero as a nilpotency certificate.
    """
    if alg.field.p is not None and alg.field.p <= alg.dim:
        raise FieldTooSmall(f"trace radical needs p > dim A = {alg.dim}")
    D = alg.dim
    reps = [b.rep for b in alg.basis]
    gram = [[alg.field.zero] * D for _ in range(D)]
    for i in range(D):
        for j in range(i, D):
            t = trace_of_product(reps[i], reps[j])
            gram[i][j] = gram[j][i] = t
    J = alg.subspace(kernel(Matrix._trusted(alg.field, gram)))
    dims = _ideal_power_chain(alg, J)
    return Radical(J.field, J.ambient, J.basis, J.pivots, power_dims=dims)


def is_scalar_action(mats: Sequence[Matrix]) -> bool:
    """True iff every matrix is a scalar multiple of the identity (vacuously true when empty)."""
    return all(m.scalar_value() is not None for m in mats)
