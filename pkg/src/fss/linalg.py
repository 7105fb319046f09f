"""Dense exact linear algebra over a :class:`~fss.field.FieldSpec`.

Everything here works on raw canonical scalars (see :mod:`fss.field`).
Matrices act on column vectors from the left.  Pivots are chosen leftmost and
worklists are FIFO so every routine is deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Sequence

from .errors import ClosureOverflow, ShapeMismatch
from .field import FieldScalar, FieldSpec

Vector = list


class Matrix:
    """An immutable dense matrix of raw field values (row-major)."""

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field: FieldSpec, data: Sequence[Sequence[Any]], cols: int | None = None) -> None:
        self.field = field
        self.data = [list(r) for r in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else (cols or 0)
        if any(len(r) != self.cols for r in self.data):
            raise ShapeMismatch("ragged matrix rows")
        if self.rows == 0 or self.cols == 0:
            raise ShapeMismatch("matrices must have positive dimensions")
        self._hash = None

    @classmethod
    def _trusted(cls, field: FieldSpec, data: list) -> Matrix:
        m = cls.__new__(cls)
        m.field = field
        m.data = data
        m.rows = len(data)
        m.cols = len(data[0])
        m._hash = None
        return m

    @classmethod
    def from_entries(cls, field: FieldSpec, rows: Iterable[Iterable[Any]]) -> Matrix:
        return cls(field, [[field.element(v) for v in r] for r in rows])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._trusted(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        z = field.zero
        return cls._trusted(field, [[z] * cols for _ in range(rows)])

    @classmethod
    def unit(cls, field: FieldSpec, n: int, i: int, j: int) -> Matrix:
        m = [[field.zero] * n for _ in range(n)]
        m[i][j] = field.one
        return cls._trusted(field, m)

    @classmethod
    def from_flat(cls, field: FieldSpec, flat: Sequence[Any], cols: int) -> Matrix:
        return cls._trusted(field, [list(flat[i:i + cols]) for i in range(0, len(flat), cols)])

    # ------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> FieldScalar:
        return FieldScalar(self.field, self.data[i][j])

    def flat(self) -> list:
        return [v for r in self.data for v in r]

    def transpose(self) -> Matrix:
        return Matrix._trusted(self.field, [list(c) for c in zip(*self.data)])

    def _check(self, other: Matrix) -> None:
        if other.field != self.field:
            from .errors import MixedFields

            raise MixedFields(f"{self.field} vs {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        F = self.field
        return Matrix._trusted(F, [F.reduce_vec([a + b for a, b in zip(r, s)]) for r, s in zip(self.data, other.data)])

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        F = self.field
        return Matrix._trusted(F, [F.reduce_vec([a - b for a, b in zip(r, s)]) for r, s in zip(self.data, other.data)])

    def __neg__(self) -> Matrix:
        F = self.field
        return Matrix._trusted(F, [F.reduce_vec([-a for a in r]) for r in self.data])

    def scale(self, c: Any) -> Matrix:
        F = self.field
        c = F.element(c)
        return Matrix._trusted(F, [F.reduce_vec([c * a for a in r]) for r in self.data])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.cols != other.rows:
                raise ShapeMismatch(f"{self.shape} @ {other.shape}")
            return Matrix._trusted(self.field, _matmul(self.field, self.data, other.data, other.cols))
        return self.apply(other)

    def apply(self, vec: Sequence[Any]) -> Vector:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ShapeMismatch(f"{self.shape} applied to length {len(vec)}")
        F = self.field
        out = [sum((a * v for a, v in zip(row, vec) if a and v), F.zero) for row in self.data]
        return F.reduce_vec(out)

    def power(self, k: int) -> Matrix:
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(v for r in self.data for v in r)

    def scalar_value(self) -> Any | None:
        """Return lambda when the matrix equals lambda * I, else None."""
        if not self.is_square:
            return None
        lam = self.data[0][0]
        for i, r in enumerate(self.data):
            for j, v in enumerate(r):
                if v != (lam if i == j else 0):
                    return None
        return lam

    def trace(self) -> Any:
        return self.field.reduce(sum((self.data[i][i] for i in range(self.rows)), self.field.zero))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.data == other.data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, tuple(tuple(r) for r in self.data)))
        return self._hash

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(v) for v in r] for r in self.data]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(r) for r in self.to_strings())
        return f"Matrix({self.field}, [{body}])"


def _matmul(F: FieldSpec, A: list, B: list, bcols: int) -> list:
    out = []
    for row in A:
        acc = None
        for k, a in enumerate(row):
            if a:
                brow = B[k]
                if acc is None:
                    acc = [a * b for b in brow]
                else:
                    acc = [x + a * b for x, b in zip(acc, brow)]
        if acc is None:
            acc = [F.zero] * bcols
        else:
            acc = F.reduce_vec(acc)
        out.append(acc)
    return out


def trace_of_product(a: Matrix, b: Matrix) -> Any:
    """tr(a b) without forming the product."""
    F = a.field
    bt = b.data
    total = F.zero
    for i, row in enumerate(a.data):
        for k, v in enumerate(row):
            if v:
                w = bt[k][i]
                if w:
                    total += v * w
    return F.reduce(total)


# ----------------------------------------------------------------------
# incremental echelon form


class Echelon:
    """Incrementally maintained reduced row echelon form.

    With ``track=True`` each stored row remembers how it is combined from
    the vectors offered to :meth:`insert` (indexed in insertion order,
    dependent offers included), which gives coordinates with respect to
    an arbitrary spanning list.
    """

    def __init__(self, field: FieldSpec, ncols: int, track: bool = False) -> None:
        self.field = field
        self.ncols = ncols
        self.track = track
        self.pivots: list[int] = []
        self.rows: list[list] = []
        self.combos: list[dict[int, Any]] = []
        self.offered = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _residual(self, v: Sequence[Any]) -> tuple[list, list]:
        coeffs = [v[p] for p in self.pivots]
        r = list(v)
        for c, row in zip(coeffs, self.rows):
            if c:
                r = [a - c * b for a, b in zip(r, row)]
        return self.field.reduce_vec(r), coeffs

    def reduce(self, v: Sequence[Any]) -> list:
        if len(v) != self.ncols:
            raise ShapeMismatch(f"vector of length {len(v)} in ambient {self.ncols}")
        return self._residual(v)[0]

    def contains(self, v: Sequence[Any]) -> bool:
        return not any(self.reduce(v))

    def insert(self, v: Sequence[Any]) -> bool:
        """Add ``v`` to the span; return True when it was independent."""
        if len(v) != self.ncols:
            raise ShapeMismatch(f"vector of length {len(v)} in ambient {self.ncols}")
        F = self.field
        idx = self.offered
        self.offered += 1
        r, coeffs = self._residual(v)
        lead = next((i for i, a in enumerate(r) if a), None)
        if lead is None:
            return False
        inv = F.inv(r[lead])
        r = F.reduce_vec([a * inv for a in r])
        combo: dict[int, Any] = {}
        if self.track:
            combo[idx] = F.one
            for c, cb in zip(coeffs, self.combos):
                if c:
                    for k, w in cb.items():
                        combo[k] = combo.get(k, F.zero) - c * w
            combo = {k: F.reduce(w * inv) for k, w in combo.items() if F.reduce(w * inv) != 0}
        for i, row in enumerate(self.rows):
            c = row[lead]
            if c:
                self.rows[i] = F.reduce_vec([a - c * b for a, b in zip(row, r)])
                if self.track:
                    cb = dict(self.combos[i])
                    for k, w in combo.items():
                        cb[k] = F.reduce(cb.get(k, F.zero) - c * w)
                    self.combos[i] = {k: w for k, w in cb.items() if w != 0}
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < lead:
            pos += 1
        self.pivots.insert(pos, lead)
        self.rows.insert(pos, r)
        if self.track:
            self.combos.insert(pos, combo)
        return True

    def coordinates(self, v: Sequence[Any], check: bool = True) -> list | None:
        """Coefficients of ``v`` over the offered vectors, or None if outside the span.

        ``check=False`` skips the membership test when ``v`` is known to lie
        in the span.
        """
        if not self.track:
            raise ValueError("coordinates need a tracking echelon")
        F = self.field
        if check and any(self.reduce(v)):
            return None
        out = [F.zero] * self.offered
        for p, cb in zip(self.pivots, self.combos):
            c = v[p]
            if c:
                for k, w in cb.items():
                    out[k] += c * w
        return F.reduce_vec(out)

    def subspace(self) -> Subspace:
        return Subspace(self.field, self.ncols, tuple(tuple(r) for r in self.rows), tuple(self.pivots))


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^ambient stored by its RREF basis."""

    field: FieldSpec
    ambient: int
    basis: tuple = ()
    pivots: tuple = ()
    _echelon: Any = dc_field(default=None, compare=False, repr=False)

    @classmethod
    def span(cls, field: FieldSpec, ambient: int, vectors: Iterable[Sequence[Any]]) -> Subspace:
        e = Echelon(field, ambient)
        for v in vectors:
            e.insert(v)
        return e.subspace()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _ech(self) -> Echelon:
        if self._echelon is None:
            e = Echelon(self.field, self.ambient)
            e.rows = [list(r) for r in self.basis]
            e.pivots = list(self.pivots)
            object.__setattr__(self, "_echelon", e)
        return self._echelon

    def reduce(self, v: Sequence[Any]) -> list:
        return self._ech().reduce(v)

    def contains(self, v: Sequence[Any]) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence[Any]) -> list | None:
        """Coordinates of ``v`` over the RREF basis, or None if ``v`` lies outside."""
        if not self.contains(v):
            return None
        return [v[p] for p in self.pivots]

    def combine(self, coeffs: Sequence[Any]) -> list:
        F = self.field
        out = [F.zero] * self.ambient
        for c, row in zip(coeffs, self.basis):
            if c:
                out = [a + c * b for a, b in zip(out, row)]
        return F.reduce_vec(out)

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field, self.ambient, self.basis) == (other.field, other.ambient, other.basis)

    def __hash__(self) -> int:
        return hash((self.field, self.ambient, self.basis))

    def sort_key(self) -> tuple:
        return tuple(tuple(r) for r in self.basis)


# ----------------------------------------------------------------------
# echelon, solve, kernels


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    e = Echelon(m.field, m.cols)
    for row in m.data:
        e.insert(row)
    z = [m.field.zero] * m.cols
    rows = [list(r) for r in e.rows] + [list(z) for _ in range(m.rows - e.rank)]
    return Matrix._trusted(m.field, rows), e.rank, list(e.pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


def solve(a: Matrix, b: Sequence[Any]) -> Vector | None:
    """Some x with a x = b (free variables zero), or None when inconsistent."""
    if len(b) != a.rows:
        raise ShapeMismatch(f"right-hand side of length {len(b)} for {a.shape}")
    F = a.field
    e = Echelon(F, a.cols + 1)
    for row, rhs in zip(a.data, b):
        e.insert(list(row) + [F.element(rhs)])
    if e.pivots and e.pivots[-1] == a.cols:
        return None
    x = [F.zero] * a.cols
    for p, row in zip(e.pivots, e.rows):
        x[p] = row[a.cols]
    return x


def kernel(m: Matrix) -> list[Vector]:
    """Basis of {v : m v = 0}, one vector per free column (leftmost first)."""
    F = m.field
    e = Echelon(F, m.cols)
    for row in m.data:
        e.insert(row)
    piv = set(e.pivots)
    out = []
    for f in range(m.cols):
        if f in piv:
            continue
        v = [F.zero] * m.cols
        v[f] = F.one
        for p, row in zip(e.pivots, e.rows):
            if p < f and row[f]:
                v[p] = F.reduce(-row[f])
        out.append(v)
    return out


def left_kernel(m: Matrix) -> list[Vector]:
    """Basis of {c : c^T m = 0}."""
    return kernel(m.transpose())


def kernel_of_rows(field: FieldSpec, ncols: int, rows: Sequence[Sequence[Any]]) -> list[Vector]:
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    return kernel(Matrix._trusted(field, [list(r) for r in rows]))


def matrix_inverse(m: Matrix) -> Matrix | None:
    if not m.is_square:
        raise ShapeMismatch("inverse of a non-square matrix")
    F = m.field
    n = m.rows
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(m.data)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = F.inv(aug[col][col])
        prow = F.reduce_vec([a * inv for a in aug[col]])
        aug[col] = prow
        for r in range(n):
            if r != col:
                c = aug[r][col]
                if c:
                    aug[r] = F.reduce_vec([a - c * b for a, b in zip(aug[r], prow)])
    return Matrix._trusted(F, [row[n:] for row in aug])


# ----------------------------------------------------------------------
# characteristic polynomial (Hessenberg reduction, any field)


def charpoly(m: Matrix) -> list:
    """Monic characteristic polynomial, coefficients from constant term upward."""
    if not m.is_square:
        raise ShapeMismatch("charpoly of a non-square matrix")
    F = m.field
    n = m.rows
    H = [list(r) for r in m.data]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for r in H:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = F.inv(H[j + 1][j])
        for i in range(j + 2, n):
            f = F.reduce(H[i][j] * inv)
            if not f:
                continue
            H[i] = F.reduce_vec([a - f * b for a, b in zip(H[i], H[j + 1])])
            for r in H:
                r[j + 1] = F.reduce(r[j + 1] + f * r[i])
    # p_k(x) = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    polys: list[list] = [[F.one]]
    for k in range(n):
        prev = polys[-1]
        nxt = [F.zero] + list(prev)
        for t, c in enumerate(prev):
            nxt[t] = F.reduce(nxt[t] - H[k][k] * c)
        prod = F.one
        for i in range(k - 1, -1, -1):
            prod = F.reduce(prod * H[i + 1][i])
            if not prod:
                break
            coef = F.reduce(H[i][k] * prod)
            if coef:
                for t, c in enumerate(polys[i]):
                    nxt[t] = F.reduce(nxt[t] - coef * c)
        polys.append(nxt)
    return polys[-1]


def poly_eval_matrix(coeffs: Sequence[Any], m: Matrix) -> Matrix:
    """Horner evaluation of a polynomial (constant term first) at a square matrix."""
    F = m.field
    n = m.rows
    result = Matrix.zeros(F, n, n)
    for c in reversed(coeffs):
        result = result @ m
        if c:
            data = [list(r) for r in result.data]
            for i in range(n):
                data[i][i] = F.reduce(data[i][i] + c)
            result = Matrix._trusted(F, data)
    return result


# ----------------------------------------------------------------------
# spinning and algebra closure


def spin(
    seeds: Iterable[Sequence[Any]],
    action: Sequence[Matrix],
    ambient: int | None = None,
    field: FieldSpec | None = None,
) -> Subspace:
    """Smallest subspace containing ``seeds`` and closed under every action matrix."""
    seeds = [list(s) for s in seeds]
    if ambient is None:
        if action:
            ambient = action[0].rows
        elif seeds:
            ambient = len(seeds[0])
        else:
            raise ShapeMismatch("cannot infer the ambient dimension")
    for g in action:
        if g.shape != (ambient, ambient):
            raise ShapeMismatch(f"action matrix of shape {g.shape} on ambient {ambient}")
    if field is None:
        if not action:
            raise ShapeMismatch("cannot infer the field without action matrices")
        field = action[0].field
    e = Echelon(field, ambient)
    queue: deque = deque()
    for s in seeds:
        if e.insert(s):
            queue.append(s)
    while queue and e.rank < ambient:
        v = queue.popleft()
        for g in action:
            w = g.apply(v)
            if e.insert(w):
                queue.append(w)
    return e.subspace()


@dataclass(frozen=True)
class Word:
    """A scalar multiple of a product of generators; letters are generator indices.

    ``Word((0, 1))`` evaluates to ``gens[0] @ gens[1]``; the empty word is the identity.
    """

    letters: tuple = ()
    coeff: Any = 1

    def evaluate(self, gens: Sequence[Matrix], identity: Matrix) -> Matrix:
        out = identity
        for i in self.letters:
            out = out @ gens[i]
        return out if self.coeff == 1 else out.scale(self.coeff)

    def __len__(self) -> int:
        return len(self.letters)

    def label(self, names: Sequence[str] | None = None) -> str:
        if not self.letters:
            return "1"
        return "*".join(names[i] if names else f"g{i}" for i in self.letters)


def algebra_closure(gens: Sequence[Matrix], track: bool = True, n: int | None = None) -> tuple[list[Matrix], list[Word]]:
    """Basis of the unital algebra generated by ``gens``.

    Breadth-first: each basis element is multiplied on the right by every
    generator and kept when it leaves the current span.  ``basis[i]`` is
    exactly the product ``words[i]`` evaluates to.
    """
    if n is None:
        if not gens:
            raise ShapeMismatch("need a generator or an explicit size")
        n = gens[0].rows
    for g in gens:
        if g.shape != (n, n):
            raise ShapeMismatch(f"generator of shape {g.shape}, expected {(n, n)}")
    field = gens[0].field if gens else None
    if field is None:
        raise ShapeMismatch("need at least one generator to fix the field")
    cap = n * n
    one = Matrix.identity(field, n)
    e = Echelon(field, n * n)
    e.insert(one.flat())
    basis = [one]
    words = [Word(())]
    head = 0
    while head < len(basis):
        b, w = basis[head], words[head]
        head += 1
        for j, g in enumerate(gens):
            cand = b @ g
            if e.insert(cand.flat()):
                if len(w.letters) + 1 > cap:
                    raise ClosureOverflow(f"word length exceeded {cap}")
                basis.append(cand)
                words.append(Word(w.letters + (j,)))
    if not track:
        words = [Word(()) for _ in basis]
    return basis, words


class SpanSolver:
    """Coordinates of matrices over a fixed list of same-shape matrices."""

    def __init__(self, basis: Sequence[Matrix]) -> None:
        if not basis:
            raise ShapeMismatch("empty basis")
        self.shape = basis[0].shape
        self.field = basis[0].field
        self.size = len(basis)
        self.echelon = Echelon(self.field, self.shape[0] * self.shape[1], track=True)
        for b in basis:
            if b.shape != self.shape:
                raise ShapeMismatch(f"basis element of shape {b.shape}, expected {self.shape}")
            self.echelon.insert(b.flat())

    @property
    def rank(self) -> int:
        return self.echelon.rank

    def coordinates(self, target: Matrix, check: bool = True) -> list | None:
        if target.shape != self.shape:
            raise ShapeMismatch(f"target of shape {target.shape}, expected {self.shape}")
        return self.echelon.coordinates(target.flat(), check=check)

    def contains(self, target: Matrix) -> bool:
        return self.echelon.contains(target.flat())


def express_in_span(target: Matrix, basis: Sequence[Matrix]) -> list | None:
    """Coefficients c with sum c_i basis_i = target, or None."""
    return SpanSolver(basis).coordinates(target)


def linear_combination(field: FieldSpec, coeffs: Sequence[Any], mats: Sequence[Matrix]) -> Matrix:
    rows, cols = mats[0].shape
    acc = [[field.zero] * cols for _ in range(rows)]
    for c, m in zip(coeffs, mats):
        if c:
            acc = [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(acc, m.data)]
    return Matrix._trusted(field, [field.reduce_vec(r) for r in acc])
