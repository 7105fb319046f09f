"""Matrix units on a simple module and their lift to a frame of idempotents in A.

Lifting happens in two stages.  First the naive preimages of the diagonal
matrix units are corrected inside A/J(A) by the identity of the kernel ideal,
which makes them exact idempotents modulo the radical.  Then the classical
binomial lifting formula removes the remaining nilpotent defect.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from .algebra import AlgebraElement, BlackBoxAlgebra, Radical, sum_elements
from .errors import ImageNotFull, LiftDiverged, NoIdealIdentity, NotNilpotentDefect
from .linalg import Matrix, Subspace, algebra_closure, express_in_span, kernel_of_rows, solve
from .meataxe import SimpleSubmodule, restrict

UnitExprs = dict  # (i, j) -> list of (coeff, letters)


@dataclass
class Frame:
    e: list  # lifted diagonal idempotents e_1..e_n
    e0: AlgebraElement
    units_col: list  # e_{i1}; units_col[0] is e_1
    units_row: list  # e_{1i}; units_row[0] is e_1
    ideal_identity: AlgebraElement | None = None
    nilpotency: list = dc_field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.e)


def rho_n(elem: AlgebraElement, n: SimpleSubmodule) -> Matrix:
    """The action of an element on N, in N's RREF-basis coordinates."""
    return restrict([elem.act], n.subspace)[0]


def matrix_units_in_image(n: SimpleSubmodule, closure: tuple | None = None) -> UnitExprs:
    """Express every matrix unit E_ij on N as a K-combination of generator words."""
    k = n.dim
    F = n.field
    if closure is None:
        closure = algebra_closure(list(n.actions), n=k)
    basis, words = closure
    if len(basis) < k * k:
        raise ImageNotFull(f"image of A on N has dimension {len(basis)} < {k * k}")
    out: UnitExprs = {}
    for i in range(k):
        for j in range(k):
            coeffs = express_in_span(Matrix.unit(F, k, i, j), basis)
            if coeffs is None:
                raise ImageNotFull(f"E_{i + 1}{j + 1} lies outside the image")
            out[(i, j)] = [(c, w.letters) for c, w in zip(coeffs, words) if c]
    return out


def unit_preimages(alg: BlackBoxAlgebra, exprs: UnitExprs, keys=None) -> dict:
    """Evaluate unit expressions on the algebra generators (arbitrary preimages in A)."""
    cache: dict[tuple, AlgebraElement] = {(): alg.identity.without_expr()}
    gens = [g.without_expr() for g in alg.generators]

    def word(letters: tuple) -> AlgebraElement:
        if letters not in cache:
            cache[letters] = word(letters[:-1]) * gens[letters[-1]]
        return cache[letters]

    out = {}
    for key in keys if keys is not None else exprs:
        terms = exprs[key]
        if not terms:
            out[key] = alg.zero().without_expr()
            continue
        out[key] = sum_elements(alg.field, [c for c, _ in terms], [word(w) for _, w in terms]).without_expr()
    return out


def kernel_of_action(alg: BlackBoxAlgebra, n: SimpleSubmodule) -> Subspace:
    """Coordinates of ker(A -> End(N))."""
    images = [rho_n(b, n).flat() for b in alg.basis]
    rows = [list(r) for r in zip(*images)]
    return alg.subspace(kernel_of_rows(alg.field, alg.dim, rows))


def ideal_identity(alg: BlackBoxAlgebra, ideal: Subspace, rad: Subspace) -> AlgebraElement:
    """An element u of ``ideal`` with u y = y = y u modulo ``rad`` for all y in the ideal.

    ``ideal`` must contain ``rad``; returns 0 when the quotient ideal is zero.
    """
    F = alg.field
    if ideal.dim == rad.dim:
        return alg.zero().without_expr()
    ys = [alg.element(v, with_expr=False) for v in ideal.basis]
    q = len(ys)
    D = alg.dim
    rows: list[list] = []
    rhs: list = []
    for yr in ys:
        target = rad.reduce(alg.coordinates(yr, check=False))
        left = [rad.reduce(alg.coordinates(yq * yr, check=False)) for yq in ys]
        right = [rad.reduce(alg.coordinates(yr * yq, check=False)) for yq in ys]
        for block in (left, right):
            for comp in range(D):
                rows.append([block[qi][comp] for qi in range(q)])
                rhs.append(target[comp])
    alpha = solve(Matrix._trusted(F, rows), rhs)
    if alpha is None:
        raise NoIdealIdentity("the kernel ideal has no identity modulo the radical")
    return sum_elements(F, alpha, ys).without_expr()


def frame_mod_radical(
    alg: BlackBoxAlgebra, exprs: UnitExprs, rad: Subspace, n: SimpleSubmodule
) -> tuple[list[AlgebraElement], AlgebraElement]:
    """Diagonal matrix-unit preimages that are exact idempotents modulo J(A).

    Returns the corrected elements (1-u) a_ii (1-u) and the identity u of
    the ideal ker(A -> End(N)) / J(A).
    """
    k = n.dim
    pre = unit_preimages(alg, exprs, keys=[(i, i) for i in range(k)])
    u = ideal_identity(alg, kernel_of_action(alg, n), rad)
    one_minus_u = alg.identity.without_expr() - u
    bars = [one_minus_u * pre[(i, i)] * one_minus_u for i in range(k)]
    return bars, u


def _nilpotency_degree(z: AlgebraElement, limit: int) -> int | None:
    power = z
    for deg in range(1, limit + 1):
        if power.is_zero():
            return deg
        power = power * z
    return None


def lift_idempotent(alg: BlackBoxAlgebra, e: AlgebraElement, rad: Subspace) -> tuple[AlgebraElement, int]:
    """Lift ``e`` (idempotent modulo ``rad``) to an exact idempotent; also return the degree used.

    With (e^2 - e)^n = 0 the lift is sum_{j<n} C(2n-1, j) e^(2n-1-j) (1-e)^j.
    """
    e = e.without_expr()
    defect = e * e - e
    if not rad.contains(alg.coordinates(defect, check=False)):
        raise NotNilpotentDefect("e^2 - e does not lie in the radical")
    n = _nilpotency_degree(defect, alg.dim + 1)
    if n is None:
        raise NotNilpotentDefect("e^2 - e is not nilpotent")
    one = alg.identity.without_expr()
    f = one - e
    e_pows = [one]
    for _ in range(2 * n - 1):
        e_pows.append(e_pows[-1] * e)
    f_pows = [one]
    for _ in range(n - 1):
        f_pows.append(f_pows[-1] * f)
    terms = [e_pows[2 * n - 1 - j] * f_pows[j] for j in range(n)]
    lifted = sum_elements(alg.field, [comb(2 * n - 1, j) for j in range(n)], terms)
    rounds = max(1, (n - 1).bit_length()) + 2
    for _ in range(rounds):
        sq = lifted * lifted
        if sq == lifted:
            break
        lifted = sq.scale(3) - (sq * lifted).scale(2)
    if lifted * lifted != lifted:
        raise LiftDiverged("lifted element is not idempotent")
    if not rad.contains(alg.coordinates(lifted - e, check=False)):
        raise LiftDiverged("lifted element left the coset e + J")
    return lifted, n


def _corner_inverse(g: AlgebraElement, unit: AlgebraElement, limit: int) -> AlgebraElement:
    """Inverse of g = unit + j (j nilpotent in the corner ring with identity ``unit``)."""
    j = g - unit
    term = unit
    total = unit
    for _ in range(limit):
        term = (term * j).scale(-1)
        if term.is_zero():
            return total
        total = total + term
    raise LiftDiverged("corner element is not unipotent")


def lift_frame(alg: BlackBoxAlgebra, n: SimpleSubmodule, rad: Radical) -> Frame:
    """Orthogonal idempotents e_1..e_n of A acting as E_11..E_nn on N, plus off-diagonal units.

    Idempotents are lifted one at a time, each candidate first compressed by
    the complement of those already lifted so orthogonality is exact.  The
    units e_{i1}, e_{1i} are cut out of arbitrary preimages by the lifted
    idempotents, and e_{1i} is rescaled so that e_{1i} e_{i1} = e_1 exactly.
    """
    k = n.dim
    exprs = matrix_units_in_image(n)
    bars, u = frame_mod_radical(alg, exprs, rad, n)
    one = alg.identity.without_expr()
    lifted: list[AlgebraElement] = []
    degrees: list[int] = []
    acc = alg.zero().without_expr()
    for i in range(k):
        comp = one - acc
        cand = comp * bars[i] * comp if lifted else bars[i]
        e_hat, deg = lift_idempotent(alg, cand, rad)
        lifted.append(e_hat)
        degrees.append(deg)
        acc = acc + e_hat
    keys = [(i, 0) for i in range(1, k)] + [(0, i) for i in range(1, k)]
    pre = unit_preimages(alg, exprs, keys=keys)
    e1 = lifted[0]
    col = [e1]
    row = [e1]
    for i in range(1, k):
        ci = lifted[i] * pre[(i, 0)] * e1
        ri = e1 * pre[(0, i)] * lifted[i]
        ri = _corner_inverse(ri * ci, e1, alg.dim + 1) * ri
        col.append(ci)
        row.append(ri)
    frame = Frame(lifted, one - acc, col, row, u, degrees)
    bad = [name for name, ok in check_frame(frame, n).items() if not ok]
    if bad:
        raise LiftDiverged(f"frame invariants failed: {', '.join(bad)}")
    return frame


def check_frame(frame: Frame, n: SimpleSubmodule) -> dict[str, bool]:
    """Exact frame invariants, including e_0 and the matrix-unit images on N."""
    F = n.field
    k = n.dim
    idem = [frame.e0] + frame.e
    orth = all(
        (a * b == a) if i == j else (a * b).is_zero() for i, a in enumerate(idem) for j, b in enumerate(idem)
    )
    total = frame.e0
    for e in frame.e:
        total = total + e
    diag = all(rho_n(e, n) == Matrix.unit(F, k, i, i) for i, e in enumerate(frame.e))
    cols = all(rho_n(c, n) == Matrix.unit(F, k, i, 0) for i, c in enumerate(frame.units_col))
    rows = all(rho_n(r, n) == Matrix.unit(F, k, 0, i) for i, r in enumerate(frame.units_row))
    e1 = frame.e[0]
    pierce = all(
        frame.e[i] * c * e1 == c and e1 * r * frame.e[i] == r and r * c == e1 and c * r == frame.e[i]
        for i, (c, r) in enumerate(zip(frame.units_col, frame.units_row))
    )
    return {
        "orthogonal_idempotents": orth,
        "sum_to_one": total.is_one(),
        "diagonal_images": diag,
        "column_unit_images": cols,
        "row_unit_images": rows,
        "pierce_shape": pierce,
    }
