"""Transversals, sections, FSS generators and the recursive decomposition.

One level of the recursion takes an algebra ``A_i = K<S_i>`` acting on M,
finds a simple submodule N = A_i x, builds a transversal tau: N -> A_i with
tau(x) = 1 and a section sigma on the products s*t (s in S_i, t in T), and
collects the generator set U whose span K<U> becomes ``A_{i+1}``.  The map
``N (x) K<U> -> A_i, m (x) b -> tau(m) b`` is onto, so multiplying the
cyclic dimensions with dim A_l bounds dim A.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from math import prod
from typing import Any, Sequence

from .algebra import AlgebraElement, BlackBoxAlgebra, Radical, is_scalar_action, radical, sum_elements
from .errors import DegenerateBasePoint, FSSError, MaxDepthExceeded, SectionSingular, TermBlowup
from .idempotents import Frame, check_frame, lift_frame
from .linalg import Echelon, matrix_inverse
from .meataxe import DEFAULT_BUDGET, EndoRingInfo, SimpleSubmodule, endo_ring, simple_submodule
from .oracle import oracle_dim

log = logging.getLogger(__name__)

INVERTED = "inverted-transversal"
COMPLETION = "idempotent-completion"
ANNIHILATING = "annihilating"

SCALAR_ACTION = "scalar-action"
NO_PROGRESS = "no-progress"

TERM_CAP = 200_000


# ----------------------------------------------------------------------
# transversal


@dataclass
class Transversal:
    x: list
    nbasis: list  # n_i = e_{i1} x
    tau_images: list  # tau(n_i); tau_images[0] is 1
    frame_images: list  # [1, e_21, ..., e_n1]
    strategies: list  # "unit" for n_1, then "word" or "frame"
    words: list  # generator word used for each tau image, when a word was used
    simple: SimpleSubmodule
    scale: Any  # x = scale * (first RREF basis vector of N)

    @property
    def T(self) -> list:
        return self.tau_images

    @property
    def dim(self) -> int:
        return len(self.nbasis)

    def coords(self, m: Sequence[Any]) -> list | None:
        """Coordinates of m in N over the basis n_1..n_n."""
        c = self.simple.subspace.coordinates(m)
        if c is None:
            return None
        F = self.simple.field
        inv = F.inv(self.scale)
        return [F.reduce(v * inv) for v in c]

    def tau(self, m: Sequence[Any]) -> AlgebraElement:
        c = self.coords(m)
        if c is None:
            raise ValueError("vector is not in the cyclic module")
        return sum_elements(self.simple.field, c, self.tau_images)

    def tau_frame(self, m: Sequence[Any]) -> AlgebraElement:
        c = self.coords(m)
        if c is None:
            raise ValueError("vector is not in the cyclic module")
        return sum_elements(self.simple.field, c, self.frame_images)


def build_transversal(
    alg: BlackBoxAlgebra,
    frame: Frame,
    n: SimpleSubmodule,
    x0: Sequence[Any] | None = None,
    strategy: str = "word",
) -> Transversal:
    """A transversal tau: N -> A with tau(x) = 1 and tau(m) x = m.

    ``strategy="frame"`` uses tau(n_i) = e_{i1} throughout.  ``"word"``
    (default) first looks for a basis word of A sending x to n_i, which keeps
    tau(N) inside the span of products of generators (group elements for a
    group algebra), and falls back to e_{i1} when no word fits.
    """
    if strategy not in ("word", "frame"):
        raise ValueError(f"unknown transversal strategy {strategy!r}")
    sub = n.subspace
    e1 = frame.e[0]
    candidates = [list(x0)] if x0 is not None else []
    candidates += [list(b) for b in sub.basis]
    x = None
    for y in candidates:
        z = e1.acts_on(y)
        if any(z):
            x = z
            break
    if x is None:
        raise DegenerateBasePoint("e_1 kills every vector of N")
    scale = sub.coordinates(x)[0]
    nbasis = [c.acts_on(x) for c in frame.units_col]
    one = alg.identity
    frame_images = [one] + [c for c in frame.units_col[1:]]
    tau_images = [one]
    strategies = ["unit"]
    words: list = [()]
    images = [b.act.apply(x) for b in alg.basis] if strategy == "word" and n.dim > 1 else []
    for i in range(1, n.dim):
        hit = next((k for k, v in enumerate(images) if v == nbasis[i]), None)
        if hit is not None:
            tau_images.append(alg.basis[hit])
            strategies.append("word")
            words.append(alg.words[hit].letters)
        else:
            tau_images.append(frame_images[i])
            strategies.append("frame")
            words.append(None)
    return Transversal(x, nbasis, tau_images, frame_images, strategies, words, n, scale)


# ----------------------------------------------------------------------
# section


@dataclass
class SectionEntry:
    s_index: int
    t_index: int
    st: AlgebraElement
    coords: list  # coordinates of s t x over n_1..n_n
    tau: AlgebraElement | None  # tau(s t x); None when s t x = 0
    sigma: AlgebraElement | None = None
    sigma_inv: AlgebraElement | None = None
    strategy: str = ANNIHILATING

    @property
    def defect(self) -> AlgebraElement | None:
        """sigma(st)^-1 - tau(stx), an annihilator of x."""
        if self.sigma_inv is None:
            return None
        return self.sigma_inv - self.tau


@dataclass
class Section:
    entries: list

    def __post_init__(self) -> None:
        self.table = {(e.s_index, e.t_index): e for e in self.entries}

    def __getitem__(self, key: tuple[int, int]) -> SectionEntry:
        return self.table[key]

    def strategy_counts(self) -> dict[str, int]:
        out = {INVERTED: 0, COMPLETION: 0, ANNIHILATING: 0}
        for e in self.entries:
            out[e.strategy] += 1
        return out


def _invert(elem: AlgebraElement) -> AlgebraElement | None:
    rep = matrix_inverse(elem.rep)
    if rep is None:
        return None
    act = matrix_inverse(elem.act)
    if act is None:
        return None
    return AlgebraElement(rep, act)


def _completion_inverse(alg: BlackBoxAlgebra, frame: Frame, coords: list) -> AlgebraElement:
    """An invertible element sending x to sum coords_i n_i, shaped by the frame.

    With a nonzero first coordinate this is 1 - e_1 + sum_i c_i e_{i1};
    otherwise the coordinates are first swapped by the lifted transposition
    p = 1 - e_1 - e_i + e_{1i} + e_{i1} and the result is p times that.
    """
    F = alg.field
    one = alg.identity.without_expr()
    e1 = frame.e[0]
    if coords[0]:
        return one - e1 + sum_elements(F, coords, frame.units_col)
    i = next(k for k, c in enumerate(coords) if c)
    swapped = list(coords)
    swapped[0], swapped[i] = swapped[i], swapped[0]
    p = one - e1 - frame.e[i] + frame.units_row[i] + frame.units_col[i]
    base = one - e1 + sum_elements(F, swapped, frame.units_col)
    return p * base


def build_section(
    alg: BlackBoxAlgebra, s_gens: Sequence[AlgebraElement], tr: Transversal, frame: Frame
) -> Section:
    """sigma on every s*t with tau(stx) != 0, checked exactly.

    Strategy order: invert tau(stx) itself when it is a unit of A, else
    build sigma^-1 from the frame (idempotent completion).
    """
    entries = []
    for si, s in enumerate(s_gens):
        for ti, t in enumerate(tr.T):
            st = s * t
            m = st.acts_on(tr.x)
            coords = tr.coords(m)
            if coords is None:
                raise SectionSingular("s t x left the cyclic module")
            if not any(coords):
                entries.append(SectionEntry(si, ti, st, coords, None))
                continue
            tau = sum_elements(alg.field, coords, tr.T)
            sigma = _invert(tau)
            if sigma is not None:
                entry = SectionEntry(si, ti, st, coords, tau, sigma, tau.without_expr(), INVERTED)
            else:
                sigma_inv = _completion_inverse(alg, frame, coords)
                sigma = _invert(sigma_inv)
                if sigma is None:
                    raise SectionSingular(f"no invertible section for s={si}, t={ti}")
                entry = SectionEntry(si, ti, st, coords, tau, sigma, sigma_inv, COMPLETION)
            if not (entry.sigma * entry.sigma_inv).is_one() or any(entry.defect.acts_on(tr.x)):
                raise SectionSingular(f"section invariants fail for s={si}, t={ti}")
            entries.append(entry)
    return Section(entries)


# ----------------------------------------------------------------------
# FSS generators


@dataclass
class UEntry:
    kind: str  # unit | sigma-st | defect | annihilating-st
    source: tuple | None
    element: AlgebraElement
    retained: tuple | None = None  # (index into the pruned list, scalar) or None when zero


@dataclass
class FSSGenerators:
    raw: list
    elements: list  # pruned generator list

    def __len__(self) -> int:
        return len(self.elements)

    def raw_index(self, kind: str, source: tuple) -> int:
        for k, u in enumerate(self.raw):
            if u.kind == kind and u.source == source:
                return k
        raise KeyError((kind, source))


def _normalised(elem: AlgebraElement):
    F = elem.field
    flat = elem.rep.flat()
    lead = next(v for v in flat if v)
    inv = F.inv(lead)
    return tuple(F.reduce(v * inv) for v in flat), lead


def fss_generators(alg: BlackBoxAlgebra, section: Section) -> FSSGenerators:
    """{1} u {sigma(st) st} u {sigma(st)^-1 - tau(stx)} u {st : stx = 0}, pruned.

    Zeros, duplicates and scalar multiples of earlier elements are dropped;
    every raw entry remembers which kept element (and scalar) it equals.
    """
    raw = [UEntry("unit", None, alg.identity.without_expr())]
    for e in section.entries:
        key = (e.s_index, e.t_index)
        if e.strategy == ANNIHILATING:
            raw.append(UEntry("annihilating-st", key, e.st.without_expr()))
        else:
            raw.append(UEntry("sigma-st", key, (e.sigma * e.st).without_expr()))
    for e in section.entries:
        if e.strategy != ANNIHILATING:
            raw.append(UEntry("defect", (e.s_index, e.t_index), e.defect.without_expr()))
    kept: list[AlgebraElement] = []
    seen: dict[tuple, tuple[int, Any]] = {}
    F = alg.field
    for u in raw:
        if u.element.is_zero():
            continue
        norm, lead = _normalised(u.element)
        if norm in seen:
            idx, klead = seen[norm]
            u.retained = (idx, F.reduce(lead * F.inv(klead)))
            continue
        seen[norm] = (len(kept), lead)
        u.retained = (len(kept), F.one)
        kept.append(u.element)
    return FSSGenerators(raw, kept)


# ----------------------------------------------------------------------
# levels and the recursion


@dataclass
class FSSLevel:
    index: int
    algebra: BlackBoxAlgebra  # A_i = K<S_i>
    radical: Radical
    simple: SimpleSubmodule
    endo: EndoRingInfo
    frame: Frame
    transversal: Transversal
    section: Section
    generators: FSSGenerators
    next_algebra: BlackBoxAlgebra  # K<U_i>
    seed: str = ""

    @property
    def S(self) -> list:
        return self.algebra.generators

    @property
    def U(self) -> list:
        return self.generators.elements

    @property
    def x(self) -> list:
        return self.transversal.x

    @property
    def cyclic_dim(self) -> int:
        return self.simple.dim


@dataclass
class Decomposition:
    algebra: BlackBoxAlgebra
    levels: list
    terminal: BlackBoxAlgebra
    reason: str
    terminal_dim: int | None
    config: dict = dc_field(default_factory=dict)

    @property
    def cyclic_dims(self) -> list[int]:
        return [lv.cyclic_dim for lv in self.levels]

    @property
    def bound(self) -> int | None:
        return dimension_bound(self, self.terminal_dim)


def dimension_bound(d: Decomposition, terminal_dim: int | None) -> int | None:
    """prod(dim M_i) * dim A_l, or None while dim A_l is unknown."""
    if terminal_dim is None:
        return None
    return prod(d.cyclic_dims) * terminal_dim


def build_level(
    alg: BlackBoxAlgebra,
    index: int,
    simple: SimpleSubmodule,
    *,
    transversal: str = "word",
    seed: str = "",
) -> FSSLevel:
    endo = endo_ring(simple)
    rad = radical(alg)
    frame = lift_frame(alg, simple, rad)
    tr = build_transversal(alg, frame, simple, strategy=transversal)
    section = build_section(alg, alg.generators, tr, frame)
    gens = fss_generators(alg, section)
    names = [f"u{index + 1}_{k}" for k in range(len(gens.elements))]
    nxt = BlackBoxAlgebra.from_elements(gens.elements, names, spot_checks=0)
    return FSSLevel(index, alg, rad, simple, endo, frame, tr, section, gens, nxt, seed)


def decompose(
    alg: BlackBoxAlgebra,
    *,
    seed: int = 0,
    max_levels: int = 16,
    budget: int = DEFAULT_BUDGET,
    nonsplit: str = "skip",
    transversal: str = "word",
    terminal_dim: str = "oracle",
    retries: int = 3,
) -> Decomposition:
    """Run the recursion until the module is scalar or no simple of dimension >= 2 turns up.

    ``nonsplit="skip"`` passes over simple submodules whose endomorphism
    ring exceeds K; ``"error"`` raises :class:`NonSplitSimple` on the first one.
    """
    if nonsplit not in ("skip", "error"):
        raise ValueError(f"unknown nonsplit policy {nonsplit!r}")
    levels: list[FSSLevel] = []
    current = alg
    reason = None
    while True:
        if is_scalar_action(current.module):
            reason = SCALAR_ACTION
            break
        level = None
        for attempt in range(retries + 1):
            lseed = f"{seed}/{len(levels)}/{attempt}"
            simple = simple_submodule(current.module, lseed, budget, require_split=(nonsplit == "skip"))
            if simple is None:
                break
            if len(levels) >= max_levels:
                raise MaxDepthExceeded(f"more than {max_levels} levels needed")
            try:
                level = build_level(current, len(levels), simple, transversal=transversal, seed=lseed)
                break
            except SectionSingular as exc:
                log.warning("section failed at level %d (attempt %d); reseeding", len(levels), attempt)
                if attempt == retries:
                    exc.args = (f"level {len(levels)}: {exc}",)
                    raise
            except FSSError as exc:
                exc.args = (f"level {len(levels)}: {exc}",)
                raise
        if level is None:
            reason = NO_PROGRESS
            break
        log.info(
            "level %d: dim A=%d, dim N=%d, |U|=%d, dim K<U>=%d",
            level.index, current.dim, level.cyclic_dim, len(level.U), level.next_algebra.dim,
        )
        levels.append(level)
        current = level.next_algebra
    tdim = oracle_dim(current.faithful) if terminal_dim == "oracle" else None
    config = {
        "seed": seed,
        "max_levels": max_levels,
        "budget": budget,
        "nonsplit": nonsplit,
        "transversal": transversal,
        "terminal_dim": terminal_dim,
    }
    return Decomposition(alg, levels, current, reason, tdim, config)


# ----------------------------------------------------------------------
# the epimorphism and rewriting


def gamma_surjective(alg: BlackBoxAlgebra, level: FSSLevel, ualg: BlackBoxAlgebra | None = None) -> bool:
    """Whether span{tau(n_i) b_j} (b_j a basis of K<U>) is all of A."""
    ualg = ualg or level.next_algebra
    e = Echelon(alg.field, alg.dim)
    for t in level.transversal.T:
        for b in ualg.basis:
            c = alg.coordinates(t * b.without_expr())
            if c is None:
                return False
            e.insert(c)
            if e.rank == alg.dim:
                return True
    return e.rank == alg.dim


Monomial = tuple  # (t_index, (u indices into the pruned list))


def rewrite(expr: Sequence[tuple[Any, Sequence[int]]], level: FSSLevel, cap: int = TERM_CAP) -> dict:
    """Rewrite a combination of words in S into sum lambda * t * u_1 ... u_k.

    ``expr`` holds ``(coeff, letters)`` pairs where letters index S and the
    word is the product s_{l1} s_{l2} ...  The result maps
    ``(t_index, u_indices)`` to a nonzero coefficient.
    """
    F = level.algebra.field
    section = level.section
    gens = level.generators
    ntrans = level.transversal.dim

    def u_ref(kind: str, source: tuple):
        return gens.raw[gens.raw_index(kind, source)].retained

    cache: dict[tuple, tuple] = {}

    def step(s: int, t: int) -> tuple:
        # s * t as a list of (coeff, new t, u refs to prepend)
        if (s, t) not in cache:
            entry = section[(s, t)]
            if entry.strategy == ANNIHILATING:
                ref = u_ref("annihilating-st", (s, t))
                out = [] if ref is None else [(ref[1], 0, (ref[0],))]
            else:
                ref = u_ref("sigma-st", (s, t))
                out = []
                if ref is not None:
                    for k, lam in enumerate(entry.coords):
                        if lam:
                            out.append((F.reduce(lam * ref[1]), k, (ref[0],)))
                    alpha = u_ref("defect", (s, t))
                    if alpha is not None:
                        out.append((F.reduce(alpha[1] * ref[1]), 0, (alpha[0], ref[0])))
            cache[(s, t)] = tuple(out)
        return cache[(s, t)]

    # state: (remaining letters, t, us) -> coeff
    states: dict[tuple, Any] = {}
    for coeff, letters in expr:
        c = F.element(coeff)
        if c:
            key = (tuple(letters), 0, ())
            states[key] = F.reduce(states.get(key, F.zero) + c)
    done: dict[Monomial, Any] = {}
    while states:
        nxt: dict[tuple, Any] = {}
        for (letters, t, us), c in states.items():
            if not letters:
                done[(t, us)] = F.reduce(done.get((t, us), F.zero) + c)
                continue
            s = letters[-1]
            for lam, t2, prefix in step(s, t):
                key = (letters[:-1], t2, prefix + us)
                nxt[key] = F.reduce(nxt.get(key, F.zero) + c * lam)
        states = {k: v for k, v in nxt.items() if v}
        if len(states) + len(done) > cap:
            raise TermBlowup(f"rewriting exceeded {cap} terms")
    assert all(0 <= t < ntrans for t, _ in done)
    return {k: v for k, v in done.items() if v}


def evaluate_rewrite(terms: dict, level: FSSLevel) -> AlgebraElement:
    alg = level.algebra
    T = level.transversal.T
    U = level.U
    acc = alg.zero().without_expr()
    for (t, us), c in terms.items():
        mono = T[t].without_expr()
        for k in us:
            mono = mono * U[k]
        acc = acc + mono.scale(c)
    return acc


def evaluate_words(alg: BlackBoxAlgebra, expr: Sequence[tuple[Any, Sequence[int]]]) -> AlgebraElement:
    acc = alg.zero().without_expr()
    for c, letters in expr:
        acc = acc + alg.evaluate_word(letters).without_expr().scale(c)
    return acc


# ----------------------------------------------------------------------
# invariant suite


def tensor_rank_two(level: FSSLevel) -> bool:
    """Gamma(s x (x) sigma(s) s + x (x) (s - tau(sx) sigma(s) s)) = s for every s with tau(sx) != 0.

    Also checks that both right-hand factors lie in K<U>.
    """
    alg = level.algebra
    tr = level.transversal
    ualg = level.next_algebra
    for si, s in enumerate(alg.generators):
        entry = level.section[(si, 0)]
        if entry.strategy == ANNIHILATING:
            continue
        s = s.without_expr()
        left = entry.sigma * s
        right = s - entry.tau * entry.sigma * s
        if not (ualg.contains(left) and ualg.contains(right)):
            return False
        image = tr.tau(s.acts_on(tr.x)) * left + tr.tau(tr.x) * right
        if image != s:
            return False
    return True


def verify_level(level: FSSLevel, full: bool = True) -> dict[str, bool]:
    alg = level.algebra
    ualg = level.next_algebra
    x = level.x
    F = alg.field
    flags = {
        "gamma_surjective": gamma_surjective(alg, level, ualg),
        "chain_containment": all(alg.contains(b) for b in ualg.basis),
    }
    if not full:
        return flags

    def in_kx(v: list) -> bool:
        lead = next((i for i, a in enumerate(x) if a), None)
        lam = F.reduce(v[lead] * F.inv(x[lead]))
        return all(F.reduce(a - lam * b) == 0 for a, b in zip(v, x))

    flags["u_membership"] = all(in_kx(b.acts_on(x)) for b in ualg.basis)
    sig_ok = True
    for e in level.section.entries:
        if e.strategy == ANNIHILATING:
            sig_ok &= not any(e.st.acts_on(x))
            continue
        sig_ok &= (e.sigma * e.sigma_inv).is_one() and (e.sigma_inv * e.sigma).is_one()
        sig_ok &= (e.sigma * e.st).acts_on(x) == x
        sig_ok &= not any(e.defect.acts_on(x))
    flags["section"] = bool(sig_ok)
    tr = level.transversal
    flags["transversal"] = tr.tau_images[0].is_one() and all(
        t.acts_on(tr.x) == n for t, n in zip(tr.tau_images, tr.nbasis)
    )
    flags.update(check_frame(level.frame, level.simple))
    rad = level.radical
    flags["radical_nilpotent"] = bool(rad.power_dims) and rad.power_dims[-1] == 0
    flags["radical_kills_simple"] = all(
        not any(alg.element(z, with_expr=False).acts_on(b)) for z in rad.basis for b in level.simple.subspace.basis
    )
    flags["split_simple"] = level.endo.dim_over_K == 1
    flags["tensor_rank_two"] = tensor_rank_two(level)
    return flags


def verify_decomposition(d: Decomposition, full: bool = True, oracle: int | None = None) -> dict:
    """Flags per level plus bound soundness against an independent dimension count."""
    per_level = [verify_level(lv, full) for lv in d.levels]
    chain = all(a.next_algebra is b.algebra for a, b in zip(d.levels, d.levels[1:]))
    true_dim = oracle if oracle is not None else oracle_dim(d.algebra.faithful)
    bound = d.bound
    return {
        "levels": per_level,
        "chain_links": chain,
        "bound_sound": bound is None or bound >= true_dim,
        "oracle_dim": true_dim,
        "all_passed": chain and all(all(f.values()) for f in per_level) and (bound is None or bound >= true_dim),
    }
