"""Exact scalars over the rationals and prime fields GF(p).

Matrices and vectors elsewhere in the package store *raw* canonical values
for speed: ``gmpy2.mpq`` for the rationals and reduced ``int`` residues for
GF(p).  :class:`FieldSpec` knows how to create, parse, format and invert raw
values; :class:`FieldScalar` wraps a raw value together with its field for
user-facing arithmetic with the usual operators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Iterable

import gmpy2
from gmpy2 import mpq

from .errors import DivisionByZero, MixedFields, ParseError

RATIONAL = "rational"
PRIME = "prime-field"

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^([+-]?\d+)/(\d+)$")


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind == RATIONAL:
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == PRIME:
            if self.p is None or self.p < 2 or not gmpy2.is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
            if self.p >= 2**63:
                raise ValueError("only machine-word primes are supported")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls(RATIONAL)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(PRIME, int(p))

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONAL

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self) -> str:
        return "QQ" if self.is_rational else f"GF({self.p})"

    # raw-value layer -------------------------------------------------

    @property
    def zero(self) -> Any:
        return mpq(0) if self.p is None else 0

    @property
    def one(self) -> Any:
        return mpq(1) if self.p is None else 1

    def element(self, value: Any) -> Any:
        """Coerce an int, Fraction, mpq or FieldScalar to a canonical raw value."""
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise MixedFields(f"{value.field} scalar used in {self}")
            return value.value
        if self.p is None:
            return mpq(value)
        q = mpq(value)
        if q.denominator == 1:
            return int(q.numerator) % self.p
        num = int(q.numerator) % self.p
        den = int(q.denominator) % self.p
        if den == 0:
            raise DivisionByZero(f"denominator vanishes in {self}")
        return num * pow(den, -1, self.p) % self.p

    def reduce(self, value: Any) -> Any:
        return value if self.p is None else value % self.p

    def reduce_vec(self, vec: list) -> list:
        if self.p is None:
            return vec
        p = self.p
        return [v % p for v in vec]

    def inv(self, value: Any) -> Any:
        if value == 0:
            raise DivisionByZero("inverse of zero")
        if self.p is None:
            return 1 / mpq(value)
        return pow(int(value), -1, self.p)

    def parse(self, text: Any) -> Any:
        """Parse a literal: ``"a"`` or ``"a/b"`` over QQ, ``"k"`` with 0 <= k < p over GF(p)."""
        if isinstance(text, bool) or not isinstance(text, (str, int)):
            raise ParseError(f"scalar literal must be a string, got {text!r}")
        s = str(text).strip()
        if self.p is None:
            m = _FRAC_RE.match(s)
            if m:
                den = int(m.group(2))
                if den == 0:
                    raise ParseError(f"zero denominator in {s!r}")
                return mpq(int(m.group(1)), den)
            if _INT_RE.match(s):
                return mpq(int(s))
            raise ParseError(f"bad rational literal {s!r}")
        if not _INT_RE.match(s):
            raise ParseError(f"bad GF({self.p}) literal {s!r}")
        k = int(s)
        if not 0 <= k < self.p:
            raise ParseError(f"GF({self.p}) literal {s!r} out of range 0..{self.p - 1}")
        return k

    def format(self, value: Any) -> str:
        if self.p is None:
            q = mpq(value)
            if q.denominator == 1:
                return str(q.numerator)
            return f"{q.numerator}/{q.denominator}"
        return str(int(value))

    def scalar(self, value: Any) -> FieldScalar:
        return FieldScalar(self, self.element(value))

    def random_element(self, rng, spread: int = 3, nonzero: bool = False) -> Any:
        """A small random element; over QQ an integer in [-spread, spread]."""
        while True:
            if self.p is None:
                v = mpq(rng.randint(-spread, spread))
            else:
                v = rng.randrange(self.p)
            if not nonzero or v != 0:
                return v

    def to_json(self) -> Any:
        return RATIONAL if self.p is None else {"prime": self.p}

    @classmethod
    def from_json(cls, obj: Any) -> FieldSpec:
        if obj == RATIONAL:
            return cls.rational()
        if isinstance(obj, dict) and set(obj) == {"prime"}:
            p = obj["prime"]
            if isinstance(p, str) and _INT_RE.match(p):
                p = int(p)
            if isinstance(p, bool) or not isinstance(p, int):
                raise ParseError(f"prime modulus must be an integer, got {p!r}")
            try:
                return cls.prime(p)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f'field must be "rational" or {{"prime": p}}, got {obj!r}')


class FieldScalar:
    """An immutable exact scalar bound to its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: Any) -> None:
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.element(value) if not isinstance(value, FieldScalar) else value.value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldScalar is immutable")

    def _other(self, other: Any) -> Any:
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise MixedFields(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, mpq)) or type(other).__name__ == "Fraction":
            return self.field.element(other)
        return NotImplemented

    def _wrap(self, raw: Any) -> FieldScalar:
        return FieldScalar(self.field, self.field.reduce(raw))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.value * self.field.inv(o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(o * self.field.inv(self.value))

    def __neg__(self):
        return self._wrap(-self.value)

    def inv(self) -> FieldScalar:
        return FieldScalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        try:
            o = self._other(other)
        except (MixedFields, DivisionByZero):
            return False
        return o is not NotImplemented and self.value == o

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"FieldScalar({self.field}, {self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)


_OPS = {"add", "sub", "mul", "div", "inv", "neg"}


def field_arith(a: FieldScalar, b: FieldScalar | None, op: str) -> FieldScalar:
    """Apply one field operation; ``b`` is ignored for the unary ``inv`` and ``neg``."""
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    if not isinstance(b, FieldScalar) or b.field != a.field:
        raise MixedFields("operands must share one field")
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)


def parse_vector(field: FieldSpec, items: Iterable[Any]) -> list:
    return [field.parse(t) for t in items]
