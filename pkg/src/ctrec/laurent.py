"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A :class:`LaurentPoly` is an immutable map from signed exponent vectors to
nonzero rationals.  Coefficients are kept as ``int`` when integral and as
:class:`fractions.Fraction` otherwise, which keeps the common integer case fast
while staying exact.

Variable indices in the public helpers (``substitute_one``, ``variable``) are
1-based so that index ``i`` names ``x_i``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

Coeff = Union[int, Fraction]
Exponents = tuple[int, ...]

EXPONENT_BOUND = 2**31 - 1


class DimensionError(ValueError):
    """Operands live in rings with different numbers of variables."""


class ExponentOverflowError(OverflowError):
    """An exponent left the signed 32-bit range."""


def as_coeff(c) -> Coeff:
    """Return ``c`` as an exact rational in canonical form (int if integral)."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return as_coeff(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return as_coeff(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def _check_exponents(e: Exponents) -> None:
    for v in e:
        if v > EXPONENT_BOUND or v < -EXPONENT_BOUND - 1:
            raise ExponentOverflowError(f"exponent {v} outside signed 32-bit range")


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | Iterable = ()):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponents, Coeff] = {}
        for e, c in items:
            e = tuple(int(v) for v in e)
            if len(e) != nvars:
                raise DimensionError(f"exponent vector {e} has length {len(e)}, expected {nvars}")
            c = as_coeff(c)
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: as_coeff(c) for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "LaurentPoly":
        # terms already canonical; no copy, no checks
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def constant(cls, nvars: int, c) -> "LaurentPoly":
        c = as_coeff(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exponents: Sequence[int], c=1) -> "LaurentPoly":
        e = tuple(int(v) for v in exponents)
        _check_exponents(e)
        c = as_coeff(c)
        return cls._raw(len(e), {e: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        """``x_i ** power`` with ``i`` 1-based."""
        if not 1 <= i <= nvars:
            raise IndexError(f"variable index {i} out of range 1..{nvars}")
        e = [0] * nvars
        e[i - 1] = power
        return cls.monomial(e)

    # -- read access ---------------------------------------------------------

    @property
    def terms(self) -> dict[Exponents, Coeff]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[Exponents, Coeff]]:
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coeff(self, e: Sequence[int]) -> Coeff:
        e = tuple(e)
        if len(e) != self.nvars:
            raise DimensionError(f"exponent vector of length {len(e)} in a {self.nvars}-variable ring")
        return self._terms.get(e, 0)

    def constant_term(self) -> Coeff:
        return self._terms.get((0,) * self.nvars, 0)

    def is_homogeneous_degree0(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(v >= 0 for e in self._terms for v in e)

    def min_exponents(self) -> Exponents:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponents(self) -> Exponents:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self._terms))

    def evaluate(self, point: Sequence) -> Coeff:
        """Exact value at a point with nonzero rational coordinates."""
        if len(point) != self.nvars:
            raise DimensionError("point has the wrong number of coordinates")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            t = Fraction(c)
            for v, k in zip(pt, e):
                if k:
                    t *= v**k
            total += t
        return as_coeff(total)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"{self.nvars}-variable and {other.nvars}-variable operands")
            return other
        return LaurentPoly.constant(self.nvars, other)

    def __add__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = as_coeff(s)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def scale(self, c) -> "LaurentPoly":
        c = as_coeff(c)
        if not c:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly._raw(self.nvars, {e: as_coeff(v * c) for e, v in self._terms.items()})

    def shift(self, e: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x**e``."""
        e = tuple(e)
        if len(e) != self.nvars:
            raise DimensionError("shift vector length mismatch")
        out = {}
        for f, c in self._terms.items():
            g = tuple(a + b for a, b in zip(f, e))
            _check_exponents(g)
            out[g] = c
        return LaurentPoly._raw(self.nvars, out)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponents, Coeff] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        res = {}
        for e, c in out.items():
            if c:
                _check_exponents(e)
                res[e] = as_coeff(c)
        return LaurentPoly._raw(self.nvars, res)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("LaurentPoly powers must be nonnegative integers (see inverse_monomial)")
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse_monomial(self) -> "LaurentPoly":
        """Inverse of a single-term polynomial."""
        if len(self._terms) != 1:
            raise ValueError("only a monomial is invertible in the Laurent ring")
        (e, c), = self._terms.items()
        return LaurentPoly.monomial(tuple(-v for v in e), Fraction(1) / c)

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            c = as_coeff(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({(0,) * self.nvars: c} if c else {})

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(sorted(self._terms.items()))))
        return self._hash

    # -- printing ------------------------------------------------------------

    def to_text(self, var_names: Sequence[str] | None = None) -> str:
        """Canonical text form, terms in ascending lexicographic exponent order."""
        names = list(var_names) if var_names is not None else default_var_names(self.nvars)
        if len(names) != self.nvars:
            raise DimensionError(f"{len(names)} names for {self.nvars} variables")
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            mag = -c if neg else c
            factors = []
            for name, v in zip(names, e):
                if v == 1:
                    factors.append(name)
                elif v:
                    factors.append(f"{name}^{v}")
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = " * ".join(factors)
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"{'-' if neg else '+'} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {self.to_text()!r})"


def default_var_names(n: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{i}" for i in range(1, n + 1)]


# -- module-level operations (functional surface) ---------------------------

def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def power(p: LaurentPoly, k: int) -> LaurentPoly:
    return p**k


def coeff(p: LaurentPoly, e: Sequence[int]) -> Coeff:
    return p.coeff(e)


def constant_term(p: LaurentPoly) -> Coeff:
    return p.constant_term()


def is_homogeneous_degree0(p: LaurentPoly) -> bool:
    return p.is_homogeneous_degree0()


def substitute_one(p: LaurentPoly, i: int) -> LaurentPoly:
    """Set ``x_i = 1`` (1-based) and drop that coordinate."""
    if not 1 <= i <= p.nvars:
        raise IndexError(f"variable index {i} out of range 1..{p.nvars}")
    k = i - 1
    return LaurentPoly(p.nvars - 1, ((e[:k] + e[k + 1:], c) for e, c in p.items()))


def product(factors: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    out = LaurentPoly.one(nvars)
    for f in factors:
        out = out * f
    return out


def coeff_of_product(left: LaurentPoly, right: LaurentPoly, e: Sequence[int] | None = None) -> Coeff:
    """Coefficient of ``x**e`` in ``left * right`` without forming the product.

    Each term of the smaller factor is paired with the single term of the other
    factor that completes it to ``e`` (the zero vector by default).
    """
    if left.nvars != right.nvars:
        raise DimensionError("operand dimensions differ")
    e = (0,) * left.nvars if e is None else tuple(e)
    if len(e) != left.nvars:
        raise DimensionError("target exponent length mismatch")
    a, b = left._terms, right._terms
    if len(a) > len(b):
        a, b = b, a
    total = 0
    for f, c in a.items():
        d = b.get(tuple(x - y for x, y in zip(e, f)))
        if d:
            total += c * d
    return as_coeff(total)


def constant_term_of_product(left: LaurentPoly, right: LaurentPoly) -> Coeff:
    return coeff_of_product(left, right)
