"""Constant-coefficient partial shift operators in ``A_1, ..., A_n``."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .groebner import OrderSpec
from .laurent import Coeff, LaurentPoly, as_coeff, default_var_names


class OutOfDomainError(ValueError):
    """A shifted index left the nonnegative orthant."""


class DiffOperator:
    """``sum_s c_s A^s`` acting by ``(P g)(a) = sum_s c_s g(a + s)``.

    Shifts may be negative.  Backed by a :class:`LaurentPoly` in the shift
    variables, so arithmetic and canonical printing come for free.
    """

    __slots__ = ("poly",)

    def __init__(self, n: int, terms: Mapping[Sequence[int], object] | LaurentPoly = ()):
        if isinstance(terms, LaurentPoly):
            if terms.nvars != n:
                raise ValueError("operator dimension mismatch")
            self.poly = terms
        else:
            self.poly = LaurentPoly(n, terms)

    @property
    def n(self) -> int:
        return self.poly.nvars

    @property
    def terms(self) -> dict[tuple[int, ...], Coeff]:
        return self.poly.terms

    def items(self):
        return self.poly.items()

    def __len__(self) -> int:
        return len(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def shifts(self) -> list[tuple[int, ...]]:
        return sorted(self.poly.terms)

    def max_shift(self) -> int:
        return max((abs(v) for s in self.poly.terms for v in s), default=0)

    def total_degree(self) -> int:
        return max((sum(s) for s in self.poly.terms), default=0)

    def scale(self, c) -> "DiffOperator":
        return DiffOperator(self.n, self.poly.scale(c))

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffOperator) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def display_terms(self) -> list[tuple[tuple[int, ...], Coeff]]:
        """Terms by descending total shift, then by variable position."""
        return sorted(self.poly.items(), key=lambda t: (-sum(t[0]), tuple(-abs(v) for v in t[0])))

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else default_var_names(self.n, "A")
        if self.is_zero():
            return "0"
        out = []
        for k, (s, c) in enumerate(self.display_terms()):
            mag = -c if c < 0 else c
            factors = [n if v == 1 else f"{n}^{v}" for n, v in zip(names, s) if v]
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if k == 0:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f"{'-' if c < 0 else '+'} {body}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"DiffOperator({self.n}, {self.to_text()!r})"

    def to_json(self) -> list[dict]:
        return [{"shift": list(s), "coeff": rational_str(c)} for s, c in self.poly.sorted_terms()]

    @classmethod
    def from_json(cls, n: int, data: Sequence[Mapping]) -> "DiffOperator":
        return cls(n, [(tuple(t["shift"]), parse_rational(t["coeff"])) for t in data])


def rational_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(s) -> Coeff:
    if isinstance(s, int):
        return s
    return as_coeff(Fraction(str(s)))


def apply_operator(P: DiffOperator, g: Callable[[tuple[int, ...]], object], a: Sequence[int]) -> Coeff:
    """``sum_s c_s g(a + s)``; every ``a + s`` must be nonnegative."""
    a = tuple(a)
    if len(a) != P.n:
        raise ValueError(f"index of length {len(a)} for a {P.n}-variable operator")
    total = 0
    for s, c in P.poly.sorted_terms():
        b = tuple(x + y for x, y in zip(a, s))
        if any(v < 0 for v in b):
            raise OutOfDomainError(f"shifted index {b} is outside the nonnegative orthant")
        total += c * as_coeff(g(b))
    return as_coeff(total)


def is_admissible(P: DiffOperator, a: Sequence[int]) -> bool:
    return all(x + y >= 0 for s in P.poly.terms for x, y in zip(a, s))


def good_form(P: DiffOperator) -> DiffOperator:
    """Divide by the grevlex-largest shift monomial and make its coefficient 1."""
    if P.is_zero():
        raise ValueError("good_form of the zero operator")
    lead = max(P.poly.terms, key=OrderSpec.grevlex().key)
    c = P.poly.coeff(lead)
    shifted = P.poly.shift(tuple(-v for v in lead)).scale(Fraction(1) / Fraction(c))
    return DiffOperator(P.n, shifted)
