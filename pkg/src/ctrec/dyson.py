"""The Dyson product, its constant term, and the pieces of the recursive proof.

``G(a)`` is the constant term of ``prod_{i != j} (1 - x_i/x_j)^{a_j}``; the
claim being checked is ``G(a) == multinomial(a)``.  Three independent routes
are provided: brute-force expansion, the three-rule recursion (Pascal step,
coordinate deletion, base case), and the closed form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .laurent import Coeff, LaurentPoly, constant_term_of_product
from .operators import DiffOperator

DEFAULT_MAX_TERMS = 2_000_000


class TermLimitExceeded(RuntimeError):
    """An expansion grew past the configured term budget."""


@dataclass(frozen=True)
class DysonInstance:
    n: int
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(v) for v in self.a)
        object.__setattr__(self, "a", a)
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(a) != self.n:
            raise ValueError(f"a has length {len(a)}, expected {self.n}")
        if any(v < 0 for v in a):
            raise ValueError(f"a must be nonnegative, got {a}")

    @classmethod
    def of(cls, a: Sequence[int]) -> "DysonInstance":
        return cls(len(a), tuple(a))


def _ratio_binomial(n: int, i: int, j: int) -> LaurentPoly:
    """``1 - x_i/x_j`` with 1-based indices."""
    e = [0] * n
    e[i - 1] += 1
    e[j - 1] -= 1
    return LaurentPoly(n, {(0,) * n: 1, tuple(e): -1})


def dyson_factor(n: int, j: int) -> LaurentPoly:
    """``R_j = prod_{i != j} (1 - x_i/x_j)`` as an ``n``-variable Laurent polynomial."""
    if not 1 <= j <= n:
        raise IndexError(f"factor index {j} out of range 1..{n}")
    out = LaurentPoly.one(n)
    for i in range(1, n + 1):
        if i != j:
            out = out * _ratio_binomial(n, i, j)
    return out


def _binomials(inst: DysonInstance) -> list[LaurentPoly]:
    return [
        _ratio_binomial(inst.n, i, j)
        for j in range(1, inst.n + 1)
        for _ in range(inst.a[j - 1])
        for i in range(1, inst.n + 1)
        if i != j
    ]


def _expand(factors: Sequence[LaurentPoly], n: int, max_terms: int) -> LaurentPoly:
    out = LaurentPoly.one(n)
    for f in factors:
        out = out * f
        if len(out) > max_terms:
            raise TermLimitExceeded(f"expansion exceeded {max_terms} terms")
    return out


def dyson_product(inst: DysonInstance, max_terms: int = DEFAULT_MAX_TERMS) -> LaurentPoly:
    """Fully expanded ``F(x; a)``."""
    out = LaurentPoly.one(inst.n)
    for j in range(1, inst.n + 1):
        if inst.a[j - 1]:
            out = out * dyson_factor(inst.n, j) ** inst.a[j - 1]
            if len(out) > max_terms:
                raise TermLimitExceeded(f"expansion exceeded {max_terms} terms")
    return out


def multinomial(a: Sequence[int]) -> int:
    if any(v < 0 for v in a):
        raise ValueError("multinomial needs nonnegative entries")
    out = math.factorial(sum(a))
    for v in a:
        out //= math.factorial(v)
    return out


def dyson_ct_bruteforce(inst: DysonInstance, max_terms: int = DEFAULT_MAX_TERMS) -> Coeff:
    """Constant term of the expanded Dyson product.

    The binomial factors are split into two halves that are expanded
    separately; the constant term of their product is then read off by
    pairing opposite exponents, which never materialises the full product.
    """
    factors = _binomials(inst)
    half = len(factors) // 2
    left = _expand(factors[:half], inst.n, max_terms)
    right = _expand(factors[half:], inst.n, max_terms)
    return constant_term_of_product(left, right)


def dyson_ct_recursive(inst: DysonInstance | Sequence[int], trace: list | None = None) -> int:
    """Evaluate ``G(a)`` with the three recursion rules, memoised per call.

    Rules, in order of application:
      * all entries zero -> 1;
      * some ``a_j == 0`` -> delete the smallest such coordinate;
      * otherwise -> ``sum_j G(a - e_j)``.

    The memo is keyed on the sorted tuple, so permutations of ``a`` share an
    entry.  If ``trace`` is given, each rule application is appended to it as
    ``(rule, a)`` with rule in ``{"base", "delete", "pascal"}``.
    """
    a = inst.a if isinstance(inst, DysonInstance) else tuple(inst)
    memo: dict[tuple[int, ...], int] = {}

    def g(a: tuple[int, ...]) -> int:
        if all(v == 0 for v in a):
            if trace is not None:
                trace.append(("base", a))
            return 1
        if 0 in a:
            j = a.index(0)
            if trace is not None:
                trace.append(("delete", a))
            return g(a[:j] + a[j + 1:])
        key = tuple(sorted(a))
        if key in memo:
            return memo[key]
        if trace is not None:
            trace.append(("pascal", a))
        total = 0
        for j in range(len(a)):
            total += g(a[:j] + (a[j] - 1,) + a[j + 1:])
        memo[key] = total
        return total

    return g(tuple(a))


@dataclass
class DysonRow:
    a: tuple[int, ...]
    brute: Coeff
    recursive: int
    multinomial: int

    @property
    def ok(self) -> bool:
        return self.brute == self.recursive == self.multinomial

    def line(self) -> str:
        vec = "(" + ",".join(map(str, self.a)) + ")"
        return (
            f"a={vec} brute={self.brute} recursive={self.recursive} "
            f"multinomial={self.multinomial} {'OK' if self.ok else 'FAIL'}"
        )

    def as_dict(self) -> dict:
        return {
            "a": list(self.a),
            "brute": str(self.brute),
            "recursive": str(self.recursive),
            "multinomial": str(self.multinomial),
            "ok": self.ok,
        }


@dataclass
class DysonReport:
    n: int
    amax: int
    rows: list[DysonRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def first_failure(self) -> DysonRow | None:
        return next((r for r in self.rows if not r.ok), None)

    def lines(self) -> list[str]:
        return [r.line() for r in self.rows]

    def as_dict(self) -> dict:
        bad = self.first_failure
        return {
            "n": self.n,
            "amax": self.amax,
            "instances": len(self.rows),
            "passed": self.passed,
            "first_failure": list(bad.a) if bad else None,
            "rows": [r.as_dict() for r in self.rows],
        }


def dyson_row(a: Sequence[int], max_terms: int = DEFAULT_MAX_TERMS) -> DysonRow:
    inst = DysonInstance.of(a)
    return DysonRow(inst.a, dyson_ct_bruteforce(inst, max_terms), dyson_ct_recursive(inst), multinomial(inst.a))


def dyson_verify(n: int, amax: int, max_terms: int = DEFAULT_MAX_TERMS) -> DysonReport:
    """Check brute force, recursion and closed form on ``{0..amax}^n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if amax < 0:
        raise ValueError("amax must be nonnegative")
    report = DysonReport(n, amax)
    for a in itertools.product(range(amax + 1), repeat=n):
        report.rows.append(dyson_row(a, max_terms))
    return report


@dataclass(frozen=True)
class PolyFraction:
    """``num / den`` over Laurent polynomials, never reduced."""

    num: LaurentPoly
    den: LaurentPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("PolyFraction denominator is zero")

    def __add__(self, other: "PolyFraction") -> "PolyFraction":
        return PolyFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    def equals(self, other: "PolyFraction") -> bool:
        return self.num * other.den == other.num * self.den


def lagrange_terms(n: int) -> list[PolyFraction]:
    """The summands ``prod_{i != j} (1 - x_j/x_i)^{-1}`` for ``j = 1..n``."""
    one = LaurentPoly.one(n)
    terms = []
    for j in range(1, n + 1):
        den = one
        for i in range(1, n + 1):
            if i != j:
                den = den * _ratio_binomial(n, j, i)
        terms.append(PolyFraction(one, den))
    return terms


def lagrange_check(n: int) -> bool:
    """Exact check that the Lagrange summands add up to 1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    terms = lagrange_terms(n)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total.num == total.den


def dyson_operator(n: int) -> DiffOperator:
    """The backward operator ``1 - sum_i A_i^{-1}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    terms = {(0,) * n: 1}
    for i in range(n):
        s = [0] * n
        s[i] = -1
        terms[tuple(s)] = -1
    return DiffOperator(n, terms)
