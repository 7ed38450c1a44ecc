"""Pure recurrences for constant terms of ``prod_i R_i(x)^{a_i}``.

``F(x; a) = prod_i R_i^{a_i}`` is killed by each ``A_i - R_i``, where ``A_i``
raises ``a_i`` by one.  Eliminating the ``x`` variables from the ideal these
generate leaves operators in the ``A_i`` alone; those have constant
coefficients and therefore annihilate every ``x``-coefficient of ``F``, the
constant term included.

Working ring layout (0-based indices), with ``m`` x-variables (``m = n``, or
``n - 1`` after dehomogenisation)::

    x_1..x_m  |  y_1..y_m (y_k = 1/x_k)  |  A_1..A_n
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .groebner import (
    IdealBasis,
    OrderSpec,
    ResourceLimits,
    buchberger,
    eliminate,
    normal_form,
)
from .laurent import Coeff, LaurentPoly, coeff_of_product, default_var_names, substitute_one
from .operators import DiffOperator, apply_operator, good_form, is_admissible, parse_rational, rational_str
from .parse import parse_laurent

DEFAULT_GRID = 3


class NoRecurrenceFound(RuntimeError):
    """The elimination ideal is zero: no pure recurrence exists for this input."""


@dataclass(frozen=True)
class AnnihilatorSpec:
    n: int
    R: tuple[LaurentPoly, ...]
    var_names: tuple[str, ...] = ()

    def __post_init__(self):
        R = tuple(self.R)
        object.__setattr__(self, "R", R)
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(R) != self.n:
            raise ValueError(f"expected {self.n} Laurent polynomials, got {len(R)}")
        for i, r in enumerate(R, 1):
            if r.nvars != self.n:
                raise ValueError(f"R_{i} has {r.nvars} variables, expected {self.n}")
            if r.is_zero():
                raise ValueError(f"R_{i} is the zero polynomial")
        names = tuple(self.var_names) or tuple(default_var_names(self.n))
        if len(names) != self.n:
            raise ValueError("var_names length must equal n")
        object.__setattr__(self, "var_names", names)

    @classmethod
    def from_strings(cls, exprs: Sequence[str], var_names: Sequence[str] | None = None) -> "AnnihilatorSpec":
        n = len(exprs)
        names = tuple(var_names) if var_names else tuple(default_var_names(n))
        return cls(n, tuple(parse_laurent(e, names) for e in exprs), names)

    def is_homogeneous_degree0(self) -> bool:
        return all(r.is_homogeneous_degree0() for r in self.R)

    def R_text(self) -> list[str]:
        return [r.to_text(self.var_names) for r in self.R]


def dyson_spec(n: int) -> AnnihilatorSpec:
    from .dyson import dyson_factor

    return AnnihilatorSpec(n, tuple(dyson_factor(n, j) for j in range(1, n + 1)))


# -- ring layout ------------------------------------------------------------

@dataclass(frozen=True)
class _Layout:
    n: int
    m: int  # number of x variables actually used

    @property
    def nvars(self) -> int:
        return 2 * self.m + self.n

    @property
    def eliminated(self) -> tuple[int, ...]:
        return tuple(range(2 * self.m))

    @property
    def kept(self) -> tuple[int, ...]:
        return tuple(range(2 * self.m, self.nvars))

    def names(self, var_names: Sequence[str]) -> list[str]:
        xs = list(var_names[: self.m])
        ys = [f"y{i}" for i in range(1, self.m + 1)]
        if set(ys) & set(xs):
            ys = [f"inv_{v}" for v in xs]
        return xs + ys + [f"A{i}" for i in range(1, self.n + 1)]

    def order(self) -> OrderSpec:
        return OrderSpec.block(self.eliminated, self.kept)

    def embed_x(self, e: Sequence[int]) -> tuple[int, ...]:
        return tuple(e) + (0,) * (self.m + self.n)

    def embed_shift(self, s: Sequence[int]) -> tuple[int, ...]:
        return (0,) * (2 * self.m) + tuple(s)

    def project_shift(self, e: Sequence[int]) -> tuple[int, ...]:
        return tuple(e[2 * self.m:])


def _layout(spec: AnnihilatorSpec, dehomogenize: bool) -> _Layout:
    if dehomogenize:
        if not spec.is_homogeneous_degree0():
            raise ValueError("dehomogenization needs every R_i homogeneous of degree 0")
        return _Layout(spec.n, spec.n - 1)
    return _Layout(spec.n, spec.n)


def _working_R(spec: AnnihilatorSpec, dehomogenize: bool) -> list[LaurentPoly]:
    if dehomogenize:
        return [substitute_one(r, spec.n) for r in spec.R]
    return list(spec.R)


def build_generators(spec: AnnihilatorSpec, dehomogenize: bool = False) -> IdealBasis:
    """Polynomial generators ``m_i A_i - m_i R_i`` plus ``x_k y_k - 1``.

    ``m_i`` is the smallest monomial in ``x`` making ``m_i R_i`` a polynomial.
    With ``dehomogenize`` the last variable is set to 1 first.
    """
    lay = _layout(spec, dehomogenize)
    gens = []
    for i, r in enumerate(_working_R(spec, dehomogenize)):
        clear = tuple(max(0, -v) for v in r.min_exponents())
        cleared = r.shift(clear)
        terms = {lay.embed_x(e): -c for e, c in cleared.items()}
        shift = [0] * lay.n
        shift[i] = 1
        mono = tuple(a + b for a, b in zip(lay.embed_x(clear), lay.embed_shift(shift)))
        terms[mono] = terms.get(mono, 0) + 1
        gens.append(LaurentPoly(lay.nvars, terms))
    for k in range(lay.m):
        e = [0] * lay.nvars
        e[k] = 1
        e[lay.m + k] = 1
        gens.append(LaurentPoly(lay.nvars, {tuple(e): 1, (0,) * lay.nvars: -1}))
    return IdealBasis(lay.nvars, tuple(gens), lay.order())


def generator_names(spec: AnnihilatorSpec, dehomogenize: bool = False) -> list[str]:
    return _layout(spec, dehomogenize).names(spec.var_names)


def elimination_operators(
    spec: AnnihilatorSpec, limits: ResourceLimits | None = None, dehomogenize: bool = False
) -> list[DiffOperator]:
    """Every element of the reduced elimination basis, as operators."""
    lay = _layout(spec, dehomogenize)
    gens = build_generators(spec, dehomogenize)
    elim = eliminate(gens, lay.eliminated, limits)
    return [
        DiffOperator(spec.n, {lay.project_shift(e): c for e, c in g.items()})
        for g in elim.gens
    ]


def select_operator(ops: Sequence[DiffOperator]) -> DiffOperator:
    """Fewest terms, then lowest total degree, then smallest leading shift (grevlex)."""
    if not ops:
        raise NoRecurrenceFound("no pure recurrence: the elimination ideal is zero")
    key = OrderSpec.grevlex().key

    def rank(op: DiffOperator):
        return (len(op), op.total_degree(), key(max(op.terms, key=key)))

    return min(ops, key=rank)


def find_recurrence(
    spec: AnnihilatorSpec, limits: ResourceLimits | None = None, dehomogenize: bool = False
) -> DiffOperator:
    """A pure constant-coefficient operator annihilating ``prod R_i^{a_i}``.

    Raises :class:`NoRecurrenceFound` when the elimination ideal is zero and
    :class:`~ctrec.groebner.ResourceLimitExceeded` when the limits stop the
    computation first.
    """
    return select_operator(elimination_operators(spec, limits, dehomogenize))


def membership_check(
    P: DiffOperator, spec: AnnihilatorSpec, limits: ResourceLimits | None = None, dehomogenize: bool = False
) -> bool:
    """Whether ``P`` (nonnegative shifts) lies in the annihilator ideal."""
    if P.n != spec.n:
        raise ValueError("operator and spec dimensions differ")
    if any(v < 0 for s in P.terms for v in s):
        raise ValueError("membership_check needs nonnegative shifts; multiply by a shift monomial first")
    lay = _layout(spec, dehomogenize)
    gb = buchberger(build_generators(spec, dehomogenize), limits)
    poly = LaurentPoly(lay.nvars, {lay.embed_shift(s): c for s, c in P.items()})
    return normal_form(poly, gb).is_zero()


# -- oracles ----------------------------------------------------------------

def coefficient_oracle(spec: AnnihilatorSpec, e: Sequence[int] | None = None) -> Callable[[tuple[int, ...]], Coeff]:
    """``a -> coeff(prod_i R_i^{a_i}, x^e)`` by direct expansion (``e`` defaults to 0).

    The product is split into two halves expanded separately; the requested
    coefficient is read off by pairing.
    """
    n = spec.n
    target = (0,) * n if e is None else tuple(e)
    half = n // 2 if n > 1 else 1

    @lru_cache(maxsize=None)
    def power(i: int, k: int) -> LaurentPoly:
        return spec.R[i] ** k

    @lru_cache(maxsize=None)
    def part(lo: int, hi: int, exps: tuple[int, ...]) -> LaurentPoly:
        out = LaurentPoly.one(n)
        for i, k in zip(range(lo, hi), exps):
            if k:
                out = out * power(i, k)
        return out

    def oracle(a: tuple[int, ...]) -> Coeff:
        a = tuple(a)
        if len(a) != n or any(v < 0 for v in a):
            raise ValueError(f"bad multi-index {a}")
        return coeff_of_product(part(0, half, a[:half]), part(half, n, a[half:]), target)

    return oracle


def constant_term_oracle(spec: AnnihilatorSpec) -> Callable[[tuple[int, ...]], Coeff]:
    return coefficient_oracle(spec)


# -- certificates -----------------------------------------------------------

@dataclass
class VerificationReport:
    passed: bool
    residuals: list[tuple[tuple[int, ...], Coeff]]

    @property
    def first_failure(self) -> tuple[tuple[int, ...], Coeff] | None:
        return next(((a, r) for a, r in self.residuals if r != 0), None)

    @property
    def points_checked(self) -> int:
        return len(self.residuals)


@dataclass
class RecurrenceCertificate:
    spec: AnnihilatorSpec
    generators: IdealBasis
    operator: DiffOperator
    good_form: DiffOperator
    grid_bound: int = DEFAULT_GRID
    checks: list[tuple[tuple[int, ...], Coeff]] = field(default_factory=list)
    elimination_basis: list[DiffOperator] = field(default_factory=list)
    dehomogenized: bool = False

    @property
    def valid(self) -> bool:
        return bool(self.checks) and all(r == 0 for _, r in self.checks)

    def to_dict(self) -> dict:
        n = self.spec.n
        return {
            "n": n,
            "vars": list(self.spec.var_names),
            "R": self.spec.R_text(),
            "dehomogenized": self.dehomogenized,
            "generator_vars": generator_names(self.spec, self.dehomogenized),
            "generators": self.generators.to_text(generator_names(self.spec, self.dehomogenized)),
            "operator": self.operator.to_json(),
            "operator_text": self.operator.to_text(),
            "good_form": self.good_form.to_json(),
            "good_form_text": self.good_form.to_text(),
            "elimination_basis": [op.to_json() for op in self.elimination_basis],
            "grid_bound": self.grid_bound,
            "residuals": [{"a": list(a), "value": rational_str(r)} for a, r in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "RecurrenceCertificate":
        n = int(data["n"])
        spec = AnnihilatorSpec.from_strings(data["R"], data.get("vars"))
        if spec.n != n:
            raise ValueError("certificate n does not match its R list")
        dehom = bool(data.get("dehomogenized", False))
        names = data.get("generator_vars") or generator_names(spec, dehom)
        lay = _layout(spec, dehom)
        gens = IdealBasis(lay.nvars, tuple(parse_laurent(g, names) for g in data["generators"]), lay.order())
        return cls(
            spec=spec,
            generators=gens,
            operator=DiffOperator.from_json(n, data["operator"]),
            good_form=DiffOperator.from_json(n, data["good_form"]),
            grid_bound=int(data["grid_bound"]),
            checks=[(tuple(r["a"]), parse_rational(r["value"])) for r in data.get("residuals", [])],
            elimination_basis=[DiffOperator.from_json(n, op) for op in data.get("elimination_basis", [])],
            dehomogenized=dehom,
        )

    @classmethod
    def from_json(cls, text: str) -> "RecurrenceCertificate":
        return cls.from_dict(json.loads(text))


def grid_points(n: int, bound: int):
    return itertools.product(range(bound + 1), repeat=n)


def check_operator(
    P: DiffOperator, oracle: Callable[[tuple[int, ...]], Coeff], grid_bound: int
) -> VerificationReport:
    """Residuals of ``P`` on every admissible point of ``{0..grid_bound}^n``, lex order."""
    residuals = []
    for a in grid_points(P.n, grid_bound):
        if is_admissible(P, a):
            residuals.append((a, apply_operator(P, oracle, a)))
    return VerificationReport(all(r == 0 for _, r in residuals), residuals)


def verify_certificate(
    cert: RecurrenceCertificate, oracle: Callable[[tuple[int, ...]], Coeff] | None = None
) -> VerificationReport:
    """Recompute residuals of ``cert.operator`` and store them in ``cert.checks``."""
    if cert.grid_bound < cert.operator.max_shift():
        raise ValueError(
            f"grid bound {cert.grid_bound} is smaller than the operator's largest shift {cert.operator.max_shift()}"
        )
    oracle = oracle or constant_term_oracle(cert.spec)
    report = check_operator(cert.operator, oracle, cert.grid_bound)
    cert.checks = list(report.residuals)
    return report


def build_certificate(
    spec: AnnihilatorSpec,
    grid_bound: int = DEFAULT_GRID,
    limits: ResourceLimits | None = None,
    dehomogenize: bool = False,
) -> RecurrenceCertificate:
    """Discover a recurrence, then verify it against the brute-force oracle."""
    ops = elimination_operators(spec, limits, dehomogenize)
    op = select_operator(ops)
    cert = RecurrenceCertificate(
        spec=spec,
        generators=build_generators(spec, dehomogenize),
        operator=op,
        good_form=good_form(op),
        grid_bound=max(grid_bound, op.max_shift()),
        elimination_basis=ops,
        dehomogenized=dehomogenize,
    )
    verify_certificate(cert)
    return cert
