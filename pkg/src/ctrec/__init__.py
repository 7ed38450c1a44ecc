"""Exact constant terms of Laurent-polynomial powers and the pure
shift recurrences that annihilate them."""

from .laurent import LaurentPoly, constant_term, substitute_one
from .parse import ExprSource, ParseError, parse_laurent
from .operators import DiffOperator, apply_operator, good_form
from .groebner import IdealBasis, OrderSpec, ResourceLimits, ResourceLimitExceeded, buchberger, eliminate
from .dyson import (
    DysonInstance,
    dyson_ct_bruteforce,
    dyson_ct_recursive,
    dyson_factor,
    dyson_operator,
    dyson_product,
    dyson_verify,
    lagrange_check,
    multinomial,
)
from .annihilator import (
    AnnihilatorSpec,
    NoRecurrenceFound,
    RecurrenceCertificate,
    build_certificate,
    build_generators,
    dyson_spec,
    find_recurrence,
    membership_check,
    verify_certificate,
)

__version__ = "0.1.0"
