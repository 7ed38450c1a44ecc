"""Fixed toy ideals shared by the Groebner tests and the acceptance run."""

from ctrec.groebner import IdealBasis, OrderSpec
from ctrec.parse import parse_laurent

VARS = ["x", "y", "z"]

TOY_IDEALS = {
    "unit": ["x*y - 1", "x^2"],
    "single": ["x"],
    "parabola-hyperbola": ["x^2 - y", "x*y - 1"],
    "circle-line": ["x^2 + y^2 - 1", "x - y"],
    "cyclic3": ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"],
    "clo-cubic": ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
    "twisted-cubic": ["x^2 - y", "x^3 - z"],
    "cyclic-products": ["x*y - z", "y*z - x", "z*x - y"],
    "point": ["x - 1", "y - 2", "z - 3"],
    "rational-coeffs": ["2*x - 3*y", "4*y^2 - 1", "1/2*z*x - y"],
    "mixed-degree": ["x^3*y - z^2", "y^2 - x*z + 1", "x*y*z - 2"],
    "redundant": ["x^2 - 1", "x^3 - x", "x^4 - 1"],
}


def toy_basis(name: str, order: OrderSpec | None = None) -> IdealBasis:
    gens = tuple(parse_laurent(g, VARS) for g in TOY_IDEALS[name])
    return IdealBasis(3, gens, order or OrderSpec.grevlex())
