"""Recursive-descent parser for Laurent-polynomial expressions.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*        # '/' divisor must be a monomial
    factor := '-' factor | base ('^' int)?
    base   := int | var | '(' expr ')'
    int    := '-'? [0-9]+                       # sign only after '^'

``^`` binds tighter than unary minus, so ``-x1^2`` is ``-(x1^2)``.  Negative
exponents are accepted only when the base is a monomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .laurent import LaurentPoly

DEFAULT_MAX_EXPONENT = 10_000

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")
_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^()]))"
)


class ParseError(ValueError):
    """Malformed expression; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int, expected: str | None = None):
        self.pos = pos
        self.expected = expected
        text = f"{message} at position {pos}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


class UndeclaredVariableError(ParseError):
    pass


class ExponentBoundError(ParseError):
    pass


class NonIntegerExponentError(ParseError):
    pass


@dataclass(frozen=True)
class ExprSource:
    text: str
    var_names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.var_names)
        object.__setattr__(self, "var_names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in names:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")


@dataclass
class _Tok:
    kind: str  # 'num', 'name', 'op', 'end'
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, src: ExprSource, max_exponent: int):
        self.names = {v: i for i, v in enumerate(src.var_names)}
        self.n = len(src.var_names)
        self.max_exponent = max_exponent
        self.toks = _tokenize(src.text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, op: str) -> bool:
        t = self.tok
        return t.kind == "op" and t.text == op

    def parse(self) -> LaurentPoly:
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos, "operator or end of input")
        return value

    def expr(self) -> LaurentPoly:
        if self.at("+"):
            self.take()
            value = self.term()
        elif self.at("-"):
            self.take()
            value = -self.term()
        else:
            value = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> LaurentPoly:
        value = self.factor()
        while self.at("*") or self.at("/"):
            op = self.take()
            rhs = self.factor()
            if op.text == "*":
                value = value * rhs
            else:
                if not rhs.is_monomial():
                    raise ParseError("divisor must be a nonzero monomial", op.pos)
                value = value * rhs.inverse_monomial()
        return value

    def factor(self) -> LaurentPoly:
        if self.at("-"):
            self.take()
            return -self.factor()
        start = self.tok.pos
        base = self.base()
        if not self.at("^"):
            return base
        self.take()
        k = self.exponent()
        if k < 0:
            if not base.is_monomial():
                raise ParseError("negative exponent on a non-monomial base", start)
            return base.inverse_monomial() ** (-k)
        return base**k

    def exponent(self) -> int:
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        t = self.tok
        if t.kind != "num":
            if t.kind == "end":
                raise ParseError("missing exponent", t.pos, "integer")
            raise NonIntegerExponentError("non-integer exponent", t.pos, "integer")
        if "." in t.text:
            raise NonIntegerExponentError("non-integer exponent", t.pos, "integer")
        self.take()
        k = int(t.text)
        if k > self.max_exponent:
            raise ExponentBoundError(f"exponent magnitude {k} exceeds bound {self.max_exponent}", t.pos)
        return sign * k

    def base(self) -> LaurentPoly:
        t = self.tok
        if t.kind == "num":
            if "." in t.text:
                raise ParseError("floating-point literals are not supported", t.pos, "integer")
            self.take()
            return LaurentPoly.constant(self.n, int(t.text))
        if t.kind == "name":
            if t.text not in self.names:
                raise UndeclaredVariableError(f"undeclared variable {t.text}", t.pos)
            self.take()
            return LaurentPoly.variable(self.n, self.names[t.text] + 1)
        if self.at("("):
            self.take()
            value = self.expr()
            if not self.at(")"):
                raise ParseError(f"unexpected {self.tok.text or 'end of input'!r}", self.tok.pos, "')'")
            self.take()
            return value
        raise ParseError(
            f"unexpected {t.text or 'end of input'!r}", t.pos, "integer, variable or '('"
        )


def parse_laurent(
    src: ExprSource | str,
    var_names: Sequence[str] | None = None,
    *,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
) -> LaurentPoly:
    """Parse an expression into a canonical :class:`LaurentPoly`.

    Accepts either an :class:`ExprSource` or ``(text, var_names)``.

    >>> parse_laurent("(1 - x2/x1)^2", ["x1", "x2"]).to_text(["x1", "x2"])
    'x1^-2 * x2^2 - 2 * x1^-1 * x2 + 1'
    """
    if not isinstance(src, ExprSource):
        if var_names is None:
            raise TypeError("var_names required when passing raw text")
        src = ExprSource(src, tuple(var_names))
    return _Parser(src, max_exponent).parse()
