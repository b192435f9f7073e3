"""Line-oriented algebra documents.

One clause per line, ``#`` starts a comment::

    algebra ni2
    dim 3
    param t in [0, 1]
    const l=1 m=1 alpha=1
    bracket 1 2 = (1+t)*l e2
    bracket 1 3 = (1+t+alpha*t^2)*m e3
    rep adjoint

Coefficients are polynomial in the parameter. Precedence, tightest first:
``^`` (literal exponent), unary ``-``, ``*`` and ``/`` (by a nonzero
constant), then ``+`` and ``-``. Unlisted brackets are zero.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
import logging
import re
from typing import Any, ClassVar

from .algebra_core import DeformationFamily, PolyCoeff
from .common import RepKind
from .const import (
    DEFAULT_ALGEBRA_NAME,
    DEFAULT_PARAMETER,
    MAX_COEFF_BITS,
    MAX_DEGREE,
    MAX_NESTING,
    MAX_NUMBER_LENGTH,
    MAX_POWER,
    RPT_BRACKETS,
    RPT_CONSTANTS,
    RPT_DIM,
    RPT_HI,
    RPT_LO,
    RPT_NAME,
    RPT_PARAMETER,
    RPT_REP,
)
from .exceptions import ParseError

_LOGGER = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"(?P<number>[0-9]+(?:\.[0-9]+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<symbol>[-+*/^()=\[\],])"
)
_BASIS_RE = re.compile(r"e[0-9]+")

KEYWORDS = ("algebra", "bracket", "const", "dim", "param", "rep")


class TokenKind(StrEnum):
    """Lexical classes."""

    BASIS = "basis"
    END = "end of line"
    NAME = "name"
    NUMBER = "number"
    SYMBOL = "symbol"


@dataclass(frozen=True, slots=True)
class Token:
    """Token with its 1-based column."""

    kind: TokenKind
    text: str
    column: int


def tokenize(text: str, line: int) -> list[Token]:
    """Tokens of one line, terminated by an END token."""
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        value = match.group()
        if match.lastgroup == "number":
            if len(value) > MAX_NUMBER_LENGTH:
                raise ParseError("number literal too long", line, pos + 1)
            kind = TokenKind.NUMBER
        elif match.lastgroup == "name":
            if len(value) > MAX_NUMBER_LENGTH:
                raise ParseError("name too long", line, pos + 1)
            kind = TokenKind.BASIS if _BASIS_RE.fullmatch(value) else TokenKind.NAME
        else:
            kind = TokenKind.SYMBOL
        tokens.append(Token(kind, value, pos + 1))
        pos = match.end()
    tokens.append(Token(TokenKind.END, "", len(text) + 1))
    return tokens


@dataclass(frozen=True, slots=True)
class Num:
    """Nonnegative literal; decimal text is kept for printing."""

    value: Fraction
    text: str = field(default="", compare=False)
    column: int = field(default=0, compare=False)
    precedence: ClassVar[int] = 5


@dataclass(frozen=True, slots=True)
class Name:
    """Constant or parameter reference."""

    name: str
    column: int = field(default=0, compare=False)
    precedence: ClassVar[int] = 5


@dataclass(frozen=True, slots=True)
class Neg:
    """Unary minus."""

    operand: CoeffExpr
    column: int = field(default=0, compare=False)
    precedence: ClassVar[int] = 3


@dataclass(frozen=True, slots=True)
class Add:
    """Sum."""

    left: CoeffExpr
    right: CoeffExpr
    column: int = field(default=0, compare=False)
    precedence: ClassVar[int] = 1
    symbol: ClassVar[str] = "+"


@dataclass(frozen=True, slots=True)
class Sub:
    """Difference."""

    left: CoeffExpr
    right: CoeffExpr
    column: int = field(default=0, compare=False)
    precedence: ClassVar[int] = 1
    symbol: ClassVar[str] = "-"


@dataclass(frozen=True, slots=True)
class Mul:
    """Product."""

    left: CoeffExpr
    right: CoeffExpr
    column: int = field(default=0, compare=False)
    precedence: ClassVar[int] = 2
    symbol: ClassVar[str] = "*"


@dataclass(frozen=True, slots=True)
class Div:
    """Quotient by a nonzero constant."""

    left: CoeffExpr
    right: CoeffExpr
    column: int = field(default=0, compare=False)
    precedence: ClassVar[int] = 2
    symbol: ClassVar[str] = "/"


@dataclass(frozen=True, slots=True)
class Pow:
    """Power with a literal exponent."""

    base: CoeffExpr
    exponent: int
    column: int = field(default=0, compare=False)
    precedence: ClassVar[int] = 4


CoeffExpr = Num | Name | Neg | Add | Sub | Mul | Div | Pow


def _bits(poly: PolyCoeff) -> int:
    return max(
        (c.numerator.bit_length() + c.denominator.bit_length() for c in poly.coeffs),
        default=0,
    )


def _bounded(degree: int, bits: int, line: int, column: int) -> None:
    if degree > MAX_DEGREE:
        raise ParseError(f"polynomial degree above {MAX_DEGREE}", line, column)
    if bits > MAX_COEFF_BITS:
        raise ParseError("coefficient too large", line, column)


def evaluate(expr: CoeffExpr, env: Mapping[str, PolyCoeff], line: int = 0) -> PolyCoeff:
    """Polynomial value of an expression."""
    match expr:
        case Num(value=value):
            return PolyCoeff.constant(value)
        case Name(name=name, column=column):
            if name not in env:
                raise ParseError(f"undeclared name {name!r}", line, column)
            return env[name]
        case Neg(operand=operand):
            return -evaluate(operand, env, line)
        case Add(left=left, right=right, column=column):
            total = evaluate(left, env, line) + evaluate(right, env, line)
            _bounded(total.degree, _bits(total), line, column)
            return total
        case Sub(left=left, right=right, column=column):
            total = evaluate(left, env, line) - evaluate(right, env, line)
            _bounded(total.degree, _bits(total), line, column)
            return total
        case Mul(left=left, right=right, column=column):
            a, b = evaluate(left, env, line), evaluate(right, env, line)
            _bounded(a.degree + b.degree, _bits(a) + _bits(b), line, column)
            return a * b
        case Div(left=left, right=right, column=column):
            divisor = evaluate(right, env, line)
            if not divisor.is_constant():
                raise ParseError("division by a non-constant", line, column)
            if divisor.is_zero():
                raise ParseError("division by zero", line, column)
            quotient = evaluate(left, env, line)
            _bounded(quotient.degree, _bits(quotient) + _bits(divisor), line, column)
            return quotient.scale(1 / divisor.coefficient(0))
        case Pow(base=base, exponent=exponent, column=column):
            value = evaluate(base, env, line)
            _bounded(value.degree * exponent, _bits(value) * exponent, line, column)
            return value**exponent
    raise TypeError(f"not an expression: {expr!r}")


_SPACED = {"+": " + ", "-": " - ", "*": "*", "/": "/"}


def render(expr: CoeffExpr, minimum: int = 1) -> str:
    """Text of an expression with the fewest parentheses that reparse to it."""
    match expr:
        case Num(value=value, text=text):
            text = text or str(value)
        case Name(name=name):
            text = name
        case Neg(operand=operand):
            text = "-" + render(operand, 3)
        case Add() | Sub() | Mul() | Div():
            prec = expr.precedence
            left = render(expr.left, prec)
            text = left + _SPACED[expr.symbol] + render(expr.right, prec + 1)
        case Pow(base=base, exponent=exponent):
            text = f"{render(base, 5)}^{exponent}"
    return f"({text})" if expr.precedence < minimum else text


class _ExpressionParser:
    """Recursive descent over the tokens of one line."""

    def __init__(self, tokens: list[Token], line: int) -> None:
        """Expression parser init."""
        self.tokens = tokens
        self.line = line
        self.pos = 0
        self.depth = 0

    def peek(self, offset: int = 0) -> Token:
        """Token ahead of the cursor."""
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        """Consume a token."""
        token = self.peek()
        if token.kind != TokenKind.END:
            self.pos += 1
        return token

    def error(self, message: str, token: Token | None = None) -> ParseError:
        """Diagnostic at a token."""
        return ParseError(message, self.line, (token or self.peek()).column)

    def at_symbol(self, *symbols: str) -> bool:
        """Next token is one of the symbols."""
        token = self.peek()
        return token.kind == TokenKind.SYMBOL and token.text in symbols

    def expect_symbol(self, symbol: str) -> Token:
        """Consume a specific symbol."""
        if not self.at_symbol(symbol):
            raise self.error(f"expected {symbol!r}, found {self._describe()}")
        return self.advance()

    def expect(self, kind: TokenKind) -> Token:
        """Consume a token of a kind."""
        if self.peek().kind != kind:
            raise self.error(f"expected {kind}, found {self._describe()}")
        return self.advance()

    def expect_end(self) -> None:
        """Nothing may follow."""
        if self.peek().kind != TokenKind.END:
            raise self.error(f"unexpected {self._describe()}")

    def integer(self) -> tuple[int, Token]:
        """Integer literal."""
        token = self.expect(TokenKind.NUMBER)
        if "." in token.text:
            raise self.error("expected an integer", token)
        return int(token.text), token

    def _describe(self) -> str:
        token = self.peek()
        return str(TokenKind.END) if token.kind == TokenKind.END else repr(token.text)

    def expression(self) -> CoeffExpr:
        """sum := product (('+' | '-') product)*."""
        node = self.product()
        chain = 0
        while self.at_symbol("+", "-"):
            op = self.advance()
            self._enter(op)
            chain += 1
            right = self.product()
            node = (Add if op.text == "+" else Sub)(node, right, op.column)
        self.depth -= chain
        return node

    def product(self) -> CoeffExpr:
        """product := unary (('*' | '/') unary)*."""
        node = self.unary()
        chain = 0
        while self.at_symbol("*", "/"):
            op = self.advance()
            self._enter(op)
            chain += 1
            right = self.unary()
            node = (Mul if op.text == "*" else Div)(node, right, op.column)
        self.depth -= chain
        return node

    def unary(self) -> CoeffExpr:
        """unary := '-' unary | power."""
        if self.at_symbol("-"):
            op = self.advance()
            self._enter(op)
            operand = self.unary()
            self.depth -= 1
            return Neg(operand, op.column)
        return self.power()

    def power(self) -> CoeffExpr:
        """power := atom ('^' INT)?."""
        base = self.atom()
        if self.at_symbol("^"):
            op = self.advance()
            exponent, token = self.integer()
            if exponent > MAX_POWER:
                raise self.error(f"exponent above {MAX_POWER}", token)
            return Pow(base, exponent, op.column)
        return base

    def atom(self) -> CoeffExpr:
        """atom := NUMBER | NAME | '(' sum ')'."""
        token = self.peek()
        if token.kind == TokenKind.NUMBER:
            self.advance()
            return Num(Fraction(token.text), token.text, token.column)
        if token.kind == TokenKind.NAME:
            self.advance()
            return Name(token.text, token.column)
        if self.at_symbol("("):
            self.advance()
            self._enter(token)
            node = self.expression()
            self.expect_symbol(")")
            self.depth -= 1
            return node
        raise self.error(f"expected an expression, found {self._describe()}")

    def _enter(self, token: Token) -> None:
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise self.error("expression nested too deeply", token)


@dataclass(frozen=True, slots=True)
class BracketTerm:
    """± coefficient · e_k; a missing coefficient is 1."""

    k: int
    coeff: CoeffExpr | None = None
    negative: bool = False


@dataclass(frozen=True, slots=True)
class BracketClause:
    """[e_i, e_j] as a list of terms, 1-based with i < j."""

    i: int
    j: int
    terms: tuple[BracketTerm, ...]


@dataclass(frozen=True, slots=True)
class RepSpec:
    """Module declaration."""

    kind: RepKind
    dim: int = 1
    path: str | None = None

    def __str__(self) -> str:
        """Clause text without the keyword."""
        if self.kind == RepKind.TRIVIAL:
            return f"trivial {self.dim}"
        if self.kind == RepKind.FILE:
            return f"file {self.path}"
        return str(self.kind)


@dataclass(frozen=True, slots=True)
class AlgebraDocument:
    """Parsed algebra document."""

    dim: int
    name: str = DEFAULT_ALGEBRA_NAME
    parameter: str | None = None
    domain: tuple[Fraction, Fraction] | None = None
    constants: tuple[tuple[str, Fraction], ...] = ()
    brackets: tuple[BracketClause, ...] = ()
    rep: RepSpec | None = None

    def environment(self) -> dict[str, PolyCoeff]:
        """Values of constants and the parameter."""
        env = {name: PolyCoeff.constant(value) for name, value in self.constants}
        if self.parameter is not None:
            env[self.parameter] = PolyCoeff.variable()
        return env

    def to_family(self) -> DeformationFamily:
        """Deformation family with 0-based indices."""
        env = self.environment()
        brackets: dict[tuple[int, int], dict[int, PolyCoeff]] = {}
        for clause in self.brackets:
            terms = brackets.setdefault((clause.i - 1, clause.j - 1), {})
            for term in clause.terms:
                value = (
                    PolyCoeff.constant(1)
                    if term.coeff is None
                    else evaluate(term.coeff, env)
                )
                if term.negative:
                    value = -value
                terms[term.k - 1] = terms.get(term.k - 1, PolyCoeff()) + value
        return DeformationFamily.from_brackets(
            self.dim,
            brackets,
            self.parameter or DEFAULT_PARAMETER,
            self.domain,
            self.name,
        )


class _DocumentParser:
    """Clause-by-clause document state."""

    def __init__(self) -> None:
        """Document parser init."""
        self.name: str | None = None
        self.dim: int | None = None
        self.parameter: str | None = None
        self.domain: tuple[Fraction, Fraction] | None = None
        self.constants: dict[str, Fraction] = {}
        self.brackets: dict[tuple[int, int], BracketClause] = {}
        self.rep: RepSpec | None = None

    def parse(self, text: str) -> AlgebraDocument:
        """Whole document."""
        lines = text.splitlines()
        for number, raw in enumerate(lines, start=1):
            body = raw.split("#", 1)[0]
            if not body.strip():
                continue
            if body.split()[0] == "rep":
                self._rep(body, number)
                continue
            parser = _ExpressionParser(tokenize(body, number), number)
            keyword = parser.expect(TokenKind.NAME)
            handler = {
                "algebra": self._algebra,
                "bracket": self._bracket,
                "const": self._const,
                "dim": self._dim,
                "param": self._param,
            }.get(keyword.text)
            if handler is None:
                raise parser.error(f"unknown clause {keyword.text!r}", keyword)
            handler(parser, keyword)
            parser.expect_end()
        if self.dim is None:
            raise ParseError("missing dim clause", max(1, len(lines)), 1)
        return AlgebraDocument(
            dim=self.dim,
            name=self.name or DEFAULT_ALGEBRA_NAME,
            parameter=self.parameter,
            domain=self.domain,
            constants=tuple(self.constants.items()),
            brackets=tuple(self.brackets.values()),
            rep=self.rep,
        )

    def _env(self, with_parameter: bool) -> dict[str, PolyCoeff]:
        env = {
            name: PolyCoeff.constant(value) for name, value in self.constants.items()
        }
        if with_parameter and self.parameter is not None:
            env[self.parameter] = PolyCoeff.variable()
        return env

    def _constant_expression(self, parser: _ExpressionParser) -> Fraction:
        start = parser.peek()
        value = evaluate(parser.expression(), self._env(False), parser.line)
        if not value.is_constant():
            raise parser.error("expected a constant expression", start)
        return value.coefficient(0)

    def _once(self, parser: _ExpressionParser, keyword: Token, seen: object) -> None:
        if seen is not None:
            raise parser.error(f"duplicate {keyword.text} clause", keyword)

    def _algebra(self, parser: _ExpressionParser, keyword: Token) -> None:
        self._once(parser, keyword, self.name)
        self.name = parser.expect(TokenKind.NAME).text

    def _dim(self, parser: _ExpressionParser, keyword: Token) -> None:
        self._once(parser, keyword, self.dim)
        dim, token = parser.integer()
        if dim < 1:
            raise parser.error("dimension must be at least 1", token)
        self.dim = dim

    def _declare(self, parser: _ExpressionParser, token: Token) -> str:
        if token.text in self.constants or token.text == self.parameter:
            raise parser.error(f"{token.text!r} already declared", token)
        if token.text in KEYWORDS:
            raise parser.error(f"{token.text!r} is reserved", token)
        return token.text

    def _param(self, parser: _ExpressionParser, keyword: Token) -> None:
        self._once(parser, keyword, self.parameter)
        name = self._declare(parser, parser.expect(TokenKind.NAME))
        word = parser.expect(TokenKind.NAME)
        if word.text != "in":
            raise parser.error("expected 'in'", word)
        open_token = parser.expect_symbol("[")
        lo = self._constant_expression(parser)
        parser.expect_symbol(",")
        hi = self._constant_expression(parser)
        parser.expect_symbol("]")
        if lo > hi:
            raise parser.error(f"empty interval [{lo}, {hi}]", open_token)
        self.parameter = name
        self.domain = (lo, hi)

    def _const(self, parser: _ExpressionParser, keyword: Token) -> None:
        if parser.peek().kind == TokenKind.END:
            raise parser.error("const clause declares nothing")
        while parser.peek().kind != TokenKind.END:
            name = self._declare(parser, parser.expect(TokenKind.NAME))
            parser.expect_symbol("=")
            self.constants[name] = self._constant_expression(parser)

    def _index(self, parser: _ExpressionParser, token: Token, value: int) -> None:
        assert self.dim is not None
        if not 1 <= value <= self.dim:
            raise parser.error(f"index {value} outside 1..{self.dim}", token)

    def _term(self, parser: _ExpressionParser, negative: bool) -> BracketTerm:
        coeff: CoeffExpr | None = None
        if parser.peek().kind != TokenKind.BASIS:
            coeff = parser.expression()
            evaluate(coeff, self._env(True), parser.line)
        basis = parser.expect(TokenKind.BASIS)
        k = int(basis.text[1:])
        self._index(parser, basis, k)
        return BracketTerm(k, coeff, negative)

    def _bracket(self, parser: _ExpressionParser, keyword: Token) -> None:
        if self.dim is None:
            raise parser.error("bracket before dim clause", keyword)
        i, i_token = parser.integer()
        j, j_token = parser.integer()
        self._index(parser, i_token, i)
        self._index(parser, j_token, j)
        if i >= j:
            raise parser.error(f"bracket {i} {j} needs i < j", i_token)
        if (i, j) in self.brackets:
            raise parser.error(f"duplicate bracket {i} {j}", i_token)
        parser.expect_symbol("=")
        negative = False
        if parser.at_symbol("-") and parser.peek(1).kind == TokenKind.BASIS:
            parser.advance()
            negative = True
        terms = [self._term(parser, negative)]
        while parser.at_symbol("+", "-"):
            terms.append(self._term(parser, parser.advance().text == "-"))
        self.brackets[(i, j)] = BracketClause(i, j, tuple(terms))

    def _rep(self, body: str, line: int) -> None:
        column = body.index("rep") + 1
        if self.rep is not None:
            raise ParseError("duplicate rep clause", line, column)
        words = body.split()
        kind = words[1] if len(words) > 1 else ""
        if kind == RepKind.ADJOINT and len(words) == 2:
            self.rep = RepSpec(RepKind.ADJOINT)
        elif (
            kind == RepKind.TRIVIAL
            and len(words) == 3
            and words[2].isdecimal()
            and len(words[2]) <= MAX_NUMBER_LENGTH
        ):
            dim = int(words[2])
            if dim < 1:
                raise ParseError(
                    "module dimension must be at least 1",
                    line,
                    body.rindex(words[2]) + 1,
                )
            self.rep = RepSpec(RepKind.TRIVIAL, dim)
        elif kind == RepKind.FILE and len(words) > 2:
            path = body[body.index("file", column + 2) + 4 :].strip()
            self.rep = RepSpec(RepKind.FILE, path=path)
        else:
            raise ParseError(
                "expected 'rep trivial D', 'rep adjoint' or 'rep file PATH'",
                line,
                column,
            )


def parse_algebra(text: str) -> AlgebraDocument:
    """Parse a document or raise ParseError with its line and column."""
    document = _DocumentParser().parse(text)
    _LOGGER.debug(
        "parsed %s: dim=%s brackets=%s",
        document.name,
        document.dim,
        len(document.brackets),
    )
    return document


def _render_terms(terms: tuple[BracketTerm, ...]) -> str:
    parts = []
    for index, term in enumerate(terms):
        coeff = "" if term.coeff is None else render(term.coeff, 2) + " "
        body = f"{coeff}e{term.k}"
        if index == 0:
            parts.append(f"-{body}" if term.negative else body)
        else:
            parts.append(f"{'-' if term.negative else '+'} {body}")
    return " ".join(parts)


def serialize_algebra(document: AlgebraDocument) -> str:
    """Canonical document text; parsing it gives back an equal document."""
    lines = [f"algebra {document.name}", f"dim {document.dim}"]
    if document.parameter is not None and document.domain is not None:
        lo, hi = document.domain
        lines.append(f"param {document.parameter} in [{lo}, {hi}]")
    if document.constants:
        lines.append(
            "const " + " ".join(f"{name}={value}" for name, value in document.constants)
        )
    lines.extend(
        f"bracket {clause.i} {clause.j} = {_render_terms(clause.terms)}"
        for clause in document.brackets
    )
    if document.rep is not None:
        lines.append(f"rep {document.rep}")
    return "\n".join(lines) + "\n"


def to_json(document: AlgebraDocument) -> dict[str, Any]:
    """JSON-ready mirror of a document."""
    parameter = None
    if document.parameter is not None and document.domain is not None:
        parameter = {
            RPT_NAME: document.parameter,
            RPT_LO: str(document.domain[0]),
            RPT_HI: str(document.domain[1]),
        }
    rep = None
    if document.rep is not None:
        rep = {
            "kind": str(document.rep.kind),
            "dim": document.rep.dim,
            "path": document.rep.path,
        }
    return {
        RPT_NAME: document.name,
        RPT_DIM: document.dim,
        RPT_PARAMETER: parameter,
        RPT_CONSTANTS: {name: str(value) for name, value in document.constants},
        RPT_BRACKETS: [
            {
                "i": clause.i,
                "j": clause.j,
                "terms": [
                    {
                        "k": term.k,
                        "sign": -1 if term.negative else 1,
                        "coeff": None if term.coeff is None else render(term.coeff),
                    }
                    for term in clause.terms
                ],
            }
            for clause in document.brackets
        ],
        RPT_REP: rep,
    }


def _json_terms(terms: list[dict[str, Any]]) -> str:
    parts = []
    for index, term in enumerate(terms):
        coeff = "" if term.get("coeff") is None else f"({term['coeff']}) "
        sign = "-" if int(term.get("sign", 1)) < 0 else "+"
        body = f"{coeff}e{int(term['k'])}"
        if index == 0:
            parts.append(f"-{body}" if sign == "-" else body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def from_json(data: Mapping[str, Any]) -> AlgebraDocument:
    """Document from its JSON mirror, validated by the DSL parser."""
    try:
        lines = [
            f"algebra {data.get(RPT_NAME, DEFAULT_ALGEBRA_NAME)}",
            f"dim {int(data[RPT_DIM])}",
        ]
        parameter = data.get(RPT_PARAMETER)
        if parameter:
            lines.append(
                f"param {parameter[RPT_NAME]} "
                f"in [{parameter[RPT_LO]}, {parameter[RPT_HI]}]"
            )
        constants = data.get(RPT_CONSTANTS) or {}
        if constants:
            lines.append("const " + " ".join(f"{k}={v}" for k, v in constants.items()))
        for clause in data.get(RPT_BRACKETS) or []:
            lines.append(
                f"bracket {int(clause['i'])} {int(clause['j'])} "
                f"= {_json_terms(clause['terms'])}"
            )
        rep = data.get(RPT_REP)
        if rep:
            spec = RepSpec(
                RepKind(rep["kind"]), int(rep.get("dim") or 1), rep.get("path")
            )
            lines.append(f"rep {spec}")
    except (KeyError, TypeError, ValueError, AttributeError) as err:
        raise ParseError(f"invalid JSON document: {err}", 1, 1) from err
    return parse_algebra("\n".join(lines))
