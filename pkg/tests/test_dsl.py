"""Algebra document parser, printer and JSON mirror tests."""

from fractions import Fraction
import random

from conftest import FIXTURES
import pytest

from liebrst.algebra_core import PolyCoeff, builtin_family_ni2, jacobi_check, so3
from liebrst.common import RepKind
from liebrst.dsl import (
    AlgebraDocument,
    Add,
    Name,
    Num,
    Pow,
    TokenKind,
    evaluate,
    from_json,
    parse_algebra,
    render,
    serialize_algebra,
    to_json,
    tokenize,
)
from liebrst.exceptions import ParseError

ALPHABET = [
    "algebra",
    "dim",
    "param",
    "const",
    "bracket",
    "rep",
    "trivial",
    "adjoint",
    "file",
    "in",
    "e1",
    "e2",
    "e3",
    "t",
    "x",
    "0",
    "1",
    "2",
    "3",
    "3.5",
    "64",
    "65",
    "(",
    ")",
    "[",
    "]",
    ",",
    "=",
    "+",
    "-",
    "*",
    "/",
    "^",
    "#",
    " ",
    " ",
    "\n",
    "\t",
    "é",
    "@",
]


def _fixture_texts():
    return sorted(FIXTURES.glob("*.alg"))


def _parse_error(text: str) -> ParseError:
    with pytest.raises(ParseError) as err:
        parse_algebra(text)
    return err.value


def test_parse_ni2(fixtures_dir):
    document = parse_algebra((fixtures_dir / "ni2.alg").read_text(encoding="utf-8"))
    assert document.name == "ni2"
    assert document.dim == 3
    assert document.parameter == "t"
    assert document.domain == (0, 1)
    assert document.rep.kind == RepKind.ADJOINT
    assert document.to_family() == builtin_family_ni2(1, 2, 1)


def test_parse_so3(fixtures_dir):
    family = parse_algebra((fixtures_dir / "so3.alg").read_text(encoding="utf-8"))
    f = family.to_family().at(0)
    assert f == so3()
    assert jacobi_check(f).ok


def test_dim_only_is_abelian():
    document = parse_algebra("dim 2\n")
    assert document.name == "algebra"
    assert document.rep is None
    assert document.to_family().at(0).is_abelian()


def test_comments_and_blank_lines():
    text = "# header\n\n  algebra  a # trailing\ndim 2   \n\n"
    assert parse_algebra(text) == AlgebraDocument(dim=2, name="a")


def test_leading_minus_sign():
    document = parse_algebra("dim 3\nbracket 1 2 = -e3\nbracket 1 3 = -2 e2 + e1\n")
    first, second = document.brackets
    assert first.terms[0].negative and first.terms[0].coeff is None
    assert not second.terms[0].negative
    f = document.to_family().at(0)
    assert f[0, 1, 2] == -1
    assert f[0, 2, 1] == -2
    assert f[0, 2, 0] == 1


def test_repeated_basis_terms_add_up():
    f = parse_algebra("dim 2\nbracket 1 2 = e2 + 2 e2 - e1\n").to_family().at(0)
    assert f[0, 1, 1] == 3
    assert f[0, 1, 0] == -1


def test_decimals_and_constants():
    document = parse_algebra("dim 2\nconst c=0.25 d=c*4-1/2\nbracket 1 2 = d e2\n")
    assert document.constants == (("c", Fraction(1, 4)), ("d", Fraction(1, 2)))
    assert document.to_family().at(0)[0, 1, 1] == Fraction(1, 2)


def test_parameter_polynomial():
    document = parse_algebra(
        "dim 2\nparam s in [-1, 1/2]\nbracket 1 2 = (1 - s)^2/4 e2\n"
    )
    family = document.to_family()
    assert family.parameter == "s"
    assert family.domain == (-1, Fraction(1, 2))
    assert family.components[0][1][1] == PolyCoeff.from_coeffs(
        Fraction(1, 4), Fraction(-1, 2), Fraction(1, 4)
    )


@pytest.mark.parametrize(
    ("text", "line", "column", "reason"),
    [
        ("dim 3\nbracket 1 2 = e4\n", 2, 15, "index 4 outside 1..3"),
        ("dim 3\nbracket 2 2 = e1\n", 2, 9, "needs i < j"),
        ("dim 3\nbracket 1 2 = e1\nbracket 1 2 = e2\n", 3, 9, "duplicate bracket"),
        ("dim 2\nbracket 1 2 = x e2\n", 2, 15, "undeclared name 'x'"),
        ("bracket 1 2 = e1\ndim 2\n", 1, 1, "bracket before dim"),
        ("dim 3\ndim 3\n", 2, 1, "duplicate dim"),
        ("dim 0\n", 1, 5, "at least 1"),
        ("dim 3.5\n", 1, 5, "expected an integer"),
        ("dim 3 @\n", 1, 7, "unexpected character"),
        ("algebra a\n", 1, 1, "missing dim"),
        ("dim 2\nconst dim=1\n", 2, 7, "reserved"),
        ("dim 2\nconst x=1 x=2\n", 2, 11, "already declared"),
        ("dim 2\nconst x=1/0\n", 2, 10, "division by zero"),
        ("dim 2\nparam t in [0, 1]\nbracket 1 2 = 1/t e2\n", 3, 16, "non-constant"),
        ("dim 2\nparam t in [1, 0]\n", 2, 12, "empty interval"),
        ("dim 2\nparam t in [0, t]\n", 2, 16, "undeclared"),
        ("dim 2\nparam t in [0, 1]\nbracket 1 2 = t^65 e2\n", 3, 17, "exponent above"),
        ("dim 2\nfrobnicate\n", 2, 1, "unknown clause"),
        ("dim 2\nbracket 1 2 = e1 e2\n", 2, 18, "unexpected 'e2'"),
        ("dim 2\nrep trivial 0\n", 2, 13, "at least 1"),
        ("dim 2\nrep mystery\n", 2, 1, "expected 'rep trivial D'"),
        ("dim 2\nrep adjoint\nrep adjoint\n", 3, 1, "duplicate rep"),
    ],
)
def test_diagnostics(text, line, column, reason):
    err = _parse_error(text)
    assert (err.line, err.column) == (line, column)
    assert reason in err.reason
    assert str(err).startswith(f"{line}:{column}: ")


def test_exponent_cap_is_inclusive():
    document = parse_algebra("dim 2\nparam t in [0, 1]\nbracket 1 2 = t^64 e2\n")
    assert document.to_family().components[0][1][1].degree == 64


def test_degree_and_nesting_limits():
    err = _parse_error("dim 2\nparam t in [0, 1]\nbracket 1 2 = (t^64)^64 e2\n")
    assert "degree" in err.reason
    deep = "(" * 101 + "1" + ")" * 101
    assert "nested" in _parse_error(f"dim 2\nconst x={deep}\n").reason
    chain = "1" + "+1" * 300
    assert "nested" in _parse_error(f"dim 2\nconst x={chain}\n").reason
    ok = parse_algebra("dim 2\nconst x=" + "1" + "+1" * 50 + "\n")
    assert ok.constants == (("x", Fraction(51)),)


def test_number_length_limit():
    err = _parse_error("dim 2\nconst x=" + "9" * 1001 + "\n")
    assert "too long" in err.reason


def test_basis_index_length_limit():
    err = _parse_error("dim 3\nbracket 1 2 = e" + "1" * 5000)
    assert (err.line, err.column) == (2, 15)
    assert "too long" in err.reason
    err = _parse_error("dim 3\nbracket 1 2 = e" + "1" * 999)
    assert (err.line, err.column) == (2, 15)
    assert "outside 1..3" in err.reason
    err = _parse_error("dim 2\nconst " + "x" * 1001 + "=1\n")
    assert "too long" in err.reason


def test_tokenize_columns():
    tokens = tokenize("bracket 1 2 = e3", 1)
    assert [t.kind for t in tokens] == [
        TokenKind.NAME,
        TokenKind.NUMBER,
        TokenKind.NUMBER,
        TokenKind.SYMBOL,
        TokenKind.BASIS,
        TokenKind.END,
    ]
    assert [t.column for t in tokens] == [1, 9, 11, 13, 15, 17]


def test_render_minimal_parentheses():
    document = parse_algebra(
        "dim 2\nparam t in [0, 1]\n"
        "bracket 1 2 = ((2*(t+1))) e2 + (1 - (t - 1)) e1 - (-t)^2 e2\n"
    )
    text = serialize_algebra(document)
    assert "bracket 1 2 = 2*(t + 1) e2 + (1 - (t - 1)) e1 - (-t)^2 e2" in text


def test_render_and_evaluate_expression():
    expr = Add(Num(Fraction(1), "1"), Pow(Name("t"), 2))
    assert render(expr) == "1 + t^2"
    assert render(expr, 2) == "(1 + t^2)"
    value = evaluate(expr, {"t": PolyCoeff.variable()})
    assert value == PolyCoeff.from_coeffs(1, 0, 1)


@pytest.mark.parametrize("path", _fixture_texts(), ids=lambda p: p.stem)
def test_fixed_point(path):
    document = parse_algebra(path.read_text(encoding="utf-8"))
    text = serialize_algebra(document)
    assert parse_algebra(text) == document
    assert serialize_algebra(parse_algebra(text)) == text


@pytest.mark.parametrize("path", _fixture_texts(), ids=lambda p: p.stem)
def test_json_mirror(path):
    document = parse_algebra(path.read_text(encoding="utf-8"))
    assert from_json(to_json(document)) == document


def test_json_rejects_bad_structure():
    with pytest.raises(ParseError):
        from_json({"name": "x"})
    with pytest.raises(ParseError):
        from_json({"dim": 2, "brackets": [{"i": 1}]})
    with pytest.raises(ParseError):
        from_json({"dim": 2, "rep": {"kind": "mystery"}})
    with pytest.raises(ParseError):
        from_json({"dim": 2, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 9}]}]})


def test_rep_clauses():
    assert parse_algebra("dim 2\nrep trivial 4\n").rep.dim == 4
    document = parse_algebra("dim 2\nrep file  mats/so3 rep.csv  # comment\n")
    assert document.rep.kind == RepKind.FILE
    assert document.rep.path == "mats/so3 rep.csv"
    assert parse_algebra(serialize_algebra(document)) == document


def _random_text(rng: random.Random) -> str:
    prefix = "dim 3\n" if rng.random() < 0.5 else ""
    size = rng.randint(0, 30)
    return prefix + "".join(rng.choice(ALPHABET) for _ in range(size))


def test_fuzz_never_crashes():
    rng = random.Random(2024)
    parsed = 0
    for _ in range(10_000):
        text = _random_text(rng)
        try:
            document = parse_algebra(text)
        except ParseError as err:
            assert err.line >= 1 and err.column >= 1
            continue
        parsed += 1
        assert parse_algebra(serialize_algebra(document)) == document
        if document.dim <= 4:
            document.to_family()
    assert parsed > 0
