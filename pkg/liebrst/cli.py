"""Command line interface."""

from __future__ import annotations

import argparse
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
import json
import logging
from pathlib import Path
import re
from typing import Any

from .algebra_core import (
    BUILTIN_ALGEBRAS,
    DeformationFamily,
    Representation,
    StructureTensor,
    builtin_family_ni2,
    constant_family,
    derivation_space,
    jacobi_check,
    trivial_representation,
)
from .classify3 import behr_data, classify_tensor
from .common import IndexMethod, RepKind, Subcommand, VertexPreset
from .config import Config
from .const import (
    EXIT_INPUT_ERROR,
    EXIT_MATH_FAILURE,
    EXIT_OK,
    MAX_NUMBER_LENGTH,
    RPT_BASIS,
    RPT_DIM,
    RPT_DIMS,
    RPT_EULER,
    RPT_LAMBDA,
    RPT_NILPOTENT,
    RPT_ODD,
    RPT_OK,
    RPT_TOTAL_DIM,
    RPT_VIOLATIONS,
)
from .dsl import AlgebraDocument, RepSpec, from_json, parse_algebra
from .exact_linalg import (
    format_complex,
    format_float,
    format_rational,
    matrix_from_csv,
    matrix_to_csv,
    to_rational,
)
from .exceptions import (
    AsymmetricMatrixError,
    InputError,
    JacobiError,
    LieBrstError,
    NonFiniteError,
    RepresentationError,
)
from .ghost_complex import (
    build_brst,
    cohomology_from,
    euler_characteristic,
    nilpotency_check,
)
from .invariants import (
    RepresentationRule,
    VertexOperator,
    brst_at,
    check_hypotheses,
    deformation_scan,
    equivariant_index,
    index_series_oracle,
    jordan_profile,
    vertex_preset,
)

_LOGGER = logging.getLogger(__name__)

_MATH_ERRORS = (AsymmetricMatrixError, JacobiError, NonFiniteError, RepresentationError)
_BUILTIN_PREFIX = "builtin:"
_BLANK_LINES = re.compile(r"\n\s*\n")


@dataclass(slots=True)
class Session:
    """Loaded document and resolved options of one invocation."""

    config: Config
    args: argparse.Namespace
    family: DeformationFamily
    rep: RepSpec
    base: Path

    def fmt(self, value: float) -> str:
        """Float text at the configured precision."""
        return format_float(value, self.config.float_digits)

    def fmt_complex(self, value: complex) -> str:
        """Complex text at the configured precision."""
        return format_complex(value, self.config.float_digits)


def parse_grid(text: str) -> list[Fraction]:
    """'a:b:k' as k equally spaced rationals with exact endpoints."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"grid {text!r} is not a:b:k")
    try:
        lo, hi = to_rational(parts[0]), to_rational(parts[1])
        count = int(parts[2])
    except (ValueError, ZeroDivisionError) as err:
        raise InputError(f"grid {text!r}: {err}") from err
    if count < 1:
        raise InputError(f"grid {text!r} needs at least one point")
    if count == 1:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def parse_at(text: str, parameter: str) -> Fraction:
    """'name=value' for the family parameter."""
    name, sep, value = text.partition("=")
    if not sep or name.strip() != parameter:
        raise InputError(f"--at expects {parameter}=VALUE, got {text!r}")
    try:
        return to_rational(value.strip())
    except (ValueError, ZeroDivisionError) as err:
        raise InputError(f"--at value {value!r}: {err}") from err


def parse_rep(text: str) -> RepSpec:
    """trivial:d, adjoint or file:PATH."""
    kind, _, rest = text.partition(":")
    if kind == RepKind.ADJOINT and not rest:
        return RepSpec(RepKind.ADJOINT)
    if (
        kind == RepKind.TRIVIAL
        and rest.isdecimal()
        and len(rest) <= MAX_NUMBER_LENGTH
        and int(rest) > 0
    ):
        return RepSpec(RepKind.TRIVIAL, int(rest))
    if kind == RepKind.FILE and rest:
        return RepSpec(RepKind.FILE, path=rest)
    raise InputError(f"--rep {text!r} is not trivial:d, adjoint or file:PATH")


def read_representation(text: str, n: int) -> Representation:
    """n square CSV blocks separated by blank lines."""
    blocks = [block for block in _BLANK_LINES.split(text.strip()) if block.strip()]
    if len(blocks) != n:
        raise InputError(f"representation file has {len(blocks)} matrices, need {n}")
    try:
        matrices = tuple(matrix_from_csv(block) for block in blocks)
    except (ValueError, ZeroDivisionError) as err:
        raise InputError(f"representation file: {err}") from err
    dim_v = matrices[0].rows
    return Representation(dim_v, matrices)


def load_document(
    source: str, config: Config
) -> tuple[DeformationFamily, RepSpec | None, Path]:
    """Family, declared module and base directory of a document argument."""
    if source.startswith(_BUILTIN_PREFIX):
        name = source.removeprefix(_BUILTIN_PREFIX)
        if name == "ni2":
            return builtin_family_ni2(1, 1, 1), None, Path.cwd()
        if name not in BUILTIN_ALGEBRAS:
            raise InputError(f"unknown builtin {name!r}")
        f = BUILTIN_ALGEBRAS[name]
        config.check_dim(f.dim)
        return constant_family(f), None, Path.cwd()
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise InputError(f"cannot read {source}: {err}") from err
    document: AlgebraDocument
    if path.suffix == ".json":
        try:
            document = from_json(json.loads(text))
        except (json.JSONDecodeError, RecursionError) as err:
            raise InputError(f"{source}: {err}") from err
    else:
        document = parse_algebra(text)
    config.check_dim(document.dim)
    return document.to_family(), document.rep, path.parent


def _rule(session: Session) -> RepresentationRule:
    spec, f = session.rep, session.family
    if spec.kind == RepKind.ADJOINT:
        return RepresentationRule.adjoint()
    if spec.kind == RepKind.TRIVIAL:
        session.config.check_module(spec.dim)
        return RepresentationRule.fixed(
            trivial_representation(StructureTensor.zeros(f.dim), spec.dim)
        )
    assert spec.path is not None
    path = session.base / spec.path
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise InputError(f"cannot read {path}: {err}") from err
    rho = read_representation(text, f.dim)
    session.config.check_module(rho.dim_v)
    return RepresentationRule.fixed(rho)


def _sample(session: Session) -> Fraction:
    family = session.family
    if session.args.at is not None:
        return parse_at(session.args.at, family.parameter)
    return family.domain[0] if family.domain is not None else Fraction(0)


def _grid(session: Session) -> list[Fraction]:
    if session.args.grid is not None:
        return parse_grid(session.args.grid)
    family = session.family
    domain = family.domain
    if session.args.at is None and domain is not None and not family.is_constant():
        return parse_grid(f"{domain[0]}:{domain[1]}:11")
    return [_sample(session)]


def _vertex(session: Session, n: int, dim_v: int) -> VertexOperator:
    text: str = session.args.vertex
    kind, _, rest = text.partition(":")
    if kind == VertexPreset.CREATION:
        if not rest.isdecimal() or not 1 <= int(rest) <= n:
            raise InputError(f"--vertex {text!r}: ghost index must be in 1..{n}")
        return vertex_preset(VertexPreset.CREATION, n, dim_v, ghost=int(rest) - 1)
    if kind == VertexPreset.FILE:
        try:
            matrix = matrix_from_csv(Path(rest).read_text(encoding="utf-8"))
        except (OSError, ValueError, ZeroDivisionError) as err:
            raise InputError(f"cannot read {rest}: {err}") from err
        return vertex_preset(VertexPreset.FILE, n, dim_v, matrix=matrix)
    try:
        preset = VertexPreset(text)
    except ValueError as err:
        raise InputError(f"unknown vertex {text!r}") from err
    return vertex_preset(preset, n, dim_v)


def _write_file(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot write {path}: {err}") from err


def cmd_verify(session: Session) -> tuple[int, Any, list[str]]:
    """Jacobi identity at every grid point."""
    rows = []
    lines = []
    failed = False
    for lam in _grid(session):
        report = jacobi_check(session.family.at(lam))
        failed = failed or not report.ok
        rows.append(
            {
                RPT_LAMBDA: str(lam),
                RPT_OK: report.ok,
                RPT_VIOLATIONS: [list(v) for v in report.violations],
            }
        )
        status = "OK" if report.ok else f"FAIL {len(report.violations)} violations"
        lines.append(f"{session.family.parameter}={lam} {status}")
    return (EXIT_MATH_FAILURE if failed else EXIT_OK), rows, lines


def cmd_cohomology(session: Session) -> tuple[int, Any, list[str]]:
    """Cohomology dimensions at the sample point."""
    lam = _sample(session)
    f = session.family.at(lam)
    Q = build_brst(f, _rule(session).at(f))
    dims = cohomology_from(Q)
    euler = euler_characteristic(dims)
    lines = [f"H^{k} = {d}" for k, d in enumerate(dims)] + [f"euler = {euler}"]
    return EXIT_OK, {RPT_LAMBDA: str(lam), RPT_DIMS: dims, RPT_EULER: euler}, lines


def cmd_brst(session: Session) -> tuple[int, Any, list[str]]:
    """Build Q, report nilpotency and optionally dump it."""
    lam = _sample(session)
    f = session.family.at(lam)
    Q = build_brst(f, _rule(session).at(f))
    nilpotent = nilpotency_check(Q)
    if session.args.dump_q:
        _write_file(session.args.dump_q, matrix_to_csv(Q.q))
    if session.args.dump_grading:
        _write_file(session.args.dump_grading, matrix_to_csv(Q.grading_matrix()))
    data: dict[str, Any] = {
        RPT_LAMBDA: str(lam),
        RPT_TOTAL_DIM: Q.total_dim,
        RPT_NILPOTENT: nilpotent,
        RPT_ODD: Q.is_odd(),
    }
    if nilpotent:
        data.update(jordan_profile(Q).data())
    lines = [f"{key} = {value}" for key, value in data.items()]
    return (EXIT_OK if nilpotent else EXIT_MATH_FAILURE), data, lines


def cmd_invariant(session: Session) -> tuple[int, Any, list[str]]:
    """Equivariant index at the sample point."""
    lam = _sample(session)
    Q = brst_at(session.family, _rule(session), lam)
    a = _vertex(session, Q.n, Q.dim_v)
    if session.args.method == IndexMethod.SERIES:
        result = index_series_oracle(Q, a, session.config.series_tol)
    else:
        result = equivariant_index(Q, a, session.args.quad_order)
    lines = [
        f"index = {session.fmt_complex(result.value)}",
        f"method = {result.method} order = {result.order} "
        f"error = {session.fmt(result.error)}",
    ]
    return EXIT_OK, {RPT_LAMBDA: str(lam), **result.data()}, lines


def cmd_scan(session: Session) -> tuple[int, Any, list[str]]:
    """Rank and index along the grid."""
    rule = _rule(session)
    grid = _grid(session)
    Q0 = brst_at(session.family, rule, grid[0])
    a = _vertex(session, Q0.n, Q0.dim_v)
    table = deformation_scan(
        session.family, rule, grid, a, session.args.quad_order, session.config.workers
    )
    lines = [f"{session.family.parameter:>12} {'rank':>6} index"]
    lines.extend(
        f"{str(row.lam):>12} {row.rank:>6} {session.fmt_complex(row.index.value)}"
        for row in table.rows
    )
    lines.append(f"max index deviation = {session.fmt(table.max_index_deviation)}")
    lines.append(f"rank constant = {table.rank_constant}")
    code = EXIT_OK if table.rank_constant else EXIT_MATH_FAILURE
    return code, table.data(), lines


def cmd_hypotheses(session: Session) -> tuple[int, Any, list[str]]:
    """Hypotheses 1-5 over the grid."""
    rule = _rule(session)
    grid = _grid(session)
    Q0 = brst_at(session.family, rule, grid[0], validate=False)
    a = _vertex(session, Q0.n, Q0.dim_v)
    report = check_hypotheses(
        session.family, rule, grid, a, session.config.hypothesis_margin
    )
    lines = [
        f"h1 {'pass' if report.h1_ok else 'FAIL'} nilpotent={report.nilpotent} "
        f"odd={report.odd} symmetry-defect={session.fmt(report.symmetry_defect)}",
        f"h2 {'pass' if report.h2_ok else 'FAIL'} "
        f"max|W|={session.fmt(report.max_w_norm)}",
        f"h3 {'pass' if report.h3_ok else 'FAIL'} a={session.fmt(report.a)} "
        f"b={session.fmt(report.b)} b-bound={session.fmt(report.b_bound)}",
        f"h4 {'pass' if report.h4_ok else 'FAIL'} deviations="
        + ",".join(session.fmt(d) for d in report.deviations),
        f"h5 {'pass' if report.h5_ok else 'FAIL'} M={session.fmt(report.M)}",
    ]
    return (EXIT_OK if report.ok else EXIT_MATH_FAILURE), report.data(), lines


def cmd_classify3(session: Session) -> tuple[int, Any, list[str]]:
    """Behr parameters and Bianchi type."""
    lam = _sample(session)
    data, label = classify_tensor(session.family.at(lam))
    lines = [
        "n = " + "; ".join(
            " ".join(format_rational(x) for x in data.n.row(i)) for i in range(3)
        ),
        "a = " + " ".join(format_rational(x) for x in data.a),
        str(label),
    ]
    return EXIT_OK, {**behr_data(data), **label.data()}, lines


def cmd_derivations(session: Session) -> tuple[int, Any, list[str]]:
    """Dimension and basis of Der g."""
    lam = _sample(session)
    space = derivation_space(session.family.at(lam))
    basis = [
        [[format_rational(x) for x in D.row(r)] for r in range(D.rows)]
        for D in space.basis
    ]
    lines = [f"dim Der = {space.dimension}"]
    lines.extend("D = " + "; ".join(" ".join(row) for row in D) for D in basis)
    return EXIT_OK, {RPT_DIM: space.dimension, RPT_BASIS: basis}, lines


COMMANDS = {
    Subcommand.BRST: cmd_brst,
    Subcommand.CLASSIFY3: cmd_classify3,
    Subcommand.COHOMOLOGY: cmd_cohomology,
    Subcommand.DERIVATIONS: cmd_derivations,
    Subcommand.HYPOTHESES: cmd_hypotheses,
    Subcommand.INVARIANT: cmd_invariant,
    Subcommand.SCAN: cmd_scan,
    Subcommand.VERIFY: cmd_verify,
}


def build_parser(config: Config) -> argparse.ArgumentParser:
    """Argument parser with one subcommand per operation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("document", help=".alg or .json document, or builtin:NAME")
    common.add_argument("--grid", help="a:b:k equally spaced samples")
    common.add_argument("--at", help="sample point as NAME=VALUE")
    common.add_argument("--rep", help="trivial:d, adjoint or file:PATH")
    common.add_argument("--vertex", default=str(VertexPreset.GHOST_NUMBER))
    common.add_argument("--quad-order", type=int, default=config.quad_order)
    common.add_argument(
        "--method",
        choices=[str(m) for m in IndexMethod],
        default=str(IndexMethod.QUADRATURE),
    )
    common.add_argument("--workers", type=int, default=config.workers)
    common.add_argument("--json", action="store_true", help="machine readable output")
    common.add_argument("--dump-q", help="write Q as CSV")
    common.add_argument("--dump-grading", help="write the grading as CSV")
    common.add_argument("--out", help="write the report to a file")
    common.add_argument("--debug", action="store_true")

    parser = argparse.ArgumentParser(
        prog="liebrst", description="Lie algebra BRST toolkit"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparsers.add_parser(
            str(command), parents=[common], help=COMMANDS[command].__doc__
        )
    return parser


def _emit(args: argparse.Namespace, data: Any, lines: list[str]) -> None:
    text = json.dumps(data, indent=2) + "\n" if args.json else "\n".join(lines) + "\n"
    if args.out:
        _write_file(args.out, text)
    else:
        print(text, end="")


def run(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    try:
        config = Config()
        args = build_parser(config).parse_args(argv)
    except SystemExit as err:
        return EXIT_INPUT_ERROR if err.code else EXIT_OK
    except LieBrstError as err:
        _LOGGER.error("%s", err)
        return EXIT_INPUT_ERROR

    logging.basicConfig(level=logging.DEBUG if args.debug else logging.WARNING)
    try:
        if args.workers < 1:
            raise InputError(f"--workers must be positive, got {args.workers}")
        config.workers = args.workers
        family, declared_rep, base = load_document(args.document, config)
        if args.rep:
            rep, base = parse_rep(args.rep), Path.cwd()
        else:
            rep = declared_rep or RepSpec(RepKind.ADJOINT)
        if rep.kind == RepKind.TRIVIAL:
            config.check_module(rep.dim)
        session = Session(config, args, family, rep, base)
        code, data, lines = COMMANDS[Subcommand(args.command)](session)
    except _MATH_ERRORS as err:
        _LOGGER.error("%s", err)
        return EXIT_MATH_FAILURE
    except LieBrstError as err:
        _LOGGER.error("%s", err)
        return EXIT_INPUT_ERROR

    try:
        _emit(args, data, lines)
    except LieBrstError as err:
        _LOGGER.error("%s", err)
        return EXIT_INPUT_ERROR
    return code
