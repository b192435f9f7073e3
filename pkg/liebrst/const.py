"""Lie BRST constants."""

from typing import Final

ENV_MAX_DIM: Final[str] = "LIEBRST_MAX_DIM"
ENV_MAX_DIM_V: Final[str] = "LIEBRST_MAX_DIM_V"
ENV_WORKERS: Final[str] = "LIEBRST_WORKERS"

DEFAULT_FLOAT_DIGITS: Final[int] = 12
DEFAULT_HYPOTHESIS_MARGIN: Final[float] = 1e-6
DEFAULT_MAX_DIM: Final[int] = 8
DEFAULT_MAX_DIM_V: Final[int] = 64
DEFAULT_QUAD_ORDER: Final[int] = 64
DEFAULT_SERIES_TOL: Final[float] = 1e-12
DEFAULT_WORKERS: Final[int] = 8

DIFF_QUOTIENT_STEPS: Final[int] = 10
DIFF_QUOTIENT_RATIO_SLACK: Final[float] = 0.2
IMAG_TOL: Final[float] = 1e-9
MAX_COEFF_BITS: Final[int] = 1 << 16
MAX_DEGREE: Final[int] = 256
MAX_NESTING: Final[int] = 100
MAX_NUMBER_LENGTH: Final[int] = 1000
MAX_POWER: Final[int] = 64
MIN_QUAD_ORDER: Final[int] = 2
PARITY_TOL: Final[float] = 1e-10
SERIES_MAX_TERMS: Final[int] = 200
SYMMETRY_TOL: Final[float] = 1e-10

EXIT_OK: Final[int] = 0
EXIT_MATH_FAILURE: Final[int] = 1
EXIT_INPUT_ERROR: Final[int] = 2

DEFAULT_ALGEBRA_NAME: Final[str] = "algebra"
DEFAULT_PARAMETER: Final[str] = "t"

RPT_A: Final[str] = "a"
RPT_A_FLAG: Final[str] = "a-zero"
RPT_B: Final[str] = "b"
RPT_B_BOUND: Final[str] = "b-bound"
RPT_B_EMIN: Final[str] = "b-emin"
RPT_BASIS: Final[str] = "basis"
RPT_BLOCKS_1: Final[str] = "size-1-blocks"
RPT_BLOCKS_2: Final[str] = "size-2-blocks"
RPT_BRACKETS: Final[str] = "brackets"
RPT_CONSTANTS: Final[str] = "constants"
RPT_CONVERGED: Final[str] = "converged"
RPT_DEVIATIONS: Final[str] = "deviations"
RPT_DIM: Final[str] = "dim"
RPT_DIMS: Final[str] = "dims"
RPT_ERROR: Final[str] = "error"
RPT_EULER: Final[str] = "euler"
RPT_H: Final[str] = "h"
RPT_H1: Final[str] = "h1"
RPT_H2: Final[str] = "h2"
RPT_H3: Final[str] = "h3"
RPT_H4: Final[str] = "h4"
RPT_H5: Final[str] = "h5"
RPT_HI: Final[str] = "hi"
RPT_INDEX: Final[str] = "index"
RPT_LABEL: Final[str] = "label"
RPT_LAMBDA: Final[str] = "lambda"
RPT_LO: Final[str] = "lo"
RPT_M: Final[str] = "M"
RPT_MAX_INDEX_DEVIATION: Final[str] = "max-index-deviation"
RPT_MAX_W_NORM: Final[str] = "max-w-norm"
RPT_METHOD: Final[str] = "method"
RPT_N: Final[str] = "n"
RPT_NAME: Final[str] = "name"
RPT_NILPOTENT: Final[str] = "nilpotent"
RPT_ODD: Final[str] = "odd"
RPT_OK: Final[str] = "ok"
RPT_ORDER: Final[str] = "order"
RPT_PARAMETER: Final[str] = "parameter"
RPT_RANK: Final[str] = "rank"
RPT_RANK_CONSTANT: Final[str] = "rank-constant"
RPT_REP: Final[str] = "rep"
RPT_ROWS: Final[str] = "rows"
RPT_SEPARATIONS: Final[str] = "separations"
RPT_SIGNATURE: Final[str] = "signature"
RPT_SYMMETRY_DEFECT: Final[str] = "symmetry-defect"
RPT_TOTAL_DIM: Final[str] = "total-dim"
RPT_VALUE: Final[str] = "value"
RPT_VIOLATIONS: Final[str] = "violations"
