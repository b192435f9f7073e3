"""Lie BRST Common."""

from __future__ import annotations

from enum import IntEnum, StrEnum


class Parity(IntEnum):
    """Vertex parity with respect to the ghost-number grading."""

    EVEN = 0
    ODD = 1

    def sign(self) -> int:
        """Sign (-1)^|a| of the graded commutator."""
        return -1 if self == Parity.ODD else 1


class RepKind(StrEnum):
    """Representation kinds."""

    ADJOINT = "adjoint"
    FILE = "file"
    TRIVIAL = "trivial"


class VertexPreset(StrEnum):
    """Vertex operator presets."""

    CREATION = "c"
    FILE = "file"
    GHOST_NUMBER = "ghost-number"
    GRADING = "grading"
    IDENTITY = "identity"


class IndexMethod(StrEnum):
    """Equivariant index evaluation methods."""

    QUADRATURE = "quadrature"
    SERIES = "series"


class Subcommand(StrEnum):
    """CLI subcommands."""

    BRST = "brst"
    CLASSIFY3 = "classify3"
    COHOMOLOGY = "cohomology"
    DERIVATIONS = "derivations"
    HYPOTHESES = "hypotheses"
    INVARIANT = "invariant"
    SCAN = "scan"
    VERIFY = "verify"


class BianchiType(StrEnum):
    """Bianchi-Behr types of three-dimensional real Lie algebras."""

    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI_0 = "VI0"
    VI_H = "VI_h"
    VII_0 = "VII0"
    VII_H = "VII_h"
    VIII = "VIII"
    IX = "IX"
