"""Lie algebra deformations, BRST operators and heat-kernel invariants."""

from liebrst import main

main()
