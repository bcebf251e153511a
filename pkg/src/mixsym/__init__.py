"""Exact-arithmetic mixed modular symbols for Gamma0(N) and Gamma1(N).

The package builds the mixed modular-symbol lattice (Manin generators per
coset plus one generator per cusp class), its projection to classical
modular symbols and its boundary map, the Hecke / Atkin-Lehner / diamond /
conjugation operators, the antisymmetric duality pairing on the dual
lattice, and a floating-point verification layer for the Eisenstein period
determinant identities.
"""

__version__ = "1.0.0"

from .sl2 import GroupSpec, InvalidSpecError
from .mms import (InvalidInputError, PresentationError, SymbolSpace,
                  build_space, reduce_pair, reduce_pair_rational)

__all__ = [
    "GroupSpec", "InvalidSpecError", "InvalidInputError", "PresentationError",
    "SymbolSpace", "build_space", "reduce_pair", "reduce_pair_rational",
    "__version__",
]
