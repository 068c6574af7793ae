"""hopfbench: exact computations in the homology of finite groups.

Multiplication-table groups, integer linear algebra, centralisation and
trivialisation of extensions, bar-resolution homology, five-term exact
sequences, central extensions from 2-cocycles, stem and universal central
extensions, and homology via fixed points of presentation endomorphisms.
"""

from .errors import (
    BadSection,
    DomainMismatch,
    HopfbenchError,
    InvalidCocycle,
    InvariantViolated,
    NonComposable,
    NotAbelian,
    NotAGroup,
    NotAPermutation,
    NotCommutative,
    NotFound,
    NotNormal,
    NotPerfect,
    NotSurjective,
    OrderLimitExceeded,
    ParseError,
    ShapeMismatch,
    Unsupported,
)
from .intlinalg import (
    AbDiagram,
    FgAbelianGroup,
    IntMatrix,
    PresentedAbGroup,
    chain_homology,
    cokernel,
    kernel_lattice,
    limit_of_diagram,
    smith_normal_form,
)

__all__ = [
    "AbDiagram",
    "BadSection",
    "DomainMismatch",
    "FgAbelianGroup",
    "HopfbenchError",
    "IntMatrix",
    "InvalidCocycle",
    "InvariantViolated",
    "NonComposable",
    "NotAbelian",
    "NotAGroup",
    "NotAPermutation",
    "NotCommutative",
    "NotFound",
    "NotNormal",
    "NotPerfect",
    "NotSurjective",
    "OrderLimitExceeded",
    "ParseError",
    "PresentedAbGroup",
    "ShapeMismatch",
    "Unsupported",
    "chain_homology",
    "cokernel",
    "kernel_lattice",
    "limit_of_diagram",
    "smith_normal_form",
]

__version__ = "0.1.0"
