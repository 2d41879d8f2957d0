"""Continued fractions as products of Moebius maps and chains of horocycles.

Submodules:

``cf``          exact continued-fraction arithmetic
``cycle2d``     planar cycles, their matrices and Moebius action
``chain2d``     tangent, orthogonal and mixed horocycle chains
``multivector`` the Clifford algebra kernel
``clifford``    Moebius maps of R^{n+1} and multidimensional chains
``render``      SVG output
``cli``         the ``horochain`` command
"""

from .cf import (
    CfTerm,
    ContinuedFraction,
    ConvergentState,
    Mat2Q,
    cf_matrix,
    coefficient_source,
    convergent_step,
    convergents,
    evaluate_oracle,
    expand_real,
)
from .chain2d import (
    MIXED,
    ORTHOGONAL,
    TANGENT,
    Arrangement,
    ArrangementKind,
    ChainLink,
    build_chain,
    verify_chain,
)
from .clifford import (
    CycleND,
    VersorMatrix,
    ahlfors_validate,
    build_nd_chain,
    convergence_check,
    cycle_image_nd,
    md_cf_matrix,
    partial_quotient_nd,
)
from .cycle2d import Cycle2, MoebiusMat2, cycle_image, inner_product, is_orthogonal, is_tangent
from .errors import *  # noqa: F401,F403
from .multivector import Multivector, gp
from .numeric import QSqrt2

__version__ = "0.1.0"
