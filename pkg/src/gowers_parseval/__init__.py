"""Higher-order Fourier identities on finite abelian groups, checked numerically.

Degree-l cube spaces P^{d,l}(G), 2^d-ary inner products and U^{d,l} norms,
their Parseval-type duality under the Fourier transform, lattice-defined
subgroups with signed Poisson summation, and corner convolutions.
"""

__version__ = "0.1.0"

from .convolutions import PuncturedCube, convolution_fourier_check, corner_convolution
from .cube_spaces import CubeSpaceSpec, corner_complete, exact_degree, is_member
from .cubes import CubePoint, boundary
from .fourier import cube_dft, dft, idft, parseval_check
from .functions import FunctionCube, GroupFunction
from .gowers import (
    character_cube_product,
    derivative,
    inner_product,
    inner_product_dual,
    inner_product_primal,
    inner_product_recursive,
    uniformity_norm,
)
from .groups import Character, GroupElement, GroupSpec
from .lattice import IntLattice, lattice_cube_space, poisson_check, signed_dual_subgroup, signed_orthogonal_lattice, smith_normal_form
from .reports import IdentityReport

__all__ = [
    "Character",
    "CubePoint",
    "CubeSpaceSpec",
    "FunctionCube",
    "GroupElement",
    "GroupFunction",
    "GroupSpec",
    "IdentityReport",
    "IntLattice",
    "PuncturedCube",
    "boundary",
    "character_cube_product",
    "convolution_fourier_check",
    "corner_complete",
    "corner_convolution",
    "cube_dft",
    "derivative",
    "dft",
    "exact_degree",
    "idft",
    "inner_product",
    "inner_product_dual",
    "inner_product_primal",
    "inner_product_recursive",
    "is_member",
    "lattice_cube_space",
    "parseval_check",
    "poisson_check",
    "signed_dual_subgroup",
    "signed_orthogonal_lattice",
    "smith_normal_form",
    "uniformity_norm",
]
