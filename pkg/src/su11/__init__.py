"""Poisson geometry of SU(1,1) and its dual group, with numerical verification.

Modules
-------
algebra   2x2 complex matrices, the dagger involution and the pairing
spaces    coordinate points, charts, matrix realisations, admissibility
tensors   Poisson bivectors, brackets, Casimirs, pushforwards, the group bracket
maps      symmetrisation, exp/log, dressing, the Gelfand-Tsetlin map, spectra
gwflow    the Ginzburg-Weinstein vector field and its time-one flow
thompson  spectral inequalities for admissible elements
verify    seeded verification suites behind ``su11 verify``
"""

from .errors import ChartError, DomainError, FlowError, ShapeError
from .spaces import (
    ANPoint, Chart, GElement, GTQCoords, GTStarCoords, HypCoords, QPoint, QStarPoint, Space,
    from_matrix, is_admissible, to_matrix,
)
from .tensors import PI0, PI_ADM, PI_AN, PI_Q, Bivector3, Structure, pi_t, tensor_at

__version__ = "0.1.0"

__all__ = [
    "ANPoint", "Bivector3", "Chart", "ChartError", "DomainError", "FlowError", "GElement",
    "GTQCoords", "GTStarCoords", "HypCoords", "PI0", "PI_ADM", "PI_AN", "PI_Q", "QPoint",
    "QStarPoint", "ShapeError", "Space", "Structure", "from_matrix", "is_admissible", "pi_t",
    "tensor_at", "to_matrix",
]
