"""Normal gravity field of a level ellipsoid: gradients, Eotvos matrix and curvatures."""
from .curvature import (
    CurvatureSummary,
    EotvosMatrix,
    eotvos_assemble,
    eotvos_rotated,
    gauss_curvature_general,
    gauss_curvature_graph,
    mean_curvature,
    meusnier_k1,
    plumbline_curvature_global,
    plumbline_curvature_signed,
    summarize,
)
from .ellipsoid import EllipsoidParams, derive_params, grs80, load_config
from .harmonic import CartesianPoint, HarmonicCoord, from_cartesian, to_cartesian
from .potential import potential, potential_jet
from .tensors import FieldJet2, LocalFrame, field_jet, local_frame, phi_N, rotate_hessian

__version__ = "0.1.0"
