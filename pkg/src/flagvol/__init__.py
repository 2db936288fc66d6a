"""Volume and Cheeger-Chern-Simons-type invariants of decorated
ideal triangulations, computed through flag cross-ratios, Ptolemy
coordinates, and the Bloch-Wigner dilogarithm."""

from .backend import backend_name
from .dilog import (
    CCHAT_LATTICE,
    Flattening,
    bloch_wigner,
    bloch_wigner_values,
    extended_rogers,
    flattening_from_logs,
    lattice_residual,
    li2,
    li2_values,
    rogers,
)
from .errors import (
    BranchMismatchError,
    DegenerateError,
    FlagvolError,
    NonFiniteError,
    ParseError,
    ValidationError,
)
from .flags import (
    Flag,
    FlagTetrahedron,
    ProjectiveCovector,
    ProjectivePoint,
    cross_ratio,
    cross_ratio_oracle,
    dual_flag,
    flag_from_decoration,
    tetrahedron_from_decoration,
    triple_ratio,
)
from .invariants import (
    InvariantReport,
    cchat,
    compute_invariants,
    dual_coboundary_probe,
    dual_decoration,
    relation_report,
    vol_bfg,
    vol_gtz,
)
from .lie import cartan_diff, cs_constant, group_involution, sign_identity_check, trace_power
from .prebloch import PreBlochElement, dilog_eval, five_term_element, involute
from .ptolemy import (
    Decoration,
    PtolemyCoordinates,
    coset_equivalent,
    det_identities_check,
    flattenings,
    ptolemy_all,
    ptolemy_coordinate,
)
from .selftest import run_selftest
from .triangulation import (
    DecoratedComplex,
    Gluing,
    Tetrahedron,
    check_decoration_consistency,
    gen_boundary_4simplex,
    gen_random_single,
    parse,
    serialize,
)

__version__ = "0.1.0"
