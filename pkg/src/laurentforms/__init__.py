"""Exact computer algebra for Hermitian forms over Z[t, t^-1].

Provides the integer Laurent polynomial ring with its involution,
Hermitian forms with congruence and determinant machinery, recognition
and certified reduction to the standard surface form, the Wall
self-intersection calculus, fraction-field homology of chain complexes,
and a bounded congruence-move search.
"""

from .laurent import (
    LaurentPoly,
    UnitWitness,
    ZERO,
    ONE,
    T,
    T_INV,
    ONE_MINUS_T,
    ONE_MINUS_T_INV,
    assoc_eq,
    iota,
    t_power,
)
from .forms import (
    BaseChange,
    HermitianForm,
    InternalCheckError,
    ReductionCertificate,
    ReductionVerdict,
    certify_reduction,
    congruence,
    det_congruence_check,
    determinant,
    h2_sum,
    prenormalize_units,
    recognize_block_form,
    reduce_to_standard,
    solve_hermitian_zero_aug,
)
from .wallcalc import (
    IntersectionEvent,
    SurfaceModel,
    WallClass,
    hermitize,
    lambda_self,
    mu,
    pairing_shape_check,
    project,
    relabel_invariance,
)
from .homology import ChainComplex, RationalFunction, betti_qt, euler_check, rank_qt, torsion_order
from .search import (
    DEFAULT_BOUNDS,
    MoveSpec,
    ProbeReport,
    SearchBounds,
    SearchOutcome,
    Swap,
    Transvection,
    UnitScale,
    bounded_isometry_search,
    conjecture_probe,
    det_obstruction,
    stabilize,
)

__version__ = "0.1.0"
