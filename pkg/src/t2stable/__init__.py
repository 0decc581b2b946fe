"""Exact stable categories of morphisms, complexes and T2-modules over F_p."""
from .algebra import (
    Algebra,
    QuiverPresentation,
    build_algebra,
    injective_dimension,
    is_iwanaga_gorenstein,
    opposite_algebra,
    triangular2,
)
from .bridge import (
    TStructurePair,
    VerificationReport,
    decompose_tstructure,
    functor_F,
    functor_F_map,
    quotient_hom_dim,
    roundtrip_report,
    stable_cm_of_t2,
    verify_stable_tstructure,
    verify_triangle_of_recollements,
    z1_lambda,
)
from .complexes import BoundedComplex, ChainMap, SplicedComplex, cone, truncation_triangle
from .fixtures import load_fixture
from .frobenius import FrobeniusContext, cosyzygy, ext_dim, is_member, make_context
from .linalg import BACKEND
from .modules import Module, ModuleMap, hom_basis, projective_cover, stable_hom, syzygy
from .morphisms import MorE, MorM, MorMap, mor_stable_hom, to_t2_module, from_t2_module

__version__ = "0.1.0"
