"""Exact computations with support τ⁻-tilting modules and semibricks of
finite dimensional bound quiver algebras over prime fields."""

from importlib import resources

from .algebra import Algebra, Arrow, Quiver, injective_rep, parse_algebra, path_basis, projective_rep, restrict_algebra
from .artranslate import is_tau_minus_rigid, min_proj_presentation, tau, tau_minus
from .config import Budget, current_budget, use_budget
from .correspondence import (
    CorrespondenceReport,
    VerifyConfig,
    alpha3,
    alpha3_inverse,
    emit_report,
    report_from_json,
    verify_correspondence,
)
from .errors import (
    AlgebraError,
    AssertionFailure,
    BudgetExceeded,
    DimensionMismatch,
    FieldModeError,
    IncompleteInventoryError,
    InfiniteDimensionalError,
    PreconditionError,
    SpecSyntaxError,
    TaucospondError,
)
from .inventory import IndecInventory, build_inventory, dynkin_type, enumerate_bruteforce, enumerate_hereditary
from .linalg import F3, Field
from .modules import (
    cogen_test,
    cokernel_rep,
    decompose,
    end_elements,
    ext1_basis,
    hom_basis,
    is_brick,
    is_indecomposable,
    is_isomorphic,
    kernel_rep,
    middle_term,
    radical_hom,
    submodules,
)
from .representation import Morphism, Representation, direct_sum, dual
from .semibrick import (
    Semibrick,
    beta,
    enumerate_semibricks,
    filt_torsionfree_closure,
    is_right_finite,
    is_tf_almost_torsion,
    is_wide,
    is_widely_generated,
    phi_map,
    s_of,
    semibrick_of,
    simples_of_wide,
)
from .tautilt import (
    SupportTauTiltingModule,
    TorsionFreeClassFin,
    cogen_class,
    enumerate_support_tau_tilting,
    functorially_finite_witness,
    is_torsion_free_class,
    torsion_class_of,
)

__all__ = [
    "Algebra",
    "Arrow",
    "Quiver",
    "injective_rep",
    "parse_algebra",
    "path_basis",
    "projective_rep",
    "restrict_algebra",
    "is_tau_minus_rigid",
    "min_proj_presentation",
    "tau",
    "tau_minus",
    "Budget",
    "current_budget",
    "use_budget",
    "CorrespondenceReport",
    "VerifyConfig",
    "alpha3",
    "alpha3_inverse",
    "emit_report",
    "report_from_json",
    "verify_correspondence",
    "AlgebraError",
    "AssertionFailure",
    "BudgetExceeded",
    "DimensionMismatch",
    "FieldModeError",
    "IncompleteInventoryError",
    "InfiniteDimensionalError",
    "PreconditionError",
    "SpecSyntaxError",
    "TaucospondError",
    "IndecInventory",
    "build_inventory",
    "dynkin_type",
    "enumerate_bruteforce",
    "enumerate_hereditary",
    "F3",
    "Field",
    "cogen_test",
    "cokernel_rep",
    "decompose",
    "end_elements",
    "ext1_basis",
    "hom_basis",
    "is_brick",
    "is_indecomposable",
    "is_isomorphic",
    "kernel_rep",
    "middle_term",
    "radical_hom",
    "submodules",
    "Morphism",
    "Representation",
    "direct_sum",
    "dual",
    "Semibrick",
    "beta",
    "enumerate_semibricks",
    "filt_torsionfree_closure",
    "is_right_finite",
    "is_tf_almost_torsion",
    "is_wide",
    "is_widely_generated",
    "phi_map",
    "s_of",
    "semibrick_of",
    "simples_of_wide",
    "SupportTauTiltingModule",
    "TorsionFreeClassFin",
    "cogen_class",
    "enumerate_support_tau_tilting",
    "functorially_finite_witness",
    "is_torsion_free_class",
    "torsion_class_of",
    "FIXTURES",
    "fixture_text",
    "load_fixture",
    "__version__",
]

__version__ = "0.1.0"

FIXTURES = ("a2", "n3", "a3", "k")


def fixture_text(name: str) -> str:
    """Source of a bundled algebra document (``a2``, ``n3``, ``a3``, ``k``)."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; bundled: {', '.join(FIXTURES)}")
    return resources.files(__package__).joinpath("fixtures", f"{name}.alg").read_text()


def load_fixture(name: str, field: Field | None = None) -> Algebra:
    return parse_algebra(fixture_text(name), field=field)
