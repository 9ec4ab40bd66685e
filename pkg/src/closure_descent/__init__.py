"""Finite closure spaces and the descent theory of their morphisms."""

from .constructions import coequalizer, find_iso, iter_isos, pullback, pullback_closure, subspace
from .core import (
    ClosureSpace,
    ConditionGroup,
    SpaceMap,
    closure,
    generate_moore,
    identity,
    is_closed_set,
    morphism_conditions,
    validate_space,
)
from .descent import (
    DescentData,
    Outcome,
    adjoint_L,
    comparison_K,
    datum_is_effective,
    decide_effective_descent,
    escalate,
    identity_carrier_conditions,
    is_effective_descent,
    validate_descent_data,
)
from .errors import (
    CapExceeded,
    EscalationContradiction,
    InputError,
    NotContinuousError,
    PreconditionError,
    UndecidedAtBound,
)
from .maps import (
    classify,
    descent_conditions,
    is_closed_map,
    is_open_map,
    p_infinity,
    regular_epi_conditions,
    surjection_ladder,
)
from .preord import Preorder, ReflexiveRelation, build_preorder_example, preord_descent, to_cls, up_closure

__version__ = "0.1.0"
