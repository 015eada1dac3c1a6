"""Dynamic-logic model checking over fermionic Fock spaces."""

from fockdl.car_algebra import (
    OperatorExpr,
    annihilation,
    creation,
    identity,
    local_lagrangian,
    to_matrix,
    transition_projector,
)
from fockdl.fock import BasisState, StateVector, normalize, ray_equal, state
from fockdl.kernels import BACKEND
from fockdl.logic_syntax import parse_action, parse_formula, parse_operator, pretty_print
from fockdl.semantics import Model, build_model, full_model

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BasisState",
    "Model",
    "OperatorExpr",
    "StateVector",
    "annihilation",
    "build_model",
    "creation",
    "full_model",
    "identity",
    "local_lagrangian",
    "normalize",
    "parse_action",
    "parse_formula",
    "parse_operator",
    "pretty_print",
    "ray_equal",
    "state",
    "to_matrix",
    "transition_projector",
]
