"""Truncated Fock-space checks for deformed oscillator algebras."""

import json as _json

from qdeform._core import (  # noqa: F401
    AlgebraPresentation,
    DeformationParams,
    FockBasis,
    InvalidArgumentError,
    ModeRep,
    QdlParseError,
    build_mode,
    check_json,
    default_f,
    klein_operator,
    ladder_operators,
    make_fock_space,
    make_params,
    masked_residual,
    number_operator,
    parse_presentation,
    preset_names,
    preset_source,
    projector,
    q_bracket,
    render_presentation,
    structure_function_operator,
    sweep_csv,
)

__all__ = [
    "AlgebraPresentation",
    "DeformationParams",
    "FockBasis",
    "InvalidArgumentError",
    "ModeRep",
    "QdlParseError",
    "build_mode",
    "check",
    "check_json",
    "default_f",
    "klein_operator",
    "ladder_operators",
    "make_fock_space",
    "make_params",
    "masked_residual",
    "number_operator",
    "parse_presentation",
    "preset_names",
    "preset_source",
    "projector",
    "q_bracket",
    "render_presentation",
    "structure_function_operator",
    "sweep_csv",
]


def check(**kwargs):
    """Run a relation check and return the report as a dict.

    Accepts the keyword arguments of :func:`check_json` (preset, dim,
    lambda, nu, sign, mu_omega, alphas, f, tol, mask, measure_only,
    xp_source).
    """
    return _json.loads(check_json(**kwargs))
