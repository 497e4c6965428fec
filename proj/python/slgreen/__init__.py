"""Two-interval Sturm-Liouville problems with eigenparameter-dependent boundary conditions."""

import json as _json

from ._core import (  # noqa: F401
    AtEigenvalueError,
    ConfigError,
    DomainError,
    Error,
    NumericalError,
    ParseError,
    Problem,
    __version__,
    eigenpairs,
    eval_expression,
    fundamental_system,
    gram,
    green_grid,
    minors,
    omega,
    parseval,
    resolve,
    scan,
    unparse_expression,
)
from ._core import builtin_config_json as _builtin_config_json


def builtin_config(name):
    """Built-in configuration D, P or E as a dict."""
    return _json.loads(_builtin_config_json(name))


def problem(config, weighting="jump_consistent"):
    """Problem from a dict, a JSON string, or a built-in name ("D", "P", "E")."""
    if isinstance(config, str) and config in ("D", "P", "E"):
        config = builtin_config(config)
    if isinstance(config, dict):
        config = _json.dumps(config)
    return Problem(config, weighting)
