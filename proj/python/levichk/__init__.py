"""Levi-condition checks and spectral experiments for weakly hyperbolic equations."""

import json
import os

from . import _core
from ._core import DiffError, EvalError, ParseError, SpecError, d_dt, evaluate, normalize

__version__ = _core.__version__

__all__ = [
    "DiffError",
    "EvalError",
    "ParseError",
    "SpecError",
    "canonical_problem",
    "check",
    "d_dt",
    "evaluate",
    "input_hash",
    "normalize",
    "schur",
    "solve",
    "sweep",
    "verify",
]


def _text(problem):
    """Accept a dict, a JSON string or a path to a JSON file."""
    if isinstance(problem, dict):
        return json.dumps(problem)
    if isinstance(problem, os.PathLike) or (isinstance(problem, str) and not problem.lstrip().startswith("{")):
        with open(problem, encoding="utf-8") as fh:
            return fh.read()
    return problem


def canonical_problem(problem):
    return json.loads(_core.canonical_problem(_text(problem)))


def input_hash(problem):
    return _core.input_hash(_text(problem))


def check(problem):
    return json.loads(_core.check(_text(problem)))


def schur(problem):
    return _core.schur(_text(problem))


def solve(problem, fixed_dt=0.0):
    return _core.solve(_text(problem), fixed_dt)


def sweep(problem):
    return _core.sweep(_text(problem))


def verify(problem, seed=20240601):
    return json.loads(_core.verify(_text(problem), seed))
