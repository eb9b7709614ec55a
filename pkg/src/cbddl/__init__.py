"""CBDDL: a task-definition language for constrained manipulation benchmarks.

Parsing, validation, kinematic simulation, safety-cost evaluation,
perturbation sampling and task-diversity analysis.
"""

from __future__ import annotations

from .errors import CbddlError, LexError, ParseError, SceneError
from .model import TaskSpec
from .parser import parse_file, parse_problem
from .printer import pretty_print
from .validate import Diagnostic, validate

__version__ = "0.1.0"

__all__ = [
    "CbddlError",
    "Diagnostic",
    "LexError",
    "ParseError",
    "SceneError",
    "TaskSpec",
    "parse_file",
    "parse_problem",
    "pretty_print",
    "validate",
]
