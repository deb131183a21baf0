"""Exact symbolic kernel: jet variables, rational expressions, parsing,
total differentiation, canonical forms, and reduction modulo oriented
rewrite systems."""

from .backend import BACKEND_NAME
from .space import FieldSignature, IndependentVariable, SpaceError, VariableSpace
from .expr import EvaluationDomainError, Expression, ExprError
from .parse import ParseError, expression_to_text, parse_expression
from .rewrite import (
    Ranking,
    RankRow,
    RewriteError,
    RewriteRule,
    RewriteSystem,
    StepBudgetExceeded,
    orderly_ranking,
    solve_for,
)
from .assumptions import assumption_scope, record

__all__ = [
    "BACKEND_NAME",
    "EvaluationDomainError",
    "Expression",
    "ExprError",
    "FieldSignature",
    "IndependentVariable",
    "ParseError",
    "RankRow",
    "Ranking",
    "RewriteError",
    "RewriteRule",
    "RewriteSystem",
    "SpaceError",
    "StepBudgetExceeded",
    "VariableSpace",
    "assumption_scope",
    "expression_to_text",
    "orderly_ranking",
    "parse_expression",
    "record",
    "solve_for",
]
