"""
Model Package

Stream types, validation, and derived per-item quantities.
"""

from src.model.report import RunReport
from src.model.schemas import ApproxParams, ProbItem, ProbStream, ProbTuple
from src.model.validation import cond_mean, p_bot, validate_item

__all__ = [
    "ApproxParams",
    "ProbItem",
    "ProbStream",
    "ProbTuple",
    "RunReport",
    "cond_mean",
    "p_bot",
    "validate_item",
]
