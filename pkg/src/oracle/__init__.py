"""
Oracle Package

Exact expectations by exhaustive enumeration of the induced streams, used as
ground truth for the estimators.
"""

from src.oracle.enumeration import CompensatedSum, OracleResult, enumerate_stream, outcome_space_size

__all__ = ["CompensatedSum", "OracleResult", "enumerate_stream", "outcome_space_size"]
