"""
ProbStream Test Suite

Subpackages:
- unit: Unit tests for individual components
- integration: Oracle equivalence, approximation guarantees and CLI runs
"""
