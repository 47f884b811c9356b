"""Integration tests for ProbStream."""
