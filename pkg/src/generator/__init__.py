"""
Generator Package

Seeded synthetic probabilistic streams for tests and benchmarks.
"""

from src.generator.prng import XorShift64Star, splitmix64
from src.generator.stream_generator import GenSpec, generate, generate_items

__all__ = ["GenSpec", "XorShift64Star", "generate", "generate_items", "splitmix64"]
