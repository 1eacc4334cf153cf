"""
equicat: finite-model computation and verification for global equivariant categories
"""

__version__ = "1.0.0"
__author__ = "equicat developers"
