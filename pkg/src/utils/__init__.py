"""Utility modules for the equicat engine."""
