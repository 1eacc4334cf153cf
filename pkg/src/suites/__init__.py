"""Verification suites for the equicat engine."""
