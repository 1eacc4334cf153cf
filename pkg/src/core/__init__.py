"""Core modules for the equicat engine: errors, definitions and reports."""
