"""Casimir pressure and sphere-plate gradient engine for graphene-coated substrates."""

__version__ = "1.0.0"
