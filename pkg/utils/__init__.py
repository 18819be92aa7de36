"""Shared helpers: environment-driven run defaults."""
