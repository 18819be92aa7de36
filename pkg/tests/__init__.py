"""Test package for the stacked neural BP decoder."""
