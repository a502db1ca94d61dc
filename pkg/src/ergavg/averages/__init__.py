"""Averages, limits, bounds and diagnostics computed on a system."""
