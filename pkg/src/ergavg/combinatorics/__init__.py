"""Density and recurrence scanners on finite grids."""
