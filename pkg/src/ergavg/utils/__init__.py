"""Small helpers shared by the systems, averages and combinatorics packages."""
