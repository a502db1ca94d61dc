"""Session configuration and example system files."""
