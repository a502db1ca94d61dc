"""Run reports and the files that persist them."""
