"""Bundled reference instances."""
