"""Conflict-free electric vehicle routing toolkit."""
