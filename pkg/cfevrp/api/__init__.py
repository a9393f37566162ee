"""Toolkit HTTP API package."""
