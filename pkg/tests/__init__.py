"""Tests for APP."""
