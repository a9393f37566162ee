"""Data model and file persistence."""
