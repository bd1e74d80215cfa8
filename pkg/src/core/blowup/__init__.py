"""Blow-up detection, front tracking and bubble extraction."""
