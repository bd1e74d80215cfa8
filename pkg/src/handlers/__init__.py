"""Artifact output for HarmonicFlow runs.

This package writes the CSV, JSON and text files of a run directory with deterministic
float formatting.
"""
