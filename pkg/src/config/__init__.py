"""Configuration loading and validation for HarmonicFlow.

This package provides utilities for loading, parsing, and validating run settings from the
harmonicflow.ini file.
"""
