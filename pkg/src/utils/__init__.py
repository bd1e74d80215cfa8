"""Utility modules for HarmonicFlow.

This package provides logging setup and path handling for configuration files and run directories.
"""
