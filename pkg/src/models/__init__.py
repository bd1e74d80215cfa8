"""Data models for HarmonicFlow.

This package contains dataclass definitions for configuration, grids, boundary data, solver
state and the JSON reports written by every scenario.
"""
