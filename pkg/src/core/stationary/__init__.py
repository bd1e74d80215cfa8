"""Closed-form stationary families and barriers."""
