"""Ordering and intersection checks over snapshots."""
