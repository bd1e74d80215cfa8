"""Implicit solver for the equivariant radial flow.

Modules:
- operator: discrete tau(h) and its Newton Jacobian
- flow_solver: run creation, backward-Euler stepping and the solve loop
- snapshots: observers recording accepted profiles
- reconstruction: sphere-valued map and gradient density from a profile
"""
