"""Core numerics of the radial flow: grid, data, solver, diagnostics, checks and scenarios."""
