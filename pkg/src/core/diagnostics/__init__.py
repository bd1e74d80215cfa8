"""Energy and gradient diagnostics."""
