"""Exact computations for skew-symmetric prolongations, curvature spaces of
symplectic representations and holonomy of odd Riemannian supermetrics."""
from __future__ import annotations

__version__ = "0.1.0"
