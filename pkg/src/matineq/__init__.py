"""Numerical verification of subadditivity and determinant inequalities for
concave matrix functions, positive definite pairs and accretive-dissipative
matrices."""

__version__ = "0.1.0"
