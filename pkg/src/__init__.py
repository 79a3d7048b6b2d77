"""subholonomy - horizontal holonomy of contact sub-pseudo-Riemannian manifolds."""

__version__ = "0.1.0"
