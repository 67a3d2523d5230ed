"""Exact computer algebra for universal formal group laws and the pullback
computations behind equivariant complex cobordism coefficient rings."""

__version__ = "0.1.0"
