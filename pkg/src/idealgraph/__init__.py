"""Ideal graphs of finite commutative rings.

Gamma_0(R) joins two distinct nontrivial ideals I, J when IJ = I & J;
Gamma_1(R) adds 0, R and loops at idempotent ideals.
"""
from .errors import DomainError, IdealGraphError, ResourceLimitError
from .graph import LoopGraph, VertexLabel, build_gamma0, build_gamma1, tensor_product
from .ring_core import ChainRingProduct, IdealExp, PrimePower, enumerate_ideals, factor

__all__ = [
    "ChainRingProduct",
    "DomainError",
    "IdealExp",
    "IdealGraphError",
    "LoopGraph",
    "PrimePower",
    "ResourceLimitError",
    "VertexLabel",
    "build_gamma0",
    "build_gamma1",
    "enumerate_ideals",
    "factor",
    "tensor_product",
]
