"""Explicit minimum-storage regenerating codes with two and three parities."""

from .aset import ASPair, ASSet
from .gf import FieldSpec, Felt, cube_roots_of_unity, make_field
from .linalg import Mat, Subspace
from .msr import CodeSpec, NodeArray, RepairTranscript, encode, reconstruct, repair
from .select import construct_code
from .verify import Certificate, full

__all__ = [
    "ASPair", "ASSet", "Certificate", "CodeSpec", "FieldSpec", "Felt", "Mat", "NodeArray",
    "RepairTranscript", "Subspace", "construct_code", "cube_roots_of_unity", "encode", "full",
    "make_field", "reconstruct", "repair",
]
