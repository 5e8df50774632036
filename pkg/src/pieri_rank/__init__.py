"""Pieri tensors, their Young flattenings and border rank bounds."""

from .partitions import Partition, schur_dim, weyl_dim
from .pieri import PieriTensor, UKind, build_pieri_tensor
from .schurmodule import SchurModule, build_schur_module

__version__ = "0.1.0"

__all__ = ["Partition", "PieriTensor", "SchurModule", "UKind", "build_pieri_tensor",
           "build_schur_module", "schur_dim", "weyl_dim", "__version__"]
