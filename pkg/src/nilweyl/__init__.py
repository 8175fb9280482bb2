"""Exact computations with nilCoxeter algebras, their bimodules, and the functors between their module categories."""

from .algebra import AlgebraElement, gram_matrix, nil
from .bimodule import Bimodule, BimoduleMap, is_isomorphic, tensor_over
from .checks import check_names, run_check
from .report import CheckReport

__version__ = "0.1.0"

__all__ = ["AlgebraElement", "Bimodule", "BimoduleMap", "CheckReport", "check_names", "gram_matrix",
           "is_isomorphic", "nil", "run_check", "tensor_over"]
