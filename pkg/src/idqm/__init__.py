"""Quantum dilogarithm, |q| = 1 Askey-Wilson polynomials and four exactly
solvable discrete quantum mechanical systems with pure imaginary shifts,
together with numerical verification of their properties."""
from .errors import DomainError, IdqmError
from .qdilog import QDilogContext, eval_qdilog, log_qdilog
from .systems import SystemParams, build_system

__version__ = "0.1.0"

__all__ = ["DomainError", "IdqmError", "QDilogContext", "SystemParams", "build_system",
           "eval_qdilog", "log_qdilog"]
