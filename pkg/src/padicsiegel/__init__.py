"""Exact-arithmetic verification toolkit for symplectic groups over p-adic
fields: Siegel domains, rational SL(2) series, Casselman operators, and the
Morita residue duality."""

from .errors import (
    ConfigError,
    IrreduciblePole,
    NotInU0,
    PadicError,
    ParameterMismatch,
    PrecisionLoss,
    RamificationInsufficient,
    Singular,
    Unsupported,
)
from .linalg import KMatrix
from .padic import FieldParams, PadicScalar
from .ratfunc import (
    FunctionField,
    KField,
    Polynomial,
    RationalFunction,
    linear_power,
    padic_roots,
    partial_fractions,
    residue_at,
    residue_at_infinity,
)
from .siegel import SigmaCertificate, enumerate_reps, in_sigma_m
from .symplectic import PPair, is_symplectic, standard_form, symplectic_report

__all__ = [
    "ConfigError",
    "FieldParams",
    "FunctionField",
    "IrreduciblePole",
    "KField",
    "KMatrix",
    "NotInU0",
    "PPair",
    "PadicError",
    "PadicScalar",
    "ParameterMismatch",
    "Polynomial",
    "PrecisionLoss",
    "RamificationInsufficient",
    "RationalFunction",
    "SigmaCertificate",
    "Singular",
    "Unsupported",
    "enumerate_reps",
    "in_sigma_m",
    "is_symplectic",
    "linear_power",
    "padic_roots",
    "partial_fractions",
    "residue_at",
    "residue_at_infinity",
    "standard_form",
    "symplectic_report",
]
