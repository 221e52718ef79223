"""Probability-reversal detection and quantum belief modeling."""

from ._core import (
    AllZero,
    ArityError,
    DegenerateTable,
    DimensionError,
    Error,
    InfeasibleCalibration,
    InvalidEffect,
    LabelMismatch,
    NoRoot,
    ParseError,
    Rational,
    ZeroMarginal,
    belief,
    contingency,
    parse_stratified_csv,
    prospect,
    rational_from_decimal,
    stpetersburg,
)

__all__ = [
    "AllZero",
    "ArityError",
    "DegenerateTable",
    "DimensionError",
    "Error",
    "InfeasibleCalibration",
    "InvalidEffect",
    "LabelMismatch",
    "NoRoot",
    "ParseError",
    "Rational",
    "ZeroMarginal",
    "belief",
    "contingency",
    "parse_stratified_csv",
    "prospect",
    "rational_from_decimal",
    "stpetersburg",
]

__version__ = "0.1.0"
