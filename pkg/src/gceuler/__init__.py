"""Euler characteristics of commutative and associative graph complexes.

Exact generating-function tables, independent graph-enumeration oracles,
small-rank homology, closed-form asymptotics, and quadrature validation of
the underlying integral representations.
"""

from .euler_series import (
    ComplexKind,
    EulerTable,
    chi_disconnected,
    chi_table,
    euler_product_roundtrip,
    xi_table,
)
from .exactnum import bernoulli, moebius, totient
from .powerseries import TruncatedLaurentSeries

__all__ = [
    "ComplexKind",
    "EulerTable",
    "TruncatedLaurentSeries",
    "bernoulli",
    "chi_disconnected",
    "chi_table",
    "euler_product_roundtrip",
    "moebius",
    "totient",
    "xi_table",
]

__version__ = "0.1.0"
