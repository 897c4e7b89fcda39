"""Weakly modular forms, de Rham Frobenius and Atkin-Swinnerton-Dyer congruences,
cross-checked against character sums over finite fields."""

__version__ = "0.1.0"
