"""Exact operator-algebra toolkit for compact quantum semigroups.

Two exactly computable settings are covered: function algebras ``C(S)`` of
finite semigroups (:mod:`qsglab.core`) and the Toeplitz monomial algebra
(:mod:`qsglab.toeplitz`).  All arithmetic is over the Gaussian rationals.
"""
__version__ = "0.1.0"
