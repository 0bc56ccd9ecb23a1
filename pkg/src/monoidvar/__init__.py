"""Workbench for identities of aperiodic monoids: words, congruences on the
free monoid, Rees quotient monoids, equational deduction and small lattices."""

__version__ = "0.1.0"
