"""Combinatorics of extended affine Weyl groups: admissible sets, straight
and short elements, connectivity certificates, Dynkin folding, and
exhaustive lemma verification."""

__version__ = "0.1.0"
