"""jetcheck: exact verification of reciprocal and Miura links between
coupled Camassa-Holm-type hierarchies in 2+1 dimensions, plus a
finite-difference cross-check harness for the 1+1 reductions."""

__version__ = "0.1.0"
