"""qfrob: exact characteristic-p computer algebra for slash cohomology,
symmetric polynomials with the x ↦ x² differential, nilHecke endomorphism
algebras, and the quantum Frobenius map for sl2.

Subpackages:
    cyclotomic  Laurent polynomials, quantum binomials, the ring O_p
    partitions  partition and Littlewood-Richardson combinatorics
    pcomplex    p-complexes, slash cohomology, string decompositions
    symfunc     Schur calculus over F_p and the content differential
    pdgmod      Demazure operators, block modules, END matrix algebras
    qgroup      the idempotented quantum group and its Frobenius map
    cli         the batch verification harness (`qfrob` entry point)
"""

from . import cyclotomic, partitions, pcomplex, pdgmod, qgroup, symfunc

__all__ = ["cyclotomic", "partitions", "pcomplex", "pdgmod", "qgroup", "symfunc"]
__version__ = "0.1.0"
