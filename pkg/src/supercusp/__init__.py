"""Exact bookkeeping for supercuspidal unipotent representations.

The package enumerates, for an unramified reductive p-adic group given by
combinatorial data, the maximal parahoric supports of cuspidal unipotent
representations, the matching unramified discrete parameters, and the packet
invariants tying the two sides together.  All arithmetic is exact: rational
functions in q^(1/2) with integer coefficients, cyclotomic scalars, and
finite abelian groups with endomorphisms.
"""

from supercusp.exact import RatFunc, Cyclo, FinAbGrpAut

__version__ = "0.1.0"

__all__ = ["RatFunc", "Cyclo", "FinAbGrpAut", "__version__"]
