"""Triangle packing and hitting on simple binary matroids over GF(2).

The ground objects are point sets inside PG(n-1,2), encoded as nonzero int
bitmasks.  The package computes the exact packing number nu and hitting
number tau, certifies tau <= 2*nu on cographic matroids constructively,
builds spreads and Bose-Burton geometries, and runs verification campaigns
for the geometric version of Tuza's conjecture.
"""

__version__ = "0.1.0"
