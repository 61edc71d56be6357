"""Matroids with exact arithmetic: rank, span, circuits and minors.

Run with ``python demos/01_matroids.py``.
"""

from fractions import Fraction

from branchpack import DirectSum, LinearQ, Minor, Partition, Uniform

# Three vectors in the plane: any two are a base, all three are a circuit.
plane = LinearQ(["p", "q", "r"], [[1, 1], [1, -1], [1, 0]])
print("rank of the plane:", plane.rank())
print("circuits:", [sorted(c) for c in plane.circuits()])
print("C(r, {p, q}) =", sorted(plane.fundamental_circuit("r", ["p", "q"])))

# Columns are stored as fractions, so there is no rounding anywhere.
thirds = LinearQ(["a", "b"], [[Fraction(1, 3), Fraction(1, 7)], [Fraction(2, 3), Fraction(2, 7)]])
print("parallel rational columns, rank:", thirds.rank())

# Contraction: in U(2,3) / a a single further element is already a base.
m = Minor(Uniform("abc", 2), "abc", "a")
print("U(2,3)/a independent sets:", [sorted(x) for x in (["b"], ["c"], ["b", "c"]) if m.is_independent(x)])

# Direct sums split into components, which the packing solver uses.
ds = DirectSum([Partition([("xy", 1)]), Uniform("zw", 2)])
print("components:", sorted(sorted(c) for c in ds.components()))
print("span of {x}:", sorted(ds.span(["x"])))
