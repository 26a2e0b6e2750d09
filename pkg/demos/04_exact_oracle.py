"""The exact-arithmetic rank oracle, and what floating point cannot see.

Signals whose modes are exact rationals can be synthesized with Fraction
arithmetic and ranked with fraction-free integer elimination: no
tolerance, no rounding.  The marginal case is the cleanest statement of
the method: for an order-M signal the (M+1) x (M+1) matrix already has
rank exactly M.
"""

from fractions import Fraction

import numpy as np

from hankelorder import (
    exact_rank_rational,
    rational_hankel,
    rational_mode_sum,
    row_echelon,
)

# order-3 signal from three exact geometric modes
modes = [(1, Fraction(1, 2)), (Fraction(3, 2), Fraction(1, 4)), (-2, Fraction(7, 8))]
order = len(modes)

samples = rational_mode_sum(modes, 2 * (order + 1) - 1)
print("exact samples:", [str(s) for s in samples[:4]], "...")

marginal = rational_hankel(samples, order + 1, order + 1)
print(f"(M+1) x (M+1) exact rank: {exact_rank_rational(marginal)} (M = {order})")

# row echelon with zero tolerance agrees on exact input
reduced, pivots = row_echelon(np.array(marginal, dtype=object), 0.0)
print(f"row-echelon pivot count:  {pivots}")

# the same elimination on floats needs a tolerance: rounding residues
# below it are not counted as pivots
float_matrix = np.array(marginal, dtype=float)
_, float_pivots = row_echelon(float_matrix, 1e-10)
print(f"float pivot count at tol=1e-10: {float_pivots}")
