"""Separating pole count from pole-plus-zero count with input augmentation.

For the forced system y'(t) + 0.9 y(t) = exp(-t/8), the output Hankel
matrix has rank P + Z = 2 (one pole, one zero).  Padding the matrix with
translated input samples leaves the rank at 2 because the input mode
already appears in the output: the differential equation itself has
order P = 1.
"""

from hankelorder import (
    BOTTOM,
    RIGHT,
    build_augmented,
    build_hankel,
    default_policy,
    gen_nonhomogeneous,
    numerical_rank,
    singular_values,
)


def rank_of(entries):
    return numerical_rank(singular_values(entries), default_policy(entries.shape)).rank


y, u = gen_nonhomogeneous(40)
print(f"output: {y.provenance}")
print(f"input:  {u.provenance}\n")

square = build_hankel(y, 10)
print(f"10x10 output matrix rank:        {rank_of(square.entries)}")

bottom = build_augmented(y, u, 10, BOTTOM)
right = build_augmented(y, u, 10, RIGHT)
print(f"11x10 (input row below) rank:    {rank_of(bottom.entries)}")
print(f"10x11 (input column right) rank: {rank_of(right.entries)}")
print("\nthe rank does not grow: input and output share the exp(-t/8) mode")
