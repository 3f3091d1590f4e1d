"""Exact solvers, kernels and generators for ternary permutation CSPs
parameterized above the random-ordering average."""

from fractions import Fraction

from ._tpcsp import (  # noqa: F401
    LoInstance,
    MixedInstance,
    PiSet,
    TpcspError,
    bikernel,
    canonical_pi_class,
    check_lower_bound,
    cross_moment_xy,
    decide_above_average,
    decompose_lo,
    fourth_moment_check,
    gen_random,
    generate_hard_instance,
    kernelize,
    max_dev_bruteforce,
    max_dev_dp,
    pi_class_name,
    pi_class_representative,
    reduce_mixed,
    second_moment,
    second_moment_lo,
    selfcheck,
    to_linear_ordering,
    x_value,
    y_value,
    z_value,
)

__all__ = [name for name in dir() if not name.startswith("_")]


def as_fraction(value):
    """Turn an exact "num/den" string from the library into a Fraction."""
    return Fraction(value)
