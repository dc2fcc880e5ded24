"""Additive characters of F_q, Gauss sums, and quadratic exponential sums.

The canonical character is chi(t) = exp(2*pi*i*t/q).  Results that matter
downstream are magnitude-level and hold for any nontrivial character
chi_c(t) = exp(2*pi*i*c*t/q), c != 0, which AdditiveCharacter also models.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import FieldElement, PrimeField, is_odd_prime


@lru_cache(maxsize=None)
def character_table(q: int, c: int = 1) -> np.ndarray:
    """Unit-circle values chi_c(t) for t = 0..q-1, as a read-only array."""
    if not is_odd_prime(q):
        raise ValueError(f"modulus must be an odd prime, got {q}")
    if c % q == 0:
        raise ValueError("character multiplier must be nonzero mod q")
    t = np.arange(q)
    table = np.exp(2j * np.pi * (c % q) * t / q)
    table.setflags(write=False)
    return table


class AdditiveCharacter:
    """The character t -> exp(2*pi*i*c*t/q) on F_q; c = 1 is the canonical choice."""

    __slots__ = ("q", "c")

    def __init__(self, q: int, c: int = 1):
        if not is_odd_prime(q):
            raise ValueError(f"modulus must be an odd prime, got {q}")
        if c % q == 0:
            raise ValueError("character multiplier must be nonzero mod q")
        self.q = q
        self.c = c % q

    def __call__(self, t: "int | FieldElement") -> complex:
        v = int(t) % self.q
        return cmath.exp(2j * math.pi * self.c * v / self.q)

    def table(self) -> np.ndarray:
        return character_table(self.q, self.c)

    def __repr__(self) -> str:
        return f"AdditiveCharacter(q={self.q}, c={self.c})"


def chi(t: FieldElement) -> complex:
    """Canonical additive character exp(2*pi*i*t/q) evaluated at t."""
    return AdditiveCharacter(t.field.q)(t)


@dataclass(frozen=True)
class GaussSum:
    """sum_t eta(t) chi(t); its magnitude is exactly sqrt(q)."""

    value: complex
    q: int

    @property
    def magnitude(self) -> float:
        return abs(self.value)

    def __complex__(self) -> complex:
        return self.value


def gauss_sum(q: "int | PrimeField", c: int = 1) -> GaussSum:
    """Gauss sum by direct summation over F_q (character multiplier c)."""
    field = q if isinstance(q, PrimeField) else PrimeField(q)
    ch = AdditiveCharacter(field.q, c)
    total = sum(field.eta_int(t) * ch(t) for t in range(field.q))
    return GaussSum(total, field.q)


def gauss_sum_squared_exact(q: "int | PrimeField") -> int:
    """G^2 = eta(-1) * q, as an exact integer.

    Even powers of the Gauss sum are therefore exact integers, which keeps
    the cone closed form free of floating-point error.
    """
    field = q if isinstance(q, PrimeField) else PrimeField(q)
    return field.eta_int(field.q - 1) * field.q


def quadratic_exponential_sum(a: FieldElement, b: FieldElement) -> complex:
    """sum_t chi(a t^2 + b t) by direct summation; requires a != 0.

    The degenerate a = 0 sum equals q*[b = 0] and is the caller's business.
    """
    if a.field.q != b.field.q:
        raise ValueError("modulus mismatch between coefficients")
    if a.value == 0:
        raise ValueError("quadratic coefficient must be nonzero")
    q = a.field.q
    table = character_table(q)
    t = np.arange(q)
    return complex(np.sum(table[(a.value * t * t + b.value * t) % q]))


def quadratic_exponential_closed_form(a: FieldElement, b: FieldElement) -> complex:
    """Completing-the-square evaluation G * eta(a) * chi(b^2 / (-4a)).

    The character argument eta takes is the quadratic coefficient a; this is
    the form verified against direct summation for every (a, b) at small q.
    """
    if a.field.q != b.field.q:
        raise ValueError("modulus mismatch between coefficients")
    if a.value == 0:
        raise ValueError("quadratic coefficient must be nonzero")
    field = a.field
    g = gauss_sum(field).value
    shift = (b * b) * (-(a * 4)).inv()
    return g * field.eta_int(a.value) * chi(shift)
