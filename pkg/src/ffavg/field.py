"""Exact arithmetic in prime fields F_q, q an odd prime.

Elements are residues 0..q-1 tagged with their field; every operation is
exact integer arithmetic mod q.  The quadratic character eta and square
roots of -1 are the number-theoretic primitives everything downstream
(Gauss sums, cone geometry, isotropic subspaces) is built on.
"""

from __future__ import annotations

from typing import Iterator, Optional


def is_odd_prime(n: int) -> bool:
    """Trial-division primality test; moduli stay desk-scale (a few hundred)."""
    if n < 3 or n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field F_q for an odd prime q.  Validates q once, hands out elements."""

    __slots__ = ("q", "_squares")

    def __init__(self, q: int):
        if not is_odd_prime(q):
            raise ValueError(f"modulus must be an odd prime >= 3, got {q}")
        self.q = q
        self._squares: Optional[frozenset] = None

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self) -> Iterator["FieldElement"]:
        return (FieldElement(v, self) for v in range(self.q))

    def nonzero_squares(self) -> frozenset:
        if self._squares is None:
            self._squares = frozenset((v * v) % self.q for v in range(1, self.q))
        return self._squares

    def eta_int(self, value: int) -> int:
        """Quadratic character on a plain residue: +1 square, -1 nonsquare, 0 at 0."""
        v = value % self.q
        if v == 0:
            return 0
        return 1 if v in self.nonzero_squares() else -1

    def sqrt_of_minus_one(self) -> Optional["FieldElement"]:
        """Smallest i with i^2 = -1, or None when q = 3 (mod 4)."""
        if self.q % 4 != 1:
            return None
        target = self.q - 1
        for v in range(1, self.q):
            if (v * v) % self.q == target:
                return FieldElement(v, self)
        raise AssertionError("unreachable: -1 is a square whenever q = 1 (mod 4)")

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"


class FieldElement:
    """A residue in F_q.  Immutable; mixing moduli raises ValueError."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        object.__setattr__(self, "value", value % field.q)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, val):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field.q != self.field.q:
                raise ValueError(
                    f"modulus mismatch: F_{self.field.q} vs F_{other.field.q}"
                )
            return other
        if isinstance(other, int):
            return FieldElement(other, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + other.value, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - other.value, self.field)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(other.value - self.value, self.field)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * other.value, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __pow__(self, n: int):
        return FieldElement(pow(self.value, n, self.field.q), self.field)

    def inv(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.field.q}")
        return FieldElement(pow(self.value, self.field.q - 2, self.field.q), self.field)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field.q == other.field.q and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.q})"


def eta(a: FieldElement) -> int:
    """Quadratic character of F_q extended by eta(0) = 0.

    The zero extension makes sum_t eta(t) = 0 hold literally over all of F_q.
    """
    return a.field.eta_int(a.value)


def sqrt_of_minus_one(q: "int | PrimeField") -> Optional[FieldElement]:
    """Smallest element i of F_q with i^2 = -1; None when q = 3 (mod 4)."""
    field = q if isinstance(q, PrimeField) else PrimeField(q)
    return field.sqrt_of_minus_one()
