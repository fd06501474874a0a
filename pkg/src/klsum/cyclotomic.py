"""Exact arithmetic in Z[zeta_p] for prime p.

Elements are stored in the power basis {1, zeta, ..., zeta^(p-2)}, which is a
Z-basis of the ring of integers, so equality and integrality are coordinate
checks. For p = 2 the basis is {1} and zeta = -1, handled by the same code
path. Coordinates are arbitrary-precision ints.
"""
from __future__ import annotations

import cmath
import math
from typing import Optional

from .numth import is_prime


class CyclotomicInteger:
    """An element of Z[zeta_p] in canonical power-basis coordinates."""

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords) -> None:
        coords = tuple(int(c) for c in coords)
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if len(coords) != p - 1:
            raise ValueError(f"need {p - 1} coordinates for p = {p}, got {len(coords)}")
        self.p = p
        self.coords = coords

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, p: int, n: int) -> CyclotomicInteger:
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> CyclotomicInteger:
        return cls.from_int(p, 0)

    @classmethod
    def one(cls, p: int) -> CyclotomicInteger:
        return cls.from_int(p, 1)

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> CyclotomicInteger:
        """zeta_p^k as an element."""
        counts = [0] * p
        counts[k % p] = 1
        return cls.from_exponent_counts(p, counts)

    @classmethod
    def from_exponent_counts(cls, p: int, counts) -> CyclotomicInteger:
        """Sum of counts[c] * zeta^c over c = 0..p-1, reduced canonically.

        Uses zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)): coordinate k is
        counts[k] - counts[p-1].
        """
        counts = list(counts)
        if len(counts) != p:
            raise ValueError(f"need {p} exponent counts, got {len(counts)}")
        top = counts[p - 1]
        return cls(p, tuple(counts[k] - top for k in range(p - 1)))

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> Optional[CyclotomicInteger]:
        if isinstance(other, CyclotomicInteger):
            if other.p != self.p:
                raise ValueError(f"mixed cyclotomic rings: p={self.p} vs p={other.p}")
            return other
        if isinstance(other, int):
            return CyclotomicInteger.from_int(self.p, other)
        return None

    def __add__(self, other) -> CyclotomicInteger:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicInteger(self.p, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> CyclotomicInteger:
        return CyclotomicInteger(self.p, tuple(-a for a in self.coords))

    def __sub__(self, other) -> CyclotomicInteger:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> CyclotomicInteger:
        return (-self) + other

    def __mul__(self, other) -> CyclotomicInteger:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        counts = [0] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        counts[(i + j) % p] += a * b
        return CyclotomicInteger.from_exponent_counts(p, counts)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CyclotomicInteger:
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta_p]")
        result = CyclotomicInteger.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coords == CyclotomicInteger.from_int(self.p, other).coords
        if isinstance(other, CyclotomicInteger):
            return self.p == other.p and self.coords == other.coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.coords))

    def __bool__(self) -> bool:
        return any(self.coords)

    def __repr__(self) -> str:
        return f"CyclotomicInteger(p={self.p}, coords={self.coords})"

    # -- structure maps ----------------------------------------------------

    def galois(self, j: int) -> CyclotomicInteger:
        """Apply the automorphism sigma_j: zeta -> zeta^j, gcd(j, p) = 1."""
        p = self.p
        j %= p
        if j == 0:
            raise ValueError("galois index must be a unit mod p")
        counts = [0] * p
        for k, a in enumerate(self.coords):
            counts[(j * k) % p] += a
        return CyclotomicInteger.from_exponent_counts(p, counts)

    def as_rational_integer(self) -> Optional[int]:
        """The element as a plain integer, or None if it is irrational."""
        if any(self.coords[1:]):
            return None
        return self.coords[0]

    def lambda_residue(self) -> int:
        """Image in Z[zeta_p]/(1 - zeta_p) = F_p, i.e. the coordinate sum mod p."""
        return sum(self.coords) % self.p

    def embeddings(self) -> list[complex]:
        """The p-1 complex embeddings (coordinate polynomial at e^{2*pi*i*j/p})."""
        p = self.p
        out = []
        for j in range(1, p):
            z = cmath.exp(2j * math.pi * j / p)
            acc = complex(0)
            for c in reversed(self.coords):
                acc = acc * z + c
            out.append(acc)
        return out

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, obj: dict) -> CyclotomicInteger:
        return cls(int(obj["p"]), tuple(int(c) for c in obj["coords"]))
