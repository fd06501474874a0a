"""Finite fields F_{p^d} as polynomial quotients over F_p.

A FieldSpec fixes the prime p, the degree d, a monic irreducible modulus, and
a primitive generator of the multiplicative group. Elements are coefficient
vectors (lowest power first). Construction is deterministic for a fixed seed,
so any report naming (p, d, seed) can be reproduced exactly.
"""
from __future__ import annotations

import itertools
import math
import random
from typing import Iterator, Optional

import numpy as np

from . import modpoly
from .numth import factorize, is_prime

FIELD_ORDER_LIMIT = 2**22  # single-evaluation desk-scale ceiling


def find_irreducible(p: int, d: int, seed: int = 0) -> list[int]:
    """A monic irreducible polynomial of degree d over F_p (low-to-high coeffs).

    Randomized search with a deterministic RNG; rejects non-prime p.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if d < 1:
        raise ValueError("degree must be >= 1")
    rng = random.Random(seed * 1_000_003 + p * 1009 + d)
    d_factors = factorize(d)
    while True:
        coeffs = [rng.randrange(p) for _ in range(d)] + [1]
        if modpoly.is_irreducible(coeffs, p, d_factors):
            return coeffs


class FieldElement:
    """An element of a fixed FieldSpec, stored as d residues mod p."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs) -> None:
        coeffs = tuple(int(c) % field.p for c in coeffs)
        if len(coeffs) != field.d:
            raise ValueError(f"expected {field.d} coefficients, got {len(coeffs)}")
        self.field = field
        self.coeffs = coeffs

    def _check(self, other: FieldElement) -> None:
        if self.field is not other.field and self.field != other.field:
            raise ValueError("elements belong to different fields")

    def __add__(self, other) -> FieldElement:
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other) -> FieldElement:
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> FieldElement:
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other) -> FieldElement:
        if isinstance(other, int):
            p = self.field.p
            return FieldElement(self.field, tuple(a * other % p for a in self.coeffs))
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        return FieldElement(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero field element")
        inv = modpoly.inv_mod(list(self.coeffs), list(self.field.modulus), self.field.p)
        inv += [0] * (self.field.d - len(inv))
        return FieldElement(self.field, inv)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def trace(self) -> int:
        return self.field.trace(self)

    def frobenius(self) -> FieldElement:
        return self ** self.field.p

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coeffs)} in GF({self.field.p}^{self.field.d}))"


class FieldSpec:
    """F_{p^d} = F_p[x]/(modulus), with a designated primitive generator."""

    def __init__(self, p: int, d: int, modulus, generator) -> None:
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if d < 1:
            raise ValueError("degree must be >= 1")
        if p**d > FIELD_ORDER_LIMIT:
            raise ValueError(f"field order {p}^{d} exceeds the ceiling {FIELD_ORDER_LIMIT}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        if not modpoly.is_irreducible(list(modulus), p):
            raise ValueError("modulus is not irreducible over F_p")
        self.p = p
        self.d = d
        self.modulus = modulus
        self.order = p**d
        self._order_factors = factorize(self.order - 1) if self.order > 2 else {}
        self.generator = FieldElement(self, generator)
        if not self._has_full_order(self.generator):
            raise ValueError("generator does not have multiplicative order p^d - 1")
        self._basis_traces: Optional[tuple[int, ...]] = None
        self._trace_powers: Optional[np.ndarray] = None
        self._baby_table: Optional[dict] = None
        self._subfield_cache: dict[int, tuple[FieldElement, list[int]]] = {}

    # -- construction ------------------------------------------------------

    @classmethod
    def create(cls, p: int, d: int, seed: int = 0) -> FieldSpec:
        """Build F_{p^d} with a modulus whose root x is itself primitive.

        Making the generator the class of x keeps discrete logs, trace
        tables and serialized descriptors all in one object.
        """
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if d < 1:
            raise ValueError("degree must be >= 1")
        if p**d > FIELD_ORDER_LIMIT:
            raise ValueError(f"field order {p}^{d} exceeds the ceiling {FIELD_ORDER_LIMIT}")
        rng = random.Random(seed * 1_000_003 + p * 1009 + d)
        m = p**d - 1
        m_factors = factorize(m) if m > 1 else {}
        d_factors = factorize(d)
        x = [0, 1]
        while True:
            coeffs = [rng.randrange(p) for _ in range(d)] + [1]
            if coeffs[0] == 0:
                continue  # keep the x-class nonzero
            if not modpoly.is_irreducible(coeffs, p, d_factors):
                continue
            if all(modpoly.pow_mod(x, m // ell, coeffs, p) != [1] for ell in m_factors):
                if d == 1:
                    gen = [coeffs_root(coeffs, p)]
                else:
                    gen = [0, 1] + [0] * (d - 2)
                return cls(p, d, coeffs, gen)

    def _has_full_order(self, g: FieldElement) -> bool:
        if g.is_zero():
            return False
        m = self.order - 1
        if m == 1:
            return True
        if (g**m) != self.one():
            return False
        return all(g ** (m // ell) != self.one() for ell in self._order_factors)

    # -- element helpers ----------------------------------------------------

    def element(self, coeffs) -> FieldElement:
        return FieldElement(self, coeffs)

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.d)

    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.d - 1))

    def from_int(self, n: int) -> FieldElement:
        """The prime-field constant n."""
        return FieldElement(self, (n % self.p,) + (0,) * (self.d - 1))

    def elements(self) -> Iterator[FieldElement]:
        for t in itertools.product(range(self.p), repeat=self.d):
            yield FieldElement(self, t[::-1])

    def _mul(self, a: tuple, b: tuple) -> tuple:
        p, d = self.p, self.d
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        mod = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = conv[k] % p
            if c:
                for i in range(d):
                    conv[k - d + i] -= c * mod[i]
            conv[k] = 0
        return tuple(c % p for c in conv[:d])

    # -- traces --------------------------------------------------------------

    def basis_traces(self) -> tuple[int, ...]:
        """Tr(x^j) for j = 0..d-1, from Newton's identities on the modulus.

        The basis monomial traces are the power sums of the modulus roots.
        """
        if self._basis_traces is None:
            p, d = self.p, self.d
            a = self.modulus  # a[j] is the coefficient of x^j, a[d] = 1
            ps = [d % p] + [0] * (d - 1)
            for k in range(1, d):
                acc = k * a[d - k]
                for i in range(1, k):
                    acc += a[d - i] * ps[k - i]
                ps[k] = (-acc) % p
            self._basis_traces = tuple(ps)
        return self._basis_traces

    def trace(self, e: FieldElement) -> int:
        """Trace to the prime field, Tr(e) = e + e^p + ... + e^{p^(d-1)}."""
        tb = self.basis_traces()
        return sum(c * t for c, t in zip(e.coeffs, tb)) % self.p

    def trace_frobenius(self, e: FieldElement) -> int:
        """Trace via explicit Frobenius powers; slower, used for cross-checks."""
        acc = self.zero()
        cur = e
        for _ in range(self.d):
            acc = acc + cur
            cur = cur**self.p
        if any(acc.coeffs[1:]):
            raise ArithmeticError("trace did not land in the prime field")
        return acc.coeffs[0]

    def generator_min_poly(self) -> list[int]:
        """Minimal polynomial of the generator over F_p (monic, degree d)."""
        conjs = []
        cur = self.generator
        for _ in range(self.d):
            conjs.append(cur)
            cur = cur**self.p
        poly = [self.one()]
        for c in conjs:
            nxt = [self.zero()] * (len(poly) + 1)
            for i, coef in enumerate(poly):
                nxt[i + 1] = nxt[i + 1] + coef
                nxt[i] = nxt[i] - c * coef
            poly = nxt
        out = []
        for coef in poly:
            if any(coef.coeffs[1:]):
                raise ArithmeticError("generator minimal polynomial not over F_p")
            out.append(coef.coeffs[0])
        return out

    def trace_power_table(self) -> np.ndarray:
        """Tr(gamma^i) for i = 0..p^d-2 as an int64 array.

        The sequence satisfies the linear recurrence given by the generator's
        minimal polynomial, so after d direct traces the rest is an LFSR run.
        """
        if self._trace_powers is None:
            p, d = self.p, self.d
            m = self.order - 1
            s = []
            cur = self.one()
            for _ in range(min(d, m)):
                s.append(self.trace(cur))
                cur = cur * self.generator
            g = self.generator_min_poly()
            rec = [(-g[k]) % p for k in range(d)]
            for i in range(len(s), m):
                acc = 0
                for k in range(d):
                    if rec[k]:
                        acc += rec[k] * s[i - d + k]
                s.append(acc % p)
            self._trace_powers = np.array(s, dtype=np.int64)
        return self._trace_powers

    # -- discrete logs -------------------------------------------------------

    def dlog(self, e: FieldElement) -> int:
        """i with generator^i = e, by baby-step giant-step."""
        if e.is_zero():
            raise ValueError("zero has no discrete logarithm")
        m = self.order - 1
        steps = math.isqrt(m) + 1
        if self._baby_table is None:
            table = {}
            cur = self.one()
            for j in range(steps):
                table.setdefault(cur.coeffs, j)
                cur = cur * self.generator
            self._baby_table = table
        giant = (self.generator ** steps).inverse()
        cur = e
        for i in range(steps + 1):
            j = self._baby_table.get(cur.coeffs)
            if j is not None:
                return (i * steps + j) % m
            cur = cur * giant
        raise ArithmeticError("discrete log not found; generator is not primitive?")

    # -- subfields -----------------------------------------------------------

    def subfield_generator(self, m: int) -> FieldElement:
        """delta = gamma^((p^d-1)/(p^m-1)), generating F_{p^m}^* inside this field."""
        if m < 1 or self.d % m != 0:
            raise ValueError(f"subfield degree {m} does not divide {self.d}")
        exp = (self.order - 1) // (self.p**m - 1)
        return self.generator**exp

    def subfield_elements(self, m: int) -> list[FieldElement]:
        """All of F_{p^m}^* inside this field, as consecutive powers of delta."""
        delta = self.subfield_generator(m)
        out = [self.one()]
        for _ in range(self.p**m - 2):
            out.append(out[-1] * delta)
        return out

    def subfield_trace_table(self, m: int) -> tuple[FieldElement, list[int]]:
        """(delta, table) with table[j] = Tr_{F_{p^m} -> F_p}(delta^j).

        The subfield trace of y is y + y^p + ... + y^{p^(m-1)}; on delta
        powers each Frobenius term is just another delta power, so the sum
        is a table lookup. The result is asserted to be a prime-field
        constant.
        """
        if m not in self._subfield_cache:
            q1 = self.p**m - 1
            powers = self.subfield_elements(m)
            delta = self.subfield_generator(m)
            table = []
            for j in range(q1):
                acc = self.zero()
                jp = j
                for _ in range(m):
                    acc = acc + powers[jp]
                    jp = jp * self.p % q1
                if any(acc.coeffs[1:]):
                    raise ArithmeticError("subfield trace did not land in F_p")
                table.append(acc.coeffs[0])
            self._subfield_cache[m] = (delta, table)
        return self._subfield_cache[m]

    # -- identity & serialization ---------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (
            self.p == other.p
            and self.d == other.d
            and self.modulus == other.modulus
            and self.generator.coeffs == other.generator.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(GF({self.p}^{self.d}), modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "modulus": list(self.modulus),
            "generator": list(self.generator.coeffs),
        }

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        return cls(
            int(obj["p"]),
            int(obj["d"]),
            [int(c) for c in obj["modulus"]],
            [int(c) for c in obj["generator"]],
        )


def coeffs_root(coeffs: list[int], p: int) -> int:
    """Root of a monic linear polynomial over F_p (the x-class for d = 1)."""
    return (-coeffs[0]) % p
