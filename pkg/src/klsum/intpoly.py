"""Dense polynomials with arbitrary-precision integer coefficients."""
from __future__ import annotations

from typing import Optional


class IntegerPolynomial:
    """Immutable integer polynomial, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple; otherwise the
    leading coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs) -> None:
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls) -> IntegerPolynomial:
        return cls(())

    @classmethod
    def constant(cls, c: int) -> IntegerPolynomial:
        return cls((c,))

    @classmethod
    def x_power(cls, k: int, c: int = 1) -> IntegerPolynomial:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _coerce(self, other) -> Optional[IntegerPolynomial]:
        if isinstance(other, IntegerPolynomial):
            return other
        if isinstance(other, int):
            return IntegerPolynomial.constant(other)
        return None

    def __add__(self, other) -> IntegerPolynomial:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return IntegerPolynomial(tuple(self[k] + o[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> IntegerPolynomial:
        return IntegerPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> IntegerPolynomial:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> IntegerPolynomial:
        return (-self) + other

    def __mul__(self, other) -> IntegerPolynomial:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return IntegerPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, divisor: IntegerPolynomial) -> tuple[IntegerPolynomial, IntegerPolynomial]:
        """Division by a monic divisor; quotient and remainder are over Z."""
        if not divisor.is_monic():
            raise ValueError("division requires a monic divisor")
        rem = list(self.coeffs)
        dd = divisor.degree
        quot = [0] * max(0, len(rem) - dd)
        for shift in range(len(rem) - dd - 1, -1, -1):
            c = rem[shift + dd]
            if c:
                quot[shift] = c
                for i, b in enumerate(divisor.coeffs):
                    rem[shift + i] -= c * b
        return IntegerPolynomial(quot), IntegerPolynomial(rem[:dd])

    def divides(self, other: IntegerPolynomial) -> bool:
        """Whether self (monic) divides other exactly over Z."""
        _, r = divmod(other, self)
        return r.is_zero()

    def __call__(self, x):
        """Horner evaluation; works for ints, Fractions and cyclotomic integers."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reduce_mod(self, p: int) -> list[int]:
        """Coefficients mod p as a modpoly-style list (trailing zeros trimmed)."""
        out = [c % p for c in self.coeffs]
        while out and out[-1] == 0:
            out.pop()
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "IntegerPolynomial(0)"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if not c:
                continue
            if k == 0:
                terms.append(f"{c:+d}")
            elif k == 1:
                terms.append(f"{c:+d}*x")
            else:
                terms.append(f"{c:+d}*x^{k}")
        return "IntegerPolynomial(" + " ".join(terms) + ")"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, coeffs) -> IntegerPolynomial:
        return cls(tuple(int(c) for c in coeffs))
