"""Dickson polynomials of the first kind, exact in every ring we use.

D_n(x, r) is the unique monic degree-n polynomial with
D_n(y + r/y, r) = y^n + (r/y)^n. Two routes are kept deliberately separate:
the closed-form coefficients and the three-term recurrence, each serving as
the oracle for the other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclotomic import CyclotomicInteger
from .errors import VerificationError
from .fields import FieldElement, FieldSpec
from .intpoly import IntegerPolynomial
from .kloosterman import KloostermanValue, kloosterman_sum, subfield_kloosterman_sum


def _term(n: int, i: int) -> int:
    """The integer n/(n-i) * C(n-i, i), computed without rationals."""
    num = n * math.comb(n - i, i)
    if num % (n - i):
        raise VerificationError(f"Dickson coefficient n={n}, i={i} is not integral")
    return num // (n - i)


def dickson_poly(n: int, r: int) -> IntegerPolynomial:
    """Closed-form coefficients of D_n(x, r); D_0 = 2."""
    if n < 0:
        raise ValueError("Dickson degree must be >= 0")
    if n == 0:
        return IntegerPolynomial.constant(2)
    coeffs = [0] * (n + 1)
    for i in range(n // 2 + 1):
        coeffs[n - 2 * i] = _term(n, i) * (-r) ** i
    return IntegerPolynomial(coeffs)


def dickson_eval(n: int, r: int, x):
    """D_n(x, r) by the recurrence D_k = x*D_{k-1} - r*D_{k-2}.

    x may be an int, a Fraction, or a CyclotomicInteger; the arithmetic stays
    in that ring. Used both as the evaluator of choice in Z[zeta_p] and as an
    independent oracle against dickson_poly.
    """
    if n < 0:
        raise ValueError("Dickson degree must be >= 0")
    prev = x * 0 + 2
    if n == 0:
        return prev
    cur = x
    for _ in range(n - 1):
        prev, cur = cur, x * cur - r * prev
    return cur


def dickson_param_coeffs(n: int, c: int) -> list[int]:
    """D_n(c, s) as a polynomial in the parameter s (coefficient of s^i at index i)."""
    if n < 1:
        raise ValueError("need n >= 1")
    return [_term(n, i) * (-1) ** i * c ** (n - 2 * i) for i in range(n // 2 + 1)]


@dataclass(frozen=True)
class CarlitzCheck:
    """Both sides of K_{q^n}(a) = (-1)^(n-1) * D_n(K_q(a), q), evaluated exactly."""

    p: int
    m: int
    n: int
    a_index: int
    big_sum: KloostermanValue
    small_sum: KloostermanValue
    rhs: CyclotomicInteger
    equal: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "n": self.n,
            "a_index": self.a_index,
            "q": self.p**self.m,
            "lhs_coords": [str(c) for c in self.big_sum.value.coords],
            "rhs_coords": [str(c) for c in self.rhs.coords],
            "small_coords": [str(c) for c in self.small_sum.value.coords],
            "equal": self.equal,
        }


def carlitz_check(field: FieldSpec, m: int, a: FieldElement) -> CarlitzCheck:
    """Verify the base-field/extension-field identity for one instance.

    `field` is F_{q^n} with q = p^m; a must lie in the subfield F_q. Both the
    extension sum (direct summation over F_{q^n}) and the Dickson side
    (recurrence in Z[zeta_p] on the subfield sum) are computed exactly.
    """
    p, d = field.p, field.d
    if d % m != 0:
        raise ValueError(f"subfield degree {m} does not divide {d}")
    n = d // m
    q = p**m
    if a.is_zero() or a**q != a:
        raise ValueError("a must be a nonzero element of the subfield")
    big = kloosterman_sum(field, a)
    small = subfield_kloosterman_sum(field, m, a)
    rhs = dickson_eval(n, q, small.value)
    if n % 2 == 0:
        rhs = -rhs
    a_index = field.dlog(a) // ((field.order - 1) // (q - 1))
    return CarlitzCheck(p, m, n, a_index, big, small, rhs, big.value == rhs)
