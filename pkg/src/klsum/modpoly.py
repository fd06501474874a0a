"""Dense polynomial arithmetic over F_p.

Polynomials are plain lists of ints in [0, p), lowest degree first, with no
trailing zeros; the zero polynomial is []. Everything here is desk-scale
(degrees below ~50, p below ~100 for the heavy callers), so schoolbook
algorithms are used throughout.
"""
from __future__ import annotations


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: list[int]) -> int:
    return len(a) - 1


def add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def scalar_mul(a: list[int], c: int, p: int) -> list[int]:
    c %= p
    return trim([ai * c % p for ai in a])


def divmod_poly(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a by b (b nonzero)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = degree(b)
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(0, len(a) - db)
    for shift in range(len(rem) - db - 1, -1, -1):
        coef = rem[shift + db] * inv_lead % p
        if coef:
            quot[shift] = coef
            for i, bi in enumerate(b):
                rem[shift + i] = (rem[shift + i] - coef * bi) % p
    return trim(quot), trim(rem)


def mod(a: list[int], b: list[int], p: int) -> list[int]:
    return divmod_poly(a, b, p)[1]


def monic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    return scalar_mul(a, pow(a[-1], p - 2, p), p)


def gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def pow_mod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    """base**e reduced mod f."""
    result = [1]
    base = mod(base, f, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), f, p)
        base = mod(mul(base, base, p), f, p)
        e >>= 1
    return result


def derivative(a: list[int], p: int) -> list[int]:
    return trim([i * a[i] % p for i in range(1, len(a))])


def is_squarefree(f: list[int], p: int) -> bool:
    return gcd(f, derivative(f, p), p) == [1]


def eval_at(a: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def is_irreducible(f: list[int], p: int, d_factors: dict[int, int] | None = None) -> bool:
    """Irreducibility of monic f over F_p.

    Rabin's test: x^{p^d} == x mod f, and gcd(x^{p^{d/l}} - x, f) = 1 for
    every prime l dividing d.
    """
    from .numth import factorize

    d = degree(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    if f[0] == 0:  # divisible by x
        return False
    x = [0, 1]
    if d_factors is None:
        d_factors = factorize(d)
    # frob[k] = x^{p^(k+1)} mod f, built by repeated p-th powering
    frob = []
    h = x
    for _ in range(d):
        h = pow_mod(h, p, f, p)
        frob.append(h)
    if frob[d - 1] != x:
        return False
    for ell in d_factors:
        g = gcd(sub(frob[d // ell - 1], x, p), f, p)
        if g != [1]:
            return False
    return True


def inv_mod(a: list[int], f: list[int], p: int) -> list[int]:
    """Inverse of a modulo f via extended Euclid; a must be coprime to f."""
    a = mod(a, f, p)
    if not a:
        raise ZeroDivisionError("inverse of zero")
    r0, r1 = list(f), a
    s0, s1 = [], [1]
    while r1:
        q, r = divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
    if degree(r0) != 0:
        raise ZeroDivisionError("element not invertible modulo f")
    return scalar_mul(s0, pow(r0[0], p - 2, p), p)


def distinct_degree_factorization(f: list[int], p: int) -> dict[int, int]:
    """Factor-degree profile {degree: count} of squarefree monic f.

    Standard DDF: strip gcd(x^{p^k} - x, f) for k = 1, 2, ... Each gcd is
    the product of all irreducible factors of degree exactly k.
    """
    f = monic(list(f), p)
    pattern: dict[int, int] = {}
    x = [0, 1]
    h = list(x)
    k = 0
    while degree(f) > 0:
        k += 1
        if 2 * k > degree(f):
            # whatever is left is a single irreducible factor
            pattern[degree(f)] = pattern.get(degree(f), 0) + 1
            break
        h = pow_mod(h, p, f, p)
        g = gcd(sub(h, x, p), f, p)
        if degree(g) > 0:
            pattern[k] = pattern.get(k, 0) + degree(g) // k
            f, r = divmod_poly(f, g, p)
            assert not r
            h = mod(h, f, p)
    return pattern
