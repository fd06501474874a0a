"""Lucas sequences u_k, v_k and primitive-divisor bookkeeping.

For a pair (P, Q) with roots alpha, beta of z^2 - P z + Q:
u_k = (alpha^k - beta^k)/(alpha - beta), v_k = alpha^k + beta^k. A prime is a
primitive divisor of u_k if it divides u_k but neither the discriminant
D = P^2 - 4Q nor any earlier u_j; this is the classical rational-integer
criterion (prime-ideal refinements are out of scope here).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dickson import dickson_eval, dickson_param_coeffs
from .numth import smallest_prime_factor


@dataclass(frozen=True)
class LucasPair:
    P: int
    Q: int

    @property
    def D(self) -> int:
        return self.P * self.P - 4 * self.Q

    def hypothesis_violations(self) -> list[str]:
        """Why this pair falls outside the primitive-divisor theorem, if it does."""
        problems = []
        if self.P == 0:
            problems.append("P = 0 (degenerate: alpha = -beta)")
        if self.Q == 0:
            problems.append("Q = 0 (degenerate: beta = 0)")
        if self.P and self.Q and math.gcd(self.P, self.Q) != 1:
            problems.append(f"gcd(P, Q) = {math.gcd(self.P, self.Q)} != 1")
        if self.Q and ratio_is_root_of_unity(self):
            problems.append("alpha/beta is a root of unity")
        return problems


def lucas_sequences(pair: LucasPair, k_max: int) -> tuple[list[int], list[int]]:
    """u_0..u_kmax and v_0..v_kmax, exact."""
    if k_max < 0:
        raise ValueError("k must be >= 0")
    u = [0, 1]
    v = [2, pair.P]
    for _ in range(2, k_max + 1):
        u.append(pair.P * u[-1] - pair.Q * u[-2])
        v.append(pair.P * v[-1] - pair.Q * v[-2])
    return u[: k_max + 1], v[: k_max + 1]


def lucas_terms(pair: LucasPair, k: int) -> tuple[int, int]:
    """(u_k, v_k)."""
    u, v = lucas_sequences(pair, k)
    return u[k], v[k]


def ratio_is_root_of_unity(pair: LucasPair) -> bool:
    """True iff alpha/beta is a root of unity.

    rho + 1/rho = (P^2 - 2Q)/Q must be a rational integer in [-2, 2], which
    for integer P, Q collapses to Q > 0 and P^2 in {0, Q, 2Q, 3Q, 4Q}.
    """
    if pair.Q == 0:
        raise ValueError("Q = 0 gives a degenerate pair")
    return pair.Q > 0 and pair.P * pair.P in (0, pair.Q, 2 * pair.Q, 3 * pair.Q, 4 * pair.Q)


def _strip_common(m: int, base: int) -> int:
    """Remove from m every prime it shares with base."""
    if base == 0:
        return m
    base = abs(base)
    g = math.gcd(m, base)
    while g > 1:
        while m % g == 0:
            m //= g
        g = math.gcd(m, base)
    return m


def _primitive_part(pair: LucasPair, k: int, u: list[int]) -> int:
    """|u_k| with all primes dividing D or an earlier term stripped out."""
    if u[k] == 0:
        raise ValueError(f"u_{k} = 0: the ratio alpha/beta is a root of unity")
    m = abs(u[k])
    m = _strip_common(m, pair.D)
    for j in range(1, k):
        if m == 1:
            break
        m = _strip_common(m, u[j])
    return m


def has_primitive_divisor(pair: LucasPair, k: int) -> bool:
    """Existence check without factoring: any leftover prime is primitive."""
    violations = pair.hypothesis_violations()
    if violations:
        raise ValueError("; ".join(violations))
    if k < 2:
        raise ValueError("primitive divisors are considered for k >= 2")
    u, _ = lucas_sequences(pair, k)
    return _primitive_part(pair, k, u) > 1


def primitive_divisor(pair: LucasPair, k: int) -> Optional[int]:
    """Smallest primitive prime divisor of u_k, or None if there is none."""
    violations = pair.hypothesis_violations()
    if violations:
        raise ValueError("; ".join(violations))
    if k < 2:
        raise ValueError("primitive divisors are considered for k >= 2")
    u, _ = lucas_sequences(pair, k)
    m = _primitive_part(pair, k, u)
    if m == 1:
        return None
    return smallest_prime_factor(m)


@dataclass
class WindowReport:
    """Outcome of checking primitive divisors over an index window."""

    pair: LucasPair
    k_max: int
    hypothesis_ok: bool
    violations: list[str] = field(default_factory=list)
    missing: list[int] = field(default_factory=list)  # k in (30, k_max] with no primitive divisor
    checked: int = 0

    @property
    def ok(self) -> bool:
        return self.hypothesis_ok and not self.missing

    def to_json(self) -> dict:
        return {
            "P": self.pair.P,
            "Q": self.pair.Q,
            "D": self.pair.D,
            "k_max": self.k_max,
            "hypothesis_ok": self.hypothesis_ok,
            "violations": self.violations,
            "missing": self.missing,
            "checked": self.checked,
        }


def bhv_window_check(pair: LucasPair, k_max: int) -> WindowReport:
    """Every index 30 < k <= k_max must have a primitive divisor.

    A missing index would falsify this implementation, not the theorem it
    instantiates, so the report lists misses rather than raising.
    """
    violations = pair.hypothesis_violations()
    if violations:
        return WindowReport(pair, k_max, hypothesis_ok=False, violations=violations)
    report = WindowReport(pair, k_max, hypothesis_ok=True)
    u, _ = lucas_sequences(pair, k_max)
    for k in range(31, k_max + 1):
        report.checked += 1
        if _primitive_part(pair, k, u) == 1:
            report.missing.append(k)
    return report


@dataclass(frozen=True)
class ChainVerdict:
    """Replay of the no-primitive-divisor step for the pair (P, Q) = (c, s)."""

    l: int
    c: int
    s: int
    u_l: int
    v_l: int
    u_2l: int
    vacuous: bool  # v_l != -1, so the chain's hypothesis never fires
    endgame_ok: bool  # the claim D_l(c, s) != -1 for this instance
    doubled_identity: bool  # u_{2l} = u_l * v_l
    no_primitive_divisor_at_2l: Optional[bool]

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "c": self.c,
            "s": str(self.s),
            "u_l": str(self.u_l),
            "v_l": str(self.v_l),
            "u_2l": str(self.u_2l),
            "vacuous": self.vacuous,
            "endgame_ok": self.endgame_ok,
            "doubled_identity": self.doubled_identity,
            "no_primitive_divisor_at_2l": self.no_primitive_divisor_at_2l,
        }


def _chain_verdict(pair: LucasPair, l: int) -> ChainVerdict:
    u, v = lucas_sequences(pair, 2 * l)
    vacuous = v[l] != -1
    no_pd = None
    if not vacuous:
        # v_l = -1 forces u_{2l} = -u_l, so every prime in u_{2l} already
        # appears in u_l: no primitive divisor can exist at index 2l.
        no_pd = _primitive_part(pair, 2 * l, u) == 1
    return ChainVerdict(
        l=l,
        c=pair.P,
        s=pair.Q,
        u_l=u[l],
        v_l=v[l],
        u_2l=u[2 * l],
        vacuous=vacuous,
        endgame_ok=vacuous,
        doubled_identity=u[2 * l] == u[l] * v[l],
        no_primitive_divisor_at_2l=no_pd,
    )


def no_primitive_divisor_chain(l: int, c: int, s: int) -> ChainVerdict:
    """Check the doubled-index consequence of v_l = -1 for (P, Q) = (c, s).

    If D_l(c, s) = v_l were -1 then u_{2l} = -u_l and index 2l has no
    primitive divisor; when v_l != -1 (which the endgame claim says is always
    the case here) the verdict is vacuous.
    """
    if l < 3 or l % 2 == 0 or not _is_small_prime(l):
        raise ValueError("l must be an odd prime")
    if c not in (1, -1):
        raise ValueError("c must be +1 or -1")
    if abs(s) < 2:
        raise ValueError("need |s| >= 2")
    return _chain_verdict(LucasPair(c, s), l)


def _is_small_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(math.isqrt(n)) + 1))


_SCREEN_MODULI = (2147483647, 2147483629)  # both < 2^31, products fit in int64


def endgame_sweep(l: int, c: int, s_max: int = 10**6, s_min: int = 2) -> dict:
    """Exhaustively confirm D_l(c, s) != -1 for all s_min <= |s| <= s_max.

    D_l(c, s) is a degree floor(l/2) integer polynomial in s. Candidates are
    screened with vectorized Horner evaluation modulo two 31-bit primes (a
    true hit must be -1 modulo both) and every candidate is then rechecked
    with exact big-integer arithmetic, so the sweep is exact.
    """
    if c not in (1, -1):
        raise ValueError("c must be +1 or -1")
    coeffs = dickson_param_coeffs(l, c)
    candidates: list[int] = []
    checked = 0
    for sign in (1, -1):
        # evaluate at sign*s for positive s: flip odd-power coefficients
        signed = [a * (sign**i) for i, a in enumerate(coeffs)]
        block = 1 << 19
        lo = s_min
        while lo <= s_max:
            hi = min(lo + block - 1, s_max)
            s_vals = np.arange(lo, hi + 1, dtype=np.int64)
            checked += len(s_vals)
            mask = np.ones(len(s_vals), dtype=bool)
            for mod in _SCREEN_MODULI:
                acc = np.full(len(s_vals), signed[-1] % mod, dtype=np.int64)
                for a in reversed(signed[:-1]):
                    acc = (acc * (s_vals % mod) + a) % mod
                mask &= acc == (mod - 1)
            for s_hit in s_vals[mask]:
                candidates.append(sign * int(s_hit))
            lo = hi + 1
    violations = [s for s in candidates if dickson_eval(l, s, c) == -1]
    return {
        "l": l,
        "c": c,
        "s_min": s_min,
        "s_max": s_max,
        "checked": checked,
        "screen_candidates": candidates,
        "violations": violations,
    }
