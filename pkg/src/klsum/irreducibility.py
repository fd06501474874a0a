"""Irreducibility of Dickson translates D_n(x, r) + 1 over Q.

Two independent routes: the Turnwald-style criterion specialized to odd n and
|r| >= 2 (decide by evaluating D_l(+-1, r^(n/l)) at each prime l | n), and a
one-sided certificate from factor-degree patterns modulo several primes. The
second route never claims reducibility; it exists to corroborate the first.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import modpoly
from .dickson import dickson_eval, dickson_poly
from .intpoly import IntegerPolynomial
from .numth import factorize, first_primes


class NotSquarefreeError(ValueError):
    """Reduction mod p is not squarefree; the prime must be skipped."""


@dataclass
class IrreducibilityCertificate:
    polynomial: IntegerPolynomial
    verdict: str  # "irreducible" | "reducible" | "undecided"
    evidence: list[tuple[str, dict]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json(),
            "verdict": self.verdict,
            "evidence": [[kind, data] for kind, data in self.evidence],
        }


def turnwald_decide(n: int, r: int) -> IrreducibilityCertificate:
    """Decide irreducibility of D_n(x, r) + 1 for odd n, |r| >= 2.

    Reducibility would require D_l(c, r^(n/l)) = -1 for some prime l | n and
    rational c; the translate is monic with constant coefficient 1, so only
    c = +-1 can occur. Outside the odd-n, |r| >= 2 slice the criterion is not
    applied at all.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("the criterion is applied to odd n only")
    if r in (0, 1, -1):
        raise ValueError("need |r| >= 2")
    f = dickson_poly(n, r) + 1
    cert = IrreducibilityCertificate(f, "irreducible")
    if f[0] != 1 or not f.is_monic():
        raise AssertionError("D_n(x, r) + 1 must be monic with constant coefficient 1")
    # rational-root completeness: only +-1 can be a rational root of f
    root_values = {c: f(c) for c in (1, -1)}
    cert.evidence.append(
        ("rational_root_scan", {"f(1)": str(root_values[1]), "f(-1)": str(root_values[-1])})
    )
    if n == 1:
        cert.evidence.append(("linear", {"note": "degree 1 is irreducible"}))
        return cert
    for ell in sorted(factorize(n)):
        s = r ** (n // ell)
        vals = {c: dickson_eval(ell, s, c) for c in (1, -1)}
        cert.evidence.append(
            (
                "dickson_translate_values",
                {"l": ell, "s": str(s), "D_l(1,s)": str(vals[1]), "D_l(-1,s)": str(vals[-1])},
            )
        )
        for c, v in vals.items():
            if v == -1:
                # witness: D_{n/l}(x, r) - c divides f via the composition
                # D_n(x, r) = D_l(D_{n/l}(x, r), r^(n/l))
                witness = dickson_poly(n // ell, r) - c
                cert.verdict = "reducible"
                cert.evidence.append(
                    ("factor_witness", {"l": ell, "c": c, "factor": witness.to_json()})
                )
                return cert
    return cert


def ddf_degree_pattern(f: list[int], p: int) -> dict[int, int]:
    """Distinct-degree factor profile {degree: count} of f mod p.

    f must be squarefree mod p (checked via gcd(f, f')); otherwise the caller
    is told to skip this prime.
    """
    f = modpoly.monic(list(f), p)
    if modpoly.degree(f) < 1:
        raise ValueError("need a nonconstant polynomial")
    if not modpoly.is_squarefree(f, p):
        raise NotSquarefreeError(f"not squarefree mod {p}: skip this prime")
    pattern = modpoly.distinct_degree_factorization(f, p)
    if sum(d * c for d, c in pattern.items()) != modpoly.degree(f):
        raise AssertionError("degree pattern does not sum to deg f")
    return pattern


def _achievable_degrees(pattern: dict[int, int]) -> frozenset[int]:
    """All factor-degree subset sums realizable from a modular pattern."""
    reachable = 1  # bitset, bit k = degree k achievable
    for deg, count in pattern.items():
        for _ in range(count):
            reachable |= reachable << deg
    total = sum(d * c for d, c in pattern.items())
    return frozenset(k for k in range(total + 1) if reachable >> k & 1)


def certify_by_patterns(f: IntegerPolynomial, primes: list[int]) -> IrreducibilityCertificate:
    """One-sided certification from degree patterns at several primes.

    Irreducible when some prime leaves f irreducible outright, or when the
    intersection of achievable factor degrees over all usable primes is
    {0, deg f}. Anything else is undecided; reducibility is never claimed.
    """
    if not primes:
        raise ValueError("need at least one prime")
    if not f.is_monic() or f.degree < 1:
        raise ValueError("need a monic nonconstant polynomial")
    cert = IrreducibilityCertificate(f, "undecided")
    deg = f.degree
    feasible = frozenset(range(deg + 1))
    used = 0
    for p in primes:
        try:
            pattern = ddf_degree_pattern(f.reduce_mod(p), p)
        except NotSquarefreeError:
            cert.evidence.append(("modular_pattern", {"p": p, "skipped": "not squarefree"}))
            continue
        used += 1
        cert.evidence.append(
            ("modular_pattern", {"p": p, "pattern": sorted(pattern.items())})
        )
        if pattern == {deg: 1}:
            cert.verdict = "irreducible"
            cert.evidence.append(("irreducible_mod_p", {"p": p}))
            return cert
        feasible &= _achievable_degrees(pattern)
        if feasible == {0, deg}:
            cert.verdict = "irreducible"
            cert.evidence.append(
                ("degree_intersection", {"feasible": sorted(feasible), "primes_used": used})
            )
            return cert
    cert.evidence.append(
        ("degree_intersection", {"feasible": sorted(feasible), "primes_used": used})
    )
    return cert


def certify_dickson_translate(n: int, r: int, num_primes: int = 25) -> IrreducibilityCertificate:
    """Pattern certificate for D_n(x, r) + 1 using the first num_primes primes."""
    return certify_by_patterns(dickson_poly(n, r) + 1, first_primes(num_primes))
