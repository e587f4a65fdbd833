"""Irreducible polynomials over prime fields with prescribed low-order
coefficients.

A field is pseudo-Hilbertian when every coefficient prefix a_0, ..., a_n
with a_0 nonzero extends to an irreducible polynomial.  For prime fields
this module searches constructively: candidate higher coefficients are
enumerated degree by degree in lexicographic order, so a run is
reproducible byte for byte, and a miss within ``max_degree`` only means no
witness that small, never a disproof.

Polynomials are coefficient tuples, constant term first, entries reduced
mod p, leading coefficient nonzero.  Irreducibility is decided by trial
division by every monic polynomial of at most half the degree; a second,
independent test (the finite-field power test: X^(p^n) congruent to X, and
gcd(X^(p^(n/q)) - X, f) trivial for prime q dividing n) is exposed as
``power_irreducibility_test`` for cross-checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    ConstantPolynomial,
    DegreeTooSmall,
    InputError,
    ZeroConstantTerm,
)
from .groups import is_prime

Coeffs = tuple[int, ...]


@dataclass(frozen=True)
class PrimePolynomial:
    p: int
    coefficients: Coeffs

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"{self.p} is not prime")
        cs = tuple(int(c) for c in self.coefficients)
        if not cs:
            raise InputError("empty coefficient list")
        if any(c < 0 or c >= self.p for c in cs):
            raise InputError(f"coefficients must lie in [0, {self.p})")
        if cs[-1] == 0:
            raise InputError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", cs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                coef = "" if c == 1 else str(c)
                terms.append(f"{coef}X" if i == 1 else f"{coef}X^{i}")
        return " + ".join(terms) if terms else "0"


# low-level arithmetic on coefficient tuples (constant first, trimmed)


def _trim(cs: list[int]) -> Coeffs:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_mul(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def poly_mod(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(b[-1], -1, p)
    rem = list(a)
    while rem and rem[-1] == 0:
        rem.pop()
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        factor = rem[-1] * lead_inv % p
        for i, bi in enumerate(b):
            rem[shift + i] = (rem[shift + i] - factor * bi) % p
        while rem and rem[-1] == 0:
            rem.pop()
    return tuple(rem)


def poly_pow_mod(base: Coeffs, exp: int, mod: Coeffs, p: int) -> Coeffs:
    result: Coeffs = (1,)
    base = poly_mod(base, mod, p)
    while exp:
        if exp & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        exp >>= 1
    return result


def poly_gcd(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    while b:
        a, b = b, poly_mod(a, b, p)
    if not a:
        return ()
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def is_irreducible(f: PrimePolynomial) -> bool:
    """Trial division by every monic polynomial of degree at most deg(f)/2."""
    if f.degree == 0:
        raise ConstantPolynomial("irreducibility is about polynomials of degree >= 1")
    if f.degree == 1:
        return True
    p = f.p
    for d in range(1, f.degree // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            g = lower + (1,)
            if not poly_mod(f.coefficients, g, p):
                return False
    return True


def power_irreducibility_test(f: PrimePolynomial) -> bool:
    """Independent irreducibility oracle via the finite-field power test."""
    if f.degree == 0:
        raise ConstantPolynomial("irreducibility is about polynomials of degree >= 1")
    n = f.degree
    p = f.p
    x: Coeffs = (0, 1)
    mod = f.coefficients
    for q in _prime_divisors(n):
        h = poly_pow_mod(x, p ** (n // q), mod, p)
        diff = _poly_sub(h, x, p)
        g = poly_gcd(mod, diff, p)
        if len(g) != 1:
            return False
    return poly_pow_mod(x, p ** n, mod, p) == poly_mod(x, mod, p)


def _poly_sub(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % p
    return _trim(out)


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_irreducible_with_prefix(
    p: int, prefix: tuple[int, ...] | list[int], max_degree: int
) -> PrimePolynomial | None:
    """First irreducible polynomial matching the prefix, by degree then by
    lexicographic order of the higher coefficients; None when no witness of
    degree at most ``max_degree`` exists."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    pre = tuple(int(a) for a in prefix)
    if not pre:
        raise InputError("empty prefix")
    if any(a < 0 or a >= p for a in pre):
        raise InputError(f"prefix entries must lie in [0, {p})")
    if pre[0] == 0:
        raise ZeroConstantTerm("the constant term of the prefix must be nonzero")
    n = len(pre) - 1
    if max_degree <= n:
        raise DegreeTooSmall(f"max_degree {max_degree} does not exceed the prefix degree {n}")
    for d in range(n + 1, max_degree + 1):
        for tail in itertools.product(range(p), repeat=d - n):
            if tail[-1] == 0:
                continue
            cand = PrimePolynomial(p, pre + tail)
            if is_irreducible(cand):
                return cand
    return None
