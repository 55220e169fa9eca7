"""Lucas binomials and Frobenius utilities on F_p(t)."""

from __future__ import annotations

from functools import lru_cache

from ..errors import NotAPthPower
from .fields import Fp, check_prime
from .poly import Poly


@lru_cache(maxsize=None)
def _pascal_row(p: int) -> list[list[int]]:
    # full Pascal triangle of digit binomials C(a, b) mod p for a, b < p
    rows = [[1]]
    for a in range(1, p):
        prev = rows[-1]
        row = [1] + [(prev[b - 1] + (prev[b] if b < len(prev) else 0)) % p for b in range(1, a)] + [1]
        rows.append(row)
    return rows


def binomial_mod_p(n: int, k: int, p: int) -> Fp:
    """C(n, k) mod p, digit by digit in base p (Lucas)."""
    return Fp(binom_int(n, k, p), p)


@lru_cache(maxsize=1 << 20)
def binom_int(n: int, k: int, p: int) -> int:
    check_prime(p)
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if k > n:
        return 0
    rows = _pascal_row(p)
    acc = 1
    while k or n:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        acc = (acc * rows[nd][kd]) % p
        n //= p
        k //= p
    return acc


def lowest_nonzero_digit(m: int, p: int) -> tuple[int, int]:
    """Return (l, digit) for the lowest nonzero base-p digit of m >= 1."""
    if m <= 0:
        raise ValueError("m must be positive")
    l = 0
    while m % p == 0:
        m //= p
        l += 1
    return l, m % p


def poly_pth_root(f: Poly, p: int) -> Poly:
    """p-th root of a polynomial over F_p, if one exists.

    Coefficients of F_p are Frobenius-fixed, so only the exponents matter.
    """
    if f.is_zero():
        return f
    cs = [0] * (f.degree // p + 1)
    for m, c in enumerate(f.cs):
        if c:
            if m % p:
                raise NotAPthPower(f"exponent {m} not divisible by {p}")
            cs[m // p] = c
    return Poly(cs, p)


def poly_is_pth_power(f: Poly, p: int) -> bool:
    return all(c == 0 or m % p == 0 for m, c in enumerate(f.cs))


def squarefree_layers(f: Poly) -> list[tuple[Poly, int]]:
    """Char-p squarefree decomposition: f = prod s_i^{m_i} (up to a constant)
    with the s_i monic, squarefree and pairwise coprime (Yun's algorithm,
    recursing through p-th roots for the derivative-free part)."""
    p = f.p
    binom = lambda n, k: binom_int(n, k, p)
    out: list[tuple[Poly, int]] = []
    work = f.monic()
    if work.degree <= 0:
        return out
    deriv = work.hasse(1, binom)
    if deriv.is_zero():
        for s, m in squarefree_layers(poly_pth_root(work, p)):
            out.append((s, m * p))
        return out
    g = work.gcd(deriv)
    w = work // g
    i = 1
    while not w.is_one():
        y = w.gcd(g)
        layer = w // y
        if layer.degree > 0:
            out.append((layer.monic(), i))
        w = y
        g = g // y
        i += 1
    if g.degree > 0:
        # leftover multiplicities divisible by p
        for s, m in squarefree_layers(poly_pth_root(g, p)):
            out.append((s, m * p))
    return out


def poly_radical(f: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of f (char p aware:
    derivative-free parts are pulled back through p-th roots)."""
    if f.is_zero():
        raise ZeroDivisionError("radical of zero")
    p = f.p
    rad = Poly.one(p)
    binom = lambda n, k: binom_int(n, k, p)
    work = f.monic()
    while work.degree > 0:
        deriv = work.hasse(1, binom)
        if deriv.is_zero():
            work = poly_pth_root(work, p).monic()
            continue
        g = work.gcd(deriv)
        squarefree = work // g
        rad = ((rad // rad.gcd(squarefree)) * squarefree).monic()
        work = g
    return rad
