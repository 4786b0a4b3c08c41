"""The unstable Steenrod square action on F2[x1..xk].

On a single variable Sq^t(x^a) = C(a,t) x^(a+t), with the binomial taken
mod 2 via the bitwise Lucas test; the action on a monomial is the Cartan
convolution of the per-variable total squares, and on a polynomial it is
termwise (linearity).
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import ExponentOverflowError
from .poly_core import MAX_EXPONENT, Monomial, Polynomial


def binom_mod2(a: int, t: int) -> int:
    """C(a, t) mod 2 by Lucas: odd iff the bits of t sit inside a."""
    if t < 0 or t > a:
        return 0
    return 1 if (a & t) == t else 0


def _sq_exps(i: int, exps: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Terms of Sq^i applied to the monomial with the given exponents."""
    if i == 0:
        return [exps]
    if i > sum(exps):
        return []
    out: list[tuple[int, ...]] = []
    k = len(exps)

    def rec(j: int, remaining: int, acc: list[int]):
        if j == k - 1:
            a = exps[j]
            if remaining <= a and (a & remaining) == remaining:
                if a + remaining >= MAX_EXPONENT:
                    raise ExponentOverflowError(f"exponent {a + remaining} >= 2**63")
                out.append(tuple(acc + [a + remaining]))
            return
        a = exps[j]
        # valid t are submasks of a; only bits within remaining's width matter
        sub = a & ((1 << remaining.bit_length()) - 1)
        t = 0
        while True:
            if t <= remaining:
                if a + t >= MAX_EXPONENT:
                    raise ExponentOverflowError(f"exponent {a + t} >= 2**63")
                acc.append(a + t)
                rec(j + 1, remaining - t, acc)
                acc.pop()
            if t == sub:
                break
            t = (t - sub) & sub  # next submask in increasing order

    rec(0, i, [])
    return out


def sq(i: int, f: Polynomial) -> Polynomial:
    """Sq^i(f), applied termwise; exact over F2."""
    if i < 0:
        raise ValueError("Steenrod squares are indexed by non-negative integers")
    if i == 0:
        return f
    acc: set[Monomial] = set()
    for m in f.terms:
        for exps in _sq_exps(i, m.exps):
            mono = Monomial(f.k, exps)
            if mono in acc:
                acc.discard(mono)
            else:
                acc.add(mono)
    return Polynomial(f.k, acc)


def total_sq(f: Polynomial) -> Polynomial:
    """Sum of Sq^i(f) over all i (finite by instability)."""
    out = Polynomial.zero(f.k)
    for i in range(0, f.degree() + 1):
        out = out + sq(i, f)
    return out


def _degree_monomials(k: int, n: int) -> Iterator[tuple[int, ...]]:
    """All exponent tuples of degree n in k variables, lexicographically."""
    if k == 1:
        yield (n,)
        return
    for e in range(n + 1):
        for rest in _degree_monomials(k - 1, n - e):
            yield (e,) + rest


def generator_powers(n: int, budget: int | None = None) -> list[int]:
    """The powers 2^j used to span the hit subspace in degree n.

    The augmentation ideal is generated by the Sq^(2^j), so together the
    images Sq^(2^j)((P_k)_{n-2^j}) span the hit elements of degree n; the
    target degree n - 2^j must be positive for the image to be nonzero.
    """
    powers = []
    j = 0
    while (1 << j) < n and (budget is None or j <= budget):
        powers.append(1 << j)
        j += 1
    return powers


def total_sq_images(
    k: int, n: int, budget: int | None = None
) -> list[tuple[tuple[int, Monomial], Polynomial]]:
    """All (tag, Sq^(2^j)(m)) with m a monomial of degree n - 2^j.

    The tag is (2^j, m).  Zero images are kept so that row indices of the
    resulting matrix line up with the tags.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    images = []
    for p in generator_powers(n, budget):
        for exps in _degree_monomials(k, n - p):
            m = Monomial(k, exps)
            images.append(((p, m), sq(p, Polynomial.from_monomial(m))))
    return images


def a_s_plus_images(k: int, n: int, s: int) -> list[Polynomial]:
    """Images Sq^u(m) for 1 <= u < 2^s and monomials m of degree n - u,
    spanning the action of the algebra slice generated below Sq^(2^s)."""
    if s < 1:
        raise ValueError("s must be at least 1")
    images = []
    for u in range(1, 1 << s):
        if u > n:
            break
        for exps in _degree_monomials(k, n - u):
            m = Monomial(k, exps)
            images.append(sq(u, Polynomial.from_monomial(m)))
    return images


def monomials_of_degree(k: int, n: int) -> Iterable[Monomial]:
    for exps in _degree_monomials(k, n):
        yield Monomial(k, exps)
