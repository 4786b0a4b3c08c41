"""Numerical invariants: dyadic digits, the mu function, weight vectors,
the monomial order, spikes and the Singer hit filter.

The order used everywhere is: compare weight vectors left-lexicographically,
then exponent tuples left-lexicographically.  Weight vectors are stored with
trailing zeros trimmed, which makes Python tuple comparison agree with
zero-padded left-lex comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NoSpikeError
from .poly_core import Monomial


def alpha_bit(a: int, i: int) -> int:
    """Coefficient of 2**i in the dyadic expansion of a."""
    if a < 0:
        raise ValueError("a must be non-negative")
    return (a >> i) & 1


def alpha(a: int) -> int:
    """Number of ones in the dyadic expansion of a."""
    if a < 0:
        raise ValueError("a must be non-negative")
    return bin(a).count("1")


@dataclass(frozen=True)
class MuDecomposition:
    """n written as 2^d1 + ... + 2^ds - s with d1 > ... > d_{s-1} >= d_s > 0."""

    n: int
    s: int
    d: tuple[int, ...]

    def __post_init__(self):
        assert self.n == sum(1 << e for e in self.d) - self.s


def mu(n: int) -> MuDecomposition:
    """Smallest s such that n is a sum of s numbers of the form 2^d - 1.

    mu(0) == 0 by convention, with an empty exponent sequence.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return MuDecomposition(0, 0, ())
    for s in range(1, n + 1):
        total = n + s
        # The last exponent d_s repeats freely; the rest are distinct bits
        # above it.  total = 2^d1 + ... + 2^ds with d1 > ... > d_{s-1} >= d_s.
        for ds in range(1, total.bit_length()):
            rest = total - (1 << ds)
            if rest == 0:
                if s == 1:
                    return MuDecomposition(n, s, (ds,))
                continue
            if alpha(rest) == s - 1 and (rest & ((1 << ds) - 1)) == 0:
                d = tuple(sorted((b for b in range(rest.bit_length()) if rest >> b & 1), reverse=True))
                return MuDecomposition(n, s, d + (ds,))
    raise AssertionError(f"mu search failed for n={n}")  # n >= 1 always has s = n


@dataclass(frozen=True)
class WeightVector:
    """The sequence (omega_1, omega_2, ...) with trailing zeros trimmed."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if self.entries and self.entries[-1] == 0:
            raise ValueError("trailing zeros must be trimmed")
        if any(e < 0 for e in self.entries):
            raise ValueError("entries must be non-negative")

    @classmethod
    def of(cls, entries) -> "WeightVector":
        entries = tuple(entries)
        while entries and entries[-1] == 0:
            entries = entries[:-1]
        return cls(entries)

    def degree(self) -> int:
        return sum(e << i for i, e in enumerate(self.entries))

    def __getitem__(self, i: int) -> int:
        """omega_i, 1-indexed; zero beyond the stored length."""
        if i < 1:
            raise IndexError("weight indices are 1-based")
        return self.entries[i - 1] if i <= len(self.entries) else 0

    def __lt__(self, other: "WeightVector") -> bool:
        return self.entries < other.entries

    def __le__(self, other: "WeightVector") -> bool:
        return self.entries <= other.entries

    def __str__(self) -> str:
        # run-length form, e.g. (3^(2),1)
        if not self.entries:
            return "()"
        runs: list[tuple[int, int]] = []
        for e in self.entries:
            if runs and runs[-1][0] == e:
                runs[-1] = (e, runs[-1][1] + 1)
            else:
                runs.append((e, 1))
        parts = [f"{v}^({c})" if c > 1 else f"{v}" for v, c in runs]
        return "(" + ",".join(parts) + ")"


def weight_tuple(exps: tuple[int, ...]) -> tuple[int, ...]:
    """Trimmed weight entries of an exponent tuple; entry i counts the
    exponents whose bit i is set."""
    top = max(exps, default=0).bit_length()
    return tuple(
        sum((e >> i) & 1 for e in exps) for i in range(top)
    )


def weight_vector(x: Monomial) -> WeightVector:
    return WeightVector.of(weight_tuple(x.exps))


def sort_key(x: Monomial) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Key realizing the order: weight vector left-lex, then sigma left-lex."""
    return (weight_tuple(x.exps), x.exps)


def compare(x: Monomial, y: Monomial) -> int:
    """-1, 0 or 1 as x < y, x == y or x > y in the two-level order."""
    if x.k != y.k:
        raise ValueError(f"cannot compare monomials with k={x.k} and k={y.k}")
    a, b = sort_key(x), sort_key(y)
    return -1 if a < b else (0 if a == b else 1)


def is_spike(x: Monomial) -> bool:
    """Every exponent of the form 2^s - 1 (including 0)."""
    return all(e & (e + 1) == 0 for e in x.exps)


def minimal_spike(k: int, n: int) -> Monomial:
    """The spike x1^(2^d1 - 1) ... xs^(2^ds - 1) built from mu(n).

    Raises NoSpikeError when mu(n) > k; by Wood's theorem the whole degree
    is then hit and (QP_k)_n = 0.
    """
    dec = mu(n)
    if dec.s > k:
        raise NoSpikeError(
            f"degree {n} needs {dec.s} spike factors, only {k} variables"
        )
    exps = tuple((1 << d) - 1 for d in dec.d) + (0,) * (k - dec.s)
    return Monomial(k, exps)


@lru_cache(maxsize=None)
def _minimal_spike_weight(k: int, n: int) -> tuple[int, ...] | None:
    dec = mu(n)
    if dec.s > k:
        return None
    exps = tuple((1 << d) - 1 for d in dec.d)
    return weight_tuple(exps)


def singer_is_hit(x: Monomial) -> bool:
    """True means x is hit (sound, not complete: False is "no verdict").

    This is the weight comparison against the minimal spike of the degree.
    """
    n = x.degree()
    zw = _minimal_spike_weight(x.k, n)
    if zw is None:
        raise NoSpikeError(
            f"degree {n} needs {mu(n).s} spike factors, only {x.k} variables"
        )
    return weight_tuple(x.exps) < zw
