"""Bit-packed GF(2) matrices keyed by an ordered monomial column basis.

Rows are Python ints used as bitsets.  Columns are the monomials of one
degree sorted strictly descending in the weight-then-sigma order; the bit
position of a column is chosen so that the LARGEST monomial gets the
HIGHEST bit.  The leading (highest) bit of a row is therefore its largest
monomial, and after elimination "admissible = non-pivot" is immediate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DimensionMismatchError
from .invariants import sort_key
from .poly_core import Monomial, Polynomial
from .steenrod import monomials_of_degree


class MonomialColumnBasis:
    """All monomials of degree n in k variables, sorted strictly descending."""

    __slots__ = ("k", "n", "monomials", "_bit_of")

    def __init__(self, k: int, n: int):
        self.k = k
        self.n = n
        self.monomials: list[Monomial] = sorted(
            monomials_of_degree(k, n), key=sort_key, reverse=True
        )
        size = len(self.monomials)
        # monomials[0] is the largest and owns the highest bit
        self._bit_of = {m.exps: size - 1 - i for i, m in enumerate(self.monomials)}

    def __len__(self) -> int:
        return len(self.monomials)

    def bit_of(self, m: Monomial) -> int:
        try:
            return self._bit_of[m.exps]
        except KeyError:
            raise DimensionMismatchError(
                f"{m} is not a degree-{self.n} monomial in {self.k} variables"
            ) from None

    def monomial_at_bit(self, bit: int) -> Monomial:
        return self.monomials[len(self.monomials) - 1 - bit]

    def row_of(self, f: Polynomial) -> int:
        """Bitset of a polynomial; raises if any term is off-degree."""
        row = 0
        for m in f.terms:
            row ^= 1 << self.bit_of(m)
        return row

    def polynomial_of(self, row: int) -> Polynomial:
        terms = []
        while row:
            b = row.bit_length() - 1
            terms.append(self.monomial_at_bit(b))
            row ^= 1 << b
        return Polynomial(self.k, terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonomialColumnBasis)
            and self.k == other.k
            and self.n == other.n
        )

    def __hash__(self) -> int:
        return hash((self.k, self.n))


def echelonize(rows: Iterable[int]) -> dict[int, int]:
    """Reduce rows to an echelon basis: a map pivot bit -> row whose
    leading bit is that pivot.  Row space is preserved."""
    piv: dict[int, int] = {}
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            p = piv.get(lead)
            if p is None:
                piv[lead] = r
                break
            r ^= p
    return piv


def echelonize_tracked(rows: Sequence[int]) -> tuple[dict[int, int], dict[int, int]]:
    """Like echelonize but also returns, per pivot, the combination of
    input rows (as a bitset over row indices) producing the pivot row."""
    piv: dict[int, int] = {}
    combo: dict[int, int] = {}
    for idx, r in enumerate(rows):
        c = 1 << idx
        while r:
            lead = r.bit_length() - 1
            p = piv.get(lead)
            if p is None:
                piv[lead] = r
                combo[lead] = c
                break
            r ^= p
            c ^= combo[lead]
    return piv, combo


def back_substitute(piv: dict[int, int], combo: dict[int, int] | None = None):
    """Turn an echelon basis into reduced form: every pivot column is zero
    in all other rows.  Mutates the dicts in place."""
    if not piv:
        return
    piv_mask = 0
    for b in piv:
        piv_mask |= 1 << b
    for lead in sorted(piv):
        row = piv[lead]
        c = combo[lead] if combo is not None else 0
        v = row & piv_mask & ((1 << lead) - 1)
        while v:
            b = v.bit_length() - 1
            # rows with smaller pivots are already reduced, so this xor
            # clears bit b and introduces no new pivot bits
            row ^= piv[b]
            if combo is not None:
                c ^= combo[b]
            v = row & piv_mask & ((1 << lead) - 1)
        piv[lead] = row
        if combo is not None:
            combo[lead] = c


@dataclass
class BitMatrix:
    """Rows over a monomial column basis; optionally in reduced echelon form.

    When ``echelon`` is set the rows are sorted by strictly decreasing
    leading bit (i.e. strictly increasing column index of the leading,
    largest monomial) and every pivot column is zero in the other rows.
    """

    basis: MonomialColumnBasis
    rows: list[int]
    echelon: bool = False
    pivots: tuple[int, ...] = ()  # pivot bits, decreasing, when echelon
    tags: tuple | None = None  # one tag per row, for certificates
    combos: tuple[int, ...] | None = None  # per row: original-row bitset

    _piv_index: dict[int, int] | None = field(
        default=None, repr=False, compare=False
    )
    _piv_mask: int | None = field(default=None, repr=False, compare=False)

    @property
    def rank(self) -> int:
        if not self.echelon:
            raise ValueError("rank is only defined on reduced matrices")
        return len(self.rows)

    def pivot_monomials(self) -> list[Monomial]:
        return [self.basis.monomial_at_bit(b) for b in self.pivots]

    def pivot_lookup(self) -> tuple[dict[int, int], int]:
        if self._piv_index is None:
            self._piv_index = {b: i for i, b in enumerate(self.pivots)}
            mask = 0
            for b in self.pivots:
                mask |= 1 << b
            self._piv_mask = mask
        return self._piv_index, self._piv_mask


def from_polynomials(
    basis: MonomialColumnBasis, polys: Iterable[Polynomial], tags=None
) -> BitMatrix:
    """One row per polynomial; every term must be homogeneous of the
    basis degree with the basis variable count."""
    rows = []
    for f in polys:
        if f.k != basis.k:
            raise DimensionMismatchError(f"polynomial has k={f.k}, basis k={basis.k}")
        rows.append(basis.row_of(f))
    return BitMatrix(basis, rows, tags=tuple(tags) if tags is not None else None)


def reduce(m: BitMatrix, track_certificates: bool = False) -> BitMatrix:
    """Reduced row echelon form in the descending monomial column order."""
    if m.echelon and (not track_certificates or m.combos is not None):
        return m
    if track_certificates:
        piv, combo = echelonize_tracked(m.rows)
        back_substitute(piv, combo)
    else:
        piv = echelonize(m.rows)
        combo = None
        back_substitute(piv)
    leads = sorted(piv, reverse=True)
    return BitMatrix(
        basis=m.basis,
        rows=[piv[b] for b in leads],
        echelon=True,
        pivots=tuple(leads),
        tags=m.tags,
        combos=tuple(combo[b] for b in leads) if combo is not None else None,
    )


def residual(m: BitMatrix, vec: int) -> tuple[int, int]:
    """Reduce vec against a reduced matrix; returns (residual, used-rows
    bitset over m's rows).  vec is in the row space iff residual == 0.

    Each reduced row consists of its pivot bit plus non-pivot bits, so
    every xor clears one pivot bit from vec and introduces none.
    """
    if not m.echelon:
        raise ValueError("matrix must be reduced first")
    piv_index, piv_mask = m.pivot_lookup()
    used = 0
    v = vec
    w = v & piv_mask
    while w:
        i = piv_index[w.bit_length() - 1]
        v ^= m.rows[i]
        used ^= 1 << i
        w = v & piv_mask
    return v, used


def contains(
    m: BitMatrix, v: Polynomial, certificate: bool = False
) -> bool | tuple[bool, tuple | None]:
    """Membership of v in the row space of a reduced matrix.

    With certificate=True also returns the tags (or indices, if the matrix
    carries no tags) of the original generators combining to v, or None if
    v is not in the row space.
    """
    vec = m.basis.row_of(v)
    res, used = residual(m, vec)
    if not certificate:
        return res == 0
    if res != 0:
        return False, None
    if m.combos is not None:
        orig = 0
        i = 0
        u = used
        while u:
            if u & 1:
                orig ^= m.combos[i]
            u >>= 1
            i += 1
        indices = [j for j in range(orig.bit_length()) if (orig >> j) & 1]
    else:
        indices = [j for j in range(used.bit_length()) if (used >> j) & 1]
    if m.tags is not None:
        return True, tuple(m.tags[j] for j in indices)
    return True, tuple(indices)


def non_pivot_monomials(m: BitMatrix) -> list[Monomial]:
    """Column monomials that are not pivots, ascending in the order."""
    if not m.echelon:
        raise ValueError("matrix must be reduced first")
    pivot_bits = set(m.pivots)
    return [
        m.basis.monomial_at_bit(b)
        for b in range(len(m.basis))
        if b not in pivot_bits
    ]
