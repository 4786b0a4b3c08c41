"""The solver: hit subspaces, QP_k dimensions and admissible bases, the
equivalence relations, strict-inadmissibility testing, and the induced
Kameko map on quotients.

Admissible basis extraction works by row-reducing the span of the
Sq^(2^j)-images under the descending weight-then-sigma column order: a
monomial is inadmissible exactly when it is the leading term of a hit
element, i.e. a pivot column; the admissible monomials are the non-pivot
columns.

For speed the elimination pre-marks every monomial whose weight vector is
smaller than the minimal spike's as hit (Singer's criterion) and masks
those columns out of the generator rows.  Since those elementary vectors
lie in the hit subspace anyway, the reduced matrix is the same unique
reduced echelon basis the unfiltered computation produces; the acceptance
suite checks both facts against filter-free eliminations.
"""

from __future__ import annotations

import os
import struct
import warnings
from dataclasses import dataclass
from pathlib import Path

from filelock import FileLock

from .errors import InvariantViolationError, NoSpikeError
from .homomorphisms import kameko_down_poly
from .invariants import (
    WeightVector,
    minimal_spike,
    mu,
    singer_is_hit,
    weight_tuple,
    weight_vector,
)
from .linalg_f2 import (
    BitMatrix,
    MonomialColumnBasis,
    back_substitute,
    echelonize,
    non_pivot_monomials,
    residual,
)
from .poly_core import Monomial, Polynomial
from .steenrod import _degree_monomials as _degree_exps
from .steenrod import _sq_exps, a_s_plus_images, generator_powers

CACHE_MAGIC = b"HITF2"
CACHE_VERSION = 1
COLUMN_ORDER_ID = 1  # omega-sigma-left-lex-v1, descending


class CacheCorruptionWarning(UserWarning):
    pass


@dataclass(frozen=True)
class DegreeComponentReport:
    """Everything about one degree component (QP_k)_n."""

    k: int
    n: int
    dim_p: int
    rank_hit: int
    dim_qp: int
    basis: tuple[Monomial, ...]  # admissible monomials, ascending
    basis_zero: tuple[Monomial, ...]  # some exponent zero
    basis_plus: tuple[Monomial, ...]  # all exponents positive
    weight_strata: dict[WeightVector, int]


@dataclass(frozen=True)
class KamekoReport:
    """The induced down map (QP_k)_{2m+k} -> (QP_k)_m in admissible bases."""

    k: int
    m: int
    n: int  # 2m + k
    domain_basis: tuple[Monomial, ...]
    codomain_basis: tuple[Monomial, ...]
    rows: tuple[int, ...]  # row i: image of domain_basis[i]; bit j <-> codomain_basis[j]
    rank: int
    kernel_dim: int


class HitEngine:
    """Memoizing solver; optionally backed by an on-disk matrix cache."""

    def __init__(self, cache_dir: str | Path | None = None, singer_filter: bool = True):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self.singer_filter = singer_filter
        self._bases: dict[tuple[int, int], MonomialColumnBasis] = {}
        self._matrices: dict[tuple[int, int], BitMatrix] = {}
        self._strict_pivots: dict[tuple[int, int, int], frozenset[int]] = {}

    def column_basis(self, k: int, n: int) -> MonomialColumnBasis:
        key = (k, n)
        if key not in self._bases:
            self._bases[key] = MonomialColumnBasis(k, n)
        return self._bases[key]

    # -- hit subspace ------------------------------------------------------

    def hit_subspace(
        self, k: int, n: int, singer_filter: bool | None = None
    ) -> BitMatrix:
        """Reduced echelon basis of the hit elements of degree n in k vars.

        Passing singer_filter explicitly forces a fresh computation that
        bypasses both the memo and the disk cache; the result is the same
        unique reduced form either way.
        """
        if n < 0:
            raise ValueError("n must be non-negative")
        if singer_filter is not None:
            return self._compute_hit_subspace(k, n, singer_filter)
        key = (k, n)
        if key in self._matrices:
            return self._matrices[key]
        cached = self._load_cached(k, n)
        if cached is not None:
            self._matrices[key] = cached
            return cached
        matrix = self._compute_hit_subspace(k, n, self.singer_filter)
        self._matrices[key] = matrix
        self._store_cached(matrix)
        return matrix

    def _compute_hit_subspace(self, k: int, n: int, singer_filter: bool) -> BitMatrix:
        basis = self.column_basis(k, n)
        if n == 0:
            return BitMatrix(basis, [], echelon=True, pivots=())
        size = len(basis)

        live_mask = (1 << size) - 1
        piv: dict[int, int] = {}
        if singer_filter and mu(n).s <= k:
            zw = weight_tuple(minimal_spike(k, n).exps)
            for bit in range(size):
                if weight_tuple(basis.monomial_at_bit(bit).exps) < zw:
                    piv[bit] = 1 << bit
                    live_mask ^= 1 << bit

        bit_of = basis._bit_of
        for p in generator_powers(n):
            if 2 * p > n:
                continue  # Sq^p vanishes on degrees below p
            for exps in _degree_exps(k, n - p):
                row = 0
                for term in _sq_exps(p, exps):
                    row ^= 1 << bit_of[term]
                row &= live_mask
                while row:
                    lead = row.bit_length() - 1
                    q = piv.get(lead)
                    if q is None:
                        piv[lead] = row
                        break
                    row ^= q
        back_substitute(piv)
        leads = sorted(piv, reverse=True)
        return BitMatrix(
            basis,
            [piv[b] for b in leads],
            echelon=True,
            pivots=tuple(leads),
        )

    # -- reports -----------------------------------------------------------

    def qp_report(self, k: int, n: int) -> DegreeComponentReport:
        matrix = self.hit_subspace(k, n)
        basis = non_pivot_monomials(matrix)
        strata: dict[WeightVector, int] = {}
        for m in basis:
            w = weight_vector(m)
            if 0 in w.entries:
                # admissible monomials have no internal weight zeros; one
                # here means the elimination produced a wrong basis
                raise InvariantViolationError(
                    f"admissible monomial {m} has weight {w} with an internal zero"
                )
            strata[w] = strata.get(w, 0) + 1
        return DegreeComponentReport(
            k=k,
            n=n,
            dim_p=len(matrix.basis),
            rank_hit=matrix.rank,
            dim_qp=len(basis),
            basis=tuple(basis),
            basis_zero=tuple(m for m in basis if not m.all_positive()),
            basis_plus=tuple(m for m in basis if m.all_positive()),
            weight_strata=strata,
        )

    def dim_qp(self, k: int, n: int) -> int:
        return len(self.column_basis(k, n)) - self.hit_subspace(k, n).rank

    # -- membership and equivalences ----------------------------------------

    def is_hit(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        if not f.is_homogeneous():
            raise ValueError("is_hit needs a homogeneous polynomial")
        n = f.degree()
        if n == 0:
            return False
        if len(f.terms) == 1:
            try:
                if singer_is_hit(next(iter(f.terms))):
                    return True
            except NoSpikeError:
                pass
        matrix = self.hit_subspace(f.k, n)
        res, _ = residual(matrix, matrix.basis.row_of(f))
        return res == 0

    def equiv(self, f: Polynomial, g: Polynomial) -> bool:
        if f.degree() != g.degree() and not (f.is_zero() or g.is_zero()):
            raise ValueError("equiv needs polynomials of the same degree")
        return self.is_hit(f + g)

    def equiv_mod(
        self, f: Polynomial, g: Polynomial, s: int, omega: WeightVector
    ) -> bool:
        """Whether f - g falls into (span of Sq^u, u < 2^s) + monomials of
        weight below omega, all in degree deg(omega)."""
        n = omega.degree()
        for h in (f, g):
            if not h.is_zero() and (not h.is_homogeneous() or h.degree() != n):
                raise ValueError(f"degree mismatch: expected homogeneous of degree {n}")
        target = f + g
        if target.is_zero():
            return True
        basis = self.column_basis(target.k, n)
        low_mask = 0
        for bit in range(len(basis)):
            if weight_tuple(basis.monomial_at_bit(bit).exps) < omega.entries:
                low_mask |= 1 << bit
        keep = ~low_mask
        piv = echelonize(
            basis.row_of(img) & keep for img in a_s_plus_images(target.k, n, s)
        )
        v = basis.row_of(target) & keep
        while v:
            lead = v.bit_length() - 1
            q = piv.get(lead)
            if q is None:
                return False
            v ^= q
        return True

    def is_strictly_inadmissible(self, x: Monomial) -> bool:
        """x minus a sum of strictly smaller monomials lies in the span of
        the Sq^u with u < 2^s, where s is the top nonzero weight index.

        Equivalently: x is the leading term of some element of that span,
        i.e. its column is a pivot of the span's echelon form.
        """
        n = x.degree()
        if n < 1:
            raise ValueError("degree must be at least 1")
        w = weight_tuple(x.exps)
        s = len(w)
        key = (x.k, n, s)
        if key not in self._strict_pivots:
            basis = self.column_basis(x.k, n)
            piv = echelonize(
                basis.row_of(img) for img in a_s_plus_images(x.k, n, s)
            )
            self._strict_pivots[key] = frozenset(piv)
        return self.column_basis(x.k, n).bit_of(x) in self._strict_pivots[key]

    # -- Kameko map ----------------------------------------------------------

    def class_coordinates(self, f: Polynomial) -> tuple[int, ...]:
        """Coordinates of [f] in the ascending admissible basis of its degree."""
        if not f.is_homogeneous():
            raise ValueError("need a homogeneous polynomial")
        n = max(f.degree(), 0)
        matrix = self.hit_subspace(f.k, n)
        report_basis = non_pivot_monomials(matrix)
        index_of = {m.exps: i for i, m in enumerate(report_basis)}
        res, _ = residual(matrix, matrix.basis.row_of(f))
        coords = [0] * len(report_basis)
        while res:
            b = res.bit_length() - 1
            res ^= 1 << b
            coords[index_of[matrix.basis.monomial_at_bit(b).exps]] = 1
        return tuple(coords)

    def kameko_matrix(self, k: int, m: int) -> KamekoReport:
        n = 2 * m + k
        dom = self.qp_report(k, n)
        cod = self.qp_report(k, m)
        hit_m = self.hit_subspace(k, m)
        basis_m = self.column_basis(k, m)
        cod_index = {mono.exps: i for i, mono in enumerate(cod.basis)}
        rows = []
        for b in dom.basis:
            y = kameko_down_poly(Polynomial.from_monomial(b))
            if y.is_zero():
                rows.append(0)
                continue
            res, _ = residual(hit_m, basis_m.row_of(y))
            row = 0
            while res:
                bit = res.bit_length() - 1
                res ^= 1 << bit
                row |= 1 << cod_index[basis_m.monomial_at_bit(bit).exps]
            rows.append(row)
        rank = len(echelonize(rows))
        return KamekoReport(
            k=k,
            m=m,
            n=n,
            domain_basis=dom.basis,
            codomain_basis=cod.basis,
            rows=tuple(rows),
            rank=rank,
            kernel_dim=dom.dim_qp - rank,
        )

    # -- disk cache ----------------------------------------------------------

    def _cache_path(self, k: int, n: int) -> Path | None:
        if self.cache_dir is None:
            return None
        return self.cache_dir / f"k{k}" / f"n{n}.hitf2"

    def _load_cached(self, k: int, n: int) -> BitMatrix | None:
        path = self._cache_path(k, n)
        if path is None or not path.exists():
            return None
        try:
            blob = path.read_bytes()
            return _decode_matrix(blob, self.column_basis(k, n))
        except Exception as exc:  # corrupt cache: recompute
            warnings.warn(
                f"ignoring corrupt cache file {path}: {exc}", CacheCorruptionWarning
            )
            return None

    def _store_cached(self, matrix: BitMatrix) -> None:
        path = self._cache_path(matrix.basis.k, matrix.basis.n)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        blob = _encode_matrix(matrix)
        with FileLock(str(path) + ".lock"):
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(blob)
            os.replace(tmp, path)


def _encode_matrix(matrix: BitMatrix) -> bytes:
    basis = matrix.basis
    words = (len(basis) + 63) // 64
    head = CACHE_MAGIC + struct.pack(
        "<IBIIQ", CACHE_VERSION, basis.k, basis.n, COLUMN_ORDER_ID, len(matrix.rows)
    )
    body = b"".join(r.to_bytes(words * 8, "little") for r in matrix.rows)
    return head + body


def _decode_matrix(blob: bytes, basis: MonomialColumnBasis) -> BitMatrix:
    if blob[:5] != CACHE_MAGIC:
        raise ValueError("bad magic")
    version, k, n, order_id, count = struct.unpack("<IBIIQ", blob[5:26])
    if version != CACHE_VERSION:
        raise ValueError(f"unsupported version {version}")
    if (k, n) != (basis.k, basis.n):
        raise ValueError(f"cache is for k={k}, n={n}")
    if order_id != COLUMN_ORDER_ID:
        raise ValueError(f"unknown column order {order_id}")
    words = (len(basis) + 63) // 64
    expected = 26 + count * words * 8
    if len(blob) != expected:
        raise ValueError(f"truncated: {len(blob)} bytes, expected {expected}")
    rows = []
    for i in range(count):
        start = 26 + i * words * 8
        rows.append(int.from_bytes(blob[start : start + words * 8], "little"))
    leads = []
    for r in rows:
        if r == 0 or r.bit_length() > len(basis):
            raise ValueError("row outside column range")
        leads.append(r.bit_length() - 1)
    if any(a >= b for a, b in zip(leads[1:], leads)):
        raise ValueError("rows are not in echelon order")
    return BitMatrix(basis, rows, echelon=True, pivots=tuple(leads))


DEFAULT_ENGINE = HitEngine()


def hit_subspace(k: int, n: int) -> BitMatrix:
    return DEFAULT_ENGINE.hit_subspace(k, n)


def qp_report(k: int, n: int) -> DegreeComponentReport:
    return DEFAULT_ENGINE.qp_report(k, n)


def dim_qp(k: int, n: int) -> int:
    return DEFAULT_ENGINE.dim_qp(k, n)


def is_hit(f: Polynomial) -> bool:
    return DEFAULT_ENGINE.is_hit(f)


def equiv(f: Polynomial, g: Polynomial) -> bool:
    return DEFAULT_ENGINE.equiv(f, g)


def is_strictly_inadmissible(x: Monomial) -> bool:
    return DEFAULT_ENGINE.is_strictly_inadmissible(x)


def kameko_matrix(k: int, m: int) -> KamekoReport:
    return DEFAULT_ENGINE.kameko_matrix(k, m)
