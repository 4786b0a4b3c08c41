"""Monomials and F2-polynomials in k variables, with parsing and printing.

Variables are 1-indexed in all I/O (``x1`` is the first variable); the
internal exponent tuples are 0-indexed and never exposed in text form.
Coefficients live in F2, so a polynomial is just a set of monomials and
addition is symmetric difference.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DimensionMismatchError, ExponentOverflowError, ParseError

MAX_EXPONENT = 2**63  # exponents are kept below this, checked not silent


@dataclass(frozen=True)
class Monomial:
    """A monomial x1^e1 * ... * xk^ek, e.g. Monomial(2, (3, 1)) == x1^3*x2."""

    k: int
    exps: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.k <= 8:
            raise DimensionMismatchError(f"variable count {self.k} outside 1..8")
        if len(self.exps) != self.k:
            raise DimensionMismatchError(
                f"exponent tuple {self.exps} has length {len(self.exps)}, expected {self.k}"
            )
        for e in self.exps:
            if e < 0:
                raise ValueError(f"negative exponent in {self.exps}")
            if e >= MAX_EXPONENT:
                raise ExponentOverflowError(f"exponent {e} >= 2**63")

    def degree(self) -> int:
        return sum(self.exps)

    def is_one(self) -> bool:
        return not any(self.exps)

    def all_positive(self) -> bool:
        return all(self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.k != other.k:
            raise DimensionMismatchError(f"cannot multiply k={self.k} by k={other.k}")
        return Monomial(self.k, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other: "Monomial") -> bool:
        return self.k == other.k and all(a <= b for a, b in zip(self.exps, other.exps))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(self.k, tuple(a - b for a, b in zip(self.exps, other.exps)))

    def power(self, e: int) -> "Monomial":
        return Monomial(self.k, tuple(a * e for a in self.exps))

    def __str__(self) -> str:
        if self.is_one():
            return "1"
        parts = []
        for j, e in enumerate(self.exps, start=1):
            if e == 1:
                parts.append(f"x{j}")
            elif e > 1:
                parts.append(f"x{j}^{e}")
        return "*".join(parts)


def one(k: int) -> Monomial:
    return Monomial(k, (0,) * k)


def variable(k: int, j: int) -> Monomial:
    """The monomial x_j (1-indexed) in k variables."""
    if not 1 <= j <= k:
        raise IndexError(f"variable index {j} outside 1..{k}")
    return Monomial(k, tuple(1 if i == j - 1 else 0 for i in range(k)))


def complement_monomial(k: int, J: Iterable[int]) -> Monomial:
    """Product of x_j over j not in J; J uses 1-indexed variable labels."""
    J = set(J)
    for j in J:
        if not 1 <= j <= k:
            raise IndexError(f"index {j} outside 1..{k}")
    return Monomial(k, tuple(0 if j in J else 1 for j in range(1, k + 1)))


class Polynomial:
    """An F2 linear combination of monomials; duplicates cancel to absence."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Iterable[Monomial] = ()):
        seen: set[Monomial] = set()
        for t in terms:
            if t.k != k:
                raise DimensionMismatchError(f"term {t} has k={t.k}, expected {k}")
            if t in seen:
                seen.discard(t)
            else:
                seen.add(t)
        self.k = k
        self.terms: frozenset[Monomial] = frozenset(seen)

    @classmethod
    def from_monomial(cls, m: Monomial) -> "Polynomial":
        return cls(m.k, (m,))

    @classmethod
    def zero(cls, k: int) -> "Polynomial":
        return cls(k, ())

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def sorted_terms(self) -> list[Monomial]:
        # descending sigma-lex, the deterministic print order
        return sorted(self.terms, key=lambda m: m.exps, reverse=True)

    def degree(self) -> int:
        """Max degree over terms; -1 for the zero polynomial."""
        return max((m.degree() for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {m.degree() for m in self.terms}
        return len(degs) <= 1

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.k != other.k:
            raise DimensionMismatchError(f"cannot add k={self.k} and k={other.k}")
        out = Polynomial.zero(self.k)
        out.terms = self.terms ^ other.terms
        return out

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.k != other.k:
            raise DimensionMismatchError(f"cannot multiply k={self.k} and k={other.k}")
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                m = a * b
                if m in acc:
                    acc.discard(m)
                else:
                    acc.add(m)
        out = Polynomial.zero(self.k)
        out.terms = frozenset(acc)
        return out

    def scale_monomial(self, m: Monomial) -> "Polynomial":
        return self * Polynomial.from_monomial(m)

    def power(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        result = Polynomial(self.k, (one(self.k),))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.k == other.k
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.k, self.terms))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(str(m) for m in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Polynomial(k={self.k}, {self})"


_TOKEN = re.compile(r"\s*(x\d+|\^|\*|\+|\(|\)|,|-?\d+)")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            stripped = rest.lstrip()
            if not stripped:
                break
            bad_at = pos + len(rest) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", bad_at)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, tok: str):
        got = self.peek()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", self.pos())
        self.i += 1

    def parse_int(self) -> int:
        tok = self.peek()
        if tok is None or not re.fullmatch(r"-?\d+", tok):
            raise ParseError(f"expected integer, got {tok!r}", self.pos())
        self.i += 1
        value = int(tok)
        if value < 0:
            raise ParseError("negative exponents are not supported", self.pos())
        return value

    def parse_term(self) -> dict[int, int] | tuple[int, ...]:
        tok = self.peek()
        if tok == "(":
            self.take()
            exps = [self.parse_int()]
            while self.peek() == ",":
                self.take()
                exps.append(self.parse_int())
            self.expect(")")
            return tuple(exps)
        factors: dict[int, int] = {}
        if tok is not None and re.fullmatch(r"\d+", tok):
            value = self.parse_int()
            if value not in (0, 1):
                raise ParseError(f"bare constant {value} is not in the grammar", self.pos())
            return {-1: value}  # sentinel: constant 0 or 1
        while True:
            tok = self.peek()
            if tok is None or not tok.startswith("x"):
                raise ParseError(f"expected variable, got {tok!r}", self.pos())
            self.take()
            j = int(tok[1:])
            if j < 1:
                raise ParseError(f"variable index {j} must be >= 1", self.pos())
            e = 1
            if self.peek() == "^":
                self.take()
                e = self.parse_int()
            factors[j] = factors.get(j, 0) + e
            if self.peek() == "*":
                self.take()
                continue
            break
        return factors


def parse_polynomial(text: str, k: int | None = None) -> Polynomial:
    """Parse `+`-separated monomials in x-form or tuple form.

    When k is omitted it is inferred: the largest variable index seen, or
    the tuple length.  Whitespace is insignificant.
    """
    parser = _Parser(text)
    if parser.peek() is None:
        raise ParseError("empty input", 0)
    raw_terms = [parser.parse_term()]
    while parser.peek() == "+":
        parser.take()
        raw_terms.append(parser.parse_term())
    if parser.peek() is not None:
        raise ParseError(f"trailing input {parser.peek()!r}", parser.pos())

    tuple_lens = {len(t) for t in raw_terms if isinstance(t, tuple)}
    if len(tuple_lens) > 1:
        raise ParseError(f"inconsistent tuple lengths {sorted(tuple_lens)}", 0)
    max_index = max(
        (j for t in raw_terms if isinstance(t, dict) for j in t if j > 0), default=0
    )
    inferred = k
    if inferred is None:
        inferred = next(iter(tuple_lens)) if tuple_lens else max_index
    if inferred == 0:
        raise ParseError("cannot infer variable count from constants alone; pass k", 0)
    if tuple_lens and next(iter(tuple_lens)) != inferred:
        raise ParseError(
            f"tuple length {next(iter(tuple_lens))} does not match k={inferred}", 0
        )
    if max_index > inferred:
        raise ParseError(f"variable x{max_index} outside k={inferred}", 0)

    monomials: list[Monomial] = []
    for term in raw_terms:
        if isinstance(term, tuple):
            monomials.append(Monomial(inferred, term))
        elif -1 in term:
            if term[-1] == 1:
                monomials.append(one(inferred))
            # constant 0 contributes nothing
        else:
            exps = [0] * inferred
            for j, e in term.items():
                exps[j - 1] += e
            monomials.append(Monomial(inferred, tuple(exps)))
    return Polynomial(inferred, monomials)


def parse_monomial(text: str, k: int | None = None) -> Monomial:
    poly = parse_polynomial(text, k)
    if len(poly) != 1:
        raise ParseError(f"expected a single monomial, got {len(poly)} terms", 0)
    return next(iter(poly.terms))
