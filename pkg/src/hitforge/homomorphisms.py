"""Structural maps between P_{k-1} and P_k and the closed-form bases.

The substitution family is indexed by pairs (i;I) with i < i_1 < ... < i_r:
f_i skips the i-th variable, phi_(i;I) lifts a monomial against the
compatibility conditions on its dyadic digits, and p_(i;I) projects back.
Phi assembles candidate generating sets; psi and the Kameko down map move
between degree m and degree 2m+k.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InvariantViolationError
from .invariants import alpha_bit, mu, sort_key
from .poly_core import Monomial, Polynomial, one, variable


@dataclass(frozen=True)
class IndexPair:
    """A pair (i;I) with 1 <= i < i_1 < ... < i_r <= k."""

    i: int
    I: tuple[int, ...]

    def __post_init__(self):
        chain = (self.i,) + self.I
        if self.i < 1:
            raise ValueError(f"base index {self.i} must be positive")
        if any(a >= b for a, b in zip(chain, chain[1:])):
            raise ValueError(f"indices {chain} must be strictly increasing")

    @property
    def r(self) -> int:
        return len(self.I)

    def max_index(self) -> int:
        return self.I[-1] if self.I else self.i

    def __str__(self) -> str:
        return f"({self.i};{','.join(str(j) for j in self.I)})"

    @classmethod
    def parse(cls, text: str) -> "IndexPair":
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        head, _, tail = body.partition(";")
        i = int(head)
        I = tuple(int(t) for t in tail.split(",") if t.strip()) if tail.strip() else ()
        return cls(i, I)


def enumerate_Nk(k: int) -> list[IndexPair]:
    """All pairs (i;I) with indices in 1..k; there are 2^k - 1 of them,
    one per nonempty subset (i = min, I = the rest)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    pairs = []
    for i in range(1, k + 1):
        for r in range(0, k - i + 1):
            for I in combinations(range(i + 1, k + 1), r):
                pairs.append(IndexPair(i, I))
    return sorted(pairs, key=lambda p: (p.i, p.I))


def f_sub(i: int, y: Polynomial | Monomial) -> Polynomial:
    """The algebra map P_{k-1} -> P_k skipping variable i: x_j goes to x_j
    below i and to x_{j+1} from i on."""
    if isinstance(y, Monomial):
        y = Polynomial.from_monomial(y)
    k = y.k + 1
    if not 1 <= i <= k:
        raise IndexError(f"index {i} outside 1..{k}")
    terms = []
    for m in y.terms:
        exps = m.exps[: i - 1] + (0,) + m.exps[i - 1 :]
        terms.append(Monomial(k, exps))
    return Polynomial(k, terms)


def compatible_u(pair: IndexPair, x: Monomial) -> int | None:
    """The unique u making x u-compatible with (i;I), or None.

    For r = len(I) > 0 the conditions on the dyadic digits of the shifted
    exponents nu_{i_t - 1}(x) are:
      (i)   nu_{i_1-1} = ... = nu_{i_(u-1)-1} = 2^r - 1,
      (ii)  nu_{i_u-1} > 2^r - 1,
      (iii) bit (r-t) of nu_{i_u-1} is 1 for 1 <= t <= u,
      (iv)  bit (r-t) of nu_{i_t-1} is 1 for u < t <= r.
    """
    r = pair.r
    if r == 0:
        return 1  # convention: always 1-compatible with (i;empty)
    full = (1 << r) - 1
    found = None
    for u in range(1, r + 1):
        nu_u = x.exps[pair.I[u - 1] - 2]  # nu_{i_u - 1}, 0-indexed
        if any(x.exps[pair.I[t - 1] - 2] != full for t in range(1, u)):
            continue
        if nu_u <= full:
            continue
        if any(alpha_bit(nu_u, r - t) != 1 for t in range(1, u + 1)):
            continue
        if any(
            alpha_bit(x.exps[pair.I[t - 1] - 2], r - t) != 1 for t in range(u + 1, r + 1)
        ):
            continue
        if found is not None:
            raise InvariantViolationError(
                f"{x} is both {found}- and {u}-compatible with {pair}"
            )
        found = u
    return found


def _divisor_exponents(pair: IndexPair, u: int) -> dict[int, int]:
    """Exponents of x_(I,u): 2^(r-1) + ... + 2^(r-u) on x_{i_u} and 2^(r-t)
    on x_{i_t} for t > u."""
    r = pair.r
    if r == 0:
        return {}
    div = {pair.I[u - 1]: (1 << r) - (1 << (r - u))}
    for t in range(u + 1, r + 1):
        div[pair.I[t - 1]] = 1 << (r - t)
    return div


def phi(pair: IndexPair, x: Monomial) -> Polynomial:
    """phi_(i;I)(x) in P_k for a monomial x in P_{k-1}: the monomial
    x_i^(2^r - 1) f_i(x) / x_(I,u) when some u is compatible, else zero."""
    k = x.k + 1
    if pair.max_index() > k:
        raise IndexError(f"{pair} does not fit in {k} variables")
    u = compatible_u(pair, x)
    if u is None:
        return Polynomial.zero(k)
    r = pair.r
    lifted = list(f_sub(pair.i, x).terms)[0].exps
    exps = list(lifted)
    exps[pair.i - 1] += (1 << r) - 1
    for j, e in _divisor_exponents(pair, u).items():
        exps[j - 1] -= e
        if exps[j - 1] < 0:
            raise InvariantViolationError(
                f"non-exact division in phi_{pair}({x}): variable x{j}"
            )
    return Polynomial.from_monomial(Monomial(k, tuple(exps)))


def p_proj(pair: IndexPair, f: Polynomial | Monomial) -> Polynomial:
    """The algebra map P_k -> P_{k-1}: x_i goes to the sum of x_{s-1} over
    s in I, the others close ranks."""
    if isinstance(f, Monomial):
        f = Polynomial.from_monomial(f)
    k = f.k
    if pair.max_index() > k:
        raise IndexError(f"{pair} does not fit in {k} variables")
    i = pair.i
    image_of_xi = Polynomial(k - 1, [variable(k - 1, s - 1) for s in pair.I])
    out = Polynomial.zero(k - 1)
    for m in f.terms:
        exps = m.exps[: i - 1] + m.exps[i:]
        term = Polynomial.from_monomial(Monomial(k - 1, exps))
        a = m.exps[i - 1]
        if a:
            term = term * image_of_xi.power(a)
        out = out + term
    return out


def phi_families(
    B: list[Monomial],
) -> tuple[list[Monomial], list[Monomial], list[Monomial]]:
    """(Phi^0(B), Phi^+(B), Phi(B)) for a set B of monomials of one degree
    in P_{k-1}; results are deduplicated monomials of P_k in ascending order.

    Phi^0 collects the f_i images; Phi^+ collects the phi_(i;I) images for
    nonempty I, dropping zeros and anything with a zero exponent.
    """
    if not B:
        return [], [], []
    k = B[0].k + 1
    if any(m.k != k - 1 for m in B) or len({m.degree() for m in B}) > 1:
        raise ValueError("B must be monomials of one degree in one ring")
    zero_part: set[Monomial] = set()
    plus_part: set[Monomial] = set()
    for pair in enumerate_Nk(k):
        for m in B:
            if pair.r == 0:
                zero_part.update(f_sub(pair.i, m).terms)
            else:
                img = phi(pair, m)
                for t in img.terms:
                    if t.all_positive():
                        plus_part.add(t)
    zero_list = sorted(zero_part, key=sort_key)
    plus_list = sorted(plus_part, key=sort_key)
    full = sorted(zero_part | plus_part, key=sort_key)
    return zero_list, plus_list, full


def psi_up(y: Polynomial | Monomial) -> Polynomial:
    """y goes to x1...xk * y^2 (a section of the Kameko down map)."""
    if isinstance(y, Monomial):
        y = Polynomial.from_monomial(y)
    return Polynomial(
        y.k, [Monomial(y.k, tuple(2 * e + 1 for e in m.exps)) for m in y.terms]
    )


def kameko_down_poly(f: Polynomial) -> Polynomial:
    """Monomials with all exponents odd map to their halved decrements,
    everything else dies."""
    terms = []
    for m in f.terms:
        if all(e & 1 for e in m.exps):
            terms.append(Monomial(f.k, tuple(e >> 1 for e in m.exps)))
    return Polynomial(f.k, terms)


def linear_sub(g: int, f: Polynomial) -> Polynomial:
    """The GL_k generator substitutions: g == 1 sends x1 to x1 + x2; for
    g >= 2 it swaps x_{g-1} and x_g."""
    k = f.k
    if not 1 <= g <= k:
        raise IndexError(f"generator index {g} outside 1..{k}")
    if g == 1:
        x1_image = Polynomial(k, [variable(k, 1), variable(k, 2)]) if k >= 2 else None
        if x1_image is None:
            return f  # with one variable the substitution degenerates to identity
        out = Polynomial.zero(k)
        for m in f.terms:
            rest = Monomial(k, (0,) + m.exps[1:])
            term = x1_image.power(m.exps[0]).scale_monomial(rest)
            out = out + term
        return out
    out_terms = []
    a, b = g - 2, g - 1
    for m in f.terms:
        exps = list(m.exps)
        exps[a], exps[b] = exps[b], exps[a]
        out_terms.append(Monomial(k, tuple(exps)))
    return Polynomial(k, out_terms)


# -- closed-form bases for k <= 3 -------------------------------------------


def spike_stratum_basis(k: int, s: int) -> list[Monomial]:
    """The admissible monomials of weight (1,...,1) (s ones): products
    x_{i_1} x_{i_2}^2 ... x_{i_{m-1}}^(2^(m-2)) x_{i_m}^(2^s - 2^(m-1))."""
    if s < 1:
        raise ValueError("s must be at least 1")
    out = []
    for m in range(1, min(s, k) + 1):
        for idx in combinations(range(1, k + 1), m):
            exps = [0] * k
            for t, j in enumerate(idx[:-1], start=1):
                exps[j - 1] = 1 << (t - 1)
            exps[idx[-1] - 1] = (1 << s) - (1 << (m - 1))
            out.append(Monomial(k, tuple(exps)))
    return sorted(out, key=sort_key)


def b1_basis(n: int) -> list[Monomial]:
    """Admissible monomials of degree n in one variable: x^(2^u - 1) when
    n has that form, nothing otherwise."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [one(1)]
    if n & (n + 1) == 0:  # n == 2^u - 1
        return [Monomial(1, (n,))]
    return []


def _two_power_split(n: int) -> tuple[int, int] | None:
    """For even n > 0 write n + 2 = 2^(t+u) + 2^t with t >= 1; returns
    (t, u) or None."""
    total = n + 2
    bits = [b for b in range(total.bit_length()) if (total >> b) & 1]
    if len(bits) == 1:
        if bits[0] >= 2:
            return bits[0] - 1, 0
        return None
    if len(bits) == 2 and bits[0] >= 1:
        return bits[0], bits[1] - bits[0]
    return None


def b2_basis(n: int) -> list[Monomial]:
    """Admissible monomials of degree n in two variables (closed form)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [one(2)]
    if n % 2 == 1:
        if n & (n + 1) != 0:
            return []
        u = (n + 1).bit_length() - 1
        if u == 1:
            exps = [(1, 0), (0, 1)]
        else:
            exps = [(n, 0), (0, n), (1, n - 1)]
        return sorted((Monomial(2, e) for e in exps), key=sort_key)
    split = _two_power_split(n)
    if split is None:
        return []
    t, u = split
    lo = (1 << t) - 1
    if u == 0:
        exps = [(lo, lo)]
    elif u == 1:
        hi = (1 << (t + 1)) - 1
        exps = [(hi, lo), (lo, hi)]
    else:
        hi = (1 << (t + u)) - 1
        exps = [(hi, lo), (lo, hi), ((1 << (t + 1)) - 1, hi - lo - 1)]
    return sorted((Monomial(2, e) for e in exps), key=sort_key)


def b3_basis(n: int) -> list[Monomial]:
    """Admissible monomials of degree n in three variables, built by the
    recursion: the iso step halves degrees with mu = 3, odd spike degrees
    add the weight-(1,..,1) stratum to a lifted square, and even degrees
    come from Phi of the two-variable basis (with one exceptional extra
    monomial in degree 8)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [one(3)]
    dec = mu(n)
    if dec.s > 3:
        return []
    if n % 2 == 1:
        if n & (n + 1) == 0:  # n = 2^s - 1
            s = (n + 1).bit_length() - 1
            out = set(spike_stratum_basis(3, s))
            if s >= 2:
                _, _, lifted = phi_families(b2_basis((1 << (s - 1)) - 2))
                out.update(t for m in lifted for t in psi_up(m).terms)
            return sorted(out, key=sort_key)
        # mu(n) == 3: Kameko iso with degree (n - 3) / 2
        assert dec.s == 3
        return sorted(
            (t for m in b3_basis((n - 3) // 2) for t in psi_up(m).terms),
            key=sort_key,
        )
    _, _, out = phi_families(b2_basis(n))
    if n == 8:
        out = out + [Monomial(3, (3, 4, 1))]
    return sorted(set(out), key=sort_key)
