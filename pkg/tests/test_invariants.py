import itertools

import pytest
from hypothesis import given
import hypothesis.strategies as st

from hitforge.errors import NoSpikeError
from hitforge.invariants import (
    WeightVector,
    alpha,
    alpha_bit,
    compare,
    is_spike,
    minimal_spike,
    mu,
    singer_is_hit,
    sort_key,
    weight_vector,
)
from hitforge.poly_core import Monomial
from hitforge.steenrod import monomials_of_degree


def mu_oracle_table(limit):
    """Exhaustive dynamic program: mu[n] = min terms of the form 2^d - 1."""
    INF = float("inf")
    table = [0] + [INF] * limit
    parts = []
    d = 1
    while (1 << d) - 1 <= limit:
        parts.append((1 << d) - 1)
        d += 1
    for n in range(1, limit + 1):
        table[n] = min(table[n - p] + 1 for p in parts if p <= n)
    return table


def test_alpha_examples():
    assert alpha_bit(6, 0) == 0
    assert alpha_bit(6, 1) == 1
    assert alpha(7) == 3
    assert alpha(0) == 0


def test_mu_against_exhaustive_search():
    table = mu_oracle_table(4096)
    for n in range(4097):
        dec = mu(n)
        assert dec.s == table[n], n
        assert n == sum(1 << e for e in dec.d) - dec.s
        if dec.s >= 2:
            strict, last = dec.d[:-1], dec.d[-1]
            assert all(a > b for a, b in zip(strict, strict[1:]))
            assert (strict[-1] if strict else last) >= last
            assert last > 0


def test_mu_examples():
    assert (mu(45).s, mu(45).d) == (3, (5, 3, 3))
    assert (mu(7).s, mu(7).d) == (1, (3,))
    assert (mu(6).s, mu(6).d) == (2, (2, 2))
    assert (mu(0).s, mu(0).d) == (0, ())


def test_mu_decomposition_is_unique():
    # at s = mu(n) exactly one exponent sequence fits
    for n in range(1, 600):
        dec = mu(n)
        total = n + dec.s
        found = []
        for ds in range(1, total.bit_length() + 1):
            rest = total - (1 << ds)
            if rest == 0 and dec.s == 1:
                found.append((ds,))
            elif rest > 0 and alpha(rest) == dec.s - 1 and rest % (1 << ds) == 0:
                bits = tuple(
                    sorted((b for b in range(rest.bit_length()) if rest >> b & 1), reverse=True)
                )
                found.append(bits + (ds,))
        assert found == [dec.d], n


def test_mu_parity_property():
    # n - mu(n) is even and mu((n - s) / 2) <= s
    for n in range(1, 1 << 16):
        s = mu(n).s
        assert (n - s) % 2 == 0
        assert mu((n - s) // 2).s <= s


def test_weight_vector_examples():
    assert weight_vector(Monomial(4, (31, 7, 7, 0))).entries == (3, 3, 3, 1, 1)
    assert weight_vector(Monomial(4, (1, 1, 1, 1))).entries == (4,)
    assert weight_vector(Monomial(4, (3, 4, 1, 7))).entries == (3, 2, 2)


@given(st.lists(st.integers(0, 200), min_size=1, max_size=4))
def test_weight_degree_identity(exps):
    m = Monomial(len(exps), tuple(exps))
    assert weight_vector(m).degree() == m.degree()


def test_weight_vector_printing():
    assert str(weight_vector(Monomial(4, (31, 7, 7, 0)))) == "(3^(3),1^(2))"
    assert str(WeightVector.of((3, 2, 2))) == "(3,2^(2))"
    assert str(WeightVector.of(())) == "()"


def test_weight_comparison_pads_with_zeros():
    assert WeightVector.of((1,)) < WeightVector.of((1, 0, 1))
    assert WeightVector.of((3,)) > WeightVector.of((1, 1))


def test_compare_examples():
    a = Monomial(2, (1, 2))
    b = Monomial(2, (2, 1))
    assert compare(a, b) == -1  # equal weights, sigma decides
    c = Monomial(3, (1, 1, 1))
    d = Monomial(3, (0, 1, 2))  # weight (1,1) < (3)
    assert compare(d, c) == -1
    basis = sorted(
        [Monomial(2, (3, 0)), Monomial(2, (1, 2)), Monomial(2, (0, 3))], key=sort_key
    )
    assert basis == [Monomial(2, (0, 3)), Monomial(2, (1, 2)), Monomial(2, (3, 0))]


def test_compare_is_strict_total_order():
    component = list(monomials_of_degree(3, 5))
    for x, y in itertools.product(component, repeat=2):
        cxy, cyx = compare(x, y), compare(y, x)
        assert cxy == -cyx
        assert (cxy == 0) == (x == y)
    import random

    rng = random.Random(7)
    for _ in range(300):
        x, y, z = (rng.choice(component) for _ in range(3))
        if compare(x, y) <= 0 and compare(y, z) <= 0:
            assert compare(x, z) <= 0


def test_minimal_spike_examples():
    assert minimal_spike(4, 45) == Monomial(4, (31, 7, 7, 0))
    assert minimal_spike(4, 13) == Monomial(4, (7, 3, 3, 0))
    assert minimal_spike(2, 3) == Monomial(2, (3, 0))
    with pytest.raises(NoSpikeError):
        minimal_spike(2, 5)  # mu(5) = 3


def test_minimal_spike_weight_is_minimal_among_spikes():
    # the returned representative has weakly decreasing exponents and its
    # weight vector is the minimum over all spikes of the degree
    for k, n in [(2, 6), (3, 13), (4, 13), (4, 17), (3, 21), (4, 24), (4, 33)]:
        z = minimal_spike(k, n)
        assert is_spike(z) and z.degree() == n
        assert tuple(sorted(z.exps, reverse=True)) == z.exps
        zw = weight_vector(z)
        for m in monomials_of_degree(k, n):
            if is_spike(m):
                assert zw <= weight_vector(m)


def test_singer_filter_examples():
    assert singer_is_hit(Monomial(4, (1, 1, 5, 6)))  # (3,1,2) < (3,3,1)
    assert not singer_is_hit(minimal_spike(4, 45))
    assert not singer_is_hit(Monomial(4, (7, 3, 3, 0)))  # spike seen in k=4
    with pytest.raises(NoSpikeError):
        singer_is_hit(Monomial(2, (2, 3)))  # degree 5 has mu = 3 > 2
