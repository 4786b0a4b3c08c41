import random

import pytest

from hitforge.errors import InvariantViolationError
from hitforge.homomorphisms import (
    IndexPair,
    b1_basis,
    b2_basis,
    b3_basis,
    compatible_u,
    enumerate_Nk,
    f_sub,
    kameko_down_poly,
    linear_sub,
    p_proj,
    phi,
    phi_families,
    psi_up,
    spike_stratum_basis,
)
from hitforge.invariants import sort_key
from hitforge.poly_core import Monomial, Polynomial, parse_polynomial
from hitforge.steenrod import monomials_of_degree, sq


def poly(text, k=None):
    return parse_polynomial(text, k)


def test_index_pair_validation_and_text():
    pair = IndexPair(1, (2, 3, 4))
    assert pair.r == 3 and str(pair) == "(1;2,3,4)"
    assert IndexPair.parse("(2;)") == IndexPair(2, ())
    assert IndexPair.parse("(1;2,4)") == IndexPair(1, (2, 4))
    with pytest.raises(ValueError):
        IndexPair(2, (2,))
    with pytest.raises(ValueError):
        IndexPair(3, (2,))


def test_enumerate_Nk():
    assert [str(p) for p in enumerate_Nk(2)] == ["(1;)", "(1;2)", "(2;)"]
    assert len(enumerate_Nk(1)) == 1
    for k in range(1, 6):
        pairs = enumerate_Nk(k)
        assert len(pairs) == (1 << k) - 1
        assert len(set(pairs)) == len(pairs)


def test_f_sub_examples():
    assert f_sub(2, poly("x2", k=3)) == poly("x3", k=4)
    assert f_sub(1, poly("x1*x2*x3")) == poly("x2*x3*x4")
    rng = random.Random(2)
    for _ in range(50):
        i = rng.randrange(1, 5)
        m = Monomial(3, tuple(rng.randrange(5) for _ in range(3)))
        img = f_sub(i, Polynomial.from_monomial(m))
        (term,) = img.terms
        assert term.exps[i - 1] == 0  # skipped variable never appears


def test_phi_worked_examples():
    pair = IndexPair(1, (2, 3, 4))
    assert phi(pair, Monomial(3, (12, 6, 9))) == poly("x1^7*x2^8*x3^4*x4^8")
    assert phi(pair, Monomial(3, (7, 15, 7))) == poly("x1^7*x2^7*x3^9*x4^6")
    assert phi(pair, Monomial(3, (7, 7, 15))) == poly("x1^7*x2^7*x3^7*x4^8")
    assert compatible_u(pair, Monomial(3, (12, 6, 9))) == 1
    assert compatible_u(pair, Monomial(3, (7, 15, 7))) == 2
    assert compatible_u(pair, Monomial(3, (7, 7, 15))) == 3


def test_phi_empty_I_is_f_i():
    rng = random.Random(3)
    for _ in range(40):
        i = rng.randrange(1, 5)
        m = Monomial(3, tuple(rng.randrange(6) for _ in range(3)))
        assert phi(IndexPair(i, ()), m) == f_sub(i, Polynomial.from_monomial(m))


def test_phi_incompatible_gives_zero():
    # 1-compatibility with (1;(2)) reads nu_1(x) and needs it odd AND > 1
    pair = IndexPair(1, (2,))
    assert phi(pair, Monomial(2, (1, 3))).is_zero()  # nu_1 = 1 fails strictness
    assert phi(pair, Monomial(2, (2, 2))).is_zero()  # nu_1 even
    assert phi(pair, Monomial(2, (3, 1))) == poly("x1*x2^2*x3", k=3)
    assert phi(pair, Monomial(2, (3, 2))) == poly("x1*x2^2*x3^2", k=3)


def test_u_compatibility_unique_exhaustive():
    # at most one u fits, for every pair and every monomial of degree <= 12
    pairs = [p for p in enumerate_Nk(4) if p.r > 0]
    for n in range(1, 13):
        for exps in (m.exps for m in monomials_of_degree(3, n)):
            m = Monomial(3, exps)
            for pair in pairs:
                compatible_u(pair, m)  # raises InvariantViolationError on a double match


def test_p_proj_examples():
    assert p_proj(IndexPair(1, ()), poly("x1", k=4)).is_zero()
    assert p_proj(IndexPair(2, (3, 4)), poly("x2", k=4)) == poly("x2 + x3", k=3)
    assert p_proj(IndexPair(1, (2,)), poly("x3", k=3)) == poly("x2", k=2)


def test_p_proj_commutes_with_steenrod():
    rng = random.Random(4)
    pairs = enumerate_Nk(3)
    for _ in range(60):
        pair = rng.choice(pairs)
        f = Polynomial(
            3,
            [
                Monomial(3, tuple(rng.randrange(4) for _ in range(3)))
                for _ in range(rng.randrange(1, 3))
            ],
        )
        i = rng.randrange(0, 6)
        assert p_proj(pair, sq(i, f)) == sq(i, p_proj(pair, f))


def test_phi_families_examples():
    zero, plus, full = phi_families(b1_basis(1))
    assert {str(m) for m in full} == {"x1", "x2"}
    assert plus == []

    _, plus13, _ = phi_families(b3_basis(13))
    assert len(plus13) == 23
    assert all(m.all_positive() for m in plus13)

    _, plus5, _ = phi_families(b3_basis(5))
    assert {str(m) for m in plus5} == {
        "x1*x2*x3*x4^2",
        "x1*x2*x3^2*x4",
        "x1*x2^2*x3*x4",
    }


def test_phi_images_disjoint_across_pairs():
    # distinct (i;I) give disjoint phi images on an admissible basis
    for k, basis in [(3, b2_basis(6)), (4, b3_basis(45))]:
        images = {}
        for pair in enumerate_Nk(k):
            for m in basis:
                img = phi(pair, m)
                if img.is_zero():
                    continue
                (term,) = img.terms
                assert term not in images, (pair, images[term])
                images[term] = pair
        if k == 4:
            assert len(images) == 105  # 15 pairs, 7 basis monomials, no losses


def test_psi_and_kameko_down():
    assert kameko_down_poly(poly("x1^3*x2^3*x3*x4")) == poly("x1*x2", k=4)
    assert kameko_down_poly(poly("x1^2*x2*x3*x4")).is_zero()
    rng = random.Random(6)
    for _ in range(50):
        k = rng.choice((1, 2, 3, 4))
        y = Polynomial(
            k,
            [
                Monomial(k, tuple(rng.randrange(5) for _ in range(k)))
                for _ in range(rng.randrange(1, 4))
            ],
        )
        assert kameko_down_poly(psi_up(y)) == y
        for m in psi_up(y).terms:
            assert all(e % 2 == 1 for e in m.exps)


def test_linear_sub():
    assert linear_sub(1, poly("x1", k=2)) == poly("x1 + x2")
    assert linear_sub(2, poly("x1*x2^2")) == poly("x1^2*x2")
    rng = random.Random(8)
    for _ in range(40):
        k = 4
        f = Polynomial(
            k,
            [
                Monomial(k, tuple(rng.randrange(4) for _ in range(k)))
                for _ in range(rng.randrange(1, 4))
            ],
        )
        g = rng.randrange(2, k + 1)
        assert linear_sub(g, linear_sub(g, f)) == f  # transpositions square to 1
        assert linear_sub(1, f).degree() == f.degree()
        i = rng.randrange(0, 5)
        gen = rng.randrange(1, k + 1)
        assert linear_sub(gen, sq(i, f)) == sq(i, linear_sub(gen, f))


def test_spike_stratum_basis():
    assert {str(m) for m in spike_stratum_basis(3, 1)} == {"x1", "x2", "x3"}
    b = spike_stratum_basis(3, 2)
    assert len(b) == 6  # three cubes and three x_i x_j^2
    assert {m.degree() for m in b} == {3}
    assert len(spike_stratum_basis(3, 3)) == 7


def test_b1_basis():
    assert b1_basis(7) == [Monomial(1, (7,))]
    assert b1_basis(0) == [Monomial(1, (0,))]
    assert b1_basis(4) == []
    assert b1_basis(31) == [Monomial(1, (31,))]


def test_b2_basis_closed_forms():
    assert [str(m) for m in b2_basis(3)] == ["x2^3", "x1*x2^2", "x1^3"]
    assert b2_basis(5) == []  # mu(5) = 3
    # u = 0 row: the diagonal spikes
    assert [str(m) for m in b2_basis(6)] == ["x1^3*x2^3"]
    assert {str(m) for m in b2_basis(4)} == {"x1^3*x2", "x1*x2^3"}
    assert {str(m) for m in b2_basis(8)} == {"x1^7*x2", "x1*x2^7", "x1^3*x2^5"}
    assert len(b2_basis(0)) == 1


def test_b3_basis_structure():
    assert len(b3_basis(3)) == 7
    b7 = b3_basis(7)
    spike_part = set(spike_stratum_basis(3, 3))
    assert spike_part <= set(b7)
    lifted = {t for m in phi_families(b2_basis(2))[2] for t in psi_up(m).terms}
    assert set(b7) == spike_part | lifted
    assert Monomial(3, (3, 4, 1)) in b3_basis(8)  # the exceptional degree
    assert b3_basis(12) == []  # mu(12) = 4
    assert sorted(b3_basis(13), key=sort_key) == b3_basis(13)


def test_phi_division_always_exact_on_compatibles():
    rng = random.Random(12)
    pairs = [p for p in enumerate_Nk(4) if p.r > 0]
    for _ in range(400):
        m = Monomial(3, tuple(rng.randrange(20) for _ in range(3)))
        for pair in pairs:
            phi(pair, m)  # InvariantViolationError would signal a bug
