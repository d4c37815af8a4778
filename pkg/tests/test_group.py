from fractions import Fraction
from random import Random

import pytest

from bsdomino.errors import ParseError
from bsdomino.group import (
    BsParams,
    IDENTITY_ELEMENT,
    alpha,
    beta,
    britton_reduce,
    compose_alpha_check,
    contribution,
    element_from_text,
    inverse,
    invert_word,
    lambda_val,
    multiply,
    parse_word,
    phi,
    word_to_text,
)
from support import insert_relator, random_word

WITNESS_32 = "taT a2 t A T A-2"
WITNESS_ALL = "taT at A T A"


def test_parse_word_syntax():
    assert parse_word("taT a2 t A T A-2") == tuple("taTaatATAA")
    assert parse_word("") == ()
    assert parse_word("  a3  T2 ") == tuple("aaaTT")
    assert parse_word("a-2") == ("A", "A")
    assert parse_word("A2") == ("A", "A")
    assert parse_word("t0") == ()


def test_parse_word_rejects_garbage():
    with pytest.raises(ParseError):
        parse_word("a b")
    with pytest.raises(ParseError):
        parse_word("a-")


def test_word_text_round_trip():
    rng = Random(11)
    for _ in range(200):
        word = random_word(rng)
        assert parse_word(word_to_text(word)) == word


def test_contribution():
    assert contribution((), "a") == 0
    assert contribution(parse_word("a a A"), "a") == 1
    assert contribution(parse_word(WITNESS_32), "t") == 0


def test_beta():
    assert beta(()) == 0
    assert beta(("t",)) == -1
    assert beta(parse_word("T T a t")) == 1


def test_alpha_examples():
    assert alpha(BsParams(5, 7), ()) == 0
    assert alpha(BsParams(2, 3), ("a",)) == 1
    assert alpha(BsParams(2, 3), parse_word("ta")) == Fraction(2, 3)


def test_alpha_composition_examples():
    p = BsParams(2, 3)
    assert compose_alpha_check(p, (), ("a",))
    assert compose_alpha_check(p, ("t",), ("a",))
    assert alpha(p, parse_word("ta")) == 0 + Fraction(2, 3) * 1


def test_alpha_composition_random():
    rng = Random(5)
    p = BsParams(3, 2)
    for _ in range(500):
        u = tuple(rng.choice("aAtT") for _ in range(20))
        v = tuple(rng.choice("aAtT") for _ in range(20))
        assert compose_alpha_check(p, u, v)


def test_beta_is_a_homomorphism():
    rng = Random(6)
    for _ in range(300):
        u, v = random_word(rng), random_word(rng)
        assert beta(u + v) == beta(u) + beta(v)


def test_witness_words_map_to_origin():
    assert phi(BsParams(3, 2), parse_word(WITNESS_32)) == (0, 0)
    for m, n in [(2, 3), (3, 2), (2, 2), (3, 5)]:
        assert phi(BsParams(m, n), parse_word(WITNESS_ALL)) == (0, 0)
    assert phi(BsParams(4, 9), ()) == (0, 0)


def test_lambda_examples():
    p = BsParams(2, 3)
    assert lambda_val(p, ()) == 0
    assert lambda_val(p, ("a",)) == Fraction(1, 2)
    assert lambda_val(p, parse_word("at")) == Fraction(3, 4)


def test_lambda_step_identities():
    rng = Random(7)
    for m, n in [(2, 3), (3, 2), (1, 2), (2, 2)]:
        p = BsParams(m, n)
        for _ in range(200):
            w = random_word(rng)
            lam = lambda_val(p, w)
            assert lambda_val(p, w + ("a",)) == lam + Fraction(1, m)
            assert lambda_val(p, w + ("t",)) == Fraction(n, m) * lam


def test_britton_reduce_examples():
    for m, n in [(2, 3), (3, 2), (1, 4)]:
        p = BsParams(m, n)
        relator_side = britton_reduce(p, ("T",) + ("a",) * m + ("t",))
        assert relator_side == britton_reduce(p, ("a",) * n)
    p = BsParams(2, 3)
    assert britton_reduce(p, ("a", "A")) == IDENTITY_ELEMENT
    nontrivial = britton_reduce(BsParams(3, 2), parse_word(WITNESS_32))
    assert not nontrivial.is_identity()
    assert phi(BsParams(3, 2), nontrivial) == (0, 0)


def test_britton_preserves_phi():
    rng = Random(8)
    for m, n in [(2, 3), (3, 2), (2, 2)]:
        p = BsParams(m, n)
        for _ in range(300):
            w = random_word(rng)
            assert phi(p, britton_reduce(p, w)) == phi(p, w)


def test_relator_insertion_fixes_canonical_form():
    rng = Random(9)
    for m, n in [(2, 3), (3, 2), (1, 2), (2, 2)]:
        p = BsParams(m, n)
        for _ in range(500):
            w = random_word(rng)
            padded = insert_relator(rng, p, w)
            assert britton_reduce(p, padded) == britton_reduce(p, w)


def test_canonical_equality_matches_word_problem():
    # u and v name the same element exactly when u v^-1 reduces to identity
    rng = Random(10)
    p = BsParams(2, 3)
    for _ in range(400):
        u, v = random_word(rng, 14), random_word(rng, 14)
        same_form = britton_reduce(p, u) == britton_reduce(p, v)
        trivial_quotient = britton_reduce(p, u + invert_word(v)).is_identity()
        assert same_form == trivial_quotient


def test_multiply_and_inverse_laws():
    rng = Random(12)
    p = BsParams(2, 3)
    for _ in range(300):
        g = britton_reduce(p, random_word(rng, 14))
        h = britton_reduce(p, random_word(rng, 14))
        k = britton_reduce(p, random_word(rng, 14))
        assert multiply(p, g, IDENTITY_ELEMENT) == g
        assert multiply(p, IDENTITY_ELEMENT, g) == g
        assert multiply(p, g, inverse(p, g)) == IDENTITY_ELEMENT
        assert multiply(p, multiply(p, g, h), k) == multiply(p, g, multiply(p, h, k))


def test_multiply_relator_slide():
    p = BsParams(2, 3)
    product = multiply(p, element_from_text(p, "a2"), element_from_text(p, "t"))
    assert product == element_from_text(p, "t a3")


def test_element_word_round_trip():
    rng = Random(13)
    p = BsParams(3, 2)
    for _ in range(200):
        g = britton_reduce(p, random_word(rng))
        assert britton_reduce(p, g.to_word()) == g
        assert element_from_text(p, g.to_text()) == g


def test_bad_params_rejected():
    with pytest.raises(ValueError):
        BsParams(0, 3)
    with pytest.raises(ValueError):
        BsParams(2, -1)
