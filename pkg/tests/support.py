"""Shared generators for the randomized checks."""

from fractions import Fraction
from random import Random

from bsdomino.group import ALPHABET, BsParams
from bsdomino.pam import AffinePiece, UnitSquare
from bsdomino.rationals import Mat2, Vec2


def random_word(rng: Random, max_len: int = 24) -> tuple[str, ...]:
    return tuple(rng.choice(ALPHABET) for _ in range(rng.randint(0, max_len)))


def relator_variants(params: BsParams) -> list[tuple[str, ...]]:
    base = tuple("T" + "a" * params.m + "t" + "A" * params.n)
    inv = tuple("a" * params.n + "T" + "A" * params.m + "t")
    variants = []
    for word in (base, inv):
        for cut in range(len(word)):
            variants.append(word[cut:] + word[:cut])
    variants.extend([("a", "A"), ("A", "a"), ("t", "T"), ("T", "t")])
    return variants


def insert_relator(rng: Random, params: BsParams, word) -> tuple[str, ...]:
    word = tuple(word)
    piece = rng.choice(relator_variants(params))
    pos = rng.randint(0, len(word))
    return word[:pos] + piece + word[pos:]


def random_rational(rng: Random, span: int = 12, max_den: int = 10) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_piece(rng: Random, span: int = 2) -> AffinePiece:
    square = UnitSquare(rng.randint(-span, span), rng.randint(-span, span))
    matrix = Mat2(
        random_rational(rng, 4, 4),
        random_rational(rng, 4, 4),
        random_rational(rng, 4, 4),
        random_rational(rng, 4, 4),
    )
    offset = Vec2(random_rational(rng, 4, 4), random_rational(rng, 4, 4))
    return AffinePiece(square, matrix, offset)


def random_point_in(rng: Random, square: UnitSquare, max_den: int = 16) -> Vec2:
    den1 = rng.randint(1, max_den)
    den2 = rng.randint(1, max_den)
    return Vec2(
        square.c1 + Fraction(rng.randint(0, den1 - 1), den1),
        square.c2 + Fraction(rng.randint(0, den2 - 1), den2),
    )
