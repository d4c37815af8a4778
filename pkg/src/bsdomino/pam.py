"""Rational piecewise affine maps on unions of integer unit squares.

The domain U is a union of unit squares with integer corners, each
carrying an affine map x -> M x + b with exact rational entries.  Shared
edges get a deterministic owner: a square owns its closed lower/left
edges and its open upper/right edges, except that an upper/right edge on
the outer boundary of U (no square on the other side) stays closed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import OutsideDomain, ParseError
from .group import BsParams
from .rationals import Mat2, Vec2, as_rat, fmt_rat, mat2, vec2


@dataclass(frozen=True)
class UnitSquare:
    """The square [c1, c1+1] x [c2, c2+1] with integer corner (c1, c2)."""

    c1: int
    c2: int

    def contains_closed(self, x: Vec2) -> bool:
        return (
            self.c1 <= x.x1 <= self.c1 + 1 and self.c2 <= x.x2 <= self.c2 + 1
        )

    def __str__(self) -> str:
        return f"({self.c1},{self.c2})"


@dataclass(frozen=True)
class AffinePiece:
    square: UnitSquare
    matrix: Mat2
    offset: Vec2

    def apply(self, x: Vec2) -> Vec2:
        return self.matrix.apply(x) + self.offset


@dataclass(frozen=True)
class PiecewiseAffineMap:
    pieces: tuple[AffinePiece, ...]
    _corners: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("a piecewise affine map needs at least one piece")
        corners: dict[tuple[int, int], int] = {}
        clashes = []
        for idx, piece in enumerate(self.pieces):
            key = (piece.square.c1, piece.square.c2)
            if key in corners:
                clashes.append(key)
            else:
                corners[key] = idx
        if clashes:
            squares = ", ".join(f"({a},{b})" for a, b in sorted(clashes))
            raise ValueError(f"overlapping squares in partition: {squares}")
        object.__setattr__(self, "_corners", corners)

    def piece_at_corner(self, c1: int, c2: int) -> int | None:
        return self._corners.get((c1, c2))


def locate_piece(f: PiecewiseAffineMap, x: Vec2) -> int | None:
    """Index of the square owning x, or None when x is outside U.

    The half-open owner (floor(x1), floor(x2)) wins when that square is
    in the partition; on integer coordinates the square below/left takes
    over only where the half-open owner is absent, which is exactly the
    closed-outer-boundary rule.
    """
    f1 = x.x1.numerator // x.x1.denominator
    f2 = x.x2.numerator // x.x2.denominator
    cands1 = [f1] + ([f1 - 1] if x.x1 == f1 else [])
    cands2 = [f2] + ([f2 - 1] if x.x2 == f2 else [])
    for c1 in cands1:
        for c2 in cands2:
            idx = f.piece_at_corner(c1, c2)
            if idx is not None:
                return idx
    return None


def evaluate(f: PiecewiseAffineMap, x: Vec2) -> Vec2:
    idx = locate_piece(f, x)
    if idx is None:
        raise OutsideDomain(f"{x} is not in the domain")
    return f.pieces[idx].apply(x)


@dataclass(frozen=True)
class EscapedAfter:
    steps: int


@dataclass(frozen=True)
class AliveUpTo:
    steps: int


@dataclass(frozen=True)
class CycleDetected:
    """States j and k coincide: preperiod j, period k - j."""

    j: int
    k: int


OrbitOutcome = EscapedAfter | AliveUpTo | CycleDetected


@dataclass(frozen=True)
class OrbitReport:
    start: Vec2
    states: tuple[tuple[int, Vec2], ...]  # (piece index, point), in-domain only
    outcome: OrbitOutcome


def orbit(f: PiecewiseAffineMap, x: Vec2, max_steps: int) -> OrbitReport:
    """Iterate f from x until escape, an exact state repeat, or max_steps."""
    idx = locate_piece(f, x)
    if idx is None:
        raise OutsideDomain(f"start point {x} is not in the domain")
    states: list[tuple[int, Vec2]] = [(idx, x)]
    seen: dict[Vec2, int] = {x: 0}
    current = x
    for step in range(1, max_steps + 1):
        current = f.pieces[states[-1][0]].apply(current)
        if current in seen:
            return OrbitReport(x, tuple(states), CycleDetected(seen[current], step))
        nxt = locate_piece(f, current)
        if nxt is None:
            return OrbitReport(x, tuple(states), EscapedAfter(step))
        states.append((nxt, current))
        seen[current] = step
    return OrbitReport(x, tuple(states), AliveUpTo(max_steps))


# ---------------------------------------------------------------------------
# map-spec files (JSON)

def map_from_dict(data: dict) -> tuple[BsParams, PiecewiseAffineMap]:
    try:
        params = BsParams(int(data["m"]), int(data["n"]))
        raw_pieces = data["pieces"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad map spec: {exc}") from None
    if not isinstance(raw_pieces, list) or not raw_pieces:
        raise ParseError("map spec needs a nonempty 'pieces' list")
    pieces = []
    for entry in raw_pieces:
        try:
            c1, c2 = entry["square"]
            matrix = mat2(entry["M"])
            offset = vec2(*entry["b"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad piece {entry!r}: {exc}") from None
        pieces.append(AffinePiece(UnitSquare(int(c1), int(c2)), matrix, offset))
    try:
        pam = PiecewiseAffineMap(tuple(pieces))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return params, pam


def map_to_dict(params: BsParams, f: PiecewiseAffineMap) -> dict:
    return {
        "m": params.m,
        "n": params.n,
        "pieces": [
            {
                "square": [p.square.c1, p.square.c2],
                "M": [
                    [fmt_rat(p.matrix.a11), fmt_rat(p.matrix.a12)],
                    [fmt_rat(p.matrix.a21), fmt_rat(p.matrix.a22)],
                ],
                "b": [fmt_rat(p.offset.x1), fmt_rat(p.offset.x2)],
            }
            for p in f.pieces
        ],
    }


def load_map(path: str) -> tuple[BsParams, PiecewiseAffineMap]:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
    return map_from_dict(data)


def parse_point(text: str) -> Vec2:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"expected 'x1,x2', got {text!r}")
    return Vec2(as_rat(parts[0]), as_rat(parts[1]))
