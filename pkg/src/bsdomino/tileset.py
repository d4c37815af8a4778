"""Wang tiles that compute a rational piecewise affine map on BS(m,n).

A tile carries n bottom colors, m top colors (integer 2-vectors, terms of
balanced representations) and two rational error colors left/right.  For
a piece f(x) = M x + b, a scale value lam and a point x in the piece:

    bottom_k = floor((n lam + k) x)    - floor((n lam + k - 1) x)      k = 1..n
    top_k    = floor((m lam + k) f(x)) - floor((m lam + k - 1) f(x))   k = 1..m
    left     = (1/n) f(floor(n lam x))       - (1/m) floor(m lam f(x))
                                             + floor(lam - 1/2) b
    right    = (1/n) f(floor((n lam + n) x)) - (1/m) floor((m lam + m) f(x))
                                             + floor(lam + 1/2) b

Every such tile satisfies the transport equation

    (top_1 + ... + top_m)/m + right = f((bottom_1 + ... + bottom_n)/n) + left

exactly, so an infinite row of tiles moves the balanced representation of
x (bottom) to the one of f(x) (top) with the rounding error flowing
through the left/right colors.

Substituting fractional parts u = {n lam x}, v = {m lam f(x)},
w = {lam - 1/2} into the left formula cancels both lam and x:

    left = -(1/n) M u + (1/m) v + (1/n - 1/2 - w) b

with u, v in [0,1)^2 and w in [0,1), and the same expression bounds
right.  Interval arithmetic over the unit cube therefore gives finite
bounds, and every value lies on the grid (1/q) Z^2 for the common
denominator q = lcm(m, n * den(M), n * den(b)).  That is what makes the
enumerated tileset finite.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import EnumerationTooLarge, OutsidePiece, ParseError
from .group import BsParams
from .balrep import b_k
from .pam import AffinePiece, PiecewiseAffineMap, UnitSquare
from .rationals import (
    IntVec2,
    Vec2,
    as_rat,
    fmt_rat,
    ivec_to_vec2,
    lcm_all,
    mat2,
    vec2,
)

DEFAULT_CANDIDATE_CAP = 5_000_000
CAP_ENV_VAR = "BSDOMINO_MAX_TILES"


class Tile(NamedTuple):
    piece: int
    bottom: tuple[IntVec2, ...]  # n colors
    top: tuple[IntVec2, ...]     # m colors
    left: Vec2
    right: Vec2


def _avg(colors: tuple[IntVec2, ...]) -> Vec2:
    count = len(colors)
    return Vec2(
        Fraction(sum(c[0] for c in colors), count),
        Fraction(sum(c[1] for c in colors), count),
    )


def edge_colors(
    params: BsParams, piece: AffinePiece, lam, x: Vec2, piece_index: int = 0
) -> Tile:
    """Tile of the given piece at scale value lam and point x."""
    lam = as_rat(lam)
    if not piece.square.contains_closed(x):
        raise OutsidePiece(f"{x} is not in square {piece.square}")
    m, n = params.m, params.n
    fx = piece.apply(x)
    bottom = tuple(b_k(x, n * lam, k) for k in range(1, n + 1))
    top = tuple(b_k(fx, m * lam, k) for k in range(1, m + 1))
    left = (
        piece.apply(ivec_to_vec2(x.scale(n * lam).floor())).scale(Fraction(1, n))
        - ivec_to_vec2(fx.scale(m * lam).floor()).scale(Fraction(1, m))
        + piece.offset.scale(math.floor(lam - Fraction(1, 2)))
    )
    right = (
        piece.apply(ivec_to_vec2(x.scale(n * lam + n).floor())).scale(Fraction(1, n))
        - ivec_to_vec2(fx.scale(m * lam + m).floor()).scale(Fraction(1, m))
        + piece.offset.scale(math.floor(lam + Fraction(1, 2)))
    )
    return Tile(piece_index, bottom, top, left, right)


def tile_residual(params: BsParams, piece: AffinePiece, tile: Tile) -> Vec2:
    """Left-hand side minus right-hand side of the transport equation."""
    lhs = _avg(tile.top) + tile.right
    rhs = piece.apply(_avg(tile.bottom)) + tile.left
    return lhs - rhs


def verify_tile_computes(params: BsParams, piece: AffinePiece, tile: Tile) -> bool:
    zero = Fraction(0)
    res = tile_residual(params, piece, tile)
    return res.x1 == zero and res.x2 == zero


def floor_half_identity_check(z) -> bool:
    """floor(z + 1/2) - floor(z - 1/2) == 1; holds for every rational z."""
    z = as_rat(z)
    half = Fraction(1, 2)
    return math.floor(z + half) - math.floor(z - half) == 1


def affine_scaled_difference_check(piece: AffinePiece, c, y: Vec2, z: Vec2) -> bool:
    """f(c y - c z) == c f(y) - c f(z) + b, the lemma behind the residual chain."""
    c = as_rat(c)
    lhs = piece.apply(y.scale(c) - z.scale(c))
    rhs = piece.apply(y).scale(c) - piece.apply(z).scale(c) + piece.offset
    return lhs == rhs


def residual_stages(params: BsParams, piece: AffinePiece, lam, x: Vec2):
    """The transport residual and its successive simplifications.

    Stage 0 evaluates the tile equation directly; stages 1-3 are the
    telescoped, cancelled, and affine-expanded forms; stage 4 is
    floor(lam + 1/2) b - b - floor(lam - 1/2) b.  All five agree exactly
    and vanish, which is the regression this function exists for.
    """
    lam = as_rat(lam)
    m, n = params.m, params.n
    half = Fraction(1, 2)
    fx = piece.apply(x)
    f = piece.apply
    b = piece.offset

    lo_x = ivec_to_vec2(x.scale(n * lam).floor())          # floor(n lam x)
    hi_x = ivec_to_vec2(x.scale(n * lam + n).floor())      # floor((n lam + n) x)
    lo_f = ivec_to_vec2(fx.scale(m * lam).floor())         # floor(m lam f(x))
    hi_f = ivec_to_vec2(fx.scale(m * lam + m).floor())     # floor((m lam + m) f(x))
    wl = math.floor(lam - half)
    wr = math.floor(lam + half)

    tile = edge_colors(params, piece, lam, x)
    s0 = tile_residual(params, piece, tile)

    s1 = (
        hi_f.scale(Fraction(1, m))
        - lo_f.scale(Fraction(1, m))
        + f(hi_x).scale(Fraction(1, n))
        - hi_f.scale(Fraction(1, m))
        + b.scale(wr)
        - f(hi_x.scale(Fraction(1, n)) - lo_x.scale(Fraction(1, n)))
        - f(lo_x).scale(Fraction(1, n))
        + lo_f.scale(Fraction(1, m))
        - b.scale(wl)
    )

    s2 = (
        f(hi_x).scale(Fraction(1, n))
        + b.scale(wr)
        - f(hi_x.scale(Fraction(1, n)) - lo_x.scale(Fraction(1, n)))
        - f(lo_x).scale(Fraction(1, n))
        - b.scale(wl)
    )

    s3 = (
        f(hi_x).scale(Fraction(1, n))
        + b.scale(wr)
        - f(hi_x).scale(Fraction(1, n))
        + f(lo_x).scale(Fraction(1, n))
        - b
        - f(lo_x).scale(Fraction(1, n))
        - b.scale(wl)
    )

    s4 = b.scale(wr) - b - b.scale(wl)
    return (s0, s1, s2, s3, s4)


# ---------------------------------------------------------------------------
# finiteness: label boxes, error-color bounds, enumeration

@dataclass(frozen=True)
class EllBounds:
    """All realizable left/right colors lie in [p1/q, p2/q] on the 1/q grid."""

    p1: IntVec2
    p2: IntVec2
    q: int

    def holds_for(self, v: Vec2) -> bool:
        on_grid = (v.x1 * self.q).denominator == 1 and (v.x2 * self.q).denominator == 1
        if not on_grid:
            return False
        return (
            self.p1[0] <= v.x1 * self.q <= self.p2[0]
            and self.p1[1] <= v.x2 * self.q <= self.p2[1]
        )


def _interval_mul(c: Fraction, lo: Fraction, hi: Fraction):
    return (c * lo, c * hi) if c >= 0 else (c * hi, c * lo)


def ell_bounds(params: BsParams, piece: AffinePiece) -> EllBounds:
    """Grid box bounding every left (and right) color of the piece.

    Works on the fractional-part form of the error color, interval over
    u, v in [0,1]^2 and w in [0,1]; the same box is valid for right
    colors because shifting lam by 1 turns left into right.
    """
    m, n = params.m, params.n
    matrix, b = piece.matrix, piece.offset
    dens = [e.denominator for e in matrix.entries()]
    db = [piece.offset.x1.denominator, piece.offset.x2.denominator]
    q = lcm_all([m, n * lcm_all(dens), n * lcm_all(db)])

    one = Fraction(1)
    p1 = []
    p2 = []
    for comp in range(2):
        row = matrix.row(comp)
        b_c = b.x1 if comp == 0 else b.x2
        # -(1/n) (M u)_c over u in [0,1]^2
        lo = hi = Fraction(0)
        for entry in row:
            t_lo, t_hi = _interval_mul(-Fraction(1, n) * entry, Fraction(0), one)
            lo, hi = lo + t_lo, hi + t_hi
        # + (1/m) v_c over v_c in [0,1]
        hi += Fraction(1, m)
        # + (1/n - 1/2 - w) b_c over w in [0,1]
        c_lo = Fraction(1, n) - Fraction(3, 2)
        c_hi = Fraction(1, n) - Fraction(1, 2)
        t_lo, t_hi = _interval_mul(b_c, c_lo, c_hi)
        lo, hi = lo + t_lo, hi + t_hi
        p1.append(math.ceil(lo * q))
        p2.append(math.floor(hi * q))
    return EllBounds((p1[0], p1[1]), (p2[0], p2[1]), q)


def bottom_label_box(piece: AffinePiece) -> tuple[IntVec2, IntVec2]:
    """Inclusive per-component ranges of bottom colors over the square."""
    sq = piece.square
    return ((sq.c1, sq.c2), (sq.c1 + 1, sq.c2 + 1))


def _label_range(lo: Fraction, hi: Fraction) -> tuple[int, int]:
    # terms of balanced representations of v in [lo, hi]: floor(lo) up to
    # floor(hi)+1, except that an integer hi is attained exactly
    top = hi.numerator // hi.denominator if hi.denominator == 1 else math.floor(hi) + 1
    return (math.floor(lo), top)


def top_label_box(piece: AffinePiece) -> tuple[IntVec2, IntVec2]:
    """Inclusive per-component ranges of top colors over the image of the square."""
    sq = piece.square
    corners = [
        Vec2(Fraction(sq.c1 + dx), Fraction(sq.c2 + dy))
        for dx in (0, 1)
        for dy in (0, 1)
    ]
    images = [piece.apply(c) for c in corners]
    lo1, hi1 = _label_range(min(v.x1 for v in images), max(v.x1 for v in images))
    lo2, hi2 = _label_range(min(v.x2 for v in images), max(v.x2 for v in images))
    return ((lo1, lo2), (hi1, hi2))


@dataclass(frozen=True)
class PieceMeta:
    index: int
    bottom_box: tuple[IntVec2, IntVec2]
    top_box: tuple[IntVec2, IntVec2]
    ell: EllBounds


@dataclass(frozen=True)
class Tileset:
    params: BsParams
    pam: PiecewiseAffineMap
    piece_meta: tuple[PieceMeta, ...]
    tiles: tuple[Tile, ...]


def _color_range(box: tuple[IntVec2, IntVec2]):
    (lo1, lo2), (hi1, hi2) = box
    return [
        (v1, v2) for v1 in range(lo1, hi1 + 1) for v2 in range(lo2, hi2 + 1)
    ]


def _sequences(colors, length):
    if length == 0:
        return [()]
    shorter = _sequences(colors, length - 1)
    return [seq + (c,) for seq in shorter for c in colors]


def candidate_count(params: BsParams, f: PiecewiseAffineMap) -> int:
    total = 0
    for piece in f.pieces:
        blo, bhi = bottom_label_box(piece)
        tlo, thi = top_label_box(piece)
        eb = ell_bounds(params, piece)
        n_bottom = ((bhi[0] - blo[0] + 1) * (bhi[1] - blo[1] + 1)) ** params.n
        n_top = ((thi[0] - tlo[0] + 1) * (thi[1] - tlo[1] + 1)) ** params.m
        n_ell = (eb.p2[0] - eb.p1[0] + 1) * (eb.p2[1] - eb.p1[1] + 1)
        total += n_bottom * n_top * n_ell
    return total


def enumerate_tileset(
    params: BsParams, f: PiecewiseAffineMap, max_candidates: int | None = None
) -> Tileset:
    """All tiles with labels in the piece boxes that satisfy the transport
    equation with both error colors on the bounds grid.

    The set over-approximates the tiles realizable from actual (lam, x)
    pairs but contains every one of them, which is the direction the
    reduction needs.
    """
    if max_candidates is None:
        max_candidates = int(os.environ.get(CAP_ENV_VAR, DEFAULT_CANDIDATE_CAP))
    total = candidate_count(params, f)
    if total > max_candidates:
        raise EnumerationTooLarge(total, max_candidates)

    m, n = params.m, params.n
    metas = []
    tiles: list[Tile] = []
    frac_cache: dict[tuple[int, int], Fraction] = {}

    def grid_frac(p: int, q: int) -> Fraction:
        key = (p, q)
        if key not in frac_cache:
            frac_cache[key] = Fraction(p, q)
        return frac_cache[key]

    for index, piece in enumerate(f.pieces):
        bbox = bottom_label_box(piece)
        tbox = top_label_box(piece)
        eb = ell_bounds(params, piece)
        metas.append(PieceMeta(index, bbox, tbox, eb))
        q = eb.q

        bottoms = _sequences(_color_range(bbox), n)
        tops = _sequences(_color_range(tbox), m)
        for bottom in bottoms:
            shift = piece.apply(_avg(bottom))  # f(average of bottoms)
            for top in tops:
                base = shift - _avg(top)       # right = base + left
                bq1 = base.x1 * q
                bq2 = base.x2 * q
                if bq1.denominator != 1 or bq2.denominator != 1:
                    continue
                lo1 = max(eb.p1[0], eb.p1[0] - bq1.numerator)
                hi1 = min(eb.p2[0], eb.p2[0] - bq1.numerator)
                lo2 = max(eb.p1[1], eb.p1[1] - bq2.numerator)
                hi2 = min(eb.p2[1], eb.p2[1] - bq2.numerator)
                for e1 in range(lo1, hi1 + 1):
                    left1 = grid_frac(e1, q)
                    right1 = grid_frac(e1 + bq1.numerator, q)
                    for e2 in range(lo2, hi2 + 1):
                        left = Vec2(left1, grid_frac(e2, q))
                        right = Vec2(right1, grid_frac(e2 + bq2.numerator, q))
                        tiles.append(Tile(index, bottom, top, left, right))
    tiles.sort()
    return Tileset(params, f, tuple(metas), tuple(tiles))


# ---------------------------------------------------------------------------
# line-oriented export

def _fmt_ivec(v: IntVec2) -> str:
    return f"({v[0]},{v[1]})"


def _fmt_vec_pair(v: Vec2) -> str:
    return f"{fmt_rat(v.x1)},{fmt_rat(v.x2)}"


def tile_to_line(tile: Tile) -> str:
    bottom = " ".join(_fmt_ivec(c) for c in tile.bottom)
    top = " ".join(_fmt_ivec(c) for c in tile.top)
    return (
        f"{tile.piece} | bottom: {bottom} | top: {top}"
        f" | l: {_fmt_vec_pair(tile.left)} | r: {_fmt_vec_pair(tile.right)}"
    )


def export_tileset(ts: Tileset) -> str:
    lines = ["# bsdomino tileset v1"]
    lines.append(
        f"# m={ts.params.m} n={ts.params.n} pieces={len(ts.pam.pieces)}"
        f" tiles={len(ts.tiles)}"
    )
    for meta, piece in zip(ts.piece_meta, ts.pam.pieces):
        mx = piece.matrix
        lines.append(
            f"# piece {meta.index}"
            f" square=({piece.square.c1},{piece.square.c2})"
            f" M=({fmt_rat(mx.a11)},{fmt_rat(mx.a12)};{fmt_rat(mx.a21)},{fmt_rat(mx.a22)})"
            f" b=({fmt_rat(piece.offset.x1)},{fmt_rat(piece.offset.x2)})"
            f" q={meta.ell.q}"
            f" p1=({meta.ell.p1[0]},{meta.ell.p1[1]})"
            f" p2=({meta.ell.p2[0]},{meta.ell.p2[1]})"
        )
    for tile in sorted(ts.tiles):
        lines.append(tile_to_line(tile))
    return "\n".join(lines) + "\n"


def _parse_ivec(text: str) -> IntVec2:
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError(f"bad integer vector {text!r}")
    a, b = text[1:-1].split(",")
    return (int(a), int(b))


def _parse_vec_pair(text: str) -> Vec2:
    a, b = text.split(",")
    return vec2(a, b)


def _header_fields(line: str) -> dict[str, str]:
    fields = {}
    for token in line.split()[1:]:
        if "=" in token:
            key, value = token.split("=", 1)
            fields[key] = value
    return fields


def parse_tileset(text: str) -> Tileset:
    params = None
    pieces: list[AffinePiece] = []
    metas: list[PieceMeta] = []
    tiles: list[Tile] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            if line.startswith("#"):
                fields = _header_fields(line)
                if "m" in fields and "n" in fields:
                    params = BsParams(int(fields["m"]), int(fields["n"]))
                if line.startswith("# piece "):
                    idx = int(line.split()[2])
                    square = _parse_ivec(fields["square"])
                    rows = fields["M"][1:-1].split(";")
                    matrix = mat2([r.split(",") for r in rows])
                    offset = _parse_vec_pair(fields["b"][1:-1])
                    piece = AffinePiece(UnitSquare(*square), matrix, offset)
                    if idx != len(pieces):
                        raise ParseError(f"piece {idx} out of order")
                    pieces.append(piece)
                    if params is None:
                        raise ParseError("piece header before m/n header")
                    metas.append(
                        PieceMeta(
                            idx,
                            bottom_label_box(piece),
                            top_label_box(piece),
                            EllBounds(
                                _parse_ivec(fields["p1"]),
                                _parse_ivec(fields["p2"]),
                                int(fields["q"]),
                            ),
                        )
                    )
                continue
            head, bottom_part, top_part, l_part, r_part = line.split(" | ")
            bottom = tuple(
                _parse_ivec(tok) for tok in bottom_part.removeprefix("bottom: ").split()
            )
            top = tuple(
                _parse_ivec(tok) for tok in top_part.removeprefix("top: ").split()
            )
            tiles.append(
                Tile(
                    int(head),
                    bottom,
                    top,
                    _parse_vec_pair(l_part.removeprefix("l: ")),
                    _parse_vec_pair(r_part.removeprefix("r: ")),
                )
            )
        except (ValueError, KeyError, IndexError) as exc:
            raise ParseError(f"tileset line {lineno}: {exc}") from None
    if params is None or not pieces:
        raise ParseError("tileset file lacks m/n or piece headers")
    return Tileset(
        params, PiecewiseAffineMap(tuple(pieces)), tuple(metas), tuple(tiles)
    )


@dataclass(frozen=True)
class TileFault:
    line: int
    tile: Tile
    reason: str


def verify_tileset(ts: Tileset) -> list[TileFault]:
    """Recheck every tile: transport equation, label boxes, grid boxes.

    Line numbers refer to the canonical export layout (header lines
    first, tiles in sorted order).
    """
    faults = []
    header_lines = 2 + len(ts.pam.pieces)
    for offset, tile in enumerate(sorted(ts.tiles)):
        lineno = header_lines + offset + 1
        if not 0 <= tile.piece < len(ts.pam.pieces):
            faults.append(TileFault(lineno, tile, f"unknown piece {tile.piece}"))
            continue
        piece = ts.pam.pieces[tile.piece]
        meta = ts.piece_meta[tile.piece]
        if len(tile.bottom) != ts.params.n or len(tile.top) != ts.params.m:
            faults.append(TileFault(lineno, tile, "wrong number of edge colors"))
            continue
        if not verify_tile_computes(ts.params, piece, tile):
            faults.append(TileFault(lineno, tile, "transport equation violated"))
            continue
        (blo, bhi) = meta.bottom_box
        if not all(
            blo[0] <= c[0] <= bhi[0] and blo[1] <= c[1] <= bhi[1]
            for c in tile.bottom
        ):
            faults.append(TileFault(lineno, tile, "bottom color outside box"))
            continue
        (tlo, thi) = meta.top_box
        if not all(
            tlo[0] <= c[0] <= thi[0] and tlo[1] <= c[1] <= thi[1] for c in tile.top
        ):
            faults.append(TileFault(lineno, tile, "top color outside box"))
            continue
        if not meta.ell.holds_for(tile.left):
            faults.append(TileFault(lineno, tile, "left color off the grid box"))
            continue
        if not meta.ell.holds_for(tile.right):
            faults.append(TileFault(lineno, tile, "right color off the grid box"))
    return faults
