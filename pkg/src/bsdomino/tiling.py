"""Cells of the BS(m,n) Cayley complex, adjacency constraints, and search.

A cell based at g is the relator face with corners g, g a^m, g t and
g t a^n: m a-edges on top (level beta(g)), n a-edges at the bottom
(level beta(g) - 1), t-edges on the sides.  A tiling assigns a tile to
every cell; two cells that share a geometric edge must agree on its
color.  Working out which cells share edges gives three local rules:

  (H)  right(g) = left(g a^m)                      shared side t-edge
  (V)  top_j(g) = bottom_{k+1}(g a^(j-1-k) t^-1)   j in [1,m], k in [0,n-1]
  (I)  piece(g) = piece(g a)                       shared function index

The V rule is forced by the corner computation
(g a^(j-1-k) t^-1) t a^k = g a^(j-1): both tiles color the edge from
g a^(j-1) to g a^j.  Moving up (t^-1) is one forward application of the
encoded map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OrbitTooShort, OutsidePiece
from .group import (
    BsParams,
    GroupElement,
    IDENTITY_ELEMENT,
    lambda_val,
    multiply,
)
from .pam import CycleDetected, OrbitReport, PiecewiseAffineMap
from .rationals import IntVec2, Vec2
from .tileset import Tile, Tileset, edge_colors

GENERATOR_WORDS = ("a", "A", "t", "T")


@dataclass(frozen=True)
class Patch:
    params: BsParams
    cells: tuple[GroupElement, ...]  # sorted canonically
    members: frozenset[GroupElement]

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.members


def build_patch(params: BsParams, elements) -> Patch:
    """Deduplicate, sort, and sanity-check a set of cell base elements."""
    members = frozenset(elements)
    cells = tuple(sorted(members, key=lambda g: g.sort_key()))
    ratio = Fraction(params.n, params.m)
    for g in cells:
        # relator closure of the cell boundary
        via_top = multiply(params, g, "a" * params.m + "t")
        via_side = multiply(params, g, "t" + "a" * params.n)
        if via_top != via_side:
            raise ValueError(f"cell boundary does not close at {g.to_text()}")
        if lambda_val(params, multiply(params, g, "t")) != ratio * lambda_val(params, g):
            raise ValueError(f"scale bookkeeping broken at {g.to_text()}")
    return Patch(params, cells, members)


def build_ball_patch(params: BsParams, radius: int) -> Patch:
    """All cells whose base has canonical word length at most radius."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    seen = {IDENTITY_ELEMENT}
    frontier = [IDENTITY_ELEMENT]
    for _ in range(radius):
        new_frontier = []
        for g in frontier:
            for gen in GENERATOR_WORDS:
                h = multiply(params, g, gen)
                if h not in seen:
                    seen.add(h)
                    new_frontier.append(h)
        frontier = new_frontier
    return build_patch(params, (g for g in seen if g.length() <= radius))


@dataclass(frozen=True)
class Constraint:
    """kind 'H': right(a) = left(b); 'V': top_j(a) = bottom_k(b) with
    j = top_pos, k = bottom_pos (1-based); 'I': piece(a) = piece(b)."""

    kind: str
    a: GroupElement
    b: GroupElement
    top_pos: int = 0
    bottom_pos: int = 0


def constraints_for(params: BsParams, patch: Patch) -> tuple[Constraint, ...]:
    m, n = params.m, params.n
    out = []
    for g in patch.cells:
        h = multiply(params, g, "a" * m)
        if h in patch:
            out.append(Constraint("H", g, h))
        h = multiply(params, g, "a")
        if h in patch:
            out.append(Constraint("I", g, h))
        for j in range(1, m + 1):
            for k in range(n):
                shift = j - 1 - k
                word = ("a" if shift > 0 else "A") * abs(shift) + "T"
                upper = multiply(params, g, word)
                if upper in patch:
                    out.append(Constraint("V", g, upper, top_pos=j, bottom_pos=k + 1))
    return tuple(out)


def constraint_satisfied(con: Constraint, tile_a: Tile, tile_b: Tile) -> bool:
    if con.kind == "H":
        return tile_a.right == tile_b.left
    if con.kind == "V":
        return tile_a.top[con.top_pos - 1] == tile_b.bottom[con.bottom_pos - 1]
    return tile_a.piece == tile_b.piece


@dataclass(frozen=True)
class TilingAssignment:
    pairs: tuple[tuple[GroupElement, Tile], ...]

    def as_dict(self) -> dict[GroupElement, Tile]:
        return dict(self.pairs)


def check_assignment(
    params: BsParams, patch: Patch, assignment: TilingAssignment
) -> list[Constraint]:
    """Constraints the assignment violates (empty list means valid)."""
    tiles = assignment.as_dict()
    bad = []
    for con in constraints_for(params, patch):
        if not constraint_satisfied(con, tiles[con.a], tiles[con.b]):
            bad.append(con)
    return bad


# ---------------------------------------------------------------------------
# rows

def simulate_row(
    params: BsParams,
    f: PiecewiseAffineMap,
    piece_index: int,
    x: Vec2,
    g0: GroupElement,
    k_range: tuple[int, int],
) -> list[Tile]:
    """Tiles at g0 a^k for k_lo <= k <= k_hi, all encoding the point x.

    The scale value steps by 1/m per a, so tile k uses
    lambda(g0) + k/m.
    """
    k_lo, k_hi = k_range
    if not 0 <= piece_index < len(f.pieces):
        raise ValueError(f"piece index {piece_index} out of range")
    piece = f.pieces[piece_index]
    if not piece.square.contains_closed(x):
        raise OutsidePiece(f"{x} is not in square {piece.square}")
    lam0 = lambda_val(params, g0)
    return [
        edge_colors(params, piece, lam0 + Fraction(k, params.m), x, piece_index)
        for k in range(k_lo, k_hi + 1)
    ]


def row_top_reading(
    params: BsParams, tiles: list[Tile], k_lo: int
) -> tuple[list[IntVec2], int, int]:
    """Colors of the geometric top edges covered by a simulated row.

    Edge s runs from g0 a^(s-1) to g0 a^s; tile k covers edges
    k+1 .. k+m and overlapping tiles must agree (checked).  Returns the
    colors with the covered index range [k_lo+1, k_hi+m]; against the
    balanced representation of f(x) these are indices at phase
    m * lambda(g0).
    """
    m = params.m
    k_hi = k_lo + len(tiles) - 1
    colors: list[IntVec2] = []
    for s in range(k_lo + 1, k_hi + m + 1):
        seen = set()
        for k in range(max(k_lo, s - m), min(k_hi, s - 1) + 1):
            seen.add(tiles[k - k_lo].top[s - k - 1])
        if len(seen) != 1:
            raise AssertionError(f"overlapping top colors disagree at edge {s}")
        colors.append(seen.pop())
    return colors, k_lo + 1, k_hi + m


def row_bottom_reading(
    params: BsParams, tiles: list[Tile], k_lo: int, phase: int
) -> tuple[list[IntVec2], Fraction, int, int]:
    """Bottom colors on the phase-th lower line under a simulated row.

    Tiles at k = phase (mod m) hang into the same lower sheet; tile
    k = phase + s m contributes indices s n + 1 .. s n + n of the
    balanced representation at z = n lambda(g0 a^phase).  Returns
    (colors, phase offset n*phase/m relative to n lambda(g0), first
    index, last index); empty ranges yield no colors.
    """
    m, n = params.m, params.n
    k_hi = k_lo + len(tiles) - 1
    z_shift = Fraction(n * phase, m)
    s_values = [
        (k - phase) // m for k in range(k_lo, k_hi + 1) if (k - phase) % m == 0
    ]
    if not s_values:
        return [], z_shift, 1, 0
    colors: list[IntVec2] = []
    for s in s_values:
        k = phase + s * m
        colors.extend(tiles[k - k_lo].bottom)
    return colors, z_shift, s_values[0] * n + 1, s_values[-1] * n + n


# ---------------------------------------------------------------------------
# backtracking search

@dataclass(frozen=True)
class Found:
    assignment: TilingAssignment
    nodes: int


@dataclass(frozen=True)
class ExhaustedNoTiling:
    nodes: int


@dataclass(frozen=True)
class BudgetExceeded:
    nodes: int


SearchResult = Found | ExhaustedNoTiling | BudgetExceeded


class _Indexes:
    def __init__(self, tiles: tuple[Tile, ...]):
        self.by_left: dict[Vec2, list[int]] = {}
        self.by_right: dict[Vec2, list[int]] = {}
        self.by_piece: dict[int, list[int]] = {}
        self.by_top: dict[tuple[int, IntVec2], list[int]] = {}
        self.by_bottom: dict[tuple[int, IntVec2], list[int]] = {}
        for tid, tile in enumerate(tiles):
            self.by_left.setdefault(tile.left, []).append(tid)
            self.by_right.setdefault(tile.right, []).append(tid)
            self.by_piece.setdefault(tile.piece, []).append(tid)
            for pos, color in enumerate(tile.top, start=1):
                self.by_top.setdefault((pos, color), []).append(tid)
            for pos, color in enumerate(tile.bottom, start=1):
                self.by_bottom.setdefault((pos, color), []).append(tid)


def _filter_for(con: Constraint, other_tile: Tile, cell_is_a: bool):
    """(index name, key) pinning this cell's tile given the other side's."""
    if con.kind == "H":
        if cell_is_a:
            return ("by_right", other_tile.left)
        return ("by_left", other_tile.right)
    if con.kind == "V":
        if cell_is_a:
            return ("by_top", (con.top_pos, other_tile.bottom[con.bottom_pos - 1]))
        return ("by_bottom", (con.bottom_pos, other_tile.top[con.top_pos - 1]))
    return ("by_piece", other_tile.piece)


def search_patch(
    tileset: Tileset, patch: Patch, budget: int = 1_000_000
) -> SearchResult:
    """Depth-first search for a constraint-satisfying tile assignment.

    Cells are chosen most-constrained first (most assigned neighbors,
    canonical order breaking ties), candidates come from hash indexes on
    the pinned edge color, and each tentative assignment forward-checks
    that every unassigned neighbor keeps at least one candidate.  A
    Found result is re-validated against the full constraint list; an
    ExhaustedNoTiling result means the search tree was explored
    completely.
    """
    params = tileset.params
    cells = patch.cells
    if not cells:
        return Found(TilingAssignment(()), 0)
    if not tileset.tiles:
        return ExhaustedNoTiling(0)

    constraints = constraints_for(params, patch)
    neighbors: dict[GroupElement, list[tuple[Constraint, bool]]] = {
        g: [] for g in cells
    }
    for con in constraints:
        # partners differ from the base: a and t have infinite order
        neighbors[con.a].append((con, True))
        neighbors[con.b].append((con, False))

    tiles = tileset.tiles

    # box-level filter: when the top and bottom label boxes of all pieces
    # are disjoint, no V constraint is satisfiable by any pair of tiles,
    # so a patch with a vertical pair is untileable outright
    if any(con.kind == "V" for con in constraints):
        top_box_colors = set()
        bottom_box_colors = set()
        for meta in tileset.piece_meta:
            (tlo, thi) = meta.top_box
            top_box_colors.update(
                (v1, v2)
                for v1 in range(tlo[0], thi[0] + 1)
                for v2 in range(tlo[1], thi[1] + 1)
            )
            (blo, bhi) = meta.bottom_box
            bottom_box_colors.update(
                (v1, v2)
                for v1 in range(blo[0], bhi[0] + 1)
                for v2 in range(blo[1], bhi[1] + 1)
            )
        if not top_box_colors & bottom_box_colors:
            return ExhaustedNoTiling(0)

    idx = _Indexes(tiles)

    order_index = {g: i for i, g in enumerate(cells)}
    assigned: dict[GroupElement, int] = {}

    def candidate_ids(cell: GroupElement):
        filters = []
        for con, is_a in neighbors[cell]:
            other = con.b if is_a else con.a
            if other in assigned:
                filters.append((con, is_a, tiles[assigned[other]]))
        if not filters:
            return range(len(tiles)), []
        lists = []
        for con, is_a, other_tile in filters:
            name, key = _filter_for(con, other_tile, is_a)
            lists.append(getattr(idx, name).get(key, []))
        smallest = min(lists, key=len)
        return smallest, filters

    def consistent(tid: int, filters) -> bool:
        tile = tiles[tid]
        for con, is_a, other_tile in filters:
            ok = (
                constraint_satisfied(con, tile, other_tile)
                if is_a
                else constraint_satisfied(con, other_tile, tile)
            )
            if not ok:
                return False
        return True

    def has_candidate(cell: GroupElement) -> bool:
        ids, filters = candidate_ids(cell)
        for tid in ids:
            if consistent(tid, filters):
                return True
        return False

    def pick_cell() -> GroupElement:
        best = None
        best_key = None
        for g in cells:
            if g in assigned:
                continue
            count = sum(
                1
                for con, is_a in neighbors[g]
                if (con.b if is_a else con.a) in assigned
            )
            key = (-count, order_index[g])
            if best_key is None or key < best_key:
                best, best_key = g, key
        return best

    nodes = 0
    stack: list[tuple[GroupElement, object, list]] = []

    def open_frame():
        cell = pick_cell()
        ids, filters = candidate_ids(cell)
        stack.append((cell, iter(ids), filters))

    open_frame()
    while stack:
        cell, ids_iter, filters = stack[-1]
        advanced = False
        for tid in ids_iter:
            nodes += 1
            if nodes > budget:
                return BudgetExceeded(nodes)
            if not consistent(tid, filters):
                continue
            assigned[cell] = tid
            fail = False
            for con, is_a in neighbors[cell]:
                other = con.b if is_a else con.a
                if other not in assigned and not has_candidate(other):
                    fail = True
                    break
            if fail:
                del assigned[cell]
                continue
            if len(assigned) == len(cells):
                assignment = TilingAssignment(
                    tuple((g, tiles[assigned[g]]) for g in cells)
                )
                if check_assignment(params, patch, assignment):
                    raise AssertionError("search produced an invalid assignment")
                return Found(assignment, nodes)
            open_frame()
            advanced = True
            break
        if not advanced:
            stack.pop()
            if stack:
                prev_cell = stack[-1][0]
                if prev_cell in assigned:
                    del assigned[prev_cell]
    return ExhaustedNoTiling(nodes)


# ---------------------------------------------------------------------------
# witness assignments from orbits

def assignment_from_orbit(
    params: BsParams,
    f: PiecewiseAffineMap,
    report: OrbitReport,
    patch: Patch,
) -> TilingAssignment:
    """Tile each cell with the orbit state of its level.

    Level 0 is the lowest row of the patch (minimal beta); moving one
    row up applies the map once.  Cyclic orbits repeat their loop, other
    orbits must reach every level the patch spans.
    """
    if not patch.cells:
        return TilingAssignment(())
    betas = {g: g.beta() for g in patch.cells}
    base_level = min(betas.values())
    depth = max(betas.values()) - base_level

    states = list(report.states)

    def state_at(level: int) -> tuple[int, Vec2]:
        if level < len(states):
            return states[level]
        if isinstance(report.outcome, CycleDetected):
            j, k = report.outcome.j, report.outcome.k
            period = k - j
            return states[j + (level - j) % period]
        raise OrbitTooShort(
            f"patch spans {depth + 1} levels, orbit provides {len(states)}"
        )

    pairs = []
    for g in patch.cells:
        level = betas[g] - base_level
        piece_idx, point = state_at(level)
        lam = lambda_val(params, g)
        tile = edge_colors(params, f.pieces[piece_idx], lam, point, piece_idx)
        pairs.append((g, tile))
    assignment = TilingAssignment(tuple(pairs))
    bad = check_assignment(params, patch, assignment)
    if bad:
        raise AssertionError(f"orbit assignment violates {len(bad)} constraints")
    return assignment


# ---------------------------------------------------------------------------
# exports

def export_dot(
    params: BsParams,
    patch: Patch,
    assignment: TilingAssignment | None = None,
    tileset: Tileset | None = None,
) -> str:
    """DOT graph of the patch: one node per cell, one edge per constraint."""
    tile_ids = {}
    if assignment is not None and tileset is not None:
        index_of = {tile: i for i, tile in enumerate(tileset.tiles)}
        tile_ids = {g: index_of.get(tile) for g, tile in assignment.pairs}
    lines = ["graph patch {", "  node [shape=box];"]
    for g in patch.cells:
        label = g.to_text()
        if g in tile_ids and tile_ids[g] is not None:
            label += f"\\ntile {tile_ids[g]}"
        lines.append(f'  "{g.to_text()}" [label="{label}"];')
    edge_labels: dict[tuple[str, str], list[str]] = {}
    for con in constraints_for(params, patch):
        key = (con.a.to_text(), con.b.to_text())
        if con.kind == "V":
            edge_labels.setdefault(key, []).append(
                f"V {con.top_pos}->{con.bottom_pos}"
            )
        else:
            edge_labels.setdefault(key, []).append(con.kind)
    for (a, b), labels in sorted(edge_labels.items()):
        joined = ", ".join(sorted(set(labels)))
        lines.append(f'  "{a}" -- "{b}" [label="{joined}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_tiling_text(assignment: TilingAssignment, tileset: Tileset) -> str:
    index_of = {tile: i for i, tile in enumerate(tileset.tiles)}
    lines = []
    for g, tile in assignment.pairs:
        tid = index_of.get(tile, -1)
        lines.append(f"{g.to_text()} -> {tid}")
    return "\n".join(lines) + "\n"
