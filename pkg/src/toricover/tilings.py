"""The eleven Archimedean plane tilings as finite combinatorial templates.

Each template records one translation cell of a doubly periodic tiling:

* `reps`: the vertex representatives of the cell, with Euclidean
  positions in a basis scaled so that |A| = 1.
* `neighbors`: per rep, the counterclockwise rotation system of darts
  (rep', offset), meaning rep in cell w is adjacent to rep' in cell
  w + offset.  Offsets are coordinates in the (A, B) translation basis.
* `point_group`: generators of the point symmetries that make the
  tiling's full symmetry group vertex-transitive.  An element maps the
  vertex (r, w) to (sigma[r], R @ w + shift[r]); R is the Euclidean
  rotation/reflection rewritten in the (A, B) basis, so it is an
  integer matrix of determinant +-1.

Templates are seeded geometrically at unit edge length and the dart and
point-group tables are derived from the seed by exact-tolerance
nearest-vertex search; validate_template re-checks every invariant on
the finished combinatorial data, so coordinates are scaffolding, not
the source of truth.

Square-basis tilings use perpendicular A, B of equal length; the
hexagonal family uses a 60-degree rhombus, where the 60-degree rotation
acts on lattice coordinates as [[0,-1],[1,1]] (it sends A to B and B to
B - A, i.e. A plus the 120-degree direction vector equals B).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache

Vec2 = tuple[float, float]
IVec = tuple[int, int]
IMat = tuple[tuple[int, int], tuple[int, int]]
Dart = tuple[int, IVec]

_TOL = 1e-9
_MATCH_TOL = 1e-6


class TilingId(Enum):
    TRIANGULAR = "triangular"
    SQUARE = "square"
    HEXAGONAL = "hexagonal"
    ELONGATED_TRIANGULAR = "elongated-triangular"
    TRUNCATED_SQUARE = "truncated-square"
    SNUB_SQUARE = "snub-square"
    SNUB_HEXAGONAL = "snub-hexagonal"
    TRIHEXAGONAL = "trihexagonal"
    RHOMBITRIHEXAGONAL = "rhombitrihexagonal"
    TRUNCATED_HEXAGONAL = "truncated-hexagonal"
    TRUNCATED_TRIHEXAGONAL = "truncated-trihexagonal"

    @property
    def signature(self) -> tuple[int, ...]:
        """Face sizes around a vertex, in rotation order."""
        return _SIGNATURES[self]

    @property
    def code(self) -> str:
        """Short CLI code: E1..E7 for the seven, T+digits for the rest."""
        return _CODES[self]

    @property
    def vertex_type_str(self) -> str:
        return ".".join(str(p) for p in self.signature)

    @property
    def trivially_vertex_transitive(self) -> bool:
        """The four types whose every polyhedral quotient is vertex-transitive."""
        return self in _TRIVIAL

    def __repr__(self) -> str:  # keep reprs short in test output
        return f"TilingId.{self.name}"


_SIGNATURES: dict[TilingId, tuple[int, ...]] = {
    TilingId.TRIANGULAR: (3, 3, 3, 3, 3, 3),
    TilingId.SQUARE: (4, 4, 4, 4),
    TilingId.HEXAGONAL: (6, 6, 6),
    TilingId.ELONGATED_TRIANGULAR: (3, 3, 3, 4, 4),
    TilingId.TRUNCATED_SQUARE: (4, 8, 8),
    TilingId.SNUB_SQUARE: (3, 3, 4, 3, 4),
    TilingId.SNUB_HEXAGONAL: (3, 3, 3, 3, 6),
    TilingId.TRIHEXAGONAL: (3, 6, 3, 6),
    TilingId.RHOMBITRIHEXAGONAL: (3, 4, 6, 4),
    TilingId.TRUNCATED_HEXAGONAL: (3, 12, 12),
    TilingId.TRUNCATED_TRIHEXAGONAL: (4, 6, 12),
}

_CODES: dict[TilingId, str] = {
    TilingId.TRIANGULAR: "T333333",
    TilingId.SQUARE: "T4444",
    TilingId.HEXAGONAL: "T666",
    TilingId.ELONGATED_TRIANGULAR: "T33344",
    TilingId.TRUNCATED_SQUARE: "E1",
    TilingId.SNUB_SQUARE: "E2",
    TilingId.SNUB_HEXAGONAL: "E3",
    TilingId.TRIHEXAGONAL: "E4",
    TilingId.RHOMBITRIHEXAGONAL: "E5",
    TilingId.TRUNCATED_HEXAGONAL: "E6",
    TilingId.TRUNCATED_TRIHEXAGONAL: "E7",
}

_TRIVIAL = frozenset(
    {
        TilingId.TRIANGULAR,
        TilingId.SQUARE,
        TilingId.HEXAGONAL,
        TilingId.ELONGATED_TRIANGULAR,
    }
)

# Expected vertex representatives per translation cell.
_REP_COUNTS: dict[TilingId, int] = {
    TilingId.TRIANGULAR: 1,
    TilingId.SQUARE: 1,
    TilingId.HEXAGONAL: 2,
    TilingId.ELONGATED_TRIANGULAR: 2,
    TilingId.TRUNCATED_SQUARE: 4,
    TilingId.SNUB_SQUARE: 4,
    TilingId.SNUB_HEXAGONAL: 6,
    TilingId.TRIHEXAGONAL: 3,
    TilingId.RHOMBITRIHEXAGONAL: 6,
    TilingId.TRUNCATED_HEXAGONAL: 6,
    TilingId.TRUNCATED_TRIHEXAGONAL: 12,
}


@dataclass(frozen=True)
class PointGroupElem:
    """A point symmetry acting on template data.

    Vertex action: (r, w) -> (sigma[r], R @ w + shifts[r]) with w the
    lattice cell in (A, B) coordinates.  `matrix` is R; reflections have
    det(R) = -1 and reverse the rotation order at every vertex, which is
    why `slot_maps` (per rep, slot -> image slot) is precomputed here.
    """

    name: str
    kind: str  # "rotation" or "reflection"
    order: int
    sigma: tuple[int, ...]
    matrix: IMat
    shifts: tuple[IVec, ...]
    slot_maps: tuple[tuple[int, ...], ...]

    @property
    def reverses_orientation(self) -> bool:
        (a, b), (c, d) = self.matrix
        return a * d - b * c < 0

    def apply_vertex(self, rep: int, cell: IVec) -> tuple[int, IVec]:
        (r00, r01), (r10, r11) = self.matrix
        sx, sy = self.shifts[rep]
        return self.sigma[rep], (
            r00 * cell[0] + r01 * cell[1] + sx,
            r10 * cell[0] + r11 * cell[1] + sy,
        )


@dataclass(frozen=True)
class TilingTemplate:
    id: TilingId
    rep_names: tuple[str, ...]
    rep_pos: tuple[Vec2, ...]
    basis_a: Vec2
    basis_b: Vec2
    edge_length: float
    cell_area_factor: str  # exact tag: "1" or "sqrt(3)/2"
    neighbors: tuple[tuple[Dart, ...], ...]
    reverse_slots: tuple[tuple[int, ...], ...]
    point_group: tuple[PointGroupElem, ...]

    @property
    def rep_count(self) -> int:
        return len(self.rep_names)

    @property
    def degree(self) -> int:
        return len(self.neighbors[0])

    @property
    def signature(self) -> tuple[int, ...]:
        return self.id.signature

    def basis_f(self) -> Vec2 | None:
        """Third hexagonal direction (B - A), defined for rhombic bases only."""
        if self.cell_area_factor != "sqrt(3)/2":
            return None
        return (self.basis_b[0] - self.basis_a[0], self.basis_b[1] - self.basis_a[1])


# --------------------------------------------------------------------------
# Geometric seeds (unit edge length).

_SQ2 = math.sqrt(2.0)
_SQ3 = math.sqrt(3.0)


def _rot(deg: float) -> tuple[Vec2, Vec2]:
    r = math.radians(deg)
    return ((math.cos(r), -math.sin(r)), (math.sin(r), math.cos(r)))


def _mirror(deg: float) -> tuple[Vec2, Vec2]:
    # Reflection across the line through the origin at the given angle.
    r = math.radians(2.0 * deg)
    return ((math.cos(r), math.sin(r)), (math.sin(r), -math.cos(r)))


def _polar(radius: float, deg: float) -> Vec2:
    r = math.radians(deg)
    return (radius * math.cos(r), radius * math.sin(r))


@dataclass(frozen=True)
class _Seed:
    basis_a: Vec2
    basis_b: Vec2
    reps: tuple[Vec2, ...]
    gens: tuple[tuple[str, str, int, tuple[Vec2, Vec2]], ...]
    area_factor: str


def _hex_basis(length: float) -> tuple[Vec2, Vec2]:
    # 60-degree rhombus, A at -30 degrees, B at +30.
    return _polar(length, -30.0), _polar(length, 30.0)


# Circumradius of a unit-edge regular 12-gon.
_R12 = 1.0 / (2.0 * math.sin(math.radians(15.0)))


def _seed(tid: TilingId) -> _Seed:
    rot6 = ("rot6", "rotation", 6, _rot(60.0))
    rot4 = ("rot4", "rotation", 4, _rot(90.0))
    if tid is TilingId.TRIANGULAR:
        return _Seed((1.0, 0.0), (0.5, _SQ3 / 2), ((0.0, 0.0),), (rot6,), "sqrt(3)/2")
    if tid is TilingId.SQUARE:
        return _Seed((1.0, 0.0), (0.0, 1.0), ((0.0, 0.0),), (rot4,), "1")
    if tid is TilingId.HEXAGONAL:
        a, b = _hex_basis(_SQ3)
        return _Seed(a, b, ((1.0, 0.0), (0.5, _SQ3 / 2)), (rot6,), "sqrt(3)/2")
    if tid is TilingId.ELONGATED_TRIANGULAR:
        # Origin at a square's center; rows of squares alternate with
        # triangle strips, so the only point rotation is 2-fold.
        reps = ((-0.5, -0.5), (-0.5, 0.5))
        return _Seed(
            (1.0, 0.0), (0.5, 1.0 + _SQ3 / 2), reps, (("rot2", "rotation", 2, _rot(180.0)),), "1"
        )
    if tid is TilingId.TRUNCATED_SQUARE:
        side = 1.0 + _SQ2
        reps = tuple(_polar(_SQ2 / 2, 90.0 * k) for k in range(4))
        return _Seed((side, 0.0), (0.0, side), reps, (rot4,), "1")
    if tid is TilingId.SNUB_SQUARE:
        side = math.sqrt(2.0 + _SQ3)
        reps = tuple(_polar(_SQ2 / 2, 60.0 + 90.0 * k) for k in range(4))
        return _Seed((side, 0.0), (0.0, side), reps, (rot4,), "1")
    if tid is TilingId.SNUB_HEXAGONAL:
        # Triangular lattice with an index-7 sublattice of vertices
        # deleted; the deleted sites become the hexagons and the six
        # surviving cosets are the unit hexagon around each hole.
        ta, tb = (1.0, 0.0), (0.5, _SQ3 / 2)
        a = (2 * ta[0] + tb[0], 2 * ta[1] + tb[1])
        b = (-ta[0] + 3 * tb[0], -ta[1] + 3 * tb[1])
        reps = tuple(_polar(1.0, 60.0 * k) for k in range(6))
        return _Seed(a, b, reps, (rot6,), "sqrt(3)/2")
    if tid is TilingId.TRIHEXAGONAL:
        reps = ((1.0, 0.0), (0.5, _SQ3 / 2), (-0.5, _SQ3 / 2))
        return _Seed((2.0, 0.0), (1.0, _SQ3), reps, (rot6,), "sqrt(3)/2")
    if tid is TilingId.RHOMBITRIHEXAGONAL:
        a, b = _hex_basis(1.0 + _SQ3)
        reps = tuple(_polar(1.0, 60.0 * k) for k in range(6))
        return _Seed(a, b, reps, (rot6,), "sqrt(3)/2")
    if tid is TilingId.TRUNCATED_HEXAGONAL:
        a, b = _hex_basis(2.0 + _SQ3)
        reps = tuple(_polar(_R12, 15.0 + 30.0 * k) for k in range(6))
        return _Seed(a, b, reps, (rot6,), "sqrt(3)/2")
    if tid is TilingId.TRUNCATED_TRIHEXAGONAL:
        a, b = _hex_basis(3.0 + _SQ3)
        reps = tuple(_polar(_R12, 15.0 + 30.0 * k) for k in range(12))
        tau = ("mirror", "reflection", 2, _mirror(-30.0))
        return _Seed(a, b, reps, (rot6, tau), "sqrt(3)/2")
    raise AssertionError(f"no seed for {tid}")


# --------------------------------------------------------------------------
# Derivation of combinatorial data from a seed.


def _solve_cell(
    basis_a: Vec2, basis_b: Vec2, reps: tuple[Vec2, ...], point: Vec2
) -> tuple[int, IVec] | None:
    """Find (rep, offset) with reps[rep] + offset . (A, B) == point."""
    det = basis_a[0] * basis_b[1] - basis_a[1] * basis_b[0]
    for idx, rp in enumerate(reps):
        dx, dy = point[0] - rp[0], point[1] - rp[1]
        # Coordinates of the difference in the (A, B) basis.
        wa = (dx * basis_b[1] - dy * basis_b[0]) / det
        wb = (dy * basis_a[0] - dx * basis_a[1]) / det
        ia, ib = round(wa), round(wb)
        if abs(wa - ia) < _MATCH_TOL and abs(wb - ib) < _MATCH_TOL:
            return idx, (ia, ib)
    return None


def _apply_mat(m: tuple[Vec2, Vec2], p: Vec2) -> Vec2:
    return (m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1])


def _derive_neighbors(seed: _Seed) -> tuple[tuple[Dart, ...], ...]:
    out = []
    span = range(-2, 3)
    for rp in seed.reps:
        darts: list[tuple[float, Dart]] = []
        for j, other in enumerate(seed.reps):
            for ia in span:
                for ib in span:
                    qx = other[0] + ia * seed.basis_a[0] + ib * seed.basis_b[0]
                    qy = other[1] + ia * seed.basis_a[1] + ib * seed.basis_b[1]
                    dx, dy = qx - rp[0], qy - rp[1]
                    if abs(math.hypot(dx, dy) - 1.0) < _MATCH_TOL:
                        angle = math.atan2(dy, dx) % (2.0 * math.pi)
                        darts.append((angle, (j, (ia, ib))))
        darts.sort(key=lambda t: t[0])
        out.append(tuple(d for _, d in darts))
    return tuple(out)


def _derive_point_group(
    seed: _Seed, neighbors: tuple[tuple[Dart, ...], ...]
) -> tuple[PointGroupElem, ...]:
    ba, bb = seed.basis_a, seed.basis_b
    det = ba[0] * bb[1] - ba[1] * bb[0]
    elems = []
    for name, kind, order, mat in seed.gens:
        ga = _apply_mat(mat, ba)
        gb = _apply_mat(mat, bb)
        # Columns of R are the (A, B) coordinates of the transformed basis.
        cols = []
        for g in (ga, gb):
            wa = (g[0] * bb[1] - g[1] * bb[0]) / det
            wb = (g[1] * ba[0] - g[0] * ba[1]) / det
            ia, ib = round(wa), round(wb)
            if abs(wa - ia) > _TOL or abs(wb - ib) > _TOL:
                raise AssertionError(f"{name}: basis image not integral: {wa}, {wb}")
            cols.append((ia, ib))
        r_mat: IMat = ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
        sigma = []
        shifts = []
        for rp in seed.reps:
            hit = _solve_cell(ba, bb, seed.reps, _apply_mat(mat, rp))
            if hit is None:
                raise AssertionError(f"{name}: image of rep at {rp} is not a vertex")
            sigma.append(hit[0])
            shifts.append(hit[1])
        slot_maps = _derive_slot_maps(seed, neighbors, mat, tuple(sigma), r_mat, tuple(shifts))
        elems.append(
            PointGroupElem(
                name=name,
                kind=kind,
                order=order,
                sigma=tuple(sigma),
                matrix=r_mat,
                shifts=tuple(shifts),
                slot_maps=slot_maps,
            )
        )
    return tuple(elems)


def _derive_slot_maps(
    seed: _Seed,
    neighbors: tuple[tuple[Dart, ...], ...],
    mat: tuple[Vec2, Vec2],
    sigma: tuple[int, ...],
    r_mat: IMat,
    shifts: tuple[IVec, ...],
) -> tuple[tuple[int, ...], ...]:
    (r00, r01), (r10, r11) = r_mat
    slot_maps = []
    for r, darts in enumerate(neighbors):
        row = []
        image_rep = sigma[r]
        tx, ty = shifts[r]
        for s, (ox, oy) in darts:
            sx, sy = shifts[s]
            img = (
                sigma[s],
                (r00 * ox + r01 * oy + sx - tx, r10 * ox + r11 * oy + sy - ty),
            )
            try:
                row.append(neighbors[image_rep].index(img))
            except ValueError as exc:
                raise AssertionError(
                    f"point-group image dart {img} missing at rep {image_rep}"
                ) from exc
        slot_maps.append(tuple(row))
    return tuple(slot_maps)


def _derive_reverse_slots(neighbors: tuple[tuple[Dart, ...], ...]) -> tuple[tuple[int, ...], ...]:
    out = []
    for r, darts in enumerate(neighbors):
        row = []
        for s, (ox, oy) in darts:
            row.append(neighbors[s].index((r, (-ox, -oy))))
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=None)
def template(tid: TilingId) -> TilingTemplate:
    """The validated static template for a tiling."""
    seed = _seed(tid)
    neighbors = _derive_neighbors(seed)
    reverse_slots = _derive_reverse_slots(neighbors)
    point_group = _derive_point_group(seed, neighbors)
    scale = 1.0 / math.hypot(*seed.basis_a)
    tpl = TilingTemplate(
        id=tid,
        rep_names=tuple(f"u{k}" for k in range(len(seed.reps))),
        rep_pos=tuple((x * scale, y * scale) for x, y in seed.reps),
        basis_a=(seed.basis_a[0] * scale, seed.basis_a[1] * scale),
        basis_b=(seed.basis_b[0] * scale, seed.basis_b[1] * scale),
        edge_length=scale,
        cell_area_factor=seed.area_factor,
        neighbors=neighbors,
        reverse_slots=reverse_slots,
        point_group=point_group,
    )
    problems = validate_template(tpl)
    if problems:
        raise AssertionError(f"template {tid} failed validation: {problems}")
    return tpl


def all_templates() -> tuple[TilingTemplate, ...]:
    return tuple(template(tid) for tid in TilingId)


# --------------------------------------------------------------------------
# Template-level face tracing (on the infinite tiling).


def _face_trace(tpl: TilingTemplate, rep: int, slot: int, limit: int = 64) -> list[tuple[int, IVec, int]]:
    """Walk the face on the left of the given dart; returns its dart list."""
    deg = len(tpl.neighbors[rep])
    start = (rep, (0, 0), slot)
    walk = [start]
    cur = start
    for _ in range(limit):
        r, cell, k = cur
        s, off = tpl.neighbors[r][k]
        rev = tpl.reverse_slots[r][k]
        nxt_cell = (cell[0] + off[0], cell[1] + off[1])
        cur = (s, nxt_cell, (rev - 1) % len(tpl.neighbors[s]))
        if cur == start:
            return walk
        walk.append(cur)
    raise AssertionError(f"face at ({rep}, {slot}) did not close within {limit} steps")


def face_sizes_at_rep(tpl: TilingTemplate, rep: int) -> tuple[int, ...]:
    """Sizes of the faces around a rep, counterclockwise; the face at
    index k lies between darts k and k+1."""
    return tuple(len(_face_trace(tpl, rep, k)) for k in range(len(tpl.neighbors[rep])))


def _cyclic_equal(seq: tuple[int, ...], ref: tuple[int, ...]) -> bool:
    if len(seq) != len(ref):
        return False
    doubled = ref + ref
    rev = tuple(reversed(ref))
    return any(
        seq == doubled[i : i + len(ref)] for i in range(len(ref))
    ) or any(seq == (rev + rev)[i : i + len(ref)] for i in range(len(ref)))


# --------------------------------------------------------------------------
# Validation.


def validate_template(tpl: TilingTemplate) -> list[str]:
    """All invariant violations of a template; empty list means valid."""
    problems: list[str] = []
    nreps = tpl.rep_count
    if nreps != _REP_COUNTS[tpl.id]:
        problems.append(f"expected {_REP_COUNTS[tpl.id]} reps, found {nreps}")

    degs = {len(d) for d in tpl.neighbors}
    if degs != {len(tpl.signature)}:
        problems.append(f"vertex degrees {degs} != signature length {len(tpl.signature)}")

    # Dart symmetry: (s, t) at rep r must be mirrored by (r, -t) at rep s.
    for r, darts in enumerate(tpl.neighbors):
        if len(set(darts)) != len(darts):
            problems.append(f"duplicate dart at rep {r}")
        for k, (s, (ox, oy)) in enumerate(darts):
            if not (0 <= s < nreps):
                problems.append(f"dart ({r},{k}) points at unknown rep {s}")
                continue
            if (r, (-ox, -oy)) not in tpl.neighbors[s]:
                problems.append(f"dart ({r},{k}) has no reverse at rep {s}")
            elif tpl.neighbors[s][tpl.reverse_slots[r][k]] != (r, (-ox, -oy)):
                problems.append(f"reverse_slots wrong for dart ({r},{k})")

    if problems:
        return problems  # face tracing needs consistent darts

    # Face tracing must reproduce the vertex type at every rep.
    for r in range(nreps):
        sizes = face_sizes_at_rep(tpl, r)
        if not _cyclic_equal(sizes, tpl.signature):
            problems.append(f"face sizes {sizes} at rep {r} do not match {tpl.signature}")

    for elem in tpl.point_group:
        problems.extend(_validate_element(tpl, elem))

    # The stored generators must reach every rep (vertex-transitivity of
    # the tiling's symmetry group at template level).
    orbits = point_group_rep_orbits(tpl, use_reflection=True)
    if len(orbits) != 1:
        problems.append(f"point group fixes {len(orbits)} rep orbits, expected 1")

    if tpl.cell_area_factor not in ("1", "sqrt(3)/2"):
        problems.append(f"unknown area factor {tpl.cell_area_factor}")

    return problems


def _validate_element(tpl: TilingTemplate, elem: PointGroupElem) -> list[str]:
    problems: list[str] = []
    nreps = tpl.rep_count
    label = f"{tpl.id.value}:{elem.name}"
    if sorted(elem.sigma) != list(range(nreps)):
        problems.append(f"{label}: sigma is not a permutation")
        return problems
    (a, b), (c, d) = elem.matrix
    if a * d - b * c not in (1, -1):
        problems.append(f"{label}: R determinant not +-1")
    # R must have finite order dividing 12.
    m = ((1, 0), (0, 1))
    for _ in range(12):
        m = (
            (m[0][0] * a + m[0][1] * c, m[0][0] * b + m[0][1] * d),
            (m[1][0] * a + m[1][1] * c, m[1][0] * b + m[1][1] * d),
        )
    if m != ((1, 0), (0, 1)):
        problems.append(f"{label}: R^12 is not the identity")

    # Adjacency preservation: the image of every dart is a dart, at the
    # slot recorded in slot_maps, and the slot map is a bijection.
    (r00, r01), (r10, r11) = elem.matrix
    for r, darts in enumerate(tpl.neighbors):
        if sorted(elem.slot_maps[r]) != list(range(len(darts))):
            problems.append(f"{label}: slot map at rep {r} is not a bijection")
            continue
        tx, ty = elem.shifts[r]
        for k, (s, (ox, oy)) in enumerate(darts):
            sx, sy = elem.shifts[s]
            img = (
                elem.sigma[s],
                (r00 * ox + r01 * oy + sx - tx, r10 * ox + r11 * oy + sy - ty),
            )
            slot = elem.slot_maps[r][k]
            if tpl.neighbors[elem.sigma[r]][slot] != img:
                problems.append(f"{label}: dart ({r},{k}) image mismatch")

    # Applying the element `order` times must come back to the identity
    # on vertices (checked on the reps of the home cell).
    for r in range(nreps):
        cur = (r, (0, 0))
        for _ in range(elem.order):
            cur = elem.apply_vertex(*cur)
        if cur != (r, (0, 0)):
            problems.append(f"{label}: order {elem.order} does not close at rep {r}")

    geo = _check_geometry(elem, tpl)
    if geo is not None:
        problems.append(f"{label}: {geo}")
    return problems


def _check_geometry(elem: PointGroupElem, tpl: TilingTemplate) -> str | None:
    """R rewritten in Euclidean coordinates must be the isometry the
    element claims to be: orthogonal, right determinant, right angle."""
    (r00, r01), (r10, r11) = elem.matrix
    ax, ay = tpl.basis_a
    bx, by = tpl.basis_b
    # Euclidean images of the basis vectors (columns of R give their
    # (A, B) coordinates), then G = [gA gB] @ [A B]^-1.
    ga = (r00 * ax + r10 * bx, r00 * ay + r10 * by)
    gb = (r01 * ax + r11 * bx, r01 * ay + r11 * by)
    det = ax * by - ay * bx
    g = (
        ((ga[0] * by - gb[0] * ay) / det, (gb[0] * ax - ga[0] * bx) / det),
        ((ga[1] * by - gb[1] * ay) / det, (gb[1] * ax - ga[1] * bx) / det),
    )
    dot01 = g[0][0] * g[0][1] + g[1][0] * g[1][1]
    n0 = g[0][0] ** 2 + g[1][0] ** 2
    n1 = g[0][1] ** 2 + g[1][1] ** 2
    if abs(n0 - 1.0) > _TOL or abs(n1 - 1.0) > _TOL or abs(dot01) > _TOL:
        return "basis-conjugated action is not orthogonal"
    gdet = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    if elem.kind == "rotation":
        if abs(gdet - 1.0) > _TOL:
            return "rotation has Euclidean determinant != 1"
        want_trace = 2.0 * math.cos(2.0 * math.pi / elem.order)
        if abs((g[0][0] + g[1][1]) - want_trace) > _TOL:
            return f"rotation angle is not 360/{elem.order} degrees"
    else:
        if abs(gdet + 1.0) > _TOL:
            return "reflection has Euclidean determinant != -1"
        if abs(g[0][0] + g[1][1]) > _TOL:
            return "reflection trace is nonzero"
    return None


def point_group_rep_orbits(tpl: TilingTemplate, use_reflection: bool) -> tuple[tuple[int, ...], ...]:
    """Orbits of reps under the sigma parts of selected point-group
    elements (rotations always; reflections only if requested)."""
    parent = list(range(tpl.rep_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for elem in tpl.point_group:
        if elem.kind == "reflection" and not use_reflection:
            continue
        for r in range(tpl.rep_count):
            a, b = find(r), find(elem.sigma[r])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for r in range(tpl.rep_count):
        groups.setdefault(find(r), []).append(r)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values()))


# --------------------------------------------------------------------------
# Name parsing and serialization (CLI surface).


def parse_tiling(text: str) -> TilingId:
    """Accept slugs, E/T short codes, and dotted vertex-type strings."""
    raw = text.strip()
    slug = raw.lower().replace("_", "-")
    for tid in TilingId:
        if slug == tid.value:
            return tid
    upper = raw.upper()
    for tid, code in _CODES.items():
        if upper == code:
            return tid
    if upper == "T44":  # common shorthand for the square tiling
        return TilingId.SQUARE
    if upper.startswith("T") and upper[1:].isdigit():
        digits = upper[1:]
        for tid in TilingId:
            if _matches_signature_digits(digits, tid.signature):
                return tid
    if "." in raw:
        try:
            cycle = tuple(int(p) for p in raw.split("."))
        except ValueError:
            cycle = ()
        for tid in TilingId:
            if cycle and _cyclic_equal(cycle, tid.signature):
                return tid
    raise ValueError(f"unknown tiling name: {text!r}")


def _matches_signature_digits(digits: str, signature: tuple[int, ...]) -> bool:
    doubled = signature + signature
    rev = tuple(reversed(signature))
    n = len(signature)
    for base in (doubled, rev + rev):
        for i in range(n):
            if "".join(str(p) for p in base[i : i + n]) == digits:
                return True
    return False


def template_as_dict(tpl: TilingTemplate) -> dict:
    """JSON-ready dump of a template (floats rounded for determinism)."""

    def v2(p: Vec2) -> list[float]:
        return [round(p[0], 12), round(p[1], 12)]

    return {
        "tiling": tpl.id.value,
        "code": tpl.id.code,
        "vertex_type": tpl.id.vertex_type_str,
        "signature": list(tpl.signature),
        "trivially_vertex_transitive": tpl.id.trivially_vertex_transitive,
        "rep_count": tpl.rep_count,
        "degree": tpl.degree,
        "reps": [
            {"name": name, "position": v2(pos)}
            for name, pos in zip(tpl.rep_names, tpl.rep_pos)
        ],
        "basis": {"a": v2(tpl.basis_a), "b": v2(tpl.basis_b)},
        "edge_length": round(tpl.edge_length, 12),
        "cell_area_factor": tpl.cell_area_factor,
        "neighbors": [
            [{"rep": s, "offset": list(off)} for s, off in darts]
            for darts in tpl.neighbors
        ],
        "point_group": [
            {
                "name": e.name,
                "kind": e.kind,
                "order": e.order,
                "sigma": list(e.sigma),
                "matrix": [list(row) for row in e.matrix],
                "shifts": [list(s) for s in e.shifts],
            }
            for e in tpl.point_group
        ],
    }


def corrupt_dart(tpl: TilingTemplate, rep: int, slot: int, offset: IVec) -> TilingTemplate:
    """Copy of the template with one dart offset replaced (test hook)."""
    darts = [list(d) for d in tpl.neighbors]
    s, _ = darts[rep][slot]
    darts[rep][slot] = (s, offset)
    return replace(tpl, neighbors=tuple(tuple(d) for d in darts))
