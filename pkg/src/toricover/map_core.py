"""Finite toroidal maps as flag systems.

A map is stored as darts (directed edge sides).  Dart d has a tail
vertex, a reverse dart, and counterclockwise/clockwise successors in
the rotation at its tail.  Faces are traced with the rule

    next dart of the face left of d  =  clockwise successor of rev(d)

so faces are walked counterclockwise and face indexing is
deterministic.  Flags are encoded as 2*dart + side with side 0 the face
left of the dart and side 1 the face right of it; the three involutions
then have closed forms:

    s0 (change vertex): 2d + s  ->  2 rev(d) + (1 - s)
    s1 (change edge):   2d + 0  ->  2 ccw(d) + 1,   2d + 1  ->  2 cw(d) + 0
    s2 (change face):   2d + s  ->  2d + (1 - s)

With this encoding s0 and s2 are fixed-point-free involutions that
commute by construction; what the constructor actually has to verify is
that the dart tables are consistent (reverse is an involution, each
dart sits in exactly one rotation) and that the map is connected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import SublatticeMat, cosets
from .tilings import TilingId, template

IVec = tuple[int, int]


@dataclass(frozen=True)
class QuotientSpec:
    """A toroidal map given as (tiling, sublattice): the quotient of the
    tiling by the row lattice of the matrix."""

    tiling: TilingId
    mat: SublatticeMat

    def as_dict(self) -> dict:
        return {"tiling": self.tiling.value, "matrix": list(self.mat.as_tuple())}


class FlagMap:
    """Immutable-after-construction flag map; see module docstring."""

    def __init__(
        self,
        dart_vertex: list[int],
        dart_rev: list[int],
        vertex_darts: list[tuple[int, ...]],
        labels: tuple[tuple[int, IVec], ...] | None = None,
        spec: QuotientSpec | None = None,
    ):
        nd = len(dart_vertex)
        if nd == 0 or nd % 2:
            raise ValueError("dart count must be positive and even")
        if len(dart_rev) != nd:
            raise ValueError("dart table lengths disagree")
        for d in range(nd):
            r = dart_rev[d]
            if r == d or not (0 <= r < nd) or dart_rev[r] != d:
                raise ValueError(f"reverse is not a fixed-point-free involution at dart {d}")

        self.dart_vertex = list(dart_vertex)
        self.dart_rev = list(dart_rev)
        self.vertex_darts = tuple(tuple(ds) for ds in vertex_darts)
        self.labels = labels
        self.spec = spec
        self.n_vertices = len(vertex_darts)

        seen = [False] * nd
        ccw = [0] * nd
        cw = [0] * nd
        for v, ds in enumerate(self.vertex_darts):
            if not ds:
                raise ValueError(f"vertex {v} has no darts")
            for i, d in enumerate(ds):
                if seen[d]:
                    raise ValueError(f"dart {d} appears in two rotations")
                if dart_vertex[d] != v:
                    raise ValueError(f"dart {d} listed at vertex {v} but its tail differs")
                seen[d] = True
                ccw[d] = ds[(i + 1) % len(ds)]
                cw[d] = ds[(i - 1) % len(ds)]
        if not all(seen):
            raise ValueError("some dart belongs to no vertex rotation")
        self.dart_ccw = ccw
        self.dart_cw = cw

        # Edges: the {d, rev d} pairs, indexed by their smaller dart.
        edge_of = [-1] * nd
        edge_darts = []
        for d in range(nd):
            if edge_of[d] < 0:
                e = len(edge_darts)
                edge_of[d] = edge_of[dart_rev[d]] = e
                edge_darts.append((d, dart_rev[d]))
        self.dart_edge = edge_of
        self.edge_darts = tuple(edge_darts)
        self.n_edges = len(edge_darts)

        # Faces: orbits of d -> cw(rev(d)), i.e. the face left of each dart.
        face_of = [-1] * nd
        face_darts = []
        for d in range(nd):
            if face_of[d] >= 0:
                continue
            f = len(face_darts)
            walk = []
            cur = d
            while face_of[cur] < 0:
                face_of[cur] = f
                walk.append(cur)
                cur = cw[dart_rev[cur]]
            if cur != d:
                raise ValueError(f"face trace from dart {d} did not close")
            face_darts.append(tuple(walk))
        self.dart_face_left = face_of
        self.face_darts = tuple(face_darts)
        self.face_sizes = tuple(len(w) for w in face_darts)
        self.n_faces = len(face_darts)

        if not self._connected():
            raise ValueError("map is not connected")

        # Flag involutions, closed-form from the dart tables.
        nf = 2 * nd
        s0 = [0] * nf
        s1 = [0] * nf
        s2 = [0] * nf
        fv = [0] * nf
        fe = [0] * nf
        ff = [0] * nf
        for d in range(nd):
            rd = dart_rev[d]
            s0[2 * d] = 2 * rd + 1
            s0[2 * d + 1] = 2 * rd
            s1[2 * d] = 2 * ccw[d] + 1
            s1[2 * d + 1] = 2 * cw[d]
            s2[2 * d] = 2 * d + 1
            s2[2 * d + 1] = 2 * d
            fv[2 * d] = fv[2 * d + 1] = dart_vertex[d]
            fe[2 * d] = fe[2 * d + 1] = edge_of[d]
            ff[2 * d] = face_of[d]
            ff[2 * d + 1] = face_of[rd]
        self.s0 = s0
        self.s1 = s1
        self.s2 = s2
        self.flag_vertex = fv
        self.flag_edge = fe
        self.flag_face = ff

    @property
    def n_darts(self) -> int:
        return len(self.dart_vertex)

    @property
    def n_flags(self) -> int:
        return 2 * self.n_darts

    def degree(self, v: int) -> int:
        return len(self.vertex_darts[v])

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        d, rd = self.edge_darts[e]
        return self.dart_vertex[d], self.dart_vertex[rd]

    def face_vertices(self, f: int) -> tuple[int, ...]:
        return tuple(self.dart_vertex[d] for d in self.face_darts[f])

    def face_edges(self, f: int) -> tuple[int, ...]:
        return tuple(self.dart_edge[d] for d in self.face_darts[f])

    def flags_at_vertex(self, v: int) -> tuple[int, ...]:
        out = []
        for d in self.vertex_darts[v]:
            out.append(2 * d)
            out.append(2 * d + 1)
        return tuple(out)

    def _connected(self) -> bool:
        nd = self.n_darts
        seen = [False] * nd
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            d = stack.pop()
            for nxt in (self.dart_rev[d], self.dart_ccw[d]):
                if not seen[nxt]:
                    seen[nxt] = True
                    count += 1
                    stack.append(nxt)
        return count == nd


def build_quotient(spec: QuotientSpec) -> FlagMap:
    """The quotient of the tiling by the row lattice of spec.mat.

    Vertices are (rep, coset) pairs, numbered rep-major in the coset
    system's canonical order; dart k of a vertex is dart k of its rep.
    """
    tpl = template(spec.tiling)
    cs = cosets(spec.mat)
    ncos = cs.size()
    deg = tpl.degree
    labels = []
    for r in range(tpl.rep_count):
        for w in cs.representatives:
            labels.append((r, w))
    nv = len(labels)
    dart_vertex = []
    dart_rev = []
    for v in range(nv):
        r, w = labels[v]
        for k in range(deg):
            s, (ox, oy) = tpl.neighbors[r][k]
            tv = s * ncos + cs.index_of((w[0] + ox, w[1] + oy))
            dart_vertex.append(v)
            dart_rev.append(tv * deg + tpl.reverse_slots[r][k])
    vertex_darts = [tuple(range(v * deg, v * deg + deg)) for v in range(nv)]
    return FlagMap(dart_vertex, dart_rev, vertex_darts, labels=tuple(labels), spec=spec)


def from_faces(faces: list[list[int]]) -> FlagMap:
    """Build a map from counterclockwise face boundaries (test helper).

    Each face is a vertex cycle; every directed edge must occur exactly
    once over all faces, and the darts at each vertex must close into a
    single rotation (disc neighborhoods).
    """
    darts = []  # (tail, head, face, position)
    for fi, cycle in enumerate(faces):
        n = len(cycle)
        for i, v in enumerate(cycle):
            darts.append((v, cycle[(i + 1) % n], fi, i))
    by_arc: dict[tuple[int, int], list[int]] = {}
    for idx, (u, w, _, _) in enumerate(darts):
        by_arc.setdefault((u, w), []).append(idx)
    for arc, ids in by_arc.items():
        if len(ids) != 1:
            raise ValueError(f"directed edge {arc} occurs {len(ids)} times")
    rev = []
    for u, w, _, _ in darts:
        opp = by_arc.get((w, u))
        if opp is None:
            raise ValueError(f"directed edge {(w, u)} missing")
        rev.append(opp[0])

    # Next dart of a face, then rotation: cw(d) = next_face(rev(d)).
    face_index: dict[tuple[int, int], int] = {}
    for idx, (_, _, fi, pos) in enumerate(darts):
        face_index[(fi, pos)] = idx
    nd = len(darts)
    next_face = [0] * nd
    for idx, (_, _, fi, pos) in enumerate(darts):
        size = len(faces[fi])
        next_face[idx] = face_index[(fi, (pos + 1) % size)]
    cw = [next_face[rev[d]] for d in range(nd)]

    nv = 1 + max(max(cycle) for cycle in faces)
    tails: dict[int, list[int]] = {v: [] for v in range(nv)}
    for idx, (u, _, _, _) in enumerate(darts):
        tails[u].append(idx)
    vertex_darts = []
    for v in range(nv):
        ds = tails[v]
        if not ds:
            raise ValueError(f"vertex {v} occurs in no face")
        start = ds[0]
        cycle = [start]
        cur = cw[start]
        while cur != start:
            cycle.append(cur)
            if len(cycle) > len(ds):
                raise ValueError(f"rotation at vertex {v} does not close")
            cur = cw[cur]
        if len(cycle) != len(ds):
            raise ValueError(f"vertex {v} has a disconnected rotation (pinch point)")
        cycle.reverse()  # cw cycle reversed is the ccw rotation
        vertex_darts.append(tuple(cycle))
    dart_vertex = [u for u, _, _, _ in darts]
    return FlagMap(dart_vertex, rev, vertex_darts)


def euler_characteristic(m: FlagMap) -> int:
    return m.n_vertices - m.n_edges + m.n_faces


def face_cycle(m: FlagMap, v: int) -> tuple[int, ...]:
    """Sizes of the faces around v in counterclockwise rotation order."""
    return tuple(m.face_sizes[m.dart_face_left[d]] for d in m.vertex_darts[v])


@dataclass(frozen=True)
class VertexTypeSig:
    """Canonical cyclic run-length signature of a face-size cycle.

    Canonical means lexicographically least over all rotations of the
    run sequence and of its reversal, so (3,3,4,3,4) and (4,3,4,3,3)
    produce equal values.
    """

    runs: tuple[tuple[int, int], ...]

    @classmethod
    def from_cycle(cls, sizes: tuple[int, ...]) -> "VertexTypeSig":
        if not sizes:
            raise ValueError("empty face cycle")
        runs = _cyclic_runs(tuple(sizes))
        best = min(_rotations(runs) + _rotations(tuple(reversed(runs))))
        return cls(runs=best)

    def expanded(self) -> tuple[int, ...]:
        out = []
        for p, n in self.runs:
            out.extend([p] * n)
        return tuple(out)

    def dotted(self) -> str:
        return ".".join(str(p) for p in self.expanded())

    def __str__(self) -> str:
        parts = [f"{p}^{n}" if n > 1 else str(p) for p, n in self.runs]
        return "[" + ",".join(parts) + "]"


def _cyclic_runs(sizes: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    n = len(sizes)
    start = 0
    for i in range(n):
        if sizes[i - 1] != sizes[i]:
            start = i
            break
    else:
        return ((sizes[0], n),)
    rot = sizes[start:] + sizes[:start]
    runs: list[list[int]] = []
    for x in rot:
        if runs and runs[-1][0] == x:
            runs[-1][1] += 1
        else:
            runs.append([x, 1])
    return tuple((p, c) for p, c in runs)


def _rotations(runs: tuple[tuple[int, int], ...]) -> list[tuple[tuple[int, int], ...]]:
    return [runs[i:] + runs[:i] for i in range(len(runs))]


def vertex_type(m: FlagMap, v: int) -> VertexTypeSig:
    return VertexTypeSig.from_cycle(face_cycle(m, v))


def is_semi_equivelar(m: FlagMap) -> VertexTypeSig | None:
    """The common vertex type if all vertices agree, else None."""
    sig = vertex_type(m, 0)
    for v in range(1, m.n_vertices):
        if vertex_type(m, v) != sig:
            return None
    return sig


@dataclass(frozen=True)
class PolyhedralReport:
    ok: bool
    violations: tuple[tuple[str, tuple[int, ...]], ...]

    def __bool__(self) -> bool:
        return self.ok


_MAX_VIOLATIONS = 20


def is_polyhedral(m: FlagMap) -> PolyhedralReport:
    """Faces are simple cycles of length >= 3, no loops or parallel
    edges, and two faces meet in at most one vertex or one edge."""
    violations: list[tuple[str, tuple[int, ...]]] = []

    def add(kind: str, cells: tuple[int, ...]) -> bool:
        violations.append((kind, cells))
        return len(violations) >= _MAX_VIOLATIONS

    for f, size in enumerate(m.face_sizes):
        if size < 3:
            if add("face-too-small", (f,)):
                return PolyhedralReport(False, tuple(violations))

    face_vsets = []
    face_esets = []
    for f in range(m.n_faces):
        vs = m.face_vertices(f)
        es = m.face_edges(f)
        if len(set(vs)) != len(vs) or len(set(es)) != len(es):
            if add("face-not-simple", (f,)):
                return PolyhedralReport(False, tuple(violations))
        face_vsets.append(frozenset(vs))
        face_esets.append(frozenset(es))

    seen_pairs: dict[tuple[int, int], int] = {}
    for e in range(m.n_edges):
        u, w = m.edge_endpoints(e)
        if u == w:
            if add("loop-edge", (e,)):
                return PolyhedralReport(False, tuple(violations))
            continue
        key = (u, w) if u < w else (w, u)
        if key in seen_pairs:
            if add("multi-edge", (seen_pairs[key], e)):
                return PolyhedralReport(False, tuple(violations))
        else:
            seen_pairs[key] = e

    # Candidate face pairs: those sharing at least one vertex.
    incident: dict[int, set[int]] = {}
    for f in range(m.n_faces):
        for v in face_vsets[f]:
            incident.setdefault(v, set()).add(f)
    pairs = set()
    for fs in incident.values():
        fl = sorted(fs)
        for i, f in enumerate(fl):
            for g in fl[i + 1 :]:
                pairs.add((f, g))
    for f, g in sorted(pairs):
        shared_v = face_vsets[f] & face_vsets[g]
        shared_e = face_esets[f] & face_esets[g]
        if len(shared_e) == 0 and len(shared_v) <= 1:
            continue
        if len(shared_e) == 1:
            (e,) = shared_e
            if shared_v == set(m.edge_endpoints(e)):
                continue
        if add("face-pair", (f, g)):
            return PolyhedralReport(False, tuple(violations))

    return PolyhedralReport(not violations, tuple(violations))


def map_summary(m: FlagMap) -> dict:
    """JSON-ready counts and predicates for one map."""
    sig = is_semi_equivelar(m)
    poly = is_polyhedral(m)
    out = {
        "vertices": m.n_vertices,
        "edges": m.n_edges,
        "faces": m.n_faces,
        "flags": m.n_flags,
        "euler_characteristic": euler_characteristic(m),
        "semi_equivelar": sig is not None,
        "vertex_type": sig.dotted() if sig is not None else None,
        "signature": str(sig) if sig is not None else None,
        "polyhedral": poly.ok,
    }
    if not poly.ok:
        out["polyhedral_violations"] = [
            {"kind": kind, "cells": list(cells)} for kind, cells in poly.violations[:5]
        ]
    if m.spec is not None:
        out["spec"] = m.spec.as_dict()
    return out
