"""Tests for cover construction, certificates, verification, and the
descent of tiling symmetries to scalar quotients."""

from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricover import (
    QuotientSpec,
    SublatticeMat,
    TilingId,
    build_quotient,
    certificate_from_dict,
    cover_exponent,
    cover_maps,
    descend_point_group,
    descend_translation,
    is_vertex_transitive,
    parse_tiling,
    r_family,
    scaled_identity,
    template,
    torus_area,
    verify_covering,
    vt_cover,
)

VT_FLAG_CAP = 800


def spec_of(code: str, mat: tuple[int, int, int, int]) -> QuotientSpec:
    return QuotientSpec(parse_tiling(code), SublatticeMat(*mat))


# --- construction ---


def test_truncated_square_doubling():
    y, x, cert = cover_maps(spec_of("E1", (1, 0, 0, 2)))
    assert cert.exponent == 2 and cert.fold == 2
    assert (x.n_vertices, y.n_vertices) == (8, 16)
    assert cert.cover_mat == scaled_identity(2)
    assert verify_covering(y, x, cert).ok


def test_square_grid_skew_example():
    y, x, cert = cover_maps(spec_of("T4444", (5, 3, 1, 2)))
    assert cert.exponent == 7 and cert.fold == 7
    report = verify_covering(y, x, cert)
    assert report.ok
    assert report.checks_passed == (
        "arithmetic",
        "shape",
        "fibers",
        "adjacency",
        "faces",
        "local-isomorphism",
    )
    assert is_vertex_transitive(y)


def test_scalar_input_covers_itself():
    y, x, cert = cover_maps(spec_of("E3", (3, 0, 0, 3)))
    assert cert.exponent == 3 and cert.fold == 1
    assert y.n_vertices == x.n_vertices
    assert sorted(cert.vertex_map) == list(range(x.n_vertices))
    assert verify_covering(y, x, cert).ok


def test_cover_verifies_across_all_tilings():
    for tid in TilingId:
        for mat in [(1, 0, 0, 2), (2, 1, 0, 3), (1, -2, 3, 1)]:
            spec = QuotientSpec(tid, SublatticeMat(*mat))
            y, x, cert = cover_maps(spec)
            assert cert.fold * spec.mat.index() == cert.exponent**2
            assert y.n_vertices == cert.fold * x.n_vertices
            assert verify_covering(y, x, cert).ok, (tid, mat)
            if y.n_flags <= VT_FLAG_CAP:
                assert is_vertex_transitive(y), (tid, mat)


def test_vt_cover_returns_buildable_spec():
    cover_spec, cert = vt_cover(spec_of("E5", (1, 1, 0, 2)))
    assert cover_spec.mat == cert.cover_mat
    y = build_quotient(cover_spec)
    assert y.n_vertices == cert.fold * template(cover_spec.tiling).rep_count * 2
    assert is_vertex_transitive(y)


def test_r_family_scales_exponent_linearly():
    base = spec_of("E6", (1, 0, 0, 3))
    assert cover_exponent(base.mat) == 3
    spec1, cert1 = r_family(base, 1)
    assert (cert1.exponent, cert1.fold) == (3, 3)
    spec2, cert2 = r_family(base, 2)
    assert (cert2.exponent, cert2.fold) == (6, 12)
    assert spec2.mat == scaled_identity(6)
    y, x, _ = cover_maps(base, r=2)
    assert verify_covering(y, x, cert2).ok
    with pytest.raises(ValueError):
        r_family(base, 0)


def test_r_family_members_cover_the_same_base():
    base = spec_of("T666", (2, 1, 0, 2))
    folds = []
    for r in (1, 2, 3):
        y, x, cert = cover_maps(base, r=r)
        assert verify_covering(y, x, cert).ok
        folds.append(cert.fold)
    m = cover_exponent(base.mat)
    assert folds == [r * r * m * m // base.mat.index() for r in (1, 2, 3)]


# --- verification failure kinds, one per check ---


def test_verify_rejects_non_scalar_cover_matrix():
    y, x, cert = cover_maps(spec_of("E1", (1, 0, 0, 2)))
    bad = dataclasses.replace(cert, cover_mat=SublatticeMat(2, 1, 0, 2))
    report = verify_covering(y, x, bad)
    assert not report.ok and report.failure.startswith("arithmetic")
    assert report.checks_passed == ()


def test_verify_rejects_wrong_fold():
    y, x, cert = cover_maps(spec_of("E1", (1, 0, 0, 2)))
    report = verify_covering(y, x, dataclasses.replace(cert, fold=3))
    assert not report.ok and report.failure.startswith("arithmetic")


def test_verify_rejects_truncated_map():
    y, x, cert = cover_maps(spec_of("E1", (1, 0, 0, 2)))
    bad = dataclasses.replace(cert, vertex_map=cert.vertex_map[:-1])
    report = verify_covering(y, x, bad)
    assert report.failure.startswith("shape")
    assert report.checks_passed == ("arithmetic",)


def test_verify_rejects_unbalanced_fibers():
    y, x, cert = cover_maps(spec_of("E1", (1, 0, 0, 2)))
    vm = list(cert.vertex_map)
    other = next(i for i in range(1, len(vm)) if vm[i] != vm[0])
    vm[other] = vm[0]
    report = verify_covering(y, x, dataclasses.replace(cert, vertex_map=tuple(vm)))
    assert report.failure.startswith("fibers")
    assert report.checks_passed == ("arithmetic", "shape")


def test_verify_rejects_broken_adjacency():
    y, x, cert = cover_maps(spec_of("E1", (1, 0, 0, 2)))
    vm = list(cert.vertex_map)
    other = next(i for i in range(1, len(vm)) if vm[i] != vm[0])
    vm[0], vm[other] = vm[other], vm[0]
    report = verify_covering(y, x, dataclasses.replace(cert, vertex_map=tuple(vm)))
    assert report.failure.startswith("adjacency")
    assert report.checks_passed == ("arithmetic", "shape", "fibers")


def test_verify_rejects_face_size_change():
    # n = 1 self-cover of a mixed-size tiling; swapping the images of a
    # square and an octagon keeps fibers balanced but changes sizes.
    y, x, cert = cover_maps(spec_of("E1", (2, 0, 0, 2)))
    assert cert.fold == 1
    sq = next(f for f in range(x.n_faces) if x.face_sizes[f] == 4)
    oc = next(f for f in range(x.n_faces) if x.face_sizes[f] == 8)
    fm = list(cert.face_map)
    i, j = fm.index(sq), fm.index(oc)
    fm[i], fm[j] = fm[j], fm[i]
    report = verify_covering(y, x, dataclasses.replace(cert, face_map=tuple(fm)))
    assert report.failure.startswith("faces")
    assert report.checks_passed == ("arithmetic", "shape", "fibers", "adjacency")


def test_verify_rejects_broken_rotation_order():
    # The 2x2 grid has parallel edges.  Exchanging their images keeps
    # every earlier check intact (same endpoints, balanced fibers, equal
    # face sizes) but scrambles the rotation at the shared endpoints, so
    # only the local-isomorphism check can catch it.
    y, x, cert = cover_maps(spec_of("T4444", (2, 0, 0, 2)))
    assert cert.fold == 1
    seen: dict[tuple[int, int], int] = {}
    pair = None
    for e in range(x.n_edges):
        key = tuple(sorted(x.edge_endpoints(e)))
        if key in seen:
            pair = (seen[key], e)
            break
        seen[key] = e
    assert pair is not None
    em = list(cert.edge_map)
    i, j = em.index(pair[0]), em.index(pair[1])
    em[i], em[j] = em[j], em[i]
    report = verify_covering(y, x, dataclasses.replace(cert, edge_map=tuple(em)))
    assert report.failure.startswith("local")
    assert report.checks_passed == ("arithmetic", "shape", "fibers", "adjacency", "faces")


# --- symmetry descent ---


def test_rotation_descends_to_scalar_quotient():
    spec = spec_of("E3", (2, 0, 0, 2))
    rho = max(template(spec.tiling).point_group, key=lambda e: e.order)
    assert rho.order == 6 and rho.kind == "rotation"
    auto = descend_point_group(spec, rho)
    assert auto.order() == 6
    assert auto.commutes_with_involutions(build_quotient(spec))


def test_reflection_descends_on_truncated_trihexagonal():
    spec = spec_of("E7", (3, 0, 0, 3))
    tau = next(e for e in template(spec.tiling).point_group if e.kind == "reflection")
    auto = descend_point_group(spec, tau)
    assert auto.order() == 2
    assert not auto.is_identity


def test_point_group_needs_scalar_lattice():
    spec = spec_of("E3", (2, 1, 0, 2))
    rho = template(spec.tiling).point_group[0]
    with pytest.raises(ValueError):
        descend_point_group(spec, rho)


def test_translations_descend_on_any_quotient():
    spec = spec_of("E2", (2, 1, 0, 3))
    t10 = descend_translation(spec, (1, 0))
    t01 = descend_translation(spec, (0, 1))
    y = build_quotient(spec)
    for t in (t10, t01):
        assert t.commutes_with_involutions(y)
    # translating by a lattice vector is the identity on the quotient
    assert descend_translation(spec, (2, 1)).is_identity
    assert descend_translation(spec, (0, 3)).is_identity
    assert not t10.is_identity


def test_translation_group_is_abelian_here():
    spec = spec_of("E4", (2, 0, 0, 2))
    t10 = descend_translation(spec, (1, 0))
    t01 = descend_translation(spec, (0, 1))
    assert t10.compose(t01).flag_perm == t01.compose(t10).flag_perm
    assert t10.compose(t10).is_identity  # delta (2,0) is in the lattice


# --- areas, certificates, serialization ---


def test_torus_area_examples():
    assert torus_area(spec_of("T4444", (5, 3, 1, 2))) == (7, "1")
    assert torus_area(spec_of("T333333", (2, 0, 0, 2))) == (4, "sqrt(3)/2")
    for tid in TilingId:
        value, factor = torus_area(QuotientSpec(tid, SublatticeMat(2, 1, 0, 3)))
        assert value == 6
        assert factor == template(tid).cell_area_factor


def test_certificate_round_trip():
    _, _, cert = cover_maps(spec_of("E4", (1, 1, 0, 2)))
    again = certificate_from_dict(cert.as_dict())
    assert again == cert


def test_certificate_rejects_malformed_documents():
    _, _, cert = cover_maps(spec_of("E4", (1, 1, 0, 2)))
    good = cert.as_dict()
    for breakage in (
        lambda d: d.pop("M"),
        lambda d: d.__setitem__("M", [1, 2, 3]),
        lambda d: d.__setitem__("tiling", "dodecahedral"),
        lambda d: d.__setitem__("m", "seven"),
        lambda d: d.pop("polyhedral"),
    ):
        bad = {k: (v.copy() if isinstance(v, (dict, list)) else v) for k, v in good.items()}
        breakage(bad)
        with pytest.raises(ValueError):
            certificate_from_dict(bad)


@settings(max_examples=40, deadline=None)
@given(
    tid=st.sampled_from(list(TilingId)),
    entries=st.tuples(*[st.integers(min_value=-4, max_value=4)] * 4).filter(
        lambda t: t[0] * t[3] - t[1] * t[2] != 0
    ),
)
def test_cover_property_random_specs(tid, entries):
    spec = QuotientSpec(tid, SublatticeMat(*entries))
    m = cover_exponent(spec.mat)
    tpl = template(tid)
    if 2 * tpl.degree * tpl.rep_count * m * m > 6000:
        return  # keep the random sweep fast; big cases run in the batch CLI
    y, x, cert = cover_maps(spec)
    assert verify_covering(y, x, cert).ok
