"""Command-line interface.

Subcommands mirror the library: info, analyze, cover, verify,
search-nonvt, batch, render.  Output is deterministic JSON (sorted
keys); exit status is 0 on success, 1 when a verification fails, and 2
on invalid input.

The batch sweep uses one PRNG per sample, seeded with the string
"{seed}:{index}", so runs are reproducible and samples independent of
evaluation order.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .cover import (
    certificate_from_dict,
    cover_maps,
    verify_covering,
)
from .lattice import SublatticeMat, cover_exponent
from .map_core import (
    QuotientSpec,
    build_quotient,
    euler_characteristic,
    is_polyhedral,
    is_semi_equivelar,
    map_summary,
)
from .render import render_svg
from .symmetry import is_vertex_transitive, orbit_report, search_non_vt
from .tilings import TilingId, parse_tiling, template, template_as_dict

# Default ceilings for the randomized sweep: covers larger than this are
# resampled (construction cost), and vertex-transitivity is only decided
# below the second bound (automorphism cost).
BATCH_COVER_FLAG_CAP = 20_000
BATCH_VT_FLAG_CAP = 800


def _emit(args: argparse.Namespace, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec_from_args(args: argparse.Namespace) -> QuotientSpec:
    tiling = parse_tiling(args.tiling)
    mat = SublatticeMat(args.a, args.b, args.c, args.d)
    return QuotientSpec(tiling, mat)


def _cmd_info(args: argparse.Namespace) -> int:
    tpl = template(parse_tiling(args.tiling))
    _emit(args, {"command": "info", **template_as_dict(tpl)})
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    m = build_quotient(spec)
    rep = orbit_report(m)
    payload = {
        "command": "analyze",
        "spec": spec.as_dict(),
        "summary": map_summary(m),
        "vertex_transitive": len(rep.vertex_orbits) == 1,
        "vertex_orbit_count": len(rep.vertex_orbits),
        "flag_orbit_count": rep.flag_orbit_count,
        "group_order": rep.group_order,
    }
    _emit(args, payload)
    return 0


def _cmd_cover(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    y, x, cert = cover_maps(spec, r=args.r)
    report = verify_covering(y, x, cert)
    payload = {
        "command": "cover",
        "r": args.r,
        "certificate": cert.as_dict(),
        "cover_spec": {
            "tiling": spec.tiling.value,
            "matrix": list(cert.cover_mat.as_tuple()),
        },
        "verified": report.as_dict(),
    }
    _emit(args, payload)
    return 0 if report.ok else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    with open(args.certificate) as fh:
        data = json.load(fh)
    if "certificate" in data:  # accept a whole `cover` output document
        data = data["certificate"]
    cert = certificate_from_dict(data)
    x = build_quotient(QuotientSpec(cert.tiling, cert.base_mat))
    y = build_quotient(QuotientSpec(cert.tiling, cert.cover_mat))
    report = verify_covering(y, x, cert)
    _emit(
        args,
        {
            "command": "verify",
            "certificate_file": args.certificate,
            "tiling": cert.tiling.value,
            "M": list(cert.base_mat.as_tuple()),
            "m": cert.exponent,
            "n": cert.fold,
            "verified": report.as_dict(),
        },
    )
    return 0 if report.ok else 1


def _cmd_search_nonvt(args: argparse.Namespace) -> int:
    tiling = parse_tiling(args.tiling)
    witnesses = search_non_vt(tiling, args.det_bound)
    items = []
    for spec in witnesses:
        m = build_quotient(spec)
        rep = orbit_report(m)
        items.append(
            {
                "matrix": list(spec.mat.as_tuple()),
                "det": spec.mat.det(),
                "vertices": m.n_vertices,
                "vertex_orbit_count": len(rep.vertex_orbits),
                "group_order": rep.group_order,
            }
        )
    _emit(
        args,
        {
            "command": "search-nonvt",
            "tiling": tiling.value,
            "det_bound": args.det_bound,
            "witness_count": len(items),
            "witnesses": items,
        },
    )
    return 0


def _batch_sample(tiling: TilingId, rng: random.Random, max_entry: int) -> SublatticeMat:
    tpl = template(tiling)
    per_cell_flags = 2 * tpl.degree * tpl.rep_count
    while True:
        a, b, c, d = (rng.randint(-max_entry, max_entry) for _ in range(4))
        det = a * d - b * c
        if det == 0:
            continue
        mat = SublatticeMat(a, b, c, d)
        m = cover_exponent(mat)
        if per_cell_flags * m * m <= BATCH_COVER_FLAG_CAP:
            return mat


def _cmd_batch(args: argparse.Namespace) -> int:
    tilings = list(TilingId)
    samples = []
    failures = 0
    for i in range(args.samples):
        tiling = tilings[i % len(tilings)]
        rng = random.Random(f"{args.seed}:{i}")
        mat = _batch_sample(tiling, rng, args.max_entry)
        spec = QuotientSpec(tiling, mat)
        y, x, cert = cover_maps(spec)
        report = verify_covering(y, x, cert)
        sig_x = is_semi_equivelar(x)
        sig_y = is_semi_equivelar(y)
        want = tiling.signature
        checks = {
            "verify_covering": report.ok,
            "euler": euler_characteristic(x) == 0 and euler_characteristic(y) == 0,
            "signature": (
                sig_x is not None
                and sig_y is not None
                and sig_x.expanded() == sig_y.expanded() == _canon(want)
            ),
            "fold_arithmetic": (
                cert.fold * mat.index() == cert.exponent**2
                and mat.index() % cert.exponent == 0
                and cert.exponent % cert.fold == 0
                and y.n_vertices == cert.fold * x.n_vertices
            ),
        }
        vt: bool | None = None
        if cert.cover_polyhedral and y.n_flags <= args.vt_flag_cap:
            vt = is_vertex_transitive(y)
            checks["cover_vertex_transitive"] = vt
        ok = all(checks.values())
        if not ok:
            failures += 1
        samples.append(
            {
                "index": i,
                "tiling": tiling.value,
                "matrix": list(mat.as_tuple()),
                "det": mat.det(),
                "m": cert.exponent,
                "n": cert.fold,
                "flags_X": x.n_flags,
                "flags_Y": y.n_flags,
                "polyhedral_X": cert.base_polyhedral,
                "polyhedral_Y": cert.cover_polyhedral,
                "vertex_transitive_Y": vt,
                "checks": checks,
                "ok": ok,
            }
        )
    payload = {
        "command": "batch",
        "config": {
            "samples": args.samples,
            "seed": args.seed,
            "max_entry": args.max_entry,
            "vt_flag_cap": args.vt_flag_cap,
            "generator": "random.Random('{seed}:{index}') per sample",
            "version": __version__,
        },
        "results": samples,
        "summary": {
            "total": args.samples,
            "failed": failures,
            "vt_checked": sum(1 for s in samples if s["vertex_transitive_Y"] is not None),
        },
        "all_ok": failures == 0,
    }
    _emit(args, payload)
    return 0 if failures == 0 else 1


def _canon(cycle: tuple[int, ...]) -> tuple[int, ...]:
    from .map_core import VertexTypeSig

    return VertexTypeSig.from_cycle(cycle).expanded()


def _cmd_render(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    doc = render_svg(template(spec.tiling), spec.mat)
    with open(args.out, "w") as fh:
        fh.write(doc)
    return 0


def _add_spec_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("tiling", help="tiling name, code (E1..E7, T4444), or vertex type (3.3.4.3.4)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.add_argument("d", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricover",
        description="Semi-equivelar toroidal maps and their vertex-transitive covers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="dump a tiling template as JSON")
    p.add_argument("tiling")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("analyze", help="counts, signature, polyhedrality, symmetry of a quotient")
    _add_spec_arguments(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("cover", help="build and verify the vertex-transitive cover")
    _add_spec_arguments(p)
    p.add_argument("--r", type=int, default=1, help="cover family index (lattice scale r*m)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("verify", help="recheck a stored cover certificate")
    p.add_argument("certificate", help="path to a certificate JSON file")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search-nonvt", help="non-vertex-transitive quotients up to a det bound")
    p.add_argument("tiling")
    p.add_argument("--det-bound", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_search_nonvt)

    p = sub.add_parser("batch", help="randomized cover sweep across all tilings")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-entry", type=int, default=6)
    p.add_argument("--vt-flag-cap", type=int, default=BATCH_VT_FLAG_CAP)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("render", help="SVG of the tiling with the sublattice domain")
    _add_spec_arguments(p)
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
