"""Command line surface.

Each subcommand prints one canonical JSON document on stdout (sorted
keys, no whitespace) and keeps human chatter on stderr, so outputs can
be diffed and piped. Exit codes: 0 success, 2 usage, 3 invalid input,
4 budget refusal. Passing --figures DIR additionally renders matplotlib
summaries of the report into that directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .arrangement import classify, shadow_complex
from .compat import (
    CompatResult,
    find_disconnection_example,
    largest_compatible,
    load_bitmap,
    plane_for_axis,
    reachable,
    save_bitmap,
)
from .curves import PolyChain, load_curve, save_curve
from .errors import BudgetError, ShadowLabError, ValidationError
from .sphere import (
    RetractionEvaluator,
    SphereModel,
    betti,
    build_sphere,
    load_voxels,
    save_voxels,
    shadow_voxels,
    slice_voxels,
    verify_retraction,
)
from .strands import (
    lift_strand,
    projected_strand_pointset,
    shadow_chain,
    strand_pointset,
    strands,
    verify_strand_laws,
)
from .svgout import RenderSpec, render_shadow
from .theorem_lab import (
    SearchConfig,
    enumerate_min_vertex_paths,
    find_tree_shadow_cycle,
    min_branch_point_census,
    search_convex_shadow_paths,
    search_path_shadow_cycles,
)

SEARCH_MODES = {
    "path-shadow-cycles": "PathShadowCycles",
    "min-vertex-paths": "MinVertexPaths",
    "tree-shadow-cycles": "TreeShadowCycles",
    "convex-shadow-paths": "ConvexShadowPaths",
    "branch-census": "BranchCensus",
}


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _axes_arg(value: str):
    if value == "all":
        return None
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"axis must be 'all' or an integer, got {value!r}")


def _cell_arg(value: str) -> tuple:
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}")


def _figdir(args) -> str:
    d = getattr(args, "figures", None)
    if d:
        os.makedirs(d, exist_ok=True)
    return d


# - subcommand bodies -----------------------------------------------------------


def _cmd_classify(args) -> int:
    chain = load_curve(args.curve)
    axes = range(1, chain.dim + 1) if args.axis is None else [args.axis]
    shadows = {}
    complexes = {}
    for ax in axes:
        cx = shadow_complex(chain, ax)
        complexes[f"axis {ax}"] = cx
        shadows[str(ax)] = classify(cx).to_json()
    _emit({"dim": chain.dim, "closed": chain.closed, "shadows": shadows})
    figdir = _figdir(args)
    if figdir:
        from .figures import save_complex_figure

        out = save_complex_figure(os.path.join(figdir, "shadows.png"), complexes)
        _note(f"figure: {out}")
    return 0


def _cmd_strands(args) -> int:
    chain = load_curve(args.curve)
    ss = strands(chain, args.axis)
    doc = {"axis": args.axis, "count": len(ss), "strands": [s.to_json() for s in ss]}
    if args.laws:
        doc["laws"] = verify_strand_laws(chain).to_json()
    _emit(doc)
    return 0


def _cmd_lift(args) -> int:
    chain = load_curve(args.curve)
    shadow = shadow_chain(chain, args.proj_axis)
    if shadow is None:
        raise ValidationError(
            f"axis-{args.proj_axis} shadow is not a simple curve; nothing to lift"
        )
    ss = strands(shadow, args.axis)
    if not 0 <= args.index < len(ss):
        raise ValidationError(f"strand index {args.index} out of range 0..{len(ss) - 1}")
    sigma = ss[args.index]
    lifted = lift_strand(chain, args.proj_axis, sigma)
    exact = projected_strand_pointset(lifted, args.proj_axis) == strand_pointset(sigma)
    _emit(
        {
            "projAxis": args.proj_axis,
            "shadowStrand": sigma.to_json(),
            "lifted": lifted.to_json(),
            "reprojectsExactly": exact,
        }
    )
    return 0


def _save_chains(outdir: str, label: str, chains) -> None:
    os.makedirs(outdir, exist_ok=True)
    for k, chain in enumerate(chains):
        path = os.path.join(outdir, f"{label}_{k:03d}.curve")
        save_curve(chain, path)
        _note(f"{label}: {path}")


def _search_is_sampled(mode: str, samples: int) -> bool:
    return mode in ("ConvexShadowPaths", "BranchCensus", "TreeShadowCycles") or samples > 0


def _cmd_search(args) -> int:
    mode = SEARCH_MODES[args.mode]
    cfg = SearchConfig(
        mode=mode,
        grid_max=args.grid,
        max_length=args.max_len,
        sample_count=args.samples,
        seed=args.seed if args.seed is not None else 0,
        jobs=args.jobs,
        budget=args.budget,
    )
    if mode == "MinVertexPaths":
        report = enumerate_min_vertex_paths(args.n, cfg)
    elif mode == "PathShadowCycles":
        report = search_path_shadow_cycles(cfg)
    elif mode == "ConvexShadowPaths":
        report = search_convex_shadow_paths(cfg)
    elif mode == "BranchCensus":
        report = min_branch_point_census(cfg)
    else:
        witness = find_tree_shadow_cycle(cfg)
        doc = {"mode": mode, "witness": None, "shadows": None}
        if witness is not None:
            doc["witness"] = witness.to_json()
            doc["shadows"] = {
                str(ax): classify(shadow_complex(witness, ax)).to_json()
                for ax in (1, 2, 3)
            }
            if args.out:
                _save_chains(args.out, "witness", [witness])
        _emit(doc)
        return 0
    _emit(report.to_json())
    _note(f"checked {report.instances_checked} instances in {report.elapsed:.2f}s")
    if args.out:
        if report.witnesses:
            _save_chains(args.out, "witness", report.witnesses)
        if report.counterexamples:
            _save_chains(args.out, "counterexample", report.counterexamples)
    figdir = _figdir(args)
    if figdir:
        from .figures import save_histogram_figure

        out = save_histogram_figure(
            os.path.join(figdir, f"{args.mode}-histogram.png"),
            report.histogram,
            args.mode,
        )
        _note(f"figure: {out}")
    return 0


def _sphere_model(args) -> SphereModel:
    return SphereModel(args.d, load_curve(args.curve))


def _cmd_sphere(args) -> int:
    if args.action == "build":
        v = build_sphere(_sphere_model(args), args.res)
        save_voxels(v, args.out)
        _emit({"dim": v.dim, "resolution": v.resolution, "cellCount": len(v), "out": args.out})
        figdir = _figdir(args)
        if figdir:
            from .figures import save_voxel_figure

            fig = save_voxel_figure(
                os.path.join(figdir, "sphere-projections.png"), v.cells, v.dim
            )
            _note(f"figure: {fig}")
    elif args.action == "shadow":
        v = shadow_voxels(load_voxels(args.voxels), args.axis)
        if args.out:
            save_voxels(v, args.out)
        _emit({"axis": args.axis, "dim": v.dim, "cellCount": len(v), "out": args.out})
    elif args.action == "slice":
        v = slice_voxels(load_voxels(args.voxels), args.axis, args.level)
        if args.out:
            save_voxels(v, args.out)
        _emit(
            {
                "axis": args.axis,
                "level": args.level,
                "dim": v.dim,
                "cellCount": len(v),
                "out": args.out,
            }
        )
    elif args.action == "betti":
        v = load_voxels(args.voxels)
        nums = betti(v) if args.max_cells is None else betti(v, args.max_cells)
        _emit({"betti": list(nums), "cellCount": len(v), "dim": v.dim})
    else:  # retract-check
        ev = RetractionEvaluator(_sphere_model(args), args.axis)
        report = verify_retraction(ev, args.samples, seed=args.seed)
        _emit(report.to_json())
    return 0


def _load_triple(args):
    return tuple(
        load_bitmap(path, plane_for_axis(ax))
        for ax, path in ((1, args.s1), (2, args.s2), (3, args.s3))
    )


def _compat_result_doc(res: CompatResult) -> dict:
    return res.to_json()


def _cmd_compat(args) -> int:
    if args.action == "largest":
        triple = _load_triple(args)
        res = largest_compatible(*triple)
        _emit(_compat_result_doc(res))
        if args.out and res.largest is not None:
            save_voxels(res.largest, args.out)
            _note(f"largest set: {args.out}")
        figdir = _figdir(args)
        if figdir:
            from .figures import save_bitmap_figure

            fig = save_bitmap_figure(os.path.join(figdir, "shadows.png"), list(triple))
            _note(f"figure: {fig}")
    elif args.action == "reach":
        v = load_voxels(args.voxels)
        _emit({"reachable": reachable(v, args.cell_a, args.cell_b)})
    else:  # find-example
        found = find_disconnection_example(args.bounds, budget=args.budget, seed=args.seed)
        if found is None:
            _emit({"found": False})
            return 0
        res = largest_compatible(*found)
        doc = {"found": True, "result": _compat_result_doc(res)}
        doc["shadows"] = [sorted(list(c) for c in bm.cells) for bm in found]
        _emit(doc)
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            for k, bm in enumerate(found):
                path = os.path.join(args.out, f"shadow_{k + 1}.bitmap")
                save_bitmap(bm, path)
                _note(f"shadow {k + 1}: {path}")
        figdir = _figdir(args)
        if figdir:
            from .figures import save_bitmap_figure

            fig = save_bitmap_figure(os.path.join(figdir, "example.png"), list(found))
            _note(f"figure: {fig}")
    return 0


def _cmd_render(args) -> int:
    chain = load_curve(args.curve)
    spec = RenderSpec(
        target=args.out,
        stroke_scale=Fraction(args.stroke_scale),
        margin=Fraction(args.margin),
        labels=args.labels,
    )
    doc = render_shadow(shadow_complex(chain, args.axis), spec)
    _emit({"axis": args.axis, "out": args.out, "bytes": len(doc)})
    return 0


# - parser ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="shadowlab",
        description="Shadows of curves: classification, searches, spheres, tomography.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify every shadow of a curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--axis", type=_axes_arg, default=None, help="1-based axis or 'all'")
    p.add_argument("--figures", help="directory for matplotlib output")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("strands", help="strand decomposition along one axis")
    p.add_argument("--curve", required=True)
    p.add_argument("--axis", type=int, required=True)
    p.add_argument("--laws", action="store_true", help="include the law report")
    p.set_defaults(fn=_cmd_strands)

    p = sub.add_parser("lift", help="lift a shadow strand back to the curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--proj-axis", type=int, required=True)
    p.add_argument("--axis", type=int, required=True, help="strand axis in shadow coordinates")
    p.add_argument("--index", type=int, default=0)
    p.set_defaults(fn=_cmd_lift)

    p = sub.add_parser("search", help="theorem evidence searches")
    p.add_argument("mode", choices=sorted(SEARCH_MODES))
    p.add_argument("--grid", type=int, default=3)
    p.add_argument("--max-len", type=int, default=16)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="vertex count for min-vertex-paths")
    p.add_argument("--out", help="directory for witness/counterexample curve files")
    p.add_argument("--figures", help="directory for matplotlib output")
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("sphere", help="suspension spheres: voxels, homology, retraction")
    act = p.add_subparsers(dest="action", required=True)
    b = act.add_parser("build", help="voxelize the suspension of a base cycle")
    b.add_argument("--curve", required=True, help="base cycle file")
    b.add_argument("--d", type=int, default=1, help="sphere index of the base")
    b.add_argument("--res", type=int, required=True)
    b.add_argument("--out", required=True, help="voxel file to write")
    b.add_argument("--figures", help="directory for matplotlib output")
    s = act.add_parser("shadow", help="drop one axis from a voxel set")
    s.add_argument("--voxels", required=True)
    s.add_argument("--axis", type=int, required=True)
    s.add_argument("--out")
    s = act.add_parser("slice", help="fix one coordinate of a voxel set")
    s.add_argument("--voxels", required=True)
    s.add_argument("--axis", type=int, required=True)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--out")
    s = act.add_parser("betti", help="Betti numbers of a voxel set")
    s.add_argument("--voxels", required=True)
    s.add_argument("--max-cells", type=int, default=None)
    s = act.add_parser("retract-check", help="verify the shadow retraction")
    s.add_argument("--curve", required=True, help="base cycle file")
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--axis", type=int, required=True)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    for q in act.choices.values():
        q.set_defaults(fn=_cmd_sphere)

    p = sub.add_parser("compat", help="three-shadow tomography")
    act = p.add_subparsers(dest="action", required=True)
    c = act.add_parser("largest", help="largest set compatible with three bitmaps")
    c.add_argument("--s1", required=True, help="x1-shadow bitmap file")
    c.add_argument("--s2", required=True, help="x2-shadow bitmap file")
    c.add_argument("--s3", required=True, help="x3-shadow bitmap file")
    c.add_argument("--out", help="voxel file for the largest set")
    c.add_argument("--figures", help="directory for matplotlib output")
    c = act.add_parser("reach", help="face-connected reachability inside a voxel set")
    c.add_argument("--voxels", required=True)
    c.add_argument("--a", dest="cell_a", type=_cell_arg, required=True)
    c.add_argument("--b", dest="cell_b", type=_cell_arg, required=True)
    c = act.add_parser("find-example", help="hunt for a disconnected largest set")
    c.add_argument("--bounds", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--budget", type=int, default=None)
    c.add_argument("--out", help="directory for the witness bitmaps")
    c.add_argument("--figures", help="directory for matplotlib output")
    for q in act.choices.values():
        q.set_defaults(fn=_cmd_compat)

    p = sub.add_parser("render", help="SVG of one shadow complex")
    p.add_argument("--curve", required=True)
    p.add_argument("--axis", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--stroke-scale", default="24")
    p.add_argument("--margin", default="1/2")
    p.add_argument("--labels", action="store_true")
    p.set_defaults(fn=_cmd_render)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "search":
        # Sampled modes must be reproducible, so the seed has to be explicit.
        if _search_is_sampled(SEARCH_MODES[args.mode], args.samples) and args.seed is None:
            parser.error(f"search {args.mode} is sampled and needs --seed")
        if args.mode == "min-vertex-paths" and args.n is None:
            parser.error("search min-vertex-paths needs --n")
    try:
        return args.fn(args)
    except BudgetError as exc:
        _note(f"budget: {exc}")
        return 4
    except (ShadowLabError, OSError, ValueError) as exc:
        _note(f"error: {exc}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
