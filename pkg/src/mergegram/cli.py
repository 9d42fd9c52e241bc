"""Command-line interface.

Subcommands wire the documented pipelines end to end: cloud or matrix in,
delimited text out, with figures rendered next to every report. Identical
arguments and seeds produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__
from .dendrogram import sl_dendrogram
from .diagrams import Diagram, mergegram_from_mst, pd0_from_mergegram, pd0_from_mst
from .experiments import (
    ClassificationConfig,
    ExperimentError,
    StabilityConfig,
    generate_classification_dataset,
    nn2_diagram,
    stability_experiment,
)
from .geometry import (
    Ball,
    Cube,
    MetricInput,
    generate_cloud,
    hausdorff_distance,
    perturb_cloud,
)
from .io import (
    diagram_to_json,
    fmt_full,
    fmt_scalar,
    load_cloud,
    load_diagram,
    load_matrix,
    write_cloud_csv,
    write_diagram_csv,
)
from .matching import bottleneck_distance
from .mst import compute_mst


def _read_metric(args: argparse.Namespace) -> MetricInput:
    if args.kind == "matrix":
        return load_matrix(args.input)
    return load_cloud(args.input)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_diagram(diag: Diagram, args: argparse.Namespace) -> None:
    text = diagram_to_json(diag) + "\n" if args.json else write_diagram_csv(diag)
    _emit(text, args.out)
    if getattr(args, "plot", None):
        from .plots import plot_diagram

        plot_diagram(diag, args.plot)


def _add_metric_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="input CSV file")
    p.add_argument(
        "--kind", choices=("cloud", "matrix"), default="cloud", help="input format"
    )


def _add_diagram_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    p.add_argument("--plot", metavar="PATH", help="also render the diagram to an image")


def _cmd_mst(args: argparse.Namespace) -> int:
    mst = compute_mst(_read_metric(args))
    lines = [f"{e.u},{e.v},{fmt_full(e.length)}" for e in mst.edges]
    lines.append(f"# total {fmt_full(mst.total_length)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_dendrogram(args: argparse.Namespace) -> int:
    dend = sl_dendrogram(compute_mst(_read_metric(args)), args.scale_factor)
    lines = [
        f"{fmt_full(ev.scale)};"
        + "+".join(str(c) for c in ev.merged_cluster_ids)
        + f"->{ev.new_cluster_id}"
        for ev in dend.events
    ]
    _emit("\n".join(lines) + ("\n" if lines else ""), args.out)
    return 0


def _cmd_mergegram(args: argparse.Namespace) -> int:
    mst = compute_mst(_read_metric(args))
    diag = mergegram_from_mst(
        mst, args.scale_factor, drop_zero_life=not args.keep_zero_life
    )
    _emit_diagram(diag, args)
    return 0


def _cmd_pd0(args: argparse.Namespace) -> int:
    if args.from_mergegram:
        diag = pd0_from_mergegram(load_diagram(args.from_mergegram))
    else:
        diag = pd0_from_mst(compute_mst(_read_metric(args)), args.scale_factor)
    _emit_diagram(diag, args)
    return 0


def _cmd_nn2(args: argparse.Namespace) -> int:
    _emit_diagram(nn2_diagram(_read_metric(args)), args)
    return 0


def _cmd_bottleneck(args: argparse.Namespace) -> int:
    d = bottleneck_distance(load_diagram(args.diagram_a), load_diagram(args.diagram_b))
    print(fmt_scalar(d, args.precision))
    return 0


def _cmd_hausdorff(args: argparse.Namespace) -> int:
    d = hausdorff_distance(load_cloud(args.cloud_a), load_cloud(args.cloud_b))
    print(fmt_scalar(d, args.precision))
    return 0


def _region(args: argparse.Namespace):
    if args.region == "ball":
        return Ball(args.radius)
    return Cube(args.lo, args.hi)


def _cmd_gen(args: argparse.Namespace) -> int:
    cloud = generate_cloud(args.n, args.dim, _region(args), args.seed)
    _emit(write_cloud_csv(cloud), args.out)
    return 0


def _cmd_perturb(args: argparse.Namespace) -> int:
    cloud = perturb_cloud(
        load_cloud(args.input),
        args.eps,
        (args.copies_min, args.copies_max),
        args.seed,
    )
    _emit(write_cloud_csv(cloud), args.out)
    return 0


def _cmd_stability(args: argparse.Namespace) -> int:
    if args.full_scale:
        cfg = StabilityConfig.full_scale(seed=args.seed)
    else:
        cfg = StabilityConfig(
            n_points=args.n,
            dim=args.dim,
            region=Cube(args.lo, args.hi),
            eps_min=args.eps_min,
            eps_max=args.eps_max,
            eps_step=args.eps_step,
            trials=args.trials,
            seed=args.seed,
            scale_factor=args.scale_factor,
        )
    rows = stability_experiment(cfg)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, values in (
        ("stability_avg", [(r.eps, r.avg_bd) for r in rows]),
        ("stability_max", [(r.eps, r.max_bd) for r in rows]),
    ):
        lines = ["a,b"] + [
            f"{fmt_scalar(a, args.precision)},{fmt_scalar(b, args.precision)}"
            for a, b in values
        ]
        (out_dir / f"{name}.csv").write_text("\n".join(lines) + "\n")
    from .plots import plot_stability

    plot_stability(rows, out_dir / "stability_avg.png", out_dir / "stability_max.png")
    print(f"wrote {len(rows)} rows to {out_dir}")
    return 0


def _cmd_classify_data(args: argparse.Namespace) -> int:
    cfg = ClassificationConfig(
        n_classes=args.classes,
        base_size=args.base_size,
        samples_per_class=args.samples,
        added_points=args.added,
        dim=args.dim,
        eps=args.eps,
        seed=args.seed,
        scale_factor=args.scale_factor,
    )
    dataset = generate_classification_dataset(cfg)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    counters: dict[int, int] = {}
    for sample in dataset.samples:
        j = counters.get(sample.class_id, 0)
        counters[sample.class_id] = j + 1
        class_dir = out_dir / f"class_{sample.class_id}"
        class_dir.mkdir(exist_ok=True)
        (class_dir / f"sample_{j}.cloud.csv").write_text(write_cloud_csv(sample.cloud))
        (class_dir / f"sample_{j}.mg.csv").write_text(write_diagram_csv(sample.mergegram))
        (class_dir / f"sample_{j}.pd0.csv").write_text(write_diagram_csv(sample.pd0))
        (class_dir / f"sample_{j}.nn2.csv").write_text(write_diagram_csv(sample.nn2))
    manifest = {"config": dataclasses.asdict(cfg), "samples": len(dataset.samples)}
    (out_dir / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    print(f"wrote {len(dataset.samples)} samples to {out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mergegram",
        description="Mergegrams of single-linkage dendrograms, 0D persistence, "
        "bottleneck/Hausdorff distances, and perturbation experiments.",
    )
    parser.add_argument("--version", action="version", version=f"mergegram {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mst", help="minimum spanning tree edges as u,v,length")
    _add_metric_input(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_mst)

    p = sub.add_parser("dendrogram", help="single-linkage merge events")
    _add_metric_input(p)
    p.add_argument("--scale-factor", type=float, default=0.5)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_dendrogram)

    p = sub.add_parser("mergegram", help="mergegram of the single-linkage dendrogram")
    _add_metric_input(p)
    p.add_argument("--scale-factor", type=float, default=0.5)
    p.add_argument(
        "--keep-zero-life",
        action="store_true",
        help="keep birth=death dots from tied edges (literal edge-by-edge output)",
    )
    _add_diagram_output(p)
    p.set_defaults(func=_cmd_mergegram)

    p = sub.add_parser("pd0", help="0D persistence diagram")
    p.add_argument("--input", help="cloud or matrix CSV")
    p.add_argument("--kind", choices=("cloud", "matrix"), default="cloud")
    p.add_argument("--from-mergegram", metavar="PATH", help="derive from a mergegram CSV")
    p.add_argument("--scale-factor", type=float, default=0.5)
    _add_diagram_output(p)
    p.set_defaults(func=_cmd_pd0)

    p = sub.add_parser("nn2", help="two-nearest-neighbor distance diagram")
    _add_metric_input(p)
    _add_diagram_output(p)
    p.set_defaults(func=_cmd_nn2)

    p = sub.add_parser("bottleneck", help="bottleneck distance between two diagram CSVs")
    p.add_argument("diagram_a")
    p.add_argument("diagram_b")
    p.add_argument("--precision", type=int, default=9)
    p.set_defaults(func=_cmd_bottleneck)

    p = sub.add_parser("hausdorff", help="Hausdorff distance between two cloud CSVs")
    p.add_argument("cloud_a")
    p.add_argument("cloud_b")
    p.add_argument("--precision", type=int, default=9)
    p.set_defaults(func=_cmd_hausdorff)

    p = sub.add_parser("gen", help="sample a uniform cloud")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--region", choices=("cube", "ball"), default="cube")
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=1.0)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("perturb", help="scatter 1..3 points in the eps-ball of each point")
    p.add_argument("--input", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--copies-min", type=int, default=1)
    p.add_argument("--copies-max", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_perturb)

    p = sub.add_parser(
        "stability", help="noise-bound sweep: bottleneck distance of perturbed mergegrams"
    )
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=100.0)
    p.add_argument("--eps-min", type=float, default=0.5)
    p.add_argument("--eps-max", type=float, default=5.0)
    p.add_argument("--eps-step", type=float, default=0.5)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale-factor", type=float, default=0.5)
    p.add_argument(
        "--full-scale",
        action="store_true",
        help="preset: 100 points in [0,100]^3, eps 0.1..10 step 0.1, 100 trials",
    )
    p.add_argument("--precision", type=int, default=9)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser(
        "classify-data", help="generate the labeled dataset of perturbed rotated clouds"
    )
    p.add_argument("--classes", type=int, default=10)
    p.add_argument("--base-size", type=int, default=100)
    p.add_argument("--samples", type=int, default=100, help="samples per class")
    p.add_argument("--added", type=int, default=25)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale-factor", type=float, default=0.5)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_classify_data)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "command", None) == "pd0":
        if bool(args.input) == bool(args.from_mergegram):
            print("error: pd0 needs exactly one of --input or --from-mergegram", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except (ValueError, ExperimentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
