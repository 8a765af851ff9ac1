import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from attachpy.analysis.analysis import (
    compare,
    empirical_dd,
    fit_tail_slope,
    plot_data,
    spike_fidelity,
)
from attachpy.config import DEFAULT_D_MAX, FAMILIES, ROUNDTRIP_TOL, SELF_LOOP_RETRIES, SPIKE_WINDOW
from attachpy.distributions.distributions import boost, build_distribution, mean_degree
from attachpy.distributions.empirical import load_empirical
from attachpy.exceptions import AttachPyError, FileClobberError, InfeasibleRateError
from attachpy.formats.formats import (
    format_report,
    read_attachment,
    read_distribution,
    read_histogram,
    write_attachment,
    write_distribution,
    write_edge_list,
    write_histogram,
    write_summary,
)
from attachpy.inversion.conditions import check_conditions
from attachpy.inversion.inversion import forward, invert, node_probability
from attachpy.simulator.simulator import SELF_LOOP_POLICIES, GrowthSimulator, SimulationConfig

logger = logging.getLogger()

FAMILY_PARAMETERS = {
    "chung_lu": ["alpha", "b"],
    "power_law": ["alpha"],
    "geometric": ["q"],
    "poisson": ["lam"],
    "broken_power_law": ["alpha1", "alpha2", "b1", "b2", "d"],
}
DEFAULT_TV_THRESHOLD = 0.02
SIMULATION_SUFFIXES = {"edges": ".edges", "histogram": ".hist", "summary": ".summary"}


@dataclass
class PipelineManifest:
    """
    Declared inputs, outputs and parameters of one subcommand invocation.
    """

    command: str
    inputs: List[Path] = field(default_factory=list)
    outputs: List[Path] = field(default_factory=list)
    parameters: Dict[str, Any] = field(default_factory=dict)
    force: bool = False

    def check_clobber(self) -> None:
        """
        Refuse outputs that coincide with an input or with each other, and existing outputs unless `force` is set.
        """
        inputs = {path.resolve() for path in self.inputs}
        seen = set()
        for path in self.outputs:
            resolved = path.resolve()
            if resolved in inputs:
                raise FileClobberError(f"output {path} would overwrite an input")
            if resolved in seen:
                raise FileClobberError(f"output {path} is given twice")
            seen.add(resolved)
            if path.exists() and not self.force:
                raise FileClobberError(f"{path} exists; use --force to overwrite")


def _emit(report: Dict[str, Any]) -> None:
    sys.stdout.write(format_report(report))


def _parse_range(text: str) -> Tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    return lo, hi


def _parse_boost(text: str) -> Tuple[int, float]:
    try:
        degree, factor = text.split(":")
        return int(degree), float(factor)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected degree:factor, got {text!r}")


def _parse_degrees(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated degrees, got {text!r}")


def _rate_report(dist) -> Dict[str, Any]:
    try:
        return {"p": node_probability(dist).p}
    except InfeasibleRateError:
        return {"p": "infeasible"}


def cmd_dist_build(args: argparse.Namespace) -> None:
    params = {
        name: getattr(args, name)
        for name in FAMILY_PARAMETERS[args.family]
        if getattr(args, name) is not None
    }
    manifest = PipelineManifest(
        "dist build", outputs=[args.out], parameters={"family": args.family, **params}, force=args.force
    )
    manifest.check_clobber()
    dist = build_distribution(args.family, d_max=args.dmax, **params)
    for degree, factor in args.boost or []:
        dist = boost(dist, degree, factor)
    write_distribution(args.out, dist)
    _emit({"family": args.family, "d_max": dist.d_max, "mean_degree": mean_degree(dist), **_rate_report(dist)})


def cmd_dist_ingest(args: argparse.Namespace) -> None:
    PipelineManifest("dist ingest", inputs=[args.histogram], outputs=[args.out], force=args.force).check_clobber()
    dist = load_empirical(read_histogram(args.histogram), d_max_override=args.dmax)
    write_distribution(args.out, dist)
    _emit(
        {
            "interpolated_degrees": len(dist.interpolated_degrees),
            "d_max": dist.d_max,
            "mean_degree": mean_degree(dist),
            **_rate_report(dist),
        }
    )


def cmd_invert(args: argparse.Namespace) -> None:
    PipelineManifest("invert", inputs=[args.dist], outputs=[args.out], force=args.force).check_clobber()
    dist = read_distribution(args.dist)
    f = invert(dist)
    rate = node_probability(dist)
    conditions = check_conditions(f, dist)
    write_attachment(args.out, f, rate)
    _emit(
        {
            "d_max": f.d_max,
            "p": rate.p,
            "mean_degree": rate.mean_degree,
            "tail_class": conditions.tail_class,
            "k_bound": conditions.k_bound,
            "validity_sum": conditions.validity_sum,
        }
    )


def cmd_simulate(args: argparse.Namespace) -> None:
    prefix = str(args.out_prefix)
    outputs = {key: Path(prefix + suffix) for key, suffix in SIMULATION_SUFFIXES.items()}
    manifest = PipelineManifest(
        "simulate",
        inputs=[args.attachment],
        outputs=list(outputs.values()),
        parameters={"steps": args.steps, "seed": args.seed},
        force=args.force,
    )
    manifest.check_clobber()
    f, rate = read_attachment(args.attachment, require_rate=True)
    config = SimulationConfig(
        p=rate.p,
        steps=args.steps,
        seed=args.seed,
        self_loop_policy=args.self_loops,
        max_resamples=args.max_resamples,
    )
    simulator = GrowthSimulator(f, config)
    graph = simulator.run()
    write_edge_list(outputs["edges"], graph)
    write_histogram(outputs["histogram"], graph)
    summary = simulator.summary()
    write_summary(outputs["summary"], summary)
    _emit(summary)


def cmd_analyze(args: argparse.Namespace) -> None:
    manifest = PipelineManifest(
        "analyze",
        inputs=[args.target, args.realized],
        outputs=[args.csv] if args.csv else [],
        parameters={"threshold": args.threshold},
        force=args.force,
    )
    manifest.check_clobber()
    target = read_distribution(args.target)
    realized = empirical_dd(read_histogram(args.realized))
    comparison = compare(target, realized)
    report: Dict[str, Any] = {
        "tv_distance": comparison.tv_distance,
        "max_pointwise_log_ratio": comparison.max_pointwise_log_ratio,
        "support_mismatch": comparison.support_mismatch,
        "pass": comparison.tv_distance < args.threshold,
    }
    if args.fit_range:
        lo, hi = args.fit_range
        if hi > realized.d_max:
            logger.warning(f"fit range upper end {hi} lowered to the largest realized degree {realized.d_max}")
            hi = realized.d_max
        fit = fit_tail_slope(realized, lo, hi)
        report.update({"fit_lo": lo, "fit_hi": hi, "slope": fit.slope, "r_squared": fit.r_squared})
    if args.spikes:
        for spike in spike_fidelity(target, realized, args.spikes, window=args.window):
            report[f"spike_{spike.degree}_ratio"] = spike.ratio
            report[f"spike_{spike.degree}_flagged"] = spike.flagged
    if args.csv:
        plot_data(realized, log_binning=args.log_binning).to_csv(args.csv, index=False, lineterminator="\n")
    _emit(report)


def cmd_roundtrip(args: argparse.Namespace) -> None:
    dist = read_distribution(args.dist)
    recovered = forward(invert(dist))
    error = float(np.abs(recovered.pmf - dist.pmf).max())
    _emit({"d_max": dist.d_max, "max_abs_error": error, "pass": error < args.tol})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="attachpy",
        description="Invert degree distributions into attachment functions and grow graphs that follow them.",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    dist = commands.add_parser("dist", help="build or ingest degree distributions")
    dist_commands = dist.add_subparsers(dest="dist_command", required=True)

    build = dist_commands.add_parser("build", help="build a closed-form family")
    build.add_argument("--family", required=True, choices=FAMILIES)
    for name in ["alpha", "b", "q", "alpha1", "alpha2", "b1", "b2"]:
        build.add_argument(f"--{name}", type=float)
    build.add_argument("--lambda", dest="lam", type=float)
    build.add_argument("--d", type=int, help="break degree of the broken power law")
    build.add_argument("--dmax", type=int, default=DEFAULT_D_MAX, help="truncation degree")
    build.add_argument(
        "--boost", type=_parse_boost, action="append", metavar="DEGREE:FACTOR", help="multiply the mass of a degree"
    )
    build.add_argument("--out", "-o", type=Path, required=True)
    build.add_argument("--force", action="store_true", help="overwrite existing outputs")
    build.set_defaults(handler=cmd_dist_build)

    ingest = dist_commands.add_parser("ingest", help="turn an observed histogram into a gap-free distribution")
    ingest.add_argument("histogram", type=Path)
    ingest.add_argument("--dmax", type=int, help="truncate above this degree")
    ingest.add_argument("--out", "-o", type=Path, required=True)
    ingest.add_argument("--force", action="store_true", help="overwrite existing outputs")
    ingest.set_defaults(handler=cmd_dist_ingest)

    inversion = commands.add_parser("invert", help="attachment function and p of a distribution")
    inversion.add_argument("dist", type=Path)
    inversion.add_argument("--out", "-o", type=Path, required=True)
    inversion.add_argument("--force", action="store_true", help="overwrite existing outputs")
    inversion.set_defaults(handler=cmd_invert)

    simulate = commands.add_parser("simulate", help="run the growth model")
    simulate.add_argument("attachment", type=Path)
    simulate.add_argument("--steps", type=int, required=True)
    simulate.add_argument("--seed", type=int, required=True)
    simulate.add_argument(
        "--out-prefix", type=Path, required=True, help="writes PREFIX.edges, PREFIX.hist and PREFIX.summary"
    )
    simulate.add_argument("--self-loops", choices=SELF_LOOP_POLICIES, default="resample")
    simulate.add_argument("--max-resamples", type=int, default=SELF_LOOP_RETRIES)
    simulate.add_argument("--force", action="store_true", help="overwrite existing outputs")
    simulate.set_defaults(handler=cmd_simulate)

    analyze = commands.add_parser("analyze", help="compare a realized histogram with its target")
    analyze.add_argument("target", type=Path)
    analyze.add_argument("realized", type=Path)
    analyze.add_argument("--threshold", type=float, default=DEFAULT_TV_THRESHOLD, help="TV distance to pass")
    analyze.add_argument("--fit-range", type=_parse_range, metavar="LO:HI")
    analyze.add_argument("--spikes", type=_parse_degrees, metavar="D1,D2")
    analyze.add_argument("--window", type=int, default=SPIKE_WINDOW)
    analyze.add_argument("--csv", type=Path, help="write degree,pmf,ccdf rows of the realized distribution")
    analyze.add_argument("--log-binning", action="store_true", help="bin the CSV rows logarithmically")
    analyze.add_argument("--force", action="store_true", help="overwrite existing outputs")
    analyze.set_defaults(handler=cmd_analyze)

    roundtrip = commands.add_parser("roundtrip", help="check forward(invert(P)) against P")
    roundtrip.add_argument("dist", type=Path)
    roundtrip.add_argument("--tol", type=float, default=ROUNDTRIP_TOL)
    roundtrip.set_defaults(handler=cmd_roundtrip)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        args.handler(args)
    except (AttachPyError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
