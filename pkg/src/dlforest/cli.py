"""Command-line entry points.

Three subcommands::

    dlforest learn    --config F [--trace] [--out F] [--format json|text]
    dlforest genbench --ontology F --min-pos N --neg N [--noise R] [--seed S] --out F
    dlforest sweep    --config F --param P --values a,b,c --out F.csv

``learn`` runs one configured search and writes a report; with ``--trace``
the search log streams to stdout.  ``genbench`` samples a learning problem
from an ontology and writes a config fragment plus a ``.json`` sidecar.
``sweep`` reruns one config while varying a single parameter and writes a
CSV of refinement counts and timings.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from pathlib import Path

from .benchgen import generate_test, sidecar_dict
from .config import RunConfig, load_config, resolve_individual
from .expr import render
from .model import LearningProblem, OntologyError, validate_learning_problem
from .ofn import parse_ontology
from .search import RunReport, run_celoe, run_fm

SWEEPABLE = ("maxNodesAddedPerTree", "nbTrees", "maxLength")
_PARAM_FIELDS = {
    "maxNodesAddedPerTree": "max_nodes_added_per_tree",
    "nbTrees": "nb_trees",
    "maxLength": "max_length",
}


def _load_problem(cfg: RunConfig):
    ontology = parse_ontology(Path(cfg.ontology_path).read_text(encoding="utf-8"))
    lp = LearningProblem(
        positives=frozenset(resolve_individual(t, ontology) for t in cfg.positives),
        negatives=frozenset(resolve_individual(t, ontology) for t in cfg.negatives),
    )
    validate_learning_problem(lp, ontology)
    return ontology, lp


def run(cfg: RunConfig, tracing: bool = False) -> RunReport:
    """Execute one configured search run."""
    ontology, lp = _load_problem(cfg)
    params = cfg.params(ontology)
    runner = run_celoe if cfg.algorithm == "celoe" else run_fm
    return runner(ontology, lp, params, tracing=tracing)


def report_dict(report: RunReport, cfg: RunConfig) -> dict:
    return {
        "algorithm": report.algorithm,
        "bestExpression": render(report.best_expr),
        "accuracy": report.accuracy,
        "f1": report.f1,
        "refinementCount": report.refinement_count,
        "elapsedMs": report.elapsed_ms,
        "nbTrees": report.nb_trees,
        "seed": report.seed,
    }


def report_text(report: RunReport) -> str:
    return (
        f"algorithm:   {report.algorithm}\n"
        f"best:        {render(report.best_expr)}\n"
        f"accuracy:    {report.accuracy!r}\n"
        f"f1:          {report.f1!r}\n"
        f"refinements: {report.refinement_count}\n"
        f"elapsed ms:  {report.elapsed_ms}\n"
        f"trees:       {report.nb_trees}\n"
        f"seed:        {report.seed}\n"
    )


def sweep(cfg: RunConfig, param: str, values: list[int]) -> list[tuple[int, int, int]]:
    """One full run per value of *param*; returns (value, refinements, ms) rows."""
    if param not in SWEEPABLE:
        raise ValueError(f"param must be one of {', '.join(SWEEPABLE)}")
    rows = []
    for value in values:
        step = dataclasses.replace(cfg, **{_PARAM_FIELDS[param]: value})
        report = run(step)
        rows.append((value, report.refinement_count, report.elapsed_ms))
    return rows


def _cmd_learn(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    report = run(cfg, tracing=args.trace)
    if args.trace and report.trace:
        for line in report.trace:
            print(line)
    if args.format == "json":
        payload = json.dumps(report_dict(report, cfg), indent=2) + "\n"
    else:
        payload = report_text(report)
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    return 0


def _cmd_genbench(args: argparse.Namespace) -> int:
    ontology = parse_ontology(Path(args.ontology).read_text(encoding="utf-8"))
    test = generate_test(
        ontology,
        min_pos=args.min_pos,
        neg_count=args.neg,
        noise_ratio=args.noise,
        seed=args.seed,
    )

    def compact(iri: str) -> str:
        if iri.startswith(ontology.prefix):
            return ":" + iri[len(ontology.prefix):]
        return f"<{iri}>"

    fragment = (
        f"# generated test (seed {test.seed}, target accuracy {test.target_accuracy!r})\n"
        f"# target: {render(test.target)}\n"
        f'ks.file = "{Path(args.ontology).name}"\n'
        f"lp.positiveExamples = {{ {', '.join(compact(i) for i in sorted(test.positives))} }}\n"
        f"lp.negativeExamples = {{ {', '.join(compact(i) for i in sorted(test.negatives))} }}\n"
    )
    out = Path(args.out)
    out.write_text(fragment, encoding="utf-8")
    sidecar = out.with_name(out.name + ".json")
    sidecar.write_text(json.dumps(sidecar_dict(test), indent=2) + "\n", encoding="utf-8")
    print(f"target: {render(test.target)}")
    print(f"positives: {len(test.positives)}  negatives: {len(test.negatives)}")
    print(f"target accuracy after noise: {test.target_accuracy!r}")
    print(f"wrote {out} and {sidecar}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    values = [int(v) for v in args.values.split(",") if v.strip()]
    rows = sweep(cfg, args.param, values)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["value", "refinement_count", "elapsed_ms"])
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dlforest", description="class expression learning over ontologies"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="run one configured search")
    learn.add_argument("--config", required=True)
    learn.add_argument("--trace", action="store_true")
    learn.add_argument("--out")
    learn.add_argument("--format", choices=("json", "text"), default="json")
    learn.set_defaults(func=_cmd_learn)

    gen = sub.add_parser("genbench", help="generate a learning problem")
    gen.add_argument("--ontology", required=True)
    gen.add_argument("--min-pos", type=int, required=True)
    gen.add_argument("--neg", type=int, required=True)
    gen.add_argument("--noise", type=float, default=0.05)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_genbench)

    sw = sub.add_parser("sweep", help="rerun a config over parameter values")
    sw.add_argument("--config", required=True)
    sw.add_argument("--param", choices=SWEEPABLE, required=True)
    sw.add_argument("--values", required=True)
    sw.add_argument("--out", required=True)
    sw.set_defaults(func=_cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OntologyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
