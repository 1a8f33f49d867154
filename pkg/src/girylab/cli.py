"""Command line surface: suite verification, Markov evolution, report
aggregation.

Output discipline: every number serializes as "p/q"; reports are
canonical JSON (sorted keys, no timestamps, no durations) so identical
seed and configuration reproduce identical bytes.  Durations go to
stderr on request.  Configuration precedence is flags, then config
file, then defaults; GIRYLAB_SEED supplies the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .errors import GirylabError, IngestionError
from .harness import (SUITE_NAMES, SuiteConfig, case_rng, generate_ifunction,
                      run_suite)
from .codensity import check_naturality, lift, sample_affine
from .jsonio import (functional_from_json, kernel_from_json,
                     measure_from_json, space_from_json)
from .monad import trajectory

CONFIG_KEYS = ("seed", "trials", "max_carrier", "max_arity", "max_hull_dim")
DEFAULT_CONFIG_FILE = "girylab.cfg"


def _read_config_file(path: Path) -> dict:
    values = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise IngestionError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in CONFIG_KEYS:
            raise IngestionError(
                f"{path}:{lineno}: unknown key {key!r}; "
                f"expected one of {', '.join(CONFIG_KEYS)}")
        try:
            values[key] = int(value.strip())
        except ValueError:
            raise IngestionError(f"{path}:{lineno}: {key} must be an integer")
    return values


def _build_config(args) -> SuiteConfig:
    try:
        default_seed = int(os.environ.get("GIRYLAB_SEED", "0"))
    except ValueError:
        raise IngestionError("GIRYLAB_SEED must be an integer")
    values = {"seed": default_seed,
              "trials": 500, "max_carrier": 8, "max_arity": 4,
              "max_hull_dim": 3}
    config_path = None
    if args.config is not None:
        config_path = Path(args.config)
        if not config_path.exists():
            raise IngestionError(f"config file {config_path} does not exist")
    elif Path(DEFAULT_CONFIG_FILE).exists():
        config_path = Path(DEFAULT_CONFIG_FILE)
    if config_path is not None:
        values.update(_read_config_file(config_path))
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return SuiteConfig(**values)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise IngestionError(f"file {path} does not exist")
    except json.JSONDecodeError as exc:
        raise IngestionError(f"{path} is not valid JSON: {exc}")


def _junit_suite_lines(report_doc: dict) -> list:
    props = report_doc.get("properties", [])
    failures = sum(1 for p in props if p.get("result") != "pass")
    lines = [
        f'<testsuite name={quoteattr(report_doc.get("suite", "girylab"))} '
        f'tests="{len(props)}" failures="{failures}" errors="0">',
    ]
    for p in props:
        lines.append(
            f'  <testcase classname={quoteattr(report_doc.get("suite", ""))} '
            f'name={quoteattr(p.get("property", "?"))}>')
        if p.get("result") != "pass":
            detail = escape(json.dumps(p.get("witness"), sort_keys=True))
            lines.append(
                f'    <failure message={quoteattr(p.get("law", ""))}>'
                f'{detail}</failure>')
        lines.append('  </testcase>')
    lines.append('</testsuite>')
    return lines


def _junit_xml(*report_docs: dict) -> str:
    lines = ['<?xml version="1.0" encoding="utf-8"?>']
    if len(report_docs) == 1:
        lines += _junit_suite_lines(report_docs[0])
    else:
        lines.append('<testsuites>')
        for doc in report_docs:
            lines += _junit_suite_lines(doc)
        lines.append('</testsuites>')
    return "\n".join(lines) + "\n"


def _cmd_verify(args) -> int:
    cfg = _build_config(args)
    if args.functional is not None:
        return _verify_user_functional(args, cfg)
    report = run_suite(args.suite, cfg)
    print(report.to_json())
    if args.junit:
        Path(args.junit).write_text(_junit_xml(report.to_jsonable()))
    if args.timings:
        for record in report.records:
            print(f"{record.name}: {record.duration:.3f}s", file=sys.stderr)
    return 0 if report.passed else 1


def _verify_user_functional(args, cfg: SuiteConfig) -> int:
    """Stream naturality verdicts for a functional supplied as JSON."""
    if args.suite != "naturality":
        raise IngestionError("--functional applies to the naturality suite")
    space = None
    if args.space is not None:
        space = space_from_json(_load_json(args.space))
    phi = functional_from_json(_load_json(args.functional), space)
    alpha = lift(phi)
    all_pass = True
    for i in range(cfg.trials):
        rng = case_rng(cfg.seed, "user-naturality", i)
        arity = rng.randint(1, cfg.max_arity)
        kind = rng.choice(("projection", "constant", "blend", None, None))
        if kind == "blend":
            arity = 2
        h = sample_affine(rng, arity, kind)
        fs = tuple(generate_ifunction(rng, phi.space) for _ in range(arity))
        verdict = check_naturality(alpha, h, fs)
        doc = verdict.to_jsonable()
        doc["case"] = i
        doc["seed"] = cfg.seed
        if verdict.passed:
            doc["witness"] = None
        else:
            witness = dict(verdict.witness)
            witness["h"] = h.describe()
            doc["witness"] = witness
            all_pass = False
        print(json.dumps(doc, sort_keys=True))
    summary = {"property": "naturality", "trials": cfg.trials,
               "seed": cfg.seed, "result": "pass" if all_pass else "fail",
               "witness": None}
    print(json.dumps(summary, sort_keys=True))
    return 0 if all_pass else 1


def _cmd_markov(args) -> int:
    kernel = kernel_from_json(_load_json(args.kernel))
    init = measure_from_json(_load_json(args.init), kernel.dom)
    if args.steps < 0:
        raise IngestionError("steps must be nonnegative")
    if kernel.dom != kernel.cod:
        raise IngestionError("markov evolution needs an endo-kernel "
                             "(dom and cod must agree)")
    states = trajectory(kernel, init, args.steps)
    shown = enumerate(states) if args.trace else [(args.steps, states[-1])]
    for step, pi in shown:
        doc = {"step": step,
               "weights": {str(i): w for i, w in
                           enumerate(pi.describe()["weights"])}}
        print(json.dumps(doc, sort_keys=True))
    return 0


def _cmd_report(args) -> int:
    docs = [_load_json(path) for path in args.inputs]
    merged = {"reports": docs,
              "result": "pass" if all(d.get("result") == "pass" for d in docs)
              else "fail"}
    if args.format == "json":
        print(json.dumps(merged, sort_keys=True))
    else:
        sys.stdout.write(_junit_xml(*docs))
    return 0 if merged["result"] == "pass" else 1


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None,
                        help="suite seed (default: GIRYLAB_SEED or 0)")
    parser.add_argument("--trials", type=int, default=None,
                        help="cases per property (default 500)")
    parser.add_argument("--max-carrier", dest="max_carrier", type=int,
                        default=None, help="largest generated carrier (default 8)")
    parser.add_argument("--max-arity", dest="max_arity", type=int,
                        default=None, help="largest affine-map arity (default 4)")
    parser.add_argument("--max-hull-dim", dest="max_hull_dim", type=int,
                        default=None, help="largest hull dimension (default 3)")
    parser.add_argument("--config", default=None,
                        help=f"key=value config file (default ./{DEFAULT_CONFIG_FILE} "
                             "when present)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="girylab",
        description="Exact verification of probability-monad structure on "
                    "finite measurable spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a property suite")
    verify.add_argument("suite", choices=(*SUITE_NAMES, "all"))
    _add_config_flags(verify)
    verify.add_argument("--junit", default=None,
                        help="also mirror the report to a JUnit XML file")
    verify.add_argument("--timings", action="store_true",
                        help="print per-property durations to stderr")
    verify.add_argument("--space", default=None,
                        help="FinSpace JSON (with --functional)")
    verify.add_argument("--functional", default=None,
                        help="functional JSON to check for naturality")

    markov = sub.add_parser("markov", help="evolve a Markov chain exactly")
    markov.add_argument("--kernel", required=True, help="kernel JSON file")
    markov.add_argument("--init", required=True, help="initial measure JSON file")
    markov.add_argument("--steps", type=int, required=True)
    markov.add_argument("--trace", action="store_true",
                        help="print every step, not only the final one")

    report = sub.add_parser("report", help="aggregate saved reports")
    report.add_argument("inputs", nargs="+", help="report JSON files")
    report.add_argument("--format", choices=("json", "junit"), default="json")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"verify": _cmd_verify, "markov": _cmd_markov,
                "report": _cmd_report}
    try:
        return handlers[args.command](args)
    except IngestionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GirylabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
