"""Command line entry points: run, report, selftest."""

import argparse
import json
import os
import sys

from .reporting import render_bundle, write_csv_tables
from .scenarios import Scenario, ScenarioError, bundle_to_json, load_scenario, run_scenario


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="odirac",
        description="Exact computations with cubic Dirac operators on "
                    "category-O weight windows.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file and write its bundle")
    p_run.add_argument("scenario", help="path to a scenario JSON file")
    p_run.add_argument("--depth", type=int, default=None,
                       help="override the module window depth")
    p_run.add_argument("--out", default=None,
                       help="output directory (default: $ODIRAC_OUT or '.')")
    p_run.add_argument("--jobs", type=int, default=1,
                       help="worker threads for per-weight evaluation")

    p_rep = sub.add_parser("report", help="render a bundle as text tables")
    p_rep.add_argument("bundle", help="path to a bundle JSON file")
    p_rep.add_argument("--csv", default=None, help="also write CSV tables here")

    p_self = sub.add_parser("selftest", help="run the full acceptance suite")
    p_self.add_argument("--json", default=None, help="write results as JSON here")

    args = parser.parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "report":
        return _cmd_report(args)
    if args.command == "selftest":
        return _cmd_selftest(args)
    return 2


def _cmd_run(args):
    try:
        scn = load_scenario(args.scenario)
        if args.depth is not None:
            doc = dict(scn.doc)
            doc["module"] = dict(doc["module"], depth=args.depth)
            scn = Scenario(doc)
    except ScenarioError as e:
        print(f"scenario error: {e}", file=sys.stderr)
        return 2
    try:
        bundle = run_scenario(scn, jobs=args.jobs)
    except ScenarioError as e:
        print(f"scenario error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        print(f"assertion failure: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    outdir = args.out or scn.out_dir or os.environ.get("ODIRAC_OUT") or "."
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, f"{scn.name}.bundle.json")
    with open(path, "w") as fh:
        fh.write(bundle_to_json(bundle))
    print(path)
    if not bundle["ok"]:
        failing = sorted(t for t, d in bundle["tasks"].items() if not d.get("ok", True))
        print(f"failed tasks: {', '.join(failing)}", file=sys.stderr)
        return 1
    return 0


def _cmd_report(args):
    try:
        with open(args.bundle) as fh:
            bundle = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        print(f"cannot read bundle: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(render_bundle(bundle))
    if args.csv:
        for path in write_csv_tables(bundle, args.csv):
            print(f"wrote {path}")
    return 0


def _cmd_selftest(args):
    from .acceptance import run_all

    results, total = run_all(verbose=True)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"results": results, "total_seconds": round(total, 2)},
                      fh, indent=1, sort_keys=True, default=str)
            fh.write("\n")
    return 0 if all(r["ok"] for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
