"""Command line: cara generate|run|render|verify.

    cara generate --spec gen.json --seed 1 --out instances/
    cara run      --spec exp.json --seed 1 --out results/ [--jobs 4]
    cara render   --spec instance.json [--cert cert.json] --out picture.svg
    cara verify   --spec instance.json --cert cert.json --task tverberg

A generator spec is {"kind": ..., "params": {...}, "count": N}.  An
experiment spec is {"task": ..., "inputs": [paths], "budgets": {...}}; an
instance file may carry "task" itself.  CARA_BUDGET_MS sets a soft wall
time budget for a run: instances not started in time are reported as
skipped.
"""

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .generators import GENERATORS
from .joins import Family
from .rational import InputError, point_from_json, point_to_json
from .tasks import TASKS, run_task, verify_saved

FIELDS = ("instance_id", "task", "result", "valid", "certificate", "iterations",
          "value_approx")


def _load(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _dump(obj, path):
    Path(path).write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def _jsonable(obj):
    if isinstance(obj, Family):
        return obj.to_json()
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, list):
        if obj and isinstance(obj[0], tuple):
            return [point_to_json(x) for x in obj]
        return [_jsonable(v) for v in obj]
    return obj


# ----------------------------------------------------------------- generate

def cmd_generate(args):
    spec = _load(args.spec)
    kind = spec.get("kind")
    if kind not in GENERATORS:
        raise InputError(f"{args.spec}: field 'kind': unknown value {kind!r}")
    params = spec.get("params", {})
    count = int(spec.get("count", 1))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for j in range(count):
        try:
            data = GENERATORS[kind](params, args.seed + j)
        except KeyError as exc:
            raise InputError(f"{args.spec}: params is missing field {exc}") from None
        inst = _jsonable(data)
        inst.update({k: v for k, v in spec.get("extra", {}).items()})
        inst["generator"] = {"kind": kind, "params": params, "seed": args.seed + j}
        name = out / f"{kind}-{j:04d}.json"
        _dump(inst, name)
        written.append(str(name))
    print("\n".join(written))
    return 0


# ---------------------------------------------------------------------- run

def _solve(job):
    iid, task, path, seed = job
    try:
        inst = _load(path)
        task = task or inst.get("task")
        if task is None:
            raise InputError(f"{path}: no task given")
        out, wall = run_task(task, inst, seed)
        return iid, task, out, wall, None
    except (InputError, ValueError, TypeError, KeyError) as exc:
        return iid, task, None, 0.0, f"{type(exc).__name__}: {exc}"
    except Exception as exc:   # solver failure, reported with the instance id
        return iid, task, None, 0.0, f"{type(exc).__name__}: {exc}"


def cmd_run(args):
    spec = _load(args.spec)
    task = spec.get("task")
    if task is not None and task not in TASKS:
        raise InputError(f"{args.spec}: field 'task': unknown value {task!r}")
    base = Path(args.spec).parent
    inputs = spec.get("inputs") or ([spec["input"]] if "input" in spec else None)
    if not inputs:
        raise InputError(f"{args.spec}: needs field 'inputs' (list of instance files)")
    paths = [str(p if Path(p).is_absolute() else base / p) for p in inputs]
    out = Path(args.out)
    (out / "certificates").mkdir(parents=True, exist_ok=True)
    budget_ms = os.environ.get("CARA_BUDGET_MS") or spec.get("budgets", {}).get("wall_ms")
    deadline = None if budget_ms is None else time.monotonic() + float(budget_ms) / 1000
    jobs = [(f"{j:04d}-{Path(p).stem}", task, p, args.seed + j) for j, p in enumerate(paths)]

    results = []
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_solve, jobs))
    else:
        for job in jobs:
            if deadline is not None and time.monotonic() > deadline:
                results.append((job[0], job[1], None, 0.0, "skipped"))
                continue
            results.append(_solve(job))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIELDS)
    timing = ["instance_id,wall_time_s"]
    status = 0
    for iid, t, res, wall, err in results:
        if res is None:
            skipped = err == "skipped"
            writer.writerow([iid, t or "", "skipped" if skipped else f"error: {err}",
                             "", "", 0, ""])
            if not skipped:
                print(f"{iid}: {err}", file=sys.stderr)
                status = 1
            continue
        cpath = out / "certificates" / f"{iid}.json"
        _dump({"task": t, "certificate": res.certificate}, cpath)
        writer.writerow([iid, t, res.result, str(res.valid).lower(),
                         f"certificates/{iid}.json", res.iterations, res.approx])
        timing.append(f"{iid},{wall:.6f}")
        if not res.valid:
            status = 1
    (out / "report.csv").write_text(buf.getvalue())
    (out / "timing.csv").write_text("\n".join(timing) + "\n")
    sys.stdout.write(buf.getvalue())
    return status


# ------------------------------------------------------------------- render

def cmd_render(args):
    from .svg import render_curves, render_family, render_points
    from .tverberg import TverbergCertificate
    inst = _load(args.spec)
    cert = None
    if args.cert:
        c = _load(args.cert)
        cert = c.get("certificate", c)
    if "family" in inst:
        F = Family.from_json(inst["family"])
        tc = TverbergCertificate.from_json(cert) if cert and "partition" in cert else None
        svg = render_family(F, tc)
    elif "colors" in inst:
        curves = []
        for col in inst["colors"]:
            key = "waypoints" if col.get("kind") == "plCurve" else "points"
            curves.append([point_from_json(x) for x in col[key]])
        reps = [point_from_json(x) for x in cert["reps"]] if cert else []
        target = point_from_json(inst["target"]) if inst.get("target") else (0, 0)
        svg = render_curves(curves, reps, target)
    elif "points" in inst:
        pts = [point_from_json(x) for x in inst["points"]]
        extra = [point_from_json(inst["query"])] if "query" in inst else []
        svg = render_points(pts, extra)
    elif "waypoints" in inst:
        svg = render_curves([[point_from_json(x) for x in inst["waypoints"]]])
    else:
        raise InputError(f"{args.spec}: nothing to draw (expected family, colors or points)")
    Path(args.out).write_text(svg)
    print(args.out)
    return 0


# ------------------------------------------------------------------- verify

def cmd_verify(args):
    inst = _load(args.spec)
    c = _load(args.cert)
    task = args.task or c.get("task") or inst.get("task")
    if task not in TASKS:
        raise InputError(f"cannot tell which task the certificate belongs to ({task!r})")
    ok = verify_saved(task, inst, c.get("certificate", c))
    print(f"valid={str(ok).lower()}")
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="cara", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("generate", "run", "render", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--spec", required=True, help="spec or instance JSON file")
        p.add_argument("--seed", type=int, default=0, help="64-bit seed")
        p.add_argument("--out", default=".", help="output directory (file for render)")
        if name == "run":
            p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
        if name in ("render", "verify"):
            p.add_argument("--cert", help="certificate JSON file")
        if name == "verify":
            p.add_argument("--task", choices=TASKS)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if not 0 <= args.seed < 2 ** 64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return 2
    if args.command == "verify" and not args.cert:
        print("error: verify needs --cert", file=sys.stderr)
        return 2
    handler = {"generate": cmd_generate, "run": cmd_run,
               "render": cmd_render, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
