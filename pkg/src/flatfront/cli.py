"""Command line: ``flatfront construct | analyze | verify | export``.

Output JSON is deterministic: keys sorted, floats written with ``%.9g``
precision, infinities as ``"inf"``.  Errors go to stderr as a JSON object
``{"error": code, "message": text}``; the exit status is 1 for invalid
input and 2 for runtime failures.
"""

import argparse
import json
import math
import sys

import numpy as np

from .analysis import analyze
from .config import load_tolerances
from .errors import BadParams, FlatFrontError, IoError
from .grid import default_grid
from .mesh import export_mesh, mesh_front
from .verify import SUITES
from .weierstrass import WeierstrassData, parse_points, revolution_data, voss_data


def _canon(obj):
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _canon(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_canon(obj.real), _canon(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float("%.9g" % x)
    return obj


def dumps(obj):
    return json.dumps(_canon(obj), sort_keys=True, indent=1) + "\n"


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(str(exc)) from exc


def _load_data(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise IoError(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise BadParams(f"{path}: not JSON ({exc})") from exc
    try:
        return WeierstrassData.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FlatFrontError):
            raise
        raise BadParams(f"{path}: not a Weierstrass data record ({exc})") from exc


def _grid(d, text):
    if text is None:
        return None
    try:
        nx, ny = (int(v) for v in text.lower().split("x"))
    except ValueError as exc:
        raise BadParams(f"--grid expects NXxNY, got {text!r}") from exc
    if nx < 2 or ny < 2:
        raise BadParams("grid resolution must be at least 2x2")
    return default_grid(d, shape=(nx, ny))


def cmd_construct(args, tol):
    if args.family == "revolution":
        d = revolution_data(args.alpha, args.c)
    else:
        d = voss_data(parse_points(args.points), force=args.force)
    _write(dumps(d.to_json()), args.out)
    return 0


def cmd_analyze(args, tol):
    d = _load_data(args.inp)
    report = analyze(d, grid=_grid(d, args.grid), n_flat=args.samples, seed=args.seed, tol=tol)
    _write(dumps(report), args.out)
    return 0


def cmd_verify(args, tol):
    checks = SUITES[args.suite]()
    for c in checks:
        print(c.line())
    ok = all(c.passed for c in checks)
    print(f"{args.suite}: {sum(c.passed for c in checks)}/{len(checks)} passed")
    return 0 if ok else 1


def cmd_export(args, tol):
    d = _load_data(args.inp)
    grid = _grid(d, args.grid)
    m = mesh_front(d, grid, t=args.t, seed=args.seed, tol=tol)
    export_mesh(m, args.format, args.out, overlays=args.overlays)
    summary = {"vertices": len(m.vertices), "faces": len(m.faces), "audit": m.audit,
               "path": args.out, "format": args.format}
    sys.stdout.write(dumps(summary))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="flatfront", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="key = value tolerance overrides")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="write Weierstrass data as JSON")
    fam = c.add_subparsers(dest="family", required=True)
    r = fam.add_parser("revolution", help="surfaces of revolution")
    r.add_argument("--alpha", type=float, required=True)
    r.add_argument("--c", type=float, default=1.0)
    r.add_argument("--out")
    v = fam.add_parser("voss", help="ratio omitting a finite point set")
    v.add_argument("--points", required=True, help='comma separated, e.g. "1,-1,inf"')
    v.add_argument("--force", action="store_true", help="allow more than three points")
    v.add_argument("--out")

    a = sub.add_parser("analyze", help="verification report as JSON")
    a.add_argument("--in", dest="inp", required=True)
    a.add_argument("--grid", help="resolution NXxNY (default 128x128)")
    a.add_argument("--samples", type=int, default=20, help="flatness sample count")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out")

    vr = sub.add_parser("verify", help="run a verification suite")
    vr.add_argument("--suite", choices=sorted(SUITES), required=True)

    e = sub.add_parser("export", help="mesh the front and write OBJ or PLY")
    e.add_argument("--in", dest="inp", required=True)
    e.add_argument("--t", type=float, default=0.0, help="parallel front offset")
    e.add_argument("--format", choices=("obj", "ply"), default="obj")
    e.add_argument("--out", required=True)
    e.add_argument("--grid", help="resolution NXxNY (default 64x64)")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--overlays", action="store_true", help="append singular curves (OBJ)")
    return p


COMMANDS = {"construct": cmd_construct, "analyze": cmd_analyze, "verify": cmd_verify,
            "export": cmd_export}


def _fail(code, message, status):
    sys.stderr.write(json.dumps({"error": code, "message": message}, sort_keys=True) + "\n")
    return status


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        tol = load_tolerances(args.config)
        return COMMANDS[args.command](args, tol)
    except FlatFrontError as exc:
        return _fail(exc.code, str(exc), exc.exit_code)
    except OSError as exc:
        return _fail("IoError", str(exc), 2)
    except ValueError as exc:
        return _fail("ValidationError", str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
