"""Command-line interface: ``wpscount {constant,count,sweep,volume,replay}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time
from fractions import Fraction

from . import __version__
from .asymptotics import (
    LEMMA_DERIVED,
    MODES,
    complex_frame,
    divisor_asymptotic,
    fundamental_volume,
    monte_carlo_volume,
    rational_frame,
    real_quadratic_frame,
    theorem_a_breakdown,
    theorem_b_constant,
)
from .enumeration import DEFAULT_BUDGET, DIRECT, MOEBIUS, CountQuery, geometric_grid, run_query
from .errors import BudgetExceededError, FactoringBoundError, InputError, InvariantViolation
from .number_field import parse_field_spec
from .weighted_space import DivisorClass, Weight, require_well_formed, to_fraction

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4
CSV_HEADER = ("T", "count", "predicted", "ratio")
FRAMES = ("rational", "complex", "real-quadratic")

_OPEN_RE = re.compile(r"^(?:f(\d+)[.:])?x(\d+)\s*!=\s*0$")


# --- parsing ----------------------------------------------------------------


def parse_weights(text: str) -> list[Weight]:
    parts = [p for p in text.replace(" ", "").split(":")]
    if not parts or any(not p for p in parts):
        raise InputError(f"malformed weights {text!r}")
    return [Weight.parse(p) for p in parts]


def parse_open(items, weights) -> list[tuple[int, int]]:
    out = []
    for item in items or ():
        m = _OPEN_RE.match(item.strip())
        if not m:
            raise InputError(f"open constraint must look like x1!=0 or f2.x1!=0, got {item!r}")
        j = int(m.group(1) or 1) - 1
        i = int(m.group(2)) - 1
        if not 0 <= j < len(weights) or not 0 <= i < weights[j].m:
            raise InputError(f"open constraint {item!r} refers to a missing coordinate")
        out.append((j, i))
    return out


def parse_bound(text) -> Fraction:
    T = to_fraction(text) if not isinstance(text, str) else Fraction(text.strip())
    if T <= 0:
        raise InputError("T must be positive")
    return T


def parse_grid(text: str) -> list[Fraction]:
    try:
        a, b, r = text.split(":")
    except ValueError:
        raise InputError("grid must be T0:Tmax:ratio") from None
    return geometric_grid(Fraction(a), Fraction(b), Fraction(r))


def _fmt_T(T: Fraction) -> str:
    return str(T.numerator) if T.denominator == 1 else repr(float(T))


def _default_divisor(weights):
    return (1,) if len(weights) == 1 else tuple(W.total for W in weights)


# --- predictions ------------------------------------------------------------


def _prediction_form(field, weights, divisor, mode):
    """(C, alpha, beta) used for the ``predicted`` column."""
    for W in weights:
        require_well_formed(W)
    D = DivisorClass.parse(divisor)
    if len(weights) > 1 and D.a == tuple(W.total for W in weights):
        return theorem_b_constant(field, weights, mode)
    return divisor_asymptotic(field, weights, D)


# --- manifest execution -----------------------------------------------------


def _query_from_manifest(man) -> CountQuery:
    F = parse_field_spec(man["field"])
    weights = [Weight.parse(w) for w in man["weights"]]
    divisor = man.get("divisor") or _default_divisor(weights)
    oc = tuple(tuple(x) for x in man.get("open", []))
    T = Fraction(man["T"]) if man.get("T") is not None else Fraction(1)
    return CountQuery.make(F, weights, divisor, T, oc, man.get("method", DIRECT))


def execute(man: dict) -> dict:
    """Run a manifest and return its JSON-ready results (deterministic for a given manifest)."""
    cmd = man["command"]
    threads = int(man.get("threads", 1))
    budget = int(man.get("budget", DEFAULT_BUDGET))
    if cmd == "count":
        res = run_query(_query_from_manifest(man), workers=threads, budget=budget)
        return {"count": res.count, "per_class": [[repr(A), c] for A, c in res.per_class]}
    if cmd == "sweep":
        q = _query_from_manifest(man)
        form = _prediction_form(q.field, q.weights, q.divisor, man.get("mode", LEMMA_DERIVED))
        rows = []
        for Ts in man["grid"]:
            T = Fraction(Ts)
            c = run_query(q.with_bound(T), workers=threads, budget=budget).count
            p = form(T)
            rows.append({"T": _fmt_T(T), "count": c, "predicted": p, "ratio": c / p if p > 0 else math.nan})
        counts = [r["count"] for r in rows]
        if any(b < a for a, b in zip(counts, counts[1:])):
            raise InvariantViolation("counts decreased along the grid")
        return {"rows": rows, "form": {"C": form.C, "alpha": str(form.alpha), "beta": form.beta}}
    if cmd == "volume":
        W = Weight.parse(man["weights"][0])
        frame_name = man["frame"]
        R = float(man.get("R") or 1.0)
        if frame_name == "rational":
            frame = rational_frame()
        elif frame_name == "complex":
            frame = complex_frame()
        elif frame_name == "real-quadratic":
            frame = real_quadratic_frame(R)
        else:
            raise InputError(f"frame must be one of {FRAMES}")
        closed = fundamental_volume(frame.r1, frame.r2, frame.R, W)
        out = {"closed_form": closed}
        if man.get("samples"):
            est, se = monte_carlo_volume(frame, W, int(man["samples"]), int(man["seed"]), workers=threads)
            out.update(estimate=est, stderr=se, z=(est - closed) / se if se > 0 else 0.0)
        return out
    raise InputError(f"cannot execute command {cmd!r}")


def _manifest(args, command, **extra) -> dict:
    man = {
        "schema_version": SCHEMA_VERSION,
        "tool": "wpscount",
        "version": __version__,
        "command": command,
        "threads": args.threads,
        "budget": args.budget,
    }
    man.update(extra)
    return man


# --- commands ---------------------------------------------------------------


def cmd_constant(args, out) -> int:
    F = parse_field_spec(args.field)
    weights = parse_weights(args.product or args.weights)
    for W in weights:
        require_well_formed(W)
    if len(weights) == 1 and not args.divisor:
        b = theorem_a_breakdown(F, weights[0], args.tol)
        if args.json:
            json.dump({"field": F.name, "weights": str(weights[0]), **b.as_dict()}, out, indent=2)
            out.write("\n")
            return EXIT_OK
        W = weights[0]
        print(f"constant: {b.value:.12g}", file=out)
        print(f"error bound: {b.error:.3g}", file=out)
        print(f"h = {b.h}", file=out)
        print(f"zeta_k({W.total}) = {b.zeta:.15g} (+/- {b.zeta_error:.3g})", file=out)
        print(f"(2^(r1+r2) pi^r2 / sqrt(D))^m = {b.disc_factor:.15g}  [D={F.disc}, m={W.m}]", file=out)
        print(f"R/w = {b.R_over_w:.15g}", file=out)
        print(f"|W|^(r1+r2-1) = {b.weight_factor:.15g}", file=out)
        return EXIT_OK
    D = DivisorClass.parse(args.divisor) if args.divisor else DivisorClass(_default_divisor(weights))
    form = _prediction_form(F, weights, D, args.mode)
    if args.json:
        json.dump({"field": F.name, "weights": [str(W) for W in weights], "divisor": list(D.a), "mode": args.mode,
                   "C": form.C, "alpha": str(form.alpha), "beta": form.beta}, out, indent=2)
        out.write("\n")
        return EXIT_OK
    print(f"constant: {form.C:.12g}", file=out)
    print(f"growth: C * T^{form.alpha} * (log T)^{form.beta}", file=out)
    if len(weights) > 1 and D.a == tuple(W.total for W in weights):
        print(f"mode: {args.mode}", file=out)
    return EXIT_OK


def _count_manifest(args, command, **extra):
    F = parse_field_spec(args.field)
    weights = parse_weights(args.product or args.weights)
    divisor = DivisorClass.parse(args.divisor).a if args.divisor else _default_divisor(weights)
    if len(divisor) != len(weights):
        raise InputError("divisor length must match the number of factors")
    oc = parse_open(args.open, weights)
    return _manifest(
        args,
        command,
        field=F.name,
        weights=[str(W) for W in weights],
        divisor=list(divisor),
        open=[list(x) for x in oc],
        method=args.method,
        **extra,
    )


def _emit_json(out, man, results, wall):
    json.dump({"manifest": man, "results": results, "wall_time": wall}, out, indent=2)
    out.write("\n")


def cmd_count(args, out) -> int:
    man = _count_manifest(args, "count", T=str(parse_bound(args.T)))
    t0 = time.perf_counter()
    res = execute(man)
    wall = time.perf_counter() - t0
    if args.json:
        _emit_json(out, man, res, wall)
        return EXIT_OK
    print(f"count: {res['count']}", file=out)
    if args.classes:
        for k, (A, c) in enumerate(res["per_class"]):
            print(f"class {k} {A}: {c}", file=out)
    print(f"wall time: {wall:.3f}s", file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    grid = parse_grid(args.grid)
    man = _count_manifest(args, "sweep", grid=[str(T) for T in grid], mode=args.mode)
    t0 = time.perf_counter()
    res = execute(man)
    wall = time.perf_counter() - t0
    if args.format == "json":
        _emit_json(out, man, res, wall)
        return EXIT_OK
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_HEADER)
    for r in res["rows"]:
        wr.writerow([r["T"], r["count"], repr(float(r["predicted"])), repr(float(r["ratio"]))])
    out.write(buf.getvalue())
    return EXIT_OK


def cmd_volume(args, out) -> int:
    extra = dict(frame=args.frame, weights=[str(Weight.parse(args.weights))], R=args.R)
    if args.mc:
        extra.update(samples=int(args.mc[0]), seed=int(args.mc[1]))
    man = _manifest(args, "volume", **extra)
    t0 = time.perf_counter()
    res = execute(man)
    wall = time.perf_counter() - t0
    if args.json:
        _emit_json(out, man, res, wall)
        return EXIT_OK
    print(f"closed form: {res['closed_form']:.12g}", file=out)
    if "estimate" in res:
        print(f"estimate: {res['estimate']:.12g}", file=out)
        print(f"stderr: {res['stderr']:.6g}", file=out)
        print(f"z-score: {res['z']:.3f}", file=out)
    return EXIT_OK


def cmd_replay(args, out) -> int:
    with open(args.file) as fh:
        doc = json.load(fh)
    man = doc["manifest"]
    if man.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"unsupported manifest schema {man.get('schema_version')!r}")
    res = execute(man)
    same = json.loads(json.dumps(res)) == doc.get("results")
    print("identical" if same else "MISMATCH", file=out)
    if not same:
        raise InvariantViolation("replayed results differ from the recorded ones")
    return EXIT_OK


# --- entry point ------------------------------------------------------------


def _add_common(p, *, counting=True):
    p.add_argument("--field", default="Q", help="Q, Q(i), Q(sqrt(-5)), ...")
    p.add_argument("--weights", default="1,1", help="w1,w2,...; factors separated by ':'")
    p.add_argument("--product", help="product of weights, e.g. 1,1:1,1")
    p.add_argument("--divisor", help="a1,a2,... (default: (1) for one factor, anticanonical for products)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    if counting:
        p.add_argument("--open", action="append", help="x1!=0 (or f2.x1!=0 for factor 2); repeatable")
        p.add_argument("--method", choices=(DIRECT, MOEBIUS), default=DIRECT)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wpscount", description=__doc__)
    ap.add_argument("--version", action="version", version=f"wpscount {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constant", help="leading constant of the counting function")
    _add_common(p, counting=False)
    p.add_argument("--mode", choices=MODES, default=LEMMA_DERIVED)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("count", help="exact number of points with bounded size")
    _add_common(p)
    p.add_argument("--T", "-T", required=True)
    p.add_argument("--classes", action="store_true", help="print the per-class split")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sweep", help="counts and predictions on a geometric grid")
    _add_common(p)
    p.add_argument("--grid", required=True, help="T0:Tmax:ratio")
    p.add_argument("--mode", choices=MODES, default=LEMMA_DERIVED)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("volume", help="fundamental-domain volume, closed form and Monte-Carlo")
    p.add_argument("--frame", choices=FRAMES, default="rational")
    p.add_argument("--weights", default="1,1")
    p.add_argument("--R", type=float, default=math.log(1 + math.sqrt(2)), help="regulator (real-quadratic frame)")
    p.add_argument("--mc", nargs=2, metavar=("SAMPLES", "SEED"))
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("replay", help="re-run a JSON output from its manifest and compare")
    p.add_argument("file")
    p.set_defaults(func=cmd_replay)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except (BudgetExceededError, FactoringBoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvariantViolation, AssertionError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, ValueError, ZeroDivisionError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
