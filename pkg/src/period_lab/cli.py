"""Command-line front end: parse object descriptions, dispatch, report.

Subcommands: herbrand, polygon, tilt, jet, phimod, char, sen, batch.
Input is JSON (``--input FILE`` or ``-`` for stdin; the jet and char
commands also accept everything through flags).  Reports are JSON by
default (deterministic: sorted keys, no timestamps, schema version
embedded) or plain text with ``--format text``.

Exit codes: 0 success; 2 schema/parse errors (position-annotated for
malformed JSON); 3 for first-class "undecided"/"inconclusive" verdicts,
which are outcomes, not failures.  Batch mode isolates per-line errors
and exits 2 iff any line failed hard, else 3 iff any line was undecided,
else 0.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import characters, filtered_phi, jets, polygons, ramification, tilt
from .padic import INF, format_rational, parse_rational

SCHEMA = "period-lab/1"

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_UNDECIDED = 3


class SchemaError(Exception):
    pass


def _load_payload(args) -> dict:
    if not getattr(args, "input", None):
        raise SchemaError("missing --input (file path or '-')")
    if args.input == "-":
        text = sys.stdin.read()
        name = "<stdin>"
    else:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read {args.input}: {exc}") from exc
        name = args.input
    return _parse_json(text, name)


def _parse_json(text: str, name: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"{name}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _require(payload: dict, key: str):
    if key not in payload:
        raise SchemaError(f"missing required field {key!r}")
    return payload[key]


# ---------------------------------------------------------------------------
# handlers: payload -> (report dict, exit code)
# ---------------------------------------------------------------------------


def run_herbrand(payload: dict, args):
    data = ramification.RamificationData(
        int(_require(payload, "e")), _require(payload, "orders")
    )
    phi = ramification.herbrand_phi(data)
    psi = ramification.herbrand_psi(phi)
    report = {
        "phi": phi.to_json(),
        "psi": psi.to_json(),
        "different_valuation": format_rational(
            ramification.different_valuation(data)
        ),
    }
    return report, EXIT_OK


def run_polygon(payload: dict, args):
    kind = payload.get("kind", "series")
    if kind == "series":
        pts = []
        for x, v in _require(payload, "points"):
            pts.append((parse_rational(x), INF if v in (None, "inf") else parse_rational(v)))
        poly = polygons.hull(polygons.SeriesProfile(pts))
    elif kind == "epsilon_minus_one":
        poly = polygons.epsilon_minus_one_polygon(
            int(_require(payload, "p")), parse_rational(_require(payload, "window"))
        )
    elif kind == "t":
        lo, hi = _require(payload, "window")
        poly = polygons.t_polygon(
            int(_require(payload, "p")), parse_rational(lo), parse_rational(hi)
        )
    else:
        raise SchemaError(f"unknown polygon kind {kind!r}")
    report = {"polygon": poly.to_json()}
    if args.format == "text":
        report["sketch"] = polygons.ascii_sketch(poly)
    return report, EXIT_OK


def _tilt_expr(payload: dict, p: int) -> tilt.TiltExpr:
    if "builtin" in payload:
        name = payload["builtin"]
        builders = {
            "omega": tilt.TiltExpr.omega,
            "epsilon_minus_one": tilt.TiltExpr.epsilon_minus_one,
            "p_flat_minus_p": tilt.TiltExpr.p_flat_minus_p,
        }
        if name not in builders:
            raise SchemaError(f"unknown builtin expression {name!r}")
        return builders[name](p)
    return tilt.TiltExpr.from_json(p, _require(payload, "expr"))


def _theta_json(value: tilt.GradedThetaValue) -> dict:
    pieces = []
    for (frac, key), elt in sorted(
        value.pieces.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))
    ):
        if elt.is_zero():
            continue
        pieces.append(
            {
                "fractional_scale": format_rational(frac),
                "teichmuller": None if key is None else {"f": key[0], "poly": list(key[1])},
                "coefficients": {
                    str(k): format_rational(v) for k, v in sorted(elt.coeffs.items())
                },
            }
        )
    return {"level": value.context.N, "exact": value.exact, "pieces": pieces}


def run_tilt(payload: dict, args):
    p = int(_require(payload, "p"))
    op = payload.get("op", "theta")
    expr = _tilt_expr(payload, p)
    if op == "theta":
        level = int(payload.get("level", args.precision or 3))
        value = tilt.theta(expr, level)
        report = {"theta": _theta_json(value)}
        try:
            report["is_zero"] = value.is_zero()
            return report, EXIT_OK
        except tilt.InexactTeichmullerError:
            report["is_zero"] = "inexact-teichmuller"
            return report, EXIT_UNDECIDED
    if op == "vflat":
        depth = int(payload.get("depth", 3))
        res = tilt.vflat_sum(expr, depth)
        report = {
            "values": [
                None if v is None else ("inf" if v is INF else format_rational(v))
                for v in res.values
            ],
            "stabilized": res.stabilized,
            "conclusive": res.conclusive,
        }
        if res.stabilized:
            report["value"] = "inf" if res.value is INF else format_rational(res.value)
            return report, EXIT_OK
        return report, EXIT_UNDECIDED
    if op == "probe":
        level = int(payload.get("level", args.precision or 3))
        n_max = int(payload.get("n_max", 3))
        report = {"kernel_orbit": tilt.ker_theta_orbit_probe(expr, level, n_max)}
        return report, EXIT_OK
    if op == "generator-check":
        level = int(payload.get("level", args.precision or 3))
        depth = int(payload.get("depth", 3))
        rep = tilt.generator_condition_check(expr, level, depth)
        report = {
            "theta_is_zero": rep.theta_is_zero,
            "vflat_values": [
                None if v is None else ("inf" if v is INF else format_rational(v))
                for v in rep.vflat.values
            ],
            "vflat_is_one": rep.vflat_is_one,
            "passes": rep.passes,
        }
        return report, EXIT_OK if rep.passes is not None else EXIT_UNDECIDED
    raise SchemaError(f"unknown tilt op {op!r}")


def run_jet(payload: dict, args):
    action = payload.get("action", "verify-cocycle")
    p = int(_require(payload, "p"))
    order = int(payload.get("order", args.order or 6))
    if action == "verify-cocycle":
        g = tilt.GaloisElement(
            parse_rational(_require(payload, "chi")),
            parse_rational(_require(payload, "c")),
            p=p,
        )
        ctx = jets.JetContext(p, order)
        ok = jets.verify_cocycle(g, ctx)
        return {"verified": ok, "order": order, "p": p}, EXIT_OK
    if action == "gr-check":
        m = int(payload.get("m", order))
        ok = jets.gr_generator_check(m, p)
        return {"generates_graded_piece": ok, "m": m, "p": p}, EXIT_OK
    raise SchemaError(f"unknown jet action {action!r}")


def run_phimod(payload: dict, args):
    D = filtered_phi.FilteredPhiModule.from_json(payload)
    verdict = filtered_phi.is_admissible(D)
    report = {
        "verdict": verdict.to_json(),
        "hodge_tate_weights": D.hodge_tate_weights(),
    }
    code = EXIT_UNDECIDED if verdict.status == filtered_phi.UNDECIDED else EXIT_OK
    return report, code


def run_char(payload: dict, args):
    op = payload.get("op", "classify")
    if op == "classify":
        chi = characters.CharacterTriple.from_json(payload)
        return {"character": chi.to_json(), "flags": characters.classify(chi).to_json()}, EXIT_OK
    if op == "multiply":
        factors = _require(payload, "factors")
        if not factors:
            raise SchemaError("multiply needs at least one factor")
        acc = characters.CharacterTriple.from_json(factors[0])
        for item in factors[1:]:
            acc = acc.multiply(characters.CharacterTriple.from_json(item))
        return {"character": acc.to_json(), "flags": characters.classify(acc).to_json()}, EXIT_OK
    raise SchemaError(f"unknown char op {op!r}")


def run_sen(payload: dict, args):
    p = int(_require(payload, "p"))
    level = int(payload.get("level", 1))
    matrix = [[parse_rational(x) for x in row] for row in _require(payload, "matrix")]
    precision = int(args.precision or payload.get("precision", 20))
    inp = characters.SenInput(p, level, matrix)
    op = characters.sen_operator(inp, precision)
    verdict = characters.hodge_tate_via_sen(op)
    report = {
        "operator": op.to_json(),
        "is_trivial": characters.is_trivial_via_sen(op),
        "hodge_tate": verdict.to_json(),
    }
    code = EXIT_UNDECIDED if verdict.status == "indeterminate" else EXIT_OK
    return report, code


HANDLERS = {
    "herbrand": run_herbrand,
    "polygon": run_polygon,
    "tilt": run_tilt,
    "jet": run_jet,
    "phimod": run_phimod,
    "char": run_char,
    "sen": run_sen,
}


# ---------------------------------------------------------------------------
# batch mode
# ---------------------------------------------------------------------------


def run_batch(args):
    if args.input == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            with open(args.input) as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            _emit({"schema": SCHEMA, "error": str(exc)}, args)
            return EXIT_SCHEMA
    results = []
    counts = {"ok": 0, "undecided": 0, "error": 0}
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            payload = _parse_json(line, f"line {lineno}")
            command = _require(payload, "command")
            if command not in HANDLERS:
                raise SchemaError(f"unknown command {command!r}")
            report, code = HANDLERS[command](payload, args)
            kind = "undecided" if code == EXIT_UNDECIDED else "ok"
            counts[kind] += 1
            results.append({"line": lineno, "status": kind, "report": report})
        except (SchemaError, ValueError, KeyError) as exc:
            counts["error"] += 1
            results.append({"line": lineno, "status": "error", "message": str(exc)})
    summary = {"schema": SCHEMA, "counts": counts, "results": results}
    _emit(summary, args)
    if counts["error"]:
        return EXIT_SCHEMA
    if counts["undecided"]:
        return EXIT_UNDECIDED
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _emit(report: dict, args):
    if getattr(args, "format", "json") == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        _emit_text(report)


def _emit_text(report: dict, indent: int = 0):
    pad = "  " * indent
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _emit_text(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{pad}{key}:")
            for item in value:
                _emit_text(item, indent + 1)
                print(f"{pad}  -")
        elif key == "sketch":
            print(value)
        else:
            print(f"{pad}{key}: {value}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="period-lab",
        description="exact computations around p-adic period rings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", help="JSON input: file path or '-' for stdin")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--precision", type=int, default=None)
        sp.add_argument("--order", type=int, default=None)

    for name in ("herbrand", "polygon", "phimod", "sen"):
        common(sub.add_parser(name))

    tilt_p = sub.add_parser("tilt")
    common(tilt_p)

    jet_p = sub.add_parser("jet")
    jet_p.add_argument("action", nargs="?", default="verify-cocycle",
                       choices=("verify-cocycle", "gr-check"))
    jet_p.add_argument("--p", type=int)
    jet_p.add_argument("--chi")
    jet_p.add_argument("--c")
    jet_p.add_argument("--m", type=int)
    common(jet_p)

    char_p = sub.add_parser("char")
    char_p.add_argument("action", nargs="?", default="classify",
                        choices=("classify", "multiply"))
    char_p.add_argument("--p", type=int)
    char_p.add_argument("--lambda", dest="lam")
    char_p.add_argument("--a")
    char_p.add_argument("--b", type=int, default=0)
    common(char_p)

    batch_p = sub.add_parser("batch")
    common(batch_p)
    return parser


def _payload_from_flags(args) -> dict:
    """jet and char accept their small payloads directly as flags."""
    if args.command == "jet":
        payload = {"action": args.action}
        if args.p is not None:
            payload["p"] = args.p
        if args.chi is not None:
            payload["chi"] = args.chi
        if args.c is not None:
            payload["c"] = args.c
        if args.m is not None:
            payload["m"] = args.m
        if args.order is not None:
            payload["order"] = args.order
        return payload
    if args.command == "char":
        payload = {"op": args.action}
        if args.p is not None:
            payload["p"] = args.p
        if args.lam is not None:
            payload["lambda"] = args.lam
        if args.a is not None:
            payload["a"] = args.a
        payload["b"] = args.b
        return payload
    raise SchemaError("flag payloads only exist for jet and char")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "batch":
        return run_batch(args)
    try:
        if args.command in ("jet", "char") and not args.input:
            payload = _payload_from_flags(args)
        else:
            payload = _load_payload(args)
        report, code = HANDLERS[args.command](payload, args)
    except (SchemaError, ValueError, KeyError) as exc:
        _emit({"schema": SCHEMA, "error": str(exc)}, args)
        return EXIT_SCHEMA
    report = {"schema": SCHEMA, **report}
    _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
