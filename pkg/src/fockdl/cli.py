"""Command-line front end.

Exit codes: 0 success, 1 an asserted check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from fockdl import demos
from fockdl.fock import RAY_TOL, FockSpaceError, StateVector
from fockdl.gauge import GaugeError, ab_scenario, holonomy, scenario_from_json
from fockdl.logic_syntax import ParseError, format_operator, parse_formula, parse_operator, pretty_print
from fockdl.semantics import ModelError, atom_alphabet, build_model

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def ray_tolerance(override: float | None = None) -> float:
    if override is not None:
        tol = override
    else:
        env = os.environ.get("FOCKDL_TOL")
        try:
            tol = float(env) if env else RAY_TOL
        except ValueError:
            raise UsageError(f"FOCKDL_TOL is not a number: {env!r}") from None
    if not tol > 0:
        raise UsageError("tolerance must be positive")
    return tol


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def model_from_json(obj: dict, tol: float):
    """Build a model from the model-file schema (built files carry the same keys)."""
    try:
        n = int(obj["n_modes"])
    except (KeyError, TypeError, ValueError):
        raise UsageError("model file needs an integer 'n_modes'") from None
    seeds = obj.get("seeds") or [{"0" * n: [1.0, 0.0]}]
    seed_states = [StateVector.from_json(s, n) for s in seeds]
    alphabet_text = obj.get("alphabet")
    if alphabet_text is None:
        alphabet = atom_alphabet(n)
    else:
        alphabet = [parse_operator(t, n) for t in alphabet_text]
    depth = int(obj.get("depth", n + 1))
    return build_model(n, seed_states, alphabet, depth, bool(obj.get("include_zero", True)), tol)


def cmd_check(model_path, formulas, assert_valid=False, fmt="text", tol=None, out=None) -> int:
    out = out or sys.stdout
    obj = _read_json(model_path)
    model = model_from_json(obj, ray_tolerance(tol))
    parsed = [parse_formula(t, model.n_modes) for t in formulas]
    names = model.names
    rows = []
    for text, f in zip(formulas, parsed):
        vals = model.evaluate(f)
        rows.append(
            {
                "formula": text,
                "canonical": pretty_print(f),
                "values": {names[k]: bool(vals[k]) for k in range(model.n_points)},
                "valid": bool(vals.all()),
            }
        )
    all_valid = all(r["valid"] for r in rows)
    if fmt == "json":
        print(_dump({"states": list(names), "formulas": rows, "all_valid": all_valid}), file=out)
    else:
        width = max(len(n) for n in names)
        for r in rows:
            print(f"formula {r['canonical']}", file=out)
            for name in names:
                print(f"  {name:<{width}}  {'true' if r['values'][name] else 'false'}", file=out)
            print(f"  valid: {'yes' if r['valid'] else 'no'}", file=out)
    return EXIT_FAIL if assert_valid and not all_valid else EXIT_OK


def cmd_expand(text, fmt="text", n_modes=None, out=None) -> int:
    out = out or sys.stdout
    op = parse_operator(text, n_modes)
    canon = format_operator(op)
    if fmt == "json":
        terms = [
            {
                "coefficient": [t.coefficient.real + 0.0, t.coefficient.imag + 0.0],
                "creators": list(t.creators),
                "annihilators": list(t.annihilators),
            }
            for t in op.terms
        ]
        print(_dump({"n_modes": op.n_modes, "canonical": canon, "terms": terms}), file=out)
    else:
        print(canon, file=out)
    return EXIT_OK


def cmd_model_build(spec_path, out_path, tol=None, out=None) -> int:
    out = out or sys.stdout
    model = model_from_json(_read_json(spec_path), ray_tolerance(tol))
    data = model.to_json()
    text = _dump(data)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {model.n_states} states (+zero: {model.has_zero}) to {out_path}", file=out)
    else:
        print(text, file=out)
    return EXIT_OK


def cmd_holonomy(scenario_path, fmt="json", out=None) -> int:
    out = out or sys.stdout
    f, i_pt, j_pt, outbound, back = scenario_from_json(_read_json(scenario_path))
    hol = holonomy(f, outbound, back)
    ab = ab_scenario(f, i_pt, j_pt, outbound, back)
    report = {"holonomy": hol.to_json(), "ab": ab.to_json()}
    if fmt == "json":
        print(_dump(report), file=out)
    else:
        h = report["holonomy"]
        print(f"U_ji = {h['U_ji']}  U_ij = {h['U_ij']}", file=out)
        print(f"U_ij U_ji = {h['U_ij_U_ji']}  windings = {h['windings']}", file=out)
        print(f"|1 - U_ij U_ji| = {h['deviation_from_1']}", file=out)
        for label, ok in ab.checks.items():
            print(f"  {'PASS' if ok else 'FAIL'}  {label}", file=out)
    return EXIT_OK if all(ab.checks.values()) else EXIT_FAIL


def cmd_demo(name, flux=None, n_modes=None, seed=None, fmt="text", out=None) -> int:
    out = out or sys.stdout
    result = demos.run_demo(name, flux=flux, n_modes=n_modes, seed=seed)
    if fmt == "json":
        print(_dump(result.to_json()), file=out)
    else:
        print(result.to_text(), file=out)
    return EXIT_OK if result.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fockdl", description="Dynamic-logic model checker over fermionic Fock spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="evaluate formulas over a model file")
    c.add_argument("--model", required=True)
    c.add_argument("--formula", action="append", required=True)
    c.add_argument("--assert-valid", action="store_true")
    c.add_argument("--format", choices=("json", "text"), default="text")
    c.add_argument("--tol", type=float)

    e = sub.add_parser("expand", help="print the normal-ordered form of an operator")
    e.add_argument("opexpr")
    e.add_argument("--modes", type=int)
    e.add_argument("--format", choices=("json", "text"), default="text")

    m = sub.add_parser("model-build", help="close seed states under an alphabet and write the model")
    m.add_argument("--spec", required=True)
    m.add_argument("--out")
    m.add_argument("--tol", type=float)

    d = sub.add_parser("demo", help="run a built-in reproduction scenario")
    d.add_argument("name", choices=sorted(demos.DEMOS))
    d.add_argument("--flux", type=float)
    d.add_argument("--modes", type=int)
    d.add_argument("--seed", type=int)
    d.add_argument("--format", choices=("json", "text"), default="text")

    h = sub.add_parser("holonomy", help="phase factors and AB scenario for a scenario file")
    h.add_argument("--scenario", required=True)
    h.add_argument("--format", choices=("json", "text"), default="json")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            return cmd_check(args.model, args.formula, args.assert_valid, args.format, args.tol)
        if args.command == "expand":
            return cmd_expand(args.opexpr, args.format, args.modes)
        if args.command == "model-build":
            return cmd_model_build(args.spec, args.out, args.tol)
        if args.command == "demo":
            return cmd_demo(args.name, args.flux, args.modes, args.seed, args.format)
        if args.command == "holonomy":
            return cmd_holonomy(args.scenario, args.format)
    except ParseError as exc:
        print(f"fockdl: parse error: {exc.render()}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ModelError, FockSpaceError, GaugeError, KeyError, ValueError) as exc:
        print(f"fockdl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
