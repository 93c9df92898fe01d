"""Command-line front end: run every construction, emit verifiable reports.

Each invocation prints a single JSON report with stable key order: the echoed
command, a digest of the inputs, the certificate payload, and a verified flag
that is recomputed from the payload right before emission. Exit status is 0
only when the certificate verifies; malformed input exits 2, a failed
verification or an inapplicable construction exits 1. Divergence evidence in
any report names the fuel bound it was observed at.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from importlib import resources
from typing import Any, Optional

from . import core, formal, instances, universe
from .errors import InputError, NotApplicableError

QUINE_FUEL = 10**6
RECURSION_FUEL = 10**5
RECURSION_RETRY_FUEL = 10**6
RECURSION_SAMPLE_INPUTS = (0, 1, 2, 3, 4, 5)
NONRE_SIZE = 16
NONRE_FUEL = 32


def _sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _sha256_args(obj: Any) -> str:
    return _sha256_bytes(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode())


def _outcome_json(outcome: universe.Outcome, fuel: int) -> dict:
    match outcome:
        case universe.Value(n):
            return {"kind": "value", "n": n}
        case universe.Diverged():
            return {"kind": "diverged", "fuel": fuel}
        case universe.Stuck():
            return {"kind": "stuck"}
    raise TypeError(f"not an outcome: {outcome!r}")


def _witness_json(
    f: core.EvalMatrix, report: core.NonRepresentabilityReport
) -> list[dict]:
    rows = []
    for s, t in enumerate(report.witness_rows):
        rows.append(
            {
                "column": s,
                "column_label": f.cols.label(s),
                "row": t,
                "row_label": f.rows.label(t),
                "g_value": report.g.values[t],
                "cell_value": f.cell[t][s],
            }
        )
    return rows


def _nonrep_payload(
    f: core.EvalMatrix,
    report: core.NonRepresentabilityReport,
    construction: str,
) -> tuple[dict, bool]:
    payload = {
        "kind": "non-representability",
        "construction": construction,
        "rows": f.rows.size,
        "columns": f.cols.size,
        "values": f.y.size,
        "g": list(report.g.values),
        "witness_rows": list(report.witness_rows),
        "witness": _witness_json(f, report),
    }
    return payload, core.verify_nonrepresentability(f, report)


def _bundled_inputs(name: str) -> dict:
    data = resources.files("diagkit.data").joinpath(name).read_bytes()
    return {"source": f"bundled:{name}", "sha256": _sha256_bytes(data)}


def _args_inputs(args: dict) -> dict:
    return {"args": args, "sha256": _sha256_args(args)}


def _require(data: dict, field: str, kind: type) -> Any:
    if field not in data:
        raise InputError(f"missing field {field!r}")
    value = data[field]
    if not isinstance(value, kind):
        raise InputError(f"field {field!r} must be a {kind.__name__}")
    return value


def _int_list(data: dict, field: str) -> tuple[int, ...]:
    value = _require(data, field, list)
    if any(not isinstance(x, int) or isinstance(x, bool) for x in value):
        raise InputError(f"field {field!r} must contain integers")
    return tuple(value)


def _str_list(data: dict, field: str) -> tuple[str, ...]:
    value = _require(data, field, list)
    if any(not isinstance(x, str) for x in value):
        raise InputError(f"field {field!r} must contain strings")
    return tuple(value)


def load_matrix_file(
    path: str, want_section: bool
) -> tuple[core.EvalMatrix, core.EndoMap, Optional[core.Section], dict]:
    """Read the JSON matrix format; validation errors name the offending field."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read input file: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"input file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("input file must hold a JSON object")

    y_labels = _str_list(data, "y_labels")
    t_labels = _str_list(data, "t_labels")
    s_labels = _str_list(data, "s_labels")
    try:
        y = core.Carrier(len(y_labels), y_labels)
        rows = core.Carrier(len(t_labels), t_labels)
        cols = (
            rows
            if s_labels == t_labels
            else core.Carrier(len(s_labels), s_labels)
        )
    except InputError as exc:
        raise InputError(f"bad carrier labels: {exc}") from exc

    try:
        alpha = core.EndoMap(y, _int_list(data, "alpha"))
    except InputError as exc:
        raise InputError(f"field 'alpha': {exc}") from exc

    cell = _require(data, "f", list)
    if any(not isinstance(row, list) for row in cell):
        raise InputError("field 'f' must be a list of rows")
    try:
        f = core.EvalMatrix(rows=rows, cols=cols, y=y, cell=tuple(tuple(r) for r in cell))
    except (InputError, TypeError) as exc:
        raise InputError(f"field 'f': {exc}") from exc

    section = None
    if want_section:
        if "beta" not in data or "beta_bar" not in data:
            raise InputError("--section requires fields 'beta' and 'beta_bar'")
        try:
            section = core.Section(_int_list(data, "beta"), _int_list(data, "beta_bar"))
        except InputError as exc:
            raise InputError(f"fields 'beta'/'beta_bar': {exc}") from exc
        if len(section.beta) != rows.size:
            raise InputError("field 'beta': must have one entry per row")
        if len(section.beta_bar) != cols.size:
            raise InputError("field 'beta_bar': must have one entry per column")

    inputs = {"source": path, "sha256": _sha256_bytes(raw)}
    return f, alpha, section, inputs


def _cmd_diagonal(args: argparse.Namespace) -> tuple[dict, dict, bool]:
    f, alpha, section, inputs = load_matrix_file(args.input, args.section)
    report = core.cantor_witness(f, alpha, section)
    construction = "section" if section is not None else "diagonal"
    payload, ok = _nonrep_payload(f, report, construction)
    if f.y.size == 2:
        payload["flagged"] = [
            f.rows.label(i) for i, v in enumerate(report.g.values) if v == 1
        ]
    return inputs, payload, ok


def _cmd_demo(args: argparse.Namespace) -> tuple[dict, dict, bool]:
    which = args.table
    if which == "powerset":
        fam, src = instances.demo_subset_family()
        g, report = instances.powerset_instance(fam)
        f = instances.membership_matrix(fam)
        payload, ok = _nonrep_payload(f, report, "diagonal")
        payload["missing_set"] = [i for i, bit in enumerate(g) if bit == 1]
        return _bundled_inputs(src), payload, ok
    if which in ("russell", "grelling"):
        m, src = instances.demo_russell() if which == "russell" else instances.demo_grelling()
        het, report = instances.relation_instance(m)
        f = instances.describes_matrix(m)
        payload, ok = _nonrep_payload(f, report, "diagonal")
        key = "non_self_members" if which == "russell" else "heterological"
        payload[key] = [m.labels[i] for i, bit in enumerate(het) if bit == 1]
        return _bundled_inputs(src), payload, ok
    if which == "strong-liar":
        m, src = instances.demo_strong_liar()
        letters, report = instances.strong_liar_instance(m)
        f = instances.tri_valued_matrix(m)
        payload, ok = _nonrep_payload(f, report, "diagonal")
        payload["twisted_diagonal"] = list(letters)
        return _bundled_inputs(src), payload, ok
    if which == "richard":
        m, src = instances.demo_richard()
        digits, report = instances.richard_instance(m)
        f = instances.digit_matrix(m)
        payload, ok = _nonrep_payload(f, report, "diagonal")
        payload["digits"] = list(digits)
        payload["described_reals"] = list(m.labels)
        return _bundled_inputs(src), payload, ok
    # nonre: the fuel-bounded halting table fed back through the relation instance
    m = universe.bounded_halting_matrix(NONRE_SIZE, NONRE_FUEL)
    het, report = instances.relation_instance(m)
    f = instances.describes_matrix(m)
    payload, ok = _nonrep_payload(f, report, "diagonal")
    payload["n"] = NONRE_SIZE
    payload["fuel"] = NONRE_FUEL
    payload["diagonal_language"] = [i for i, bit in enumerate(het) if bit == 1]
    payload["note"] = (
        "fuel-bounded approximation: column m is the set of inputs where "
        f"program m halts within {NONRE_FUEL} steps"
    )
    return _args_inputs({"table": "nonre", "n": NONRE_SIZE, "fuel": NONRE_FUEL}), payload, ok


def _cmd_universe(args: argparse.Namespace) -> tuple[dict, dict, bool]:
    if args.construction == "quine":
        q = universe.quine()
        checks = []
        ok = True
        for x in (0, 1, 2):
            outcome = universe.evaluate(q, [x], QUINE_FUEL)
            reproduced = outcome == universe.Value(q)
            ok = ok and reproduced
            checks.append({"input": x, "reproduces_itself": reproduced})
        payload = {
            "kind": "quine",
            "index": q,
            "program": universe.format_program(universe.decode(q)),
            "fuel": QUINE_FUEL,
            "self_checks": checks,
        }
        return _args_inputs({"construction": "quine"}), payload, ok

    if args.construction == "recursion":
        h = universe.parse_program_or_code(args.transformer)
        n0 = universe.recursion_fixed_point(h)
        transformed = universe.evaluate(h, [n0], RECURSION_FUEL)
        samples = []
        ok = isinstance(transformed, universe.Value)
        if ok:
            target = transformed.n
            for x in RECURSION_SAMPLE_INPUTS:
                fuel = RECURSION_FUEL
                left = universe.evaluate(n0, [x], fuel)
                right = universe.evaluate(target, [x], fuel)
                if left != right:
                    fuel = RECURSION_RETRY_FUEL
                    left = universe.evaluate(n0, [x], fuel)
                    right = universe.evaluate(target, [x], fuel)
                agree = (left == right) if isinstance(left, universe.Value) or isinstance(right, universe.Value) else True
                ok = ok and agree
                samples.append(
                    {
                        "input": x,
                        "fixed_point": _outcome_json(left, fuel),
                        "transformed": _outcome_json(right, fuel),
                        "agree": agree,
                    }
                )
        payload = {
            "kind": "recursion-fixed-point",
            "transformer": h,
            "n0_digits": len(str(n0)),
            "n0": n0,
            "n0_program": universe.format_program(universe.decode(n0)),
            "transformed_index": _outcome_json(transformed, RECURSION_FUEL),
            "samples": samples,
        }
        return _args_inputs({"construction": "recursion", "h": h}), payload, ok

    if args.construction == "refute-halt":
        candidate = universe.parse_program_or_code(args.candidate)
        witness = universe.refute_halting(candidate, args.fuel)
        payload = {
            "kind": "halting-refutation",
            "candidate": candidate,
            "diagonal_index": witness.g_index,
            "candidate_answer": _outcome_json(witness.candidate_answer, witness.fuel),
            "g_run": _outcome_json(witness.g_run, witness.fuel),
            "verdict": witness.verdict,
            "fuel": witness.fuel,
        }
        ok = universe.verify_refutation(witness)
        return (
            _args_inputs(
                {"construction": "refute-halt", "candidate": candidate, "fuel": args.fuel}
            ),
            payload,
            ok,
        )

    if args.construction == "rice":
        decider = universe.parse_program_or_code(args.decider)
        a = universe.parse_program_or_code(args.a)
        b = universe.parse_program_or_code(args.b)
        report = universe.rice_contradiction(decider, a, b, args.fuel)
        payload = {
            "kind": "rice-contradiction",
            "decider": decider,
            "a": a,
            "b": b,
            "n0_digits": len(str(report.n0)),
            "n0": report.n0,
            "n0_program": universe.format_program(universe.decode(report.n0)),
            "decider_answer": _outcome_json(report.decider_answer, args.fuel),
            "switched_to": _outcome_json(report.switched_to, args.fuel),
            "samples": [
                {
                    "input": x,
                    "fixed_point": _outcome_json(left, args.fuel),
                    "switched": _outcome_json(right, args.fuel),
                }
                for x, left, right in report.samples
            ],
            "verdict": report.verdict,
            "fuel": args.fuel,
        }
        ok = universe.verify_rice(report)
        return (
            _args_inputs(
                {
                    "construction": "rice",
                    "decider": decider,
                    "a": a,
                    "b": b,
                    "fuel": args.fuel,
                }
            ),
            payload,
            ok,
        )

    # halt-matrix
    m = universe.bounded_halting_matrix(args.n, args.fuel)
    het, report = instances.relation_instance(m)
    f = instances.describes_matrix(m)
    inner, ok = _nonrep_payload(f, report, "diagonal")
    payload = {
        "kind": "bounded-halting-matrix",
        "n": args.n,
        "fuel": args.fuel,
        "rel": [list(row) for row in m.rel],
        "diagonal_language": [i for i, bit in enumerate(het) if bit == 1],
        "non_representability": inner,
    }
    return (
        _args_inputs({"construction": "halt-matrix", "n": args.n, "fuel": args.fuel}),
        payload,
        ok,
    )


def _cmd_formal(args: argparse.Namespace) -> tuple[dict, dict, bool]:
    extras: dict[str, Any] = {}
    if args.sentence == "goedel":
        cert = formal.goedel_sentence()
        arg_echo: dict[str, Any] = {"sentence": "goedel"}
    elif args.sentence == "rosser":
        cert = formal.rosser_sentence()
        arg_echo = {"sentence": "rosser"}
    elif args.sentence == "tarski":
        cert = formal.tarski_sentence()
        arg_echo = {"sentence": "tarski"}
    elif args.sentence == "parikh":
        cert = formal.parikh_sentence(args.n)
        arg_echo = {"sentence": "parikh", "n": args.n}
        extras["bound"] = args.n
    else:
        consequent = formal.parse_formula(args.a)
        cert = formal.curry_sentence(consequent)
        arg_echo = {"sentence": "curry", "a": formal.format_formula(consequent)}
        extras["consequent"] = formal.format_formula(consequent)
        unquoted = formal.unquote_once(cert.reduced)
        extras["unquoted_once"] = formal.format_formula(unquoted)

    payload = {
        "kind": "diagonal-sentence",
        "name": args.sentence,
        "e": formal.format_formula(cert.e),
        "variable": formal.var_name(cert.variable),
        "g": formal.format_formula(cert.g),
        "c": formal.format_formula(cert.c),
        "g_number_digits": len(str(cert.g_number)),
        "c_number_digits": len(str(cert.c_number)),
        "reduced": formal.format_formula(cert.reduced),
        "target": formal.format_formula(cert.target),
    }
    payload.update(extras)
    if args.print_number:
        payload["g_number"] = cert.g_number
        payload["c_number"] = cert.c_number
    # recompute the certificate identity from scratch before emission
    ok = (
        formal.reduce_diag(cert.c) == cert.target
        and cert.target == formal.substitute(cert.e, cert.variable, formal.Num(cert.c_number))
        and cert.verified
    )
    return _args_inputs(arg_echo), payload, ok


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diagkit",
        description="diagonal arguments, certificates, and self-reference at desk scale",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagonal", help="run the diagonal construction on a matrix file")
    p.add_argument("--input", required=True, help="JSON matrix file")
    p.add_argument(
        "--section",
        action="store_true",
        help="use the off-diagonal form via the file's beta/beta_bar",
    )

    p = sub.add_parser("demo", help="run a bundled demonstration table")
    p.add_argument(
        "table",
        choices=["powerset", "russell", "grelling", "strong-liar", "richard", "nonre"],
    )

    p = sub.add_parser("universe", help="toy computable universe constructions")
    usub = p.add_subparsers(dest="construction", required=True)
    usub.add_parser("quine", help="build and check a self-reproducing program")
    q = usub.add_parser("recursion", help="fixed point of a total transformer")
    q.add_argument("--h", dest="transformer", required=True, help="transformer index or program text")
    q = usub.add_parser("refute-halt", help="diagonalize against a halting decider")
    q.add_argument("--candidate", required=True, help="candidate index or program text")
    q.add_argument("--fuel", type=int, default=4096)
    q = usub.add_parser("rice", help="self-defeating probe for a property decider")
    q.add_argument("--decider", required=True)
    q.add_argument("--a", required=True, help="an index inside the claimed class")
    q.add_argument("--b", required=True, help="an index outside the claimed class")
    q.add_argument("--fuel", type=int, default=10000)
    q = usub.add_parser("halt-matrix", help="fuel-bounded halting table")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--fuel", type=int, default=64)

    p = sub.add_parser("formal", help="self-referential sentence constructions")
    fsub = p.add_subparsers(dest="sentence", required=True)
    for name in ("goedel", "rosser", "tarski"):
        q = fsub.add_parser(name)
        q.add_argument("--print-number", action="store_true")
    q = fsub.add_parser("parikh")
    q.add_argument("--n", type=int, required=True, help="proof-length bound")
    q.add_argument("--print-number", action="store_true")
    q = fsub.add_parser("curry")
    q.add_argument("--a", required=True, help="closed consequent formula")
    q.add_argument("--print-number", action="store_true")

    return parser


def run_command(argv: list[str]) -> int:
    """Dispatch one command; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return code

    try:
        if args.command == "diagonal":
            inputs, payload, ok = _cmd_diagonal(args)
        elif args.command == "demo":
            inputs, payload, ok = _cmd_demo(args)
        elif args.command == "universe":
            inputs, payload, ok = _cmd_universe(args)
        else:
            inputs, payload, ok = _cmd_formal(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotApplicableError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return 1

    report = {
        "command": " ".join(argv),
        "inputs": inputs,
        "certificate": payload,
        "verified": ok,
    }
    print(json.dumps(report, indent=2))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
