"""``sdtool`` command-line front end.

Every subcommand reads one JSON document (or, with ``--batch``, one document
per line) and writes one JSON document per input to standard output.

Exit codes: 0 affirmative, 1 sound negative, 2 indeterminate (non-split
spectrum), 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any

from . import chow, commuting
from .commuting import NotCommutingError
from .serialize import (InputError, dump_basepoint, dump_cycle, dump_polynomial, dump_rational,
                        dump_tuple, dumps, parse_basepoint, parse_cycle, parse_exponents,
                        parse_tuple, parse_vector)

OK, NEGATIVE, INDETERMINATE, INPUT_ERROR = 0, 1, 2, 3

COMMANDS = ("check-commute", "polarize", "spectral-data", "chow", "attach", "member",
            "ch-verify", "trace", "trace-identity", "fiber-length", "fv", "sd-check", "gen")


def _tuple_with_exponents(doc, commuting_required):
    if "a" not in doc:
        raise InputError("$.a", "missing field")
    t = parse_tuple(doc, commuting=commuting_required)
    return t, parse_exponents(doc["a"], "$.a", t.d)


def _optional_cycle(doc, t):
    if "cycle" not in doc:
        return None
    cycle = parse_cycle(doc["cycle"], "$.cycle")
    if cycle.d != t.d:
        raise InputError("$.cycle.d", f"expected {t.d}, got {cycle.d}")
    if cycle.n != t.n:
        raise InputError("$.cycle.points", f"multiplicities sum to {cycle.n}, expected {t.n}")
    return cycle


def parse_input(document: str, expected: str):
    """Parse and validate ``document`` for the subcommand ``expected``.

    Returns the domain payload; raises :class:`InputError` (exit 3) or
    :class:`NotCommutingError` (exit 1).
    """
    if expected not in COMMANDS:
        raise InputError("$", f"unknown command {expected!r}")
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise InputError("$", f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("$", "expected a JSON object")

    if expected in ("check-commute", "polarize"):
        return parse_tuple(doc)
    if expected in ("spectral-data", "sd-check"):
        return parse_tuple(doc, commuting=True)
    if expected == "trace":
        return _tuple_with_exponents(doc, False)
    if expected == "trace-identity":
        t, a = _tuple_with_exponents(doc, True)
        return t, a, _optional_cycle(doc, t)
    if expected == "ch-verify":
        t = parse_tuple(doc, commuting=True)
        return t, _optional_cycle(doc, t)
    if expected in ("chow", "fiber-length"):
        return parse_cycle(doc)
    if expected == "member":
        return parse_basepoint(doc)
    if expected == "attach":
        if "base" not in doc:
            raise InputError("$.base", "missing field")
        if "point" not in doc:
            raise InputError("$.point", "missing field")
        b = parse_basepoint(doc["base"], "$.base")
        return b, parse_vector(doc["point"], "$.point", b.d)
    if expected == "fv":
        if "cycle" not in doc:
            raise InputError("$.cycle", "missing field")
        if "v" not in doc:
            raise InputError("$.v", "missing field")
        z = parse_cycle(doc["cycle"], "$.cycle")
        return z, parse_vector(doc["v"], "$.v", z.d)
    if expected == "gen":
        n = doc.get("n")
        d = doc.get("d")
        for key, val in (("n", n), ("d", d), ("seed", doc.get("seed"))):
            if isinstance(val, bool) or not isinstance(val, int):
                raise InputError(f"$.{key}", f"expected an integer, got {val!r}")
        profile = doc.get("profile", "diagonal")
        if profile not in commuting.PROFILES:
            raise InputError("$.profile", f"expected one of {list(commuting.PROFILES)}")
        if not (1 <= n <= commuting.MAX_GEN_N):
            raise InputError("$.n", f"must lie in 1..{commuting.MAX_GEN_N}")
        if not (1 <= d <= commuting.MAX_GEN_D):
            raise InputError("$.d", f"must lie in 1..{commuting.MAX_GEN_D}")
        return n, d, doc["seed"], profile
    raise AssertionError(expected)


@dataclass(frozen=True)
class JobSpec:
    command: str
    payload: Any


def _witness_json(witness) -> dict:
    i, j, (r, c), value = witness
    return {"pair": [i, j], "entry": [r, c], "value": dump_rational(value)}


def _indeterminate(direction: int, reason: str) -> tuple[dict, int]:
    return {"verdict": "indeterminate", "direction": direction, "reason": reason}, INDETERMINATE


def execute(job: JobSpec) -> tuple[dict, int]:
    """Run one validated job; returns the JSON-ready result and its exit code."""
    cmd, p = job.command, job.payload
    try:
        if cmd == "check-commute":
            ok, witness = commuting.check_commute(p)
            if ok:
                return {"commute": True}, OK
            return {"commute": False, "witness": _witness_json(witness)}, NEGATIVE
        if cmd == "polarize":
            return dump_basepoint(commuting.polarize(p)), OK
        if cmd == "spectral-data":
            return dump_cycle(chow.spectral_data(p)), OK
        if cmd == "chow":
            return dump_basepoint(chow.chow_point(p)), OK
        if cmd == "attach":
            b, x = p
            return dump_basepoint(chow.attach_point(b, x)), OK
        if cmd == "member":
            res = chow.b_membership(p)
            if isinstance(res, chow.Member):
                return {"verdict": "member", "cycle": dump_cycle(res.cycle)}, OK
            if isinstance(res, chow.NotMember):
                return {"verdict": "not_member", "certificate": res.certificate}, NEGATIVE
            return _indeterminate(res.direction, res.reason)
        if cmd == "ch-verify":
            t, z = p
            z = z if z is not None else chow.spectral_data(t)
            ok, gen = commuting.cayley_hamilton_verify(t, z)
            out = {"ok": ok, "cycle": dump_cycle(z)}
            if not ok:
                out["failing_generator"] = [
                    {"point": [dump_rational(x) for x in coords], "exp": list(exp)}
                    for coords, exp in gen]
            return out, OK if ok else NEGATIVE
        if cmd == "trace":
            t, a = p
            return {"a": list(a), "trace": dump_rational(commuting.trace_word(t, a))}, OK
        if cmd == "trace-identity":
            t, a, z = p
            z = z if z is not None else chow.spectral_data(t)
            ok = commuting.verify_trace_identity(t, z, a)
            return {"a": list(a), "holds": ok, "trace": dump_rational(commuting.trace_word(t, a)),
                    "cycle_moment": dump_rational(commuting.cycle_moment(z, a))}, \
                OK if ok else NEGATIVE
        if cmd == "fiber-length":
            length, flat = chow.cayley_fiber_length(p)
            return {"length": length, "flat": flat}, OK
        if cmd == "fv":
            z, v = p
            return dump_polynomial(chow.f_v_poly(z, v)), OK
        if cmd == "sd-check":
            rep = chow.sd_consistency(p)
            return {"cycle": dump_cycle(rep.cycle),
                    "base_from_cycle": dump_basepoint(rep.base_from_cycle),
                    "base_from_polarization": dump_basepoint(rep.base_from_polarization),
                    "equal": rep.equal}, OK if rep.equal else NEGATIVE
        if cmd == "gen":
            n, d, seed, profile = p
            return dump_tuple(commuting.random_commuting(n, d, seed, profile)), OK
    except chow.NonSplitError as exc:
        return _indeterminate(exc.direction, str(exc))
    except ValueError as exc:
        # Domain-level precondition failures (size bounds, mismatched lengths).
        return {"error": str(exc), "path": "$"}, INPUT_ERROR
    raise AssertionError(cmd)


def run_document(command: str, document: str) -> tuple[dict, int]:
    try:
        payload = parse_input(document, command)
    except NotCommutingError as exc:
        return {"error": "matrices do not commute", "witness": _witness_json(exc.witness)}, NEGATIVE
    except InputError as exc:
        return {"error": str(exc), "path": exc.path}, INPUT_ERROR
    except ValueError as exc:
        return {"error": str(exc), "path": "$"}, INPUT_ERROR
    return execute(JobSpec(command, payload))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdtool", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("-i", "--input", help="input file (default: standard input)")
    parser.add_argument("--batch", action="store_true",
                        help="treat input as newline-delimited JSON, one job per line")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    parser.add_argument("--seed", type=int, help="seed for gen")
    parser.add_argument("--profile", choices=commuting.PROFILES, default="diagonal",
                        help="instance profile for gen")
    parser.add_argument("--size", help='"n,d" for gen')
    return parser


def _gen_document(args) -> str:
    if args.seed is None or args.size is None:
        raise InputError("$", "gen needs --seed and --size")
    try:
        n, d = (int(x) for x in args.size.split(","))
    except ValueError:
        raise InputError("$.size", f"expected 'n,d', got {args.size!r}") from None
    return json.dumps({"n": n, "d": d, "seed": args.seed, "profile": args.profile})


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout

    def emit(result, code):
        if code == INPUT_ERROR or "error" in result:
            print(f"sdtool {args.command}: {result.get('error')}", file=sys.stderr)
        out.write(dumps(result, pretty=args.pretty and not args.batch) + "\n")
        return code

    if args.command == "gen":
        try:
            document = _gen_document(args)
        except InputError as exc:
            return emit({"error": str(exc), "path": exc.path}, INPUT_ERROR)
        return emit(*run_document("gen", document))

    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
    except OSError as exc:
        return emit({"error": str(exc), "path": "$"}, INPUT_ERROR)

    if not args.batch:
        return emit(*run_document(args.command, text))
    worst = OK
    for line in text.splitlines():
        if not line.strip():
            continue
        worst = max(worst, emit(*run_document(args.command, line)))
    return worst


if __name__ == "__main__":
    sys.exit(main())
