"""Command-line interface.

Every subcommand prints one JSON object: the command's payload plus
"status" and "timing_ns".  Exit codes: 0 ok, 1 no_solution, 2 usage or
validation error.  `bench` is the exception and prints CSV.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import chebyshev, degree_solver, kex_sim, perm_generic, residue_forms
from .ring2w import MAX_WIDTH, RingElem, WidthError, parse_int, reduce

MIN_CLI_WIDTH = 5
EXIT_CODES = {"ok": 0, "no_solution": 1, "error": 2}


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    timing_ns: int = 0

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {"status": self.status, **self.payload, "timing_ns": self.timing_ns}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _width(text: str) -> int:
    try:
        w = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed width {text!r}")
    if not MIN_CLI_WIDTH <= w <= MAX_WIDTH:
        raise argparse.ArgumentTypeError(f"width {w} outside [{MIN_CLI_WIDTH}, {MAX_WIDTH}]")
    return w


def _number(text: str) -> int:
    try:
        return parse_int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _poly(text: str) -> tuple:
    try:
        return tuple(parse_int(t) for t in text.split(",") if t.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _residue(n: int, w: int) -> RingElem:
    return reduce(n, w)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + n for n in missing))


# -- subcommands -------------------------------------------------------------

def cmd_eval(args) -> CommandResult:
    _need(args, "degree", "x")
    v = chebyshev.eval(args.degree, _residue(args.x, args.width))
    return CommandResult("ok", {"value": str(v)})


def cmd_classify(args) -> CommandResult:
    _need(args, "x")
    form = residue_forms.classify(_residue(args.x, args.width))
    return CommandResult("ok", form.to_json())


def cmd_orbit_period(args) -> CommandResult:
    _need(args, "x", "degree")
    x = _residue(args.x, args.width)
    if args.degree % 2 == 0:
        raise UsageError("orbit-period needs an odd degree")
    return CommandResult("ok", {"period": residue_forms.orbital_period_closed(x, args.degree)})


def cmd_degree_period(args) -> CommandResult:
    _need(args, "x")
    return CommandResult("ok", {"period": residue_forms.degree_period_closed(_residue(args.x, args.width))})


def cmd_solve(args) -> CommandResult:
    _need(args, "x", "y")
    sol = degree_solver.solve(_residue(args.x, args.width), _residue(args.y, args.width), first_only=args.first)
    return CommandResult("ok" if sol else "no_solution", sol.to_json())


def cmd_verify(args) -> CommandResult:
    _need(args, "x", "y", "degree")
    ok = degree_solver.verify(_residue(args.x, args.width), _residue(args.y, args.width), args.degree)
    return CommandResult("ok", {"valid": ok})


def cmd_rivest_check(args) -> CommandResult:
    _need(args, "poly")
    payload = {"permutation": perm_generic.is_permutation_poly(args.poly, args.width)}
    if args.width <= 12:
        payload["bijective"] = perm_generic.is_bijective(args.poly, args.width)
    return CommandResult("ok", payload)


def _build_oracle(args) -> perm_generic.IterOracle:
    if args.oracle == "chebyshev":
        _need(args, "degree")
        if args.degree % 2 == 0:
            raise UsageError("chebyshev oracle needs an odd --degree")
        return perm_generic.IterOracle.chebyshev(args.degree, args.width)
    _need(args, "poly")
    if args.oracle == "table" and args.width > perm_generic.TABLE_MAX_WIDTH:
        raise UsageError(f"table oracle needs width <= {perm_generic.TABLE_MAX_WIDTH}")
    try:
        poly = perm_generic.PermPoly(args.poly, args.width)
    except ValueError as e:
        raise UsageError(str(e))
    if args.oracle == "table":
        return perm_generic.IterOracle.table(poly)
    return perm_generic.IterOracle.direct(poly)


def cmd_generic_attack(args) -> CommandResult:
    _need(args, "x", "y")
    oracle = _build_oracle(args)
    trace = perm_generic.lift_iterate_log(oracle, args.x, args.y)
    payload = {"oracle_calls": trace.oracle_calls}
    if trace.j is None:
        return CommandResult("no_solution", {"j": None, **payload})
    return CommandResult("ok", {"j": str(trace.j), **payload})


def cmd_kex_demo(args) -> CommandResult:
    rng = random.Random(args.seed)
    x_pub = kex_sim.sample_base(rng, args.width, args.base)
    a, b = kex_sim.keygen(rng, args.width), kex_sim.keygen(rng, args.width)
    transcript, key = kex_sim.protocol_run(x_pub, a, b)
    recovered = kex_sim.eavesdrop(transcript)
    return CommandResult(
        "ok",
        {
            "transcript": json.loads(transcript.to_json()),
            "shared_key": str(key),
            "recovered_key": str(recovered),
            "recovered": recovered == key,
        },
    )


def _theorem1_cell(w: int, x: int, p: int) -> bool:
    xe = RingElem(x, w)
    return residue_forms.orbital_period_closed(xe, p) == residue_forms.orbital_period_brute(xe, p)


def _theorem2_cell(w: int, x: int) -> bool:
    xe = RingElem(x, w)
    return residue_forms.degree_period_closed(xe) == residue_forms.degree_period_brute(xe)


def cmd_verify_theorems(args) -> CommandResult:
    w = args.width
    if w > 16:
        raise UsageError("verify-theorems brute-force oracles need width <= 16")
    if args.samples:
        rng = random.Random(args.seed)
        cells1 = [(rng.randrange(1 << w), 2 * rng.randrange(1 << (w - 1)) + 1) for _ in range(args.samples)]
    else:
        cells1 = [(x, p) for x in range(1 << w) for p in range(1, 1 << w, 2)]
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        r1 = list(pool.map(lambda c: _theorem1_cell(w, *c), cells1, chunksize=256))
        r2 = list(pool.map(lambda x: _theorem2_cell(w, x), range(1 << w), chunksize=64))
    mism1 = r1.count(False)
    mism2 = r2.count(False)
    payload = {
        "width": w,
        "orbital": {"cells": len(cells1), "mismatches": mism1},
        "degree": {"cells": len(r2), "mismatches": mism2},
    }
    return CommandResult("ok" if mism1 == mism2 == 0 else "error", payload)


def bench_rows(widths, runs: int, instances: int, seed, threads: int = 1) -> list[tuple[int, int, int]]:
    """(width, median_ns, runs) for solve on `instances` planted problems per width."""
    def one(w):
        rng = random.Random(f"{seed}:{w}")
        cases = []
        for _ in range(instances):
            x = reduce(rng.getrandbits(w), w)
            cases.append((x, chebyshev.eval(rng.getrandbits(w), x)))
        times = []
        for _ in range(runs):
            t0 = time.perf_counter_ns()
            for x, y in cases:
                degree_solver.solve(x, y)
            times.append((time.perf_counter_ns() - t0) // instances)
        return w, int(statistics.median(times)), runs

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return list(pool.map(one, widths))


# -- wiring ------------------------------------------------------------------

COMMANDS = {
    "eval": cmd_eval,
    "classify": cmd_classify,
    "orbit-period": cmd_orbit_period,
    "degree-period": cmd_degree_period,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "rivest-check": cmd_rivest_check,
    "generic-attack": cmd_generic_attack,
    "kex-demo": cmd_kex_demo,
    "verify-theorems": cmd_verify_theorems,
    "bench": None,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--width", "-w", type=_width, default=None)
    common.add_argument("--x", type=_number)
    common.add_argument("--y", type=_number)
    common.add_argument("--degree", type=_number)
    common.add_argument("--poly", type=_poly)
    common.add_argument("--json", action=argparse.BooleanOptionalAction, default=True)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)

    parser = _Parser(prog="cheb2w", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "solve":
            p.add_argument("--first", action="store_true", help="stop at the first shift with a solution")
        elif name == "generic-attack":
            p.add_argument("--oracle", choices=("table", "direct", "chebyshev"), default="table")
        elif name == "kex-demo":
            p.add_argument("--base", choices=kex_sim.BASE_KINDS, default="odd_near")
        elif name == "verify-theorems":
            p.add_argument("--samples", type=int, default=0, help="random orbital cells instead of all")
        elif name == "bench":
            p.add_argument("--widths", default="16,32,64,128,256")
            p.add_argument("--runs", type=int, default=9)
            p.add_argument("--instances", type=int, default=5)
    return parser


def _render(obj: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(obj, separators=(",", ":"))
    return "\n".join(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in obj.items())


def run(argv=None, out=None) -> CommandResult:
    out = sys.stdout if out is None else out
    t0 = time.perf_counter_ns()
    as_json = True
    try:
        args = build_parser().parse_args(argv)
        as_json = args.json
        if args.command == "bench":
            widths = [_width(t) for t in args.widths.split(",")]
            if args.runs < 9:
                raise UsageError("bench needs --runs >= 9")
            rows = bench_rows(widths, args.runs, args.instances, args.seed, args.threads)
            out.write("width,median_ns,runs\n")
            for row in rows:
                out.write(",".join(map(str, row)) + "\n")
            return CommandResult("ok", {"rows": rows}, time.perf_counter_ns() - t0)
        if args.width is None:
            raise UsageError("missing required option: --width")
        result = COMMANDS[args.command](args)
    except (UsageError, argparse.ArgumentTypeError, ValueError) as e:
        result = CommandResult("error", {"error": str(e)})
    result.timing_ns = time.perf_counter_ns() - t0
    out.write(_render(result.to_json(), as_json) + "\n")
    return result


def main(argv=None) -> int:
    return run(argv).exit_code


if __name__ == "__main__":
    sys.exit(main())
