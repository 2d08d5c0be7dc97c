"""Command-line front end.

Subcommands ``count``, ``sample``, ``eval``, ``analyze`` and ``verify``
print JSON (one record per line).  Counts and reals are always decimal
strings.

Exit codes: 0 ok, 1 usage error, 2 fuel exhausted (also a Boltzmann
retry budget running out), 3 parse error, 4 verification mismatch or
internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, List, Optional, Sequence

import mpmath

from . import counting, gfun, machines, samplers
from .syntax import (
    ParseError,
    parse_object,
    render_krivine_state,
    render_object,
    render_term,
    render_u_state,
    render_upsilon,
)
from .terms import Closure, closure_openness, size_closure, size_env, size_term

EXIT_OK, EXIT_USAGE, EXIT_FUEL, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3, 4

CLASSES = (
    "plain-terms",
    "m-open-terms",
    "shallow-terms",
    "plain-environments",
    "plain-closures",
    "closed-closures",
    "m-open-closures",
)
MACHINES = ("krivine", "krivine-fetch", "u", "upsilon", "subst")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for fuel exhaustion here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(record: dict) -> None:
    print(json.dumps(record, ensure_ascii=False))


def _window(text: str):
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like lo:hi, got {text!r}")
    if lo < 0 or lo > hi:
        raise argparse.ArgumentTypeError(f"need 0 <= lo <= hi, got {text!r}")
    return lo, hi


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _class_params(args) -> dict:
    out = {}
    if args.cls in ("m-open-terms", "shallow-terms", "closed-closures", "m-open-closures"):
        out["m"] = args.m if args.m is not None else 0
    if args.cls == "shallow-terms":
        if args.shallow_h is None:
            raise UsageError("--class shallow-terms needs --shallow-h")
        if out["m"] > args.shallow_h:
            raise UsageError("need --m <= --shallow-h")
        out["h"] = args.shallow_h
    elif args.shallow_h is not None:
        raise UsageError("--shallow-h only applies to --class shallow-terms")
    if args.m is not None and "m" not in out:
        raise UsageError(f"--m does not apply to --class {args.cls}")
    return out


# ---------------------------------------------------------------------------
# count


def _table(cls: str, params: dict, n_max: int) -> List[int]:
    if cls == "plain-terms":
        return list(counting.plain_terms_table(n_max).values)
    if cls == "m-open-terms":
        return [counting.count_m_open_terms(params["m"], n) for n in range(n_max + 1)]
    if cls == "shallow-terms":
        t = counting.shallow_terms_table(params["h"], n_max)
        return [t.get(params["m"], n) for n in range(n_max + 1)]
    if cls == "plain-environments":
        return list(counting.plain_tables(n_max)[0].values)
    if cls == "plain-closures":
        return list(counting.plain_tables(n_max)[1].values)
    return list(counting.closed_closures_table(n_max, params["m"]).counts)


def cmd_count(args) -> int:
    params = _class_params(args)
    if (args.size is None) == (args.upto is None):
        raise UsageError("count needs exactly one of --size and --upto")
    n = args.size if args.size is not None else args.upto
    values = _table(args.cls, params, n)
    record = {"class": args.cls}
    if args.size is not None:
        record["size"] = n
        record.update(params)
        record["count"] = str(values[n])
    else:
        record["upto"] = n
        record.update(params)
        record["counts"] = [str(v) for v in values]
    _emit(record)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sample


def _recursive_sampler(cls: str, params: dict, n: int) -> Callable:
    if cls == "plain-terms":
        return lambda rng: samplers.sample_plain_term(n, rng)
    if cls == "m-open-terms":
        return lambda rng: samplers.sample_m_open_term(params["m"], n, rng)
    if cls == "shallow-terms":
        return lambda rng: samplers.sample_shallow_term(params["h"], params["m"], n, rng)
    if cls == "plain-environments":
        return lambda rng: samplers.sample_plain_environment(n, rng)
    if cls == "plain-closures":
        return lambda rng: samplers.sample_plain_closure(n, rng)
    return lambda rng: samplers.sample_closed_closure(n, rng, params["m"])


def _size_of(obj) -> int:
    if isinstance(obj, Closure):
        return size_closure(obj)
    if isinstance(obj, tuple):
        return size_env(obj)
    return size_term(obj)


def cmd_sample(args) -> int:
    params = _class_params(args)
    if args.size is None:
        raise UsageError("sample needs --size")
    rng = samplers.make_rng(args.seed)
    summary = {"class": args.cls, "method": args.method, "size": args.size,
               "num": args.num, "seed": args.seed, **params}
    if args.method == "recursive":
        if args.window is not None:
            raise UsageError("--window only applies to --method boltzmann")
        draw = _recursive_sampler(args.cls, params, args.size)
    else:
        kinds = {"plain-closures": "closure", "plain-environments": "environment"}
        if args.cls not in kinds:
            raise UsageError("Boltzmann sampling covers plain-closures and plain-environments")
        kind = kinds[args.cls]
        bp = samplers.calibrate(max(args.size, 1), kind)
        window = args.window or samplers.default_window(args.size)
        gen = samplers.boltzmann_closure if kind == "closure" else samplers.boltzmann_environment
        draw = lambda rng: gen(bp, rng, window)  # noqa: E731
        summary.update(x=repr(bp.x), window=list(window))
    for _ in range(args.num):
        obj = draw(rng)
        _emit({"object": render_object(obj, args.pretty), "size": _size_of(obj)})
    _emit({"summary": summary})
    return EXIT_OK


# ---------------------------------------------------------------------------
# eval


def _read_input(args) -> str:
    if args.input is None or args.input == "-":
        return sys.stdin.read()
    return args.input


def _steps(step: Callable, state, fuel: machines.Fuel, render: Callable, trace: bool):
    # generic driver so that every machine can print its trace
    if trace:
        _emit({"step": 0, "state": render(state)})
    while True:
        nxt = step(state)
        if nxt is None:
            return state
        fuel.tick()
        state = nxt
        if trace:
            _emit({"step": fuel.used, "state": render(state)})


def cmd_eval(args) -> int:
    obj = parse_object(_read_input(args))
    if isinstance(obj, tuple):
        raise UsageError("eval takes a term or a closure, not an environment")
    pretty = args.pretty
    fuel = machines.Fuel(args.max_steps)
    machine = args.machine
    record = {"machine": machine}

    def closed(c: Closure) -> Closure:
        if closure_openness(c) != 0:
            raise UsageError(f"--machine {machine} needs a closed closure")
        return c

    try:
        if machine in ("krivine", "krivine-fetch"):
            if args.strong:
                raise UsageError("the Krivine machine stops at weak head normal form; use --machine u")
            c = obj if isinstance(obj, Closure) else Closure(obj)
            fetch = machine == "krivine-fetch"
            final = _steps(lambda s: machines.krivine_step(s, fetch), (c,), fuel,
                           lambda s: render_krivine_state(s, pretty), args.trace)
            result = render_krivine_state(final, pretty)
        elif machine == "u":
            c = machines.to_uclosure(obj if isinstance(obj, Closure) else Closure(obj))
            if args.strong:
                if args.trace:
                    raise UsageError("--trace is not available with --machine u --strong")
                result = render_term(machines.u_nf(c, fuel), pretty)
            else:
                final = _steps(machines.u_step, (c,), fuel,
                               lambda s: render_u_state(s, pretty), args.trace)
                result = render_u_state(final, pretty)
        elif machine == "upsilon":
            t = machines.embed_closure_upsilon(obj) if isinstance(obj, Closure) else obj
            final = _steps(machines.upsilon_step, t, fuel,
                           lambda s: render_upsilon(s, pretty), args.trace)
            result = render_upsilon(final, pretty)  # no Subst node is left
        else:
            t = machines.decode_closure(closed(obj)) if isinstance(obj, Closure) else obj
            step = machines.beta_step if args.strong else machines.whnf_step
            final = _steps(step, t, fuel, lambda s: render_term(s, pretty), args.trace)
            result = render_term(final, pretty)
    except machines.FuelExhausted as exc:
        record.update(result=None, steps=exc.steps, status="fuel-exhausted")
        _emit(record)
        return EXIT_FUEL
    record.update(result=result, steps=fuel.used, status="normal")
    _emit(record)
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze


def _dec(x, digits: int) -> str:
    return mpmath.nstr(x, digits)


def cmd_analyze(args) -> int:
    P = args.precision
    k = gfun.constants(P)
    with mpmath.workdps(P + gfun.GUARD_DIGITS):
        rho = k.rho_plain
        named = {
            "rho_plain": k.rho_plain,
            "rho_terms": k.rho_terms,
            "C_e": k.C_e,
            "C_c": k.C_c,
            "C_terms": k.C_terms,
            "E_at_rho": gfun.eval_E_infty(rho, P),
            "C_at_rho": gfun.eval_C_infty(rho, P),
            "L_at_rho": gfun.eval_L_infty(rho, P),
        }
    record = {"digits": P, "constants": {name: _dec(v, P) for name, v in named.items()}}
    if args.size is not None:
        n = args.size
        if n < 1:
            raise UsageError("analyze --size needs n >= 1")
        envs, clos = counting.plain_tables(n)
        exact = {
            "plain-environments": envs[n],
            "plain-closures": clos[n],
            "plain-terms": counting.count_plain_terms(n),
        }
        est = {}
        for cls, value in exact.items():
            approx = gfun.asymptotic_estimate(cls, n, P)
            with mpmath.workdps(P + gfun.GUARD_DIGITS):
                ratio = mpmath.mpf(value) / approx
            est[cls] = {"count": str(value), "estimate": _dec(approx, P), "ratio": _dec(ratio, P)}
        record["size"] = n
        record["asymptotics"] = est
    if args.shallow_h is not None:
        h = args.shallow_h
        if h < 1:
            raise UsageError("--shallow-h must be >= 1")
        shallow = {"h": h, "L0_at_rho_terms": _dec(gfun.eval_shallow_L0(h, k.rho_terms, P), P)}
        try:
            gb = gfun.growth_bounds_closed(h, P)
            shallow["growth"] = {
                "rho_lower": _dec(gb.rho_lower, P),
                "rho_upper": _dec(gb.rho_upper, P),
                "rate_lower": _dec(1 / gb.rho_lower, P),
                "rate_upper": _dec(1 / gb.rho_upper, P),
            }
        except gfun.InconclusiveError as exc:
            shallow["growth"] = {"inconclusive": str(exc)}
        record["shallow"] = shallow
    _emit(record)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    n_rec = args.upto if args.upto is not None else 300
    n_oracle = min(args.size if args.size is not None else 8, n_rec)
    rec = counting.check_e_recurrence(max(n_rec, 19))
    report = counting.oracle_crosscheck(n_oracle)
    record = {
        "recurrence": {
            "upto": max(n_rec, 19),
            "ok": rec.ok,
            "initial_ok": rec.initial_ok,
            "first_failure": rec.first_failure,
        },
        "oracle": {
            "upto": n_oracle,
            "rows": len(report.rows),
            "ok": report.ok,
            "mismatches": [
                {"class": r.cls, "params": dict(r.params), "size": r.n,
                 "counted": str(r.counted), "enumerated": str(r.enumerated)}
                for r in report.mismatches
            ],
        },
    }
    record["ok"] = rec.ok and report.ok
    _emit(record)
    return EXIT_OK if record["ok"] else EXIT_INVARIANT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lambda-closures", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common_class(p, required=True):
        p.add_argument("--class", dest="cls", choices=CLASSES, required=required)
        p.add_argument("--m", type=_nonneg)
        p.add_argument("--shallow-h", type=_positive)

    p = sub.add_parser("count", help="exact counts")
    common_class(p)
    p.add_argument("--size", type=_nonneg)
    p.add_argument("--upto", type=_nonneg, help="emit the whole table 0..N")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sample", help="random generation")
    common_class(p)
    p.add_argument("--size", type=_nonneg)
    p.add_argument("--num", type=_positive, default=1)
    p.add_argument("--seed", type=_nonneg, default=samplers.DEFAULT_SEED)
    p.add_argument("--method", choices=("recursive", "boltzmann"), default="recursive")
    p.add_argument("--window", type=_window, help="Boltzmann size window lo:hi")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("eval", help="run an evaluator")
    p.add_argument("--input", help="term or closure text (default: stdin)")
    p.add_argument("--machine", choices=MACHINES, default="u")
    p.add_argument("--strong", action="store_true", help="full normal form")
    p.add_argument("--max-steps", type=_positive, default=100_000)
    p.add_argument("--trace", action="store_true", help="print every intermediate state")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("analyze", help="singularities and asymptotic constants")
    p.add_argument("--precision", type=_positive, default=gfun.DEFAULT_DIGITS)
    p.add_argument("--size", type=_nonneg, help="compare exact counts with estimates at n")
    p.add_argument("--shallow-h", type=_positive)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="recurrence and enumeration cross-checks")
    p.add_argument("--upto", type=_nonneg, help="recurrence checked up to N (default 300)")
    p.add_argument("--size", type=_nonneg, help="oracle sizes up to N (default 8)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, ValueError) as exc:
        # domain errors from the library (empty class, open closure, ...) are usage errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (machines.FuelExhausted, samplers.RetryLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FUEL
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
