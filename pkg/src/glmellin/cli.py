"""Command-line interface: ``glmellin {eval,verify,residue,poles,selftest}``.

Exit codes: 0 success, 1 numeric failure, 2 usage error.  With ``--json``
every outcome (errors included) is a single JSON object on stdout; complex
numbers are written as ``[re, im]``.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import sys
import time
from pathlib import Path

from .continuation import (
    ResidueSpec,
    classify_point,
    continue_t4,
    interior,
    numeric_residue,
    pole_location,
    safe_radius,
    contour_residue,
)
from .errors import GlMellinError, PoleHit
from .mellin import QuadratureConfig, eval_t, t2
from .residues import (
    check_generic,
    residue_s1,
    residue_s1s2,
    residue_s1s2s3,
    residue_s1s3,
    residue_s2,
    residue_s2s3,
    residue_s3,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SCHEMA_PATH = Path(__file__).with_name("schema") / "report.schema.json"
CONFIG_SECTION = "glmellin"
_CONFIG_KEYS = {"height": float, "step": float, "rtol": float, "seed": int, "threads": int,
                "trials": int}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# parsing helpers


def parse_complex_list(text: str) -> tuple:
    """``"0.1+0.2i, -0.3, 1j"`` -> tuple of complex.  ``i`` and ``j`` both work."""
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "").replace("i", "j")
        if not tok:
            raise UsageError(f"empty entry in {text!r}")
        try:
            out.append(complex(tok))
        except ValueError:
            raise UsageError(f"cannot parse {tok!r} as a complex number") from None
    return tuple(out)


def parse_int_list(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _full_a(a, n):
    """Accept ``n`` entries (zero sum checked) or ``n - 1`` free ones."""
    if len(a) == n - 1:
        return (*a, -sum(a))
    if len(a) == n:
        if abs(sum(a)) > 1e-12 * (1 + max(abs(x) for x in a)):
            raise UsageError(f"--a must sum to zero (sum = {sum(a)})")
        return a
    raise UsageError(f"--a needs {n - 1} or {n} entries for n = {n}")


def _c(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _finite(x):
    return x if math.isfinite(x) else None


def load_config(path):
    """Settings from an INI file (``[glmellin]`` section); ``None`` -> defaults."""
    if path is None:
        return {}, {"source": "defaults", "note": "no --config given; built-in defaults used"}
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise UsageError(f"cannot read config file {path!r}")
    if not cp.has_section(CONFIG_SECTION):
        raise UsageError(f"config file lacks a [{CONFIG_SECTION}] section")
    out = {}
    for key, val in cp.items(CONFIG_SECTION):
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        try:
            out[key] = _CONFIG_KEYS[key](val)
        except ValueError:
            raise UsageError(f"bad value for {key}: {val!r}") from None
    return out, {"source": str(path)}


def _setting(args, conf, key, default):
    v = getattr(args, key, None)
    if v is not None:
        return v
    return conf.get(key, default)


def _quad_cfg(args, conf) -> QuadratureConfig:
    base = QuadratureConfig()
    try:
        return QuadratureConfig(height=_setting(args, conf, "height", base.height),
                                step=_setting(args, conf, "step", base.step),
                                rel_tol=_setting(args, conf, "rtol", base.rel_tol))
    except ValueError as e:
        raise UsageError(str(e)) from None


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args, conf):
    n = args.n
    if n not in (2, 3, 4):
        raise UsageError("--n must be 2, 3 or 4")
    if args.a is None or args.s is None:
        raise UsageError("eval needs --a and --s")
    a = _full_a(parse_complex_list(args.a), n)
    s = parse_complex_list(args.s)
    if len(s) != n - 1:
        raise UsageError(f"--s needs {n - 1} entries for n = {n}")
    cfg = _quad_cfg(args, conf)
    report = {"inputs": {"n": n, "a": [_c(x) for x in a], "s": [_c(x) for x in s]}}
    plan = None
    if n == 2:
        value, err, route = t2(a, s), 0.0, "closed_form"
    elif n == 3:
        value, info = eval_t(a, s, cfg, reorder=True, full_output=True)
        err, route = info.error, "quadrature"
    else:
        cls = classify_point(a, s)
        if not cls.regular:
            raise PoleHit(f"s = {s} is a pole of T_4", classification=cls)
        if interior(a, s, 2 * cfg.margin):
            value, info = eval_t(a, s, cfg, reorder=True, full_output=True)
            err, route = info.error, "quadrature"
        else:
            value, p = continue_t4(a, s, cfg)
            err, route, plan = p.est_error, "continuation", p.to_dict()
    report.update(value=_c(value), est_error=_finite(err) or 0.0, route=route, plan=plan)
    return EXIT_OK, report


def cmd_poles(args, conf):
    if args.a is None or args.s is None:
        raise UsageError("poles needs --a and --s")
    a = _full_a(parse_complex_list(args.a), 4)
    s = parse_complex_list(args.s)
    if len(s) != 3:
        raise UsageError("--s needs 3 entries")
    return EXIT_OK, {"classification": classify_point(a, s).to_dict()}


_PINS = ("s1", "s2", "s3", "s1s2", "s1s3", "s2s3", "s1s2s3")


def _residue_closed_and_oracle(a, pin, deltas, free, m, pair):
    """(closed value, pole location(s), oracle callable)."""
    a1, a2, a3, a4 = a
    if pin == "s1":
        (d,) = deltas
        spec = ResidueSpec(1, (m,), d)
        return residue_s1(a, m, d, *free), [pole_location(a, spec)], spec
    if pin == "s2":
        (d,) = deltas
        spec = ResidueSpec(2, pair, d)
        return residue_s2(a, *pair, d, *free), [pole_location(a, spec)], spec
    if pin == "s3":
        (d,) = deltas
        spec = ResidueSpec(3, (m,), d)
        return residue_s3(a, m, d, *free), [pole_location(a, spec)], spec
    # double and triple residues: iterated contour over a closed single residue
    if pin == "s1s2":
        da, db = deltas
        (s3,) = free
        p = -a1 - a4 - db
        f = lambda z: residue_s1(a, 1, da, z, s3)  # noqa: E731
        return residue_s1s2(a, da, db, s3), [-a1 - da, p], (f, 2, p)
    if pin == "s1s3":
        da, db = deltas
        (s2,) = free
        p = a2 - db
        f = lambda z: residue_s1(a, 1, da, s2, z)  # noqa: E731
        return residue_s1s3(a, da, db, s2), [-a1 - da, p], (f, 3, p)
    if pin == "s2s3":
        da, db = deltas
        (s1,) = free
        p = a3 - db
        f = lambda z: residue_s2(a, 1, 4, da, s1, z)  # noqa: E731
        return residue_s2s3(a, da, db, s1), [-a1 - a4 - da, p], (f, 3, p)
    d1, d2, d3 = deltas
    p = a3 - d3
    f = lambda z: residue_s1s2(a, d1, d2, z)  # noqa: E731
    return residue_s1s2s3(a, d1, d2, d3), [-a1 - d1, -a1 - a4 - d2, p], (f, 3, p)


def cmd_residue(args, conf):
    pin = args.pin
    nvar = len(pin) // 2
    if args.a is None:
        raise UsageError("residue needs --a")
    a = _full_a(parse_complex_list(args.a), 4)
    deltas = parse_int_list(args.delta) if args.delta else (0,) * nvar
    if len(deltas) != nvar or min(deltas) < 0:
        raise UsageError(f"--delta needs {nvar} nonnegative integers for --pin {pin}")
    free = parse_complex_list(args.s) if args.s else ()
    if len(free) != 3 - nvar:
        raise UsageError(f"--s needs the {3 - nvar} unpinned coordinate(s) for --pin {pin}")
    pair = parse_int_list(args.pair) if args.pair else (1, 2)
    try:
        m = args.m
        if pin == "s2":
            ResidueSpec(2, pair, 0)
        elif pin in ("s1", "s3"):
            ResidueSpec(1, (m,), 0)
    except ValueError as e:
        raise UsageError(str(e)) from None
    check_generic(a, max(deltas) + 2)
    closed, poles, oracle = _residue_closed_and_oracle(a, pin, deltas, free, m, tuple(pair))
    report = {"inputs": {"a": [_c(x) for x in a], "pin": pin, "delta": list(deltas),
                         "free": [_c(x) for x in free]},
              "pole": _c(poles[-1])}
    if args.mode in ("closed", "both"):
        report["closed"] = _c(closed)
    if args.mode in ("numeric", "both"):
        if isinstance(oracle, ResidueSpec):
            num = numeric_residue(a, oracle, free, cfg=_quad_cfg(args, conf))
        else:
            f, var, p = oracle
            num = contour_residue(f, p, safe_radius(a, var, p))
        report["numeric"] = _c(num)
    status = EXIT_OK
    if args.mode == "both":
        rel = abs(num - closed) / max(abs(closed), 1e-300)
        report["rel_diff"] = rel
        if rel > args.rtol_residue:
            status = EXIT_FAIL
    return status, report


def cmd_verify(args, conf):
    from .suites import run_suite

    trials = _setting(args, conf, "trials", 10)
    seed = _setting(args, conf, "seed", 0)
    if trials < 1:
        raise UsageError("--trials must be positive")
    rows = run_suite(args.suite, trials=trials, seed=seed, corrupt=args.corrupt)
    ok = all(r["passed"] for r in rows)
    return (EXIT_OK if ok else EXIT_FAIL), {"suite": args.suite, "trials": rows}


def cmd_selftest(args, conf):
    from .acceptance import CRITERIA, format_line, run_criteria

    seed = _setting(args, conf, "seed", 0)
    numbers = parse_int_list(args.criteria) if args.criteria else None
    if numbers and any(k not in CRITERIA for k in numbers):
        raise UsageError(f"criteria must be among {sorted(CRITERIA)}")
    progress = None if args.json else (lambda r: print(format_line(r), flush=True))
    results = run_criteria(numbers, seed=seed, progress=progress)
    ok = all(r.passed for r in results)
    report = {"criteria": [r.to_dict(timing=args.timing) for r in results]}
    return (EXIT_OK if ok else EXIT_FAIL), report


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "residue": cmd_residue,
            "poles": cmd_poles, "selftest": cmd_selftest}


# ---------------------------------------------------------------------------
# parser and driver


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object on stdout")
    common.add_argument("--out", help="also write the JSON report to this file")
    common.add_argument("--config", help="INI file with a [glmellin] section")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--threads", type=int,
                        help="worker threads (accepted for compatibility; runs serially)")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings")
    quad = _Parser(add_help=False)
    quad.add_argument("--height", type=float, help="truncation height of the contour")
    quad.add_argument("--step", type=float, help="initial trapezoid step")
    quad.add_argument("--rtol", type=float, help="relative tolerance of the quadrature")
    point = _Parser(add_help=False)
    point.add_argument("--a", help="spectral parameters, comma-separated complex literals")
    point.add_argument("--s", help="evaluation point, comma-separated complex literals")

    p = _Parser(prog="glmellin", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    e = sub.add_parser("eval", parents=[common, quad, point], help="evaluate T_n(s)")
    e.add_argument("--n", type=int, default=4)

    v = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    v.add_argument("--suite", required=True,
                   choices=["lemma21", "theorem22", "gl4", "pdelta", "symmetry"])
    v.add_argument("--trials", type=int)
    v.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)

    r = sub.add_parser("residue", parents=[common, quad, point], help="residues of T_4")
    r.add_argument("--pin", choices=_PINS, default="s1",
                   help="pinned variable(s); double and triple pins use fixed families")
    r.add_argument("--delta", help="depth per pinned variable, comma-separated")
    r.add_argument("--m", type=int, default=1, help="family index for s1 or s3")
    r.add_argument("--pair", help="index pair m,n for s2 (default 1,2)")
    r.add_argument("--mode", choices=["closed", "numeric", "both"], default="closed")
    r.add_argument("--rtol-residue", type=float, default=1e-6, dest="rtol_residue",
                   help="agreement tolerance in --mode both")

    sub.add_parser("poles", parents=[common, point], help="classify a point of T_4")

    st = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    st.add_argument("--criteria", help="subset, comma-separated (default all)")
    return p


def _emit(report, args_json, out):
    text = json.dumps(report, sort_keys=True, indent=2, allow_nan=False)
    if out:
        Path(out).write_text(text + "\n")
    if args_json:
        print(text)
    elif report["status"] == "error":
        print(f"error ({report['error']['type']}): {report['error']['message']}", file=sys.stderr)
    else:
        _human(report)


def _human(report):
    cmd = report["command"]
    if cmd == "eval":
        re, im = report["value"]
        print(f"T = {complex(re, im)!r}  (est. error {report['est_error']:.2e}, {report['route']})")
    elif cmd == "poles":
        print(json.dumps(report["classification"], indent=2))
    elif cmd == "residue":
        for k in ("closed", "numeric"):
            if k in report:
                print(f"{k:8s} {complex(*report[k])!r}")
        if "rel_diff" in report:
            print(f"rel diff {report['rel_diff']:.2e}")
    elif cmd == "verify":
        for row in report["trials"]:
            flag = "PASS" if row["passed"] else "FAIL"
            print(f"[{flag}] trial {row['trial']:3d}  residual {row['residual']:.3e}")
    print(f"status: {report['status']}")


_VALUE_OPTS = ("--a", "--s", "--delta", "--pair")


def _glue_values(argv):
    """``--s -0.3,1`` -> ``--s=-0.3,1`` so negative literals are not read as flags."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and argv[i + 1][:1] == "-" \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    want_json = "--json" in argv
    out = None
    start = time.perf_counter()
    command = next((x for x in argv if x in COMMANDS), None)
    try:
        args = build_parser().parse_args(argv)
        out = args.out
        conf, conf_meta = load_config(args.config)
        code, body = COMMANDS[args.command](args, conf)
        report = {"command": args.command, "status": "ok" if code == EXIT_OK else "fail", **body}
        if args.command in ("selftest", "verify"):
            report["config"] = conf_meta
        if args.timing:
            report["timing"] = {"wall_s": time.perf_counter() - start}
    except UsageError as e:
        code = EXIT_USAGE
        report = {"command": command or "eval", "status": "error",
                  "error": {"type": "usage", "message": str(e)}}
    except PoleHit as e:
        code = EXIT_FAIL
        err = {"type": e.code, "message": str(e)}
        if e.classification is not None:
            err["classification"] = e.classification.to_dict()
        report = {"command": command or "eval", "status": "error", "error": err}
    except GlMellinError as e:
        code = EXIT_FAIL
        report = {"command": command or "eval", "status": "error",
                  "error": {"type": e.code, "message": str(e)}}
    except (ValueError, ZeroDivisionError, OverflowError) as e:
        code = EXIT_FAIL
        report = {"command": command or "eval", "status": "error",
                  "error": {"type": type(e).__name__, "message": str(e)}}
    _emit(report, want_json, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
