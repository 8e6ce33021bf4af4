"""Command line driver: ``qmatrix <command> [options]``.

Exit status is 0 when everything checked passes, 1 when a check fails and
2 for bad configuration or input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .algebra import ExponentMatrix, algebra
from .cluster import (
    MutationLog,
    QuantumSeed,
    build_data,
    diamond_check,
    diamond_pairs,
    mutate,
    quantum_line_mutation,
    reach_minor,
)
from .dcb import dcb, expand_on_dcb
from .errors import ConfigError, NonIntegralSeed, NotCompatible, QMatrixError
from .lines import BrokenLine, all_lines
from .minors import MinorSpec, covariance_profile, quantum_minor
from .suites import SUITES

MAX_DIM = 6


@dataclass
class RunConfig:
    shape: tuple[int, int] = (2, 2)
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    max_sum: int = 2
    seed: int = 0
    out: str | None = None
    timings: bool = False

    def validate(self) -> RunConfig:
        m, n = self.shape
        if not (1 <= m <= MAX_DIM and 1 <= n <= MAX_DIM):
            raise ConfigError(f"shape {m}x{n} outside 1..{MAX_DIM}")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suite(s) {bad}; choose from {sorted(SUITES)}")
        if self.max_sum < 0:
            raise ConfigError("max-sum must be non-negative")
        return self


def parse_shape(text: str) -> tuple[int, int]:
    try:
        m, n = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise ConfigError(f"shape must look like 3x4, got {text!r}") from None
    if not (1 <= m <= MAX_DIM and 1 <= n <= MAX_DIM):
        raise ConfigError(f"shape {m}x{n} outside 1..{MAX_DIM}")
    return m, n


def read_config(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{no}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


def build_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        for k, v in read_config(args.config).items():
            if k == "shape":
                cfg.shape = parse_shape(v)
            elif k in ("suite", "suites"):
                cfg.suites = [s.strip() for s in v.split(",") if s.strip()]
            elif k == "max_sum":
                cfg.max_sum = int(v)
            elif k == "seed":
                cfg.seed = int(v)
            elif k == "out":
                cfg.out = v
            elif k == "timings":
                cfg.timings = v.lower() in ("1", "true", "yes")
            else:
                raise ConfigError(f"unknown config key {k!r}")
    if args.shape:
        cfg.shape = parse_shape(args.shape)
    if args.suite:
        cfg.suites = [s for part in args.suite for s in part.split(",") if s]
    if args.max_sum is not None:
        cfg.max_sum = args.max_sum
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out:
        cfg.out = args.out
    if args.timings:
        cfg.timings = True
    return cfg.validate()


# ---------------------------------------------------------------------------
# commands


def _emit(args, payload, text: str):
    body = json.dumps(payload, sort_keys=True, indent=2) if args.json else text
    if getattr(args, "out", None):
        Path(args.out).write_text(body + "\n")
    else:
        print(body)


def cmd_verify(args) -> int:
    cfg = build_config(args)
    m, n = cfg.shape
    report = {"shape": [m, n], "max_sum": cfg.max_sum, "seed": cfg.seed, "suites": {}}
    ok_all = True
    for name in cfg.suites:
        t0 = time.perf_counter()
        reports = SUITES[name](m, n, max_sum=cfg.max_sum, seed=cfg.seed)
        dt = time.perf_counter() - t0
        ok = all(r.passed for r in reports)
        ok_all &= ok
        entry = {"passed": ok, "count": len(reports),
                 "failures": sum(not r.passed for r in reports),
                 "reports": [r.to_json() for r in reports]}
        if cfg.timings:
            entry["seconds"] = round(dt, 3)
        report["suites"][name] = entry
        if not args.json:
            for r in reports:
                if args.verbose or not r.passed:
                    print(r.line())
            tail = f" ({dt:.2f}s)" if cfg.timings else ""
            print(f"{'PASS' if ok else 'FAIL'} {name} {m}x{n}: "
                  f"{len(reports) - entry['failures']}/{len(reports)}{tail}")
    report["passed"] = ok_all
    body = json.dumps(report, sort_keys=True, indent=2)
    if cfg.out:
        Path(cfg.out).write_text(body + "\n")
    elif args.json:
        print(body)
    return 0 if ok_all else 1


def cmd_dcb(args) -> int:
    m, n = parse_shape(args.shape)
    A = ExponentMatrix.parse(args.index, m, n)
    b = dcb(A, algebra(m, n))
    _emit(args, {"index": str(A), "element": b.to_json()}, str(b))
    return 0


def cmd_expand(args) -> int:
    m, n = parse_shape(args.shape)
    alg = algebra(m, n)
    x = alg.monomial(ExponentMatrix.parse(args.index, m, n))
    coeffs = sorted(expand_on_dcb(x).items(), key=lambda kv: kv[0].flat, reverse=True)
    text = "\n".join(f"{c}  b({B})" for B, c in coeffs)
    _emit(args, {str(B): c.to_dict() for B, c in coeffs}, text)
    return 0


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def cmd_minor(args) -> int:
    m, n = parse_shape(args.shape)
    spec = MinorSpec(_ints(args.rows), _ints(args.cols))
    if not spec.fits(m, n):
        raise ConfigError(f"{spec} does not fit {m}x{n}")
    x = quantum_minor(spec, algebra(m, n))
    _emit(args, {"minor": spec.to_json(), "element": x.to_json()}, str(x))
    return 0


def cmd_lines(args) -> int:
    m, n = parse_shape(args.shape)
    if args.line:
        L = _line_arg(args, m, n)
        fam = {f"{i},{j}": str(s) for (i, j), s in sorted(L.family.items())}
        text = L.ascii() + "\n" + "\n".join(f"({p}) {s}" for p, s in fam.items())
        _emit(args, {"line": str(L), "ascii": L.ascii(), "family": fam}, text)
        return 0
    lines = all_lines(m, n)
    text = "\n".join(str(L) for L in lines) + f"\ncount: {len(lines)}"
    _emit(args, {"count": len(lines), "lines": [str(L) for L in lines]}, text)
    return 0


def _line_arg(args, m, n, text: str | None = None) -> BrokenLine:
    text = args.line if text is None else text
    if not text or text == "plus":
        return BrokenLine.plus(m, n)
    if text == "minus":
        return BrokenLine.minus(m, n)
    return BrokenLine.parse(text, m, n)


def _seed_text(seed: QuantumSeed) -> str:
    rows = [f"line {seed.line}"] if seed.line else []
    for i, v in enumerate(seed.variables):
        tag = "*" if i in seed.ex else " "
        pt = f"{seed.labels[i]}" if seed.labels else ""
        rows.append(f"{tag} {i:2d} {pt} {v}")
    rows.append("lambda:")
    rows += ["  " + " ".join(f"{x:3d}" for x in r) for r in seed.lam.tolist()]
    rows.append("B:")
    rows += ["  " + " ".join(f"{x:3d}" for x in r) for r in seed.b.tolist()]
    return "\n".join(rows)


def cmd_seed(args) -> int:
    m, n = parse_shape(args.shape)
    seed = build_data(_line_arg(args, m, n)).seed
    _emit(args, seed.to_json(), _seed_text(seed))
    return 0


def _load_seed(path: str) -> QuantumSeed:
    try:
        return QuantumSeed.from_json(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError, KeyError) as e:
        raise ConfigError(f"cannot load seed from {path}: {e}") from None


def cmd_mutate(args) -> int:
    seed = _load_seed(args.input)
    target = MinorSpec(_ints(args.target_rows), _ints(args.target_cols)) if args.target_rows else None
    new, rel = mutate(seed, args.k, target)
    payload = new.to_json()
    payload["exchange"] = {"old": rel.old.to_json(), "rhs": rel.rhs.to_json()}
    _emit(args, payload, _seed_text(new) + f"\nx_new * {rel.old} = {rel.rhs}")
    return 0


def cmd_line_mutate(args) -> int:
    m, n = parse_shape(args.shape)
    src = _line_arg(args, m, n)
    dst = _line_arg(args, m, n, args.target)
    log = MutationLog()
    seed = quantum_line_mutation(build_data(src).seed, dst, log)
    payload = seed.to_json()
    payload["steps"] = log.steps
    text = "\n".join(f"{s['old']} -> {s['new']}" + (" (column replaced)" if s["column_changed"] else "")
                     for s in log.steps)
    _emit(args, payload, text + "\n" + _seed_text(seed))
    return 0


def cmd_build_data(args) -> int:
    m, n = parse_shape(args.shape)
    data = build_data(_line_arg(args, m, n))
    text = (_seed_text(data.seed) + f"\nmutable below the line: {list(data.mutable_minus)}"
            + f"\nsteps from the minimal line: {len(data.d_history) - 1}")
    _emit(args, data.to_json(), text)
    return 0


def cmd_diamond(args) -> int:
    m, n = parse_shape(args.shape)
    lines = [_line_arg(args, m, n)] if args.line else all_lines(m, n)
    reports = [diamond_check(L, c1, c2) for L in lines for c1, c2 in diamond_pairs(L)]
    _emit(args, [r.to_json() for r in reports],
          "\n".join(r.line() for r in reports) + f"\n{len(reports)} diamond(s)")
    return 0 if all(r.passed for r in reports) else 1


def cmd_reach(args) -> int:
    m, n = parse_shape(args.shape)
    spec = MinorSpec(_ints(args.rows), _ints(args.cols))
    path = reach_minor(_line_arg(args, m, n), spec)
    _emit(args, [str(L) for L in path], "\n".join(str(L) for L in path) or "(already in the family)")
    return 0


def cmd_covariance(args) -> int:
    m, n = parse_shape(args.shape)
    prof = covariance_profile(args.size, algebra(m, n))
    _emit(args, {"size": args.size, "matches": prof.matches, "measured": prof.measured},
          prof.ascii() + f"\nmatches prediction: {prof.matches}")
    return 0 if prof.matches else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmatrix", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, shape=True):
        sp = sub.add_parser(name, help=help_)
        if shape:
            sp.add_argument("--shape", required=name != "verify", help="grid size, e.g. 3x4")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--out", help="write output to this file")
        sp.set_defaults(func=func)
        return sp

    sp = add("verify", cmd_verify, "run verification suites")
    sp.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} (repeatable)")
    sp.add_argument("--max-sum", type=int, help="largest entry sum for the dcb suite")
    sp.add_argument("--seed", type=int, help="random seed for property sweeps")
    sp.add_argument("--config", help="key = value file; flags override it")
    sp.add_argument("--timings", action="store_true", help="include wall-clock seconds per suite")
    sp.add_argument("-v", "--verbose", action="store_true", help="print passing checks too")

    sp = add("dcb", cmd_dcb, "dual canonical basis element b(A)")
    sp.add_argument("--index", required=True, help="exponent matrix, rows separated by ';'")
    sp = add("expand", cmd_expand, "expand Z^A on the dual canonical basis")
    sp.add_argument("--index", required=True)

    sp = add("minor", cmd_minor, "quantum minor on given rows and columns")
    sp.add_argument("--rows", required=True)
    sp.add_argument("--cols", required=True)

    sp = add("lines", cmd_lines, "enumerate broken lines or show one family")
    sp.add_argument("--line", help="corner list such as (1,3)->(2,3)->(2,1)")
    sp.add_argument("--enumerate", action="store_true", help="list all lines (default)")

    for name, func, help_ in (("seed", cmd_seed, "quantum seed of a line"),
                              ("build-data", cmd_build_data, "seed plus the data below the line")):
        sp = add(name, func, help_)
        sp.add_argument("--line", help="'plus', 'minus' or a corner list (default plus)")

    sp = add("mutate", cmd_mutate, "mutate a seed read from JSON", shape=False)
    sp.add_argument("--input", required=True, help="seed JSON file")
    sp.add_argument("--k", type=int, required=True, help="index of the variable to mutate")
    sp.add_argument("--target-rows", help="expected new minor: rows")
    sp.add_argument("--target-cols", help="expected new minor: columns")

    sp = add("line-mutate", cmd_line_mutate, "quantum line mutation to a closest line")
    sp.add_argument("--line", required=True)
    sp.add_argument("--target", required=True)

    sp = add("diamond", cmd_diamond, "compare the two orders of two down-moves")
    sp.add_argument("--line", help="a single line (default: every line)")

    sp = add("reach", cmd_reach, "closest-line path to a line containing a minor")
    sp.add_argument("--line", help="start line (default plus)")
    sp.add_argument("--rows", required=True)
    sp.add_argument("--cols", required=True)

    sp = add("covariance", cmd_covariance, "commutation profile of a corner minor")
    sp.add_argument("--size", type=int, required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except (AssertionError, NotCompatible, NonIntegralSeed) as e:
        # a computation disagreed with its prediction
        print(f"fail: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except (QMatrixError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
