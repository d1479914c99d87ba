"""Command line front end.

Exit codes: 0 success, 1 a verification check (or validation) failed,
2 usage or input error.  Diagnostics go to stderr, results to stdout (or
``--output``).  Output is deterministic for identical input and flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .linkdiag import DiagramError, LinkDiagram, PDSyntaxError, parse
from .milnor import ResourceLimitError, count_indices, invariant_table, longitude_series, max_indices
from .verify import (
    HypothesisError,
    check_odd_remark,
    check_sato_levine,
    check_theorem1,
    homotopy_certificate,
    replay_proof_identity,
    self_delta_certificate,
)
from .whitehead import DoubleSpec, double

DEFAULT_MAX_CROSSINGS = 5000


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    verb: str | None
    path: str | None
    fmt: str
    output: str | None
    max_indices: int
    max_crossings: int
    options: dict = field(default_factory=dict)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{name} must be positive")
    return value


def _sign(text: str) -> int:
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if text not in table:
        raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")
    return table[text]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="milnorkit", description="Milnor invariants of link diagrams and Whitehead doubles.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (("parse", "parse and print the canonical PD code"),
                       ("validate", "check a diagram for consistency"),
                       ("info", "components, crossings, writhes and linking numbers")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", help="PD or Gauss code file, '-' for stdin")

    p = sub.add_parser("invariants", parents=[common], help="table of mu and mu-bar invariants")
    p.add_argument("file")
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--cap", type=int, help="degree cap D (default: max length)")
    p.add_argument("--repeat-bound", type=int)
    p.add_argument("--dump-series", action="store_true", help="also print the longitude series")

    p = sub.add_parser("double", parents=[common], help="Whitehead double one component, print PD code")
    p.add_argument("file")
    p.add_argument("--component", type=int, required=True)
    p.add_argument("--twists", type=int, default=0)
    p.add_argument("--odd", type=int, metavar="HALF_TWISTS")
    p.add_argument("--sign", type=_sign, default=1)
    p.add_argument("--site", type=int)

    p = sub.add_parser("verify", help="run a verification harness")
    verbs = p.add_subparsers(dest="verb", required=True)
    v = verbs.add_parser("theorem1", parents=[common])
    v.add_argument("file")
    v.add_argument("--component", type=int, required=True)
    v.add_argument("--twists", type=int, required=True)
    v.add_argument("--cap", type=int)
    v = verbs.add_parser("sato-levine", parents=[common])
    v.add_argument("file")
    v.add_argument("--twists", type=int, required=True)
    v.add_argument("--component", type=int, default=2)
    v = verbs.add_parser("odd", parents=[common])
    v.add_argument("file")
    v.add_argument("--component", type=int, required=True)
    v.add_argument("--half-twists", type=int, required=True)
    v.add_argument("--sign", type=_sign, default=1)
    v.add_argument("--index", action="append", help="multi-index Ii to check (repeatable)")
    v = verbs.add_parser("certificate", parents=[common])
    v.add_argument("file")
    v.add_argument("--kind", choices=("homotopy", "self-delta"), required=True)
    v.add_argument("--cap", type=int, required=True)
    v.add_argument("--brunnian", action="store_true", help="assert the input is Brunnian")
    v = verbs.add_parser("replay", parents=[common])
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--extra-variables", type=int, default=2)
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    """Validate flag combinations before any computation."""
    opts = {k: v for k, v in vars(args).items() if k not in ("command", "verb", "file", "format", "output")}
    cfg = RunConfig(
        command=args.command,
        verb=getattr(args, "verb", None),
        path=getattr(args, "file", None),
        fmt=args.format,
        output=args.output,
        max_indices=_env_int("MILNORKIT_MAX_INDICES", max_indices()),
        max_crossings=_env_int("MILNORKIT_MAX_CROSSINGS", DEFAULT_MAX_CROSSINGS),
        options=opts,
    )
    o = cfg.options
    if cfg.command == "invariants":
        if o["max_length"] < 2:
            raise UsageError("--max-length must be >= 2")
        if o["cap"] is not None and o["cap"] < o["max_length"]:
            raise UsageError("--cap must be >= --max-length")
        if o["repeat_bound"] is not None and o["repeat_bound"] < 1:
            raise UsageError("--repeat-bound must be >= 1")
    if cfg.command == "double" and o["odd"] is not None:
        if o["twists"]:
            raise UsageError("--odd and --twists are exclusive")
        if o["odd"] < 1 or o["odd"] % 2 == 0:
            raise UsageError("--odd needs an odd positive number of half twists")
    if cfg.verb == "theorem1":
        if o["twists"] == 0:
            raise UsageError("--twists must be nonzero")
        if o["cap"] is not None and o["cap"] < 2:
            raise UsageError("--cap must be >= 2")
    if cfg.verb == "sato-levine" and o["twists"] == 0:
        raise UsageError("--twists must be nonzero")
    if cfg.verb == "odd" and (o["half_twists"] < 1 or o["half_twists"] % 2 == 0):
        raise UsageError("--half-twists must be odd and positive")
    if cfg.verb == "certificate" and o["cap"] < 2:
        raise UsageError("--cap must be >= 2")
    if cfg.verb == "replay":
        if o["k"] < 1:
            raise UsageError("--k must be >= 1")
        if o["n"] >= 0:
            raise UsageError("--n must be negative")
        if o["extra_variables"] < 1:
            raise UsageError("--extra-variables must be >= 1")
    return cfg


def _read(cfg: RunConfig) -> LinkDiagram:
    if cfg.path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(cfg.path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.path}: {exc.strerror}") from None
    d = parse(text, check=cfg.command != "validate")
    _guard(cfg, d)
    return d


def _guard(cfg: RunConfig, d: LinkDiagram) -> None:
    if d.n_crossings > cfg.max_crossings:
        raise ResourceLimitError(
            f"diagram has {d.n_crossings} crossings; ceiling is {cfg.max_crossings} (MILNORKIT_MAX_CROSSINGS)"
        )


def _info(d: LinkDiagram) -> dict:
    return {
        "components": d.m,
        "crossings": d.n_crossings,
        "signs": [d.sign(c) for c in range(d.n_crossings)],
        "self_writhe": [d.self_writhe(i) for i in range(1, d.m + 1)],
        "linking_numbers": {f"{i},{j}": d.linking_number(i, j)
                            for i in range(1, d.m + 1) for j in range(i + 1, d.m + 1)},
    }


def _cmd_invariants(cfg: RunConfig, d: LinkDiagram) -> tuple[str, int]:
    o = cfg.options
    L = o["max_length"]
    D = o["cap"] or L
    n = count_indices(d.m, L)
    if n > cfg.max_indices:
        raise ResourceLimitError(
            f"{n} multi-indices requested (m={d.m}, max length {L}); ceiling is {cfg.max_indices} (MILNORKIT_MAX_INDICES)"
        )
    table = invariant_table(d, L, repeat_bound=o["repeat_bound"], D=D, ceiling=cfg.max_indices)
    series = {}
    if o["dump_series"]:
        series = {str(i): longitude_series(d, i, D).to_json() for i in range(1, d.m + 1)}
    if cfg.fmt == "json":
        out = {"components": d.m, "max_length": L, "D": D, "invariants": [v.to_json() for v in table]}
        if series:
            out["longitudes"] = series
        return json.dumps(out, indent=2, sort_keys=True), 0
    rows = [f"# components={d.m} max_length={L} D={D}", f"{'index':<10} {'mu':>8} {'delta':>6} {'mu_bar':>8}"]
    rows += [f"{str(v.index):<10} {v.mu:>8} {v.delta:>6} {v.mu_bar:>8}" for v in table]
    for i, s in series.items():
        rows.append(f"# longitude {i}: {json.dumps(s, sort_keys=True)}")
    return "\n".join(rows), 0


def _report(cfg: RunConfig, report) -> tuple[str, int]:
    text = report.dumps() if cfg.fmt == "json" else report.table()
    return text, 0 if report.passed else 1


def _cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    o = cfg.options
    if cfg.verb == "replay":
        return _report(cfg, replay_proof_identity(o["k"], o["n"], o["extra_variables"]))
    d = _read(cfg)
    if cfg.verb == "theorem1":
        return _report(cfg, check_theorem1(d, o["component"], o["twists"], o["cap"]))
    if cfg.verb == "sato-levine":
        return _report(cfg, check_sato_levine(d, o["twists"], o["component"]))
    if cfg.verb == "odd":
        return _report(cfg, check_odd_remark(d, o["component"], o["half_twists"], o["index"], o["sign"]))
    if o["kind"] == "homotopy":
        cert = homotopy_certificate(d, o["cap"])
    else:
        cert = self_delta_certificate(d, o["cap"], o["brunnian"])
    if cfg.fmt == "json":
        text = json.dumps(cert.to_json(), indent=2, sort_keys=True)
    else:
        text = f"{cert.kind} certificate (D={cert.D}, {cert.checked} indices): " + (
            "PASS" if cert.passed else f"FAIL witness {cert.witness}")
        if cert.note:
            text += f"\n# {cert.note}"
    return text, 0 if cert.passed else 1


def execute(cfg: RunConfig) -> tuple[str, int]:
    if cfg.command == "verify":
        return _cmd_verify(cfg)
    d = _read(cfg)
    if cfg.command == "parse":
        if cfg.fmt == "json":
            return json.dumps({"pd": d.to_pd(), **_info(d)}, indent=2, sort_keys=True), 0
        return d.to_pd(), 0
    if cfg.command == "validate":
        problems = d.violations
        if cfg.fmt == "json":
            return json.dumps({"valid": not problems, "violations": problems}, indent=2), 1 if problems else 0
        return ("valid" if not problems else "\n".join(problems)), 1 if problems else 0
    if cfg.command == "info":
        info = _info(d)
        if cfg.fmt == "json":
            return json.dumps(info, indent=2, sort_keys=True), 0
        return "\n".join(f"{k}: {v}" for k, v in info.items()), 0
    if cfg.command == "invariants":
        return _cmd_invariants(cfg, d)
    o = cfg.options
    spec = DoubleSpec(o["component"], o["twists"], half_twists=o["odd"], sign=o["sign"], site=o["site"])
    result = double(d, spec)
    _guard(cfg, result)
    if cfg.fmt == "json":
        return json.dumps({"pd": result.to_pd(), **_info(result)}, indent=2, sort_keys=True), 0
    return result.to_pd(), 0


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = make_config(args)
        text, code = execute(cfg)
    except (UsageError, PDSyntaxError, DiagramError, HypothesisError, ResourceLimitError, ValueError) as exc:
        print(f"milnorkit: error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
