"""
Command-line interface for the tensor-power zeta toolkit
--------------------------------------------------------
Every subcommand reads a curve-spec JSON file and prints JSON (default) or a
pretty table.

To Run:
1. Install the dependencies (`pip install -r requirements.txt`).
2. Run from the repository root, for example:
   `python app.py shtuka data/ex82.json`
   `python app.py zeta-vector data/ex82.json --n 2 --b 1 --pretty`
   `python app.py verify data/ex83.json --n 2 --depth 3`

Exit codes: 0 success, 1 failed check or library error, 2 usage error.
"""

from __future__ import annotations
import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence

from pydantic import ValidationError

from src.anderson.coefficients import CoeffSeries, exp_coeffs, log_coeffs
from src.config import LOG_LEVEL, RunConfig
from src.curve_stack import CurveStack
from src.errors import DrinfeldError
from src.expr_parser import parse_a_expr
from src.graph.verify_flow_graph import run_verify
from src.graph.visualize_flow_graph import mermaid
from src.serialization import dumps, key_value_rows, load_curve_spec, render_pretty
from src.zeta.power_sums import power_sum
from src.zeta.zeta_vector import zeta_vector

logger = logging.getLogger(__name__)

COMMANDS = ("curve-info", "shtuka", "basis", "module", "exp", "log", "zeta", "zeta-vector", "verify")
ZETA_COMMANDS = ("zeta-vector",)


class CommandResult(NamedTuple):
    payload: Dict[str, Any]
    rows: List[Dict[str, Any]]
    ok: bool = True


class UsageError(Exception):
    pass


# ---- argument parsing ------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="app.py", description="Exact tensor-power exponentials, logarithms and zeta values "
                                                            "for elliptic curves over F_q with class number one.")
    ap.add_argument("command", choices=COMMANDS, help="Subcommand")
    ap.add_argument("spec", help="Curve-spec JSON file")
    out = ap.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json", help="JSON output (default)")
    out.add_argument("--pretty", dest="output", action="store_const", const="pretty", help="Readable tables")
    ap.add_argument("--n", type=int, default=1, help="Tensor power n")
    ap.add_argument("--terms", type=int, default=4, help="Number of coefficients or zeta terms")
    ap.add_argument("--precision", type=int, default=None, help="Laurent precision at the infinite place")
    ap.add_argument("--b", default="1", help="Element b of A, e.g. 'T^2 + T*Y + 1'")
    ap.add_argument("--s", type=int, default=1, help="Exponent of the power sums")
    ap.add_argument("--mode", choices=("brute", "closed"), default="brute", help="Power-sum strategy")
    ap.add_argument("--depth", type=int, default=3, help="tau-depth of the functional-equation checks")
    ap.add_argument("--seed", type=int, default=None, help="Seed for randomized checks")
    ap.add_argument("--cases", type=int, default=None, help="Randomized cases per property suite")
    ap.add_argument("--graph", action="store_true", help="verify: print the pipeline as mermaid and exit")
    ap.add_argument("--tail", action="store_true", help="zeta-vector: also run the infinite-place tail check")
    ap.add_argument("--tail-T", dest="tail_T", type=int, default=None, help="Cut-off T of the tail check")
    ap.add_argument("--tail-step", dest="tail_step", type=int, default=None, help="Step between the tail cut-offs")
    return ap


def to_run_config(args: argparse.Namespace) -> RunConfig:
    fields = {"spec": args.spec, "command": args.command, "n": args.n, "terms": args.terms, "b": args.b,
              "s": args.s, "mode": args.mode, "depth": args.depth, "output": args.output or "json",
              "graph": args.graph, "tail": args.tail, "cases": args.cases}
    if args.precision is not None:
        fields["precision"] = args.precision
    if args.seed is not None:
        fields["seed"] = args.seed
    if args.tail_T is not None:
        fields["tail_T"] = args.tail_T
    if args.tail_step is not None:
        fields["tail_step"] = args.tail_step
    return RunConfig(**fields)


# ---- rendering helpers -------------------------------------------------------------
def _series_rows(series: CoeffSeries) -> List[Dict[str, Any]]:
    symbol = "Q" if series.kind == "exp" else "P"
    rows = []
    for i, M in enumerate(series.mats):
        rows += [
            {"coefficient": f"{symbol}_{i}", "row": r + 1, **{f"col {c + 1}": str(x) for c, x in enumerate(row)}}
            for r, row in enumerate(M)]
    return rows


# ---- subcommands ---------------------------------------------------------------------
def cmd_curve_info(stack: CurveStack, cfg: RunConfig) -> CommandResult:
    ctx = stack.ctx
    payload = {"q": ctx.q, "h": stack.h, "nonsingular": ctx.discriminant() != 0}
    return CommandResult(payload, key_value_rows(payload))


def cmd_shtuka(stack: CurveStack, cfg: RunConfig) -> CommandResult:
    S = stack.S
    rows = key_value_rows({"V": str(S.V), "m": str(S.m), "nu": str(S.nu), "delta": str(S.delta), "f": str(S.f)})
    return CommandResult(S.to_json(), rows)


def cmd_basis(stack: CurveStack, cfg: RunConfig) -> CommandResult:
    tb = stack.tb
    rows = [{"function": f"g_{i + 1}", "value": str(g)} for i, g in enumerate(tb.g)]
    rows += [{"function": f"h_{i + 1}", "value": str(h)} for i, h in enumerate(tb.h)]
    rows += [{"function": f"{name}_{i + 1}", "value": str(c)}
             for name, seq in (("a", tb.a), ("b", tb.b), ("y", tb.yc), ("z", tb.zc)) for i, c in enumerate(seq)]
    return CommandResult(tb.to_json(), rows)


def cmd_module(stack: CurveStack, cfg: RunConfig) -> CommandResult:
    mod = stack.mod
    rows = []
    for name, poly in (("rho_t", mod.rho_t), ("rho_y", mod.rho_y)):
        for k, M in enumerate(poly.coeffs):
            rows += [{"operator": name, "tau": k, "row": r + 1,
                      **{f"col {c + 1}": str(x) for c, x in enumerate(row)}} for r, row in enumerate(M)]
    return CommandResult(mod.to_json(), rows)


def _exp(stack: CurveStack, cfg: RunConfig) -> CoeffSeries:
    return exp_coeffs(stack.mod, stack.tb, cfg.terms)


def cmd_exp(stack: CurveStack, cfg: RunConfig) -> CommandResult:
    series = _exp(stack, cfg)
    return CommandResult({"n": stack.n, "coefficients": series.to_json()}, _series_rows(series))


def cmd_log(stack: CurveStack, cfg: RunConfig) -> CommandResult:
    series = log_coeffs(_exp(stack, cfg))
    return CommandResult({"n": stack.n, "coefficients": series.to_json()}, _series_rows(series))


def cmd_zeta(stack: CurveStack, cfg: RunConfig) -> CommandResult:
    ctx = stack.ctx
    b = parse_a_expr(ctx, cfg.b)
    S = stack.S if cfg.mode == "closed" else None
    sums, total, rows = [], ctx.zero, []
    for i in range(cfg.terms + 1):
        value = power_sum(stack.ring, S, i, cfg.s, mode=cfg.mode)
        total = total + b * value
        sums.append({"i": i, "S": value.to_json(), "partial": total.to_json()})
        rows.append({"i": i, "S_i(s)": str(value), "b * sum": str(total)})
    payload = {"b": b.to_json(), "s": cfg.s, "mode": cfg.mode, "terms": sums}
    return CommandResult(payload, rows)


def cmd_zeta_vector(stack: CurveStack, cfg: RunConfig) -> CommandResult:
    b = parse_a_expr(stack.ctx, cfg.b)
    log = log_coeffs(_exp(stack, cfg))
    zv = zeta_vector(stack.tb, b, terms=cfg.terms, log=log, tail=cfg.tail, precision=cfg.precision,
                     T=cfg.tail_T, step=cfg.tail_step)
    checks = zv.report
    ok = (checks["C_matches"] and checks["reconstruction_zero"] and all(checks["zeta_terms"].values())
          and all(checks.get("regrouped_terms", {}).values()) and checks.get("tail", {}).get("passed", True))
    payload = dict(zv.expansion.to_json(), checks=checks)
    rows = [{"vector": f"d_{j}^({j})", **{f"coord {k + 1}": str(x) for k, x in enumerate(vec)}}
            for j, vec in enumerate(zv.expansion.d_twisted)]
    rows.append({"vector": "d", **{f"coord {k + 1}": str(x) for k, x in enumerate(zv.d)}})
    rows.append({"vector": "C", "coord 1": str(zv.C)})
    return CommandResult(payload, rows, ok)


def cmd_verify(stack: CurveStack, cfg: RunConfig) -> CommandResult:
    if cfg.graph:
        return CommandResult({"mermaid": mermaid()}, [])
    final = run_verify(stack.ctx, n=cfg.n, depth=cfg.depth, terms=cfg.terms, b=cfg.b,
                       precision=cfg.precision, seed=cfg.seed, cases=cfg.cases,
                       tail_T=cfg.tail_T, tail_step=cfg.tail_step)
    checks = final.get("checks", [])
    passed = all(c["passed"] for c in checks)
    return CommandResult({"checks": checks, "passed": passed}, checks, passed)


HANDLERS: Dict[str, Callable[[CurveStack, RunConfig], CommandResult]] = {
    "curve-info": cmd_curve_info, "shtuka": cmd_shtuka, "basis": cmd_basis, "module": cmd_module,
    "exp": cmd_exp, "log": cmd_log, "zeta": cmd_zeta, "zeta-vector": cmd_zeta_vector, "verify": cmd_verify,
}


def _emit(cfg: RunConfig, result: CommandResult) -> None:
    if cfg.output == "pretty":
        if cfg.command == "verify" and cfg.graph:
            print(result.payload["mermaid"])
        else:
            print(render_pretty(result.rows, title=f"{cfg.command} ({cfg.spec})"))
    else:
        print(dumps(result.payload))


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=LOG_LEVEL, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = to_run_config(args)
        spec = load_curve_spec(cfg.spec)
        if cfg.command in ZETA_COMMANDS and cfg.n > spec.q - 1:
            raise UsageError(f"{cfg.command} needs 1 <= n <= q - 1 = {spec.q - 1}")
        ctx = spec.build_context()
        parse_a_expr(ctx, cfg.b)
    except (ValidationError, UsageError, OSError, ValueError, DrinfeldError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        stack = CurveStack(ctx, cfg.n)
        result = HANDLERS[cfg.command](stack, cfg)
    except DrinfeldError as exc:
        logger.error("%s failed: %s", cfg.command, exc)
        print(dumps({"error": str(exc), "type": type(exc).__name__}))
        return 1
    _emit(cfg, result)
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
