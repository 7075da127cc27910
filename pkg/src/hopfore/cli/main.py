"""Command-line entry point: `hopfore <command> --config FILE ...`.

Exit status: 0 when every check in the report passed, 1 when a check failed,
2 for bad input (config, expression, preconditions).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter

from ..exactnum import FieldError
from ..exactnum.linalg import same_subspace
from ..grouprep import GroupError
from ..hopfcore import PresentationError, rank_report, skew_primitive_space, verify_hopf_axioms
from ..modanalysis import (
    classify,
    predicted_tensor,
    projectives_report,
    radical,
    series,
    simple_census,
    socle,
)
from ..oracle import (
    DEFAULT_BUDGET,
    OracleBudgetExceeded,
    OracleError,
    oracle_composition_series,
    oracle_radical,
    oracle_socle,
    oracle_split,
)
from ..weightmod import ModuleError, mod_tensor
from .config import ConfigError, build_presentation, load_config
from .expr import Evaluator, ExprError

SCHEMA = 1
INPUT_ERRORS = (ConfigError, PresentationError, ModuleError, ExprError, FieldError, GroupError)


class Outcome:
    def __init__(self, result: dict, passed: bool, summary: list[str]):
        self.result = result
        self.passed = passed
        self.summary = summary


def _labels_text(pairs) -> list[str]:
    return [f"  {lab}" + (f"  x{m}" if m > 1 else "") for lab, m in pairs]


def _group_element(pres, text: str):
    G = pres.group
    t = text.strip()
    if t in ("identity", "1", "e"):
        return G.identity
    if t == "a":
        return pres.a
    if t.startswith("a^"):
        return pres.a ** int(t[2:])
    vals = t.strip("[]").split(",")
    try:
        return G.element([int(v) for v in vals])
    except ValueError:
        raise ExprError(f"bad group element {text!r} (use identity, a, a^k or exponents like [1,0])") from None


# ---------------------------------------------------------------------------
# commands


def cmd_verify_hopf(pres, cfg, args) -> Outcome:
    D = args.degree or cfg.degree or 8
    rep = verify_hopf_axioms(pres, D)
    lines = [f"{c.name}: {'ok' if c.passed else 'FAILED'} ({c.checked} checked)" for c in rep.checks]
    for c in rep.checks:
        lines += [f"  witness: {w}" for w in c.failures[:3]]
    return Outcome(rep.to_json(), rep.passed, lines)


def cmd_rank(pres, cfg, args) -> Outcome:
    D = args.degree or cfg.degree or 9
    rep = rank_report(pres, D)
    degs = "{" + ", ".join(str(d) for d in rep.h1_degrees) + "}"
    lines = [
        f"rank {rep.rank}, H1 degrees {degs} (scan up to degree {D})",
        f"prediction: {rep.explanation}",
        f"scan agrees with prediction: {rep.agrees}",
    ]
    return Outcome(rep.to_json(), rep.agrees, lines)


def cmd_primitives(pres, cfg, args) -> Outcome:
    D = args.degree or cfg.degree or 8
    g = _group_element(pres, args.g)
    basis = skew_primitive_space(pres, g, D)
    result = {"g": list(g.exps), "degree_cap": D, "dimension": len(basis), "basis": [repr(z) for z in basis]}
    lines = [f"skew-primitives for g = {list(g.exps)} up to degree {D}: dimension {len(basis)}"]
    lines += [f"  {z!r}" for z in basis]
    return Outcome(result, True, lines)


def cmd_list_simples(pres, cfg, args) -> Outcome:
    census = simple_census(pres)
    lines = [f"{len(census.one_dim)} one-dimensional simples"]
    lines += [f"  {lab}" for lab in census.one_dim]
    if census.infinite_families:
        lines.append(f"infinite families V(sigma, f), f irreducible != y, for {len(census.blocks)} coset(s)")
    else:
        s = pres.s
        lines.append(f"{len(census.blocks)} block class(es)")
        lines += [f"  {lab}  (dim {lab.dimension(s)})" for lab in census.blocks]
    return Outcome(census.to_json(), True, lines)


def _oracle_checks(M, seed: int, budget: int, rep=None) -> tuple[dict, bool, list[str]]:
    F = M.field
    out: dict = {}
    ok = True
    lines = []
    if not F.is_finite:
        return {"skipped": "oracle needs a finite field"}, True, ["oracle: skipped (infinite field)"]
    if rep is not None:
        split = oracle_split(M, seed=seed)
        mine = sorted(sm.columns.shape[1] for sm in rep.summands)
        agree = split.block_dims() == mine
        out["split"] = {"block_dims": split.block_dims(), "agrees": agree}
        ok = ok and agree
        lines.append(f"oracle split block dims {split.block_dims()}: {'agree' if agree else 'DISAGREE'}")
    try:
        r_ok = same_subspace(F, oracle_radical(M, budget), radical(M, seed).basis)
        s_ok = same_subspace(F, oracle_socle(M, budget), socle(M, seed).basis)
        out["radical_agrees"] = r_ok
        out["socle_agrees"] = s_ok
        ok = ok and r_ok and s_ok
        lines.append(f"oracle radical/socle: {'agree' if r_ok and s_ok else 'DISAGREE'}")
    except OracleBudgetExceeded as exc:
        out["radical_socle"] = f"skipped: {exc}"
        lines.append(f"oracle radical/socle: skipped ({exc})")
    return out, ok, lines


def cmd_classify(pres, cfg, args) -> Outcome:
    ev = Evaluator(pres, cfg, args.seed)
    M = ev.build(args.expr).module
    rep = classify(M, seed=args.seed)
    result = {"dim": M.dim, **rep.to_json(pres.field if args.witness else None)}
    lines = [f"dim {M.dim} decomposes as:"] + _labels_text(rep.labels)
    passed = True
    if args.oracle:
        o, ok, ol = _oracle_checks(M, args.seed, args.budget or cfg.budget or DEFAULT_BUDGET, rep)
        result["oracle"] = o
        passed = ok
        lines += ol
    return Outcome(result, passed, lines)


def cmd_tensor(pres, cfg, args) -> Outcome:
    ev = Evaluator(pres, cfg, args.seed)
    A = ev.build(args.expr_a)
    B = ev.build(args.expr_b)
    M = mod_tensor(A.module, B.module)
    rep = classify(M, seed=args.seed)
    pred = predicted_tensor(pres, A.label, B.label) if A.label is not None and B.label is not None else None
    result = {"dim": M.dim, "classified": rep.to_json()}
    lines = [f"dim {M.dim} decomposes as:"] + _labels_text(rep.labels)
    passed = True
    if pred is None:
        result["predicted"] = "unsupported"
        lines.append("closed-form prediction: unsupported for this pair")
    else:
        agree = pred.labels == rep.labels
        result["predicted"] = pred.to_json()
        result["prediction_agrees"] = agree
        passed = agree
        lines.append(f"closed-form prediction: {'agrees' if agree else 'DISAGREES'}")
    if args.oracle:
        o, ok, ol = _oracle_checks(M, args.seed, args.budget or cfg.budget or DEFAULT_BUDGET, rep)
        result["oracle"] = o
        passed = passed and ok
        lines += ol
    return Outcome(result, passed, lines)


def cmd_series(pres, cfg, args) -> Outcome:
    ev = Evaluator(pres, cfg, args.seed)
    M = ev.build(args.expr).module
    rep = series(M, seed=args.seed)
    result = {"dim": M.dim, **rep.to_json()}
    lines = [
        f"radical series dims {rep.radical_dims}",
        f"socle series dims {rep.socle_dims}",
        f"radical length {rep.radical_length}",
    ]
    for i, layer in enumerate(rep.radical_layers):
        lines.append(f"  layer {i}: " + ", ".join(f"{lab}" + (f" x{m}" if m > 1 else "") for lab, m in layer))
    passed = True
    if args.oracle:
        budget = args.budget or cfg.budget or DEFAULT_BUDGET
        o, ok, ol = _oracle_checks(M, args.seed, budget)
        try:
            factors = Counter(lab for layer in oracle_composition_series(M, budget) for lab in layer)
            mine = Counter()
            for layer in rep.socle_layers:
                for lab, m in layer:
                    mine[lab] += m
            cf = factors == mine
            o["composition_factors_agree"] = cf
            ok = ok and cf
            ol.append(f"oracle composition factors: {'agree' if cf else 'DISAGREE'}")
        except OracleBudgetExceeded as exc:
            o["composition_factors"] = f"skipped: {exc}"
        result["oracle"] = o
        passed = ok
        lines += ol
    return Outcome(result, passed, lines)


def cmd_projectives(pres, cfg, args) -> Outcome:
    entries = projectives_report(pres)
    s = pres.s
    result = {"covers": [e.to_json(s) for e in entries], "count": len(entries)}
    lines = [f"{e.simple}  ->  {e.cover}  (dim {e.cover.dimension(s)})" for e in entries]
    return Outcome(result, True, lines)


COMMANDS = {
    "verify-hopf": cmd_verify_hopf,
    "rank": cmd_rank,
    "primitives": cmd_primitives,
    "list-simples": cmd_list_simples,
    "classify": cmd_classify,
    "tensor": cmd_tensor,
    "series": cmd_series,
    "projectives": cmd_projectives,
}


def _add_globals(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--config", default=d(None), help="instance config file")
    p.add_argument("--seed", type=int, default=d(0), help="seed for every random choice")
    p.add_argument("--json", action="store_true", default=d(False), help="print the JSON report")
    p.add_argument("--oracle", action="store_true", default=d(False), help="cross-check with the brute-force oracle")
    p.add_argument("--degree", type=int, default=d(None), help="degree cap")
    p.add_argument("--budget", type=int, default=d(None), help="oracle vector budget")
    p.add_argument("--timing", action="store_true", default=d(False), help="include wall time in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfore", description="Hopf-Ore extensions and their weight modules")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    for name in ("verify-hopf", "rank", "list-simples", "projectives"):
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("primitives", parents=[common])
    p.add_argument("--g", default="identity", help="group element: identity, a, a^k or [e1,...]")
    for name in ("classify", "series"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("expr")
        if name == "classify":
            p.add_argument("--witness", action="store_true", help="include the change-of-basis matrix")
    p = sub.add_parser("tensor", parents=[common])
    p.add_argument("expr_a")
    p.add_argument("expr_b")
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "witness"):
        args.witness = False
    if not args.config:
        print("error: --config is required", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    try:
        cfg = load_config(args.config)
        pres = build_presentation(cfg)
        outcome = COMMANDS[args.command](pres, cfg, args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OracleBudgetExceeded, OracleError) as exc:
        print(f"oracle error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    cmd = {"name": args.command, "seed": args.seed}
    for k in ("degree", "budget", "g", "expr", "expr_a", "expr_b"):
        v = getattr(args, k, None)
        if v is not None:
            cmd[k] = v
    if args.oracle:
        cmd["oracle"] = True
    report = {
        "schema": SCHEMA,
        "command": cmd,
        "instance": {**cfg.echo(), "q": str(pres.q), "s": pres.s, "case": pres.case},
        "result": outcome.result,
        "passed": outcome.passed,
    }
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - t0, 3)
    if args.json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        for line in outcome.summary:
            out.write(line + "\n")
        out.write(("PASS" if outcome.passed else "FAIL") + "\n")
    return 0 if outcome.passed else 1


def main(argv=None) -> None:
    sys.exit(run(argv))
