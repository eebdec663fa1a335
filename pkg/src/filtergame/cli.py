"""Command-line front end: point evaluation, sweeps, attacker analysis,
and the numeric validation suite.

Output is CSV (with a `# schema=filtergame/1` comment line) or a plain
text report; plotting is left to downstream scripts.  Exit codes:
0 ok, 1 validation-suite failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

from .attacker import endogenous_equilibrium, negative_votc_scan
from .beliefs import BeliefError, FilterStrategy, posterior
from .consumer import best_response
from .equilibrium import aligned_optimum, semi_equilibrium_status
from .oracle import OracleConfig, monte_carlo_payoff, numeric_attacker_br, numeric_consumer_br
from .params import CONFIG_KEYS, ModelParams, ParameterError, load_config, thresholds, validate
from .payoffs import Alignment, Normalization, evaluate
from .vot import Method, finite_difference, mvot_aligned, mvot_semialigned

SCHEMA_LINE = "# schema=filtergame/1"

_SWEEP_FIELDS = ("q", "pi0", "pi1", "b", "c1", "c2", "lam")


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _threads() -> int:
    env = os.environ.get("FILTERGAME_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def _load(path: str) -> ModelParams:
    try:
        params = load_config(path)
    except (OSError, ParameterError) as exc:
        raise SystemExit(f"error: {exc}") from None
    problems = validate(params)
    if problems:
        for msg in problems:
            print(f"error: {msg}", file=sys.stderr)
        raise SystemExit(2)
    return params


def _norm(args) -> Normalization:
    return Normalization(args.normalization)


# ---------------------------------------------------------------- eval

def cmd_eval(args) -> int:
    params = _load(args.config)
    norm = _norm(args)
    out = []
    th = thresholds(params)
    out.append(f"parameters: q={params.q} pi0={params.pi0} pi1={params.pi1} "
               f"b={params.b} c1={params.c1} c2={params.c2} lambda={params.lam}")
    out.append(f"thresholds: q_L={th.q_L:.6g} q_H={th.q_H:.6g} "
               f"Lambda={th.Lambda:.6g} Q_quality={th.Q_quality:.6g}")

    if args.mode == "attacker":
        eq = endogenous_equilibrium(params)
        out.append(f"attacker equilibrium: kind={eq.kind} rho0*={eq.rho0_star:.6g} "
                   f"q_induced={eq.q_induced:.6g}")
        out.append(f"values: players={eq.v_players:.6g}/clean attacker={eq.v_attacker:.6g}/clean "
                   f"consumer_info_cost={eq.consumer_info_cost}")
        out.append(f"sustained={eq.sustained} knife_edge={eq.knife_edge}")
    else:
        alignment = Alignment.ALIGNED if args.mode == "aligned" else Alignment.SEMI
        for name, strat in (("Forward", FilterStrategy.forward()),
                            ("Differentiate", FilterStrategy.differentiate()),
                            ("Block", FilterStrategy.block())):
            ev = evaluate(params, strat, alignment, norm)
            bel = "-" if ev.belief is None else f"{ev.belief:.6g}"
            cost = "-" if ev.policy is None else f"{ev.policy.info_cost:.6g}"
            out.append(f"{name}: filter={ev.filter_value:.6g} consumer={ev.consumer_value:.6g} "
                       f"belief={bel} info_cost={cost} [{norm.value}]")
        if args.mode == "aligned":
            rep = aligned_optimum(params)
            out.append(f"equilibrium: selected={rep.selected} rule={rep.selection_rule} case={rep.case}")
            mv = mvot_aligned(params, norm)
            out.append(f"mvot: regime={mv.regime.value} d_pi0={mv.d_pi0:.6g} d_pi1={mv.d_pi1:.6g}")
        else:
            rep = semi_equilibrium_status(params)
            flags = " ".join(f"{n}={'eq' if s.is_equilibrium else 'no'}"
                             for n, s in rep.per_profile.items())
            out.append(f"equilibrium: {flags} selected={rep.selected} "
                       f"mixed_gamma={_fmt(rep.mixed_gamma) or '-'} inefficiency={rep.inefficiency}")
            filt, cons = mvot_semialigned(params, FilterStrategy.differentiate())
            out.append(f"mvot(filter): regime={filt.regime.value} d_pi0={filt.d_pi0:.6g} "
                       f"d_pi1={filt.d_pi1:.6g} [{filt.normalization.value}]")
            out.append(f"mvot(consumer): regime={cons.regime.value} d_pi0={cons.d_pi0:.6g} "
                       f"d_pi1={cons.d_pi1:.6g} [{cons.normalization.value}]")
    _emit(args, "\n".join(out) + "\n")
    return 0


# ---------------------------------------------------------------- sweep

def _parse_axis(spec: str):
    parts = spec.split(":")
    if len(parts) != 4:
        raise SystemExit(f"error: axis must be FIELD:START:STOP:STEPS, got {spec!r}")
    field, start, stop, steps = parts
    if field == "lambda":
        field = "lam"
    if field not in _SWEEP_FIELDS:
        raise SystemExit(f"error: unknown sweep field {field!r}; choose from {_SWEEP_FIELDS}")
    try:
        start, stop, steps = float(start), float(stop), int(steps)
    except ValueError:
        raise SystemExit(f"error: malformed axis {spec!r}") from None
    if steps < 1:
        raise SystemExit("error: axis steps must be >= 1")
    return field, start, stop, steps


def _axis_values(start: float, stop: float, steps: int) -> list[float]:
    if steps == 1:
        return [start]
    return [start + (stop - start) * i / (steps - 1) for i in range(steps)]


_CORE_COLS = ["q", "pi0", "pi1", "b", "c1", "c2", "lambda", "valid",
              "q_L", "q_H", "Lambda", "Q_quality"]
_GAME_COLS = ["q_dif", "v_fwd", "v_dif", "v_block", "info_cost",
              "eq_fwd", "eq_dif", "eq_block", "mixed_gamma", "selected",
              "d_pi0", "d_pi1", "mvot_regime"]
_ATTACK_COLS = ["rho0_star", "kind", "q_induced", "v_players", "v_attacker",
                "consumer_info_cost"]


def _sweep_row(params: ModelParams, mode: str, norm: Normalization) -> list[str]:
    base = [params.q, params.pi0, params.pi1, params.b, params.c1, params.c2, params.lam]
    problems = validate(params)
    ncols = len(_ATTACK_COLS) if mode == "attacker" else len(_GAME_COLS)
    if problems:
        return [_fmt(v) for v in base] + ["invalid"] + [""] * (4 + ncols)
    th = thresholds(params)
    row = [_fmt(v) for v in base] + ["1", _fmt(th.q_L), _fmt(th.q_H),
                                     _fmt(th.Lambda), _fmt(th.Q_quality)]
    if mode == "attacker":
        eq = endogenous_equilibrium(params)
        row += [_fmt(eq.rho0_star), eq.kind, _fmt(eq.q_induced), _fmt(eq.v_players),
                _fmt(eq.v_attacker), _fmt(eq.consumer_info_cost)]
        return row
    alignment = Alignment.ALIGNED if mode == "aligned" else Alignment.SEMI
    ev_f = evaluate(params, FilterStrategy.forward(), alignment, norm)
    ev_d = evaluate(params, FilterStrategy.differentiate(), alignment, norm)
    ev_b = evaluate(params, FilterStrategy.block(), alignment, norm)
    try:
        q_dif = posterior(params, FilterStrategy.differentiate()).value
    except BeliefError:
        q_dif = None
    info = ev_d.policy.info_cost if ev_d.policy is not None else None
    if mode == "aligned":
        rep = aligned_optimum(params)
        mv = mvot_aligned(params, norm)
    else:
        rep = semi_equilibrium_status(params)
        mv, _ = mvot_semialigned(params, FilterStrategy.differentiate())
    per = rep.per_profile
    row += [_fmt(q_dif), _fmt(ev_f.filter_value), _fmt(ev_d.filter_value),
            _fmt(ev_b.filter_value), _fmt(info),
            _fmt(per["Forward"].is_equilibrium), _fmt(per["Differentiate"].is_equilibrium),
            _fmt(per["Block"].is_equilibrium), _fmt(rep.mixed_gamma),
            rep.selected or "", _fmt(mv.d_pi0), _fmt(mv.d_pi1), mv.regime.value]
    return row


def cmd_sweep(args) -> int:
    params = _load(args.config)
    norm = _norm(args)
    axes = [_parse_axis(a) for a in (args.axis or [])]
    if len(axes) > 2:
        raise SystemExit("error: at most 2 sweep axes")
    points: list[ModelParams] = []
    if not axes:
        points = [params]
    elif len(axes) == 1:
        f, a, b, n = axes[0]
        points = [replace(params, **{f: v}) for v in _axis_values(a, b, n)]
    else:
        f1, a1, b1, n1 = axes[0]
        f2, a2, b2, n2 = axes[1]
        points = [replace(params, **{f1: v1, f2: v2})
                  for v1 in _axis_values(a1, b1, n1)
                  for v2 in _axis_values(a2, b2, n2)]

    cols = _CORE_COLS + (_ATTACK_COLS if args.mode == "attacker" else _GAME_COLS)
    buf = io.StringIO()
    buf.write(SCHEMA_LINE + "\n")
    buf.write(",".join(cols) + "\n")
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        for row in pool.map(lambda p: _sweep_row(p, args.mode, norm), points):
            buf.write(",".join(row) + "\n")
    _emit(args, buf.getvalue())
    return 0


# ---------------------------------------------------------------- attacker

def cmd_attacker(args) -> int:
    params = _load(args.config)
    eq = endogenous_equilibrium(params)
    out = [
        f"kind={eq.kind} rho0_star={_fmt(eq.rho0_star)} q_induced={_fmt(eq.q_induced)}",
        f"v_players={_fmt(eq.v_players)} v_attacker={_fmt(eq.v_attacker)} "
        f"consumer_info_cost={_fmt(eq.consumer_info_cost)}",
        f"sustained={eq.sustained} knife_edge={eq.knife_edge}",
    ]
    scan = negative_votc_scan(params)
    if scan["found"]:
        out.append(f"negative_votc: found before={scan['before']} after={scan['after']} "
                   f"v_drop={_fmt(scan['v_drop'])}")
    else:
        out.append(f"negative_votc: not found ({scan['reason']})")
    _emit(args, "\n".join(out) + "\n")
    return 0


# ---------------------------------------------------------------- validate

def cmd_validate(args) -> int:
    params = _load(args.config)
    cfg = OracleConfig(seed=args.seed if args.seed is not None else OracleConfig.seed)
    perturb = getattr(args, "selftest_perturb", 0.0) or 0.0
    checks = []

    bel = posterior(params, FilterStrategy.differentiate()).value
    cf = best_response(params, bel)
    num = numeric_consumer_br(params, bel, cfg)
    err = max(abs(cf.pt0 - num.pt0), abs(cf.pt1 - num.pt1))
    checks.append(("consumer closed-form vs numeric", err, 1e-4))
    checks.append(("consumer objective dominates grid",
                   max(num.expected_utility - cf.expected_utility, 0.0), 1e-6))

    for name, strat in (("Forward", FilterStrategy.forward()),
                        ("Differentiate", FilterStrategy.differentiate())):
        analytic = evaluate(params, strat).filter_value
        mc = monte_carlo_payoff(params, strat, config=cfg)["players"]
        tol = 4.0 * mc["std_error"]
        checks.append((f"Monte-Carlo vs analytic V({name.lower()})",
                       abs(mc["mean"] - analytic), tol))

    mv = mvot_aligned(params)
    fd = finite_difference(params, None)
    err = max(abs(mv.d_pi0 + perturb - fd.d_pi0), abs(mv.d_pi1 - fd.d_pi1))
    checks.append(("finite-difference vs analytic MVoT", err, 1e-4))

    from .attacker import attacker_best_rho
    for name, strat in (("forward", FilterStrategy.forward()),
                        ("differentiate", FilterStrategy.differentiate())):
        closed = attacker_best_rho(params, strat)
        numeric = numeric_attacker_br(params, strat, cfg)
        checks.append((f"attacker search vs inversion ({name})", abs(closed - numeric), 1e-4))

    lines, ok = [], True
    for name, err, tol in checks:
        passed = err <= tol
        ok = ok and passed
        lines.append(f"[{'PASS' if passed else 'FAIL'}] {name}: err={err:.3g} tol={tol:.3g}")
    lines.append(f"validation: {'all checks passed' if ok else 'FAILURES PRESENT'}")
    _emit(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


# ---------------------------------------------------------------- plumbing

def _emit(args, text: str) -> None:
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="filtergame",
        description="Content-filtering game: thresholds, payoffs, equilibria, attacker analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="flat key=value parameter file")
        p.add_argument("--mode", choices=["aligned", "semi", "attacker"], default="aligned")
        p.add_argument("--out", default="-", help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--normalization", choices=["per-clean", "per-content"],
                       default="per-clean")

    p_eval = sub.add_parser("eval", help="report a single parameter point")
    common(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="CSV over a parameter grid")
    common(p_sweep)
    p_sweep.add_argument("--axis", action="append",
                         help="FIELD:START:STOP:STEPS (repeatable, max 2)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_att = sub.add_parser("attacker", help="endogenous-attacker equilibrium report")
    common(p_att)
    p_att.set_defaults(func=cmd_attacker)

    p_val = sub.add_parser("validate", help="run the numeric validation suite")
    common(p_val)
    p_val.add_argument("--selftest-perturb", type=float, default=0.0,
                       help=argparse.SUPPRESS)  # harness sensitivity hook
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        return exc.code if exc.code is not None else 2
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
