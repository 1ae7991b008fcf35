"""Command-line front end.

Subcommands: orders | count | density | solve | qmodel | exponents |
reduce | bench.  An experiment is described by flags or by a plain
key=value config file (# comments allowed); flags override the file.
Field elements on the wire are packed integers sum_i c_i p^i (for prime
fields, the residue itself).

Exit codes: 0 success, 1 invalid input, 2 resource caps or a failed
model hypothesis.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import density as density_mod
from . import errors
from .arith import QueryCounter, factorize, multiplicative_order
from .charsum import (brute_count, count_via_charsum, make_box,
                      make_equation)
from .fields import make_field
from .instances import random_equation, random_equation_with_orders
from .qmodel import exponent_table, model_quantum_solve
from .reduction import mu_bound_report, reduce_equation
from .solver import solve_classical

CONFIG_KEYS = {
    "p", "nu", "terms", "b", "n", "seed", "delta", "log_base", "mode",
    "out", "format", "n_max", "r", "qs", "ns", "workers", "trials",
    "slack_exponent", "enum_cap", "card_cap", "samples",
}

CAP_ERRORS = (errors.CapExceeded, errors.MemoryCap, errors.HypothesisFailed)
INPUT_ERRORS = (errors.ExpzerosError, ValueError, OSError)


class ConfigError(ValueError):
    pass


def parse_config_file(path: str) -> dict:
    """key=value lines; '#' starts a comment; unknown keys are rejected."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(
                    f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = line.split("=", 1)
            key = key.strip()
            if key not in CONFIG_KEYS:
                raise ConfigError(
                    f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value.strip()
    return out


def parse_terms(text: str) -> list[tuple[int, int]]:
    """--terms "a1,g1;a2,g2;..." with packed-integer elements."""
    terms = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        pieces = part.split(",")
        if len(pieces) != 2:
            raise ConfigError(f"bad term {part!r}; expected a,g")
        terms.append((int(pieces[0]), int(pieces[1])))
    if not terms:
        raise ConfigError("empty term list")
    return terms


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expzeros",
        description="Zeros of a_1 g_1^x_1 + ... + a_n g_n^x_n - b over "
                    "F_q: exact counting, density checks, classical "
                    "search, quantum cost models.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, equation=True):
        sp.add_argument("--config", help="key=value config file")
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--format", choices=["json", "csv", "text"],
                        help="output format (default text)")
        if equation:
            sp.add_argument("--p", type=int, help="field characteristic")
            sp.add_argument("--nu", type=int,
                            help="extension degree (default 1)")
            sp.add_argument("--terms",
                            help='terms "a1,g1;a2,g2;..." (packed ints)')
            sp.add_argument("--b", type=int, help="constant term (packed)")
            sp.add_argument("--n", type=int,
                            help="random instance: number of terms")
            sp.add_argument("--seed", type=int,
                            help="random instance seed (default 0)")
            sp.add_argument("--log-base", dest="log_base",
                            choices=["natural", "base2"],
                            help="base of log q in box formulas")

    sp = sub.add_parser("orders", help="multiplicative orders of the g_i")
    common(sp)
    sp.set_defaults(func=cmd_orders)

    sp = sub.add_parser("count", help="brute-force vs character-sum count")
    common(sp)
    sp.add_argument("--r", type=int, help="box radius (default s_n)")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("density",
                        help="full-b sweep: deviations, energy, census")
    common(sp)
    sp.add_argument("--r", type=int, help="box radius (default s_n)")
    sp.add_argument("--delta", type=float,
                    help="census threshold (default sqrt(ln q))")
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("solve", help="classical grid search with "
                                      "query accounting")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("qmodel", help="quantum query-cost model")
    common(sp)
    sp.add_argument("--mode", choices=["thm2", "thm3"],
                    help="cost model variant (default thm2)")
    sp.add_argument("--trials", type=int,
                    help="guessing-schedule trials (default 300)")
    sp.add_argument("--slack-exponent", dest="slack_exponent", type=int,
                    help="polylog slack power in bounds (default 3)")
    sp.set_defaults(func=cmd_qmodel)

    sp = sub.add_parser("exponents",
                        help="classical/quantum exponent table")
    common(sp, equation=False)
    sp.add_argument("--n-max", dest="n_max", type=int,
                    help="last row of the table (default 10)")
    sp.set_defaults(func=cmd_exponents)

    sp = sub.add_parser("reduce", help="group terms by multiplicative order")
    common(sp)
    sp.add_argument("--samples", type=int,
                    help="also sample this many random equations for the "
                         "mu <= d(q-1) report")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("bench",
                        help="classical vs quantum cost sweep over (q, n)")
    common(sp, equation=False)
    sp.add_argument("--qs", help='comma list of primes, e.g. "101,257"')
    sp.add_argument("--ns", help='comma list of term counts, e.g. "2,3"')
    sp.add_argument("--seed", type=int, help="instance seed (default 0)")
    sp.add_argument("--workers", type=int,
                    help="process pool size (default: cpu count)")
    sp.set_defaults(func=cmd_bench)
    return parser


def merge_config(args: argparse.Namespace) -> dict:
    """File values first, then any flag that was actually given."""
    cfg = {}
    if getattr(args, "config", None):
        cfg.update(parse_config_file(args.config))
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _get_int(cfg, key, default=None):
    val = cfg.get(key, default)
    return None if val is None else int(val)


def resolve_equation(cfg: dict):
    """Equation from explicit terms, or a seeded random instance."""
    p = _get_int(cfg, "p")
    if p is None:
        raise ConfigError("missing p (field characteristic)")
    nu = _get_int(cfg, "nu", 1)
    spec = make_field(p, nu)
    if cfg.get("terms") is not None:
        terms = cfg["terms"]
        if isinstance(terms, str):
            terms = parse_terms(terms)
        b = _get_int(cfg, "b")
        if b is None:
            raise ConfigError("missing b (constant term)")
        return make_equation(spec, terms, b), False
    n = _get_int(cfg, "n")
    if n is None:
        raise ConfigError("need either terms+b or n (random instance)")
    rng = random.Random(_get_int(cfg, "seed", 0))
    return random_equation(spec, n, rng), True


def emit(cfg: dict, text_lines, doc: dict | None = None,
         csv_rows: list | None = None, csv_text: str | None = None) -> None:
    """Write text, json, or csv per cfg to --out or stdout."""
    fmt = cfg.get("format") or "text"
    if fmt == "json":
        if doc is None:
            raise ConfigError("no json form for this command")
        payload = json.dumps(doc, indent=2) + "\n"
    elif fmt == "csv":
        if csv_text is not None:
            payload = csv_text
        elif csv_rows is not None:
            buf = io.StringIO()
            writer = csv.writer(buf)
            writer.writerows(csv_rows)
            payload = buf.getvalue()
        else:
            raise ConfigError("no csv form for this command")
    else:
        payload = "\n".join(text_lines) + "\n"
    out = cfg.get("out")
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def describe_instance(eq, generated: bool) -> list[str]:
    lines = [f"field: p={eq.spec.p} nu={eq.spec.nu} q={eq.q}"]
    if generated:
        lines.append("instance (randomly generated, replay with --terms):")
    terms = ";".join(f"{a.packed()},{g.packed()}" for a, g in eq.terms)
    lines.append(f"  terms: {terms}")
    lines.append(f"  b: {eq.b.packed()}")
    lines.append(f"  orders: {list(eq.orders)}")
    return lines


def cmd_orders(args) -> int:
    cfg = merge_config(args)
    eq, generated = resolve_equation(cfg)
    fact = factorize(eq.q - 1)
    lines = describe_instance(eq, generated)
    lines.append(f"{'i':>3} {'a':>8} {'g':>8} {'order':>10}")
    for i, (a, g) in enumerate(eq.terms):
        info = multiplicative_order(g, fact)
        lines.append(f"{i:>3} {a.packed():>8} {g.packed():>8} "
                     f"{info.order:>10}")
    doc = {"schema": 1, "kind": "orders", "eq": eq.to_dict(),
           "q_minus_1_factorization": list(fact.prime_powers)}
    emit(cfg, lines, doc)
    return 0


def cmd_count(args) -> int:
    cfg = merge_config(args)
    eq, generated = resolve_equation(cfg)
    box = make_box(eq, _get_int(cfg, "r"))
    exact, solutions = brute_count(eq, box)
    approx = count_via_charsum(eq, box)
    lines = describe_instance(eq, generated)
    lines.append(f"box: sorted orders {list(box.orders_sorted)} "
                 f"r={box.r} card={box.card}")
    lines.append(f"brute count:        {exact}")
    lines.append(f"character-sum count: {approx:.6f}")
    if solutions is not None and len(solutions) <= 20:
        lines.append(f"solutions (original term order): {solutions}")
    doc = {"schema": 1, "kind": "count", "eq": eq.to_dict(),
           "box": box.to_dict(), "brute": exact, "charsum": approx,
           "solutions": [list(s) for s in solutions]
           if solutions is not None else None}
    emit(cfg, lines, doc)
    return 0


def cmd_density(args) -> int:
    cfg = merge_config(args)
    eq, generated = resolve_equation(cfg)
    box = make_box(eq, _get_int(cfg, "r"))
    report = density_mod.sweep_b(eq, box)
    delta = cfg.get("delta")
    delta = math.sqrt(math.log(eq.q)) if delta is None else float(delta)
    census = density_mod.exceptional_census(report, delta)
    ok, margin = density_mod.energy_bound_check(report)
    lines = describe_instance(eq, generated)
    lines.append(f"box: r={box.r} card={box.card}")
    lines.append(f"main term: {report.main} = {float(report.main):.6f}")
    lines.append(f"energy E(r): {report.energy} = "
                 f"{float(report.energy):.6f}")
    lines.append(f"energy bound q^(n-1) r: holds={ok} margin="
                 f"{float(margin):.6f}")
    lines.append(f"census at delta={census.delta:.6f}: "
                 f"{len(census.exceptional)} exceptional b "
                 f"(bound {float(census.bound):.3f})")
    doc = density_mod.report_to_dict(report, census)
    buf = io.StringIO()
    density_mod.write_per_b_csv(report, census, buf)
    emit(cfg, lines, doc, csv_text=buf.getvalue())
    return 0


def cmd_solve(args) -> int:
    cfg = merge_config(args)
    eq, generated = resolve_equation(cfg)
    report = solve_classical(eq, cfg.get("log_base") or "natural")
    lines = describe_instance(eq, generated)
    lines.append(f"status: {report.status}")
    if report.x is not None:
        lines.append(f"solution (original term order): {list(report.x)}")
    lines.append(f"box: sorted orders {list(report.box.orders_sorted)} "
                 f"r={report.box.r} (raw {report.r_raw}) "
                 f"card={report.box.card}")
    q = report.queries
    lines.append(f"queries: group_mults={q.group_mults} "
                 f"dlog_calls={q.dlog_calls} "
                 f"outer_points={q.outer_points_visited}")
    lines.append(f"order-finding cost model (not counted): "
                 f"{report.order_finding_cost_model:.1f}")
    emit(cfg, lines, report.to_dict())
    return 0


def cmd_qmodel(args) -> int:
    cfg = merge_config(args)
    eq, generated = resolve_equation(cfg)
    report = model_quantum_solve(
        eq, cfg.get("mode") or "thm2",
        log_base=cfg.get("log_base") or "natural",
        slack_exponent=_get_int(cfg, "slack_exponent", 3),
        rng_seed=_get_int(cfg, "seed", 0) or 0,
        sim_trials=_get_int(cfg, "trials", 300))
    lines = describe_instance(eq, generated)
    lines.append(f"mode: {report.mode}  (r={report.r}, raw {report.r_raw})")
    lines.append(f"search space t={report.t}  m_exact={report.m_exact}  "
                 f"m_estimate={report.m_estimate}")
    lines.append(f"modeled queries: {report.modeled_queries}  "
                 f"empirical: {report.empirical_queries}")
    lines.append(f"shor calls: {report.shor_calls}")
    lines.append(f"bound {report.theoretical_bound:.3f}  within: "
                 f"{report.within_bound}")
    if report.chain_case is not None:
        lines.append(f"grid chain case {report.chain_case}: "
                     f"holds={report.chain_holds}")
    emit(cfg, lines, report.to_dict())
    return 0


def cmd_exponents(args) -> int:
    cfg = merge_config(args)
    table = exponent_table(_get_int(cfg, "n_max", 10))
    doc = table.to_dict()
    rows = [["n", "classical", "classical_stated", "quantum", "ratio"]]
    for row in table.rows:
        rows.append([row.n, str(row.classical_exp),
                     str(row.classical_thm_exp), str(row.quantum_exp),
                     str(row.ratio)])
    emit(cfg, table.to_text().splitlines(), doc, csv_rows=rows)
    return 0


def cmd_reduce(args) -> int:
    cfg = merge_config(args)
    eq, generated = resolve_equation(cfg)
    red = reduce_equation(eq)
    lines = describe_instance(eq, generated)
    lines.append(f"mu = {red.mu} distinct orders, d(q-1) = {red.d_bound}")
    for grp in red.groups:
        lines.append(f"  order {grp.order}: members {list(grp.members)} "
                     f"rep {grp.rep_index} relations {list(grp.relations)}")
    doc = red.to_dict()
    samples = _get_int(cfg, "samples")
    if samples:
        rep = mu_bound_report(eq.spec, samples=samples,
                              n=eq.n, seed=_get_int(cfg, "seed", 0))
        lines.append(f"sampled {samples} random equations: max mu "
                     f"{rep.max_mu} <= d(q-1) = {rep.d_bound}")
        doc["mu_report"] = rep.to_dict()
    emit(cfg, lines, doc)
    return 0


def bench_cell(q: int, n: int, seed: int) -> dict:
    """One benchmark point: max-order instance, classical vs quantum."""
    spec = make_field(q)
    rng = random.Random(seed * 1_000_003 + q * 1000 + n)
    eq = random_equation_with_orders(spec, [q - 1] * n, rng)
    counter = QueryCounter()
    classical = solve_classical(eq, counter=counter)
    quantum = model_quantum_solve(eq, "thm2", rng_seed=seed, sim_trials=50)
    logq = math.log(q)
    return {
        "q": q, "n": n,
        "classical_mults": counter.group_mults,
        "classical_exponent_fit": round(
            math.log(max(counter.group_mults, 1)) / logq, 4),
        "quantum_modeled_queries": quantum.modeled_queries,
        "quantum_exponent_fit": round(
            math.log(max(quantum.modeled_queries, 1)) / logq, 4),
        "classical_status": classical.status,
    }


def _bench_cell_star(args) -> dict:
    return bench_cell(*args)


def cmd_bench(args) -> int:
    cfg = merge_config(args)
    qs = [int(s) for s in str(cfg.get("qs") or "101,257,521").split(",")]
    ns = [int(s) for s in str(cfg.get("ns") or "2,3").split(",")]
    seed = _get_int(cfg, "seed", 0)
    workers = _get_int(cfg, "workers", 0) or os.cpu_count() or 1
    cells = [(q, n, seed) for q in sorted(qs) for n in sorted(ns)]
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_bench_cell_star, cells))
    else:
        results = [bench_cell(*cell) for cell in cells]
    results.sort(key=lambda row: (row["q"], row["n"]))
    header = ["q", "n", "classical_mults", "classical_exponent_fit",
              "quantum_modeled_queries", "quantum_exponent_fit",
              "classical_status"]
    rows = [header] + [[row[k] for k in header] for row in results]
    lines = ["  ".join(f"{v}" for v in row) for row in rows]
    doc = {"schema": 1, "kind": "bench", "seed": seed, "rows": results}
    emit(cfg, lines, doc, csv_rows=rows)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CAP_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
