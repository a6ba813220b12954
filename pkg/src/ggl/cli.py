"""Command-line front end: ``ggl <suite> [options]``.

Every suite writes a flat table (CSV or a JSON array of objects) and exits 0
when all of its checks pass, 1 on any violation and 2 on bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ggl import bounds, expsum, goldbach, parity, spectrum
from ggl.arith import ArithTables, cached_sieve, class_prime_counts, is_prime
from ggl.bounds import BoundCheck
from ggl.fixtures import DEFAULT_SEED, alpha_sample, load_frozen, vaughan_alphas
from ggl.rng import SplitMix64

COMMANDS = ("parity", "sieve", "expsum", "spectrum", "bounds", "goldbach", "report")
DEFAULT_TOLERANCES = {
    "quad": bounds.QUAD_TOL,
    "rtol": bounds.QUAD_RTOL,
    "parseval": 1e-10,
    "product": 1e-9,
    "circle": 1e-6,
    "vaughan": 1e-8,
}
BOUND_SUITES = ("lemma1", "lemma2", "corollary1", "lemma3", "lemma4", "corollary2")
EXPSUM_SUITES = ("product", "symmetry", "vaughan", "theorem1")
SPECTRUM_CHECKS = ("parseval", "product", "corollary3", "corollary4", "export")
GOLDBACH_SUITES = ("ratio", "circle", "fast")
CHECK_COLUMNS = ("suite", "check_name", "parameters", "lhs", "rhs", "margin", "grid_points", "passed")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    limit: int | None = None
    alpha_grid: int = 10_000
    seed: int = DEFAULT_SEED
    out_format: str = "csv"
    out_path: Path | None = None
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    suite: str | None = None
    checkpoints: tuple[int, ...] = ()
    k: int = 10
    check: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.alpha_grid < 1:
            raise UsageError("--alpha-grid must be positive")
        if self.limit is not None and self.limit < 1:
            raise UsageError("--limit must be positive")
        if not 1 <= self.k <= spectrum.MAX_K:
            raise UsageError(f"--k must lie in [1, {spectrum.MAX_K}]")
        choices = {
            "bounds": BOUND_SUITES,
            "expsum": EXPSUM_SUITES,
            "goldbach": GOLDBACH_SUITES,
        }.get(self.command)
        if self.suite is not None and choices is not None and self.suite not in choices:
            raise UsageError(f"--suite for {self.command} must be one of {', '.join(choices)}")
        if self.check is not None and self.check not in SPECTRUM_CHECKS:
            raise UsageError(f"--check must be one of {', '.join(SPECTRUM_CHECKS)}")
        for N in self.checkpoints:
            if N < 7 or N % 2 == 0:
                raise UsageError(f"checkpoint {N} is not an odd integer >= 7")


# -------------------------------------------------------------------- suites


def exact(name: str, params: str, failures: int) -> BoundCheck:
    return BoundCheck(name, params, float(failures), 0.0)


def within(name: str, params: str, err: float, tol: float, points: int = 0) -> BoundCheck:
    return BoundCheck(name, params, float(err), float(tol), points)


def parity_suite(cfg: RunConfig) -> list[BoundCheck]:
    bits = min(cfg.limit.bit_length() - 1, 20) if cfg.limit else 16
    n = np.arange(1 << bits)
    eps = parity.epsilon_array(1 << (bits + 1))
    rec = np.count_nonzero(eps[2 * n] != eps[n]) + np.count_nonzero(eps[2 * n + 1] != -eps[n])
    split_fail = 0
    for m in range(9):
        x = np.arange(1 << m)[:, None]
        y = np.arange(1 << 8)[None, :]
        lhs = parity.epsilon_array(x + (y << m))
        split_fail += np.count_nonzero(lhs != parity.epsilon_array(x) * parity.epsilon_array(y))
    balance = sum(int(parity.epsilon_array(1 << k).astype(np.int64).sum() != 0) for k in range(1, 21))
    trunc = 0
    for k in range(1, bits + 1):
        m = np.arange(1 << k)
        trunc += np.count_nonzero(parity.epsilon_k_array(m, k) != parity.epsilon_array(m))
    return [
        exact("thue_morse_recurrence", f"n<2^{bits}", rec),
        exact("splitting_multiplicativity", "m<=8;y<2^8", split_fail),
        exact("balance", "k<=20", balance),
        exact("truncation_agrees", f"k<={bits}", trunc),
    ]


def sieve_suite(cfg: RunConfig) -> list[BoundCheck]:
    limit = cfg.limit or 1_000_000
    table = cached_sieve(limit)
    total, class0 = class_prime_counts(table, limit)
    check_to = min(limit, 100_000)
    trial = [p for p in range(2, check_to + 1) if is_prime(p)]
    mismatch = int(len(trial) != table.upto(check_to) or any(np.asarray(trial) != table.primes[: len(trial)]))
    tag_fail = np.count_nonzero(table.class_tag != parity.epsilon_array(table.primes))
    return [
        exact("trial_division_agrees", f"limit={check_to}", mismatch),
        exact("class_tags", f"limit={limit};pi={total};class0={class0}", tag_fail),
    ]


def expsum_suite(cfg: RunConfig) -> list[BoundCheck]:
    frozen = load_frozen()
    checks: list[BoundCheck] = []
    suites = [cfg.suite] if cfg.suite else list(EXPSUM_SUITES)
    rng_alphas = SplitMix64(cfg.seed).uniforms(100)
    if "product" in suites:
        for Q in range(1, 9):
            err = np.abs(expsum.gelfond_product(rng_alphas, Q) - (expsum.char_sum(rng_alphas, 4**Q - 1) + 1)).max()
            checks.append(within("gelfond_identity", f"Q={Q}", err, cfg.tolerances["product"] * 4**Q))
    if "symmetry" in suites:
        a = rng_alphas[:20]
        table = cached_sieve(1000)
        tables = ArithTables.build(1000)
        pairs = {
            "char_sum": lambda x: expsum.char_sum(x, 1000),
            "gelfond_product": lambda x: expsum.gelfond_product(x, 4),
            "prime_sum": lambda x: expsum.prime_sum(x, 1000, table, weighted=True),
            "theorem1_sum": lambda x: expsum.theorem1_sum(x, 1000, tables),
        }
        for name, f in pairs.items():
            err = np.abs(f(1 - a) - np.conj(f(a))).max()
            checks.append(within("conjugate_symmetry", name, err, 1e-8))
    if "vaughan" in suites:
        X_top = cfg.limit or 16384
        xs = sorted({x for x in (100, 200, 500, 1000, 1024, X_top) if x <= X_top})
        tables = ArithTables.build(max(xs))
        for X in xs:
            for alpha in vaughan_alphas()[:3]:
                split = expsum.vaughan_split(alpha, X, tables)
                tail = expsum.vaughan_tail(alpha, X, tables)
                params = f"X={X};alpha={alpha!r}"
                checks.append(within("vaughan_residual_tail", params, abs(split.residual - tail), cfg.tolerances["vaughan"]))
                checks.append(
                    BoundCheck("vaughan_residual_bound", params, abs(split.residual), frozen["vaughan_C"] * split.u * math.log(X) + 1e-9)
                )
    if "theorem1" in suites:
        js = list(range(10, 19))
        tables = ArithTables.build(1 << js[-1])
        grid = bounds.midpoint_grid(2048)
        prof = expsum.theorem1_profile(js, grid, tables)
        for j in range(len(js) - 4, len(js)):
            checks.append(
                BoundCheck("theorem1_decay", f"j={js[j]};prev_j={js[j - 1]}", prof[j], prof[j - 1] * (1 - 1e-12), 2048)
            )
    return checks


def spectrum_suite(cfg: RunConfig) -> list[BoundCheck] | str:
    frozen = load_frozen()
    k = cfg.k
    which = cfg.check
    if which == "export":
        return spectrum.spectrum(k).to_csv()
    checks: list[BoundCheck] = []
    if which in (None, "parseval"):
        spec = spectrum.spectrum(k)
        checks.append(within("parseval", f"k={k}", abs(spec.parseval - 1), cfg.tolerances["parseval"]))
        checks.append(within("zero_coefficient", f"k={k}", abs(spec.coeffs[0]), 0.0))
    if which in (None, "product"):
        if k > 12:
            raise UsageError("--check product runs the O(4^k) oracle; use --k <= 12")
        err = np.abs(spectrum.dft_direct(k).coeffs - spectrum.spectrum(k).coeffs).max()
        checks.append(within("product_vs_direct", f"k={k}", err, cfg.tolerances["product"]))
    if which in (None, "corollary3"):
        checks.append(bounds.corollary3_check(k, frozen["corollary3_C"]))
    if which in (None, "corollary4"):
        checks.extend(bounds.corollary4_checks(k, frozen["corollary4_C"]))
    return checks


def bounds_suite(cfg: RunConfig) -> list[BoundCheck]:
    frozen = load_frozen()
    quad = cfg.tolerances["quad"]
    suites = [cfg.suite] if cfg.suite else list(BOUND_SUITES)
    alphas = np.concatenate([bounds.midpoint_grid(cfg.alpha_grid), SplitMix64(cfg.seed).uniforms(1000)])
    checks: list[BoundCheck] = []

    def quad_tol(c: BoundCheck) -> BoundCheck:
        return BoundCheck(c.check_name, c.parameters, c.lhs, c.rhs, c.grid_points, quad)

    if "lemma1" in suites:
        rng = SplitMix64(cfg.seed)
        for _ in range(50):
            q = rng.randrange(1, 51)
            a = rng.randrange(0, q)
            while math.gcd(a, q) != 1:
                a = rng.randrange(0, q)
            alpha = a / q + (2 * rng.uniform() - 1) / q**2
            beta = rng.uniform()
            U = 1 + 100 * rng.uniform()
            P = rng.randrange(1, 500)
            checks.append(bounds.lemma1_check(alpha, beta, U, P, q))
    if "lemma2" in suites:
        checks.extend(bounds.lemma2_check(Q, alphas) for Q in range(1, 13))
    if "corollary1" in suites:
        grid = bounds.midpoint_grid(cfg.alpha_grid)
        checks.extend(bounds.corollary1_check(1 << j, grid, frozen["corollary1_C"]) for j in range(1, 17))
    if "lemma3" in suites:
        checks.extend(quad_tol(bounds.gallagher_check(k)) for k in range(1, 11))
    if "lemma4" in suites:
        checks.extend(quad_tol(bounds.lemma4_check(Q)) for Q in range(1, 11))
    if "corollary2" in suites:
        checks.extend(quad_tol(bounds.corollary2_check(1 << j)) for j in range(1, 13))
    return checks


def goldbach_suite(cfg: RunConfig) -> list[BoundCheck] | list[dict]:
    limit = cfg.limit or 100_003
    table = cached_sieve(limit)
    suite = cfg.suite or "ratio"
    if suite == "ratio":
        checkpoints = cfg.checkpoints or tuple(n for n in (1001, 10001, 100001) if n <= limit)
        if any(N > limit for N in checkpoints):
            raise UsageError("a checkpoint exceeds --limit")
        return goldbach.ratio_report(checkpoints, table)
    if suite == "circle":
        rng = SplitMix64(cfg.seed)
        top = min(limit, 1501)
        checks = []
        for _ in range(50):
            N = 2 * rng.randrange(3, (top - 1) // 2 + 1) + 1
            L = goldbach.next_power_of_two_above(3 * N)
            c = goldbach.circle_identity_check(N, L, table)
            params = f"N={N};L={L};J={c.j_direct};J0={c.j0_direct}"
            checks.append(exact("circle_exact", params, int(not c.passed)))
            checks.append(within("circle_residual", params, c.residual, cfg.tolerances["circle"], L))
        return checks
    top = min(limit, 2001) if limit % 2 else min(limit - 1, 2001)
    bad = sum(rc != goldbach.rep_counts(rc.N, table) for rc in goldbach.rep_counts_fast(top, table))
    return [exact("fast_matches_direct", f"N<={top}", bad)]


SUITES = {
    "parity": parity_suite,
    "sieve": sieve_suite,
    "expsum": expsum_suite,
    "spectrum": spectrum_suite,
    "bounds": bounds_suite,
    "goldbach": goldbach_suite,
}


# -------------------------------------------------------------------- output


def check_rows(suite: str, checks: list[BoundCheck]) -> list[dict]:
    return [{"suite": suite, **c.row(), "passed": c.passed} for c in checks]


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return int(v)
    return v


def render(rows: list[dict], fmt: str) -> str:
    rows = [{k: _cell(v) for k, v in row.items()} for row in rows]
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command. Returns (exit status, report text)."""
    cfg.validate()
    if cfg.command == "report":
        rows: list[dict] = []
        for name in ("parity", "sieve", "expsum", "spectrum", "bounds", "goldbach"):
            sub = RunConfig(
                name, alpha_grid=cfg.alpha_grid, seed=cfg.seed, tolerances=cfg.tolerances,
                limit=cfg.limit if name in ("sieve", "goldbach") else None,
            )
            if name == "goldbach":
                for suite in ("circle", "fast"):
                    sub.suite = suite
                    rows.extend(check_rows(f"goldbach:{suite}", SUITES[name](sub)))
            else:
                rows.extend(check_rows(name, SUITES[name](sub)))
        failed = any(r["passed"] is False for r in rows)
        return int(failed), render(rows, cfg.out_format)
    result = SUITES[cfg.command](cfg)
    if isinstance(result, str):
        return 0, result
    if result and isinstance(result[0], dict):
        if cfg.out_format == "csv":
            buf = io.StringIO()
            goldbach.write_report_csv(result, buf)
            text = buf.getvalue()
        else:
            text = render(result, "json")
        failed = any(not r["lower_bound_proxy"] > 0 for r in result)
        return int(failed), text
    rows = check_rows(cfg.command, result)
    return int(any(not c.passed for c in result)), render(rows, cfg.out_format)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


def _tolerance(text: str) -> tuple[str, float]:
    key, sep, val = text.partition("=")
    if not sep or key not in DEFAULT_TOLERANCES:
        raise argparse.ArgumentTypeError(f"expected KEY=VAL with KEY in {sorted(DEFAULT_TOLERANCES)}")
    try:
        return key, float(val)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad tolerance value {val!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ggl", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS, help="check suite to run")
    parser.add_argument("--limit", type=int, help="sieve / Goldbach upper limit")
    parser.add_argument("--checkpoints", type=_int_list, default=(), help="comma-separated odd N for the ratio report")
    parser.add_argument("--alpha-grid", type=int, default=10_000, help="size of the uniform midpoint alpha grid")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="SplitMix64 seed for random draws")
    parser.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    parser.add_argument("--out", type=Path, help="write output to this file instead of stdout")
    parser.add_argument("--tolerance", type=_tolerance, action="append", default=[], metavar="KEY=VAL", help="override a tolerance (repeatable)")
    parser.add_argument("--suite", help="restrict to one named check within the command")
    parser.add_argument("--k", type=int, default=10, help="spectrum level k")
    parser.add_argument("--check", help="spectrum check name")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    tolerances = dict(DEFAULT_TOLERANCES)
    tolerances.update(dict(args.tolerance))
    cfg = RunConfig(
        command=args.command,
        limit=args.limit,
        alpha_grid=args.alpha_grid,
        seed=args.seed,
        out_format=args.format,
        out_path=args.out,
        tolerances=tolerances,
        suite=args.suite,
        checkpoints=args.checkpoints,
        k=args.k,
        check=args.check,
    )
    try:
        status, text = run(cfg)
    except (UsageError, spectrum.GuardError) as exc:
        parser.print_usage(sys.stderr)
        print(f"ggl: error: {exc}", file=sys.stderr)
        return 2
    if cfg.out_path:
        cfg.out_path.write_text(text)
    else:
        sys.stdout.write(text)
    return status
