"""Exit criteria, one test per criterion, each at its stated tolerance."""

import math

import numpy as np
import pytest

from ggl import bounds, expsum, goldbach, spectrum
from ggl.arith import ArithTables, sieve
from ggl.constants import THETA0
from ggl.fixtures import GOLDBACH_CHECKPOINTS, alpha_sample, compute_frozen, load_frozen
from ggl.parity import epsilon_array, epsilon_k_array
from ggl.rng import SplitMix64
from oracles import vaughan_residual, w3_opposite_order, w4_loops


@pytest.fixture(scope="module")
def table():
    return sieve(100_003)


def test_criterion_1_theorem2_convergence(table, acceptance):
    frozen = load_frozen()["goldbach_checkpoints"]
    t0, t1, t2, t3 = goldbach.rep_count_tables(100_001, table)
    devs, exact_ok = [], True
    for N in GOLDBACH_CHECKPOINTS:
        rc = goldbach.rep_counts(N, table)
        fast = goldbach.RepCounts(N, int(t0[N]), int(t1[N]), int(t2[N]), int(t3[N]))
        ref = frozen[str(N)]
        exact_ok &= rc == fast and (rc.J, rc.J0) == (ref["J"], ref["J0"])
        devs.append(abs(rc.ratio - 1))
    trend = all(b <= a for a, b in zip(devs, devs[1:]))
    frozen_devs = [frozen[str(N)]["deviation"] for N in GOLDBACH_CHECKPOINTS]
    regress = all(abs(d - f) <= 1e-12 for d, f in zip(devs, frozen_devs))
    ok = acceptance(1, exact_ok and trend and regress, "|8J0/J - 1| = " + ", ".join(f"{d:.4f}" for d in devs))
    assert ok


def test_criterion_2_circle_exactness(table, acceptance):
    rng = SplitMix64(2025)
    worst, mismatches = 0.0, 0
    for _ in range(50):
        N = 2 * rng.randrange(3, 751) + 1
        c = goldbach.circle_identity_check(N, goldbach.next_power_of_two_above(3 * N), table)
        mismatches += not c.passed
        worst = max(worst, c.residual)
    ok = acceptance(2, mismatches == 0 and worst < 1e-6, f"50 N, mismatches={mismatches}, max residual={worst:.2e}")
    assert ok


def test_criterion_3_lemma2(acceptance):
    alphas = alpha_sample(10_000, 1_000, seed=42)
    violations = 0
    for Q in range(1, 13):
        violations += int(np.count_nonzero(np.abs(expsum.gelfond_product(alphas, Q)) > bounds.lemma2_rhs(Q)))
    ok = acceptance(3, violations == 0, f"Q<=12 over {alphas.size} alphas, violations={violations}")
    assert ok


def test_criterion_4_lemma4(acceptance):
    values = [bounds.l1_norm_SQ(Q) for Q in range(1, 11)]
    within = all(r.value <= 2 ** (Q * THETA0) for Q, r in enumerate(values, start=1))
    closed = 16 / (3 * math.pi)
    rel = abs(values[0].value - closed) / closed
    worst = max(r.value / 2 ** (Q * THETA0) for Q, r in enumerate(values, start=1))
    ok = acceptance(4, within and rel < 1e-4, f"max value/2^(Q theta0)={worst:.4f}, Q=1 rel err={rel:.1e}")
    assert ok


def test_criterion_5_spectrum(acceptance):
    frozen = load_frozen()
    parseval = max(abs(spectrum.spectrum(k).parseval - 1) for k in range(1, 17))
    agree = max(np.abs(spectrum.dft_direct(k).coeffs - spectrum.spectrum(k).coeffs).max() for k in range(1, 13))
    c3 = max(bounds.corollary3_ratio(k) for k in range(1, 9))
    c4 = max(bounds.corollary4_ratio(k) for k in range(1, 9))
    constants_fresh = c3 == frozen["corollary3_C"] and c4 == frozen["corollary4_C"]
    cor3 = all(bounds.corollary3_check(k, frozen["corollary3_C"]).passed for k in range(1, 13))
    cor4 = all(c.passed for k in range(1, 13) for c in bounds.corollary4_checks(k, frozen["corollary4_C"]))
    ok = acceptance(
        5,
        parseval <= 1e-10 and agree <= 1e-9 and constants_fresh and cor3 and cor4,
        f"parseval err={parseval:.1e}, product/direct={agree:.1e}, cor3={cor3}, cor4={cor4}",
    )
    assert ok


def test_criterion_6_oracle_equivalences(acceptance):
    small = sieve(2001)
    fast_ok = all(rc == goldbach.rep_counts(rc.N, small) for rc in goldbach.rep_counts_fast(2001, small))
    tables = ArithTables.build(1000)
    vaughan_err = 0.0
    for X in (100, 200, 500, 1000):
        for alpha in (0.0, 0.5, 0.1234):
            split = expsum.vaughan_split(alpha, X, tables)
            vaughan_err = max(vaughan_err, abs(split.residual - vaughan_residual(alpha, X, split.u)))
    bil_err = 0.0
    for alpha in (0.0, 0.3):
        w3 = expsum.bilinear_sum_w3(alpha, 8, 16, 8, 16, 2.0, tables)
        bil_err = max(bil_err, abs(w3 - w3_opposite_order(alpha, 8, 16, 8, 16, 2.0)))
        for h in (1, 3):
            w4 = expsum.bilinear_sum_w4(alpha, h, 8, 16, 8, 16)
            bil_err = max(bil_err, abs(w4 - w4_loops(alpha, h, 8, 16, 8, 16)))
    ok = acceptance(
        6,
        fast_ok and vaughan_err < 1e-8 and bil_err <= 1e-9,
        f"fast==direct: {fast_ok}, vaughan err={vaughan_err:.1e}, bilinear err={bil_err:.1e}",
    )
    assert ok


def test_criterion_7_theorem1_decay(acceptance):
    js = list(range(10, 19))
    tables = ArithTables.build(1 << js[-1])
    prof = expsum.theorem1_profile(js, bounds.midpoint_grid(2048), tables)
    tail = prof[-4:]
    ok = acceptance(
        7,
        all(b < a for a, b in zip(tail, tail[1:])),
        "max|S|/X at j=15..18: " + ", ".join(f"{v:.4f}" for v in tail),
    )
    assert ok


def test_criterion_8_foundations(acceptance):
    failures = 0
    n = np.arange(1 << 16)
    e = epsilon_array(1 << 17)
    failures += np.count_nonzero(e[2 * n] != e[n]) + np.count_nonzero(e[2 * n + 1] != -e[n])
    for m in range(9):
        x = np.arange(1 << m)[:, None]
        y = np.arange(1 << 8)[None, :]
        failures += np.count_nonzero(epsilon_array(x + (y << m)) != epsilon_array(x) * epsilon_array(y))
    failures += sum(int(epsilon_array(1 << k).astype(np.int64).sum() != 0) for k in range(1, 21))
    for k in range(1, 17):
        m = np.arange(1 << k)
        failures += np.count_nonzero(epsilon_k_array(m, k) != epsilon_array(m))
    lam = ArithTables.build(10_000).mangoldt
    acc = np.zeros(10_001)
    for d in range(1, 10_001):
        acc[d::d] += lam[d]
    ns = np.arange(2, 10_001)
    failures += int(np.count_nonzero(np.abs(acc[ns] - np.log(ns)) > 1e-12 * np.log(ns)))
    ok = acceptance(8, failures == 0, f"failures={failures}")
    assert ok


def test_frozen_file_is_current():
    fresh = compute_frozen()
    frozen = load_frozen()
    for key in ("corollary1_C", "corollary3_C", "corollary4_C", "vaughan_C"):
        assert fresh[key] == pytest.approx(frozen[key], rel=1e-12)
    assert fresh["goldbach_checkpoints"] == frozen["goldbach_checkpoints"]
