"""Acceptance suite: one test per criterion, each at its stated tolerance and time budget.

Every test prints a single ``CRITERION <n> <name>: PASS|FAIL`` line (also
collected into the terminal summary). Run standalone with
``python tests/test_acceptance.py`` to get just those lines.
"""

import json
import math
import sys
import tempfile
import time
from pathlib import Path

import jsonschema
import numpy as np

from hilbertgroups import checks
from hilbertgroups.fastconv import bench_apply
from hilbertgroups.operators import OperatorSpec, apply_Tt, exp_series_Ts
from hilbertgroups.seqcore import Window, lp_norm, make_delta
from hilbertgroups.spectral import build_truncated_matrix, l2_norm_estimate

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # standalone run outside pytest
    ACCEPTANCE_LINES = {}

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def record(n, name, ok, elapsed, budget, detail=""):
    within = elapsed <= budget
    status = "PASS" if ok and within else "FAIL"
    line = f"CRITERION {n:>2} {name}: {status} ({elapsed:.1f}s / {budget:.0f}s budget){' ' + detail if detail else ''}"
    ACCEPTANCE_LINES[n] = line
    print(line)
    return ok and within


def failing(reports):
    return [r.check_name for r in reports if not r.passed]


def suite(prop):
    t0 = time.perf_counter()
    reps = checks.SUITES[prop](seed=0)
    return reps, time.perf_counter() - t0


# 1 ---------------------------------------------------------------------------------------

def test_c01_isometry():
    reps, dt = suite("isometry")
    worst = max(r.residuals["max_rel_gram_error"] for r in reps[:-1])
    n_t = reps[0].params["n_t"]
    ok = len(reps) - 1 == 100 and n_t == 50 and not failing(reps)
    assert record(1, "isometry", ok, dt, 10, f"worst rel error {worst:.2e} <= 1e-12 over 100 x {n_t}")


# 2 ---------------------------------------------------------------------------------------

def test_c02_group_law():
    reps, dt = suite("group-law")
    summary = reps[-1]
    gain = summary.params["quadrupling_gain"]
    worst = max(r.residuals["rel_residual_M"] for r in reps[:-1])
    kinds = {(r.params["s"] == round(r.params["s"]), r.params["d"] == round(r.params["d"])) for r in reps[:-1]}
    ok = not failing(reps) and gain >= 1.8 and len(kinds) == 4 and summary.params["W"] == 32
    assert record(
        2, "group law", ok, dt, 60,
        f"worst rel residual {worst:.2e} <= 5/sqrt(8192) = {5 / math.sqrt(8192):.3f}, median gain x{gain:.2f} >= 1.8",
    )


# 3 ---------------------------------------------------------------------------------------

def test_c03_generator():
    reps, dt = suite("generator")
    ratios = [q for r in reps[:-1] for q in r.params["ratios"]]
    ok = not failing(reps) and reps[0].params["M"] == 4096 and all(8 <= q <= 12 for q in ratios)
    assert record(3, "generator", ok, dt, 30, f"ratios in [{min(ratios):.3f}, {max(ratios):.3f}] within [8, 12]")


# 4 ---------------------------------------------------------------------------------------

def test_c04_adjoint():
    reps, dt = suite("adjoint")
    worst = max(r.residuals["pairing_residual"] for r in reps[:-1])
    ok = len(reps) - 1 == 100 and worst <= 1e-12
    assert record(4, "adjoint", ok, dt, 5, f"worst pairing residual {worst:.2e} <= 1e-12")


# 5 ---------------------------------------------------------------------------------------

def test_c05_shur_constant():
    t0 = time.perf_counter()
    est = {M: l2_norm_estimate(build_truncated_matrix(OperatorSpec("H"), M)).value for M in (50, 200, 800)}
    dt = time.perf_counter() - t0
    v = [est[M] for M in (50, 200, 800)]
    ok = all(x < 1 for x in v) and v[0] < v[1] < v[2] and v[2] > 0.95
    assert record(5, "Shur constant", ok, dt, 60, "estimates " + ", ".join(f"M={M}: {x:.6f}" for M, x in est.items()))


# 6 ---------------------------------------------------------------------------------------

def test_c06_kak_involution():
    reps, dt = suite("kak-involution")
    worst = max(r.residuals["rel_residual_M"] for r in reps[:-1])
    ok = not failing(reps) and reps[0].params["W"] == 32 and reps[0].params["M"] == 8192
    assert record(6, "Kak involution", ok, dt, 30, f"worst rel residual {worst:.2e} <= 0.05, shrinks at 4M")


# 7 ---------------------------------------------------------------------------------------

def test_c07_norm_ordering():
    reps, dt = suite("ordering")
    rep = reps[0]
    est = rep.params["estimates"]
    bad = [k for k in rep.residuals if rep.residuals[k] > rep.tolerances[k]]
    detail = (
        ", ".join(f"{k}={v:.4f}" for k, v in est.items())
        + f", n_4={rep.params['n_p']:.4f}, gap(T_half - n_4)={rep.params['gap_T_half_minus_n_p']:.4f}"
        + (f"; exceeded: {', '.join(bad)}" if bad else "")
    )
    ok = rep.params["p"] == 4 and rep.params["M"] == 256 and not failing(reps)
    assert record(7, "norm ordering", ok, dt, 120, detail)


# 8 ---------------------------------------------------------------------------------------

def test_c08_resolvent():
    reps, dt = suite("resolvent")
    worst_res = max(r.residuals["rel_residual"] for r in reps[:-1])
    worst_bound = max(r.residuals["lambda_norm_x_over_norm_a"] for r in reps[:-1])
    ok = len(reps) - 1 == 30 and not failing(reps)
    assert record(
        8, "resolvent", ok, dt, 20,
        f"worst residual/||a|| {worst_res:.2e} <= 1e-8, max lambda||x||/||a|| = {worst_bound:.4f} <= 1",
    )


# 9 ---------------------------------------------------------------------------------------

def test_c09_identities():
    reps, dt = suite("identities")
    worst = max(r.residuals["abs_error"] for r in reps[:-1] if r.check_name != "identities/nu_l1_half")
    half = [r for r in reps if r.check_name == "identities/nu_l1_half"][0].params["value"]
    ok = not failing(reps) and abs(half - 4.0) <= 1e-12
    assert record(9, "identities", ok, dt, 20, f"worst |partial - closed| {worst:.2e} <= 1e-5 at N=1e6, nu(1/2) = {half!r}")


# 10 --------------------------------------------------------------------------------------

def test_c10_series_exponential():
    t0 = time.perf_counter()
    w = Window(-64, 64)
    ref = apply_Tt(make_delta(0), 0.2, w)
    err = {m: lp_norm(exp_series_Ts(make_delta(0), 0.2, 40, w, margin=m) - ref, 2) for m in (4096, 8192)}
    dt = time.perf_counter() - t0
    ok = err[4096] <= 1e-3 and err[8192] < err[4096]
    assert record(10, "series exponential", ok, dt, 60, f"error {err[4096]:.2e} (margin 4096) -> {err[8192]:.2e} (8192)")


# 11 --------------------------------------------------------------------------------------

FFT_OPS = [
    OperatorSpec("H"),
    OperatorSpec("Hd", d=0.3),
    OperatorSpec("Tt", t=0.5),
    OperatorSpec("Tt", t=-1.7),
    OperatorSpec("K"),
    OperatorSpec("Ktilde"),
    OperatorSpec("Ut", t=0.8),
]


def test_c11_fft_equivalence():
    t0 = time.perf_counter()
    records = []
    for spec in FFT_OPS:
        records += bench_apply(spec, [1024, 4096, 16384, 65536], repeats=1)
    dt = time.perf_counter() - t0
    doc = [r.to_json() for r in records]
    jsonschema.validate(doc, json.loads((SCHEMAS / "bench_records.schema.json").read_text()))
    out = Path(tempfile.gettempdir()) / "hilbertgroups_acceptance_bench.json"
    out.write_text(json.dumps(doc, indent=2))
    worst = max(r["max_abs_diff"] for r in doc if r["method"] == "fft")
    ok = worst <= 1e-9 and max(r["size"] for r in doc) == 2**16
    assert record(11, "FFT equivalence", ok, dt, 60, f"worst |fft - direct| {worst:.2e} <= 1e-9 up to 2^16; JSON at {out}")


# 12 --------------------------------------------------------------------------------------

def test_c12_ut_norm_formula():
    reps, dt = suite("ut-norm")
    trials, summary = reps[:-1], reps[-1]
    worst = max(r.residuals["rel_residual_M"] for r in trials)
    windowed_ok = all(r.passed for r in trials)
    witness = summary.params["max_rel_cross_term"]
    ok = windowed_ok and not failing(reps)
    detail = (
        f"windowed formula {'holds' if windowed_ok else 'fails'} (worst {worst:.2e} <= 0.05, shrinks at 4M); "
        f"largest |sin 2t Re<a,Ka>|/||a||^2 = {witness:.1e} (needs a nonzero witness)"
    )
    assert record(12, "U_t norm formula", ok, dt, 30, detail)


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_c")):
        try:
            fn()
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)
