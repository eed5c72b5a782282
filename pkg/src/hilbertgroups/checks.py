"""Property-check suites producing :class:`CheckReport` records.

Each ``run_*`` function takes a seed plus overrides of its entry in
:mod:`hilbertgroups.config` and returns one report per trial followed by a
summary report. A report passes iff every residual is at most its paired
tolerance. Randomness comes from a Philox (counter-based) generator keyed by
``(seed, trial)``, so trial ``i`` sees the same numbers however many trials
run.
"""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from . import config, kernels
from .operators import (
    adjoint_pairing_residual,
    apply_H,
    apply_K,
    apply_Tt,
    apply_Ut,
    exact_T_gram,
    is_integer_time,
)
from .operators import OperatorSpec
from .seqcore import Sequence, Window, inner, lp_norm
from .spectral import build_truncated_matrix, lp_norm_estimate, np_constant, resolvent_solve


@dataclass
class CheckReport:
    check_name: str
    params: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    def __post_init__(self):
        missing = set(self.residuals) - set(self.tolerances)
        if missing:
            raise ValueError(f"residuals without tolerance: {sorted(missing)}")

    @property
    def passed(self) -> bool:
        # NaN compares False, so it fails
        return all(self.residuals[k] <= self.tolerances[k] for k in self.residuals)

    def to_json(self) -> dict:
        return {
            "check_name": self.check_name,
            "params": self.params,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "tolerances": {k: float(v) for k, v in self.tolerances.items()},
            "pass": self.passed,
            "wall_time_s": self.wall_time_s,
        }


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    key = (int(seed) & (2**64 - 1)) | (int(trial) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def random_sequence(rng: np.random.Generator, max_width: int, center: int = 0) -> Sequence:
    """Complex Gaussian entries on a random block of width ``<= max_width`` near ``center``."""
    width = int(rng.integers(1, max_width + 1))
    offset = center - width // 2 + int(rng.integers(-2, 3))
    vals = rng.standard_normal(width) + 1j * rng.standard_normal(width)
    return Sequence(offset, vals)


def _summary(name, trials, params, residuals=None, tolerances=None, t0=None):
    failed = sum(not r.passed for r in trials)
    res = {"failed_trials": failed}
    tol = {"failed_trials": 0}
    res.update(residuals or {})
    tol.update(tolerances or {})
    p = dict(params, trials=len(trials))
    return CheckReport(f"{name}/summary", p, res, tol, time.perf_counter() - t0)


def _cfg(prop, overrides):
    cfg = config.defaults(prop)
    for k, v in overrides.items():
        if v is not None:
            cfg[k] = v
    return cfg


# --- isometry ------------------------------------------------------------------

def t_grid(n_t: int, span: float) -> np.ndarray:
    """``n_t`` equispaced times on ``[-span, span]``; points within 1e-6 of an integer move by 0.05."""
    ts = np.linspace(-span, span, n_t)
    near = np.abs(ts - np.rint(ts)) < 1e-6
    ts[near] += 0.05
    return ts


def run_isometry(seed=0, **overrides):
    cfg = _cfg("isometry", overrides)
    ts = [cfg["t"]] if cfg.get("t") is not None else list(t_grid(cfg["n_t"], cfg["t_span"]))
    t0 = time.perf_counter()
    out = []
    for i in range(cfg["trials"]):
        s0 = time.perf_counter()
        a = random_sequence(trial_rng(seed, i), cfg["support"])
        n2 = lp_norm(a, 2) ** 2
        worst = max(abs(exact_T_gram(a, t) - n2) / n2 for t in ts)
        out.append(
            CheckReport(
                f"isometry/trial{i}",
                {"trial": i, "support": len(a), "n_t": len(ts)},
                {"max_rel_gram_error": worst},
                {"max_rel_gram_error": cfg["tol_rel"]},
                time.perf_counter() - s0,
            )
        )
    out.append(_summary("isometry", out, {"seed": seed, "tol_rel": cfg["tol_rel"]}, t0=t0))
    return out


# --- group law -----------------------------------------------------------------

def group_law_residual(a: Sequence, s: float, d: float, W: int, M: int) -> float:
    """``||T_d(T_s a |_[-M,M]) - T_{s+d} a||`` on ``[-W, W]``."""
    win = Window.centered(W)
    inner_out = apply_Tt(a, s, Window.centered(M))
    lhs = apply_Tt(inner_out, d, win)
    rhs = apply_Tt(a, s + d, win)
    return lp_norm(lhs - rhs, 2)


def group_law_params(seed: int, trial: int, cfg: dict):
    rng = trial_rng(seed, trial)
    a = random_sequence(rng, cfg["support"])
    s, d = (float(x) for x in rng.uniform(-2, 2, 2))
    if trial % cfg["int_period"] in cfg["int_s_residues"]:
        s = float(rng.integers(-3, 4))
    if trial % cfg["int_period"] in cfg["int_d_residues"]:
        d = float(rng.integers(-3, 4))
    return a, s, d


def run_group_law(seed=0, **overrides):
    cfg = _cfg("group-law", overrides)
    W, M, C = cfg["W"], cfg["M"], cfg["C"]
    t0 = time.perf_counter()
    out, at_m, at_4m = [], [], []
    for i in range(cfg["trials"]):
        s0 = time.perf_counter()
        a, s, d = group_law_params(seed, i, cfg)
        if cfg.get("s") is not None:
            s = cfg["s"]
        if cfg.get("d") is not None:
            d = cfg["d"]
        na = lp_norm(a, 2)
        r1 = group_law_residual(a, s, d, W, M) / na
        r4 = group_law_residual(a, s, d, W, 4 * M) / na
        # an integer s or d acts as an exact shift, so only fractional pairs see truncation
        if not (is_integer_time(s) or is_integer_time(d)):
            at_m.append(r1)
            at_4m.append(r4)
        out.append(
            CheckReport(
                f"group-law/trial{i}",
                {"trial": i, "s": s, "d": d, "W": W, "M": M},
                {"rel_residual_M": r1, "rel_residual_4M": r4},
                {"rel_residual_M": C / math.sqrt(M), "rel_residual_4M": C / math.sqrt(4 * M)},
                time.perf_counter() - s0,
            )
        )
    if at_m:
        med1, med4 = statistics.median(at_m), statistics.median(at_4m)
        gain = med1 / med4 if med4 > 0 else math.inf
    else:
        med1 = med4 = 0.0
        gain = math.inf
    out.append(
        _summary(
            "group-law",
            out,
            {
                "seed": seed,
                "W": W,
                "M": M,
                "fractional_trials": len(at_m),
                "median_M": med1,
                "median_4M": med4,
                "quadrupling_gain": gain,
            },
            {"inverse_quadrupling_gain": 1.0 / gain},
            {"inverse_quadrupling_gain": 1.0 / cfg["min_quadrupling_gain"]},
            t0,
        )
    )
    return out


# --- adjoint -------------------------------------------------------------------

def run_adjoint(seed=0, **overrides):
    cfg = _cfg("adjoint", overrides)
    t0 = time.perf_counter()
    out = []
    for i in range(cfg["trials"]):
        s0 = time.perf_counter()
        rng = trial_rng(seed, i)
        a = random_sequence(rng, cfg["support"])
        b = random_sequence(rng, cfg["support"], center=int(rng.integers(-100, 101)))
        t = cfg["t"] if cfg.get("t") is not None else float(rng.uniform(-3, 3))
        r = adjoint_pairing_residual(a, b, t)
        out.append(
            CheckReport(
                f"adjoint/trial{i}",
                {"trial": i, "t": t},
                {"pairing_residual": r},
                {"pairing_residual": cfg["tol"]},
                time.perf_counter() - s0,
            )
        )
    out.append(_summary("adjoint", out, {"seed": seed}, t0=t0))
    return out


# --- generator and strong continuity --------------------------------------------

def generator_residual(a: Sequence, d: float, M: int) -> float:
    """``||(T_d a - a)/d - pi H a||`` on ``[-M, M]``."""
    w = Window.centered(M)
    diff = (apply_Tt(a, d, w).values - a.on_window(w).values) / d
    return float(np.linalg.norm(diff - math.pi * apply_H(a, w).values))


def run_generator(seed=0, **overrides):
    cfg = _cfg("generator", overrides)
    ds = list(cfg["d_values"])
    lo, hi = cfg["ratio_lo"], cfg["ratio_hi"]
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    t0 = time.perf_counter()
    out = []
    for i in range(cfg["trials"]):
        s0 = time.perf_counter()
        a = random_sequence(trial_rng(seed, i), cfg["support"])
        rs = [generator_residual(a, d, cfg["M"]) for d in ds]
        ratios = [rs[k] / rs[k + 1] for k in range(len(rs) - 1)]
        res = {f"ratio_deviation_{k}": abs(q - mid) for k, q in enumerate(ratios)}
        out.append(
            CheckReport(
                f"generator/trial{i}",
                {"trial": i, "M": cfg["M"], "d_values": ds, "residuals": rs, "ratios": ratios},
                res,
                {k: half for k in res},
                time.perf_counter() - s0,
            )
        )
    out.append(_summary("generator", out, {"seed": seed, "ratio_range": [lo, hi]}, t0=t0))
    return out


def run_strong_continuity(seed=0, **overrides):
    cfg = _cfg("strong-continuity", overrides)
    w = Window.centered(cfg["M"])
    d = cfg["d"]
    t0 = time.perf_counter()
    out = []
    for i in range(cfg["trials"]):
        s0 = time.perf_counter()
        rng = trial_rng(seed, i)
        a = random_sequence(rng, cfg["support"])
        t_0 = cfg["t"] if cfg.get("t") is not None else float(rng.uniform(-2, 2))
        r = lp_norm(apply_Tt(a, t_0 + d, w) - apply_Tt(a, t_0, w), 2) / lp_norm(a, 2)
        out.append(
            CheckReport(
                f"strong-continuity/trial{i}",
                {"trial": i, "t0": t_0, "d": d, "M": cfg["M"]},
                {"rel_increment": r},
                {"rel_increment": cfg["tol_rel"]},
                time.perf_counter() - s0,
            )
        )
    out.append(_summary("strong-continuity", out, {"seed": seed}, t0=t0))
    return out


# --- Kak transform --------------------------------------------------------------

def kak_involution_residual(a: Sequence, W: int, M: int) -> float:
    """``||K(K a |_[-M,M]) + a||`` on ``[-W, W]``."""
    win = Window.centered(W)
    kk = apply_K(apply_K(a, Window.centered(M)), win)
    return lp_norm(kk + a.on_window(win), 2)


def run_kak_involution(seed=0, **overrides):
    cfg = _cfg("kak-involution", overrides)
    W, M = cfg["W"], cfg["M"]
    t0 = time.perf_counter()
    out = []
    for i in range(cfg["trials"]):
        s0 = time.perf_counter()
        a = random_sequence(trial_rng(seed, i), cfg["support"])
        na = lp_norm(a, 2)
        r1 = kak_involution_residual(a, W, M) / na
        r4 = kak_involution_residual(a, W, 4 * M) / na
        out.append(
            CheckReport(
                f"kak-involution/trial{i}",
                {"trial": i, "W": W, "M": M, "rel_residual_4M": r4},
                {"rel_residual_M": r1, "quadrupled_over_base": r4 / r1},
                {"rel_residual_M": cfg["tol_rel"], "quadrupled_over_base": 1.0},
                time.perf_counter() - s0,
            )
        )
    out.append(_summary("kak-involution", out, {"seed": seed}, t0=t0))
    return out


def ut_norm_terms(a: Sequence, t: float, M: int):
    """Return ``(windowed ||U_t a||^2, ||a||^2, sin(2t) Re<a, K a>)``.

    ``<a, K a>`` is exact: ``K a`` is only needed on the support of ``a``.
    """
    w = Window.centered(M)
    lhs = lp_norm(apply_Ut(a, t, w), 2) ** 2
    ka = apply_K(a, Window(a.lo, a.hi))
    cross = math.sin(2 * t) * inner(a, ka).real
    return lhs, lp_norm(a, 2) ** 2, cross


def run_ut_norm(seed=0, **overrides):
    """Windowed check of ``||U_t a||^2 = ||a||^2 + sin(2t) Re<a, K a>``.

    The summary also looks for a trial with a non-negligible
    ``sin(2t) Re<a, K a>`` (a witness that ``U_t`` is not an isometry).
    """
    cfg = _cfg("ut-norm", overrides)
    M = cfg["M"]
    t0 = time.perf_counter()
    out, defects = [], []
    for i in range(cfg["trials"]):
        s0 = time.perf_counter()
        rng = trial_rng(seed, i)
        a = random_sequence(rng, cfg["support"])
        t = cfg["t"] if cfg.get("t") is not None else float(rng.uniform(0.2, 1.3))
        lhs, n2, cross = ut_norm_terms(a, t, M)
        lhs4, _, _ = ut_norm_terms(a, t, 4 * M)
        r1 = abs(lhs - (n2 + cross)) / n2
        r4 = abs(lhs4 - (n2 + cross)) / n2
        defects.append(abs(cross) / n2)
        out.append(
            CheckReport(
                f"ut-norm/trial{i}",
                {"trial": i, "t": t, "M": M, "rel_residual_4M": r4, "rel_cross_term": cross / n2},
                {"rel_residual_M": r1, "quadrupled_over_base": r4 / r1 if r1 > 0 else 0.0},
                {"rel_residual_M": cfg["tol_rel"], "quadrupled_over_base": 1.0},
                time.perf_counter() - s0,
            )
        )
    max_defect = max(defects)
    out.append(
        _summary(
            "ut-norm",
            out,
            {"seed": seed, "max_rel_cross_term": max_defect},
            {"nonisometry_witness_shortfall": max(0.0, cfg["defect_min"] - max_defect)},
            {"nonisometry_witness_shortfall": 0.0},
            t0,
        )
    )
    return out


# --- resolvent -----------------------------------------------------------------

def run_resolvent(seed=0, **overrides):
    cfg = _cfg("resolvent", overrides)
    lambdas = [cfg["lambda"]] if cfg.get("lambda") is not None else list(cfg["lambdas"])
    M = cfg["M"]
    H = build_truncated_matrix(OperatorSpec("H"), M).entries
    t0 = time.perf_counter()
    out = []
    for lam in lambdas:
        for i in range(cfg["trials"]):
            s0 = time.perf_counter()
            a = random_sequence(trial_rng(seed, i), cfg["support"])
            x, res = resolvent_solve(a, lam, M, rtol=cfg["rtol"])
            na, nx = lp_norm(a, 2), lp_norm(x, 2)
            xv = x.values
            re_part = abs(np.vdot(xv, math.pi * H @ xv).real) / (math.pi * nx**2)
            out.append(
                CheckReport(
                    f"resolvent/lambda{lam:g}/trial{i}",
                    {"trial": i, "lambda": lam, "M": M, "norm_x": nx, "norm_a": na},
                    {"rel_residual": res / na, "lambda_norm_x_over_norm_a": lam * nx / na, "rel_real_part": re_part},
                    {"rel_residual": cfg["rtol"], "lambda_norm_x_over_norm_a": 1.0, "rel_real_part": cfg["re_tol"]},
                    time.perf_counter() - s0,
                )
            )
    out.append(_summary("resolvent", out, {"seed": seed, "lambdas": lambdas}, t0=t0))
    return out


# --- series identities ------------------------------------------------------------

def identity_cases(N: int):
    """``(name, params, partial, closed)`` for each series identity tested."""
    cases = []
    for x in (0.1, 1 / 3, 0.5, 0.75, -0.3, 2.6):
        cases.append(("cotangent", {"x": x}, kernels.cot_partial(x, N), kernels.cot_closed(x)))
    for u, v in ((0.3, 0.7), (0.25, -0.25), (1.4, -0.6), (0.2, 3.5)):
        cases.append(
            ("double_pole", {"u": u, "v": v}, kernels.double_pole_partial(u, v, N), kernels.double_pole_sum(u, v))
        )
    for d in (0.25, 0.5, 0.9, -1.3):
        cases.append(("cosec_square", {"d": d}, kernels.inverse_square_partial(d, N), kernels.inverse_square_sum(d)))
    for d in (0, 3, -2):
        cases.append(("integer_square", {"d": d}, kernels.inverse_square_partial(d, N), kernels.inverse_square_sum(d)))
    for d in (0.3, -0.5, 0.9):
        cases.append(("nu_l1", {"d": d}, kernels.nu_l1_partial(d, N), kernels.nu_l1_norm(d)))
    return cases


def run_identities(seed=0, **overrides):
    cfg = _cfg("identities", overrides)
    N = cfg["N"]
    t0 = time.perf_counter()
    out = []
    for name, params, partial, closed in identity_cases(N):
        out.append(
            CheckReport(
                f"identities/{name}",
                dict(params, N=N, partial=partial, closed=closed),
                {"abs_error": abs(partial - closed)},
                {"abs_error": cfg["tol"]},
            )
        )
    out.append(
        CheckReport(
            "identities/nu_l1_half",
            {"d": 0.5, "value": kernels.nu_l1_norm(0.5)},
            {"abs_error": abs(kernels.nu_l1_norm(0.5) - 4.0)},
            {"abs_error": cfg["nu_half_tol"]},
        )
    )
    out.append(_summary("identities", out, {"N": N}, t0=t0))
    return out


# --- l^p ordering ---------------------------------------------------------------------

ORDERING_OPS = {
    "H": OperatorSpec("H"),
    "K": OperatorSpec("K"),
    "T_half": OperatorSpec("Tt", t=0.5),
    "Ktilde": OperatorSpec("Ktilde"),
}


def ordering_estimates(p: float, M: int, iters: int, restarts: int, seed: int = 0) -> dict:
    return {
        name: lp_norm_estimate(build_truncated_matrix(spec, M), p, iters, restarts, seed=seed).value
        for name, spec in ORDERING_OPS.items()
    }


def run_ordering(seed=0, **overrides):
    cfg = _cfg("ordering", overrides)
    p, M = cfg["p"], cfg["M"]
    t0 = time.perf_counter()
    est = ordering_estimates(p, M, cfg["iters"], cfg["restarts"], seed)
    n_p = np_constant(p)
    rep = CheckReport(
        "ordering/estimates",
        {"p": p, "M": M, "estimates": est, "n_p": n_p, "gap_T_half_minus_n_p": est["T_half"] - n_p},
        {
            "abs_K_minus_T_half": abs(est["K"] - est["T_half"]),
            "abs_Ktilde_minus_H": abs(est["Ktilde"] - est["H"]),
            "H_minus_K": est["H"] - est["K"],
            "Ktilde_minus_K": est["Ktilde"] - est["K"],
            "n_p_minus_H": n_p - est["H"],
        },
        {
            "abs_K_minus_T_half": cfg["eps"],
            "abs_Ktilde_minus_H": cfg["eps"],
            "H_minus_K": cfg["eps_h_le_k"],
            "Ktilde_minus_K": cfg["eps"],
            "n_p_minus_H": cfg["np_gap"],
        },
        time.perf_counter() - t0,
    )
    return [rep, _summary("ordering", [rep], {"seed": seed}, t0=t0)]


SUITES = {
    "group-law": run_group_law,
    "isometry": run_isometry,
    "adjoint": run_adjoint,
    "generator": run_generator,
    "strong-continuity": run_strong_continuity,
    "kak-involution": run_kak_involution,
    "ut-norm": run_ut_norm,
    "resolvent": run_resolvent,
    "identities": run_identities,
    "ordering": run_ordering,
}
