"""Versioned defaults for the property-check suites (``check --print-defaults``)."""

import copy

DEFAULTS_VERSION = 1

_DEFAULTS = {
    "isometry": {"trials": 100, "support": 128, "n_t": 50, "t_span": 2.45, "tol_rel": 1e-12},
    "group-law": {
        "trials": 20,
        "support": 16,
        "W": 32,
        "M": 8192,
        "C": 5.0,
        "min_quadrupling_gain": 1.8,
        # trial i uses an integer s when i % int_period is in int_s_residues (same for d)
        "int_period": 10,
        "int_s_residues": [1, 9],
        "int_d_residues": [5, 9],
    },
    "adjoint": {"trials": 100, "support": 64, "tol": 1e-12},
    "generator": {"trials": 5, "support": 16, "M": 4096, "d_values": [1e-1, 1e-2, 1e-3], "ratio_lo": 8.0, "ratio_hi": 12.0},
    "strong-continuity": {"trials": 10, "support": 16, "M": 4096, "d": 1e-4, "tol_rel": 1e-3},
    "kak-involution": {"trials": 5, "support": 16, "W": 32, "M": 8192, "tol_rel": 0.05},
    "ut-norm": {"trials": 5, "support": 16, "M": 8192, "tol_rel": 0.05, "defect_min": 1e-8},
    "resolvent": {"trials": 10, "support": 32, "M": 200, "lambdas": [0.5, 1.0, 2.0], "rtol": 1e-8, "re_tol": 1e-10},
    "identities": {"N": 1_000_000, "tol": 1e-5, "nu_half_tol": 1e-12},
    "ordering": {
        "p": 4.0,
        "M": 256,
        "iters": 2000,
        "restarts": 8,
        "eps": 0.02,
        "eps_h_le_k": 0.01,
        "np_gap": 0.15,
    },
}

PROPERTIES = tuple(_DEFAULTS)


def defaults(prop=None) -> dict:
    """Deep copy of the table (or of one property's entry)."""
    if prop is None:
        return {"version": DEFAULTS_VERSION, "properties": copy.deepcopy(_DEFAULTS)}
    return copy.deepcopy(_DEFAULTS[prop])
