"""Compare the compiled and pure-numpy direct-summation backends, and direct vs FFT.

Usage:
    python benchmarks/compare_backends.py [--sizes 1024,4096,16384] [--repeats 3] [--json out.json]

Prints a table per comparison; with --json also writes both record lists.
"""

import argparse
import json

from hilbertgroups import backend
from hilbertgroups.fastconv import bench_apply, bench_backends
from hilbertgroups.operators import OperatorSpec


def _table(rows, cols):
    widths = [max(len(c), *(len(f"{r[c]}") for r in rows)) for c in cols]
    print("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
    for r in rows:
        print("  ".join(f"{r[c]}".ljust(w) for c, w in zip(cols, widths)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1024,4096,16384")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--json")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"available backends: {', '.join(backend.BACKENDS)} (active: {backend.BACKEND})\n")
    rows = bench_backends(sizes, args.repeats)
    by_size = {}
    for r in rows:
        by_size.setdefault(r["size"], {})[r["backend"]] = r["wall_time_s"]
    for r in rows:
        t = by_size[r["size"]]
        r["speedup_vs_python"] = f"{t['python'] / r['wall_time_s']:.2f}x"
        r["wall_time_s"] = f"{r['wall_time_s']:.4f}"
        r["max_abs_diff"] = f"{r['max_abs_diff']:.1e}"
    _table(rows, ["backend", "size", "wall_time_s", "speedup_vs_python", "max_abs_diff"])

    print()
    recs = []
    for spec in (OperatorSpec("H"), OperatorSpec("Tt", t=0.5), OperatorSpec("K")):
        recs += [r.to_json() for r in bench_apply(spec, sizes, args.repeats)]
    shown = [
        dict(r, wall_time_s=f"{r['wall_time_s']:.4f}",
             max_abs_diff="-" if r["max_abs_diff"] is None else f"{r['max_abs_diff']:.1e}")
        for r in recs
    ]
    _table(shown, ["op", "size", "method", "wall_time_s", "max_abs_diff"])

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"backends": bench_backends(sizes, args.repeats), "direct_vs_fft": recs}, fh, indent=2)


if __name__ == "__main__":
    main()
