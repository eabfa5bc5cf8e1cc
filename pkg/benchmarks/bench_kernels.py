"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--n 3000] [--ws 250] [--repeat 3]

Reports the best of ``--repeat`` runs for plot construction, a full
windowed LAM pass and a full-suite pass over a subset of windows.
"""

import argparse
import time

import numpy as np

from rqamon import _pykernels, build_rp, delay_embed, measures, normalize, recurrence
from rqamon import windowed_measures

try:
    from rqamon import _kernels
except ImportError:  # extension not built
    _kernels = None


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def run(kernels, x, ws, repeat):
    recurrence.kernels = measures.kernels = kernels
    emb = delay_embed(normalize(x), 1, 1)
    rp = build_rp(emb, 0.1)
    return {
        "build_rp": best(lambda: build_rp(emb, 0.1), repeat),
        "windowed lam": best(lambda: windowed_measures(rp, ws=ws, measures=["lam"]), repeat),
        "windowed all (step 25)": best(lambda: windowed_measures(rp, ws=ws, step=25), repeat),
    }


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=3000)
    p.add_argument("--ws", type=int, default=250)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    x = np.cumsum(np.random.default_rng(0).normal(size=args.n))
    saved = recurrence.kernels
    try:
        results = {"python": run(_pykernels, x, args.ws, args.repeat)}
        if _kernels is not None:
            results["compiled"] = run(_kernels, x, args.ws, args.repeat)
    finally:
        recurrence.kernels = measures.kernels = saved

    print(f"n={args.n} ws={args.ws} best of {args.repeat}")
    print(f"{'task':<24}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for task, t_py in results["python"].items():
        t_c = results.get("compiled", {}).get(task)
        if t_c is None:
            print(f"{task:<24}{t_py:>12.4f}{'-':>12}{'-':>10}")
        else:
            print(f"{task:<24}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
