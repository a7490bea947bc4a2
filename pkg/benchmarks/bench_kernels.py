"""Compare the compiled and numpy bulk kernels on encode and syndrome throughput.

    python3 benchmarks/bench_kernels.py [--stripes N] [--k K] [--m M]
"""

import argparse
import time

import numpy as np

from quintparity import kernels
from quintparity.code import build_code
from quintparity.galois import make_field


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--stripes", type=int, default=100_000)
    ap.add_argument("--k", type=int, default=20)
    ap.add_argument("--m", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    params = build_code(make_field(args.m), args.k)
    rng = np.random.default_rng(0)
    data = rng.integers(0, 1 << args.m, size=(args.stripes, args.k), dtype=np.uint16)
    word = np.concatenate([data, kernels.encode_many(params, data)], axis=1)
    mib = data.size * args.m / 8 / 2**20

    backends = ["numpy"] + (["compiled"] if kernels.BACKEND == "compiled" else [])
    ref = None
    print(f"GF(2^{args.m}) k={args.k} stripes={args.stripes} payload={mib:.1f} MiB")
    for b in backends:
        par = kernels.encode_many(params, data, backend=b)
        if ref is None:
            ref = par
        assert np.array_equal(par, ref), "backends disagree"
        assert not kernels.syndrome_many(params, word, backend=b).any()
        te = best_of(lambda: kernels.encode_many(params, data, backend=b), args.repeat)
        ts = best_of(lambda: kernels.syndrome_many(params, word, backend=b), args.repeat)
        print(f"{b:9s} encode {te * 1e3:8.2f} ms ({mib / te:7.1f} MiB/s)  syndrome {ts * 1e3:8.2f} ms")


if __name__ == "__main__":
    main()
