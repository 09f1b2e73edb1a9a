"""Compare the numba kernels against their numpy twins.

Each backend runs in its own interpreter because the switch
(PRIMZONO_DISABLE_NUMBA) is read at import time.  JIT compilation is
excluded: every workload is run once before timing starts.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = [
    # (label, d, p, q)
    ("H_1(3,3) enumerate + diameter", 3, 3, "1"),
    ("H_inf(3,2) enumerate + diameter", 3, 2, "inf"),
    ("H_1(4,3) enumerate", 4, 3, "1"),
]


def _child(repeat: int) -> None:
    from primzono import kernels
    from primzono.generators import enumerate_generators
    from primzono.numeric import parse_norm
    from primzono.zonotope import enumerate_vertices, skeleton_diameter

    out = {"numba": kernels.USE_NUMBA, "timings": {}}
    for label, d, p, q in WORKLOADS:
        G = enumerate_generators(d, p, parse_norm(q))
        with_diameter = "diameter" in label

        def work():
            V = enumerate_vertices(G)
            return skeleton_diameter(vertices=V) if with_diameter else len(V)

        ref = work()
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            assert work() == ref
            best = min(best, time.perf_counter() - t0)
        out["timings"][label] = {"seconds": best, "result": int(ref)}
    print(json.dumps(out))


def _run_backend(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, PRIMZONO_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run([sys.executable, __file__, "--child", "--repeat", str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        _child(args.repeat)
        return 0
    nb = _run_backend(False, args.repeat)
    npy = _run_backend(True, args.repeat)
    if not nb["numba"]:
        print("numba is not importable; both columns use numpy")
    print(f"{'workload':36s} {'numba s':>9s} {'numpy s':>9s} {'speedup':>8s}")
    for label, *_ in WORKLOADS:
        a, b = nb["timings"][label], npy["timings"][label]
        if a["result"] != b["result"]:
            print(f"MISMATCH {label}: {a['result']} vs {b['result']}")
            return 1
        print(f"{label:36s} {a['seconds']:9.3f} {b['seconds']:9.3f} {b['seconds'] / a['seconds']:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
