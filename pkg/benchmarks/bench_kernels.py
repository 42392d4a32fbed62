"""Compare the compiled and pure-Python automaton kernels.

    python benchmarks/bench_kernels.py [--machines 30] [--states 40] [--words 2000]

Each backend runs the same random ε-NFAs on the same words and determinizes
them; the script checks both give identical answers and prints the timings.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from fsmkit import kernels


def random_nfa(rnd: random.Random, n: int, nsym: int, density: float):
    eps = [0] * n
    delta = [[0] * nsym for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if rnd.random() < density / 4:
                eps[i] |= 1 << j
            for a in range(nsym):
                if rnd.random() < density:
                    delta[i][a] |= 1 << j
    finals = sum(1 << i for i in range(n) if rnd.random() < 0.2)
    return n, nsym, 0, finals, eps, delta


def timed(fn):
    t0 = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - t0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--machines", type=int, default=30)
    ap.add_argument("--states", type=int, default=40, help="at most 64 for the compiled kernel")
    ap.add_argument("--symbols", type=int, default=2)
    ap.add_argument("--words", type=int, default=2000)
    ap.add_argument("--max-len", type=int, default=30)
    ap.add_argument("--density", type=float, default=0.06)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; timing the pure-Python backend only", file=sys.stderr)

    rnd = random.Random(args.seed)
    machines = [random_nfa(rnd, args.states, args.symbols, args.density) for _ in range(args.machines)]
    words = [[rnd.randrange(args.symbols) for _ in range(rnd.randint(0, args.max_len))]
             for _ in range(args.words)]

    totals = {}
    answers = {}
    for backend in backends:
        compiled, t_build = timed(lambda: [kernels.compile_nfa(*m, backend=backend) for m in machines])
        runs, t_run = timed(lambda: [c.accepts_many(words) for c in compiled])
        dets, t_det = timed(lambda: [c.determinize() for c in compiled])
        totals[backend] = (t_build, t_run, t_det)
        answers[backend] = (runs, [len(d[0]) for d in dets])

    print(f"{args.machines} machines, {args.states} states, {args.words} words up to length {args.max_len}")
    print(f"{'backend':<8} {'build':>9} {'run':>9} {'determinize':>12}")
    for backend, (b, r, d) in totals.items():
        print(f"{backend:<8} {b:>8.3f}s {r:>8.3f}s {d:>11.3f}s")
    if len(totals) == 2:
        py, cy = totals["python"], totals["cython"]
        print(f"speedup  {py[0] / cy[0]:>8.1f}x {py[1] / cy[1]:>8.1f}x {py[2] / cy[2]:>11.1f}x")
        if answers["python"] != answers["cython"]:
            print("MISMATCH between backends", file=sys.stderr)
            return 1
        print("backends agree")
    return 0


if __name__ == "__main__":
    sys.exit(main())
