"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5]

Runs each kernel once per backend to warm up (numba compiles on first
call), checks that both backends agree, then reports the best of
``--repeat`` timings.
"""

import argparse
import time

import numpy as np

from qtl import _kernels_numba as nb
from qtl import _kernels_numpy as npk
from qtl.quantale import candidate_tables, enumerate_lattices, gen_powerset, gen_zn
from qtl.topology import all_ideals


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def batch_case(n, mode, limit=1 << 18):
    L = list(enumerate_lattices(n))[-1]
    tables = []
    for chunk in candidate_tables(L, mode):
        tables.append(chunk)
        if sum(len(t) for t in tables) >= limit:
            break
    tables = np.concatenate(tables)[:limit]
    return (f"batch_axioms n={n} {mode} ({len(tables)} tables)",
            (tables, L.join_table, L.top, L.bottom), "batch_axioms")


def check_case(Q):
    L = Q.lattice
    return (f"axiom_check {Q.name} (exhaustive)",
            (Q.mul_table, L.join_table, L.top, L.bottom, True), "axiom_check")


def hkp_case(Q):
    L = Q.lattice
    gens = np.array([I.generator for I in all_ideals(Q)[:-1]], dtype=np.int64)
    return f"hkp_failure {Q.name}", (L.meet_table, L.leq, gens), "hkp_failure"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    cases = [batch_case(4, "commutative"), batch_case(5, "pruned"), check_case(gen_powerset(3)),
             check_case(gen_zn(60)), hkp_case(gen_zn(360))]
    print(f"{'case':48s} {'numpy (s)':>11s} {'numba (s)':>11s} {'speedup':>8s}")
    for label, call_args, name in cases:
        f_np, f_nb = getattr(npk, name), getattr(nb, name)
        a, b = f_np(*call_args), f_nb(*call_args)
        assert np.array_equal(np.asarray(a), np.asarray(b)), f"backends disagree on {label}"
        t_np = best_of(lambda: f_np(*call_args), args.repeat)
        t_nb = best_of(lambda: f_nb(*call_args), args.repeat)
        print(f"{label:48s} {t_np:11.5f} {t_nb:11.5f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
