"""Benchmark: compiled polynomial kernel vs the pure-Python fallback.

Times the hot kernels on the workloads that dominate real runs: sparse
multiplication while expanding products of root forms, trial-division
normalization, and an end-to-end T-system solve plus a mutation walk.

Run:  python3 benchmarks/bench_backends.py
"""

import random
import time

from krtorus.field import available_backends
from krtorus.field import backend as backend_mod
from krtorus.field.rational import RootContext, _form_terms


def _expand_workload(kernel, roots, reps):
    out = None
    for _ in range(reps):
        acc = {(0,) * len(roots[0]): 1}
        for r in roots:
            acc = kernel.poly_mul(acc, _form_terms(r))
        out = acc
    return out


def _pick_roots(ctx, count, seed=0):
    rng = random.Random(seed)
    return [rng.choice(ctx.roots) for _ in range(count)]


def bench_expand(kernel, ctx, reps=150):
    # product of 14 root forms: the size range of cofactor expansions
    roots = _pick_roots(ctx, 14)
    start = time.perf_counter()
    out = _expand_workload(kernel, roots, reps)
    return time.perf_counter() - start, len(out)


def bench_extract(kernel, ctx, reps=150):
    roots = _pick_roots(ctx, 14)
    product = _expand_workload(kernel, roots, 1)
    start = time.perf_counter()
    for _ in range(reps):
        terms = dict(product)
        for root in roots:
            pivot = max(i for i, c in enumerate(root) if c)
            q = kernel.poly_div_linear(terms, root, pivot)
            assert q is not None
            terms = q
    return time.perf_counter() - start, len(product)


def bench_end_to_end():
    # Full T-system solve over the rank-5 fork window plus a mutation walk
    # on the rank-3 sink-source quotient seed; exercises every kernel path.
    from krtorus.cartan import build_frame
    from krtorus.cluster import initial_seed, mutate_sequence
    from krtorus.torusmap import TorusMorphism

    start = time.perf_counter()
    frame = build_frame("D", 5)
    calc = TorusMorphism(frame)
    for i in frame.datum.vertices():
        for r in range(1, frame.n_letters[i] + 1):
            s = frame.xi[i] - 2 * (r - 1)
            for k in range(1, r + 1):
                calc.kr_value(i, s, k)
    ss = build_frame("A", 3, {(2, 1), (2, 3)})
    seed = initial_seed(TorusMorphism(ss), 12, specialize_frozen=True)
    rng = random.Random(0)
    moves = [rng.choice([v for v in seed.quiver.vertices if v not in seed.quiver.frozen])
             for _ in range(8)]
    mutate_sequence(seed, moves)
    return time.perf_counter() - start


def main():
    backends = available_backends()
    from krtorus.cartan import DynkinDatum

    ctx = RootContext(DynkinDatum("E", 6).positive_roots())
    print(f"variables: {ctx.n}, root forms: {len(ctx.roots)}")
    rows = {}
    for name, kernel in sorted(backends.items()):
        t_mul, terms = bench_expand(kernel, ctx)
        t_div, _ = bench_extract(kernel, ctx)
        rows[name] = (t_mul, t_div)
        print(f"[{name:>12}] expand 14 forms x150: {t_mul:6.3f}s "
              f"({terms} terms)   extract x150: {t_div:6.3f}s")
    if len(rows) == 2:
        pure = rows["pure-python"]
        fast = rows["compiled"]
        print(f"speedup: expand x{pure[0] / fast[0]:.2f}, extract x{pure[1] / fast[1]:.2f}")

    print(f"\nactive backend for end-to-end run: {backend_mod.BACKEND_NAME}")
    t = bench_end_to_end()
    print(f"end-to-end (rank-5 fork T-system solve + mutation walk): {t:.3f}s")
    print("rerun with KRTORUS_PURE=1 to time the end-to-end on the pure kernel")


if __name__ == "__main__":
    main()
