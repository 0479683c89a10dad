"""Compare the numba and numpy grid-evaluation backends.

Evaluates random sparse polynomials at every point of F_q^n with each
backend (selected through the FFGEOM_NUMBA environment variable) and prints
a timing table.  Run as:

    python3 benchmarks/bench_backends.py
"""

import os
import random
import time

import numpy as np


def time_backend(flag, polys, repeats):
    os.environ["FFGEOM_NUMBA"] = flag
    from ffgeom import kernels

    # warm up (includes jit compilation when the backend is numba)
    kernels.grid_eval(polys[0])
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        outs = [kernels.grid_eval(p) for p in polys]
        best = min(best, time.perf_counter() - start)
    return best, outs


def main():
    from ffgeom.fields import make_field
    from ffgeom.polynomials import MultivariatePolynomial

    rng = random.Random(2024)
    cases = [
        ("F_5^7 (78k pts)", make_field(5), 7, 10),
        ("F_9^5 (59k pts)", make_field(3, 2), 5, 10),
        ("F_16^4 (65k pts)", make_field(2, 4), 4, 10),
        ("F_49^3 (117k pts)", make_field(7, 2), 3, 10),
    ]
    print(f"{'case':<20} {'numba':>10} {'numpy':>10} {'speedup':>9}")
    for label, fld, n, nterms in cases:
        polys = []
        for _ in range(5):
            terms = {}
            for _ in range(nterms):
                exps = tuple(rng.randint(0, 3) for _ in range(n))
                terms[exps] = rng.randrange(1, fld.q)
            polys.append(MultivariatePolynomial(n, fld, terms))
        t_nb, out_nb = time_backend("1", polys, 3)
        t_np, out_np = time_backend("0", polys, 3)
        for a, b in zip(out_nb, out_np):
            assert np.array_equal(a, b), "backends disagree"
        print(f"{label:<20} {t_nb:>9.4f}s {t_np:>9.4f}s {t_np / t_nb:>8.1f}x")
    del os.environ["FFGEOM_NUMBA"]


if __name__ == "__main__":
    main()
