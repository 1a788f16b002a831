"""Recover known Laurent data: the pipeline's unit check.

Random finite Laurent polynomials with poles between -1 and -5 are sampled
noise-free; the pipeline should return the exact pole order and the planted
constant term.
"""

import numpy as np

from casimir_laurent import LaurentParams, make_grid, regularize

rng = np.random.default_rng(7)
grid = make_grid(0.05, 1.0, 200)
# N1 = -7 keeps a spare window row below a -5 pole
params = LaurentParams(N1=-7)

print(f"{'pole':>5} {'planted c0':>12} {'found pole':>11} {'recovered c0':>13} {'error':>9}")
for _ in range(8):
    pole = int(rng.integers(-5, 0))
    coeffs = {n: float(rng.uniform(-10.0, 10.0)) for n in range(pole, 2)}
    while abs(coeffs[pole]) < 0.05:
        coeffs[pole] = float(rng.uniform(-10.0, 10.0))
    I = sum(c * grid.points**float(n) for n, c in coeffs.items())
    result = regularize((grid.points, I), params)
    err = abs(result.c0 - coeffs[0])
    print(f"{pole:>5} {coeffs[0]:>12.6f} {result.pole_order:>11} "
          f"{result.c0:>13.6f} {err:>9.1e}")
