"""Benchmarks and model checks for the factorized transform.

Timings are wall-clock medians with one discarded warm-up; the claimed costs
are treated as scaling trends, not exact FLOP targets.  Every timed fast-path
configuration is validated against the dense oracle before timing.
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .bessel import FourierBesselBlocks, assemble_blocks
from .grids import build_polar_grid
from .transform import (
    ApCoefficients,
    SampleArray,
    dft_rotation_axis,
    evaluate_fast,
    evaluate_naive,
    interpolate,
    prefactorize,
)


@dataclass
class BenchRecord:
    N: int
    P: int
    Q: int
    t_naive: float
    t_fast: float
    t_prefactorize: float
    t_solve: float
    conditions: tuple[float, ...]
    threads: int
    oracle_rel_error: float


@dataclass
class BenchReport:
    records: list[BenchRecord] = field(default_factory=list)

    CSV_COLUMNS = (
        "N",
        "P",
        "Q",
        "t_naive",
        "t_fast",
        "t_prefactorize",
        "t_solve",
        "threads",
        "oracle_rel_error",
        "cond_min",
        "cond_max",
    )

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(self.CSV_COLUMNS)
            for r in self.records:
                w.writerow(
                    [
                        r.N,
                        r.P,
                        r.Q,
                        f"{r.t_naive:.6e}",
                        f"{r.t_fast:.6e}",
                        f"{r.t_prefactorize:.6e}",
                        f"{r.t_solve:.6e}",
                        r.threads,
                        f"{r.oracle_rel_error:.3e}",
                        f"{min(r.conditions):.3e}",
                        f"{max(r.conditions):.3e}",
                    ]
                )


def _median_time(fn, repetitions: int) -> float:
    fn()  # warm-up, discarded
    times = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def square_bench_grids(N: int, Q: int, lo: float = 1.0, hi: float | None = None):
    """An E = F pair of polar grids with P = Q points in the slice.

    The default radial extent grows with Q: the per-bin kernel matrices only
    stay well-conditioned when the products xi*rho spread over a range
    proportional to the number of radial points being resolved.
    """
    if hi is None:
        hi = lo + max(2.0, Q / 2)
    radii = np.linspace(lo, hi, Q)
    E = build_polar_grid(1, radii, N, kind="spatial")
    F = build_polar_grid(1, radii, N, kind="frequency")
    return E, F


def _fast_parallel(coeffs: ApCoefficients, blocks: FourierBesselBlocks, pool: ThreadPoolExecutor) -> SampleArray:
    """evaluate_fast with the per-bin matrix products farmed out to a thread pool."""
    chat = dft_rotation_axis(coeffs.values, "forward")
    results = list(pool.map(lambda n: blocks.blocks[n] @ chat[n], range(blocks.N)))
    shat = np.stack(results)
    return SampleArray(dft_rotation_axis(shat, "inverse"), blocks.spatial_grid)


def bench_evaluate(N_list, Q_list, repetitions: int = 3, threads: int = 1, seed: int = 0) -> BenchReport:
    """Time naive vs fast evaluation and prefactorize+solve on random data.

    With ``threads > 1`` a second record per configuration times the fast path
    with per-bin products distributed over a thread pool.
    """
    if repetitions < 3:
        raise ValueError("repetitions must be >= 3")
    rng = np.random.default_rng(seed)
    report = BenchReport()
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for N in N_list:
            for Q in Q_list:
                E, F = square_bench_grids(N, Q)
                blocks = assemble_blocks(E, F)
                coeffs = ApCoefficients(
                    rng.standard_normal((N, Q)) + 1j * rng.standard_normal((N, Q)), F
                )
                # Correctness precedes timing.
                ref = evaluate_naive(coeffs, E)
                fast = evaluate_fast(coeffs, blocks)
                rel = float(
                    np.linalg.norm(fast.values - ref.values) / max(np.linalg.norm(ref.values), 1e-300)
                )
                t_naive = _median_time(lambda: evaluate_naive(coeffs, E), repetitions)
                t_fast = _median_time(lambda: evaluate_fast(coeffs, blocks), repetitions)
                t_pref = _median_time(lambda: prefactorize(blocks, "interpolation"), repetitions)
                fact = prefactorize(blocks, "interpolation")
                t_solve = _median_time(lambda: interpolate(fast, fact), repetitions)
                report.records.append(
                    BenchRecord(N, Q, Q, t_naive, t_fast, t_pref, t_solve, fact.conditions, 1, rel)
                )
                if pool is not None:
                    t_fast_p = _median_time(lambda: _fast_parallel(coeffs, blocks, pool), repetitions)
                    report.records.append(
                        BenchRecord(N, Q, Q, t_naive, t_fast_p, t_pref, t_solve, fact.conditions, threads, rel)
                    )
    finally:
        if pool is not None:
            pool.shutdown()
    return report


def bench_solve_scaling(N: int, Q_list, repetitions: int = 200, seed: int = 0) -> dict[int, float]:
    """Median per-bin triangular-solve time for each Q, after prefactorization."""
    rng = np.random.default_rng(seed)
    out = {}
    for Q in Q_list:
        E, F = square_bench_grids(N, Q)
        fact = prefactorize(assemble_blocks(E, F), "interpolation")
        rhs = rng.standard_normal((N, Q)) + 1j * rng.standard_normal((N, Q))

        def solve_all():
            for n_hat in range(N):
                scipy.linalg.lu_solve(fact.factors[n_hat], rhs[n_hat], check_finite=False)

        solve_all()
        times = []
        for _ in range(repetitions):
            t0 = time.perf_counter()
            solve_all()
            times.append(time.perf_counter() - t0)
        out[Q] = float(np.median(times)) / N
    return out


def optimal_N(grid_size: int) -> int:
    """The cost-minimizing number of rotations for a square polar grid of the given size."""
    if grid_size < 10:
        raise ValueError("grid_size must be >= 10")
    return max(1, round(math.sqrt(grid_size / 10)))


@dataclass
class ConditioningReport:
    conditions: list[float]
    min_distance_spatial: float
    min_distance_frequency: float


def _min_pairwise_distance(full_xy: np.ndarray) -> float:
    pts = full_xy.reshape(-1, 2)
    if len(pts) < 2:
        return float("inf")
    d2 = np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=-1)
    np.fill_diagonal(d2, np.inf)
    return float(np.sqrt(d2.min()))


def conditioning_report(blocks: FourierBesselBlocks) -> ConditioningReport:
    """Per-block 2-norm condition numbers plus the smallest point spacings of E and F."""
    conds = []
    for b in blocks.blocks:
        s = np.linalg.svd(b, compute_uv=False)
        smin = s.min(initial=np.inf)
        conds.append(float(s.max() / smin) if smin > 0 else float("inf"))
    return ConditioningReport(
        conds,
        _min_pairwise_distance(blocks.spatial_grid.full_xy()),
        _min_pairwise_distance(blocks.frequency_grid.full_xy()),
    )
