"""Evaluation, interpolation and approximation of almost-periodic functions.

Coefficients live on an N x Q matrix: entry (m, k) multiplies the plane wave
of frequency R_{2*pi*m/N} lambda_k.  Samples live on N x P: entry (n, j) is
the function value at R_{2*pi*n/N} y_j.  The unitary DFT along the rotation
axis conjugates the evaluation operator into the block-diagonal stack of
Fourier-Bessel matrices, which is what makes the fast paths fast:

    fft(samples)[n_hat, :] = J_{n_hat} @ fft(coeffs)[n_hat, :]

The dense naive evaluation is kept as the correctness oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .bessel import FourierBesselBlocks
from .errors import GridMismatch, ParseError, WellPosednessError
from .grids import RotInvariantGrid, grid_from_dict, grid_to_dict, load_grid

CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class ApCoefficients:
    """Frequency coefficients of an almost-periodic function."""

    values: np.ndarray
    frequency_grid: RotInvariantGrid

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        expected = (self.frequency_grid.N, len(self.frequency_grid.points))
        if v.shape != expected:
            raise GridMismatch(f"coefficient shape {v.shape} does not match grid shape {expected}")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class SampleArray:
    """Samples of a function on the full rotation-invariant spatial grid."""

    values: np.ndarray
    spatial_grid: RotInvariantGrid

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        expected = (self.spatial_grid.N, len(self.spatial_grid.points))
        if v.shape != expected:
            raise GridMismatch(f"sample shape {v.shape} does not match grid shape {expected}")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class Weights:
    """Nonnegative per-(DFT bin, frequency) regularization weights d(n_hat, k)."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("weights must be a finite nonnegative N x Q matrix")
        object.__setattr__(self, "values", v)

    @classmethod
    def zero(cls, N: int, Q: int) -> "Weights":
        return cls(np.zeros((N, Q)))

    @classmethod
    def from_radial(cls, F: RotInvariantGrid, d_of_radius) -> "Weights":
        """Replicate a radially symmetric weight d(|Lambda|) across all DFT bins."""
        row = np.array([d_of_radius(p.radius) for p in F.points], dtype=float)
        return cls(np.tile(row, (F.N, 1)))


def banded_weights(F: RotInvariantGrid, alpha: float) -> Weights:
    """The three-band radial weight scheme: alpha/10 up to radius 1, alpha up to 3/2, 100*alpha above."""
    return Weights.from_radial(
        F, lambda r: alpha / 10 if r <= 1 else (alpha if r <= 1.5 else 100 * alpha)
    )


def dft_rotation_axis(values: np.ndarray, direction: str = "forward") -> np.ndarray:
    """Unitary DFT along axis 0 (the rotation index); ``direction`` is "forward" or "inverse"."""
    values = np.asarray(values, dtype=complex)
    if direction == "forward":
        return np.fft.fft(values, axis=0, norm="ortho")
    if direction == "inverse":
        return np.fft.ifft(values, axis=0, norm="ortho")
    raise ValueError(f"unknown direction {direction!r}")


def _full_frequencies(F: RotInvariantGrid) -> np.ndarray:
    """All N*Q frequencies as an (N, Q, 2) Cartesian array."""
    return F.full_xy()


def evaluate_naive(coeffs: ApCoefficients, E: RotInvariantGrid) -> SampleArray:
    """Dense double-sum evaluation on the full grid; the oracle for the fast path."""
    F = coeffs.frequency_grid
    if E.N != F.N:
        raise GridMismatch(f"spatial grid has N={E.N}, frequency grid has N={F.N}")
    N = E.N
    freqs = _full_frequencies(F).reshape(-1, 2)  # (N*Q, 2)
    pts = E.full_xy()  # (N, P, 2)
    flat = coeffs.values.reshape(-1)
    out = np.empty((N, len(E.points)), dtype=complex)
    for n in range(N):
        phase = pts[n] @ freqs.T  # (P, N*Q)
        out[n] = np.exp(1j * phase) @ flat
    return SampleArray(out, E)


def evaluate_at_point(coeffs: ApCoefficients, x) -> complex:
    """Evaluate the almost-periodic function at an arbitrary planar point."""
    freqs = _full_frequencies(coeffs.frequency_grid).reshape(-1, 2)
    phase = freqs @ np.asarray(x, dtype=float)
    return complex(np.exp(1j * phase) @ coeffs.values.reshape(-1))


def evaluate_fast(coeffs: ApCoefficients, blocks: FourierBesselBlocks) -> SampleArray:
    """Factorized evaluation: DFT, one P x Q block per bin, inverse DFT."""
    if not coeffs.frequency_grid.same_geometry(blocks.frequency_grid):
        raise GridMismatch("coefficient grid does not match the blocks' frequency grid")
    chat = dft_rotation_axis(coeffs.values, "forward")
    shat = np.empty((blocks.N, blocks.P), dtype=complex)
    for n_hat in range(blocks.N):
        shat[n_hat] = blocks.blocks[n_hat] @ chat[n_hat]
    return SampleArray(dft_rotation_axis(shat, "inverse"), blocks.spatial_grid)


@dataclass(frozen=True)
class BlockFactorization:
    """Prefactorized per-bin solver state.

    Interpolation mode stores a pivoted LU of each block; approximation mode
    stores a Cholesky factor of J* J + diag(d^2) per bin, plus the blocks
    themselves for forming the normal-equation right-hand sides.
    """

    mode: str  # "interpolation" | "approximation"
    blocks: FourierBesselBlocks
    factors: tuple
    conditions: tuple[float, ...]
    weights: Weights | None = None


def _lu_condition(u_diag: np.ndarray) -> float:
    mags = np.abs(u_diag)
    lo = mags.min(initial=np.inf)
    if lo == 0:
        return np.inf
    return float(mags.max() / lo)


def prefactorize(blocks: FourierBesselBlocks, mode: str, weights: Weights | None = None) -> BlockFactorization:
    """Factor every Fourier-Bessel block once, enabling O(Q^2) per-bin solves.

    Raises :class:`WellPosednessError` naming the offending bin when a block's
    cheap condition estimate (extreme-diagonal ratio of the triangular factor)
    exceeds 1e12.
    """
    N, P, Q = blocks.N, blocks.P, blocks.Q
    if mode == "interpolation":
        if P != Q:
            raise GridMismatch(f"interpolation requires P == Q, got P={P}, Q={Q}")
        factors = []
        conds = []
        for n_hat, b in enumerate(blocks.blocks):
            lu, piv = scipy.linalg.lu_factor(b, check_finite=False)
            cond = _lu_condition(np.diag(lu))
            if not np.isfinite(cond) or cond > CONDITION_LIMIT:
                raise WellPosednessError(n_hat, cond)
            factors.append((lu, piv))
            conds.append(cond)
        return BlockFactorization("interpolation", blocks, tuple(factors), tuple(conds))
    if mode == "approximation":
        if P < Q:
            raise GridMismatch(f"approximation requires P >= Q, got P={P}, Q={Q}")
        if weights is None:
            weights = Weights.zero(N, Q)
        if weights.values.shape != (N, Q):
            raise GridMismatch(f"weights shape {weights.values.shape} does not match (N, Q)=({N}, {Q})")
        factors = []
        conds = []
        for n_hat, b in enumerate(blocks.blocks):
            normal = b.conj().T @ b + np.diag(weights.values[n_hat] ** 2)
            try:
                c, low = scipy.linalg.cho_factor(normal, check_finite=False)
            except scipy.linalg.LinAlgError as exc:
                raise WellPosednessError(n_hat) from exc
            cond = _lu_condition(np.diag(c)) ** 2
            if not np.isfinite(cond) or cond > CONDITION_LIMIT:
                raise WellPosednessError(n_hat, cond)
            factors.append((c, low))
            conds.append(cond)
        return BlockFactorization("approximation", blocks, tuple(factors), tuple(conds), weights)
    raise ValueError(f"unknown mode {mode!r}")


def _check_sample_grid(samples: SampleArray, fact: BlockFactorization) -> None:
    if not samples.spatial_grid.same_geometry(fact.blocks.spatial_grid):
        raise GridMismatch("sample grid does not match the factorization's spatial grid")


def interpolate(samples: SampleArray, fact: BlockFactorization) -> ApCoefficients:
    """Solve the interpolation problem exactly, one block per DFT bin."""
    if fact.mode != "interpolation":
        raise ValueError("factorization was not built in interpolation mode")
    _check_sample_grid(samples, fact)
    what = dft_rotation_axis(samples.values, "forward")
    vhat = np.empty((fact.blocks.N, fact.blocks.Q), dtype=complex)
    for n_hat in range(fact.blocks.N):
        vhat[n_hat] = scipy.linalg.lu_solve(fact.factors[n_hat], what[n_hat], check_finite=False)
    return ApCoefficients(dft_rotation_axis(vhat, "inverse"), fact.blocks.frequency_grid)


def approximate(samples: SampleArray, fact: BlockFactorization) -> ApCoefficients:
    """Regularized least squares per bin: (J* J + diag(d^2)) v = J* w."""
    if fact.mode != "approximation":
        raise ValueError("factorization was not built in approximation mode")
    _check_sample_grid(samples, fact)
    what = dft_rotation_axis(samples.values, "forward")
    vhat = np.empty((fact.blocks.N, fact.blocks.Q), dtype=complex)
    for n_hat in range(fact.blocks.N):
        rhs = fact.blocks.blocks[n_hat].conj().T @ what[n_hat]
        vhat[n_hat] = scipy.linalg.cho_solve(fact.factors[n_hat], rhs, check_finite=False)
    return ApCoefficients(dft_rotation_axis(vhat, "inverse"), fact.blocks.frequency_grid)


def rotate_coefficients(coeffs: ApCoefficients, m: int) -> ApCoefficients:
    """Coefficient-space rotation by 2*pi*m/N: a circular shift along the rotation axis."""
    return ApCoefficients(np.roll(coeffs.values, m % coeffs.frequency_grid.N, axis=0), coeffs.frequency_grid)


def translate_coefficients(coeffs: ApCoefficients, xi) -> ApCoefficients:
    """Coefficient-space translation by xi: the per-frequency phase e^{-i<Lambda, xi>}."""
    xi = np.asarray(xi, dtype=float)
    freqs = _full_frequencies(coeffs.frequency_grid)  # (N, Q, 2)
    phases = np.exp(-1j * (freqs @ xi))
    return ApCoefficients(phases * coeffs.values, coeffs.frequency_grid)


def approximation_objective(coeffs: ApCoefficients, samples: SampleArray, blocks: FourierBesselBlocks, weights: Weights) -> float:
    """The objective ||diag(d) fft(coeffs)||^2 + ||samples - ev(coeffs)||^2 minimized by approximate()."""
    chat = dft_rotation_axis(coeffs.values, "forward")
    penalty = float(np.sum((weights.values * np.abs(chat)) ** 2))
    resid = samples.values - evaluate_fast(coeffs, blocks).values
    return penalty + float(np.sum(np.abs(resid) ** 2))


# --- persistence: JSON header line + raw little-endian complex payload ---


def _save_array(path, values: np.ndarray, grid: RotInvariantGrid, grid_path=None) -> None:
    header = {
        "N": grid.N,
        "count": values.shape[1],
        "grid": str(grid_path) if grid_path is not None else grid_to_dict(grid),
    }
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, separators=(",", ":")).encode("utf-8"))
        fh.write(b"\n")
        fh.write(np.ascontiguousarray(values, dtype="<c16").tobytes())


def _load_array(path) -> tuple[np.ndarray, RotInvariantGrid]:
    with open(path, "rb") as fh:
        head = fh.readline()
        payload = fh.read()
    try:
        header = json.loads(head.decode("utf-8"))
        N, count = header["N"], header["count"]
    except (ValueError, KeyError) as exc:
        raise ParseError(f"{path}: malformed header: {exc}") from exc
    grid_ref = header.get("grid")
    if isinstance(grid_ref, str):
        grid = load_grid(grid_ref)
    else:
        grid = grid_from_dict(grid_ref)
    expected = N * count * 16
    if len(payload) != expected:
        raise ParseError(f"{path}: expected {expected} payload bytes, got {len(payload)}")
    values = np.frombuffer(payload, dtype="<c16").reshape(N, count).astype(complex)
    return values, grid


def save_coefficients(path, coeffs: ApCoefficients, grid_path=None) -> None:
    _save_array(path, coeffs.values, coeffs.frequency_grid, grid_path)


def load_coefficients(path) -> ApCoefficients:
    values, grid = _load_array(path)
    return ApCoefficients(values, grid)


def save_samples(path, samples: SampleArray, grid_path=None) -> None:
    _save_array(path, samples.values, samples.spatial_grid, grid_path)


def load_samples(path) -> SampleArray:
    values, grid = _load_array(path)
    return SampleArray(values, grid)
