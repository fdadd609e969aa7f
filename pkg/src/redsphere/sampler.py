"""Random reduced polygons of prescribed thickness.

Starts from the regular n-gon, perturbs every vertex, and projects back
onto the manifold of constant vertex-to-opposite-side distance with a
damped Gauss-Newton iteration.  Counting degrees of freedom (2n vertex
coordinates, minus the 3-dimensional rotation group, against n distance
constraints) suggests an (n-3)-dimensional solution family, so n = 3
collapses to the regular triangle while n >= 5 yields genuinely
non-regular reduced polygons; that dimension count is a working
hypothesis probed by the test-suite, not a proven theorem of this code.

Determinism: all randomness flows from splitmix64 (seeded, portable), the
iteration is plain floating point, and re-running a configuration
reproduces results bit for bit on the same platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import RedsphereError
from .formulas import regular_metrics
from .polygon import (
    REDUCED_TOL,
    ReducedWitness,
    SphericalPolygon,
    opposite_side_heights,
    reduced_check,
)
from .sphere_core import SpherePoint

__all__ = ["Splitmix64", "SamplerConfig", "SampleResult", "sample_reduced", "sample_batch"]

_MASK64 = (1 << 64) - 1
# Central finite-difference step for the Jacobian; the Jacobian is always
# finite-difference here, so consistency checks against an analytic one
# are vacuous for this implementation.
_FD_STEP = 1e-7
_MU_CEIL = 1e13
_MU_FLOOR = 1e-14


class Splitmix64:
    """splitmix64: 64-bit-state shift/multiply generator (public domain).

    state += 0x9E3779B97F4A7C15; z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
    output z ^ (z >> 31), all modulo 2^64.

    Doubles take the top 53 bits: (z >> 11) * 2^-53, uniform on [0, 1).
    First three outputs for seed 0: 0xE220A8397B1DCDAF,
    0x6E789E6AA1B965F4, 0x06C45D188009454F.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_uint64() >> 11) * 2.0**-53

    def symmetric(self, scale: float) -> float:
        """Uniform draw on [-scale, scale]."""
        return (2.0 * self.uniform() - 1.0) * scale


@dataclass(frozen=True)
class SamplerConfig:
    """Target polygon family plus solver knobs."""

    n: int
    thickness: float
    seed: int
    perturbation_scale: float = 0.05
    max_iterations: int = 200
    # Shallow spoke crossings amplify distance residuals by up to ~1e4 in
    # downstream claim checks, so stop well below the 1e-8 claim tolerances.
    residual_tol: float = 1e-13
    damping: float = 1e-3

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and self.n >= 3 and self.n % 2 == 1):
            raise ValueError(f"n={self.n!r} must be an odd integer >= 3")
        if not 0.0 < self.thickness < 0.5 * math.pi:
            raise ValueError(f"thickness={self.thickness!r} outside (0, pi/2)")
        if not (isinstance(self.seed, int) and self.seed >= 0):
            raise ValueError(f"seed={self.seed!r} must be a non-negative integer")
        if not 0.0 <= self.perturbation_scale < self.thickness / 4.0:
            raise ValueError("perturbation_scale must lie in [0, thickness/4)")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.residual_tol <= 0.0 or self.damping <= 0.0:
            raise ValueError("residual_tol and damping must be positive")


@dataclass(frozen=True)
class SampleResult:
    """One solver run.  converged implies the witness passed reduced_check."""

    polygon: Optional[SphericalPolygon]
    witness: Optional[ReducedWitness]
    converged: bool
    iterations: int
    final_residual: float
    config: SamplerConfig
    failure_reason: Optional[str]
    residual_history: tuple[float, ...]


def _embed(params: np.ndarray, n: int, lon0: float) -> np.ndarray:
    """Unit vertices from the packed (colat_0..colat_{n-1}, lon_1..lon_{n-1})."""
    colat = params[:n]
    lon = np.empty(n)
    lon[0] = lon0
    lon[1:] = params[n:]
    s = np.sin(colat)
    return np.column_stack([s * np.cos(lon), s * np.sin(lon), np.cos(colat)])


def _fd_jacobian(fun, params: np.ndarray, m: int) -> np.ndarray:
    J = np.empty((m, params.size))
    for j in range(params.size):
        hi = params.copy()
        hi[j] += _FD_STEP
        lo = params.copy()
        lo[j] -= _FD_STEP
        J[:, j] = (fun(hi) - fun(lo)) / (2.0 * _FD_STEP)
    return J


def _damped_step(J: np.ndarray, r: np.ndarray, mu: float) -> np.ndarray:
    # Least-squares solve of the Levenberg system [J; sqrt(mu) I] d = [-r; 0].
    p = J.shape[1]
    A = np.vstack([J, math.sqrt(mu) * np.eye(p)])
    b = np.concatenate([-r, np.zeros(p)])
    return np.linalg.lstsq(A, b, rcond=None)[0]


def sample_reduced(cfg: SamplerConfig) -> SampleResult:
    """Draw one perturbed polygon and project it back to constant distances.

    Residuals are the n signed vertex-to-opposite-side heights minus the
    target thickness, plus two gauge terms pinning the centroid over the
    pole; vertex 0 keeps its initial longitude.  The iteration stops once
    the distance residuals drop to max-norm <= residual_tol.  Failures are
    reported in-band: converged=False plus a failure_reason, never an
    exception.
    """
    n, w = cfg.n, cfg.thickness
    met = regular_metrics(n, w)
    rng = Splitmix64(cfg.seed)
    colat = np.empty(n)
    lon = np.empty(n)
    # Draw order (fixed for reproducibility): colatitude then longitude,
    # vertex by vertex.
    for i in range(n):
        colat[i] = met.circumradius + rng.symmetric(cfg.perturbation_scale)
        lon[i] = 2.0 * math.pi * i / n + rng.symmetric(cfg.perturbation_scale)
    lon0 = float(lon[0])
    params = np.concatenate([colat, lon[1:]])

    def full_residual(p: np.ndarray) -> np.ndarray:
        V = _embed(p, n, lon0)
        r = np.empty(n + 2)
        r[:n] = opposite_side_heights(V) - w
        r[n:] = V.mean(axis=0)[:2]
        return r

    full = full_residual(params)
    history = [float(np.max(np.abs(full[:n])))]
    converged = history[-1] <= cfg.residual_tol
    mu = cfg.damping
    iterations = 0
    stall_reason: Optional[str] = None

    while not converged and iterations < cfg.max_iterations:
        iterations += 1
        J = _fd_jacobian(full_residual, params, n + 2)
        improved = False
        while mu <= _MU_CEIL:
            step = _damped_step(J, full, mu)
            trial = params + step
            ok_range = bool(np.all(trial[:n] > 1e-6) and np.all(trial[:n] < math.pi - 1e-6))
            if ok_range:
                t_full = full_residual(trial)
                if float(np.linalg.norm(t_full)) < float(np.linalg.norm(full)):
                    params, full = trial, t_full
                    mu = max(mu / 10.0, _MU_FLOOR)
                    improved = True
                    break
            mu *= 10.0
        history.append(float(np.max(np.abs(full[:n]))))
        if history[-1] <= cfg.residual_tol:
            converged = True
            break
        if not improved:
            stall_reason = "stalled: damping exhausted without improvement"
            break

    final_residual = history[-1]
    polygon: Optional[SphericalPolygon] = None
    witness: Optional[ReducedWitness] = None
    failure: Optional[str] = None if converged else (stall_reason or "max_iterations reached")
    try:
        polygon = SphericalPolygon([SpherePoint.from_vec(v) for v in _embed(params, n, lon0)])
        witness = reduced_check(polygon, tol=REDUCED_TOL)
    except RedsphereError as exc:
        polygon = None
        witness = None
        if converged:
            converged = False
            failure = f"degenerate geometry at the solution: {exc}"
    else:
        if converged and not witness.is_reduced:
            converged = False
            failure = "constraint violation: " + (
                witness.reason or "distance spread exceeded the reduced tolerance"
            )
    return SampleResult(
        polygon=polygon,
        witness=witness,
        converged=converged,
        iterations=iterations,
        final_residual=final_residual,
        config=cfg,
        failure_reason=None if converged else failure,
        residual_history=tuple(history),
    )


def sample_batch(cfg: SamplerConfig, count: int) -> list[SampleResult]:
    """count independent samples from seeds cfg.seed, cfg.seed+1, ...

    Per-sample failures are recorded in the results, never raised.
    """
    if count < 1:
        raise ValueError(f"count={count!r} must be >= 1")
    return [sample_reduced(replace(cfg, seed=cfg.seed + k)) for k in range(count)]
