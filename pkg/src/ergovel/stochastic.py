"""Wiener paths and geometric Brownian motion simulation.

Randomness is organised as explicitly seeded substreams: path ``k`` of an
ensemble draws from a generator keyed on ``(seed, k)``, so any single path is
reproducible independently of the ensemble size or of how path generation is
partitioned across workers. All time is measured in years.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class GbmParams:
    """Drift (per year) and volatility (per sqrt-year) of one GBM."""

    mu: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma)):
            raise ValueError(f"non-finite GBM parameters ({self.mu}, {self.sigma})")
        if self.sigma < 0.0:
            raise ValueError(f"negative volatility {self.sigma}")

    @property
    def log_drift(self) -> float:
        """Drift of the log process, mu - sigma^2/2."""
        return self.mu - 0.5 * self.sigma**2


class DriverKind(Enum):
    SHARED = "shared"
    INDEPENDENT = "independent"
    CORRELATED = "correlated"


@dataclass(frozen=True)
class DriverMode:
    """How the two Wiener drivers relate: shared (the reference mode, the one
    the closed-form velocity process assumes), independent, or correlated
    with coefficient rho."""

    kind: DriverKind
    rho: float = 1.0

    @classmethod
    def shared(cls) -> "DriverMode":
        return cls(DriverKind.SHARED, 1.0)

    @classmethod
    def independent(cls) -> "DriverMode":
        return cls(DriverKind.INDEPENDENT, 0.0)

    @classmethod
    def correlated(cls, rho: float) -> "DriverMode":
        if not -1.0 <= rho <= 1.0:
            raise ValueError(f"correlation {rho} outside [-1, 1]")
        return cls(DriverKind.CORRELATED, rho)

    @classmethod
    def parse(cls, text: str) -> "DriverMode":
        text = text.strip().lower()
        if text == "shared":
            return cls.shared()
        if text == "independent":
            return cls.independent()
        if text.startswith("correlated:"):
            return cls.correlated(float(text.split(":", 1)[1]))
        raise ValueError(
            f"unknown driver mode {text!r} "
            "(expected shared | independent | correlated:<rho>)"
        )

    def __str__(self) -> str:
        if self.kind is DriverKind.CORRELATED:
            return f"correlated:{self.rho:g}"
        return self.kind.value


def substream(seed: int, *key: int) -> np.random.Generator:
    """Generator for substream ``key`` of the root seed."""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    return np.random.default_rng(np.random.SeedSequence([seed, *key]))


@dataclass(frozen=True)
class WienerPath:
    """Standard Brownian motion sampled on a uniform grid, W(0) = 0."""

    grid: np.ndarray
    values: np.ndarray
    seed: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "grid", np.asarray(self.grid, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.grid.shape != self.values.shape or self.grid.ndim != 1:
            raise ValueError("grid/values shape mismatch")
        if self.values[0] != 0.0:
            raise ValueError("Wiener path must start at 0")

    @property
    def horizon(self) -> float:
        return float(self.grid[-1])

    @property
    def terminal(self) -> float:
        """W at the horizon (the W_T entering the ergodic-maker transform)."""
        return float(self.values[-1])

    def restrict(self, step: int) -> "WienerPath":
        """Restriction to every ``step``-th grid node (coarser subgrid)."""
        if step < 1 or (len(self.grid) - 1) % step != 0:
            raise ValueError(f"step {step} does not divide the grid")
        return WienerPath(self.grid[::step], self.values[::step], self.seed)


@dataclass(frozen=True)
class Path:
    """A strictly positive GBM realization on a time grid."""

    grid: np.ndarray
    values: np.ndarray
    params: GbmParams
    initial: float

    def __post_init__(self):
        if self.values[0] != self.initial:
            raise ValueError("path does not start at its initial level")
        if np.any(np.asarray(self.values) <= 0.0):
            raise ValueError("GBM path must stay strictly positive")


@dataclass(frozen=True)
class EulerPath:
    """Euler-Maruyama discretization output; unlike the exact solution it can
    go non-positive, which is reported rather than raised."""

    grid: np.ndarray
    values: np.ndarray
    params: GbmParams
    initial: float
    nonpositive_indices: tuple[int, ...]

    @property
    def went_nonpositive(self) -> bool:
        return len(self.nonpositive_indices) > 0


def wiener_path(horizon_T: float, n_steps: int, seed: int,
                path_id: int | None = None) -> WienerPath:
    """One Brownian path on [0, T] with ``n_steps`` Gaussian increments of
    variance T/n_steps. Deterministic in (seed, path_id)."""
    if not horizon_T > 0:
        raise ValueError(f"horizon must be positive, got {horizon_T}")
    if n_steps < 1:
        raise ValueError(f"need at least one step, got {n_steps}")
    key = (seed,) if path_id is None else (seed, path_id)
    rng = substream(*key)
    dt = horizon_T / n_steps
    increments = rng.standard_normal(n_steps) * math.sqrt(dt)
    values = np.empty(n_steps + 1)
    values[0] = 0.0
    np.cumsum(increments, out=values[1:])
    return WienerPath(np.linspace(0.0, horizon_T, n_steps + 1), values, key)


def wiener_pair(horizon_T: float, n_steps: int, seed: int, path_id: int,
                mode: DriverMode) -> tuple[WienerPath, WienerPath]:
    """Drivers (W_X, W_M) for one ensemble member under the given mode.

    Shared mode returns the same object twice so that downstream arithmetic
    cancels exactly. The first driver's draws do not depend on the mode.
    """
    w_x = wiener_path(horizon_T, n_steps, seed, path_id)
    if mode.kind is DriverKind.SHARED:
        return w_x, w_x
    rng = substream(seed, path_id, 1)
    dt = horizon_T / n_steps
    z_perp = rng.standard_normal(n_steps) * math.sqrt(dt)
    perp = np.empty(n_steps + 1)
    perp[0] = 0.0
    np.cumsum(z_perp, out=perp[1:])
    rho = mode.rho
    values = rho * w_x.values + math.sqrt(max(0.0, 1.0 - rho * rho)) * perp
    w_m = WienerPath(w_x.grid, values, (seed, path_id, 1))
    return w_x, w_m


def gbm_exact_path(params: GbmParams, x0: float, w: WienerPath) -> Path:
    """Pointwise exact GBM solution x0 * exp((mu - sigma^2/2) t + sigma W_t)."""
    if not x0 > 0:
        raise ValueError(f"initial level must be positive, got {x0}")
    values = x0 * np.exp(params.log_drift * w.grid + params.sigma * w.values)
    return Path(grid=w.grid, values=values, params=params, initial=x0)


def gbm_euler_path(params: GbmParams, x0: float, w: WienerPath) -> EulerPath:
    """Euler-Maruyama scheme X_{i+1} = X_i (1 + mu dt + sigma dW_i).

    The exact solution is the reference; this discretization exists to
    cross-check it and can go non-positive on coarse grids with large
    volatility, which is flagged in the result.
    """
    if not x0 > 0:
        raise ValueError(f"initial level must be positive, got {x0}")
    dt = np.diff(w.grid)
    dW = np.diff(w.values)
    values = np.empty(len(w.grid))
    values[0] = x0
    for i in range(len(dt)):
        values[i + 1] = values[i] * (1.0 + params.mu * dt[i] + params.sigma * dW[i])
    nonpos = tuple(int(i) for i in np.flatnonzero(values <= 0.0))
    return EulerPath(grid=w.grid, values=values, params=params, initial=x0,
                     nonpositive_indices=nonpos)


def write_ensemble_csv(path_or_stream, grid: np.ndarray,
                       values: np.ndarray) -> None:
    """Dump an ensemble as ``path_id,t,value`` rows for downstream plotting."""
    values = np.asarray(values)
    if values.ndim != 2 or values.shape[1] != len(grid):
        raise DataError("ensemble matrix does not match the grid")

    def _write(fh):
        fh.write("path_id,t,value\n")
        for k in range(values.shape[0]):
            for t, v in zip(grid, values[k]):
                fh.write(f"{k},{t:.12g},{v:.12g}\n")

    if hasattr(path_or_stream, "write"):
        _write(path_or_stream)
    else:
        with open(path_or_stream, "w", encoding="utf-8", newline="\n") as fh:
            _write(fh)
