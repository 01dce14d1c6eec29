# grids.py
#
# Uniform spatial grids, compactly supported test functions, inner products
# and Fourier transforms. Everything downstream builds on these.
#
# Conventions (fixed once, used everywhere):
# - Units: hbar = 1 and 2m = 1, so a free particle has dispersion E = p^2.
# - A 1D box [-L, L] is sampled at x_j = -L + j*dx, j = 0..n-1, dx = 2L/n.
#   The point x = 0 is on the grid (j = n/2); +L is not. Reflection about 0
#   maps index j to (n - j) mod n, the standard FFT-grid convention.
# - Quadrature is the plain Riemann sum  sum_j v_j * dx.  For smooth
#   compactly supported integrands this is spectrally accurate; accuracy is
#   controlled by the dx-halving gate, not by higher-order rules.
# - Fourier transform:  fhat(p) = (2 pi)^(-1/2) Integral f(x) e^(-i p x) dx,
#   momenta p_k = pi k / L for k in [-n/2, n/2).

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class GridConfigError(ValueError):
    """Raised for invalid grid or test-function parameters."""


class GridMismatchError(ValueError):
    """Raised when two functions living on different grids are combined."""


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on [-L, L], points x_j = -L + j*dx, dx = 2L/n."""

    half_width: float
    n_points: int
    dx: float = field(init=False)
    x: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        L, n = self.half_width, self.n_points
        if L <= 0:
            raise GridConfigError(f"half_width must be positive, got {L}")
        if n % 2 != 0 or n < 16:
            raise GridConfigError(f"n_points must be even and >= 16, got {n}")
        dx = 2.0 * L / n
        x = -L + dx * np.arange(n)
        x.flags.writeable = False
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "x", x)

    @property
    def index_origin(self) -> int:
        # x = 0 sits at j = n/2
        return self.n_points // 2

    def momenta(self) -> np.ndarray:
        """FFT-ordered momenta p_k = pi k / L, k in [-n/2, n/2)."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dx)

    def index_of(self, x: float) -> int:
        """Index of the grid point at position x; x must lie on the grid."""
        j = int(round((x + self.half_width) / self.dx))
        if not 0 <= j < self.n_points:
            raise GridConfigError(f"x = {x} outside the box [-L, L)")
        if abs(self.x[j] - x) > 1e-9 * max(1.0, abs(x)):
            raise GridConfigError(
                f"x = {x} is not a grid point (nearest: {self.x[j]}); "
                "choose commensurate grid spacing"
            )
        return j


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid r_j = j*dr, j = 1..n (origin excluded)."""

    r_max: float
    n_points: int
    dr: float = field(init=False)
    r: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.r_max <= 0:
            raise GridConfigError(f"r_max must be positive, got {self.r_max}")
        if self.n_points < 16:
            raise GridConfigError(f"n_points must be >= 16, got {self.n_points}")
        dr = self.r_max / self.n_points
        r = dr * np.arange(1, self.n_points + 1)
        r.flags.writeable = False
        object.__setattr__(self, "dr", dr)
        object.__setattr__(self, "r", r)


@dataclass(frozen=True)
class WaveFunction:
    """Complex-valued function sampled on a Grid1D."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n_points,):
            raise GridMismatchError(
                f"values shape {v.shape} does not match grid ({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(v)):
            raise GridConfigError("non-finite samples in WaveFunction")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def norm(self) -> float:
        return float(np.sqrt((np.abs(self.values) ** 2).sum() * self.grid.dx))

    def integral(self) -> complex:
        """Riemann sum of the samples (the pairing with the constant 1)."""
        return complex(self.values.sum() * self.grid.dx)

    def moment(self, k: int = 1) -> complex:
        """Riemann sum of x^k f(x)."""
        return complex((self.grid.x**k * self.values).sum() * self.grid.dx)

    def reflected(self) -> "WaveFunction":
        """Reflection x -> -x (index j -> (n-j) mod n)."""
        n = self.grid.n_points
        return WaveFunction(self.grid, self.values[(-np.arange(n)) % n])

    def with_values(self, values: np.ndarray) -> "WaveFunction":
        return WaveFunction(self.grid, values)


@dataclass(frozen=True)
class MomentumFunction:
    """Fourier transform samples on the dual grid, FFT ordering."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n_points,):
            raise GridMismatchError("momentum samples do not match grid size")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def p(self) -> np.ndarray:
        return self.grid.momenta()

    def norm(self) -> float:
        dp = np.pi / self.grid.half_width
        return float(np.sqrt((np.abs(self.values) ** 2).sum() * dp))


def make_grid(half_width: float, n_points: int) -> Grid1D:
    """Build a uniform 1D grid on [-L, L]; n_points must be even, >= 16."""
    return Grid1D(half_width, n_points)


def bump_profile(u: np.ndarray) -> np.ndarray:
    """Smooth compactly supported profile exp(-1/(1-u^2)) on |u| < 1, else 0."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    m = np.abs(u) < 1.0
    out[m] = np.exp(-1.0 / (1.0 - u[m] ** 2))
    return out


def bump(center: float, radius: float, grid: Grid1D) -> WaveFunction:
    """
    L2-normalized smooth bump supported on [center - radius, center + radius].

    The support must lie inside the computational box; compact support is
    exact (samples vanish identically outside it), unlike a Gaussian.
    """
    if radius <= 0:
        raise GridConfigError(f"radius must be positive, got {radius}")
    L = grid.half_width
    if center - radius < -L or center + radius > L:
        raise GridConfigError(
            f"bump support [{center - radius}, {center + radius}] exceeds box [-{L}, {L}]"
        )
    v = bump_profile((grid.x - center) / radius).astype(complex)
    nrm = np.sqrt((np.abs(v) ** 2).sum() * grid.dx)
    return WaveFunction(grid, v / nrm)


def inner(f: WaveFunction, g: WaveFunction) -> complex:
    """Grid inner product, conjugate-linear in the first argument."""
    if f.grid is not g.grid and (
        f.grid.half_width != g.grid.half_width or f.grid.n_points != g.grid.n_points
    ):
        raise GridMismatchError("inner product between different grids")
    return complex((np.conj(f.values) * g.values).sum() * f.grid.dx)


def to_momentum(f: WaveFunction) -> MomentumFunction:
    """
    Fourier transform with fhat(p) = (2 pi)^(-1/2) Integral f e^(-ipx) dx.

    Exact discrete Plancherel: the momentum-side norm equals the position
    norm up to roundoff.
    """
    g = f.grid
    p = g.momenta()
    # phase factor accounts for the grid starting at x = -L rather than 0
    fh = np.fft.fft(f.values) * g.dx * np.exp(1j * p * g.half_width) / np.sqrt(2.0 * np.pi)
    return MomentumFunction(g, fh)


def to_position(fh: MomentumFunction) -> WaveFunction:
    """Inverse of to_momentum."""
    g = fh.grid
    p = g.momenta()
    v = np.fft.ifft(fh.values * np.exp(-1j * p * g.half_width)) * np.sqrt(2.0 * np.pi) / g.dx
    return WaveFunction(g, v)


def fourier_at(f: WaveFunction, p: np.ndarray) -> np.ndarray:
    """
    fhat evaluated at arbitrary momenta by direct quadrature.

    For smooth compactly supported f the Riemann sum converges faster than
    any power of dx, so this serves as a continuum-quality transform where
    the FFT grid is too coarse (e.g. near a Bose singularity).
    """
    p = np.atleast_1d(np.asarray(p, dtype=float))
    sup = np.abs(f.values) > 0
    x = f.grid.x[sup]
    v = f.values[sup]
    out = np.empty(p.shape, dtype=complex)
    # chunked to bound the phase-matrix size
    step = 4096
    for i in range(0, len(p), step):
        ph = np.exp(-1j * np.outer(p[i : i + step], x))
        out[i : i + step] = ph @ v
    return out * f.grid.dx / np.sqrt(2.0 * np.pi)
