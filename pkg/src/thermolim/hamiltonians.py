# hamiltonians.py
#
# Single-particle Hamiltonians on the grid and their spectral decompositions.
#
# H = -d^2/dx^2 + V(x) with the three-point Laplacian (units 2m = 1), so the
# operator is a real symmetric tridiagonal matrix: diagonal 2/dx^2 + V(x_j),
# off-diagonal -1/dx^2.  The grid truncation imposes hard walls one cell
# outside the sampled box; experiments only trust modes whose amplitude at
# the box edge is negligible (see lab gates).
#
# The soft-wall trap confines particles to |x| <= R by the truncated
# harmonic potential c^2 * max(x^2 - R^2, 0): free inside the ball, growing
# quadratically outside.  "free" means V = 0 everywhere.

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .grids import Grid1D, GridConfigError, GridMismatchError, RadialGrid, WaveFunction


class EigensolverError(RuntimeError):
    """Eigensolver failed to converge or produced invalid output."""


@dataclass(frozen=True)
class PotentialSpec:
    """
    Potential family: free, soft-wall trap, or a general sampled potential.

    kind = "free":                V(x) = 0
    kind = "truncated_harmonic":  V(x) = c^2 * max(x^2 - R^2, 0)
    kind = "general":             V(x) = c^2 x^2 + U(x) + shift
    """

    kind: str
    radius: float = 0.0
    coupling: float = 1.0
    shift: float = 0.0
    sampled: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind not in ("free", "truncated_harmonic", "general"):
            raise GridConfigError(f"unknown potential kind {self.kind!r}")
        if self.kind == "truncated_harmonic" and self.radius < 0:
            raise GridConfigError("confinement radius must be >= 0")

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        if self.kind == "free":
            return np.zeros_like(x)
        if self.kind == "truncated_harmonic":
            return self.coupling**2 * np.maximum(x * x - self.radius**2, 0.0)
        v = self.coupling**2 * x * x + self.shift
        if self.sampled is not None:
            if self.sampled.shape != x.shape:
                raise GridMismatchError("sampled potential does not match the grid")
            v = v + self.sampled
        return v


def free_potential() -> PotentialSpec:
    return PotentialSpec("free")


def soft_wall_trap(radius: float, coupling: float = 1.0) -> PotentialSpec:
    return PotentialSpec("truncated_harmonic", radius=radius, coupling=coupling)


@dataclass(frozen=True)
class TridiagonalOperator:
    """Real symmetric tridiagonal operator; diagonal d, off-diagonal e."""

    diagonal: np.ndarray
    off_diagonal: np.ndarray
    grid: object  # Grid1D or RadialGrid

    def __post_init__(self):
        d = np.asarray(self.diagonal, dtype=float)
        e = np.asarray(self.off_diagonal, dtype=float)
        if e.shape != (d.shape[0] - 1,):
            raise GridConfigError("off-diagonal must have length n-1")
        d = d.copy(); d.flags.writeable = False
        e = e.copy(); e.flags.writeable = False
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "off_diagonal", e)

    @property
    def size(self) -> int:
        return self.diagonal.shape[0]

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Matrix-vector product in O(n)."""
        out = self.diagonal * v
        out[:-1] += self.off_diagonal * v[1:]
        out[1:] += self.off_diagonal * v[:-1]
        return out

    def gershgorin_lower_bound(self) -> float:
        rad = np.zeros(self.size)
        rad[:-1] += np.abs(self.off_diagonal)
        rad[1:] += np.abs(self.off_diagonal)
        return float((self.diagonal - rad).min())


@dataclass(frozen=True)
class SpectralDecomposition:
    """
    Eigenvalues (ascending) and eigenvectors of a discretized Hamiltonian.

    Eigenvectors are stored as columns, L2-normalized on the grid
    (sum |psi_j|^2 dx = 1) with the sign fixed so the first component
    exceeding 1e-12 of the max magnitude is positive.
    """

    grid: object
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # shape (n_grid, n_modes)

    def __post_init__(self):
        w = np.asarray(self.eigenvalues, dtype=float).copy()
        v = np.asarray(self.eigenvectors, dtype=float).copy()
        w.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)

    @property
    def n_modes(self) -> int:
        return self.eigenvalues.shape[0]

    def mode(self, k: int) -> WaveFunction:
        return WaveFunction(self.grid, self.eigenvectors[:, k].astype(complex))


def _fix_signs(v: np.ndarray, dx: float) -> np.ndarray:
    # scale to grid L2 normalization, then fix the sign from the first
    # component that clears the noise threshold
    v = v / np.sqrt(dx)
    amax = np.abs(v).max(axis=0)
    for k in range(v.shape[1]):
        nz = np.nonzero(np.abs(v[:, k]) > 1e-12 * amax[k])[0]
        if nz.size and v[nz[0], k] < 0:
            v[:, k] = -v[:, k]
    return v


def assemble(grid: Grid1D, pot: PotentialSpec) -> TridiagonalOperator:
    """Discretize -d^2/dx^2 + V on the grid as a tridiagonal matrix."""
    n = grid.n_points
    d = 2.0 / grid.dx**2 + pot.evaluate(grid.x)
    e = np.full(n - 1, -1.0 / grid.dx**2)
    return TridiagonalOperator(d, e, grid)


def radial_assemble(grid: RadialGrid, l: int, pot: PotentialSpec) -> TridiagonalOperator:
    """
    Reduced radial operator -u'' + [l(l+1)/r^2 + V(r)] u with u(0) = 0.

    The grid excludes r = 0; the Dirichlet condition at the origin is built
    into the three-point stencil, and a hard wall sits one cell past r_max.
    """
    if l < 0:
        raise GridConfigError(f"angular momentum must be >= 0, got {l}")
    d = 2.0 / grid.dr**2 + l * (l + 1) / grid.r**2 + pot.evaluate(grid.r)
    e = np.full(grid.n_points - 1, -1.0 / grid.dr**2)
    return TridiagonalOperator(d, e, grid)


def diagonalize(
    H: TridiagonalOperator,
    n_modes: Optional[int] = None,
) -> SpectralDecomposition:
    """
    Diagonalize a tridiagonal operator (LAPACK symmetric tridiagonal solver).

    n_modes restricts the output to the lowest n_modes eigenpairs, which is
    much cheaper on large grids when only a few bound modes are needed.
    """
    dx = getattr(H.grid, "dx", None) or H.grid.dr
    try:
        if n_modes is None or n_modes >= H.size:
            w, v = eigh_tridiagonal(H.diagonal, H.off_diagonal)
        else:
            w, v = eigh_tridiagonal(
                H.diagonal,
                H.off_diagonal,
                select="i",
                select_range=(0, n_modes - 1),
                lapack_driver="stebz",
            )
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise EigensolverError(f"tridiagonal eigensolver failed: {exc}") from exc
    order = np.argsort(w)
    w = w[order]
    v = _fix_signs(v[:, order], dx)
    return SpectralDecomposition(H.grid, w, v)


def residual_norms(H: TridiagonalOperator, decomp: SpectralDecomposition) -> np.ndarray:
    """Per-mode ||H psi - eps psi||_2 on the grid (decomposition quality)."""
    dx = getattr(H.grid, "dx", None) or H.grid.dr
    res = np.empty(decomp.n_modes)
    for k in range(decomp.n_modes):
        psi = decomp.eigenvectors[:, k]
        r = H.apply(psi) - decomp.eigenvalues[k] * psi
        res[k] = np.sqrt((r * r).sum() * dx)
    return res


def parity_of(psi: WaveFunction, tol: float = 1e-6) -> str:
    """Classify a grid function as 'even', 'odd' or 'none' under x -> -x."""
    refl = psi.reflected().values
    nrm = psi.norm()
    if nrm == 0:
        return "none"
    dx = psi.grid.dx
    even_mis = np.sqrt((np.abs(psi.values - refl) ** 2).sum() * dx) / nrm
    odd_mis = np.sqrt((np.abs(psi.values + refl) ** 2).sum() * dx) / nrm
    if even_mis <= tol:
        return "even"
    if odd_mis <= tol:
        return "odd"
    return "none"


def ground_pair(decomp: SpectralDecomposition, index: int = 0):
    """
    Return (eigenvalue, eigenfunction, parity tag) for the given mode index.
    """
    if index >= decomp.n_modes:
        raise GridConfigError(
            f"mode index {index} out of range ({decomp.n_modes} modes computed)"
        )
    psi = decomp.mode(index)
    return float(decomp.eigenvalues[index]), psi, parity_of(psi)


def trap_decomposition(
    R: float,
    coupling: float = 1.0,
    box_margin: float = 16.0,
    dx_target: float = 0.03125,
    n_modes: Optional[int] = None,
    n_cap: int = 16384,
) -> SpectralDecomposition:
    """
    Convenience: diagonalize the soft-wall trap of radius R in a box
    L = R + box_margin with spacing ~dx_target rounded to a commensurate
    power of two (so that integer positions are exact grid points).
    """
    L = R + box_margin
    # dx = 2^-k <= dx_target keeps integers on the grid
    k = int(np.ceil(-np.log2(dx_target)))
    n = int(round(2 * L * 2**k))
    if n % 2:
        n += 1
    while n > n_cap and 2 * L * 2 ** (k - 1) >= 16:
        k -= 1
        n = int(round(2 * L * 2**k))
    grid = Grid1D(L, n)
    H = assemble(grid, soft_wall_trap(R, coupling))
    return diagonalize(H, n_modes=n_modes)
