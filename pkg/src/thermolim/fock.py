# fock.py
#
# Exact second quantization on a truncated occupation-number basis: the
# brute-force oracle for sector norms and thermal expectation values.
#
# The basis consists of occupation tuples (n_1, ..., n_m) with n_i <= n_max
# and sum n_i <= N_total.  Creation/annihilation matrix elements are exact;
# truncation only removes states, so commutation relations hold exactly on
# every state with headroom.  Dense matrices throughout: the oracle must be
# obviously correct, not fast.

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

DIMENSION_CAP = 200_000


class FockConfigError(ValueError):
    pass


class TruncationError(RuntimeError):
    """Gibbs weight of discarded occupations exceeds the tolerance."""


@dataclass(frozen=True)
class FockSpace:
    """Occupation-truncated bosonic Fock space over m orthonormal modes."""

    n_modes: int
    n_max: int
    n_total: int
    basis: tuple = field(init=False)
    index: dict = field(init=False, repr=False)
    sectors: dict = field(init=False, repr=False)

    def __post_init__(self):
        if self.n_modes not in (1, 2, 3):
            raise FockConfigError(f"n_modes must be 1, 2 or 3, got {self.n_modes}")
        if self.n_max < 0 or self.n_total < 0:
            raise FockConfigError("occupation caps must be nonnegative")
        basis = tuple(
            occ
            for occ in product(range(self.n_max + 1), repeat=self.n_modes)
            if sum(occ) <= self.n_total
        )
        if len(basis) > DIMENSION_CAP:
            raise FockConfigError(
                f"basis dimension {len(basis)} exceeds cap {DIMENSION_CAP}"
            )
        index = {occ: i for i, occ in enumerate(basis)}
        sectors: dict[int, list[int]] = {}
        for i, occ in enumerate(basis):
            sectors.setdefault(sum(occ), []).append(i)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "sectors", {k: np.array(v) for k, v in sectors.items()})

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def annihilator(self, mode: int) -> np.ndarray:
        """Dense matrix of a_mode: a|..., n, ...> = sqrt(n) |..., n-1, ...>."""
        D = self.dimension
        a = np.zeros((D, D))
        for occ, i in self.index.items():
            n = occ[mode]
            if n >= 1:
                tgt = occ[:mode] + (n - 1,) + occ[mode + 1 :]
                a[self.index[tgt], i] = np.sqrt(n)
        return a

    def annihilator_of(self, coeffs: np.ndarray) -> np.ndarray:
        """a(f) = sum_i conj(c_i) a_i for f = sum_i c_i e_i."""
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (self.n_modes,):
            raise FockConfigError("coefficient vector does not match the mode count")
        out = np.zeros((self.dimension, self.dimension), dtype=complex)
        for m, c in enumerate(coeffs):
            if c != 0:
                out += np.conj(c) * self.annihilator(m)
        return out

    def number_operator(self, mode: int) -> np.ndarray:
        return np.diag([float(occ[mode]) for occ in self.basis])

    def interior_mask(self) -> np.ndarray:
        """States where one more quantum in any mode stays inside the truncation."""
        return np.array(
            [
                sum(occ) + 1 <= self.n_total and all(n + 1 <= self.n_max for n in occ)
                for occ in self.basis
            ]
        )


def build_fock(n_modes: int, n_max: int, n_total: int) -> FockSpace:
    """Construct a truncated Fock space (dimension-capped)."""
    return FockSpace(n_modes, n_max, n_total)


def ccr_defect(space: FockSpace) -> float:
    """
    Max deviation of [a_i, a*_j] - delta_ij from zero on interior states.

    Zero up to roundoff by construction; exposed as a self-test.
    """
    mask = space.interior_mask()
    worst = 0.0
    for i in range(space.n_modes):
        ai = space.annihilator(i)
        for j in range(space.n_modes):
            aj = space.annihilator(j)
            comm = ai @ aj.T - aj.T @ ai
            expect = np.eye(space.dimension) if i == j else 0.0
            worst = max(worst, np.abs((comm - expect)[:, mask]).max())
    return worst


@dataclass(frozen=True)
class SectorOperator:
    """Dense block of an operator restricted to a total-number sector."""

    sector: int
    matrix: np.ndarray

    def norm(self) -> float:
        if self.matrix.size == 0:
            return 0.0
        return float(np.linalg.svd(self.matrix, compute_uv=False)[0])


def sector_blocks(space: FockSpace, op: np.ndarray) -> list[SectorOperator]:
    """Split a number-conserving operator into its sector blocks."""
    out = []
    for n in sorted(space.sectors):
        idx = space.sectors[n]
        out.append(SectorOperator(n, op[np.ix_(idx, idx)]))
    return out


def number_resolvent_matrix(space: FockSpace, lam: float, coeffs: np.ndarray) -> list[SectorOperator]:
    """
    Exact (lam + a*(f) a(f))^(-1), blockwise per particle-number sector.
    """
    if lam <= 0:
        raise FockConfigError(f"lambda must be positive, got {lam}")
    af = space.annihilator_of(coeffs)
    X = af.conj().T @ af
    out = []
    for n in sorted(space.sectors):
        idx = space.sectors[n]
        block = X[np.ix_(idx, idx)]
        out.append(
            SectorOperator(n, np.linalg.inv(lam * np.eye(len(idx)) + block))
        )
    return out


def sector_norm_monotonicity(blocks: list[SectorOperator], tol: float = 1e-12):
    """
    Check that sector norms are nondecreasing in the particle number.

    Returns (verdict, norms) where verdict is True when
    ||A||_k <= ||A||_{k+1} + tol for all consecutive sectors, and norms lists
    max_{j<=k} ||A||_j alongside the raw per-sector values.
    """
    norms = [b.norm() for b in blocks]
    ok = all(a <= b + tol for a, b in zip(norms, norms[1:]))
    running_max = np.maximum.accumulate(norms).tolist()
    return ok, norms, running_max


# ---------------------------------------------------------------------------
# Exact sector norms for pairs of evolved resolvents
# ---------------------------------------------------------------------------


def _pair_annihilators(k: int):
    # a_1, a_2 : Sym^k(C^2) -> Sym^(k-1)(C^2), states indexed by the count
    # of mode 1 (target index is its mode-1 count; rows padded to k+1)
    a1 = np.zeros((k + 1, k + 1))
    a2 = np.zeros((k + 1, k + 1))
    for j in range(k + 1):
        if j >= 1:
            a1[j - 1, j] = np.sqrt(j)
        if k - j >= 1:
            a2[j, j] = np.sqrt(k - j)
    return a1, a2


def _span_coordinates(norm1: float, norm2: float, overlap: complex):
    # orthonormal coordinates of (g1, g2) inside span{g1, g2}
    if norm1 == 0 and norm2 == 0:
        return np.zeros(2, complex), np.zeros(2, complex)
    if norm1 == 0:
        return np.zeros(2, complex), np.array([norm2, 0.0], complex)
    c = overlap / norm1
    perp_sq = norm2**2 - abs(c) ** 2
    perp = np.sqrt(perp_sq) if perp_sq > 0 else 0.0
    return np.array([norm1, 0.0], complex), np.array([c, perp], complex)


def resolvent_pair_sector_norm(
    lam: float,
    norm1: float,
    norm2: float,
    overlap: complex,
    n: int,
) -> float:
    """
    Exact ||A(lam, g1) - A(lam, g2)||_n from the Gram data of (g1, g2).

    The difference acts nontrivially only on the two-dimensional span of
    g1, g2; on the n-particle sector it decomposes over the occupation k of
    that span into (k+1)-dimensional blocks, and the norm is the max block
    norm over k <= n.  Linearly dependent g1, g2 reduce to the k-dim case
    automatically (perpendicular coordinate 0).
    """
    if lam <= 0:
        raise FockConfigError(f"lambda must be positive, got {lam}")
    g1c, g2c = _span_coordinates(norm1, norm2, overlap)
    worst = 0.0
    for k in range(n + 1):
        a1, a2 = _pair_annihilators(k)
        mats = []
        for g in (g1c, g2c):
            ag = np.conj(g[0]) * a1 + np.conj(g[1]) * a2
            X = ag.conj().T @ ag
            mats.append(np.linalg.inv(lam * np.eye(k + 1) + X))
        worst = max(worst, np.abs(np.linalg.eigvalsh(mats[0] - mats[1])).max())
    return worst


def evolved_resolvent_sector_norm(lam: float, g1, g2, n: int, inner_product) -> float:
    """
    Exact n-sector norm of A(lam, g1) - A(lam, g2) for concrete vectors,
    with inner_product(a, b) conjugate-linear in a.
    """
    if n > 12:
        raise FockConfigError("sector index capped at 12 (desk scale)")
    n1 = np.sqrt(inner_product(g1, g1).real)
    n2 = np.sqrt(inner_product(g2, g2).real)
    ov = inner_product(g1, g2)
    return resolvent_pair_sector_norm(lam, n1, n2, ov, n)


# ---------------------------------------------------------------------------
# Gibbs traces on the truncated space
# ---------------------------------------------------------------------------


def _gibbs_weights(space: FockSpace, energies, beta: float, mu: float) -> np.ndarray:
    energies = np.asarray(energies, dtype=float)
    if energies.shape != (space.n_modes,):
        raise FockConfigError("one energy per mode required")
    if mu >= energies.min():
        raise FockConfigError("chemical potential must lie below every mode energy")
    w = np.array(
        [np.exp(-beta * sum((energies[m] - mu) * occ[m] for m in range(space.n_modes)))
         for occ in space.basis]
    )
    return w


def truncation_weight(space: FockSpace, energies, beta: float, mu: float) -> float:
    """Relative Gibbs weight of the discarded occupation states."""
    energies = np.asarray(energies, dtype=float)
    q = np.exp(-beta * (energies - mu))
    z_full = np.prod(1.0 / (1.0 - q))
    z_trunc = _gibbs_weights(space, energies, beta, mu).sum()
    return float(1.0 - z_trunc / z_full)


def gibbs_trace_expectation(
    space: FockSpace,
    op: np.ndarray,
    energies,
    beta: float,
    mu: float,
    truncation_tol: float = 1e-10,
) -> float:
    """
    Grand-canonical expectation Tr(e^(-beta H) op) / Tr(e^(-beta H)) with
    H = sum_i (eps_i - mu) N_i on the truncated space.
    """
    drop = truncation_weight(space, energies, beta, mu)
    if drop > truncation_tol:
        raise TruncationError(
            f"truncation weight {drop:.2e} above {truncation_tol:.0e}; raise the caps"
        )
    w = _gibbs_weights(space, energies, beta, mu)
    val = (w * np.diag(op).real).sum() / w.sum()
    return float(val)


def gibbs_number_resolvent(
    space: FockSpace,
    lam: float,
    coeffs,
    energies,
    beta: float,
    mu: float,
) -> float:
    """Gibbs trace of (lam + a*(f) a(f))^(-1): the oracle for the series formula."""
    af = space.annihilator_of(np.asarray(coeffs, dtype=complex))
    X = af.conj().T @ af
    A = np.linalg.inv(lam * np.eye(space.dimension) + X)
    return gibbs_trace_expectation(space, A, energies, beta, mu)


def gibbs_field_resolvent(
    space: FockSpace,
    lam: float,
    coeffs,
    energies,
    beta: float,
    mu: float,
) -> float:
    """
    Gibbs trace of Re (lam + i(a*(f) + a(f)))^(-1) on the truncated space.

    This is the operator whose Laplace representation
    Integral_0^inf e^(-u lam) e^(-iu phi(f)) du converges for lam > 0 (the
    field operator itself has real spectrum, so a real offset would be
    singular).  Reported alongside the Gaussian quadrature formula as a
    diagnostic; the truncation bites harder for field operators, so this is
    not an oracle equality.
    """
    af = space.annihilator_of(np.asarray(coeffs, dtype=complex))
    phi = af + af.conj().T
    Rm = np.linalg.inv(lam * np.eye(space.dimension) + 1j * phi)
    return gibbs_trace_expectation(space, 0.5 * (Rm + Rm.conj().T), energies, beta, mu)
