import numpy as np
import pytest

from thermolim.fock import (
    FockConfigError,
    TruncationError,
    build_fock,
    ccr_defect,
    gibbs_number_resolvent,
    gibbs_trace_expectation,
    evolved_resolvent_sector_norm,
    number_resolvent_matrix,
    resolvent_pair_sector_norm,
    sector_blocks,
    sector_norm_monotonicity,
    truncation_weight,
)
from thermolim.quasifree import bose_occupation, geometric_resolvent_series


def test_dimensions():
    assert build_fock(1, 3, 3).dimension == 4
    assert build_fock(2, 2, 2).dimension == 6


def test_mode_count_validation():
    with pytest.raises(FockConfigError):
        build_fock(4, 2, 2)


def test_dimension_cap():
    with pytest.raises(FockConfigError):
        build_fock(3, 100, 300)


def test_ccr_exact_on_interior():
    assert ccr_defect(build_fock(2, 5, 5)) < 1e-12
    assert ccr_defect(build_fock(3, 3, 3)) < 1e-12


def test_creation_matrix_elements():
    sp = build_fock(1, 4, 4)
    a = sp.annihilator(0)
    ad = a.T
    for n in range(4):
        assert ad[sp.index[(n + 1,)], sp.index[(n,)]] == pytest.approx(np.sqrt(n + 1))


def test_vacuum_sector_scalar():
    sp = build_fock(2, 4, 4)
    blocks = number_resolvent_matrix(sp, 2.0, np.array([0.6, 0.8]))
    assert blocks[0].matrix.shape == (1, 1)
    assert blocks[0].matrix[0, 0] == pytest.approx(0.5)


def test_one_particle_sector_eigenvalues():
    lam = 1.3
    sp = build_fock(2, 4, 4)
    blocks = number_resolvent_matrix(sp, lam, np.array([1.0, 0.0]))
    eig = np.sort(np.linalg.eigvalsh(blocks[1].matrix))
    assert np.allclose(eig, [1 / (lam + 1), 1 / lam], atol=1e-12)


def test_sector_norm_is_inverse_lambda():
    # occupation 0 of the f-mode is always admissible, so every sector
    # norm of the resolvent equals 1/lam
    lam = 0.7
    sp = build_fock(2, 5, 5)
    for b in number_resolvent_matrix(sp, lam, np.array([0.3, 0.9])):
        assert b.norm() == pytest.approx(1 / lam, abs=1e-12)


def test_pair_norm_identical_vectors():
    assert resolvent_pair_sector_norm(1.0, 1.0, 1.0, 1.0, 3) == 0.0


def test_pair_norm_orthonormal_hand_value():
    # one particle, orthogonal unit modes: ||(1+P1)^-1 - (1+P2)^-1|| = 1/2
    assert resolvent_pair_sector_norm(1.0, 1.0, 1.0, 0.0, 1) == pytest.approx(0.5, abs=1e-14)


def test_pair_norm_matches_dense_oracle():
    # independent route: dense resolvent difference on the full 2-mode space
    rng = np.random.default_rng(11)
    lam = 1.0
    for _ in range(5):
        g1 = rng.normal(size=2) + 1j * rng.normal(size=2)
        g2 = rng.normal(size=2) + 1j * rng.normal(size=2)
        n_sec = 3
        sp = build_fock(2, n_sec, n_sec)
        A1 = number_resolvent_matrix(sp, lam, g1)
        A2 = number_resolvent_matrix(sp, lam, g2)
        dense = max(
            np.abs(np.linalg.eigvalsh(a.matrix - b.matrix)).max()
            for a, b in zip(A1, A2)
        )
        gram = lambda a, b: np.vdot(a, b)
        exact = resolvent_pair_sector_norm(
            lam, np.linalg.norm(g1), np.linalg.norm(g2), gram(g1, g2), n_sec
        )
        assert exact == pytest.approx(dense, abs=1e-11)


def test_pair_norm_rotation_invariance():
    rng = np.random.default_rng(5)
    g1 = rng.normal(size=3) + 1j * rng.normal(size=3)
    g2 = rng.normal(size=3) + 1j * rng.normal(size=3)
    base = resolvent_pair_sector_norm(
        1.0, np.linalg.norm(g1), np.linalg.norm(g2), np.vdot(g1, g2), 3
    )
    for _ in range(5):
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
        r1, r2 = q @ g1, q @ g2
        rotated = resolvent_pair_sector_norm(
            1.0, np.linalg.norm(r1), np.linalg.norm(r2), np.vdot(r1, r2), 3
        )
        assert rotated == pytest.approx(base, abs=1e-12)


def test_pair_norm_against_gap_bound():
    rng = np.random.default_rng(23)
    lam = 1.0
    for _ in range(10):
        g1 = rng.normal(size=2) + 1j * rng.normal(size=2)
        g1 /= np.linalg.norm(g1)
        g2 = g1 + 0.05 * (rng.normal(size=2) + 1j * rng.normal(size=2))
        for n in (1, 2, 3):
            exact = resolvent_pair_sector_norm(
                lam, 1.0, np.linalg.norm(g2), np.vdot(g1, g2), n
            )
            bound = 2 * n / lam**2 * 1.0 * np.linalg.norm(g1 - g2)
            assert exact <= bound + 1e-10


def test_lemma33_sector_cap():
    with pytest.raises(FockConfigError):
        evolved_resolvent_sector_norm(1.0, np.ones(2), np.ones(2), 13, lambda a, b: np.vdot(a, b))


def test_linearly_dependent_pair():
    # g2 = 2 g1: one-dimensional span handled via the padded second mode
    val = resolvent_pair_sector_norm(1.0, 1.0, 2.0, 2.0, 2)
    # closed form on occupation k of the single mode: max_k |1/(1+k) - 1/(1+4k)|
    expected = max(abs(1 / (1 + k) - 1 / (1 + 4 * k)) for k in range(3))
    assert val == pytest.approx(expected, abs=1e-12)


def test_monotonicity_single_resolvent():
    sp = build_fock(2, 4, 4)
    blocks = number_resolvent_matrix(sp, 1.0, np.array([0.6, 0.8]))
    ok, norms, running = sector_norm_monotonicity(blocks)
    assert ok
    assert all(n == pytest.approx(1.0, abs=1e-12) for n in norms)
    assert running == pytest.approx(norms)


def test_monotonicity_difference_with_spectator_mode():
    # orthogonal f, g living in modes 1-2; mode 3 gives room for the added
    # particle, as the infinite-dimensional one-particle space would
    sp = build_fock(3, 3, 3)
    a1 = sp.annihilator_of(np.array([1.0, 0.0, 0.0]))
    a2 = sp.annihilator_of(np.array([0.0, 1.0, 0.0]))
    A = np.linalg.inv(np.eye(sp.dimension) + a1.conj().T @ a1)
    B = np.linalg.inv(np.eye(sp.dimension) + a2.conj().T @ a2)
    ok, norms, _ = sector_norm_monotonicity(sector_blocks(sp, A - B))
    assert ok
    assert norms[1] <= norms[2] <= norms[3]


def test_monotonicity_random_products_seeded():
    rng = np.random.default_rng(20240817)
    sp = build_fock(3, 5, 5)
    for _ in range(20):
        c1 = np.append(rng.normal(size=2) + 1j * rng.normal(size=2), 0.0)
        c2 = np.append(rng.normal(size=2) + 1j * rng.normal(size=2), 0.0)
        lam1, lam2 = rng.uniform(0.5, 2.0, size=2)
        a1, a2 = sp.annihilator_of(c1), sp.annihilator_of(c2)
        A = np.linalg.inv(lam1 * np.eye(sp.dimension) + a1.conj().T @ a1)
        B = np.linalg.inv(lam2 * np.eye(sp.dimension) + a2.conj().T @ a2)
        ok, _, _ = sector_norm_monotonicity(sector_blocks(sp, A @ B)[:4])
        assert ok


def test_gibbs_identity():
    sp = build_fock(2, 44, 44)
    val = gibbs_trace_expectation(sp, np.eye(sp.dimension), [0.5, 1.5], 1.0, -0.2)
    assert val == pytest.approx(1.0, abs=1e-12)


def test_gibbs_single_mode_occupation():
    sp = build_fock(2, 40, 40)
    beta, mu, eps = 1.0, -0.2, [0.5, 1.5]
    n_op = sp.number_operator(0)
    val = gibbs_trace_expectation(sp, n_op, eps, beta, mu)
    expected = bose_occupation(np.array([eps[0]]), beta, mu)[0]
    assert val == pytest.approx(expected, abs=1e-10)


def test_gibbs_matches_geometric_series():
    beta, mu, eps = 1.0, -0.2, [0.5, 1.5]
    coeffs = np.array([0.8, 0.6])
    sp = build_fock(2, 44, 44)
    occ = bose_occupation(np.array(eps), beta, mu)
    norm_sq = float((np.abs(coeffs) ** 2).sum())
    nbar = float((np.abs(coeffs) ** 2 * occ).sum()) / norm_sq
    for lam in (0.5, 1.0, 2.0):
        oracle = gibbs_number_resolvent(sp, lam, coeffs, eps, beta, mu)
        series = geometric_resolvent_series(nbar, norm_sq, lam)
        assert abs(oracle - series) < 1e-8


def test_gibbs_gauge_invariance():
    sp = build_fock(2, 44, 44)
    coeffs = np.array([0.8, 0.6])
    rotated = coeffs * np.exp(1j * np.array([0.7, -1.1]))
    a = gibbs_number_resolvent(sp, 1.0, coeffs, [0.5, 1.5], 1.0, -0.2)
    b = gibbs_number_resolvent(sp, 1.0, rotated, [0.5, 1.5], 1.0, -0.2)
    assert a == pytest.approx(b, abs=1e-12)


def test_truncation_guard():
    small = build_fock(2, 6, 6)
    assert truncation_weight(small, [0.5, 1.5], 1.0, -0.2) > 1e-10
    with pytest.raises(TruncationError):
        gibbs_trace_expectation(small, np.eye(small.dimension), [0.5, 1.5], 1.0, -0.2)


def test_gibbs_rejects_mu_above_spectrum():
    sp = build_fock(2, 10, 10)
    with pytest.raises(FockConfigError):
        gibbs_trace_expectation(sp, np.eye(sp.dimension), [0.5, 1.5], 1.0, 0.6)
