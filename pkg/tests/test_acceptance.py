"""Acceptance gate: ten end-to-end checks, one printed verdict line each.

Run with plain pytest; the [PASS]/[FAIL] lines are emitted straight to the
terminal even when capture is on.
"""

import math
import time

import numpy as np

from momsym import (CoefficientScaling, GridSpec, LaurentSymbol,
                    MomentarySymbol, block_reinterpret, circulant,
                    circulant_grid, circulant_real_transform,
                    distribution_test, eig_general_small, eig_hermitian,
                    example3, example4, fourier_matrix, fourier_sum,
                    grid_ordering_check, h2xn_dirichlet_neumann,
                    interlacing_check, sample_spectrum_approx, tau_eigen_grid,
                    tau_eigvec_matrix, tau_matrix, toeplitz,
                    verify_tau_decomposition)


def _emit(capsys, num, desc, ok):
    with capsys.disabled():
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {desc}")
    assert ok, f"criterion {num} failed: {desc}"


def second_diff():
    return LaurentSymbol({0: 2.0, 1: -1.0, -1: -1.0})


def reaction_diffusion_momentary():
    return MomentarySymbol([
        (CoefficientScaling.one(), second_diff()),
        (CoefficientScaling.inverse_power(2, "n+1"), LaurentSymbol({0: 1.0})),
    ])


SWEEP_1 = (7, 31, 127, 511)


def test_criterion_1_size_aware_symbol_is_exact(capsys):
    mom = reaction_diffusion_momentary()
    t0 = time.perf_counter()
    worst = 0.0
    for n in SWEEP_1:
        exact = eig_hermitian(h2xn_dirichlet_neumann(n)).values
        approx = sample_spectrum_approx(mom, GridSpec.tau(0, 1), n)
        worst = max(worst, float(np.abs(exact - approx).max()))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 10.0
    _emit(capsys, 1,
          f"size-aware samples match Neumann-corner eigenvalues for n in "
          f"{SWEEP_1} (max err {worst:.2e}, {elapsed:.2f}s)", ok)


def test_criterion_2_asymptotic_symbol_error_law(capsys):
    f1 = second_diff()
    worst_dev = 0.0
    for n in SWEEP_1:
        h2 = 1.0 / (n + 1) ** 2
        exact = eig_hermitian(h2xn_dirichlet_neumann(n)).values
        approx = sample_spectrum_approx(f1, GridSpec.tau(0, 1), n)
        errs = np.abs(exact - approx)
        worst_dev = max(worst_dev, float(np.abs(errs - h2).max()))
    ok = worst_dev <= 1e-12
    _emit(capsys, 2,
          f"plain-symbol per-index error equals h^2 (max deviation "
          f"{worst_dev:.2e})", ok)


def test_criterion_3_bidiagonal_scenario(capsys):
    ok = True
    for n in range(4, 65):
        h = 1.0 / n
        x = toeplitz(LaurentSymbol({0: 2.0 + h, 1: 1.0}), n)
        eigs = eig_general_small(x).values
        ok &= bool(np.all(eigs == 2.0 + h))
        g = LaurentSymbol({0: 1 + (2 + h) ** 2, 1: 2 + h, -1: 2 + h})
        got, _ = verify_tau_decomposition((x.conj().T @ x).real, g, 0, -1.0 / (2 + h))
        ok &= got
    h5 = 0.2
    x5 = toeplitz(LaurentSymbol({0: 2.0 + h5, 1: 1.0}), 5)
    top = eig_hermitian((x5.conj().T @ x5).real).values[-1]
    glt_max = 9.0
    mom_max = 1 + (2 + h5) ** 2 + 2 * (2 + h5)
    ok = ok and glt_max < top <= mom_max
    _emit(capsys, 3,
          f"bidiagonal eigenvalues exactly 2+h, Gram in corner algebra, "
          f"n=5 outlier {top:.4f} in ({glt_max}, {mom_max:.2f}]", ok)


def test_criterion_4_corner_update_bracketing(capsys):
    symbols = {
        "2cos": LaurentSymbol({1: 1.0, -1: 1.0}),
        "3+4cos": LaurentSymbol({0: 3.0, 1: 2.0, -1: 2.0}),
    }
    ok = True
    shifted_failures = 0
    for f in symbols.values():
        for n in range(4, 33):
            rep = interlacing_check(f, n)
            ok &= rep.stated_holds
            shifted_failures += len(rep.shifted_fail_j)
    _emit(capsys, 4,
          f"stated eigenvalue bracket holds for both decreasing symbols, "
          f"n in 4..32 (tighter shifted bound failed at {shifted_failures} "
          f"indices; logged, not asserted)", ok)


def test_criterion_5_space_time_block_scenario(capsys):
    t0 = time.perf_counter()
    worst_struct = 0.0
    worst_spect = 0.0
    ok = True
    for N, n in ((2, 4), (3, 5), (4, 8)):
        rep = example3(N, n)
        ok &= rep.passed
        worst_struct = max(worst_struct, rep.notes["structural_residual"])
        worst_spect = max(worst_spect, rep.notes["momentary_spectral_error"])
    elapsed = time.perf_counter() - t0
    ok = ok and worst_struct <= 1e-15 and worst_spect <= 1e-8 and elapsed < 30.0
    _emit(capsys, 5,
          f"two-level reordering exact (resid {worst_struct:.2e}) and spectra "
          f"match with multiplicity (err {worst_spect:.2e}, {elapsed:.2f}s)", ok)


def test_criterion_6_coarsening_scenario(capsys):
    ok = True
    for n in (7, 15, 31):
        rep = example4(n)
        ok &= rep.flags["interpolation_constructions_agree"]
        ok &= rep.flags["block_symbol_times_cut_equals_stencil_symbol"]
        ok &= rep.flags["coarse_matrix_is_toeplitz_plus_corner"]
        ok &= rep.flags["coarse_matrix_in_corner_algebra"]
        ok &= rep.notes["toeplitz_plus_corner_residual"] == 0.0
    _emit(capsys, 6,
          "interpolation builds agree, block-symbol identity holds, coarse "
          "matrix exactly Toeplitz-plus-corner for n in {7, 15, 31}", ok)


def test_criterion_7_block_reinterpretation(capsys):
    rng = np.random.default_rng(2024)
    ok = True
    for trial in range(20):
        deg = int(rng.integers(0, 4))
        coeffs = {}
        for k in range(-deg, deg + 1):
            c = rng.normal() + 1j * rng.normal()
            coeffs[k] = c.real if trial % 2 == 0 else c
        coeffs[0] = coeffs.get(0, 1.0) or 1.0
        f = LaurentSymbol(coeffs)
        for s in (2, 3):
            for n in range(2, 7):
                ok &= bool(np.array_equal(toeplitz(f, n * s),
                                          toeplitz(block_reinterpret(f, s), n)))
    _emit(capsys, 7,
          "block reinterpretation reproduces the big matrix exactly for 20 "
          "random polynomials, s in {2,3}, n in 2..6", ok)


def test_criterion_8_circulant_algebra(capsys):
    rng = np.random.default_rng(2025)
    worst_f = 0.0
    worst_q = 0.0
    for n in range(4, 17):
        c = rng.normal(size=4)
        f = LaurentSymbol({0: c[0], 1: c[1], -1: c[1], 2: c[2], -2: c[2],
                           3: c[3], -3: c[3]})
        cmat = circulant(f, n)
        fmat = fourier_matrix(n)
        d = np.diag([fourier_sum(f, n, t) for t in circulant_grid(n)])
        worst_f = max(worst_f, float(np.abs(cmat - fmat @ d @ fmat.conj().T).max()))
        q = circulant_real_transform(n)
        dq = q.T @ cmat.real @ q
        worst_q = max(worst_q, float(np.abs(dq - np.diag(np.diag(dq))).max()))
    ok = worst_f <= 1e-12 and worst_q <= 1e-10
    _emit(capsys, 8,
          f"Fourier diagonalization residual {worst_f:.2e} and real-transform "
          f"residual {worst_q:.2e} for n in 4..16", ok)


def test_criterion_9_distribution_gap_decay(capsys):
    f = second_diff()
    quad_gaps = []
    linear_ok = True
    for n in (8, 16, 32, 64):
        spec = eig_hermitian(toeplitz(f, n))
        quad_gaps.append(distribution_test(spec, f, f_id="abs_power_2").gap)
        linear_ok &= distribution_test(spec, f, f_id="abs_power_1").gap <= 1e-13
    decreasing = all(a > b for a, b in zip(quad_gaps, quad_gaps[1:]))
    ok = decreasing and linear_ok
    _emit(capsys, 9,
          f"F=x^2 gaps strictly decrease {['%.4f' % g for g in quad_gaps]}, "
          f"F=x gap is zero at every size", ok)


def test_criterion_10_grid_suite(capsys):
    rng = np.random.default_rng(2026)
    pairs = [(e, p) for e in (-1, 0, 1) for p in (-1, 0, 1)]
    worst_orth = 0.0
    worst_diag = 0.0
    for eps, phi in pairs:
        c0, c1 = rng.normal(size=2)
        f = LaurentSymbol({0: c0, 1: c1, -1: c1})
        for n in range(2, 17):
            q = tau_eigvec_matrix(eps, phi, n)
            worst_orth = max(worst_orth, float(np.abs(q.T @ q - np.eye(n)).max()))
            a = tau_matrix(f, eps, phi, n).real
            d = q.T @ a @ q
            resid = float(np.abs(d - np.diag(np.diag(d))).max())
            worst_diag = max(worst_diag, resid)
            samples = c0 + 2 * c1 * np.cos(tau_eigen_grid(eps, phi, n))
            worst_diag = max(worst_diag, float(np.abs(np.diag(d) - samples).max()))
    ordering_ok = all(grid_ordering_check(n) for n in range(1, 101))
    ok = worst_orth <= 1e-12 and worst_diag <= 1e-10 and ordering_ok
    _emit(capsys, 10,
          f"nine sine transforms orthogonal ({worst_orth:.2e}) and "
          f"diagonalizing ({worst_diag:.2e}) for n in 2..16; grid ordering "
          f"verified for n in 1..100", ok)
