"""End-to-end acceptance checks, one test per shipped claim.

Each test pins the published target value, the tolerance, and a runtime
budget, and prints a single summary line (visible under ``pytest -s``);
under ``pytest -v`` the per-test PASSED/FAILED line is the scoreboard.
"""

from __future__ import annotations

import json
import math
import time

import numpy as np

from entwit import (
    QuantumState,
    bell,
    block_spin,
    c_matrix,
    fock_pair_superposition,
    four_variance,
    kron,
    min_eigenvalue,
    multipartite,
    psi2_scan,
    quadratic_form,
    quadratures,
    ramanujan_witness,
    schmidt_optimal_witness,
    spin_ops,
    squeezed_vacuum,
    uffink,
    vacuum_mixture,
    variance,
    variance_product,
    variance_sum,
    verify,
    vmax_from_lambda,
)
from entwit.cli import run

from _support import (
    random_density,
    random_hermitian,
    random_separable_mixture,
    random_unit_vector,
    rng,
)


def test_criterion_01_truncated_matrix_eigenvalue(capsys):
    start = time.perf_counter()
    assert run(["cmatrix", "--n", "200"]) == 0
    elapsed = time.perf_counter() - start
    doc = json.loads(capsys.readouterr().out)
    lam = doc["results"]["lambda_min"]
    vmax = doc["results"]["vmax"]
    assert abs(lam - (-0.04495)) < 5e-4
    assert abs(vmax - 1.2192) < 1e-3
    assert elapsed < 1.0
    print(f"criterion 01 PASS: lambda_min={lam:.6f} (-0.04495 +/- 5e-4), "
          f"vmax={vmax:.5f} (1.2192 +/- 1e-3), {elapsed:.2f}s < 1s")


def test_criterion_02_two_coefficient_scan():
    start = time.perf_counter()
    result = psi2_scan(200)
    elapsed = time.perf_counter() - start
    assert abs(result.best - 1.197) < 2e-3
    assert abs(result.argbest - 0.997) < 2e-3
    assert elapsed < 1.0
    print(f"criterion 02 PASS: V={result.best:.5f} (1.197 +/- 2e-3) at "
          f"c0={result.argbest:.5f} (0.997 +/- 2e-3), {elapsed:.2f}s < 1s")


def test_criterion_03_mixture_law():
    start = time.perf_counter()
    _, coeffs = min_eigenvalue(c_matrix(5))
    q_value = quadratic_form(coeffs)
    worst = 0.0
    for p in (0.1, 0.5, 1.0):
        state = vacuum_mixture(p, coeffs, 16)
        quad = quadratures(16)
        report = variance_product(quad.x, quad.p, quad.p, quad.x, state)
        closed = 0.25 + p * q_value
        worst = max(worst, abs(report.lhs - closed))
        assert abs(report.lhs - closed) < 1e-9
        assert vmax_from_lambda(q_value, p) > 1.0
        assert report.violated
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    print(f"criterion 03 PASS: sigma product vs 1/4 + p*Q within "
          f"{worst:.2e} (< 1e-9) for p in (0.1, 0.5, 1), Vmax(p) > 1, "
          f"{elapsed:.2f}s < 5s")


def test_criterion_04_squeezed_vacuum_closed_form():
    start = time.perf_counter()
    worst = 0.0
    for lam in (0.1, 0.3, 0.5, 0.7):
        state = squeezed_vacuum(lam)          # tail-rule cutoff
        X, Y, _ = block_spin(state.dims[0])
        report = variance_product(X, Y, X, Y, state)
        closed = ((1.0 + lam * lam) / (1.0 - lam * lam)) ** 2
        worst = max(worst, abs(report.V - closed))
        assert abs(report.V - closed) < 1e-6
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(f"criterion 04 PASS: V vs ((1+l^2)/(1-l^2))^2 within {worst:.2e} "
          f"(< 1e-6) for lambda in (0.1, 0.3, 0.5, 0.7), {elapsed:.2f}s < 10s")


def test_criterion_05_schmidt_family():
    start = time.perf_counter()
    gen = rng(505)
    for _ in range(50):
        alpha = complex(gen.normal(), gen.normal())
        beta = complex(gen.normal(), gen.normal())
        norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        alpha, beta = alpha / norm, beta / norm
        *_, report = schmidt_optimal_witness(alpha, beta)
        product = abs(alpha) * abs(beta)
        assert product != 0.0
        assert report.violated
        want_lhs_sq = (1.0 - 4.0 * product**2) ** 2
        assert abs(report.lhs**2 - want_lhs_sq) < 1e-9
    for alpha, beta in ((1.0, 0.0), (0.0, 1.0)):
        *_, report = schmidt_optimal_witness(alpha, beta)
        assert not report.violated
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    print(f"criterion 05 PASS: 50 random Schmidt pairs violated with "
          f"lhs^2 = (1 - 4|ab|^2)^2, rank-1 pairs not violated, "
          f"{elapsed:.2f}s < 1s")


def test_criterion_06_bell_state_checks():
    start = time.perf_counter()
    s_x, s_y, _, _ = spin_ops()
    two = bell(2)
    rep2 = ramanujan_witness(s_x, s_y, s_x, s_y, two, 2)
    assert abs(rep2.lhs - 6.0) < 1e-9 and abs(rep2.rhs - 2.0) < 1e-9
    rep4 = ramanujan_witness(s_x, s_y, s_x, s_y, two, 4)
    assert abs(rep4.lhs - 18.0) < 1e-9 and abs(rep4.rhs - 2.0) < 1e-9
    for parties in (2, 4, 6):
        rep = multipartite([s_x] * parties, [s_y] * parties, bell(parties))
        assert abs(rep.lhs) < 1e-9
        assert abs(rep.rhs - 1.0) < 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 2.0
    print(f"criterion 06 PASS: power sums (6, 2) and (18, 2) +/- 1e-9; "
          f"multipartite lhs 0, rhs 1 for 2/4/6 parties, {elapsed:.2f}s < 2s")


def test_criterion_07_identity_suite():
    start = time.perf_counter()
    assert verify("complex_norm") is True
    assert verify("ramanujan", 2) is True
    assert verify("ramanujan", 4) is True
    assert verify("ramanujan", 1) is False
    assert verify("ramanujan", 3) is False
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    print(f"criterion 07 PASS: complex_norm true; power sum true for 2, 4 "
          f"and false for 1, 3 (exact), {elapsed:.2f}s < 1s")


def test_criterion_08_separability_soundness_sweep():
    start = time.perf_counter()
    gen = rng(808)
    checked = 0
    for block, dims in ((100, (2, 2)), (100, (8, 8))):
        for _ in range(block):
            state = random_separable_mixture(gen, dims)
            da, db = dims
            A, Ap = random_hermitian(gen, da), random_hermitian(gen, da)
            B, Bp = random_hermitian(gen, db), random_hermitian(gen, db)
            reports = (
                variance_product(A, Ap, B, Bp, state),
                variance_sum(A, Ap, B, Bp, state),
                four_variance(A, Ap, B, Bp, state),
                uffink(A, Ap, B, Bp, state),
                ramanujan_witness(A, Ap, B, Bp, state, 2),
                ramanujan_witness(A, Ap, B, Bp, state, 4),
                multipartite([A, B], [Ap, Bp], state),
            )
            for report in reports:
                assert report.delta <= 1e-9, (dims, report.name, report.delta)
                assert not report.violated
            checked += len(reports)
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    print(f"criterion 08 PASS: {checked} condition evaluations on 200 "
          f"separable mixtures, zero violations at 1e-9, {elapsed:.1f}s < 60s")


def test_criterion_09_quadratic_form_oracle_equivalence():
    start = time.perf_counter()
    gen = rng(909)
    worst = 0.0
    for _ in range(50):
        n_coeffs = int(gen.integers(1, 8))          # truncation order <= 6
        c = gen.normal(size=n_coeffs)
        c /= np.linalg.norm(c)
        state = fock_pair_superposition(c)
        dim = state.dims[0]
        quad = quadratures(dim)
        sigma_xp = math.sqrt(variance(kron(quad.x, quad.p), state))
        sigma_px = math.sqrt(variance(kron(quad.p, quad.x), state))
        numeric = sigma_xp * sigma_px
        closed = 0.25 + quadratic_form(c)
        worst = max(worst, abs(numeric - closed))
        assert abs(numeric - closed) < 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    print(f"criterion 09 PASS: numeric sigma product vs 1/4 + Q(c) within "
          f"{worst:.2e} (< 1e-9) over 50 random c, {elapsed:.2f}s < 30s")


def test_criterion_10_product_state_deviation_bound():
    start = time.perf_counter()
    gen = rng(1010)
    for trial in range(500):
        da = int(gen.integers(2, 5))
        db = int(gen.integers(2, 5))
        if trial % 2 == 0:
            vec_a = random_unit_vector(gen, da)
            vec_b = random_unit_vector(gen, db)
            state_a = QuantumState.pure(vec_a, (da,))
            state_b = QuantumState.pure(vec_b, (db,))
            joint = QuantumState.pure(np.kron(vec_a, vec_b), (da, db))
        else:
            rho_a = random_density(gen, da)
            rho_b = random_density(gen, db)
            state_a = QuantumState.mixed(rho_a, (da,))
            state_b = QuantumState.mixed(rho_b, (db,))
            joint = QuantumState.mixed(np.kron(rho_a, rho_b), (da, db))
        A = random_hermitian(gen, da)
        B = random_hermitian(gen, db)
        sigma_ab = math.sqrt(variance(kron(A, B), joint))
        sigma_a = math.sqrt(variance(A, state_a))
        sigma_b = math.sqrt(variance(B, state_b))
        assert sigma_ab >= sigma_a * sigma_b - 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(f"criterion 10 PASS: sigma_AB >= sigma_A*sigma_B - 1e-9 on 500 "
          f"random product states, {elapsed:.1f}s < 10s")
