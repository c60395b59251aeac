"""End-to-end acceptance gate.

One test per criterion; each prints a single pass line so the suite
reads as a checklist under ``pytest -v -s``.
"""

import math
import time

import numpy as np
import pytest

from tvd import (
    DEFAULT_TOLERANCES,
    MINUS_IDENTITY,
    NO_CONCLUSION,
    VIOLATION,
    SymmetryTransform,
    amplitude_pair,
    conjugation,
    cpt_link_inference,
    edm_model,
    invariance_margin,
    kaon_decay_scattering_model,
    kramers_square,
    mat_exp,
    parse_scenario,
    probability_asymmetry,
    run_scenario,
    scattering_curie_check,
    shipped_scenario_paths,
    spectrum_clusters,
    symmetrize_invariant,
    t_symmetric_smatrix,
    unitary_curie_check,
    wigner_eckart_chain,
    wigner_principle_check,
)
from tvd.cli import main
from tvd.linalg import herm_eig, random_hermitian, random_unitary
from tvd.runner import oracle_compare
from tvd.selftest import SUITES, fact1_instances


def announce(label: str) -> None:
    print(f"PASS {label}")


def test_criterion_1_fixed_point_soundness_and_completeness():
    started = time.monotonic()
    violations = 0
    for h, r, psi, t in fact1_instances(500):
        verdict = unitary_curie_check(h, r, psi, t)
        if verdict.outcome == VIOLATION:
            violations += 1
            assert invariance_margin(r, h).value > 1e-6
    assert violations > 0

    for i in range(1000):
        rng = np.random.default_rng(90_000 + i)
        dim = 2 + i % 5
        raw = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        h = (raw + raw.conj().T) / 2
        signs = np.where(np.arange(dim) % 2 == 0, 1.0, -1.0)
        r = SymmetryTransform(np.diag(signs).astype(complex), antilinear=False, label="R")
        h = symmetrize_invariant(h, r)
        psi = np.zeros(dim, dtype=complex)
        psi[int(rng.integers(dim))] = 1.0
        verdict = unitary_curie_check(h, r, psi, float(rng.uniform(-5, 5)))
        assert verdict.outcome != VIOLATION, f"false positive at trial {i}"

    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"criterion 1 took {elapsed:.1f}s"
    announce(
        "criterion 1: 500 seeded checks sound, 1000 symmetrized checks clean "
        f"({elapsed:.2f}s)"
    )


def test_criterion_2_decay_leakage_margins():
    model = kaon_decay_scattering_model(0.2)
    verdict = scattering_curie_check(model.smatrix, model.cp, model.psi_in, model.psi_out)
    assert verdict.outcome == VIOLATION
    assert abs(verdict.margin - 0.2) <= 1e-12

    cp = model.cp.unitary_part
    commutator_norm = float(np.linalg.norm(cp @ model.smatrix - model.smatrix @ cp))
    assert abs(commutator_norm - 2.0 * math.sqrt(2.0) * 0.2) <= 1e-12

    clean = kaon_decay_scattering_model(0.0)
    verdict0 = scattering_curie_check(clean.smatrix, clean.cp, clean.psi_in, clean.psi_out)
    assert verdict0.outcome == NO_CONCLUSION
    assert verdict0.margin <= 1e-12
    announce(
        "criterion 2: leakage 0.2 gives margin 0.2 and commutator 2*sqrt(2)*0.2; "
        "zero leakage stays silent"
    )


def test_criterion_3_amplitude_comparison_both_directions():
    started = time.monotonic()
    s = np.array([[0.0, 1.0j], [1.0, 0.0]], dtype=complex)
    pair = amplitude_pair(s, conjugation(2), np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex))
    assert abs(pair.asymmetry - math.sqrt(2.0)) <= 1e-12
    assert float(np.linalg.norm(s.conj() - s.conj().T)) > 1e-6

    worst = 0.0
    for dim in range(2, 7):
        basis = np.eye(dim, dtype=complex)
        t = conjugation(dim)
        for seed in range(100):
            smat = t_symmetric_smatrix(dim, seed=1000 * dim + seed)
            for a in range(dim):
                for b in range(dim):
                    pair = amplitude_pair(smat, t, basis[a], basis[b])
                    worst = max(worst, pair.asymmetry)
    assert worst <= 1e-10

    elapsed = time.monotonic() - started
    assert elapsed < 5.0, f"criterion 3 took {elapsed:.1f}s"
    announce(
        f"criterion 3: skewed swap asymmetry sqrt(2), 500 symmetric S-matrices "
        f"balance to {worst:.2e} ({elapsed:.2f}s)"
    )


def test_criterion_4_forced_even_degeneracy():
    started = time.monotonic()
    checked = 0
    for i in range(200):
        dim = (2, 4, 6)[i % 3]
        rng_seed = 70_000 + i
        h = random_hermitian(dim, seed=rng_seed)
        u = np.kron(np.eye(dim // 2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
        t = SymmetryTransform(u.astype(complex), antilinear=True, label="T")
        assert kramers_square(t).classification == MINUS_IDENTITY
        h = symmetrize_invariant(h, t)
        decomp = herm_eig(h)
        clusters = spectrum_clusters(decomp.eigenvalues)
        assert all(m % 2 == 0 for m in clusters.multiplicities), f"odd cluster at trial {i}"
        checked += 1
    assert checked == 200
    elapsed = time.monotonic() - started
    assert elapsed < 5.0, f"criterion 4 took {elapsed:.1f}s"
    announce(f"criterion 4: 200 commuting minus-square transforms force even clusters ({elapsed:.2f}s)")


def test_criterion_5_dipole_suite():
    axes = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    for j in (0.5, 1.0, 1.5):
        for gval in (0.1, 1.0):
            for axis in axes:
                model = edm_model(j, 1.0, gval, axis, 0.05)
                t = model.spin.time_reversal
                verdict = wigner_principle_check(model.hamiltonian, t)
                assert verdict.outcome == VIOLATION, (j, gval, axis)
                assert invariance_margin(t, model.hamiltonian).value > 1e-6
                for record in wigner_eckart_chain(model):
                    assert record.dipole_eq_residual <= 1e-10
                    assert record.transport_residual <= 1e-10
                    assert record.reversed_eq_residual <= 1e-10
        free = edm_model(j, 1.0, 0.0, (0.0, 0.0, 1.0), 0.05)
        assert invariance_margin(free.spin.time_reversal, free.hamiltonian).value <= 1e-9
    announce("criterion 5: 18 dipole models violate with verified proportionality chains")


def test_criterion_6_two_channel_identity_and_golden_three_channel():
    for i in range(1000):
        u = random_unitary(2, seed=80_000 + i)
        assert abs(abs(u[0, 1]) - abs(u[1, 0])) <= 1e-12
    g = np.array([[0, 1j, 1], [-1j, 0, 1], [1, 1, 0]], dtype=complex)
    s = mat_exp(g, -1.0j)
    asymmetry = probability_asymmetry(
        s, np.array([1.0, 0, 0], dtype=complex), np.array([0, 1.0, 0], dtype=complex)
    )
    assert asymmetry > 1e-3
    assert asymmetry == pytest.approx(0.881806485572118, abs=1e-12)
    announce(
        "criterion 6: 1000 two-channel magnitudes match; "
        f"three-channel asymmetry {asymmetry:.15f}"
    )


def test_criterion_7_cpt_link_toy():
    h = np.array([[1.0, 1.0j], [-1.0j, 1.0]], dtype=complex)
    sigma_x = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    cpt = SymmetryTransform(sigma_x, antilinear=True, label="CPT")
    cp = SymmetryTransform(sigma_x, antilinear=False, label="CP")
    verdict = cpt_link_inference(invariance_margin(cpt, h), invariance_margin(cp, h))
    assert verdict.outcome == VIOLATION
    assert verdict.violated_symmetry == "T"
    direct = invariance_margin(conjugation(2, label="T"), h)
    assert direct.value > 1e-6
    announce(
        f"criterion 7: CPT+CP inference yields Violation(T), direct margin {direct.value:.6f}"
    )


def test_criterion_8_cli_determinism_oracle_and_selftest(capsysbinary):
    paths = sorted(shipped_scenario_paths().values())

    def run_check(jobs: int) -> bytes:
        argv = ["check"] + [x for p in paths for x in ("--scenario", str(p))] + ["--jobs", str(jobs)]
        assert main(argv) == 0
        return capsysbinary.readouterr().out

    first = run_check(1)
    second = run_check(1)
    threaded = run_check(4)
    assert first == second
    assert first == threaded

    for path in paths:
        scenario = parse_scenario(path.read_bytes())
        tol = scenario.effective_tolerances()
        report = run_scenario(scenario, tol)
        records = oracle_compare(scenario, report, tol)
        assert all(rec.agreed for rec in records), path.name

    started = time.monotonic()
    for name, suite in SUITES.items():
        result = suite(DEFAULT_TOLERANCES)
        assert result.ok, f"suite {name} failed: {result.failures}"
    elapsed = time.monotonic() - started
    assert elapsed < 60.0, f"selftest took {elapsed:.1f}s"
    announce(
        f"criterion 8: byte-identical reports across runs and jobs, zero oracle "
        f"disagreements, selftest in {elapsed:.1f}s"
    )
