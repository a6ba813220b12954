import numpy as np
import pytest

from ggl import spectrum
from ggl.bounds import corollary3_check, corollary4_checks
from ggl.fixtures import load_frozen
from oracles import dft_coefficient


def test_k1_coefficients():
    # (1/2)(eps(0) +- eps(1)) with eps(0) = 1, eps(1) = -1
    assert np.allclose(spectrum.dft_direct(1).coeffs, [0, 1])
    assert spectrum.dft_product(1, 1) == pytest.approx(1)


def test_zero_coefficient_vanishes():
    for k in range(1, 13):
        assert abs(spectrum.dft_product(k, 0)) == 0
    assert abs(spectrum.dft_direct(2).coeffs[0]) < 1e-15


@pytest.mark.parametrize("k", [2, 3, 5])
def test_direct_matches_loop_oracle(k):
    coeffs = spectrum.dft_direct(k).coeffs
    assert np.allclose(coeffs, [dft_coefficient(k, r) for r in range(1 << k)], atol=1e-12)


@pytest.mark.parametrize("k", range(1, 13))
def test_product_matches_direct(k):
    assert np.abs(spectrum.dft_direct(k).coeffs - spectrum.spectrum(k).coeffs).max() <= 1e-9


def test_pointwise_product_matches_table():
    spec = spectrum.spectrum(10)
    for r in (0, 1, 5, 511, 1023):
        assert spectrum.dft_product(10, r) == pytest.approx(spec.coeffs[r], abs=1e-15)


@pytest.mark.parametrize("k", range(1, 17))
def test_parseval(k):
    assert abs(spectrum.spectrum(k).parseval - 1) <= 1e-10


@pytest.mark.parametrize("k", range(1, 13))
def test_parseval_direct(k):
    assert abs(spectrum.dft_direct(k).parseval - 1) <= 1e-10


def test_coefficient_mass_small():
    assert spectrum.coefficient_mass(1) == pytest.approx(1)
    assert spectrum.coefficient_mass(2) == pytest.approx(np.abs(spectrum.dft_direct(2).coeffs).sum())


def test_residue_class_mass_trivial_cases():
    spec = spectrum.spectrum(6)
    for a in range(64):
        assert spectrum.residue_class_mass(6, 6, a) == pytest.approx(abs(spec.coeffs[a]))
    assert spectrum.residue_class_mass(4, 0, 0) == pytest.approx(spectrum.coefficient_mass(4))
    masses = spectrum.residue_class_masses(8, 3)
    for a in range(8):
        assert masses[a] == pytest.approx(spectrum.residue_class_mass(8, 3, a))


def test_residue_class_domain():
    with pytest.raises(ValueError):
        spectrum.residue_class_mass(4, 2, 4)
    with pytest.raises(ValueError):
        spectrum.residue_class_mass(4, 5, 0)


def test_guard():
    with pytest.raises(spectrum.GuardError):
        spectrum.dft_direct(21)
    with pytest.raises(spectrum.GuardError):
        spectrum.spectrum(0)


@pytest.mark.parametrize("k", range(1, 11))
def test_hierarchy_factorization(k):
    spec = np.abs(spectrum.spectrum(k).coeffs)
    for t in range(k + 1):
        low = spectrum.coefficient_abs(t)
        for a in range(0, 1 << t, max(1, (1 << t) // 8)):
            for r2 in range(0, 1 << (k - t), max(1, (1 << (k - t)) // 8)):
                expected = low[a] * spectrum.lifted_factor(k, t, a, r2)
                assert spec[a + (r2 << t)] == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("k", range(1, 13))
def test_corollary3_frozen(k):
    assert corollary3_check(k, load_frozen()["corollary3_C"]).passed


@pytest.mark.parametrize("k", range(1, 13))
def test_corollary4_frozen(k):
    assert all(c.passed for c in corollary4_checks(k, load_frozen()["corollary4_C"]))


def test_csv_export():
    lines = spectrum.spectrum(2).to_csv().splitlines()
    assert lines[0] == "r,re,im,abs"
    assert len(lines) == 5
    r, re, im, ab = lines[2].split(",")
    assert r == "1" and float(ab) == pytest.approx(abs(spectrum.dft_product(2, 1)))
