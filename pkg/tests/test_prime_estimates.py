import math
from fractions import Fraction

import numpy as np
import pytest

from helpers import float_T
from signfourier.prime_estimates import (
    OrbitMeasure,
    Spectrum,
    analyze_modulus,
    analyze_pair,
    class_distance,
    erdos_turan_best,
    erdos_turan_bound,
    half_arc_fourier_coeff,
    main_term,
    main_term_envelope,
    overlap_count,
    reconstruct_sigma,
    sign_product_line_integral,
)


def test_class_distance_and_main_term():
    assert class_distance(1, 3, 101) == 3
    assert class_distance(3, 9, 101) == 3
    assert class_distance(1, 100, 101) == 1
    assert main_term(1, 3, 101) == Fraction(101, 3)
    assert main_term(2, 6, 101) == Fraction(101, 3)
    assert main_term(1, 2, 101) == 0
    with pytest.raises(ValueError):
        main_term(1, 3, 100)


def test_main_term_envelope_values():
    assert main_term_envelope(1) == 10
    assert main_term_envelope(3) == 22


def test_line_integral_magnitude_and_signed():
    phis = [sign_product_line_integral(s) for s in range(1, 8)]
    assert phis == [1, 0, Fraction(1, 3), 0, Fraction(1, 5), 0, Fraction(1, 7)]
    signed = [sign_product_line_integral(s, signed=True) for s in (1, 3, 5, 7, 9)]
    assert signed == [1, Fraction(-1, 3), Fraction(1, 5), Fraction(-1, 7), Fraction(1, 9)]
    with pytest.raises(ValueError):
        sign_product_line_integral(0)


def test_line_integral_tracks_raw_correlation():
    # the signed integral is the n -> inf limit of T(1, d)/n, sign included
    n = 1009
    for d in (3, 5, 7, 9, 11):
        t = float_T(1, d, n)
        phi = float(sign_product_line_integral(d, signed=True))
        assert t * phi > 0
        assert abs(t / n - phi) <= (6 * d + 4) / n


def test_main_term_is_n_times_line_integral():
    for n in (101, 499):
        for d in (1, 2, 3, 4, 5, 7, 25):
            assert n * sign_product_line_integral(d) == main_term(1, d, n)


def test_overlap_count_frozen():
    assert overlap_count(1, 3, 101) == 16
    assert overlap_count(2, 6, 101) == 16  # class invariance
    assert overlap_count(1, 1, 101) == 50  # identity map keeps the whole run


def test_overlap_matches_atom_count_in_the_half_arc():
    # A = m * mu(J) exactly: atoms strictly inside (1/4, 3/4)
    for r in (1, 2, 3, 17, 50, 100):
        mu = OrbitMeasure.for_pair(1, r, 101)
        inside = sum(1 for x in mu.atoms() if Fraction(1, 4) < x < Fraction(3, 4))
        assert inside == overlap_count(1, r, 101)


def test_orbit_measure_shape():
    mu = OrbitMeasure.for_pair(1, 3, 101)
    assert (mu.n, mu.r, mu.k0, mu.m) == (101, 3, 25, 50)
    atoms = mu.atoms()
    assert len(atoms) == 50
    assert atoms[0] == Fraction(3 * 26 % 101, 101)
    assert all(0 <= x < 1 for x in atoms)


def test_fourier_exact_at_wrapped_frequencies():
    mu = OrbitMeasure.for_pair(1, 3, 101)
    assert mu.fourier_direct(101) == 1.0 + 0.0j
    assert mu.fourier_closed(101) == 1.0 + 0.0j
    assert mu.fourier_closed_many(np.array([101, 202]))[0] == 1.0 + 0.0j
    assert mu.fourier_bound(101) == math.inf
    assert mu.fourier_direct(0) == 1.0 + 0.0j


def test_spectrum_closed_matches_direct():
    for r in (1, 3, 50, 100):
        mu = OrbitMeasure.for_pair(1, r, 101)
        spec = Spectrum.compute(mu, 100)
        direct = np.array([mu.fourier_direct(int(l)) for l in spec.ls])
        assert np.abs(spec.values - direct).max() <= 1e-10
        assert (np.abs(spec.values) <= spec.bounds + 1e-12).all()


def test_erdos_turan_bound_shape():
    b1 = erdos_turan_bound(1, 1, 101, 1)
    assert math.isclose(b1, 101 * (2.0 / 3.0 + 12.0), rel_tol=1e-12)
    with pytest.raises(ValueError):
        erdos_turan_bound(1, 1, 101, 0)
    # n | l r inside the truncation makes the bound vacuous
    assert erdos_turan_bound(1, 1, 3, 3) == math.inf


def test_erdos_turan_best_bounds_sigma():
    from signfourier.signs import sigma_exact

    for r in (1, 2, 3, 17, 50):
        m, bound = erdos_turan_best(1, r, 101)
        assert 1 <= m <= 50
        assert bound <= erdos_turan_bound(1, r, 101, 25)
        assert bound + 4 >= sigma_exact(1, r, 101).sigma


def test_half_arc_coeffs_frozen():
    assert half_arc_fourier_coeff(0) == 0.5
    assert half_arc_fourier_coeff(2) == 0.0
    assert half_arc_fourier_coeff(-4) == 0.0
    assert half_arc_fourier_coeff(1) == -1.0 / math.pi
    assert half_arc_fourier_coeff(3) == 1.0 / (3.0 * math.pi)
    assert half_arc_fourier_coeff(-3) == 1.0 / (3.0 * math.pi)
    assert half_arc_fourier_coeff(5) == -1.0 / (5.0 * math.pi)


def test_half_arc_coeffs_match_quadrature():
    # midpoint rule on the defining integral over (1/4, 3/4)
    x = 0.25 + (np.arange(200_000) + 0.5) / 400_000.0
    for l in (0, 1, 2, 3, 5, 8):
        numeric = np.mean(np.cos(2.0 * np.pi * l * x)) * 0.5
        assert abs(numeric - half_arc_fourier_coeff(l)) < 1e-9
        assert abs(np.mean(np.sin(2.0 * np.pi * l * x))) < 1e-9


def test_reconstruction_hits_bridge_target():
    mu = OrbitMeasure.for_pair(1, 3, 101)
    target = abs(4 * overlap_count(1, 3, 101) - 101)
    assert target == 37
    fejer = reconstruct_sigma(mu, 10**5, "fejer")
    assert abs(fejer - target) <= 2.0
    raw = reconstruct_sigma(mu, 10**5, "raw")
    assert math.isfinite(raw) and raw > 0
    assert raw != fejer  # distinct routes stay distinct


def test_reconstruct_validation():
    mu = OrbitMeasure.for_pair(1, 3, 101)
    with pytest.raises(ValueError):
        reconstruct_sigma(mu, 10, "velvet")
    with pytest.raises(ValueError):
        reconstruct_sigma(mu, 0)


def test_analyze_pair_report():
    rep = analyze_pair(1, 3, 101, ell_max=1000)
    assert (rep.n, rep.a, rep.b, rep.d) == (101, 1, 3, 3)
    assert rep.sigma == 35
    assert rep.overlap == 16
    assert rep.est1_main == Fraction(101, 3)
    assert rep.est1_residual == 35 - Fraction(101, 3)
    assert abs(rep.est1_residual) <= main_term_envelope(3)
    assert [e["L"] for e in rep.est3] == [100, 100, 1000, 1000]
    assert {e["smoothing"] for e in rep.est3} == {"fejer", "raw"}
    d = rep.to_dict()
    assert d["et_best"]["m"] >= 1 and d["sigma"] == 35
    with pytest.raises(ValueError):
        analyze_pair(0, 3, 101)


def test_analyze_modulus_clean_at_101():
    reports, violations = analyze_modulus(101, max_d=10, ell_max=1000)
    assert violations == []
    assert [r.d for r in reports] == list(range(1, 11))
