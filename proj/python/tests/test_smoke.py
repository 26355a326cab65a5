"""Smoke tests for the designforge python module."""

import numpy as np
import pytest

import designforge as df


def test_flip_operator():
    expected = np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    )
    np.testing.assert_allclose(df.flip_operator(2), expected, atol=0)
    f3 = df.flip_operator(3)
    np.testing.assert_allclose(f3 @ f3, np.eye(9), atol=1e-15)


def test_hs_inner_and_distance():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    assert df.hs_inner(sx, sz) == pytest.approx(0.0, abs=1e-15)
    assert df.hs_inner(np.eye(2, dtype=complex), np.eye(2, dtype=complex)) == 2
    assert df.frobenius_distance_sq(sx, sx) == 0.0


def test_gell_mann_orthonormality():
    basis = df.gell_mann_set(3)
    assert len(basis) == 9
    gram = np.array([[df.hs_inner(a, b) for b in basis] for a in basis])
    np.testing.assert_allclose(gram, np.eye(9), atol=1e-12)


def test_b_and_s_ranges():
    r = df.b_range(2, 4)
    assert (r.lower, r.upper) == (0.5, 1.0)
    assert df.s_range(2, [2, 3], [1.0, 1.0]).upper == pytest.approx(1 / 3, abs=0)


def test_qubit_sic_roundtrip():
    group = df.gell_mann_set(2)[1:]
    frame = df.construct_getf(group, 1.0, 1.0, df.HVariant.Plus, df.TauSign.Pos)
    check = df.verify_getf(frame.elements)
    assert check.ok
    assert check.params.b == pytest.approx(1.0, abs=1e-12)
    assert check.params.c == pytest.approx(1 / 3, abs=1e-12)

    fit = df.fit_kappas(frame.elements)
    assert fit.verdict == df.ConicalVerdict.ConicalDesign
    params = df.conical_to_getf(frame.elements)
    assert params.gamma == pytest.approx(1.0, abs=1e-9)


def test_fixture_example3():
    fx = df.fixture("example3")
    assert fx.group_sizes == [2, 3]
    fit = df.fit_kappas(fx.operators)
    assert fit.verdict == df.ConicalVerdict.ConicalDesign
    assert fit.kappa_plus == pytest.approx(1 / 3, abs=1e-12)
    assert fit.kappa_minus == pytest.approx(1 / 6, abs=1e-12)

    profile = df.trace_profile(fx.operators, fx.group_sizes)
    assert profile.group_kappas == pytest.approx([1 / 6, 2 / 3], abs=1e-12)
    validation = df.validate_profile(profile, fit)
    assert validation.max_deviation < 1e-12

    report = df.equivalence_report(fx.grouped)
    assert report.classification == df.DesignClass.Inhomogeneous
    assert not report.groups[1].equal_traces


def test_fixture_example1_not_psd():
    fx = df.fixture("example1")
    fit = df.fit_kappas(fx.operators)
    assert fit.verdict == df.ConicalVerdict.NotPsd
    assert not df.is_psd(fx.operators[2])


def test_mu_getf_coincidence_law():
    family = df.construct_mu_getf(2, [2, 2, 2], [1.0, 1.0, 1.0], 1.0)
    assert family.f == pytest.approx(0.5, abs=1e-12)
    eq = df.equidistance(family)
    assert eq.equidistant and eq.s == pytest.approx(1.0, abs=1e-12)

    for seed in range(5):
        rho = df.random_density_matrix(2, seed)
        report = df.index_of_coincidence(family, rho)
        assert report.residual < 1e-10

    rank = df.reduced_linear_independence(family)
    assert (rank.set_size, rank.rank) == (4, 4)


def test_construct_errors_raise_frame_error():
    with pytest.raises(df.FrameError, match="B-RANGE"):
        df.getf_params(2, 4, 1.0, 0.4)
    with pytest.raises(df.FrameError, match="S-RANGE"):
        df.construct_mu_getf(2, [2, 3], [1.0, 1.0], 0.4)


def test_random_generators_deterministic():
    a = df.random_getf(2, 3)
    b = df.random_getf(2, 3)
    assert a.params.b == b.params.b
    np.testing.assert_array_equal(a.elements[0], b.elements[0])

    groups = df.random_inhomogeneous_conical_qubit(0)
    flat = [op for g in groups for op in g]
    fit = df.fit_kappas(flat)
    assert fit.verdict == df.ConicalVerdict.ConicalDesign
    report = df.equivalence_report(groups)
    assert report.classification == df.DesignClass.Inhomogeneous
