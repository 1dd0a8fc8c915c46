"""Closed-form matrix coefficients against the quadrature oracle, plus the
structural identities (unitarity, spectrum, symmetry, normalization)."""

import math

import numpy as np
import pytest

from repnorm.errors import NormalizationError, PreconditionError
from repnorm.group import cartan_from_x
from repnorm.reps import (CoefValue, Complementary, Discrete, Principal, coef,
                          coef_oracle, coef_vec, complementary_normalizer,
                          is_unitary, k_character, k_spectrum, parse_rep,
                          parseval_defect)

UNITARY_GRID = [
    Principal(0.0, -0.5 + 1.0j),
    Principal(0.5, -0.5 + 0.7j),
    Complementary(-0.25),
    Discrete(2),
    Discrete(3),
]

# [DERIVED] direct Gauss-formula evaluation through mpmath at 30 digits.
FROZEN_COEFS = [
    (Principal(0.0, -0.5 + 1.0j), 3, 0, 0.4,
     0.091590367699141063691 + 0.16573495107463621049j),
    (Principal(0.5, -0.5 + 0.7j), 2, 1, 0.3,
     -0.44353982047283041362 + 0.15523893716549064477j),
]


class TestClosedFormAgainstOracle:
    @pytest.mark.parametrize("r", UNITARY_GRID,
                             ids=lambda r: repr(r).replace(" ", ""))
    @pytest.mark.parametrize("x", [0.1, 0.5, 0.9])
    def test_columns_agree(self, r, x):
        base = r.ell / 2.0 if isinstance(r, Discrete) else 0.0
        m = base + (2.0 if isinstance(r, Discrete) else 2)
        coord = cartan_from_x(x)
        column, oracle_err = coef_oracle(r, m, coord, n_max=base + 24)
        peak = max(abs(v) for v in column.values())
        for n, ref in column.items():
            cv = coef(r, n, m, coord)
            assert abs(cv.value - ref) <= (
                1e-8 * max(abs(ref), 1e-6 * peak) + oracle_err + cv.err_est)

    def test_nonunitary_principal_agrees_too(self):
        # the closed form does not care about unitarity; neither may the test
        r = Principal(0.0, -0.3 + 0.4j)
        coord = cartan_from_x(0.5)
        column, oracle_err = coef_oracle(r, 0, coord, n_max=16)
        for n in (-5, -1, 0, 2, 7):
            cv = coef(r, n, 0, coord)
            assert abs(cv.value - column[n]) <= 1e-8 * abs(
                column[n]) + oracle_err + cv.err_est


class TestFrozenValues:
    @pytest.mark.parametrize("r,n,m,x,ref", FROZEN_COEFS,
                             ids=["principal-even", "principal-odd"])
    def test_frozen(self, r, n, m, x, ref):
        cv = coef(r, n, m, cartan_from_x(x))
        assert cv.value == pytest.approx(ref, rel=1e-12)


class TestStructuralIdentities:
    def test_identity_at_origin(self):
        coord = cartan_from_x(0.0)
        r = Principal(0.0, -0.5 + 1.0j)
        assert coef(r, 2, 2, coord).value == pytest.approx(1.0)
        assert abs(coef(r, 3, 2, coord).value) < 1e-14

    def test_even_parity_symmetry(self):
        # sigma = 0 is inversion-symmetric: C(n, 0) = C(-n, 0)
        r = Principal(0.0, -0.5 + 0.3j)
        coord = cartan_from_x(0.6)
        for n in (1, 4, 9):
            a = coef(r, n, 0, coord).value
            b = coef(r, -n, 0, coord).value
            assert a == pytest.approx(b, rel=1e-12)

    def test_discrete_lowest_diagonal(self):
        # the lowest vector pairs with itself as (1-x)^(ell/2)
        for ell in (2, 3, 4):
            for x in (0.2, 0.7):
                cv = coef(Discrete(ell), ell / 2.0, ell / 2.0,
                          cartan_from_x(x))
                assert cv.value == pytest.approx(
                    (1.0 - x) ** (ell / 2.0), rel=1e-13)

    def test_reducible_point_collapse(self):
        # at sigma = 1/2, lam = -1/2 the full column collapses onto
        # (-1)^n x^(n/2) sqrt(1-x)
        r = Principal(0.5, -0.5)
        for n in range(5):
            for x in (0.3, 0.8):
                cv = coef(r, n, 0, cartan_from_x(x))
                ref = (-1.0) ** n * x ** (n / 2.0) * math.sqrt(1.0 - x)
                assert cv.value == pytest.approx(ref, rel=1e-12)

    def test_coef_vec_matches_scalar(self):
        xs = np.array([0.1, 0.45, 0.88])
        for r in (Principal(0.0, -0.5 + 1.0j), Discrete(3)):
            base = r.ell / 2.0 if isinstance(r, Discrete) else 0.0
            vec = coef_vec(r, base + 5, base, xs)
            for x, v in zip(xs, vec):
                assert v == pytest.approx(
                    coef(r, base + 5, base, cartan_from_x(x)).value,
                    rel=1e-10)


class TestUnitarity:
    def test_classification(self):
        assert is_unitary(Principal(0.0, -0.5 + 2.3j))
        assert not is_unitary(Principal(0.0, -0.3))
        assert is_unitary(Complementary(-0.25))
        assert is_unitary(Discrete(2))

    @pytest.mark.parametrize("r", UNITARY_GRID,
                             ids=lambda r: repr(r).replace(" ", ""))
    def test_parseval(self, r):
        base = r.ell / 2.0 if isinstance(r, Discrete) else 0.0
        assert parseval_defect(r, base, cartan_from_x(0.5)) < 1e-6

    def test_parseval_fails_off_the_unitary_axis(self):
        # Re lam != -1/2 is not unitary; the column must not be normalized
        assert parseval_defect(Principal(0.0, -0.3), 0,
                               cartan_from_x(0.5)) > 1e-2


class TestSpectrum:
    def test_principal_parity(self):
        assert k_spectrum(Principal(0.0, -0.5 + 1.0j), 6) == [
            -6, -4, -2, 0, 2, 4, 6]
        assert k_spectrum(Principal(0.5, -0.5 + 1.0j), 6) == [
            -5, -3, -1, 1, 3, 5]

    def test_discrete_ray(self):
        assert k_spectrum(Discrete(3), 9) == [3, 5, 7, 9]

    def test_characters(self):
        assert k_character(Principal(0.5, -0.5 + 1.0j), 2) == 5
        assert k_character(Complementary(-0.25), -3) == -6
        assert k_character(Discrete(2), 4.0) == 8


class TestComplementaryNormalizer:
    def test_doubling_ratio_approaches_fourth_root_of_two(self):
        # H(k) ~ k^(2 lam + 1), so C(2n,0)/C(n,0) -> 2^((2 lam + 1)/2);
        # [DERIVED] mpmath at 30 digits for lam = -1/4, n = 4096.
        ratio = (complementary_normalizer(-0.25, 8192)
                 / complementary_normalizer(-0.25, 4096))
        assert ratio == pytest.approx(1.1892071145873953, abs=5e-10)
        assert abs(ratio - 2.0 ** 0.25) < 1e-9
        coarse = (complementary_normalizer(-0.25, 128)
                  / complementary_normalizer(-0.25, 64))
        assert abs(ratio - 2.0 ** 0.25) < abs(coarse - 2.0 ** 0.25)

    def test_positivity_guard(self):
        with pytest.raises(NormalizationError):
            complementary_normalizer(-1.4, 2)


class TestParseRep:
    def test_round_trips(self):
        assert parse_rep("principal:0:-0.5+1i") == Principal(0.0, -0.5 + 1.0j)
        assert parse_rep("principal:0.5:-0.5") == Principal(0.5, -0.5 + 0.0j)
        assert parse_rep("complementary:-0.25") == Complementary(-0.25)
        assert parse_rep("discrete:4") == Discrete(4)

    @pytest.mark.parametrize("bad", [
        "principal:0", "tempered:-0.5", "discrete:x", "principal:0:q",
    ])
    def test_rejects_malformed(self, bad):
        with pytest.raises(PreconditionError):
            parse_rep(bad)


class TestCoefValueContract:
    def test_error_estimates_are_honest(self):
        # closed form vs oracle, the reported budgets must cover the gap
        r = Principal(0.0, -0.5 + 1.0j)
        coord = cartan_from_x(0.9)
        column, oracle_err = coef_oracle(r, 0, coord, n_max=32)
        for n in (0, 8, 31):
            cv = coef(r, n, 0, coord)
            assert isinstance(cv, CoefValue)
            assert abs(cv.value - column[n]) <= 50.0 * (
                cv.err_est + oracle_err) + 1e-13 * abs(column[n])
