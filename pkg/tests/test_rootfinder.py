"""Root solver: closed-form small cases, eigenvalue oracles, certification."""

from fractions import Fraction

import numpy as np
import pytest
from mpmath import mp, mpc, mpf

from lemnizeros.exact import build_polynomial
from lemnizeros.numerics import PrecisionConfig, PrecisionExhaustedError, to_mpc
from lemnizeros.rootfinder import (
    CertificationError,
    certify,
    find_roots,
    initial_points,
    rootset_csv,
    solve_complex_poly,
)

BITS = 128


def _match_greedily(found, expected):
    """Pair each expected root with its nearest unused computed root and
    return the largest pairing distance."""
    found = list(found)
    worst = 0.0
    for e in expected:
        j = min(range(len(found)), key=lambda i: abs(complex(found[i]) - complex(e)))
        worst = max(worst, abs(complex(found.pop(j)) - complex(e)))
    return worst


def _companion_eigenvalues_mp(n: int, bits: int = 192):
    """Independent oracle: eigenvalues of the companion matrix via mpmath's
    QR code, nothing shared with the Aberth path."""
    p = build_polynomial(n)
    with mp.workprec(bits):
        monic = [to_mpc(c / p.coefficients[n], bits) for c in p.coefficients]
        A = mp.zeros(n)
        for i in range(1, n):
            A[i, i - 1] = 1
        for i in range(n):
            A[i, n - 1] = -monic[i]
        return mp.eig(A, left=False, right=False)


class TestInitialPoints:
    def test_count_and_distinct(self):
        pts = initial_points(4)
        assert len(pts) == 4
        assert len({(str(p.real), str(p.imag)) for p in pts}) == 4

    @pytest.mark.parametrize("n", [2, 3, 10, 50])
    def test_inside_containment_disk(self, n):
        for p in initial_points(n):
            assert abs(p) < n + 1

    def test_centroid_matches_vieta_mean(self):
        pts = initial_points(2)
        mean = sum(pts) / 2
        assert abs(mean - mpf(7) / 5) < 1e-30  # -c_1/(2 c_2) = 1.4

    def test_degree_one_sits_on_the_root(self):
        assert initial_points(1) == [mpc(2)]


class TestFindRoots:
    def test_degree_one(self):
        rs = find_roots(build_polynomial(1))
        assert len(rs.roots) == 1
        assert abs(rs.roots[0] - 2) < 1e-30
        assert rs.inclusion_radii[0] < 1e-30

    def test_degree_two_quadratic_formula(self):
        rs = find_roots(build_polynomial(2))
        with mp.workprec(192):
            y = mp.sqrt(mpf(7) / 3 - mpf(49) / 25)
            expected = [mpc(mpf(7) / 5, -y), mpc(mpf(7) / 5, y)]
            assert _match_greedily(rs.roots, expected) < 1e-30
            for z in rs.roots:
                assert abs(abs(z) ** 2 - mpf(7) / 3) < 1e-12
        assert all(r < mpf("1e-20") for r in rs.inclusion_radii)

    def test_degree_three_companion_oracle(self):
        rs = find_roots(build_polynomial(3))
        oracle = _companion_eigenvalues_mp(3)
        assert _match_greedily(rs.roots, oracle) < 1e-10

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_numpy_companion_oracle(self, n):
        # double-precision eigenvalues are trustworthy only at small degree
        p = build_polynomial(n)
        coeffs = [float(c) for c in p.coefficients[::-1]]
        oracle = np.roots(coeffs)
        rs = find_roots(p)
        assert _match_greedily(rs.roots, oracle) < 1e-8

    @pytest.mark.parametrize("n", [5, 9, 16])
    def test_vieta_sum_and_product(self, n):
        p = build_polynomial(n)
        rs = find_roots(p)
        with mp.workprec(rs.precision_used):
            total = sum(rs.roots)
            prod = mpc(1)
            for z in rs.roots:
                prod *= z
            want_sum = to_mpc(-p.coefficients[n - 1] / p.coefficients[n], rs.precision_used)
            want_prod = to_mpc(
                (-1) ** n * p.coefficients[0] / p.coefficients[n], rs.precision_used
            )
            assert abs(total - want_sum) < 1e-10 * abs(want_sum)
            assert abs(prod - want_prod) < 1e-10 * abs(want_prod)

    @pytest.mark.parametrize("n", [3, 12, 25])
    def test_certified_structure(self, n):
        rs = find_roots(build_polynomial(n))
        assert len(rs.roots) == n
        assert rs.disks_disjoint()
        assert rs.conjugation_closed()
        with mp.workprec(rs.precision_used):
            assert all(abs(z) + r < n + 1 for z, r in zip(rs.roots, rs.inclusion_radii))
            assert max(abs(z) - r for z, r in zip(rs.roots, rs.inclusion_radii)) > 1

    def test_warm_start_agrees_with_cold(self):
        p = build_polynomial(7)
        cold = find_roots(p)
        prev = find_roots(build_polynomial(6))
        with mp.workprec(prev.precision_used):
            start = list(prev.roots) + [mpc(1, mpf(1) / 7)]
        warm = find_roots(p, start=start)
        assert _match_greedily(warm.roots, cold.roots) < 1e-25

    def test_wrong_start_length_rejected(self):
        with pytest.raises(ValueError):
            find_roots(build_polynomial(3), start=[mpc(1)])

    def test_precision_exhausted(self):
        cfg = PrecisionConfig(bits=64, max_bits=64)
        with pytest.raises(PrecisionExhaustedError) as err:
            find_roots(build_polynomial(24), cfg)
        assert "64" in str(err.value)


class TestCertify:
    def test_perturbed_root_radius_reflects_error(self):
        rs = find_roots(build_polynomial(2))
        with mp.workprec(rs.precision_used):
            bumped = [rs.roots[0] + mpf("1e-3"), rs.roots[1]]
        redone = certify(build_polynomial(2), bumped, rs.precision_used)
        moved = max(redone.inclusion_radii)
        assert mpf("1e-5") < moved < mpf("0.1")  # honest, not spuriously small
        assert min(redone.inclusion_radii) < mpf("1e-20")

    def test_duplicate_roots_overlap_flagged(self):
        rs = find_roots(build_polynomial(2))
        dup = [rs.roots[0], rs.roots[0]]
        redone = certify(build_polynomial(2), dup, rs.precision_used)
        assert not redone.disks_disjoint()

    def test_derivative_zero_fails(self):
        # p'(z) vanishes at z = -c_1/(2 c_2) = 1.4 for the degree-2 member
        with pytest.raises(CertificationError):
            certify(build_polynomial(2), [to_mpc(Fraction(7, 5), BITS)] * 2, BITS)

    def test_wrong_cardinality_fails(self):
        with pytest.raises(CertificationError):
            certify(build_polynomial(3), [to_mpc(1, BITS)], BITS)

    def test_rootset_passthrough(self):
        rs = find_roots(build_polynomial(4))
        again = certify(build_polynomial(4), rs)
        assert again.precision_used == rs.precision_used
        assert _match_greedily(again.roots, rs.roots) == 0


class TestCsvAndCubic:
    def test_csv_round_trips_at_128_bits(self):
        rs = find_roots(build_polynomial(2))
        text = rootset_csv(rs)
        lines = text.strip().split("\n")
        assert lines[0] == "n,j,re,im,residual,inclusion_radius"
        assert len(lines) == 3
        with mp.workprec(128):
            for line, z in zip(lines[1:], rs.roots):
                _, _, re_s, im_s, _, _ = line.split(",")
                assert mpf(re_s) == z.real
                assert mpf(im_s) == z.imag

    def test_cubic_solver(self):
        # z^3 - 2z^2 + z - 4/27 = (z - 4/3)(z - 1/3)^2
        roots = solve_complex_poly(
            [to_mpc(Fraction(-4, 27), BITS), to_mpc(1, BITS), to_mpc(-2, BITS), to_mpc(1, BITS)],
            BITS,
        )
        expected = [complex(4 / 3), complex(1 / 3), complex(1 / 3)]
        assert _match_greedily(roots, expected) < 1e-15

    def test_cubic_rejects_degenerate(self):
        with pytest.raises(ValueError):
            solve_complex_poly([to_mpc(1, BITS), to_mpc(0, BITS)], BITS)
