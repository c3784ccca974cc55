from fractions import Fraction as F

import pytest

from srgkit.exactnum import quad_make, quad_sign
from srgkit.fixtures import fixture
from srgkit.srg_params import (
    ImprimitiveParams,
    InfeasibleParams,
    SrgParams,
    check_feasible,
    complement_params,
    cosines,
    hoffman_bound,
    ratio_bound,
    spectrum,
)

from oracles import alpha_brute, float_spectrum

P = SrgParams


def feasible_sets(limit_n: int = 120) -> list[SrgParams]:
    """Primitive feasible sets; lambda is forced by the edge identity."""
    out = []
    for n in range(5, limit_n + 1):
        for k in range(2, n - 2):
            for mu in range(1, k):
                rest = k * (k - 1) - (n - k - 1) * mu
                if rest < 0 or rest % k:
                    continue
                p = P(n, k, rest // k, mu)
                if check_feasible(p):
                    out.append(p)
    return out


FEASIBLE = feasible_sets()


class TestFeasibility:
    @pytest.mark.parametrize("p", [P(10, 3, 0, 1), P(16, 10, 6, 6), P(16, 6, 2, 2), P(5, 2, 0, 1), P(49, 12, 5, 2)])
    def test_feasible(self, p):
        assert check_feasible(p).feasible

    def test_edge_identity_violation(self):
        rep = check_feasible(P(10, 3, 1, 1))
        assert not rep.feasible and "3 != 6" in rep.violation

    @pytest.mark.parametrize("p,frag", [(P(15, 7, 3, 3), "21/4"), (P(7, 3, 1, 1), "√2")])
    def test_fractional_multiplicity(self, p, frag):
        # edge identity holds, multiplicities do not come out integral
        assert p.k * (p.k - p.lam - 1) == (p.n - p.k - 1) * p.mu
        rep = check_feasible(p)
        assert not rep.feasible and "multiplicity" in rep.violation and frag in rep.violation

    def test_negative_complement_rejected(self):
        # edge identity and multiplicities pass, but the complement would need lambda = -1
        rep = check_feasible(P(21, 16, 12, 12))
        assert not rep.feasible and "complement" in rep.violation

    def test_spectrum_requires_feasible(self):
        with pytest.raises(InfeasibleParams):
            spectrum(P(10, 3, 1, 1))

    def test_enough_sets_found(self):
        assert len(FEASIBLE) > 100


class TestSpectrum:
    def test_petersen(self):
        s = spectrum(P(10, 3, 0, 1))
        assert (s.theta, s.tau, s.m_theta, s.m_tau) == (1, -2, 5, 4)

    def test_petersen_against_float_eigenvalues(self):
        ev = float_spectrum(fixture("petersen"))
        assert sum(abs(x - 1) < 1e-9 for x in ev) == 5
        assert sum(abs(x + 2) < 1e-9 for x in ev) == 4

    def test_16_10_6_6(self):
        assert spectrum(P(16, 10, 6, 6)).tau == -2

    def test_conference(self):
        s = spectrum(P(5, 2, 0, 1))
        assert s.theta == quad_make(F(-1, 2), F(1, 2), 5)
        assert s.tau == quad_make(F(-1, 2), F(-1, 2), 5)
        assert s.m_theta == s.m_tau == 2
        ev = float_spectrum(fixture("c5"))
        assert abs(ev[0] - float(s.tau)) < 1e-9 and abs(ev[-2] - float(s.theta)) < 1e-9

    @pytest.mark.parametrize("name", ["rook4", "clebsch", "paley13", "paley9", "shrikhande"])
    def test_fixture_spectra_match_floats(self, name):
        from srgkit.graphs import verify_srg

        g = fixture(name)
        s = spectrum(verify_srg(g).params)
        ev = float_spectrum(g)
        assert sum(abs(x - float(s.theta)) < 1e-9 for x in ev) == s.m_theta
        assert sum(abs(x - float(s.tau)) < 1e-9 for x in ev) == s.m_tau

    def test_roots_and_ordering_for_all_feasible(self):
        for p in FEASIBLE:
            s = spectrum(p)
            for x in (s.theta, s.tau):
                assert x * x + (p.mu - p.lam) * x + (p.mu - p.k) == 0
            assert quad_sign(p.k - s.theta) > 0 and quad_sign(s.theta) > 0 and quad_sign(s.tau) < 0
            assert 1 + s.m_theta + s.m_tau == p.n
            assert p.k + s.m_theta * s.theta + s.m_tau * s.tau == 0


class TestComplement:
    def test_petersen(self):
        cp, cs = complement_params(P(10, 3, 0, 1))
        assert cp == P(10, 6, 3, 4) and (cs.theta, cs.tau) == (1, -2)

    def test_c5(self):
        assert complement_params(P(5, 2, 0, 1))[0] == P(5, 2, 0, 1)

    def test_involution_on_100_sets(self):
        for p in FEASIBLE[:100]:
            cp, _ = complement_params(p)
            assert complement_params(cp)[0] == p

    def test_hoffman_ratio_relations(self):
        for p in FEASIBLE:
            cp, _ = complement_params(p)
            assert hoffman_bound(p) == p.n / ratio_bound(p)
            assert hoffman_bound(p) == ratio_bound(cp)
            assert ratio_bound(p) == hoffman_bound(cp)


class TestCosines:
    @pytest.mark.parametrize("p", [P(16, 10, 6, 6), P(26, 15, 8, 9), P(36, 20, 10, 12)])
    def test_minus_one_fifth(self, p):
        c = cosines(p)
        assert c.alpha == F(-1, 5) and c.beta == F(1, 5)

    def test_imprimitive(self):
        with pytest.raises(ImprimitiveParams):
            cosines(P(6, 4, 2, 4))

    def test_intervals(self):
        for p in FEASIBLE:
            c = cosines(p)
            assert -1 < c.alpha < 0 < c.beta < 1


class TestBounds:
    def test_hoffman(self):
        assert hoffman_bound(P(10, 3, 0, 1)) == F(5, 2)
        assert not hoffman_bound(P(10, 3, 0, 1)).is_integer
        assert hoffman_bound(P(49, 12, 5, 2)) == 7
        assert hoffman_bound(P(16, 6, 2, 2)) == 4

    def test_ratio(self):
        assert ratio_bound(P(10, 3, 0, 1)) == 4 == alpha_brute(fixture("petersen"))
        assert ratio_bound(P(16, 6, 2, 2)) == 4 == alpha_brute(fixture("rook4"))

    def test_c5_ratio_bound_is_sqrt5(self):
        r = ratio_bound(P(5, 2, 0, 1))
        assert r == quad_make(0, 1, 5)
        assert quad_sign(r - alpha_brute(fixture("c5"))) > 0
