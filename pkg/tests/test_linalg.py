import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from srgkit.exactnum import MixedFieldsError, quad_make, quad_sign
from srgkit.linalg import AsymmetricInput, ExactMatrix, ldlt_psd

SQ5 = quad_make(0, 1, 5)


def rand_matrix(rng: random.Random, n: int, d: int = 0, symmetric: bool = False) -> ExactMatrix:
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if symmetric and j < i:
                rows[i][j] = rows[j][i]
                continue
            a = F(rng.randint(-9, 9), rng.randint(1, 4))
            b = F(rng.randint(-9, 9), rng.randint(1, 4)) if d else 0
            rows[i][j] = quad_make(a, b, d)
    return ExactMatrix.from_entries(rows)


class TestBasics:
    def test_identity_and_zero(self):
        assert ExactMatrix.identity(3) @ ExactMatrix.identity(3) == ExactMatrix.identity(3)
        assert ExactMatrix.zeros(3).is_zero()

    def test_entries_round_trip(self):
        m = ExactMatrix.from_entries([[1, F(1, 2)], [SQ5, -SQ5 + 1]])
        assert m[0, 1] == F(1, 2) and m[1, 0] == SQ5 and m[1, 1] == 1 - SQ5

    def test_mixed_fields_rejected(self):
        with pytest.raises(MixedFieldsError):
            ExactMatrix.from_entries([[quad_make(0, 1, 2), 0], [0, SQ5]])

    def test_non_square(self):
        with pytest.raises(ValueError):
            ExactMatrix.from_entries([[1, 2]])

    def test_pullback_index_error(self):
        with pytest.raises(IndexError):
            ExactMatrix.identity(2).pullback([0, 2])

    def test_matmul_against_numpy(self):
        rng = random.Random(5)
        for d in (0, 5):
            a, b = rand_matrix(rng, 5, d), rand_matrix(rng, 5, d)
            assert np.allclose(np.array((a @ b).to_float()), np.array(a.to_float()) @ np.array(b.to_float()))


@given(st.integers(min_value=0, max_value=10**6), st.sampled_from([0, 2, 5]), st.integers(1, 6))
def test_trace_identity(seed, d, n):
    """tr(M^T N) = sum(M o N) exactly."""
    rng = random.Random(seed)
    m, nmat = rand_matrix(rng, n, d), rand_matrix(rng, n, d)
    assert (m.transpose() @ nmat).trace() == m.hadamard(nmat).total()


class TestLdlt:
    def test_identity(self):
        r = ldlt_psd(ExactMatrix.identity(5))
        assert r.is_psd and r.rank == 5

    def test_diag_witness(self):
        r = ldlt_psd(ExactMatrix.from_entries([[1, 0], [0, -1]]))
        assert not r.is_psd
        assert r.witness == [0, 1]
        assert r.witness_value == -1

    def test_asymmetric(self):
        with pytest.raises(AsymmetricInput):
            ldlt_psd(ExactMatrix.from_entries([[1, 1], [0, 1]]))

    def test_zero_pivot_with_nonzero_column(self):
        m = ExactMatrix.from_entries([[0, 1], [1, 0]])
        r = ldlt_psd(m)
        assert not r.is_psd and quad_sign(m.quadform(r.witness)) < 0

    def test_irrational_not_psd_has_rational_witness(self):
        # eigenvalues 1 +- sqrt5 * 1, one negative
        m = ExactMatrix.from_entries([[1, SQ5], [SQ5, 1]])
        r = ldlt_psd(m)
        assert not r.is_psd
        assert all(isinstance(x, F) for x in r.witness)
        assert quad_sign(m.quadform(r.witness)) < 0

    def test_random_against_eigenvalues(self):
        rng = random.Random(11)
        for trial in range(150):
            n = rng.randint(1, 6)
            d = rng.choice([0, 0, 2, 5])
            # Gram matrices are PSD; symmetric random ones usually are not
            if trial % 2:
                b = rand_matrix(rng, n, d)
                m = b.transpose() @ b
            else:
                m = rand_matrix(rng, n, d, symmetric=True)
            r = ldlt_psd(m)
            ev = np.linalg.eigvalsh(np.array(m.to_float()))
            if r.is_psd:
                assert ev.min() > -1e-9
            else:
                assert quad_sign(m.quadform(r.witness)) < 0
                assert ev.min() < 1e-9
