import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from uncq import linalg, states
from uncq.errors import NotDensity, ParameterOutOfRange, SpecParseError, UnphysicalParameters
from uncq.linalg import I2, I4, PAULIS, kron
from uncq.verify import BELL_SIGNS


def pauli_expansion(c):
    """Oracle: rebuild a diagonal-correlation state from its Pauli expansion."""
    m = np.eye(4, dtype=complex)
    for ci, s in zip(c, PAULIS):
        m = m + ci * np.kron(s, s)
    return m / 4


class TestBell:
    def test_phi_plus_entries(self):
        m = states.bell("phi+").matrix
        expected = np.zeros((4, 4))
        for i in (0, 3):
            for j in (0, 3):
                expected[i, j] = 0.5
        assert_allclose(m, expected, atol=1e-15)

    @pytest.mark.parametrize("kind", ["phi+", "phi-", "psi+", "psi-"])
    def test_pure_and_maximally_entangled(self, kind):
        rho = states.bell(kind)
        assert_allclose(rho.matrix @ rho.matrix, rho.matrix, atol=1e-14)
        assert_allclose(rho.marginal("A"), I2 / 2, atol=1e-15)
        assert_allclose(rho.marginal("B"), I2 / 2, atol=1e-15)

    def test_unknown(self):
        with pytest.raises(ParameterOutOfRange):
            states.bell("chi")


class TestBellDiagonal:
    def test_endpoints(self):
        assert_allclose(states.bell_diagonal_mix(1).matrix, states.bell("phi+").matrix)
        assert_allclose(states.bell_diagonal_mix(0).matrix, states.bell("psi-").matrix)

    def test_half_spectrum(self):
        w = linalg.eigvalsh(states.bell_diagonal_mix(0.5).matrix)
        assert_allclose(w, [0, 0, 0.5, 0.5], atol=1e-14)

    @pytest.mark.parametrize("p", np.linspace(0, 1, 11))
    def test_correlations(self, p):
        # oracle: t = p * diag(1,-1,1) + (1-p) * diag(-1,-1,-1) from the Bell signs
        t = states.correlation_data(states.bell_diagonal_mix(p)).t
        assert_allclose(t, np.diag([2 * p - 1, -1, 2 * p - 1]), atol=1e-12)

    @pytest.mark.parametrize("p", [-0.1, 1.5])
    def test_range(self, p):
        with pytest.raises(ParameterOutOfRange):
            states.bell_diagonal_mix(p)


class TestMMM:
    def test_maximally_mixed(self):
        assert_allclose(states.mmm(0, 0, 0).matrix, I4 / 4)

    def test_phi_plus(self):
        assert_allclose(states.mmm(1, -1, 1).matrix, states.bell("phi+").matrix, atol=1e-15)
        assert_allclose(pauli_expansion((1, -1, 1)), states.bell("phi+").matrix, atol=1e-15)

    def test_unphysical_names_eigenvalue(self):
        with pytest.raises(UnphysicalParameters, match=r"\(1-c1-c2-c3\)/4"):
            states.mmm(1, 1, 1)

    def test_mmm_example_correlations(self, mmm_example):
        cd = states.correlation_data(mmm_example)
        assert_allclose(cd.t, np.diag([0.5, -0.2, -0.3]), atol=1e-12)
        assert_allclose(cd.bloch_a, 0, atol=1e-12)
        assert_allclose(cd.bloch_b, 0, atol=1e-12)

    def test_marginals_random(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            c = rng.dirichlet(np.ones(4)) @ BELL_SIGNS
            rho = states.mmm(*c)
            assert_allclose(rho.marginal("A"), I2 / 2, atol=1e-12)
            assert_allclose(rho.marginal("B"), I2 / 2, atol=1e-12)
            assert_allclose(states.correlation_data(rho).t, np.diag(c), atol=1e-12)


class TestWerner:
    def test_endpoints(self):
        assert_allclose(states.werner(0).matrix, I4 / 4)
        assert_allclose(states.werner(1).matrix, states.bell("psi-").matrix, atol=1e-15)

    def test_spectrum(self):
        assert_allclose(linalg.eigvalsh(states.werner(0.5).matrix),
                        [0.125, 0.125, 0.125, 0.625], atol=1e-14)

    @pytest.mark.parametrize("p", np.linspace(0, 1, 21))
    def test_is_isotropic_mmm(self, p):
        assert_allclose(states.werner(p).matrix, states.mmm(-p, -p, -p).matrix, atol=1e-12)

    def test_range(self):
        with pytest.raises(ParameterOutOfRange):
            states.werner(-0.2)


class TestRandom:
    def test_deterministic(self):
        assert np.array_equal(states.random_density(42).matrix, states.random_density(42).matrix)

    def test_distinct_seeds(self):
        assert not np.allclose(states.random_density(1).matrix, states.random_density(2).matrix)

    def test_1000_seeds_psd(self):
        worst = min(linalg.eigvalsh(states.random_density(s).matrix)[0] for s in range(1000))
        assert worst >= -1e-12

    @given(st.integers(min_value=0, max_value=2**63))
    def test_valid(self, seed):
        rho = states.random_density(seed)
        assert linalg.is_density(rho.matrix, 1e-9)
        assert abs(np.trace(rho.matrix) - 1) < 1e-12


class TestCorrelationData:
    def test_singlet(self):
        assert_allclose(states.correlation_data(states.bell("psi-")).t, -np.eye(3), atol=1e-15)

    def test_maximally_mixed(self):
        cd = states.correlation_data(states.maximally_mixed())
        for part in cd:
            assert_allclose(part, 0, atol=1e-15)

    def test_bounded(self):
        for s in range(50):
            cd = states.correlation_data(states.random_density(s))
            for part in cd:
                assert np.all(np.abs(part) <= 1 + 1e-9)

    def test_product_state(self):
        ra = 0.5 * (I2 + 0.3 * PAULIS[0])
        rb = 0.5 * (I2 - 0.6 * PAULIS[2])
        cd = states.correlation_data(states.product_state(ra, rb))
        assert_allclose(cd.bloch_a, [0.3, 0, 0], atol=1e-15)
        assert_allclose(cd.bloch_b, [0, 0, -0.6], atol=1e-15)
        assert_allclose(cd.t, np.outer([0.3, 0, 0], [0, 0, -0.6]), atol=1e-15)


class TestTwoQubitState:
    def test_immutable(self):
        rho = states.werner(0.2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1

    def test_rejects_non_density(self):
        with pytest.raises(NotDensity):
            states.TwoQubitState(np.diag([1.2, -0.2, 0, 0]), "bad")
        with pytest.raises(NotDensity):
            states.TwoQubitState(np.eye(2) / 2, "small")


class TestParseState:
    @pytest.mark.parametrize("spec, expected", [
        ("bell:phi+", lambda: states.bell("phi+")),
        ("belldiag:p=0.3", lambda: states.bell_diagonal_mix(0.3)),
        ("mmm:c1=0.5,c2=-0.2,c3=-3e-1", lambda: states.mmm(0.5, -0.2, -0.3)),
        ("mmm:c3=-0.3,c1=.5,c2=-0.2", lambda: states.mmm(0.5, -0.2, -0.3)),
        ("werner:p=+1E-1", lambda: states.werner(0.1)),
        ("random:seed=7", lambda: states.random_density(7)),
    ])
    def test_valid(self, spec, expected):
        assert_allclose(states.parse_state(spec).matrix, expected().matrix)

    @pytest.mark.parametrize("spec, token", [
        ("ghz:n=3", "ghz"),
        ("bell:phi", "phi"),
        ("belldiag:q=0.3", "q=0.3"),
        ("werner:p=abc", "abc"),
        ("mmm:c1=0.5,c2=0.1", "mmm:c1=0.5,c2=0.1"),
        ("random:seed=-1", "-1"),
        ("werner", "werner"),
    ])
    def test_errors_name_token(self, spec, token):
        with pytest.raises(SpecParseError) as info:
            states.parse_state(spec)
        assert info.value.token == token

    def test_unphysical_is_not_parse_error(self):
        with pytest.raises(UnphysicalParameters):
            states.parse_state("mmm:c1=1,c2=1,c3=1")
