import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from charperron import library
from charperron._config import get_tolerance, set_tolerance, tolerance
from charperron.char_table import burnside_table, dephased_f4_theta, dft_table, walsh_table
from charperron.errors import IllConditionedError, NonRealRealizationError, NotTotallyNonzeroError
from charperron.groups import build_from_generators
from charperron.perron import (
    eigenpair_transform,
    is_ideal,
    is_irreducible,
    is_perron_similarity,
    is_rhc,
    multiset_match,
    necessary_conditions,
    parse_spectrum,
    realize,
    reduced_inequalities,
    redundancy_certificate,
    rescale_stochastic,
    row_cone_membership,
    spectracone_membership,
    spectratope_membership,
    structure_check,
)

H2 = np.array([[1.0, 1], [1, -1]])
H4 = np.kron(H2, H2)
S_EXAMPLE = np.array([[1.0, 1], [2, -2]])


@pytest.fixture(scope="module")
def sym3():
    return burnside_table(build_from_generators(["(1 2)", "(1 2 3)"]))


@pytest.fixture(scope="module")
def h4():
    return walsh_table(4)


def rhc_oracle(A):
    """Scan every Hadamard product of two rows against a direct row-cone solve."""
    Ainv = np.linalg.inv(A)
    for i in range(len(A)):
        for j in range(len(A)):
            y = (A[i] * A[j]) @ Ainv
            if np.abs(y.imag).max() > 1e-9 or y.real.min() < -1e-9:
                return False
    return True


class TestRealize:
    def test_identity(self, sym3):
        assert np.allclose(realize(sym3, [1, 1, 1]).m, np.eye(3))

    def test_e1(self, sym3):
        want = np.array([[1, 1, 2], [1, 1, 2], [2, 2, 4]]) / 6
        assert np.allclose(realize(sym3, [1, 0, 0]).m, want)

    @given(arrays(float, 3, elements=st.floats(-5, 5)))
    def test_general_x(self, x):
        a, b, c = x
        want = np.array([
            [a + 3 * b + 2 * c, a - 3 * b + 2 * c, 2 * a - 2 * c],
            [a - 3 * b + 2 * c, a + 3 * b + 2 * c, 2 * a - 2 * c],
            [2 * a - 2 * c, 2 * a - 2 * c, 4 * a + 2 * c],
        ]) / 6
        M = realize(burnside_table(build_from_generators(["(1 2)", "(1 2 3)"])), x).m
        assert np.allclose(M, want, atol=1e-9)

    def test_non_real(self):
        with pytest.raises(NonRealRealizationError) as info:
            realize(dft_table(3).entries, [1, 1j, 0])
        assert info.value.entry is not None

    def test_ill_conditioned(self):
        with pytest.raises(IllConditionedError):
            realize(np.array([[1.0, 1], [1, 1 + 1e-14]]), [1, 0])


class TestRowCone:
    @pytest.mark.parametrize("i", range(4))
    def test_rows(self, h4, i):
        v = row_cone_membership(h4, h4.entries[i])
        assert v.member and np.allclose(v.coeffs, np.eye(4)[i])

    def test_ones(self, sym3):
        v = row_cone_membership(sym3, [1, 1, 1])
        assert np.allclose(v.coeffs, [1, 0, 0])

    def test_h2_negative(self):
        # x^T H2^{-1} = (1/2)(1, -1) for x = (0, 1)
        v = row_cone_membership(H2, [0, 1])
        assert not v and v.constraint == 1 and v.value == pytest.approx(-0.5)


class TestSpectracone:
    def test_ones(self, h4):
        assert spectracone_membership(h4, np.ones(4))

    def test_row(self, h4):
        assert spectracone_membership(h4, [1, -1, 1, -1])

    def test_outside(self, h4):
        v = spectracone_membership(h4, [1, 1, 1, -1])
        assert not v
        facets = reduced_inequalities(h4).evaluate([1, 1, 1, -1])
        assert np.allclose(facets, [2, 2, 2, -2])

    def test_verdict_text(self, h4):
        assert str(reduced_inequalities(h4).contains([1, 1, 1, -1])) == "NOT_MEMBER facet=4 value=-2"
        assert str(reduced_inequalities(h4).contains([1, -1, 1, -1])) == "MEMBER coeffs=[0, 1, 0, 0]"
        assert str(spectracone_membership(h4, [1, 1, 1, -1])).startswith("NOT_MEMBER facet=(")


class TestSpectratope:
    def test_ones(self, sym3):
        assert spectratope_membership(sym3, np.ones(3))

    def test_example_trivial(self):
        v = spectratope_membership(S_EXAMPLE, [1, 0.5])
        assert not v

    def test_grid(self):
        hits = [(a, b) for a in np.linspace(-1, 1, 41) for b in np.linspace(-1, 1, 41)
                if spectratope_membership(S_EXAMPLE, [a, b])]
        assert hits == [(1.0, 1.0)]

    @pytest.mark.parametrize("i", range(3))
    def test_stochastic_rows(self, sym3, i):
        R = rescale_stochastic(sym3, 0)
        assert spectratope_membership(R, R[i])
        assert realize(R, R[i]).m.sum(axis=1) == pytest.approx(np.ones(3))


class TestReduced:
    def test_sym3(self, sym3):
        want = np.array([[1, 3, 2], [1, -3, 2], [2, 0, -2]])
        assert np.allclose(reduced_inequalities(sym3).facet_coeffs, want)

    def test_h4(self, h4):
        assert np.allclose(reduced_inequalities(h4).facet_coeffs, H4)

    def test_z2(self):
        assert np.allclose(reduced_inequalities(dft_table(2)).facet_coeffs, [[1, 1], [1, -1]])

    def test_certificates(self, sym3, h4):
        assert np.allclose(redundancy_certificate(sym3, 2, 2), [1, 1, 1])
        # the hand arithmetic: (4+2)/6, (4+2)/6, (8-2)/6
        assert np.allclose(redundancy_certificate(sym3, 2, 2), [(4 + 2) / 6, (4 + 2) / 6, (8 - 2) / 6])
        assert np.allclose(redundancy_certificate(h4, 1, 2), [0, 0, 0, 1])
        for i in range(3):
            assert np.allclose(redundancy_certificate(sym3, i, 0), np.eye(3)[i])

    @pytest.mark.parametrize("name", ["Sym(4)", "A4", "Dic12", "D10"])
    def test_certificate_reconstructs_entries(self, name):
        Q = burnside_table(library.builtin_group(name))
        rng = np.random.default_rng(7)
        x = rng.normal(size=Q.n)
        M = Q.entries @ np.diag(x) @ np.linalg.inv(Q.entries)
        facets = reduced_inequalities(Q).evaluate(x)
        for i in range(Q.n):
            for j in range(Q.n):
                c = redundancy_certificate(Q, i, j)
                assert Q.order * M[i, j] == pytest.approx(c @ facets, abs=1e-8)

    @pytest.mark.parametrize("name", ["Sym(3)", "D8", "Z2×Z2×Z2", "Sym(4)", "D12"])
    def test_agrees_with_entrywise(self, name):
        Q = burnside_table(library.builtin_group(name))
        cone = reduced_inequalities(Q)
        rng = np.random.default_rng(11)
        for _ in range(200):
            x = rng.normal(size=Q.n)
            if rng.random() < 0.5:
                x = rng.random(Q.n) @ Q.real_entries
            assert bool(cone.contains(x)) == bool(spectracone_membership(Q, x))


class TestStructure:
    @pytest.mark.parametrize("name", library.builtin_names())
    def test_builtins_are_ideal_perron(self, name):
        Q = burnside_table(library.builtin_group(name))
        assert is_perron_similarity(Q) == (True, 0)
        assert realize(Q, np.eye(Q.n)[0]).m.min() > 0
        assert is_ideal(Q)[0]
        assert is_rhc(Q)[0]

    def test_example_matrix(self):
        assert is_perron_similarity(S_EXAMPLE) == (True, 0)

    def test_identity(self):
        assert not is_perron_similarity(np.eye(2))[0]

    def test_h2(self):
        assert is_rhc(H2) == (True, None)

    @pytest.mark.parametrize("theta", [np.pi / 5, 1.0, 2.0, 0.0, 0.3])
    def test_f4_family_against_oracle(self, theta):
        A = dephased_f4_theta(theta)
        assert is_rhc(A)[0] == rhc_oracle(A)
        assert is_ideal(A)[0] == rhc_oracle(A)

    def test_f4_pi5(self):
        assert not is_rhc(dephased_f4_theta(np.pi / 5))[0]
        assert not is_ideal(dephased_f4_theta(np.pi / 5))[0]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_dft_ideal(self, n):
        assert is_ideal(dft_table(n))[0]


class TestTransforms:
    def test_sym3_rescale(self, sym3):
        assert np.allclose(rescale_stochastic(sym3, 0), [[1, 1, 1], [1, -1, 1], [1, 0, -0.5]])

    def test_h4_rescale(self, h4):
        assert np.allclose(rescale_stochastic(h4, 0), H4)

    def test_example_rescale(self):
        R = rescale_stochastic(S_EXAMPLE, 0)
        assert np.allclose(R, H2)
        assert is_ideal(R)[0]

    def test_zero_entry(self):
        with pytest.raises(NotTotallyNonzeroError):
            rescale_stochastic(np.array([[1.0, 1], [0, 1]]), 0)

    def test_row_sums(self, sym3):
        assert np.allclose(eigenpair_transform(sym3, np.ones(3)).sum(axis=1), 1)
        T = eigenpair_transform(sym3, [2, 0, 0], 0)
        v = sym3.real_entries[:, 0]
        direct = np.diag(1 / v) @ realize(sym3, [2, 0, 0]).m @ np.diag(v)
        assert np.allclose(T, direct) and np.allclose(T.sum(axis=1), 2)

    def test_h2_swap(self):
        T = eigenpair_transform(H2, [1, -1], 0)
        assert np.allclose(T, [[0, 1], [1, 0]])


class TestIrreducible:
    def test_cases(self):
        assert is_irreducible(np.full((3, 3), 0.2))
        assert not is_irreducible(np.eye(3))
        assert is_irreducible(np.array([[0, 1], [1, 0]]))
        assert not is_irreducible(np.array([[1, 1], [0, 1]]))


class TestStructureCheck:
    def test_sym3(self, sym3):
        assert structure_check(sym3, [1, 0, 0]) == "symmetric"

    def test_f3_normal(self):
        w = np.exp(2j * np.pi / 3)
        x = np.array([1, 0.3 * w, 0.3 * w.conjugate()])
        M = realize(dft_table(3), x).m
        assert np.allclose(M @ M.T, M.T @ M)
        assert structure_check(dft_table(3), x) == "normal"

    @settings(max_examples=25)
    @given(arrays(float, 4, elements=st.floats(0, 1)))
    def test_h4_symmetric(self, h4, w):
        assert structure_check(h4, w @ H4) == "symmetric"


class TestNecessary:
    def test_ones(self):
        assert necessary_conditions(np.ones(4)).all_pass

    def test_f4_row(self):
        rep = necessary_conditions(dephased_f4_theta(np.pi / 5)[1])
        assert rep.self_conjugate is not None

    def test_trace(self):
        rep = necessary_conditions([1, -1, -1])
        assert rep.trace is not None and not rep.all_pass

    def test_spectral_radius(self):
        assert necessary_conditions([1, -2]).spectral_radius is not None

    def test_multiset_match(self):
        assert multiset_match([1, 2j, -1], [-1, 1, 2j])
        assert not multiset_match([1, 1, 2], [1, 2, 2])


@pytest.mark.parametrize("text,want", [
    ("1,-1,1,-1", [1, -1, 1, -1]),
    ("1, 0.5+0.2i, 0.5-0.2i", [1, 0.5 + 0.2j, 0.5 - 0.2j]),
    ("1,i,-i", [1, 1j, -1j]),
    ("2, 3j", [2, 3j]),
])
def test_parse_spectrum(text, want):
    assert np.allclose(parse_spectrum(text), want)


def test_tolerance_plumbing(monkeypatch):
    base = get_tolerance()
    with tolerance(1e-3):
        assert get_tolerance() == 1e-3
        assert spectracone_membership(H2, [1, 1.0005])
    assert get_tolerance() == base
    assert not spectracone_membership(H2, [1, 1.0005])
    with pytest.raises(ValueError):
        set_tolerance(0)
