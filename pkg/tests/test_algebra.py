import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import preset_fixtures
from rleibniz.algebra import (Algebra, RepPair, assoc_sym_forms, derivations, derived_series,
                              direct_sum, engel_check, hom_check, ideal_generated, is_associative_form,
                              is_derivation, is_ideal, is_left_ideal, is_lie, is_nilpotent, is_solvable,
                              is_subalgebra, leibniz_violations, left_center, left_centralizer,
                              left_normalizer, lower_central_series, quotient, representation_check,
                              right_center, right_centralizer, semidirect, subalgebra_algebra,
                              subalgebra_generated, trace_form, is_nondegenerate)
from rleibniz.errors import (DimensionMismatch, LeibnizIdentityViolation, NotAnIdeal,
                             NotDerivation, NotHomomorphism, NotLie)
from rleibniz.exactla import Subspace
from rleibniz.gfield import field_make
from rleibniz.presets import ab, aff2, cy2, heis3, laff2, preset, random_algebra, sl2


def _sc_list(A):
    return A.sc.tolist()


def test_cy2_with_reversed_bracket_is_rejected():
    # Cy2 plus [e2, e1] = e1: the very first triple already fails
    F = field_make(3)
    sc = np.zeros((2, 2, 2), dtype=np.int64)
    sc[0, 0, 1] = 1
    sc[1, 0, 0] = 1
    want = oracles.leibniz_failures(sc.tolist(), 3)
    assert want[0] == (0, 0, 0)
    assert leibniz_violations(F, sc) == want
    with pytest.raises(LeibnizIdentityViolation) as info:
        Algebra(F, sc)
    assert info.value.triple == (0, 0, 0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(2, 3), st.integers(0, 2 ** 31))
def test_violations_match_oracle_on_random_tensors(p, n, seed):
    F = field_make(p)
    rng = np.random.default_rng(seed)
    sc = F.random(rng, (n, n, n)) * (rng.random((n, n, n)) < 0.3)
    assert leibniz_violations(F, sc) == oracles.leibniz_failures(sc.tolist(), p)


@pytest.mark.parametrize("label,A", preset_fixtures(primes=(2, 3, 5)))
def test_presets_satisfy_identity(label, A):
    assert oracles.leibniz_failures(_sc_list(A), A.F.p) == []


def test_is_lie_witness():
    F = field_make(3)
    assert is_lie(aff2(F)) and is_lie(heis3(F))
    check = is_lie(cy2(F))
    assert not check and check.witness[:2] == (0, 0)
    assert not is_lie(laff2(F))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_centers_match_oracle(p):
    F = field_make(p)
    for A in (cy2(F), laff2(F), aff2(F), heis3(F), sl2(F), preset("torsd2+ab1", p)):
        want = oracles.span_set([list(v) for v in oracles.right_center_bf(_sc_list(A), p)], p, A.n)
        assert oracles.span_set(right_center(A).tolist(), p, A.n) == want


def test_center_examples():
    F = field_make(3)
    A = laff2(F)
    assert right_center(A) == Subspace.span(F, 2, [[0, 1]])
    assert left_center(A) == Subspace.span(F, 2, [[1, 0]])
    C = cy2(F)
    assert right_center(C) == left_center(C) == Subspace.span(F, 2, [[0, 1]])


def test_centralizers():
    F = field_make(5)
    A = aff2(F)
    t = [1, 0]
    assert right_centralizer(A, [t]) == Subspace.span(F, 2, [t])
    assert left_centralizer(A, [t]) == Subspace.span(F, 2, [t])
    assert right_centralizer(A, np.zeros((0, 2))).dim == 2


def test_series():
    F = field_make(3)
    assert [V.dim for V in lower_central_series(heis3(F))] == [3, 1, 0]
    assert [V.dim for V in lower_central_series(aff2(F))] == [2, 1]
    assert [V.dim for V in derived_series(aff2(F))] == [2, 1, 0]
    assert is_nilpotent(cy2(F)) and not is_nilpotent(aff2(F))
    assert is_solvable(aff2(F))
    F5 = field_make(5)
    assert [V.dim for V in derived_series(sl2(F5))] == [3]
    assert not is_solvable(sl2(F5))


def test_engel():
    F = field_make(3)
    assert engel_check(heis3(F)) and engel_check(cy2(F))
    assert not engel_check(aff2(F))


def test_normalizer_by_enumeration():
    F = field_make(2)
    A = preset("aff2+cy2", 2)
    V = Subspace.span(F, 4, [[0, 1, 0, 0]])
    N = left_normalizer(A, V)
    members = oracles.span_set(V.tolist(), 2, 4)
    want = [x for x in oracles.vectors(2, 4)
            if all(tuple(oracles.bracket(_sc_list(A), list(v), x, 2)) in members for v in members)]
    assert oracles.span_set(N.tolist(), 2, 4) == oracles.span_set(want, 2, 4)


@pytest.mark.parametrize("name,p", [("aff2+cy2", 2), ("laff2+ab1", 3), ("heis3", 3)])
def test_ideal_tests_match_oracle(name, p):
    A = preset(name, p)
    sc = _sc_list(A)
    for S in oracles.all_subspaces(p, A.n):
        V = Subspace.span(A.F, A.n, [list(v) for v in S])
        assert is_ideal(A, V) == oracles.is_ideal_set(sc, S, p)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 2 ** 31))
def test_generated_closures(p, seed):
    F = field_make(p)
    rng = np.random.default_rng(seed)
    A = random_algebra(F, rng, max_dim=5)
    gens = A.random_elements(rng, 2)
    S = subalgebra_generated(A, gens)
    I = ideal_generated(A, gens)
    assert is_subalgebra(A, S) and is_ideal(A, I) and S <= I
    assert is_left_ideal(A, I)


def test_quotient_of_heisenberg_by_center():
    F = field_make(3)
    A = heis3(F)
    Q, P = quotient(A, right_center(A))
    assert Q == ab(F, 2)
    assert hom_check(P, A, Q)
    with pytest.raises(NotAnIdeal):
        quotient(A, Subspace.span(F, 3, [[1, 0, 0]]))


def test_subalgebra_algebra():
    F = field_make(3)
    A = preset("aff2+heis3", 3)
    V = Subspace.span(F, 5, np.eye(5, dtype=np.int64)[:2])
    assert subalgebra_algebra(A, V) == aff2(F)


def test_hom_check_shape():
    F = field_make(2)
    with pytest.raises(DimensionMismatch):
        hom_check(np.zeros((3, 2)), aff2(F), aff2(F))


def _derivations_bf(A):
    p, n, sc = A.F.p, A.n, _sc_list(A)
    e = [[int(i == j) for i in range(n)] for j in range(n)]
    found = []
    for entries in itertools.product(range(p), repeat=n * n):
        D = [list(entries[r * n:(r + 1) * n]) for r in range(n)]
        Dv = lambda v: [sum(D[k][l] * v[l] for l in range(n)) % p for k in range(n)]  # noqa: E731
        ok = all(Dv(oracles.bracket(sc, e[i], e[j], p)) ==
                 [(a + b) % p for a, b in zip(oracles.bracket(sc, Dv(e[i]), e[j], p),
                                              oracles.bracket(sc, e[i], Dv(e[j]), p))]
                 for i in range(n) for j in range(n))
        found.append(ok)
    return sum(found)


@pytest.mark.parametrize("name,p", [("aff2", 2), ("aff2", 3), ("cy2", 3), ("laff2", 3), ("ab2", 2)])
def test_derivation_count_matches_enumeration(name, p):
    A = preset(name, p)
    D = derivations(A)
    assert p ** len(D) == _derivations_bf(A)
    assert all(is_derivation(A, d) for d in D)


def test_direct_sum():
    F = field_make(3)
    S = direct_sum(aff2(F), cy2(F))
    assert S.n == 4 and S.name == "aff2+cy2"
    assert oracles.leibniz_failures(_sc_list(S), 3) == []
    with pytest.raises(DimensionMismatch):
        direct_sum(aff2(F), aff2(field_make(5)))


def test_semidirect_hypotheses():
    F = field_make(3)
    J = np.array([[1, 1], [0, 1]])
    with pytest.raises(NotLie):
        semidirect(ab(F, 1), cy2(F), [J])
    # B = heis3, a non-derivation acting on it
    with pytest.raises(NotDerivation):
        semidirect(ab(F, 1), heis3(F), [np.diag([1, 0, 0])])
    # phi on aff2 with [t, x] = x must satisfy phi(x) = [phi(t), phi(x)]
    with pytest.raises(NotHomomorphism):
        semidirect(aff2(F), ab(F, 1), [[[0]], [[1]]])
    T = semidirect(ab(F, 1), ab(F, 2), [J])
    assert T.bracket([1, 0, 0], [0, 0, 1]).tolist() == [0, 1, 1]
    assert T.bracket([0, 0, 1], [1, 0, 0]).tolist() == [0, 2, 2]


@pytest.mark.parametrize("label,A", preset_fixtures(primes=(2, 3)))
def test_adjoint_is_a_representation(label, A):
    assert representation_check(RepPair.adjoint(A), A)


def test_broken_representation_is_detected():
    F = field_make(3)
    A = aff2(F)
    R = RepPair.adjoint(A)
    assert not representation_check(RepPair(R.S, F.add(R.T, R.T)), A)


def test_associative_forms():
    F = field_make(5)
    A = sl2(F)
    K = trace_form(A)
    assert is_associative_form(A, K) and is_nondegenerate(K, F)
    forms = assoc_sym_forms(A)
    assert len(forms) == 1 and all(is_associative_form(A, f) for f in forms)
    assert assoc_sym_forms(ab(F, 2)) and len(assoc_sym_forms(ab(F, 2))) == 3


def test_extend_scalars_keeps_identity():
    A = preset("aff2+cy2", 2)
    B, embed = A.extend_scalars(2)
    assert B.F.q == 4 and not leibniz_violations(B.F, B.sc)
    x, y = A.random_elements(np.random.default_rng(0), 2)
    assert np.array_equal(embed(A.bracket(x, y)), B.bracket(embed(x), embed(y)))


def test_all_elements_enumerates():
    A = preset("cy2", 3)
    E = A.all_elements()
    assert E.shape == (9, 2) and len({tuple(r) for r in E.tolist()}) == 9
