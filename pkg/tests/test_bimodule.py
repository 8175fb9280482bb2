import pytest
from hypothesis import given, strategies as st

from nilweyl import algebra as alg
from nilweyl import bimodule as bm
from nilweyl.bimodule import (D_bimodule, I_bimodule, NotWellDefined, X_bimodule, direct_sum, dual,
                              extend_from_generators, hom_space, is_indecomposable, is_isomorphic,
                              projective_module, psi_twisted, regular_bimodule, restrict, shift,
                              simple_module, tensor_over)
from nilweyl.functor import probes

from oracles import hom_dim_oracle, tensor_dim_oracle


# -- constructors ---------------------------------------------------------------

def test_regular_examples():
    assert regular_bimodule(alg.nil(1)).dim == 1
    r = regular_bimodule(alg.nil(3))
    assert r.dim == 6 and r.degrees == (0, 1, 1, 2, 2, 3)
    assert r.violations() == []


def test_simple_and_projective():
    for n in range(5):
        L, Pn = simple_module(n), projective_module(n)
        assert L.dim == 1 and Pn.dim == alg.nil(n).dim
        assert all(m.is_zero() for m in L.left_action)
        assert L.violations() == [] and Pn.violations() == []


def test_named_bimodules_satisfy_axioms():
    for n in range(4):
        for b in (X_bimodule(n), D_bimodule(n + 1), I_bimodule(n), psi_twisted(n)):
            assert b.violations(graded=True) == [], b.name


def test_psi_twist_relation():
    # 1^psi . Y_i = Y_{n-i} . 1^psi
    n = 3
    b = psi_twisted(n)
    one = alg.nil(n).unit
    for i in range(n - 1):
        assert b.right_action[i].apply({one: 1}) == b.left_action[n - 2 - i].apply({one: 1})


def test_restrict_rejects_mismatch():
    with pytest.raises(ValueError):
        restrict(regular_bimodule(alg.nil(2)), "right", alg.chi(2))


# -- tensor products ------------------------------------------------------------

def test_tensor_examples():
    a2_over_a1 = restrict(regular_bimodule(alg.nil(2)), "right", alg.chi(1))
    a1_to_a2 = restrict(regular_bimodule(alg.nil(2)), "left", alg.chi(1))
    assert tensor_over(a2_over_a1, a1_to_a2).dim == 4
    assert tensor_over(D_bimodule(2), X_bimodule(1)).dim == 2
    with pytest.raises(ValueError):
        tensor_over(X_bimodule(1), X_bimodule(1))


TENSOR_PAIRS = [
    (D_bimodule(2), X_bimodule(1)),
    (D_bimodule(3), X_bimodule(2)),
    (X_bimodule(1), D_bimodule(2)),
    (X_bimodule(2), D_bimodule(3)),
    (I_bimodule(1), D_bimodule(2)),
    (D_bimodule(3), I_bimodule(2)),
    (psi_twisted(3), X_bimodule(2)),
    (X_bimodule(2), simple_module(2)),
    (D_bimodule(3), simple_module(3)),
]


@pytest.mark.parametrize("pair", TENSOR_PAIRS, ids=lambda p: f"{p[0].name}(x){p[1].name}")
def test_tensor_fast_paths_agree_with_generic(pair):
    m, n = pair
    fast = tensor_over(m, n)
    generic = bm._tensor_generic(m, n, "generic")
    full = bm._tensor_generic(m, n, "full", full_basis=True)
    assert fast.dim == generic.dim == full.dim == tensor_dim_oracle(m, n)
    assert fast.violations() == []
    assert is_isomorphic(fast, generic)
    assert is_isomorphic(generic, full)


@pytest.mark.parametrize("n", range(4))
def test_free_rank_dimension_rules(n):
    for label, N in probes(n):
        assert tensor_over(X_bimodule(n), N).dim == (n + 1) * N.dim, label
        if n >= 1:
            assert tensor_over(D_bimodule(n), N).dim == N.dim, label


def test_unit_law_and_associativity():
    for label, N in probes(3)[:6]:
        r = is_isomorphic(tensor_over(regular_bimodule(alg.nil(3)), N), N)
        assert r and r.certificate.verify()
    a, b, c = X_bimodule(1), D_bimodule(2), X_bimodule(1)
    left = tensor_over(tensor_over(a, b), c)
    right = tensor_over(a, tensor_over(b, c))
    r = is_isomorphic(left, right)
    assert r and r.certificate.verify(graded=False)


def test_pure_tensor_generates():
    t = tensor_over(D_bimodule(3), X_bimodule(2))
    one = alg.nil(3).unit
    sub, _ = bm.submodule(t, [t.tensor_data.pure(one, one)])
    assert sub.dim == alg.nil(2).dim
    gens = [t.tensor_data.pure(one, one), t.tensor_data.pure(one, alg.nil(3).generators[1])]
    assert bm.submodule(t, gens)[0].dim == t.dim


# -- Hom, isomorphism, indecomposability ---------------------------------------

def test_hom_examples():
    for n in range(4):
        assert len(hom_space(simple_module(n), simple_module(n))) == 1
        assert len(hom_space(projective_module(n), simple_module(n))) == 1
        assert len(hom_space(projective_module(n), projective_module(n))) == alg.nil(n).dim


@pytest.mark.parametrize("n", range(1, 4))
def test_hom_dims_against_dense_oracle(n):
    ps = probes(n)[:5]
    for _, a in ps:
        for _, b in ps:
            assert len(hom_space(a, b)) == hom_dim_oracle(a, b)


def test_hom_dims_bimodules_against_oracle():
    pairs = [(regular_bimodule(alg.nil(2)), psi_twisted(2)), (tensor_over(D_bimodule(3), X_bimodule(2)),
             tensor_over(D_bimodule(3), X_bimodule(2))), (psi_twisted(3), regular_bimodule(alg.nil(3)))]
    for a, b in pairs:
        assert len(hom_space(a, b)) == hom_dim_oracle(a, b)


@pytest.mark.parametrize("n", range(0, 5))
def test_hom_from_projective_is_dimension(n):
    for label, N in probes(n):
        assert len(hom_space(projective_module(n), N)) == N.dim, label


def test_is_isomorphic_examples():
    b = tensor_over(D_bimodule(3), X_bimodule(2))
    r = is_isomorphic(b, b)
    assert r and r.certificate.verify()
    assert is_isomorphic(projective_module(1), simple_module(1))
    neg = is_isomorphic(regular_bimodule(alg.nil(2)), tensor_over(I_bimodule(1), D_bimodule(2)))
    assert not neg and neg.witness and "rank" in neg.witness
    assert not is_isomorphic(projective_module(2), simple_module(2))


def test_graded_isomorphism_respects_shift():
    P2 = projective_module(2)
    assert is_isomorphic(P2, P2, graded=True)
    assert not is_isomorphic(shift(P2, 1), P2, graded=True)
    assert is_isomorphic(shift(P2, 1), P2, graded=True, shift_by=-1)


def test_dual_examples():
    b = tensor_over(D_bimodule(3), X_bimodule(2))
    assert is_isomorphic(dual(dual(b)), b)
    for n in range(1, 4):
        r = is_isomorphic(dual(regular_bimodule(alg.nil(n))), psi_twisted(n))
        assert r and r.certificate.verify()


def test_indecomposable_examples():
    assert is_indecomposable(simple_module(2)).verdict == "indecomposable"
    assert is_indecomposable(direct_sum([projective_module(1), projective_module(1)])).verdict == "decomposable"
    res = is_indecomposable(direct_sum([projective_module(2), simple_module(2)]))
    assert res.verdict == "decomposable"
    e = res.idempotent
    assert e @ e == e and not e.is_zero() and not e.is_identity()
    assert is_indecomposable(X_bimodule(2)).verdict == "indecomposable"


def test_extend_from_generators_errors():
    A2 = projective_module(2)
    one = alg.nil(2).unit
    y = alg.nil(2).generators[0]
    L2 = simple_module(2)
    with pytest.raises(NotWellDefined):
        # L_2 -> P_2 sending the generator to 1 ignores Y_1 L_2 = 0
        extend_from_generators(L2, [{0: 1}], [{one: 1}], A2)
    with pytest.raises(ValueError):
        extend_from_generators(A2, [{y: 1}], [{y: 1}], A2)
    f = extend_from_generators(A2, [{one: 1}], [{y: 1}], A2)
    assert f.is_intertwining() and not f.is_invertible()


def test_direct_sum_and_shift():
    a, b = projective_module(2), simple_module(2)
    s = direct_sum([a, b])
    assert s.dim == 3 and s.degrees == a.degrees + b.degrees
    assert direct_sum([a]).dim == 2
    assert shift(a, 2).degrees == tuple(d + 2 for d in a.degrees)


@pytest.mark.parametrize("b", [X_bimodule(2), D_bimodule(2), psi_twisted(3), simple_module(2),
                               tensor_over(D_bimodule(3), X_bimodule(2))], ids=lambda b: b.name)
def test_text_round_trip(b):
    back = bm.from_text(bm.to_text(b))
    assert back.dim == b.dim and back.degrees == b.degrees
    assert back.left_action == b.left_action and back.right_action == b.right_action
    assert str(back.left) == str(b.left) and str(back.right) == str(b.right)


@given(st.integers(1, 3), st.integers(0, 100))
def test_random_quotients_are_modules(n, seed):
    for label, N in probes(n, seed=seed):
        assert N.violations(graded=True) == [], label


@given(st.integers(2, 3), st.integers(0, 50))
def test_radical_filtration_exactness_under_tensoring(n, seed):
    from nilweyl.functor import radical_quotient
    top = n * (n - 1) // 2
    for j in range(1, top + 1):
        Q, proj = radical_quotient(n, j)
        # 0 -> rad^j P -> P -> Q -> 0 stays exact after tensoring with X and D: dimensions add
        kernel_dim = projective_module(n).dim - Q.dim
        for B in (X_bimodule(n), D_bimodule(n)):
            P_img = tensor_over(B, projective_module(n))
            Q_img = tensor_over(B, Q)
            ratio = P_img.dim // projective_module(n).dim
            assert Q_img.dim == ratio * Q.dim
            assert P_img.dim - Q_img.dim == ratio * kernel_dim
