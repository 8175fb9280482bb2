from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from nilweyl import algebra as alg
from nilweyl import perm as P
from nilweyl.bialgebra import (BlockPair, J, M_bimodule, bialgebra_adjunction_check, bracketed_product,
                               coassoc_and_assoc_check, counit, delta_block, leibniz_check, mackey_check,
                               mackey_dimension, mackey_summand, mackey_target, pentagon_check,
                               quasi_commutativity_check, swap_module, unit_counit_check)
from nilweyl.bimodule import (is_isomorphic, outer_tensor, projective_module, regular_bimodule, simple_module,
                              tensor_over)
from nilweyl.decat import PolyClass, class_of, comultiply
from nilweyl.functor import F_D, probes
from nilweyl.qpoly import Laurent

from oracles import tensor_dim_oracle


def quadruples(total_max):
    for s in range(total_max + 1):
        for n in range(s + 1):
            for k in range(s + 1):
                yield n, s - n, k, s - k


def test_block_pair_validation():
    BlockPair(1, 2, 3, 0)
    with pytest.raises(ValueError):
        BlockPair(-1, 2)
    with pytest.raises(ValueError):
        BlockPair(1, 1, 1, 2)


def test_M_bimodule_examples():
    m = M_bimodule(1, 1)
    assert m.dim == 2 and not m.violations()
    assert m.right.generator_names == alg.tensor(alg.nil(1), alg.nil(1)).generator_names
    for k in range(4):
        b = M_bimodule(0, k)
        assert b.left_action == regular_bimodule(alg.nil(k)).left_action
        assert b.right_action == regular_bimodule(alg.nil(k)).right_action


def test_J_of_simples_is_projective():
    j = J(simple_module(1), simple_module(1))
    assert j.dim == 2
    assert is_isomorphic(j, projective_module(2))


@pytest.mark.parametrize("n, m", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_J_dimension_is_binomial(n, m):
    for _, N1 in probes(n)[:3]:
        for _, N2 in probes(m)[:3]:
            expected = factorial(n + m) // (factorial(n) * factorial(m)) * N1.dim * N2.dim
            assert J(N1, N2).dim == expected
            assert tensor_dim_oracle(M_bimodule(n, m), outer_tensor(N1, N2)) == expected


def test_delta_block_examples():
    assert delta_block(2, 1, 1).dim == 2
    b = delta_block(3, 3, 0)
    assert b.left_action == regular_bimodule(alg.nil(3)).left_action
    assert list(delta_block(2, 1, 1, graded=True).degrees) == [1, 2]
    with pytest.raises(ValueError):
        delta_block(3, 1, 1)


def _graded_delta_class(N, n):
    total = PolyClass({}, True)
    for k in range(n + 1):
        total = total + class_of(tensor_over(delta_block(n, k, n - k, graded=True), N), True)
    return total


@pytest.mark.parametrize("n", range(1, 4))
def test_graded_delta_of_projective(n):
    # [P_n] = x^n and the graded coproduct is (x (x) 1 + q (x) x)^n
    P_n = projective_module(n)
    assert _graded_delta_class(P_n, n) == comultiply(class_of(P_n, True))


def test_graded_delta_of_P1_explicit():
    got = _graded_delta_class(projective_module(1), 1)
    assert got == PolyClass({(1, 0): Laurent(1), (0, 1): Laurent({1: 1})}, True)


@pytest.mark.parametrize("n", range(1, 4))
def test_ungraded_delta_classes_on_probes(n):
    for _, N in probes(n):
        total = PolyClass({})
        for k in range(n + 1):
            total = total + class_of(tensor_over(delta_block(n, k, n - k), N))
        assert total == comultiply(class_of(N))


@pytest.mark.parametrize("n, m", [(1, 1), (2, 1), (1, 2)])
def test_class_of_J_is_product(n, m):
    for _, N1 in probes(n)[:3]:
        for _, N2 in probes(m)[:3]:
            assert class_of(J(N1, N2)) == class_of(N1) * class_of(N2)


def test_swap_module():
    N = outer_tensor(projective_module(2), simple_module(1))
    S = swap_module(N, 1, 2)
    assert S.dim == 2 and not S.violations()
    assert list(S.left.generator_names) == list(alg.tensor(alg.nil(1), alg.nil(2)).generator_names)


# -- Mackey -----------------------------------------------------------------------------

def test_mackey_examples():
    r = mackey_check(1, 1, 1, 1)
    assert r.passed and r.dims == "1 + 1 = 2"
    r = mackey_check(2, 0, 1, 1)
    assert r.passed and r.dims == "2 = 2"
    r = mackey_check(2, 1, 2, 1)
    assert r.passed and r.dims.endswith("= 6")
    assert sum(int(x) for x in r.dims.split("=")[0].split("+")) == 6
    with pytest.raises(ValueError):
        mackey_check(1, 1, 1, 2)


@pytest.mark.parametrize("n, m, k, l", list(quadruples(4)))
def test_mackey_all_small_quadruples(n, m, k, l):
    r = mackey_check(n, m, k, l)
    assert r.passed, r.details
    assert r.witness["double_cosets"] == min(n, m, k, l) + 1


@pytest.mark.parametrize("n, m, k, l", [q for q in quadruples(6) if sum(q) // 2 >= 5])
def test_mackey_dimension_sum(n, m, k, l):
    assert sum(mackey_dimension(n, m, k, l, r) for r in P.admissible_r(n, m, k, l)) == factorial(n + m)
    assert len(list(P.admissible_r(n, m, k, l))) == P.double_cosets(k, l, n, m).count


@settings(max_examples=15)
@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_mackey_summand_dimension_formula(n, m, data):
    k = data.draw(st.integers(0, n + m))
    l = n + m - k
    r = data.draw(st.sampled_from(list(P.admissible_r(n, m, k, l))))
    assert mackey_summand(n, m, k, l, r).dim == mackey_dimension(n, m, k, l, r)


def test_mackey_target_dimension():
    assert mackey_target(2, 1, 1, 2).dim == 6


# -- Leibniz, associativity, pentagon -------------------------------------------------------

def test_leibniz_examples():
    r = leibniz_check(1, 0)
    assert r.passed, r.details
    r = leibniz_check(1, 1)
    assert r.passed, r.details
    L = simple_module(1)
    lhs = F_D(J(L, L))
    assert lhs.dim == 2
    assert J(L, F_D(L)).dim == 1 and J(F_D(L), L).dim == 1
    with pytest.raises(ValueError):
        leibniz_check(0, 0)


@pytest.mark.parametrize("n, m", [(2, 1), (1, 2), (2, 0)])
def test_leibniz_more(n, m):
    assert leibniz_check(n, m, max_probes=3).passed


def test_bracketed_product_generates():
    b, g = bracketed_product(((1, 1), 1))
    assert b.dim == 6 and g


@pytest.mark.parametrize("abc, dim", [((1, 1, 1), 6), ((2, 1, 1), 24), ((2, 0, 0), 2), ((0, 0, 0), 1)])
def test_associativity(abc, dim):
    r = coassoc_and_assoc_check(*abc)
    assert r.passed, r.details
    assert all(f.source.dim == dim for _, f, _ in r.maps)


@pytest.mark.parametrize("block", [(1, 1, 1, 1), (2, 1, 1, 0), (3, 0, 0, 0), (0, 0, 0, 0), (1, 2, 1, 1)])
def test_pentagon(block):
    r = pentagon_check(*block)
    assert r.passed, r.details


@pytest.mark.parametrize("n, m", [(1, 1), (2, 1), (1, 2), (2, 0), (0, 3), (2, 2)])
def test_quasi_commutativity(n, m):
    r = quasi_commutativity_check(n, m)
    assert r.passed, r.details


# -- unit, counit, adjunctions --------------------------------------------------------------

def test_unit_counit():
    assert unit_counit_check(3).passed
    assert counit(simple_module(0)).dim == 1
    assert counit(simple_module(2)).dim == 0
    assert counit(projective_module(3)).dim == 0


def test_unit_law_on_block_three():
    for _, N in probes(3)[:5]:
        assert is_isomorphic(J(simple_module(0), N), N)
        assert is_isomorphic(J(N, simple_module(0)), N)


@pytest.mark.parametrize("n, m", [(1, 1), (1, 0), (2, 1)])
def test_bialgebra_adjunctions(n, m):
    out = bialgebra_adjunction_check(n, m, max_probes=3)
    assert out.ok, out.failures
