from fractions import Fraction
from math import factorial

import pytest

from nilweyl import algebra as alg
from nilweyl.bimodule import (D_bimodule, I_bimodule, X_bimodule, direct_sum, dual, hom_space, is_indecomposable,
                              is_isomorphic, projective_module, psi_twisted, regular_bimodule, simple_module,
                              tensor_over)
from nilweyl.decat import PolyClass, class_of
from nilweyl.functor import (F_D, F_I, F_X, FunctorSpec, Omega, Psi, adjunction_check, block,
                             canonical_basis_bimodule, canonical_triples, duality_checks, functor_weyl_check,
                             indecomposability_report, integral_checks, is_right_projective, probes,
                             radical_quotient, weyl_certificate, weyl_relation_check)

from oracles import hom_dim_oracle


def test_probe_counts():
    assert [len(probes(n)) for n in range(5)] == [1, 2, 4, 13, 35]


@pytest.mark.parametrize("n", range(4))
def test_probes_are_valid_left_modules(n):
    for label, N in probes(n):
        assert N.name == label
        assert N.is_left_module and block(N) == n
        assert not N.violations(True)


def test_radical_quotient_dimensions():
    # P_3 has Poincare polynomial 1 + 2q + 2q^2 + q^3; rad^j kills degrees >= j
    assert [radical_quotient(3, j)[0].dim for j in (1, 2, 3)] == [1, 3, 5]


def test_apply_examples():
    fx = F_X(simple_module(1))
    assert fx.dim == 2 and block(fx) == 2
    assert is_isomorphic(fx, projective_module(2))
    fd = F_D(simple_module(2))
    assert fd.dim == 1 and block(fd) == 1


def test_F_D_on_block_zero_rejected():
    with pytest.raises(ValueError):
        F_D(simple_module(0))


@pytest.mark.parametrize("n", range(5))
def test_dimension_rules(n):
    for _, N in probes(n)[:6]:
        assert F_X(N).dim == (n + 1) * N.dim
        assert Psi(N).dim == N.dim
        assert F_I(N).dim == N.dim
        if n >= 1:
            assert F_D(N).dim == N.dim


@pytest.mark.parametrize("n", range(4))
def test_psi_squared_is_identity(n):
    for label, N in probes(n, seed=3):
        r = is_isomorphic(Psi(Psi(N)), N)
        assert r and r.certificate.verify(), label


def test_functor_spec():
    spec = FunctorSpec.of("F_D F_X")
    assert spec.name == "F_D F_X" and not spec.contravariant
    assert spec.apply(simple_module(1)).dim == 2
    assert FunctorSpec.of("Omega Psi Omega").contravariant is False
    assert FunctorSpec.of("Omega").contravariant
    assert FunctorSpec.of("F_X").block_bimodule(2).dim == 6
    assert FunctorSpec.of("F_D").block_bimodule(2).dim == 6
    with pytest.raises(ValueError):
        FunctorSpec.of("F_Z")
    with pytest.raises(ValueError):
        FunctorSpec.of("Omega").block_bimodule(1)


@pytest.mark.parametrize("n", range(5))
def test_block_bimodules_are_right_free(n):
    for b in (X_bimodule(n), D_bimodule(n + 1), I_bimodule(n), psi_twisted(n)):
        assert is_right_projective(b)


# -- Weyl relation ------------------------------------------------------------------

@pytest.mark.parametrize("n, text", [(0, "1 = 1 + 0"), (1, "2 = 1 + 1"), (2, "6 = 2 + 4"), (3, "24 = 6 + 18")])
def test_weyl_examples(n, text):
    r = weyl_relation_check(n)
    assert r.passed and r.dims == text


@pytest.mark.parametrize("n", range(5))
def test_weyl_certificate_sends_generators(n):
    f, dims = weyl_certificate(n)
    assert f.verify()
    assert dims["lhs"] == factorial(n + 1)
    # the source is A_n (+) X_{n-1}(x)D_n; its first coordinate is 1 in A_n
    assert f({0: 1}) == f.target.tensor_data.pure(alg.nil(n + 1).unit, alg.nil(n + 1).unit)


@pytest.mark.parametrize("n", range(4))
def test_graded_weyl(n):
    f, _ = weyl_certificate(n, graded=True)
    assert f.verify(graded=True)


@pytest.mark.parametrize("graded", [False, True])
def test_functor_weyl(graded):
    r = functor_weyl_check(2, graded)
    assert r.passed, r.details


@pytest.mark.parametrize("n", range(1, 4))
def test_functor_weyl_pointwise(n):
    for label, N in probes(n)[:5]:
        lhs = F_D(F_X(N))
        rhs = direct_sum([F_X(F_D(N)), N])
        assert is_isomorphic(lhs, rhs), label


# -- adjunctions --------------------------------------------------------------------

def test_adjunction_examples():
    assert adjunction_check("left", simple_module(1), simple_module(2)) == (1, 1)
    assert adjunction_check("left", projective_module(1), projective_module(2)) == (2, 2)
    a, b = adjunction_check("right-twisted", simple_module(1), simple_module(2))
    assert a == b
    with pytest.raises(ValueError):
        adjunction_check("left", simple_module(1), simple_module(1))
    with pytest.raises(ValueError):
        adjunction_check("sideways", simple_module(1), simple_module(2))


@pytest.mark.parametrize("n", range(3))
def test_adjunctions_against_dense_oracle(n):
    for _, M in probes(n)[:4]:
        for _, N in probes(n + 1)[:4]:
            a, b = adjunction_check("left", M, N)
            assert a == hom_dim_oracle(F_X(M), N) == hom_dim_oracle(M, F_D(N)) == b
            a, b = adjunction_check("right-twisted", M, N)
            assert a == hom_dim_oracle(N, F_X(M)) == hom_dim_oracle(Psi(F_D(Psi(N))), M) == b


# -- duality --------------------------------------------------------------------------

def test_dual_of_X1():
    lhs = dual(X_bimodule(1))
    rhs = tensor_over(D_bimodule(2), psi_twisted(2))
    assert lhs.dim == rhs.dim == 2
    r = is_isomorphic(lhs, rhs)
    assert r and r.certificate.verify()


@pytest.mark.parametrize("n", range(4))
def test_omega_squared_on_simples(n):
    L = simple_module(n)
    assert is_isomorphic(Omega(Omega(L)), L)


def test_omega_commutes_with_F_D_on_P2():
    P2 = projective_module(2)
    assert is_isomorphic(Omega(F_D(P2)), F_D(Omega(P2)))


def test_duality_report():
    r = duality_checks(2)
    assert r.passed, r.details
    assert all(f.verify() for _, f, _ in r.maps)


# -- integral -------------------------------------------------------------------------

def test_integral_examples():
    DI = tensor_over(D_bimodule(2), I_bimodule(1))
    assert DI.dim == 1 and is_isomorphic(DI, regular_bimodule(alg.nil(1)))
    ID = tensor_over(I_bimodule(1), D_bimodule(2))
    A2 = regular_bimodule(alg.nil(2))
    r = is_isomorphic(ID, A2)
    assert not r
    assert r.witness == "rank of left Y1 action differs: 0 vs 1"
    assert class_of(F_I(simple_module(2))) == PolyClass.monomial(3, Fraction(1, 6))


def test_integral_report():
    r = integral_checks(3)
    assert r.passed, r.details
    assert r.witness["n=1"] == "rank of left Y1 action: 0 on I(x)D vs 1 on A"


# -- canonical basis bimodules --------------------------------------------------------------

@pytest.mark.parametrize("triple, dim", [((1, 0, 0), 1), ((1, 1, 1), 1), ((1, 1, 2), 4), ((0, 1, 2), 2)])
def test_canonical_basis_examples(triple, dim):
    b = canonical_basis_bimodule(*triple)
    assert b.dim == dim
    assert is_indecomposable(b).verdict == "indecomposable"


def test_canonical_basis_errors():
    with pytest.raises(ValueError):
        canonical_basis_bimodule(1, 2, 1)
    with pytest.raises(ValueError):
        canonical_basis_bimodule(-1, 0, 0)


def test_canonical_triples_respect_bound():
    for m, n, k in canonical_triples(24):
        assert factorial(m + k - n) * factorial(k) // factorial(k - n) <= 24
    assert (1, 1, 2) in canonical_triples(24)


def test_indecomposability_report_small():
    r = indecomposability_report(12)
    assert r.passed, r.details


def test_X_is_indecomposable_bimodule():
    for n in range(3):
        assert is_indecomposable(X_bimodule(n)).verdict == "indecomposable"


def test_hom_space_examples_used_by_adjunction():
    assert len(hom_space(projective_module(2), simple_module(2))) == 1
    assert len(hom_space(simple_module(1), simple_module(1))) == 1
