import sympy
from hypothesis import given, strategies as st

from nilweyl.qpoly import Laurent, QFrac, q, qbinomial, qfactorial, qint

Q = sympy.Symbol("q")


def as_sympy(p: Laurent):
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * Q ** e for e, c in p.terms.items()])


def test_qint_and_factorial_examples():
    assert qint(0) == Laurent() and qint(1) == Laurent(1)
    assert qint(3) == Laurent({0: 1, 1: 1, 2: 1})
    assert qfactorial(2) == 1 + q
    assert qfactorial(3) == Laurent({0: 1, 1: 2, 2: 2, 3: 1})


def test_qbinomial_against_sympy():
    for n in range(8):
        for k in range(n + 1):
            expected = sympy.cancel(
                sympy.prod([1 - Q ** (n - i) for i in range(k)]) / sympy.prod([1 - Q ** (i + 1) for i in range(k)]))
            assert sympy.expand(as_sympy(qbinomial(n, k)) - expected) == 0
            assert qbinomial(n, k).at(1) == sympy.binomial(n, k)


coeffs = st.dictionaries(st.integers(-3, 3), st.integers(-4, 4), max_size=4).map(Laurent)


@given(coeffs, coeffs, coeffs)
def test_laurent_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert as_sympy(a * b).expand() == (as_sympy(a) * as_sympy(b)).expand()


@given(coeffs, coeffs.filter(lambda p: bool(p.terms)), coeffs.filter(lambda p: bool(p.terms)))
def test_qfrac_field_laws(a, b, c):
    x = QFrac(a, b)
    y = QFrac(c, b)
    assert x + y == QFrac(a + c, b)
    assert (x * QFrac(b, c)) == QFrac(a, c)
    assert x - x == QFrac(Laurent(), Laurent(1))


def test_qfrac_exact_division_normalises():
    f = QFrac(qfactorial(3), qint(3))
    assert f == qfactorial(2)
    assert QFrac(Laurent(1), qfactorial(2)).at(1) == sympy.Rational(1, 2)
