"""
End-to-end acceptance runs at full size, each against a wall-clock budget.

Run with ``pytest tests/test_acceptance.py -s`` to see one status line per criterion
(the lines are also written when output capture is on).
"""

import time
from itertools import permutations
from math import factorial

import pytest

from nilweyl import bialgebra as B
from nilweyl import functor as F
from nilweyl import perm as P
from nilweyl import wreath as W
from nilweyl.bimodule import D_bimodule, I_bimodule, is_isomorphic, regular_bimodule, tensor_over
from nilweyl import algebra as alg
from nilweyl.checks import decat_check, dimension_check, divided_difference_check, frobenius_check, nakayama_check


def orbit_count(k, l, n, m):
    """Double cosets S_k x S_l \\ S_{k+l} / S_n x S_m as orbits on one-line tuples."""
    size = k + l
    left = [p for p in permutations(range(size)) if set(p[:k]) == set(range(k))]
    right = [p for p in permutations(range(size)) if set(p[:n]) == set(range(n))]
    seen, count = set(), 0
    for w in permutations(range(size)):
        if w in seen:
            continue
        count += 1
        for a in left:
            for b in right:
                seen.add(tuple(a[w[b[i]]] for i in range(size)))
    return count


def dims_and_poincare():
    return [dimension_check(7, 6)]


def frobenius_and_nakayama():
    return [frobenius_check(5), nakayama_check(5)]


def divided_differences():
    return [divided_difference_check(6, 4)]


def weyl_certificates():
    reports = [F.weyl_relation_check(n) for n in range(1, 6)]
    assert all(factorial(n + 1) == factorial(n) + n * factorial(n) for n in range(1, 6))
    return reports


def functor_weyl():
    return [F.functor_weyl_check(3, False), F.functor_weyl_check(3, True)]


def adjunctions():
    return [F.adjunction_report("left", 3), F.adjunction_report("right-twisted", 3)]


def duality():
    return [F.duality_checks(3)]


def integral():
    r = F.integral_checks(4)
    lhs = tensor_over(I_bimodule(1), D_bimodule(2))
    iso = is_isomorphic(lhs, regular_bimodule(alg.nil(2)))
    assert not iso and iso.witness == "rank of left Y1 action differs: 0 vs 1"
    return [r]


def mackey():
    reports = []
    for s in range(6):
        for n in range(s + 1):
            for k in range(s + 1):
                m, l = s - n, s - k
                r = B.mackey_check(n, m, k, l)
                count = orbit_count(k, l, n, m)
                assert count == r.witness["double_cosets"] == len(list(P.admissible_r(n, m, k, l)))
                assert count == min(n, m, k, l) + 1
                reports.append(r)
    return reports


def pentagon():
    return [B.pentagon_check(a, b, c, d)
            for s in range(6) for a in range(s + 1) for b in range(s + 1 - a) for c in range(s + 1 - a - b)
            for d in [s - a - b - c]]


def decategorification():
    return [decat_check(4)]


def wreath():
    reports = [W.wreath_frobenius_check(100)]
    reports += [W.wreath_weyl_check(n, k) for n, k in [(0, 2), (1, 2), (1, 3), (2, 2)]]
    reports += [W.wreath_weyl_check(n, 1) for n in range(1, 6)]
    assert all(W.agrees_with_nil(n) for n in range(1, 6))
    return reports


def indecomposability():
    r = F.indecomposability_report(48)
    assert all(v.startswith("indecomposable") for v in r.witness.values())
    return [r]


CRITERIA = [
    (1, "dim A_n = n! and Poincare polynomial [n]!", dims_and_poincare, 5),
    (2, "trace form nondegenerate, Nakayama identity", frobenius_and_nakayama, 60),
    (3, "divided differences satisfy the nilCoxeter relations", divided_differences, 30),
    (4, "Weyl relation certificates n = 1..5", weyl_certificates, 120),
    (5, "functor-level Weyl relation, graded and ungraded", functor_weyl, 60),
    (6, "adjunction dimension equalities", adjunctions, 60),
    (7, "duality isomorphisms", duality, 60),
    (8, "integral bimodule and its failure on the other side", integral, 30),
    (9, "double coset decomposition via g_r -> Y_w(r)", mackey, 120),
    (10, "pentagon composite is the identity", pentagon, 60),
    (11, "decategorification", decategorification, 30),
    (12, "nil wreath products", wreath, 120),
    (13, "canonical basis bimodules are indecomposable", indecomposability, 60),
]


@pytest.mark.parametrize("number, title, run, limit", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, title, run, limit, capsys):
    start = time.perf_counter()
    error = None
    try:
        reports = run()
    except AssertionError as exc:
        reports, error = [], f"assertion failed: {exc}"
    elapsed = time.perf_counter() - start
    failed = [f"{r.check}{r.params}: {r.details}" for r in reports if not r.passed]
    ok = error is None and not failed and elapsed < limit
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} {title} "
              f"({len(reports)} reports, {elapsed:.1f}s, limit {limit}s)")
    assert error is None, error
    assert not failed, failed[:3]
    assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
