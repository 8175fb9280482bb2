from itertools import permutations as iperms

import pytest
from hypothesis import given, strategies as st

from nilweyl import perm as P


def perm_strategy(n):
    return st.permutations(list(range(1, n + 1))).map(P.Permutation)


def inversions(word):
    return sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])


def test_rejects_non_permutations():
    with pytest.raises(ValueError):
        P.Permutation((1, 1))
    with pytest.raises(ValueError):
        P.simple_reflection(3, 3)


def test_compose_examples():
    s1, s2 = P.simple_reflection(1, 3), P.simple_reflection(2, 3)
    assert P.compose(s1, s2).word == (2, 3, 1)
    assert P.compose(P.simple_reflection(1, 2), P.simple_reflection(1, 2)) == P.identity(2)
    w = P.Permutation((3, 1, 2))
    assert P.compose(P.identity(3), w) == w
    with pytest.raises(ValueError):
        P.compose(P.identity(2), P.identity(3))


def test_length_examples():
    assert P.length(P.identity(4)) == 0
    assert P.length(P.longest_element(3)) == 3
    assert P.length(P.Permutation((2, 3, 1))) == 2
    assert [P.longest_element(n).word for n in (1, 2, 3)] == [(1,), (2, 1), (3, 2, 1)]


def test_lengths_add_examples():
    s1, s2 = P.simple_reflection(1, 3), P.simple_reflection(2, 3)
    assert P.lengths_add(s1, s2)
    assert not P.lengths_add(s1, s1)
    assert P.lengths_add(P.identity(3), P.longest_element(3))


def test_lexicographic_enumeration():
    for n in range(6):
        assert [w.word for w in P.all_permutations(n)] == sorted(iperms(range(1, n + 1)))


@pytest.mark.parametrize("n", range(1, 6))
def test_length_counts_inversions_and_bounds(n):
    top = n * (n - 1) // 2
    for w in P.all_permutations(n):
        assert P.length(w) == inversions(w.word)
        assert 0 <= P.length(w) <= top


@pytest.mark.parametrize("n", range(1, 5))
def test_length_subadditive_with_parity(n):
    ws = P.all_permutations(n)
    for u in ws:
        for v in ws:
            luv = P.length(P.compose(u, v))
            assert luv <= P.length(u) + P.length(v)
            assert (luv - P.length(u) - P.length(v)) % 2 == 0


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(perm_strategy(n), perm_strategy(n), perm_strategy(n))))
def test_compose_associative(t):
    u, v, w = t
    assert P.compose(P.compose(u, v), w) == P.compose(u, P.compose(v, w))
    e = P.identity(u.n)
    assert P.compose(e, u) == u == P.compose(u, e)
    assert P.compose(u, P.inverse(u)) == e


@given(st.integers(1, 6).flatmap(perm_strategy))
def test_reduced_word_multiplies_back(w):
    word = P.reduced_word(w)
    assert len(word) == P.length(w)
    acc = P.identity(w.n)
    for i in word:
        acc = P.compose(acc, P.simple_reflection(i, w.n))
    assert acc == w


def test_right_coset_reps():
    assert P.right_coset_reps(0) == [P.identity(1)]
    assert [P.length(w) for w in P.right_coset_reps(1)] == [0, 1]
    for n in range(5):
        reps = P.right_coset_reps(n)
        assert [P.length(w) for w in reps] == list(range(n + 1))
        # brute force: each coset w S_n (S_n fixing n+1) has exactly one rep, and it is the shortest
        small = [w for w in P.all_permutations(n + 1) if w(n + 1) == n + 1]
        for r in reps:
            coset = {P.compose(r, s) for s in small}
            assert min(coset, key=P.length) == r
        assert len({frozenset(P.compose(r, s) for s in small) for r in reps}) == n + 1


def brute_double_cosets(k, l, n, m):
    left = [w for w in P.all_permutations(k + l) if all(w(i) <= k for i in range(1, k + 1))]
    right = [w for w in P.all_permutations(n + m) if all(w(i) <= n for i in range(1, n + 1))]
    remaining = set(P.all_permutations(k + l))
    out = []
    while remaining:
        w = min(remaining)
        c = {P.compose(P.compose(a, w), b) for a in left for b in right}
        remaining -= c
        out.append(c)
    return out


def quadruples(total_max):
    for s in range(total_max + 1):
        for n in range(s + 1):
            for k in range(s + 1):
                yield n, s - n, k, s - k


def test_double_coset_examples():
    d = P.double_cosets(1, 1, 1, 1)
    assert d.count == 2 and set(d.reps) == {P.identity(2), P.simple_reflection(1, 2)}
    assert P.double_cosets(1, 2, 3, 0).count == 1
    d = P.double_cosets(1, 2, 2, 1)
    assert d.count == len(brute_double_cosets(1, 2, 2, 1)) == 2
    with pytest.raises(ValueError):
        P.double_cosets(1, 1, 1, 2)


@pytest.mark.parametrize("q", list(quadruples(5)))
def test_double_cosets_partition_and_match_brute_force(q):
    n, m, k, l = q
    d = P.double_cosets(k, l, n, m)
    brute = brute_double_cosets(k, l, n, m)
    assert {frozenset(c) for c in brute} == set(d.cosets)
    union = set().union(*d.cosets)
    assert len(union) == sum(len(c) for c in d.cosets) == len(P.all_permutations(n + m))
    for rep, c in zip(d.reps, d.cosets):
        lengths = sorted(P.length(x) for x in c)
        assert P.length(rep) == lengths[0] and (len(lengths) == 1 or lengths[1] > lengths[0])
    assert d.count == len(P.admissible_r(n, m, k, l)) == min(n, m, k, l) + 1


@pytest.mark.parametrize("q", list(quadruples(6)))
def test_w_of_r_gives_minimal_reps(q):
    n, m, k, l = q
    ws = [P.w_of_r(n, m, k, l, r) for r in P.admissible_r(n, m, k, l)]
    assert len(set(ws)) == len(ws)
    assert set(ws) == set(P.double_cosets(k, l, n, m).reps)


def test_w_of_r_examples():
    assert P.w_of_r(1, 1, 1, 1, 1) == P.identity(2)
    assert P.w_of_r(1, 1, 1, 1, 0) == P.simple_reflection(1, 2)
    with pytest.raises(ValueError):
        P.w_of_r(1, 1, 1, 1, 2)
