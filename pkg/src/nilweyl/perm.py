"""
Permutations of {1..n} in one-line notation, lengths, and (double) coset
representatives for Young subgroups.

>>> s1, s2 = simple_reflection(1, 3), simple_reflection(2, 3)
>>> compose(s1, s2).word
(2, 3, 1)
>>> length(longest_element(3))
3
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

__all__ = [
    "Permutation", "DoubleCosetDatum", "identity", "simple_reflection",
    "compose", "inverse", "length", "longest_element", "lengths_add",
    "all_permutations", "reduced_word", "right_coset_reps", "young_subgroup",
    "double_cosets", "w_of_r", "admissible_r",
]


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation w of {1..n}, stored as the word (w(1), ..., w(n))."""
    word: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(i) for i in self.word)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"not a permutation of 1..{len(w)}: {self.word}")
        object.__setattr__(self, "word", w)

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __repr__(self):
        return f"Permutation({list(self.word)})"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def simple_reflection(i: int, n: int) -> Permutation:
    """The transposition s_i = (i, i+1) in S_n."""
    if not 1 <= i < n:
        raise ValueError(f"s_{i} does not exist in S_{n}")
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return Permutation(tuple(w))


def compose(u: Permutation, v: Permutation) -> Permutation:
    """(u v)(i) = u(v(i))."""
    if u.n != v.n:
        raise ValueError(f"cannot compose elements of S_{u.n} and S_{v.n}")
    return Permutation(tuple(u.word[j - 1] for j in v.word))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * w.n
    for i, j in enumerate(w.word, start=1):
        inv[j - 1] = i
    return Permutation(tuple(inv))


def length(w: Permutation) -> int:
    """Number of inversions of w."""
    word = w.word
    return sum(
        1 for a in range(len(word)) for b in range(a + 1, len(word))
        if word[a] > word[b]
    )


def longest_element(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def lengths_add(u: Permutation, v: Permutation) -> bool:
    return length(compose(u, v)) == length(u) + length(v)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """S_n in lexicographic order of one-line words."""
    return tuple(Permutation(p) for p in permutations(range(1, n + 1)))


def reduced_word(w: Permutation) -> tuple[int, ...]:
    """
    Indices (i_1, ..., i_k) with w = s_{i_1} ... s_{i_k} and k = length(w).

    Peels right descents: if w(i) > w(i+1) then w = (w s_i) s_i with
    w s_i one shorter.
    """
    word = list(w.word)
    out = []
    while True:
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                out.append(i + 1)
                break
        else:
            break
    return tuple(reversed(out))


def right_coset_reps(n: int) -> list[Permutation]:
    """
    Minimal length representatives of S_{n+1}/S_n:
    e, s_n, s_{n-1}s_n, ..., s_1...s_n (in that order).
    """
    reps = [identity(n + 1)]
    for i in range(n, 0, -1):
        w = identity(n + 1)
        for j in range(i, n + 1):
            w = compose(w, simple_reflection(j, n + 1))
        reps.append(w)
    return reps


def young_subgroup(parts: tuple[int, ...]) -> list[Permutation]:
    """S_{p_1} x ... x S_{p_r} inside S_{sum p}, acting on consecutive blocks."""
    blocks = []
    start = 1
    for p in parts:
        blocks.append(list(range(start, start + p)))
        start += p
    out = [[]]
    for block in blocks:
        out = [prefix + [block[j - 1] for j in perm]
               for prefix in out for perm in permutations(range(1, len(block) + 1))]
    return [Permutation(tuple(w)) for w in out]


@dataclass(frozen=True)
class DoubleCosetDatum:
    """Double cosets (S_k x S_l) \\ S_{k+l} / (S_n x S_m)."""
    k: int
    l: int
    n: int
    m: int
    reps: tuple[Permutation, ...]
    cosets: tuple[frozenset, ...]
    r_values: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.reps)


def admissible_r(n: int, m: int, k: int, l: int) -> range:
    return range(max(0, n - l), min(n, k) + 1)


def double_cosets(k: int, l: int, n: int, m: int) -> DoubleCosetDatum:
    """Enumerate the double cosets by brute force over S_{k+l}."""
    if k + l != n + m:
        raise ValueError(f"k+l={k + l} differs from n+m={n + m}")
    left = young_subgroup((k, l))
    right = young_subgroup((n, m))
    seen: set = set()
    found = []
    for w in all_permutations(k + l):
        if w in seen:
            continue
        coset = frozenset(compose(compose(a, w), b) for a in left for b in right)
        seen |= coset
        lens = sorted((length(x), x.word) for x in coset)
        if len(lens) > 1 and lens[0][0] == lens[1][0]:
            raise AssertionError(f"minimal element of coset of {w} is not unique")
        found.append((lens[0][0], lens[0][1], coset))
    found.sort(key=lambda t: (t[0], t[1]))
    return DoubleCosetDatum(
        k, l, n, m,
        reps=tuple(Permutation(word) for _, word, _ in found),
        cosets=tuple(c for _, _, c in found),
        r_values=tuple(admissible_r(n, m, k, l)),
    )


def w_of_r(n: int, m: int, k: int, l: int, r: int) -> Permutation:
    """
    Fix 1..r, move the next n-r positions right by k-r, the following k-r
    positions left by n-r, and fix the remaining l+r-n.
    """
    if k + l != n + m:
        raise ValueError(f"k+l={k + l} differs from n+m={n + m}")
    if r not in admissible_r(n, m, k, l):
        raise ValueError(f"r={r} outside the admissible range for {(n, m, k, l)}")
    word = []
    for i in range(1, n + m + 1):
        if i <= r:
            word.append(i)
        elif i <= n:
            word.append(i + (k - r))
        elif i <= n + k - r:
            word.append(i - (n - r))
        else:
            word.append(i)
    return Permutation(tuple(word))
