"""
NilCoxeter algebras A_n, nil wreath products A_n(k) = A_n x| (Q[z]/z^k)^{(x)n},
their tensor products, and the divided-difference representation.

Every algebra here is monomial: the product of two basis elements is either
zero or a single basis element.  Basis elements of a tensor product are
indexed in lexicographic order of the factor bases, first factor most
significant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import product
from math import prod
from typing import Optional, Sequence, Union

from . import perm as P
from .linalg import RatMatrix, as_rational
from .qpoly import Laurent

__all__ = [
    "Nil", "NilWreath", "AlgebraId", "AlgebraElement", "AlgebraMap", "MVPoly",
    "nil", "wreath", "tensor", "trivial", "multiply", "trace", "frobenius_trace",
    "gram_matrix", "psi", "antiinvolution_u", "poincare_polynomial",
    "divided_difference_apply", "chi", "chi_wreath", "gamma", "t_map", "psi_map",
    "swap_map", "parabolic_map", "identity_map",
]


# ---------------------------------------------------------------------------
# factors

@dataclass(frozen=True)
class Nil:
    """The nilCoxeter algebra on n strands."""
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    def __str__(self):
        return f"Nil({self.n})"

    @cached_property
    def basis(self) -> tuple[P.Permutation, ...]:
        return P.all_permutations(self.n)

    @cached_property
    def index(self) -> dict:
        return {w: i for i, w in enumerate(self.basis)}

    @cached_property
    def _lengths(self) -> tuple[int, ...]:
        return tuple(P.length(w) for w in self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def unit(self) -> int:
        return self.index[P.identity(self.n)]

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return tuple(self.index[P.simple_reflection(i, self.n)] for i in range(1, self.n))

    @cached_property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(f"Y{i}" for i in range(1, self.n))

    @cached_property
    def generator_degrees(self) -> tuple[int, ...]:
        return (1,) * (self.n - 1)

    def degree(self, i: int) -> int:
        return self._lengths[i]

    def mult(self, i: int, j: int) -> Optional[int]:
        u, v = self.basis[i], self.basis[j]
        w = P.compose(u, v)
        k = self.index[w]
        if self._lengths[k] == self._lengths[i] + self._lengths[j]:
            return k
        return None

    def word(self, i: int) -> tuple[int, ...]:
        return tuple(s - 1 for s in P.reduced_word(self.basis[i]))

    def relations(self) -> list:
        out = []
        g = self.n - 1
        for i in range(g):
            out.append(((i, i), None))
            for j in range(i + 2, g):
                out.append(((i, j), (j, i)))
            if i + 1 < g:
                out.append(((i, i + 1, i), (i + 1, i, i + 1)))
        return out

    @property
    def top(self) -> int:
        """Index of Y_{w_0}."""
        return self.index[P.longest_element(self.n)]


@dataclass(frozen=True)
class NilWreath:
    """A_n(k): basis z^a Y_w, letters to the left, with Y_w z_j = z_{w(j)} Y_w."""
    n: int
    k: int

    def __post_init__(self):
        if self.n < 0 or self.k < 1:
            raise ValueError("need n >= 0 and k >= 1")

    def __str__(self):
        return f"NilWreath({self.n},{self.k})"

    @cached_property
    def basis(self) -> tuple:
        exps = list(product(range(self.k), repeat=self.n))
        return tuple((w, a) for w in P.all_permutations(self.n) for a in exps)

    @cached_property
    def index(self) -> dict:
        return {b: i for i, b in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def unit(self) -> int:
        return self.index[(P.identity(self.n), (0,) * self.n)]

    @cached_property
    def generators(self) -> tuple[int, ...]:
        e = P.identity(self.n)
        ys = [self.index[(P.simple_reflection(i, self.n), (0,) * self.n)]
              for i in range(1, self.n)]
        if self.k == 1:
            # z = 0 when k = 1, so the letters drop out of the presentation
            return tuple(ys)
        zs = [self.index[(e, tuple(int(j == i) for j in range(self.n)))]
              for i in range(self.n)]
        return tuple(ys + zs)

    @cached_property
    def generator_names(self) -> tuple[str, ...]:
        ys = [f"Y{i}" for i in range(1, self.n)]
        zs = [f"z{i}" for i in range(1, self.n + 1)] if self.k > 1 else []
        return tuple(ys + zs)

    @cached_property
    def generator_degrees(self) -> tuple[int, ...]:
        return (1,) * len(self.generators)

    def degree(self, i: int) -> int:
        w, a = self.basis[i]
        return P.length(w) + sum(a)

    def mult(self, i: int, j: int) -> Optional[int]:
        (u, a), (v, b) = self.basis[i], self.basis[j]
        if P.length(P.compose(u, v)) != P.length(u) + P.length(v):
            return None
        # Y_u z^b = z^{u.b} Y_u with (u.b)_{u(j)} = b_j
        moved = [0] * self.n
        for pos, e in enumerate(b, start=1):
            moved[u(pos) - 1] = e
        c = tuple(x + y for x, y in zip(a, moved))
        if any(x >= self.k for x in c):
            return None
        return self.index[(P.compose(u, v), c)]

    def word(self, i: int) -> tuple[int, ...]:
        w, a = self.basis[i]
        ny = self.n - 1
        letters = [ny + j for j, e in enumerate(a) for _ in range(e)]
        return tuple(letters) + tuple(s - 1 for s in P.reduced_word(w))

    def relations(self) -> list:
        out = Nil(self.n).relations()
        if self.k == 1:
            return out
        ny = self.n - 1
        for j in range(self.n):
            out.append(((ny + j,) * self.k, None))
            for l in range(j + 1, self.n):
                out.append(((ny + j, ny + l), (ny + l, ny + j)))
        for i in range(ny):
            for j in range(self.n):
                # s_i sends strand j+1 to s_i(j+1)
                target = j
                if j == i:
                    target = i + 1
                elif j == i + 1:
                    target = i
                out.append(((i, ny + j), (ny + target, i)))
        return out

    @property
    def top(self) -> int:
        return self.index[(P.longest_element(self.n), (self.k - 1,) * self.n)]


Factor = Union[Nil, NilWreath]


# ---------------------------------------------------------------------------
# algebra descriptors

@dataclass(frozen=True)
class AlgebraId:
    """Tensor product of nilCoxeter / nil wreath factors (empty = Q)."""
    factors: tuple = ()
    _mult_cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __str__(self):
        if not self.factors:
            return "Q"
        return "*".join(str(f) for f in self.factors)

    @cached_property
    def canonical(self) -> tuple:
        """Factors with trivial (one-dimensional) ones removed."""
        return tuple(f for f in self.factors if f.dim > 1)

    def compatible(self, other: "AlgebraId") -> bool:
        """Same algebra up to dropping trivial factors (same basis and generators)."""
        return self.canonical == other.canonical

    @cached_property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    @cached_property
    def dim(self) -> int:
        return prod(self.dims)

    @cached_property
    def _radix(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for d in reversed(self.dims):
            out.append(acc)
            acc *= d
        return tuple(reversed(out))

    def split(self, i: int) -> tuple[int, ...]:
        return tuple((i // r) % d for r, d in zip(self._radix, self.dims))

    def join(self, parts: Sequence[int]) -> int:
        return sum(p * r for p, r in zip(parts, self._radix))

    @cached_property
    def unit(self) -> int:
        return self.join([f.unit for f in self.factors])

    @cached_property
    def _gen_table(self) -> tuple:
        """(factor index, local generator index) per global generator."""
        return tuple((fi, g) for fi, f in enumerate(self.factors)
                     for g in range(len(f.generators)))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Basis index of each generator."""
        out = []
        units = [f.unit for f in self.factors]
        for fi, g in self._gen_table:
            parts = list(units)
            parts[fi] = self.factors[fi].generators[g]
            out.append(self.join(parts))
        return tuple(out)

    @cached_property
    def generator_names(self) -> tuple[str, ...]:
        if len(self.factors) == 1:
            return self.factors[0].generator_names
        return tuple(f"{self.factors[fi].generator_names[g]}@{fi + 1}"
                     for fi, g in self._gen_table)

    @cached_property
    def generator_degrees(self) -> tuple[int, ...]:
        return tuple(self.factors[fi].generator_degrees[g] for fi, g in self._gen_table)

    @cached_property
    def _gen_offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for f in self.factors:
            out.append(acc)
            acc += len(f.generators)
        return tuple(out)

    def degree(self, i: int) -> int:
        return sum(f.degree(p) for f, p in zip(self.factors, self.split(i)))

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(self.degree(i) for i in range(self.dim))

    def mult(self, i: int, j: int) -> Optional[int]:
        """Basis product: index of Y_i Y_j, or None when it vanishes."""
        key = (i, j)
        cache = self._mult_cache
        if key in cache:
            return cache[key]
        out = []
        for f, a, b in zip(self.factors, self.split(i), self.split(j)):
            c = f.mult(a, b)
            if c is None:
                cache[key] = None
                return None
            out.append(c)
        res = self.join(out)
        cache[key] = res
        return res

    def word(self, i: int) -> tuple[int, ...]:
        """A word in global generator indices whose product is basis element i."""
        out = []
        for fi, (f, p) in enumerate(zip(self.factors, self.split(i))):
            out.extend(self._gen_offsets[fi] + g for g in f.word(p))
        return tuple(out)

    def relations(self) -> list:
        """Defining relations as (word, word-or-None) pairs in global generator indices."""
        out = []
        for fi, f in enumerate(self.factors):
            off = self._gen_offsets[fi]
            for lhs, rhs in f.relations():
                out.append((tuple(off + g for g in lhs),
                            None if rhs is None else tuple(off + g for g in rhs)))
        gens = self._gen_table
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                if gens[a][0] != gens[b][0]:
                    out.append(((a, b), (b, a)))
        return out

    @property
    def top(self) -> int:
        return self.join([f.top for f in self.factors])

    def basis_label(self, i: int) -> str:
        parts = []
        for f, p in zip(self.factors, self.split(i)):
            b = f.basis[p]
            if isinstance(f, Nil):
                parts.append("Y" + "".join(map(str, b.word)))
            else:
                w, a = b
                parts.append("z" + "".join(map(str, a)) + "Y" + "".join(map(str, w.word)))
        return "(x)".join(parts) if parts else "1"


def nil(n: int) -> AlgebraId:
    return AlgebraId((Nil(n),))


def wreath(n: int, k: int) -> AlgebraId:
    return AlgebraId((NilWreath(n, k),))


def tensor(*algs: AlgebraId) -> AlgebraId:
    return AlgebraId(tuple(f for a in algs for f in a.factors))


def trivial() -> AlgebraId:
    return AlgebraId(())


# ---------------------------------------------------------------------------
# elements

class AlgebraElement:
    """Sparse linear combination of basis elements; zero coefficients are dropped."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: AlgebraId, coeffs: Optional[dict] = None):
        self.algebra = algebra
        coeffs = coeffs or {}
        for i in coeffs:
            if not 0 <= i < algebra.dim:
                raise ValueError(f"basis index {i} out of range for {algebra}")
        self.coeffs = {i: as_rational(c) for i, c in coeffs.items() if c}

    @classmethod
    def basis(cls, algebra: AlgebraId, i: int) -> "AlgebraElement":
        return cls(algebra, {i: 1})

    @classmethod
    def one(cls, algebra: AlgebraId) -> "AlgebraElement":
        return cls(algebra, {algebra.unit: 1})

    @classmethod
    def gen(cls, algebra: AlgebraId, g: int) -> "AlgebraElement":
        return cls(algebra, {algebra.generators[g]: 1})

    @classmethod
    def Y(cls, n: int, w) -> "AlgebraElement":
        """Y_w in A_n, with w a Permutation or a one-line word."""
        alg = nil(n)
        w = w if isinstance(w, P.Permutation) else P.Permutation(tuple(w))
        return cls(alg, {alg.factors[0].index[w]: 1})

    def _check(self, other: "AlgebraElement"):
        if not self.algebra.compatible(other.algebra):
            raise ValueError(f"algebra mismatch: {self.algebra} vs {other.algebra}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "AlgebraElement":
        c = as_rational(c)
        return AlgebraElement(self.algebra, {i: v * c for i, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra.compatible(other.algebra) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> Optional[int]:
        """Common degree of the terms, or None when zero or inhomogeneous."""
        degs = {self.algebra.degree(i) for i in self.coeffs}
        return degs.pop() if len(degs) == 1 else None

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{self.algebra.basis_label(i)}"
                          for i, c in sorted(self.coeffs.items()))


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check(b)
    alg = a.algebra
    out: dict = {}
    for i, x in a.coeffs.items():
        for j, y in b.coeffs.items():
            k = alg.mult(i, j)
            if k is not None:
                out[k] = out.get(k, 0) + x * y
    return AlgebraElement(alg, out)


def _single_nil(a: AlgebraElement) -> Nil:
    facs = a.algebra.factors
    if len(facs) != 1 or not isinstance(facs[0], Nil):
        raise ValueError(f"operation needs a single nilCoxeter factor, got {a.algebra}")
    return facs[0]


def trace(a: AlgebraElement):
    """tr_n: the coefficient of Y_{w_0}."""
    f = _single_nil(a)
    return a.coeffs.get(f.top, 0)


def frobenius_trace(a: AlgebraElement):
    """Coefficient of the top basis element (product of the factor traces)."""
    return a.coeffs.get(a.algebra.top, 0)


def gram_matrix(alg: Union[int, AlgebraId]) -> RatMatrix:
    """G[u][v] = trace(Y_u Y_v)."""
    from .config import check_dim
    if isinstance(alg, int):
        alg = nil(alg)
    check_dim(alg.dim, f"gram matrix of {alg}")
    top = alg.top
    entries = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            if alg.mult(i, j) == top:
                entries.append((i, j, 1))
    return RatMatrix.from_entries(alg.dim, alg.dim, entries)


def psi(a: AlgebraElement) -> AlgebraElement:
    """Automorphism Y_i -> Y_{n-i}, i.e. Y_w -> Y_{w0 w w0}."""
    f = _single_nil(a)
    w0 = P.longest_element(f.n)
    out = {}
    for i, c in a.coeffs.items():
        w = f.basis[i]
        out[f.index[P.compose(P.compose(w0, w), w0)]] = c
    return AlgebraElement(a.algebra, out)


def antiinvolution_u(a: AlgebraElement) -> AlgebraElement:
    """Y_w -> Y_{w^{-1}}; fixes each Y_i and reverses products."""
    f = _single_nil(a)
    return AlgebraElement(a.algebra, {f.index[P.inverse(f.basis[i])]: c
                                      for i, c in a.coeffs.items()})


def poincare_polynomial(alg: AlgebraId) -> Laurent:
    out: dict = {}
    for d in alg.degrees:
        out[d] = out.get(d, 0) + 1
    return Laurent(out)


# ---------------------------------------------------------------------------
# algebra maps

@dataclass(frozen=True)
class AlgebraMap:
    """Algebra homomorphism given by the images of the source generators."""
    name: str
    source: AlgebraId
    target: AlgebraId
    images: tuple  # of AlgebraElement over target, one per source generator

    def __post_init__(self):
        if len(self.images) != len(self.source.generators):
            raise ValueError(f"{self.name}: need {len(self.source.generators)} images")

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        out = AlgebraElement(self.target)
        one = AlgebraElement.one(self.target)
        for i, c in a.coeffs.items():
            term = one
            for g in self.source.word(i):
                term = term * self.images[g]
            out = out + term.scale(c)
        return out

    def respects_relations(self) -> bool:
        one = AlgebraElement.one(self.target)
        for lhs, rhs in self.source.relations():
            left = reduce(lambda x, g: x * self.images[g], lhs, one)
            right = (AlgebraElement(self.target) if rhs is None
                     else reduce(lambda x, g: x * self.images[g], rhs, one))
            if left != right:
                return False
        return True

    def then(self, other: "AlgebraMap") -> "AlgebraMap":
        """other after self."""
        if not self.target.compatible(other.source):
            raise ValueError("cannot compose: algebra mismatch")
        return AlgebraMap(f"{other.name}.{self.name}", self.source, other.target,
                          tuple(other(x) for x in self.images))


def identity_map(alg: AlgebraId) -> AlgebraMap:
    return AlgebraMap("id", alg, alg,
                      tuple(AlgebraElement.gen(alg, g) for g in range(len(alg.generators))))


def parabolic_map(source: AlgebraId, target: AlgebraId, placement, name: str = "") -> AlgebraMap:
    """
    Factor f of the source goes into target factor placement[f][0], shifted by
    placement[f][1] strands: Y_i -> Y_{i+off}, z_j -> z_{j+off}.
    """
    images = []
    for fi, f in enumerate(source.factors):
        tf, off = placement[fi]
        tfac = target.factors[tf]
        units = [x.unit for x in target.factors]
        for g, gname in enumerate(f.generator_names):
            letter, idx = gname[0], int(gname[1:])
            local = tfac.generator_names.index(f"{letter}{idx + off}")
            parts = list(units)
            parts[tf] = tfac.generators[local]
            images.append(AlgebraElement(target, {target.join(parts): 1}))
    return AlgebraMap(name or "parabolic", source, target, tuple(images))


def chi(n: int) -> AlgebraMap:
    """A_n -> A_{n+1}, Y_i -> Y_i."""
    return parabolic_map(nil(n), nil(n + 1), [(0, 0)], name=f"chi_{n}")


def chi_wreath(n: int, k: int) -> AlgebraMap:
    """A_n(k) -> A_{n+1}(k) on the first n strands."""
    return parabolic_map(wreath(n, k), wreath(n + 1, k), [(0, 0)], name=f"chi_{n}({k})")


def gamma(n: int, m: int) -> AlgebraMap:
    """A_n (x) A_m -> A_{n+m}, Y_i (x) 1 -> Y_i, 1 (x) Y_i -> Y_{n+i}."""
    return parabolic_map(tensor(nil(n), nil(m)), nil(n + m), [(0, 0), (0, n)],
                         name=f"gamma_{n},{m}")


def swap_map(n: int, m: int) -> AlgebraMap:
    """A_n (x) A_m -> A_m (x) A_n exchanging the factors."""
    return parabolic_map(tensor(nil(n), nil(m)), tensor(nil(m), nil(n)), [(1, 0), (0, 0)],
                         name=f"swap_{n},{m}")


def t_map(n1: int) -> AlgebraMap:
    """t_{n+1}: A_{n+1} -> A_n, Y_i -> Y_i for i < n and Y_n -> 0."""
    n = n1 - 1
    src, tgt = nil(n1), nil(n)
    images = [AlgebraElement.gen(tgt, i) for i in range(n - 1)]
    if n1 >= 2:
        images.append(AlgebraElement(tgt))
    return AlgebraMap(f"t_{n1}", src, tgt, tuple(images))


def psi_map(n: int) -> AlgebraMap:
    alg = nil(n)
    return AlgebraMap(f"psi_{n}", alg, alg,
                      tuple(AlgebraElement.gen(alg, n - 2 - i) for i in range(n - 1)))


# ---------------------------------------------------------------------------
# polynomials and divided differences

class MVPoly:
    """Polynomial in x_1..x_n with exact rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[dict] = None):
        self.n = n
        terms = terms or {}
        for e in terms:
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {n} variables")
        self.terms = {tuple(e): as_rational(c) for e, c in terms.items() if c}

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "MVPoly":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def var(cls, i: int, n: int) -> "MVPoly":
        return cls.monomial([int(j == i - 1) for j in range(n)])

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MVPoly(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "MVPoly":
        return MVPoly(self.n, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MVPoly):
            return self.scale(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MVPoly(self.n, out)

    def swap(self, i: int) -> "MVPoly":
        """s_i f: exchange x_i and x_{i+1}."""
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[i - 1], e[i] = e[i], e[i - 1]
            out[tuple(e)] = c
        return MVPoly(self.n, out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, MVPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{i + 1}^{a}" if a > 1 else f"x{i + 1}"
                            for i, a in enumerate(e) if a)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def divided_difference_apply(i: int, f: MVPoly) -> MVPoly:
    """
    Y_i f = (f - s_i f) / (x_{i+1} - x_i), computed monomial by monomial.

    For x_i^a x_{i+1}^b the quotient is -(x_i x_{i+1})^b h_{a-b-1}(x_i, x_{i+1})
    when a > b, +(x_i x_{i+1})^a h_{b-a-1} when b > a, and 0 when a = b.
    """
    if not 1 <= i < f.n:
        raise ValueError(f"Y_{i} needs at least {i + 1} variables, got {f.n}")
    out: dict = {}
    for e, c in f.terms.items():
        a, b = e[i - 1], e[i]
        if a == b:
            continue
        lo, d, sign = (b, a - b, -1) if a > b else (a, b - a, 1)
        for j in range(d):
            ne = list(e)
            ne[i - 1] = lo + j
            ne[i] = lo + d - 1 - j
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + sign * c
    return MVPoly(f.n, out)


