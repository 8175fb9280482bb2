"""
Finite-dimensional graded bimodules over the algebras in :mod:`nilweyl.algebra`.

A bimodule stores one matrix per left generator and one per right generator.
Right actions are stored as linear maps on column vectors, v -> v.h, so the
matrix of a product is R(g1 g2) = R(g2) R(g1).  A left module is a bimodule
whose right algebra is the trivial algebra Q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import algebra as alg
from .algebra import AlgebraElement, AlgebraId, AlgebraMap
from .config import check_dim
from .linalg import (Echelon, RatMatrix, SparseVec, _clean, as_rational, inverse,
                     kernel_basis, projection_with_complement, rank, vec_axpy)

__all__ = [
    "Bimodule", "BimoduleMap", "TensorData", "regular_bimodule", "restrict", "tensor_over",
    "direct_sum", "dual", "shift", "outer_tensor", "omega", "hom_space", "is_isomorphic",
    "is_indecomposable", "simple_module", "projective_module", "submodule",
    "quotient_module", "extend_from_generators", "tensor_map", "top_coordinates",
    "X_bimodule", "D_bimodule", "I_bimodule", "psi_twisted", "IsoResult",
    "IndecomposabilityResult", "to_text", "from_text", "NotWellDefined",
]


class NotWellDefined(ValueError):
    """Prescribed generator images do not extend to a module map."""


@dataclass
class TensorData:
    """How a tensor product M (x)_B N was built: each basis vector is the class of e_a (x) e_b."""
    first: "Bimodule"
    second: "Bimodule"
    pairs: list
    pure: Callable[[int, int], SparseVec]

    def pure_tensor(self, m: SparseVec, v: SparseVec) -> SparseVec:
        out: dict = {}
        for a, x in m.items():
            for b, y in v.items():
                vec_axpy(out, x * y, self.pure(a, b))
        return out


class Bimodule:
    """(left, right)-bimodule with a homogeneous canonical basis."""

    def __init__(self, left: AlgebraId, right: AlgebraId, dim: int, degrees: Sequence[int],
                 left_action: Sequence[RatMatrix], right_action: Sequence[RatMatrix],
                 name: str = "", tensor_data: Optional[TensorData] = None):
        self.left = left
        self.right = right
        self.dim = dim
        self.degrees = tuple(int(d) for d in degrees)
        self.left_action = tuple(left_action)
        self.right_action = tuple(right_action)
        self.name = name
        self.tensor_data = tensor_data
        if len(self.degrees) != dim:
            raise ValueError("one degree per basis vector is required")
        if len(self.left_action) != len(left.generators):
            raise ValueError(f"{name}: expected {len(left.generators)} left generator matrices")
        if len(self.right_action) != len(right.generators):
            raise ValueError(f"{name}: expected {len(right.generators)} right generator matrices")
        for m in self.left_action + self.right_action:
            if m.shape != (dim, dim):
                raise ValueError(f"{name}: action matrix has shape {m.shape}, expected {(dim, dim)}")
        self._left_cache: dict = {}
        self._right_cache: dict = {}

    def __repr__(self):
        label = self.name or "Bimodule"
        return f"<{label}: ({self.left}, {self.right}) dim {self.dim}>"

    @property
    def is_left_module(self) -> bool:
        return self.right.dim == 1

    # -- actions of arbitrary algebra elements ----------------------------
    def left_apply(self, basis_index: int, v: SparseVec) -> SparseVec:
        """Y . v for the left basis element Y."""
        for g in reversed(self.left.word(basis_index)):
            v = self.left_action[g].apply(v)
            if not v:
                break
        return v

    def right_apply(self, basis_index: int, v: SparseVec) -> SparseVec:
        """v . Y for the right basis element Y."""
        for g in self.right.word(basis_index):
            v = self.right_action[g].apply(v)
            if not v:
                break
        return v

    def left_matrix(self, a: AlgebraElement) -> RatMatrix:
        out = RatMatrix.zeros(self.dim, self.dim)
        for i, c in a.coeffs.items():
            if i not in self._left_cache:
                cols = [self.left_apply(i, {j: 1}) for j in range(self.dim)]
                self._left_cache[i] = RatMatrix.from_columns(self.dim, cols)
            out = out + self._left_cache[i].scale(c)
        return out

    def right_matrix(self, a: AlgebraElement) -> RatMatrix:
        out = RatMatrix.zeros(self.dim, self.dim)
        for i, c in a.coeffs.items():
            if i not in self._right_cache:
                cols = [self.right_apply(i, {j: 1}) for j in range(self.dim)]
                self._right_cache[i] = RatMatrix.from_columns(self.dim, cols)
            out = out + self._right_cache[i].scale(c)
        return out

    # -- invariants --------------------------------------------------------
    def violations(self, graded: bool = True) -> list[str]:
        """Empty when the relations, commutation and homogeneity all hold."""
        out = []
        ident = RatMatrix.identity(self.dim)

        def word_matrix(mats, word, reverse):
            m = ident
            for g in word:
                m = (mats[g] @ m) if reverse else (m @ mats[g])
            return m

        for side, a, mats, rev in (("left", self.left, self.left_action, False),
                                   ("right", self.right, self.right_action, True)):
            for lhs, rhs in a.relations():
                l = word_matrix(mats, lhs, rev)
                r = RatMatrix.zeros(self.dim, self.dim) if rhs is None else word_matrix(mats, rhs, rev)
                if l != r:
                    out.append(f"{side} relation {lhs}={rhs} fails")
        for i, lm in enumerate(self.left_action):
            for j, rm in enumerate(self.right_action):
                if lm @ rm != rm @ lm:
                    out.append(f"left generator {i} and right generator {j} do not commute")
        if graded:
            for side, a, mats in (("left", self.left, self.left_action),
                                  ("right", self.right, self.right_action)):
                for g, m in enumerate(mats):
                    d = a.generator_degrees[g]
                    for i, j, _ in m.entries():
                        if self.degrees[i] != self.degrees[j] + d:
                            out.append(f"{side} generator {g} is not homogeneous")
                            break
        return out

    def check(self, graded: bool = True) -> "Bimodule":
        bad = self.violations(graded)
        if bad:
            raise ValueError(f"{self.name}: " + "; ".join(bad[:3]))
        return self

    def graded_dimension(self) -> dict:
        out: dict = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return out


@dataclass
class BimoduleMap:
    """Intertwiner given by its matrix in the canonical bases; raises degrees by ``shift``."""
    source: Bimodule
    target: Bimodule
    matrix: RatMatrix
    shift: int = 0

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError(f"map matrix has shape {self.matrix.shape}, "
                             f"expected {(self.target.dim, self.source.dim)}")

    def __call__(self, v: SparseVec) -> SparseVec:
        return self.matrix.apply(v)

    def is_intertwining(self) -> bool:
        s, t, T = self.source, self.target, self.matrix
        if not (s.left.compatible(t.left) and s.right.compatible(t.right)):
            return False
        for a, b in zip(s.left_action, t.left_action):
            if T @ a != b @ T:
                return False
        for a, b in zip(s.right_action, t.right_action):
            if T @ a != b @ T:
                return False
        return True

    def is_homogeneous(self) -> bool:
        return all(self.target.degrees[i] == self.source.degrees[j] + self.shift
                   for i, j, _ in self.matrix.entries())

    def is_invertible(self) -> bool:
        return self.source.dim == self.target.dim and rank(self.matrix) == self.source.dim

    def verify(self, graded: bool = False) -> bool:
        return (self.is_intertwining() and self.is_invertible()
                and (not graded or self.is_homogeneous()))

    def then(self, other: "BimoduleMap") -> "BimoduleMap":
        """other after self."""
        return BimoduleMap(self.source, other.target, other.matrix @ self.matrix,
                           self.shift + other.shift)

    def inverse(self) -> "BimoduleMap":
        return BimoduleMap(self.target, self.source, inverse(self.matrix), -self.shift)


# ---------------------------------------------------------------------------
# constructions

def _mult_matrix(a: AlgebraId, g: int, left: bool) -> RatMatrix:
    gi = a.generators[g]
    entries = []
    for j in range(a.dim):
        k = a.mult(gi, j) if left else a.mult(j, gi)
        if k is not None:
            entries.append((k, j, 1))
    return RatMatrix.from_entries(a.dim, a.dim, entries)


def regular_bimodule(a: AlgebraId, name: str = "") -> Bimodule:
    check_dim(a.dim, f"regular bimodule of {a}")
    gens = range(len(a.generators))
    return Bimodule(a, a, a.dim, a.degrees,
                    [_mult_matrix(a, g, True) for g in gens],
                    [_mult_matrix(a, g, False) for g in gens],
                    name=name or f"reg({a})")


def projective_module(n: int) -> Bimodule:
    """P_n: the regular left A_n-module."""
    r = regular_bimodule(alg.nil(n))
    return Bimodule(r.left, alg.trivial(), r.dim, r.degrees, r.left_action, [], name=f"P_{n}")


def simple_module(n: int) -> Bimodule:
    """L_n: one-dimensional, every Y_i acts by zero."""
    a = alg.nil(n)
    return Bimodule(a, alg.trivial(), 1, [0],
                    [RatMatrix.zeros(1, 1) for _ in a.generators], [], name=f"L_{n}")


def restrict(b: Bimodule, side: str, along: AlgebraMap, name: str = "") -> Bimodule:
    """Pull the action on ``side`` back along ``along`` (whose target is that side's algebra)."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    current = b.left if side == "left" else b.right
    if not current.compatible(along.target):
        raise ValueError(f"cannot restrict {side} action of {b.name}: "
                         f"{current} is not {along.target}")
    mat = b.left_matrix if side == "left" else b.right_matrix
    images = [mat(AlgebraElement(current, img.coeffs)) for img in along.images]
    name = name or f"{b.name}|{along.name}"
    if side == "left":
        return Bimodule(along.source, b.right, b.dim, b.degrees, images, b.right_action, name=name)
    return Bimodule(b.left, along.source, b.dim, b.degrees, b.left_action, images, name=name)


def X_bimodule(n: int) -> Bimodule:
    """A_{n+1} as an (A_{n+1}, A_n)-bimodule."""
    return restrict(regular_bimodule(alg.nil(n + 1)), "right", alg.chi(n), name=f"X_{n}")


def D_bimodule(n1: int) -> Bimodule:
    """D_{n1}: A_{n1} as an (A_{n1-1}, A_{n1})-bimodule."""
    if n1 < 1:
        raise ValueError("D_n needs n >= 1")
    return restrict(regular_bimodule(alg.nil(n1)), "left", alg.chi(n1 - 1), name=f"D_{n1}")


def I_bimodule(n: int) -> Bimodule:
    """A_n with left A_{n+1}-action through t_{n+1}."""
    return restrict(regular_bimodule(alg.nil(n)), "left", alg.t_map(n + 1), name=f"I_{n}")


def psi_twisted(n: int) -> Bimodule:
    """A_n^psi: the regular bimodule with right action twisted by psi_n."""
    return restrict(regular_bimodule(alg.nil(n)), "right", alg.psi_map(n), name=f"A_{n}^psi")


def direct_sum(ms: Sequence[Bimodule], name: str = "") -> Bimodule:
    if not ms:
        raise ValueError("direct sum of nothing")
    first = ms[0]
    for m in ms[1:]:
        if not (m.left.compatible(first.left) and m.right.compatible(first.right)):
            raise ValueError("direct summands live over different algebras")
    if len(ms) == 1:
        return first
    left = [RatMatrix.block_diag([m.left_action[g] for m in ms])
            for g in range(len(first.left_action))]
    right = [RatMatrix.block_diag([m.right_action[g] for m in ms])
             for g in range(len(first.right_action))]
    degrees = [d for m in ms for d in m.degrees]
    return Bimodule(first.left, first.right, sum(m.dim for m in ms), degrees, left, right,
                    name=name or " + ".join(m.name for m in ms))


def shift(b: Bimodule, i: int) -> Bimodule:
    """b{i}: every degree raised by i."""
    if i == 0:
        return b
    return Bimodule(b.left, b.right, b.dim, [d + i for d in b.degrees], b.left_action,
                    b.right_action, name=f"{b.name}{{{i}}}", tensor_data=b.tensor_data)


def dual(b: Bimodule) -> Bimodule:
    """Hom_Q(b, Q) with sides exchanged; degrees negate."""
    return Bimodule(b.right, b.left, b.dim, [-d for d in b.degrees],
                    [m.T for m in b.right_action], [m.T for m in b.left_action],
                    name=f"{b.name}*")


def omega(n: Bimodule) -> Bimodule:
    """Dual of a left module, made left again through Y_w -> Y_{w^-1}."""
    if not n.is_left_module:
        raise ValueError("omega is defined on left modules")
    return Bimodule(n.left, n.right, n.dim, [-d for d in n.degrees],
                    [m.T for m in n.left_action], [], name=f"Omega({n.name})")


def outer_tensor(m1: Bimodule, m2: Bimodule, name: str = "") -> Bimodule:
    """m1 (x)_Q m2 over (left1 (x) left2, right1 (x) right2), index i1*dim2 + i2."""
    i1, i2 = RatMatrix.identity(m1.dim), RatMatrix.identity(m2.dim)
    left = [a.kron(i2) for a in m1.left_action] + [i1.kron(a) for a in m2.left_action]
    right = [a.kron(i2) for a in m1.right_action] + [i1.kron(a) for a in m2.right_action]
    degrees = [a + b for a in m1.degrees for b in m2.degrees]
    return Bimodule(alg.tensor(m1.left, m2.left), alg.tensor(m1.right, m2.right),
                    m1.dim * m2.dim, degrees, left, right,
                    name=name or f"({m1.name}#{m2.name})")


# ---------------------------------------------------------------------------
# tensor product over the middle algebra

def _free_basis(b: Bimodule, side: str):
    """
    If b is free as a module on ``side`` (right: over b.right, left: over b.left),
    return (top coordinates, inverse of the basis-change matrix) else None.

    Columns of the basis-change matrix are e_j . beta (or beta . e_j), indexed
    j * dim(B) + beta.
    """
    algebra = b.right if side == "right" else b.left
    mats = b.right_action if side == "right" else b.left_action
    vectors = [c for m in mats for c in m.columns() if c]
    _, top = projection_with_complement(b.dim, vectors)
    if len(top) * algebra.dim != b.dim:
        return None
    act = b.right_apply if side == "right" else b.left_apply
    cols = [act(beta, {j: 1}) for j in top for beta in range(algebra.dim)]
    phi = RatMatrix.from_columns(b.dim, cols)
    try:
        return top, inverse(phi)
    except ZeroDivisionError:
        return None


def tensor_over(m: Bimodule, n: Bimodule, name: str = "", method: str = "auto") -> Bimodule:
    """
    M (x)_B N for B = m.right = n.left.

    When M is free as a right B-module with basis e_j the product has basis
    e_j (x) e_u; symmetrically when N is left-free.  Otherwise the quotient of
    M (x)_Q N by the relations m.g (x) v - m (x) g.v for generators g.
    """
    if not m.right.compatible(n.left):
        raise ValueError(f"middle algebras differ: {m.right} vs {n.left}")
    name = name or f"{m.name}(x){n.name}"
    if method in ("auto", "right-free"):
        fb = _free_basis(m, "right")
        if fb is not None:
            return _tensor_right_free(m, n, fb, name)
        if method == "right-free":
            raise ValueError(f"{m.name} is not free as a right module")
    if method in ("auto", "left-free"):
        fb = _free_basis(n, "left")
        if fb is not None:
            return _tensor_left_free(m, n, fb, name)
        if method == "left-free":
            raise ValueError(f"{n.name} is not free as a left module")
    return _tensor_generic(m, n, name)


def _tensor_right_free(m: Bimodule, n: Bimodule, fb, name: str) -> Bimodule:
    top, phi_inv = fb
    B = m.right
    dB, dN = B.dim, n.dim
    r = len(top)
    dim = r * dN
    check_dim(dim, name)

    apply_cache: dict = {}

    def beta_on(beta: int, u: int) -> SparseVec:
        key = (beta, u)
        if key not in apply_cache:
            apply_cache[key] = n.left_apply(beta, {u: 1})
        return apply_cache[key]

    def pure_vec(mvec: SparseVec, u: int) -> SparseVec:
        c = phi_inv.apply(mvec)
        out: dict = {}
        for idx, coef in c.items():
            k, beta = divmod(idx, dB)
            for row, val in beta_on(beta, u).items():
                t = out.get(k * dN + row, 0) + coef * val
                if t:
                    out[k * dN + row] = _clean(t)
                else:
                    out.pop(k * dN + row, None)
        return out

    left = []
    for lm in m.left_action:
        cols = []
        for j in top:
            img = lm.column(j)
            for u in range(dN):
                cols.append(pure_vec(img, u))
        left.append(RatMatrix.from_columns(dim, cols))
    ident = RatMatrix.identity(r)
    right = [ident.kron(rm) for rm in n.right_action]
    degrees = [m.degrees[j] + n.degrees[u] for j in top for u in range(dN)]
    pairs = [(j, u) for j in top for u in range(dN)]
    pure_cache: dict = {}

    def pure(a: int, b: int) -> SparseVec:
        if (a, b) not in pure_cache:
            pure_cache[(a, b)] = pure_vec({a: 1}, b)
        return pure_cache[(a, b)]

    return Bimodule(m.left, n.right, dim, degrees, left, right, name=name,
                    tensor_data=TensorData(m, n, pairs, pure))


def _tensor_left_free(m: Bimodule, n: Bimodule, fb, name: str) -> Bimodule:
    top, phi_inv = fb
    B = n.left
    dB, dM = B.dim, m.dim
    r = len(top)
    dim = dM * r
    check_dim(dim, name)

    def pure_vec(a: int, nvec: SparseVec) -> SparseVec:
        c = phi_inv.apply(nvec)
        out: dict = {}
        for idx, coef in c.items():
            k, beta = divmod(idx, dB)
            for row, val in m.right_apply(beta, {a: 1}).items():
                vec_axpy(out, coef * val, {row * r + k: 1})
        return out

    ident = RatMatrix.identity(r)
    left = [lm.kron(ident) for lm in m.left_action]
    right = []
    for rm in n.right_action:
        cols = []
        for a in range(dM):
            for j in top:
                cols.append(pure_vec(a, rm.column(j)))
        right.append(RatMatrix.from_columns(dim, cols))
    degrees = [m.degrees[a] + n.degrees[j] for a in range(dM) for j in top]
    pairs = [(a, j) for a in range(dM) for j in top]

    def pure(a: int, b: int) -> SparseVec:
        return pure_vec(a, {b: 1})

    return Bimodule(m.left, n.right, dim, degrees, left, right, name=name,
                    tensor_data=TensorData(m, n, pairs, pure))


def tensor_relations(m: Bimodule, n: Bimodule, full_basis: bool = False) -> list:
    """Spanning vectors (index a*dim N + b) of the relation subspace in M (x)_Q N."""
    B = m.right
    dN = n.dim
    elements = range(B.dim) if full_basis else B.generators
    out = []
    for beta in elements:
        for a in range(m.dim):
            ma = m.right_apply(beta, {a: 1}) if full_basis else None
            for b in range(dN):
                if full_basis:
                    left_part, nb = ma, n.left_apply(beta, {b: 1})
                else:
                    g = B.generators.index(beta)
                    left_part = m.right_action[g].column(a)
                    nb = n.left_action[g].column(b)
                vec: dict = {}
                for i, x in left_part.items():
                    vec_axpy(vec, x, {i * dN + b: 1})
                for j, y in nb.items():
                    vec_axpy(vec, -y, {a * dN + j: 1})
                if vec:
                    out.append(vec)
    return out


def _tensor_generic(m: Bimodule, n: Bimodule, name: str, full_basis: bool = False) -> Bimodule:
    dM, dN = m.dim, n.dim
    check_dim(dM * dN, f"ambient space of {name}")
    proj, comp = projection_with_complement(dM * dN, tensor_relations(m, n, full_basis))
    dim = len(comp)
    iM, iN = RatMatrix.identity(dM), RatMatrix.identity(dN)

    def induced(big: RatMatrix) -> RatMatrix:
        return (proj @ big).select_columns(comp)

    left = [induced(lm.kron(iN)) for lm in m.left_action]
    right = [induced(iM.kron(rm)) for rm in n.right_action]
    pairs = [divmod(c, dN) for c in comp]
    degrees = [m.degrees[a] + n.degrees[b] for a, b in pairs]
    pcols = proj.columns()

    def pure(a: int, b: int) -> SparseVec:
        return pcols[a * dN + b]

    return Bimodule(m.left, n.right, dim, degrees, left, right, name=name,
                    tensor_data=TensorData(m, n, pairs, pure))


def tensor_map(f: BimoduleMap, g: BimoduleMap, source: Bimodule, target: Bimodule) -> BimoduleMap:
    """f (x) g from source = f.source (x) g.source to target = f.target (x) g.target."""
    sd, td = source.tensor_data, target.tensor_data
    if sd is None or td is None:
        raise ValueError("tensor_map needs tensor products built by tensor_over")
    cols = []
    for a, b in sd.pairs:
        cols.append(td.pure_tensor(f({a: 1}), g({b: 1})))
    return BimoduleMap(source, target, RatMatrix.from_columns(target.dim, cols),
                       f.shift + g.shift)


def identity_map(b: Bimodule) -> BimoduleMap:
    return BimoduleMap(b, b, RatMatrix.identity(b.dim))


# ---------------------------------------------------------------------------
# submodules generated by vectors, and the closure behind Hom

def top_coordinates(b: Bimodule) -> list[int]:
    """Canonical coordinates spanning a complement of rad(left) b + b rad(right)."""
    vectors = [c for mat in b.left_action + b.right_action for c in mat.columns() if c]
    return projection_with_complement(b.dim, vectors)[1]


def _apply_shadow(mat: RatMatrix, s: dict, nvars: int) -> dict:
    """Apply an action matrix of the target to a shadow keyed row * nvars + var."""
    if not s:
        return {}
    cols = mat.columns()
    out: dict = {}
    for key, c in s.items():
        row, var = divmod(key, nvars)
        for i, a in cols[row].items():
            k = i * nvars + var
            t = out.get(k, 0) + a * c
            if t:
                out[k] = t
            else:
                out.pop(k, None)
    return out


def _closure(src: Bimodule, tgt: Optional[Bimodule], seeds, nvars: int):
    """
    Grow an echelon basis of the sub-bimodule of src generated by the seed
    vectors, carrying each vector's image under a map given by seed images.

    Returns (echelon, constraints).  A constraint is a shadow that must vanish.
    """
    ech = Echelon()
    constraints = []
    queue = []
    for v, s in seeds:
        c, resid = ech.insert(v, s)
        if c is None:
            if resid:
                constraints.append(resid)
        else:
            queue.append(c)
    src_mats = list(zip(src.left_action, tgt.left_action if tgt else [None] * len(src.left_action)))
    src_mats += list(zip(src.right_action,
                         tgt.right_action if tgt else [None] * len(src.right_action)))
    while queue:
        c = queue.pop()
        v, s = ech.pivots[c]
        for sm, tm in src_mats:
            w = sm.apply(v)
            ws = _apply_shadow(tm, s, nvars) if tm is not None else {}
            if not w and not ws:
                continue
            piv, resid = ech.insert(w, ws)
            if piv is None:
                if resid:
                    constraints.append(resid)
            else:
                queue.append(piv)
    return ech, constraints


def _homogeneous_degree(b: Bimodule, v: SparseVec) -> int:
    degs = {b.degrees[i] for i in v}
    if len(degs) != 1:
        raise ValueError("generating vectors must be nonzero and homogeneous")
    return degs.pop()


def submodule(b: Bimodule, vectors: Sequence[SparseVec], name: str = "") -> tuple[Bimodule, RatMatrix]:
    """The sub-bimodule generated by homogeneous vectors, with its inclusion matrix."""
    for v in vectors:
        _homogeneous_degree(b, v)
    ech, _ = _closure(b, None, [(v, None) for v in vectors], 1)
    red = ech.fully_reduced()
    piv = sorted(red)
    basis = [red[c][0] for c in piv]
    # fully reduced rows have a 1 at their own pivot and 0 at every other pivot
    pos = {c: k for k, c in enumerate(piv)}

    def coords(v: SparseVec) -> SparseVec:
        return {pos[c]: x for c, x in v.items() if c in pos}

    incl = RatMatrix.from_columns(b.dim, basis)
    k = len(basis)
    left = [RatMatrix.from_columns(k, [coords(m.apply(v)) for v in basis]) for m in b.left_action]
    right = [RatMatrix.from_columns(k, [coords(m.apply(v)) for v in basis]) for m in b.right_action]
    degrees = [_homogeneous_degree(b, v) for v in basis]
    sub = Bimodule(b.left, b.right, k, degrees, left, right, name=name or f"sub({b.name})")
    return sub, incl


def quotient_module(b: Bimodule, vectors: Sequence[SparseVec], name: str = "") -> tuple[Bimodule, RatMatrix]:
    """b modulo the sub-bimodule generated by ``vectors``, with the projection matrix."""
    _, incl = submodule(b, vectors)
    proj, comp = projection_with_complement(b.dim, incl.columns())
    left = [(proj @ m).select_columns(comp) for m in b.left_action]
    right = [(proj @ m).select_columns(comp) for m in b.right_action]
    degrees = [b.degrees[c] for c in comp]
    return Bimodule(b.left, b.right, len(comp), degrees, left, right,
                    name=name or f"quot({b.name})"), proj


def extend_from_generators(source: Bimodule, gens: Sequence[SparseVec],
                           images: Sequence[SparseVec], target: Bimodule,
                           shift_by: int = 0) -> BimoduleMap:
    """
    The unique bimodule map sending gens[i] to images[i].

    Raises NotWellDefined if the assignment violates a relation and
    ValueError if the generators do not generate the source.
    """
    if not (source.left.compatible(target.left) and source.right.compatible(target.right)):
        raise ValueError("source and target live over different algebras")
    seeds = [(dict(g), dict(img)) for g, img in zip(gens, images)]
    ech, constraints = _closure(source, target, seeds, 1)
    if constraints:
        raise NotWellDefined("generator images do not satisfy the module relations")
    if len(ech) != source.dim:
        raise ValueError(f"vectors generate only {len(ech)} of {source.dim} dimensions")
    red = ech.fully_reduced()
    cols = [red[c][1] for c in range(source.dim)]
    return BimoduleMap(source, target, RatMatrix.from_columns(target.dim, cols), shift_by)


def hom_space(m: Bimodule, n: Bimodule, graded: bool = False, shift_by: int = 0) -> list[BimoduleMap]:
    """
    Basis of Hom(m, n).  With ``graded`` only maps raising degree by
    ``shift_by`` are returned.
    """
    if not (m.left.compatible(n.left) and m.right.compatible(n.right)):
        raise ValueError(f"Hom between different algebras: {m!r}, {n!r}")
    if m.dim == 0 or n.dim == 0:
        return []
    tops = top_coordinates(m)
    # variables: (top index, admissible target coordinate)
    allowed = []
    for j in tops:
        if graded:
            want = m.degrees[j] + shift_by
            allowed.append([c for c in range(n.dim) if n.degrees[c] == want])
        else:
            allowed.append(list(range(n.dim)))
    nvars = sum(len(a) for a in allowed)
    if nvars == 0:
        return []
    seeds = []
    var = 0
    for j, cs in zip(tops, allowed):
        s = {}
        for c in cs:
            s[c * nvars + var] = 1
            var += 1
        seeds.append(({j: 1}, s))
    ech, constraints = _closure(m, n, seeds, nvars)
    if len(ech) != m.dim:
        raise AssertionError("top coordinates failed to generate the module")
    # each constraint shadow gives one linear equation per target row
    eqs = []
    for s in constraints:
        rows: dict = {}
        for key, c in s.items():
            row, v = divmod(key, nvars)
            rows.setdefault(row, {})[v] = c
        eqs.extend(rows.values())
    K = kernel_basis(RatMatrix(len(eqs), nvars, eqs)) if eqs else RatMatrix.identity(nvars)
    red = ech.fully_reduced()
    shadows = [red[c][1] for c in range(m.dim)]
    out = []
    for t in K.columns():
        cols = []
        for s in shadows:
            col: dict = {}
            for key, c in s.items():
                row, v = divmod(key, nvars)
                tv = t.get(v)
                if tv:
                    vec_axpy(col, c * tv, {row: 1})
            cols.append(col)
        out.append(BimoduleMap(m, n, RatMatrix.from_columns(n.dim, cols), shift_by))
    return out


# ---------------------------------------------------------------------------
# isomorphism and indecomposability

@dataclass
class IsoResult:
    """Outcome of an isomorphism search; ``certificate`` is set exactly when found."""
    certificate: Optional[BimoduleMap]
    hom_dims: tuple = ()
    witness: Optional[str] = None
    strategy: str = ""

    def __bool__(self):
        return self.certificate is not None


def action_rank_witness(m: Bimodule, n: Bimodule) -> Optional[str]:
    """A generator whose action has different rank on m and n, if any."""
    if m.dim != n.dim:
        return f"dimensions differ: {m.dim} vs {n.dim}"
    for side, a, ma, na in (("left", m.left, m.left_action, n.left_action),
                            ("right", m.right, m.right_action, n.right_action)):
        for g, (x, y) in enumerate(zip(ma, na)):
            rx, ry = rank(x), rank(y)
            if rx != ry:
                return (f"rank of {side} {a.generator_names[g]} action differs: "
                        f"{rx} vs {ry}")
    return None


def _combination(maps: Sequence[BimoduleMap], coeffs) -> RatMatrix:
    out = maps[0].matrix.scale(coeffs[0])
    for f, c in zip(maps[1:], coeffs[1:]):
        if c:
            out = out + f.matrix.scale(c)
    return out


def is_isomorphic(m: Bimodule, n: Bimodule, seed: int = 0, graded: bool = False,
                  shift_by: int = 0, random_tries: int = 20) -> IsoResult:
    """
    Search Hom(m, n) for an invertible map: basis maps first, then fixed
    small-integer combinations, then seeded random ones.
    """
    if m.dim != n.dim:
        return IsoResult(None, witness=f"dimensions differ: {m.dim} vs {n.dim}")
    if not (m.left.compatible(n.left) and m.right.compatible(n.right)):
        return IsoResult(None, witness="different algebras")
    if m.dim == 0:
        return IsoResult(BimoduleMap(m, n, RatMatrix.zeros(0, 0), shift_by), strategy="zero")
    basis = hom_space(m, n, graded, shift_by)

    def found(mat: RatMatrix, how: str) -> Optional[IsoResult]:
        if rank(mat) != m.dim:
            return None
        f = BimoduleMap(m, n, mat, shift_by)
        if not f.is_intertwining():
            raise AssertionError("Hom basis produced a non-intertwining map")
        return IsoResult(f, hom_dims=(len(basis),), strategy=how)

    if basis:
        for i, f in enumerate(basis):
            r = found(f.matrix, f"basis map {i}")
            if r:
                return r
        h = len(basis)
        fixed = [[1] * h, [i + 1 for i in range(h)], [(-1) ** i for i in range(h)],
                 [2 ** i for i in range(h)], [3 ** i for i in range(h)]]
        for coeffs in fixed:
            r = found(_combination(basis, coeffs), f"fixed combination {coeffs[:4]}")
            if r:
                return r
        rng = random.Random(seed)
        for t in range(random_tries):
            coeffs = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(h)]
            r = found(_combination(basis, coeffs), f"random combination #{t}")
            if r:
                return r
    back = hom_space(n, m, graded, -shift_by)
    return IsoResult(None, hom_dims=(len(basis), len(back)),
                     witness=action_rank_witness(m, n) or "no invertible map found")


@dataclass
class IndecomposabilityResult:
    verdict: str  # indecomposable | decomposable | inconclusive
    end_dim: int
    semisimple_dim: int
    idempotent: Optional[RatMatrix] = None


def _trace(mat: RatMatrix):
    return sum((mat.rows[i].get(i, 0) for i in range(mat.nrows)), 0)


def _minimal_polynomial(x: RatMatrix) -> list:
    """Coefficients c_0..c_d (monic) of the minimal polynomial of x."""
    n = x.nrows
    ech = Echelon()
    power = RatMatrix.identity(n)
    k = 0
    while True:
        flat = {i * n + j: v for i, j, v in power.entries()}
        c, resid = ech.insert(flat, {k: 1})
        if c is None:
            # sum_i resid[i] x^i = 0 with resid[k] = 1 after reduction
            lead = resid[k]
            return [as_rational(Fraction(resid.get(i, 0)) / lead) for i in range(k + 1)]
        power = power @ x
        k += 1


def _poly_at(coeffs, x: RatMatrix) -> RatMatrix:
    out = RatMatrix.zeros(x.nrows, x.ncols)
    for c in reversed(coeffs):
        out = out @ x + RatMatrix.identity(x.nrows).scale(c)
    return out


def _idempotent_from(x: RatMatrix) -> Optional[RatMatrix]:
    import sympy
    t = sympy.Symbol("t")
    coeffs = _minimal_polynomial(x)
    p = sum((sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * t ** i
             for i, c in enumerate(coeffs)), sympy.Integer(0))
    _, factors = sympy.factor_list(p, t)
    if len(factors) < 2:
        return None
    f0, e0 = factors[0]
    a = sympy.Poly(f0 ** e0, t)
    b = sympy.Poly(sympy.prod([f ** e for f, e in factors[1:]]), t)
    s, _, g = sympy.gcdex(a.as_expr(), b.as_expr(), t)
    if sympy.simplify(g - 1) != 0:
        return None
    # e = s*a evaluated at x is idempotent: 1 mod b and 0 mod a
    e_poly = sympy.Poly(sympy.expand(s * a.as_expr()), t)
    cs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
          for c in reversed(e_poly.all_coeffs())]
    e = _poly_at(cs, x)
    if e @ e != e or e.is_zero() or e.is_identity():
        return None
    return e


def is_indecomposable(b: Bimodule, seed: int = 0, tries: int = 12) -> IndecomposabilityResult:
    """
    Decide via End(b): local iff End/rad End is one-dimensional, where rad End
    is the null space of the trace form tr(xy) on b.
    """
    if b.dim == 0:
        return IndecomposabilityResult("decomposable", 0, 0)
    ends = [f.matrix for f in hom_space(b, b)]
    h = len(ends)
    gram = RatMatrix.from_dense([[_trace(x @ y) for y in ends] for x in ends])
    ss = rank(gram)
    if ss == 1:
        return IndecomposabilityResult("indecomposable", h, ss)
    rng = random.Random(seed)
    candidates = list(ends)
    for _ in range(tries):
        coeffs = [rng.randint(-5, 5) for _ in range(h)]
        candidates.append(_combination([BimoduleMap(b, b, e) for e in ends], coeffs))
    for x in candidates:
        e = _idempotent_from(x)
        if e is not None:
            return IndecomposabilityResult("decomposable", h, ss, e)
    return IndecomposabilityResult("inconclusive", h, ss)


# ---------------------------------------------------------------------------
# text serialisation

def _fmt(v) -> str:
    return str(as_rational(v))


def to_text(b: Bimodule) -> str:
    lines = ["bimodule v1", f"name {b.name or '-'}", f"left {b.left}", f"right {b.right}",
             f"dim {b.dim}", "degrees " + " ".join(map(str, b.degrees))]
    for side, a, mats in (("left_action", b.left, b.left_action),
                          ("right_action", b.right, b.right_action)):
        for g, mat in enumerate(mats):
            lines.append(f"{side} {a.generator_names[g]}")
            for row in mat.to_dense():
                lines.append(" ".join(_fmt(x) for x in row))
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_algebra(text: str) -> AlgebraId:
    text = text.strip()
    if text == "Q":
        return alg.trivial()
    factors = []
    for part in text.split("*"):
        head, args = part.rstrip(")").split("(")
        nums = [int(x) for x in args.split(",")]
        if head == "Nil":
            factors.append(alg.Nil(*nums))
        elif head == "NilWreath":
            factors.append(alg.NilWreath(*nums))
        else:
            raise ValueError(f"unknown algebra factor {part!r}")
    return AlgebraId(tuple(factors))


def from_text(text: str) -> Bimodule:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0] != "bimodule v1":
        raise ValueError("not a bimodule v1 document")
    it = iter(lines[1:])
    header: dict = {}
    for key in ("name", "left", "right", "dim", "degrees"):
        line = next(it)
        k, _, rest = line.partition(" ")
        if k != key:
            raise ValueError(f"expected {key!r}, found {line!r}")
        header[key] = rest
    left, right = parse_algebra(header["left"]), parse_algebra(header["right"])
    dim = int(header["dim"])
    degrees = [int(x) for x in header["degrees"].split()] if dim else []
    mats: dict = {"left_action": [], "right_action": []}
    line = next(it)
    while line != "end":
        side, _, _ = line.partition(" ")
        if side not in mats:
            raise ValueError(f"unexpected line {line!r}")
        rows = [[as_rational(x) for x in next(it).split()] for _ in range(dim)]
        mats[side].append(RatMatrix.from_dense(rows, ncols=dim))
        line = next(it)
    name = header["name"]
    return Bimodule(left, right, dim, degrees, mats["left_action"], mats["right_action"],
                    name="" if name == "-" else name)
