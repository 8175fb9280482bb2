"""Nil wreath products A_n(k) and the k-fold Weyl relation."""

from __future__ import annotations

from math import factorial

from . import algebra as alg
from . import perm as P
from .algebra import AlgebraElement, AlgebraId, multiply
from .bimodule import (Bimodule, BimoduleMap, direct_sum, extend_from_generators, regular_bimodule,
                       restrict, shift, tensor_over)
from .config import check_dim
from .functor import _finish, weyl_certificate
from .linalg import RatMatrix, rank
from .report import CheckReport, Outcome, Timer

__all__ = ["wreath_multiply", "wreath_trace", "wreath_gram", "wreath_X", "wreath_D",
           "wreath_weyl_certificate", "wreath_weyl_check", "wreath_frobenius_check", "z_power"]


def _single_wreath(algebra: AlgebraId):
    facs = algebra.factors
    if len(facs) != 1 or not isinstance(facs[0], alg.NilWreath):
        raise ValueError(f"{algebra} is not a single nil wreath product")
    return facs[0]


def wreath_multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _single_wreath(a.algebra)
    return multiply(a, b)


def wreath_trace(a: AlgebraElement):
    """Coefficient of Y_{w_0} z_1^{k-1} ... z_n^{k-1}."""
    return a.coeffs.get(_single_wreath(a.algebra).top, 0)


def wreath_gram(n: int, k: int) -> RatMatrix:
    a = alg.wreath(n, k)
    check_dim(a.dim, f"A_{n}({k})")
    return alg.gram_matrix(a)


def z_power(n: int, k: int, strand: int, power: int) -> int:
    """Basis index of z_strand^power in A_n(k) (strands are 1-based)."""
    f = _single_wreath(alg.wreath(n, k))
    exps = tuple(power if j == strand - 1 else 0 for j in range(n))
    return f.index[(P.identity(n), exps)]


def wreath_X(n: int, k: int) -> Bimodule:
    """A_{n+1}(k) as an (A_{n+1}(k), A_n(k))-bimodule."""
    return restrict(regular_bimodule(alg.wreath(n + 1, k)), "right", alg.chi_wreath(n, k),
                    name=f"X_{n}({k})")


def wreath_D(n1: int, k: int) -> Bimodule:
    """A_{n1}(k) as an (A_{n1-1}(k), A_{n1}(k))-bimodule."""
    if n1 < 1:
        raise ValueError("D_n(k) needs n >= 1")
    return restrict(regular_bimodule(alg.wreath(n1, k)), "left", alg.chi_wreath(n1 - 1, k),
                    name=f"D_{n1}({k})")


def wreath_weyl_certificate(n: int, k: int, graded: bool = False) -> tuple[BimoduleMap, dict]:
    """
    A_n(k)^{(+)k} (+) X_{n-1}(k) (x) D_n(k) -> D_{n+1}(k) (x) X_n(k): the j-th copy
    of 1 goes to 1 (x) z_{n+1}^j and 1 (x) 1 goes to 1 (x) Y_n.
    """
    big = alg.wreath(n + 1, k)
    check_dim(big.dim, f"A_{n + 1}({k})")
    lhs = tensor_over(wreath_D(n + 1, k), wreath_X(n, k), name=f"D_{n + 1}({k})(x)X_{n}({k})")
    An = regular_bimodule(alg.wreath(n, k), name=f"A_{n}({k})")
    one = big.unit
    parts, gens, images = [], [], []
    off = 0
    for j in range(k):
        parts.append(shift(An, j) if graded else An)
        gens.append({off + alg.wreath(n, k).unit: 1})
        images.append(lhs.tensor_data.pure(one, z_power(n + 1, k, n + 1, j)))
        off += An.dim
    dims = {"lhs": lhs.dim, "A_n(k)": An.dim, "copies": k}
    if n >= 1:
        xd = tensor_over(wreath_X(n - 1, k), wreath_D(n, k), name=f"X_{n - 1}({k})(x)D_{n}({k})")
        parts.append(shift(xd, 1) if graded else xd)
        small = alg.wreath(n, k).unit
        gens.append({off + i: c for i, c in xd.tensor_data.pure(small, small).items()})
        images.append(lhs.tensor_data.pure(one, big.generators[n - 1]))
        dims["X(x)D"] = xd.dim
    rhs = direct_sum(parts, name=f"A_{n}({k})^{k}+X(x)D")
    return extend_from_generators(rhs, gens, images, lhs), dims


def _dims_text(d: dict) -> str:
    return f"{d['lhs']} = {d['copies']}*{d['A_n(k)']} + {d.get('X(x)D', 0)}"


def wreath_weyl_check(n: int, k: int, graded: bool = False) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        f, dims = wreath_weyl_certificate(n, k, graded)
        out.expect(f.is_intertwining(), "certificate intertwines both actions")
        out.expect(f.is_invertible(), "certificate is invertible")
        if graded:
            out.expect(f.is_homogeneous(), "certificate preserves degree")
        out.expect(dims["lhs"] == k * dims["A_n(k)"] + dims.get("X(x)D", 0),
                   f"exactly {k} identity summands: {_dims_text(dims)}")
        if k == 1:
            out.expect(agrees_with_nil(n), "k = 1 matches the nilCoxeter certificate bit for bit")
    return _finish("wreath-weyl", {"n": n, "k": k},
                   "D_{n+1}(k) (x) X_n(k) = A_n(k)^{(+)k} (+) X_{n-1}(k) (x) D_n(k)", out,
                   dims=_dims_text(dims), maps=[("m1^(j)|m2", f, graded)], elapsed=t)


def agrees_with_nil(n: int) -> bool:
    """At k = 1 the bimodules and the certificate coincide with the nilCoxeter ones."""
    fw, _ = wreath_weyl_certificate(n, 1)
    fn, _ = weyl_certificate(n)
    pairs = [(fw.matrix, fn.matrix)]
    for bw, bn in ((fw.source, fn.source), (fw.target, fn.target)):
        if bw.degrees != bn.degrees:
            return False
        pairs += list(zip(bw.left_action, bn.left_action)) + list(zip(bw.right_action, bn.right_action))
        if len(bw.left_action) != len(bn.left_action) or len(bw.right_action) != len(bn.right_action):
            return False
    return all(a == b for a, b in pairs)


def wreath_frobenius_check(bound: int = 100) -> CheckReport:
    """dim A_n(k) = n! k^n and the trace form is nondegenerate whenever n! k^n <= bound."""
    with Timer() as t:
        out = Outcome()
        seen = []
        for k in range(1, bound + 1):
            for n in range(0, 8):
                d = factorial(n) * k ** n
                if d > bound:
                    break
                if n == 0 and k > 1:
                    continue
                a = alg.wreath(n, k)
                out.expect(a.dim == d, f"dim A_{n}({k}) = {d}", quiet=True)
                out.expect(rank(wreath_gram(n, k)) == d, f"gram of A_{n}({k}) has full rank", quiet=True)
                seen.append((n, k))
    return _finish("wreath-frobenius", {"bound": bound},
                   "A_n(k) is Frobenius for the trace picking Y_{w_0} z^{k-1}...z^{k-1}", out,
                   dims=f"{len(seen)} algebras, largest dim {max(factorial(n) * k ** n for n, k in seen)}",
                   elapsed=t)
