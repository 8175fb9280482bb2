"""Dense sympy oracles shared by several test modules."""

import sympy

from nilweyl.algebra import AlgebraElement
from nilweyl.linalg import RatMatrix


def sym(m: RatMatrix):
    return sympy.Matrix(m.to_dense())


def hom_dim_oracle(m, n):
    """dim of {F : F L_m(g) = L_n(g) F, F R_m(h) = R_n(h) F} by a dense sympy nullspace."""
    rows = []
    k = n.dim * m.dim
    for a, b in list(zip(m.left_action, n.left_action)) + list(zip(m.right_action, n.right_action)):
        A, B = sym(a), sym(b)
        # vec(F A - B F) = (A^T kron I - I kron B) vec(F), column-major vec
        rows.append(sympy.kronecker_product(A.T, sympy.eye(n.dim)) - sympy.kronecker_product(sympy.eye(m.dim), B))
    if not rows:
        return k
    return k - sympy.Matrix.vstack(*rows).rank()


def tensor_dim_oracle(m, n):
    """dim of M (x) N modulo all relations m.a (x) v - m (x) a.v, a running over the full basis."""
    B = m.right
    cols = []
    for i in range(B.dim):
        a = AlgebraElement.basis(B, i)
        R, L = m.right_matrix(a), n.left_matrix(a)
        cols.append(sympy.kronecker_product(sym(R), sympy.eye(n.dim))
                    - sympy.kronecker_product(sympy.eye(m.dim), sym(L)))
    return m.dim * n.dim - sympy.Matrix.hstack(*cols).rank()
