"""
Algebra-level checks and the registry of named checks used by the command line.

Every registered entry takes a parameter namespace and returns a list of
CheckReport objects, in a deterministic order.
"""

from __future__ import annotations

from itertools import product
from math import factorial
from types import SimpleNamespace
from typing import Callable

from . import algebra as alg
from . import bialgebra as B
from . import functor as F
from . import wreath as W
from .decat import verify_decategorification
from .linalg import rank
from .qpoly import qfactorial
from .report import CheckReport, Outcome, Timer

__all__ = ["CHECKS", "DEFAULTS", "frobenius_check", "nakayama_check", "divided_difference_check",
           "dimension_check", "decat_check", "run_check", "check_names"]


def dimension_check(n_max: int = 7, poincare_max: int = 6) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        for n in range(n_max + 1):
            out.expect(alg.nil(n).dim == factorial(n), f"dim A_{n} = {factorial(n)}", quiet=True)
        for n in range(poincare_max + 1):
            out.expect(alg.poincare_polynomial(alg.nil(n)) == qfactorial(n),
                       f"Poincare polynomial of A_{n} is [{n}]!", quiet=True)
    return F._finish("dimension", {"n_max": n_max, "poincare_max": poincare_max},
                     "dim A_n = n! and the Poincare polynomial is [n]!", out,
                     dims={f"A_{n_max}": factorial(n_max)}, elapsed=t)


def frobenius_check(n_max: int = 5) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        ranks = {}
        for n in range(n_max + 1):
            r = rank(alg.gram_matrix(n))
            ranks[f"A_{n}"] = r
            out.expect(r == factorial(n), f"gram matrix of A_{n} has rank {factorial(n)}")
    return F._finish("frobenius", {"n_max": n_max}, "tr(ab) is a nondegenerate form on A_n", out,
                     dims=ranks, elapsed=t)


def nakayama_check(n_max: int = 5) -> CheckReport:
    """tr(ab) = tr(psi(b) a) for every pair of basis elements."""
    with Timer() as t:
        out = Outcome()
        pairs = 0
        for n in range(n_max + 1):
            a_n = alg.nil(n)
            basis = [alg.AlgebraElement.basis(a_n, i) for i in range(a_n.dim)]
            psis = [alg.psi(b) for b in basis]
            bad = 0
            for a in basis:
                for b, pb in zip(basis, psis):
                    if alg.trace(a * b) != alg.trace(pb * a):
                        bad += 1
            pairs += len(basis) ** 2
            out.expect(bad == 0, f"A_{n}: {len(basis) ** 2} pairs, {bad} failures")
    return F._finish("nakayama", {"n_max": n_max}, "tr(ab) = tr(psi(b) a); psi is the Nakayama automorphism",
                     out, dims={"pairs": pairs}, elapsed=t)


def _monomials(nvars: int, max_degree: int):
    for e in product(range(max_degree + 1), repeat=nvars):
        if sum(e) <= max_degree:
            yield alg.MVPoly.monomial(e)


def divided_difference_check(max_degree: int = 6, max_vars: int = 4) -> CheckReport:
    """Y_i^2 = 0, distant commutation and the braid relation on every monomial."""
    with Timer() as t:
        out = Outcome()
        count = 0
        for nv in range(2, max_vars + 1):
            d = alg.divided_difference_apply
            for f in _monomials(nv, max_degree):
                count += 1
                for i in range(1, nv):
                    out.expect(d(i, d(i, f)).is_zero(), f"Y_{i}^2 on {f}", quiet=True)
                    if i + 1 < nv:
                        out.expect(d(i, d(i + 1, d(i, f))) == d(i + 1, d(i, d(i + 1, f))),
                                   f"braid {i} on {f}", quiet=True)
                    for j in range(i + 2, nv):
                        out.expect(d(i, d(j, f)) == d(j, d(i, f)), f"Y_{i}Y_{j} on {f}", quiet=True)
    return F._finish("divided-diff", {"max_degree": max_degree, "max_vars": max_vars},
                     "divided differences satisfy the nilCoxeter relations", out,
                     dims={"monomials": count}, elapsed=t)


def decat_check(n_max: int = 4, seed: int = 0) -> CheckReport:
    with Timer() as t:
        out = verify_decategorification(n_max, seed)
    return F._finish("decat", {"n_max": n_max, "seed": seed},
                     "classes of functor images match the Weyl action, the pairing and the comultiplication",
                     out, elapsed=t)


# ---------------------------------------------------------------------------
# registry

def _blocks(p, arity: int, default):
    if p.block:
        if len(p.block) != arity:
            raise ValueError(f"--block needs {arity} sizes, got {len(p.block)}")
        return [tuple(p.block)]
    return default


def _compositions(total_max: int, parts: int):
    return [c for s in range(total_max + 1) for c in product(range(s + 1), repeat=parts) if sum(c) == s]


def _weyl(graded: bool):
    def run(p):
        ns = [p.n] if p.n is not None else range(0, p.n_max + 1)
        return [F.weyl_relation_check(n, graded) for n in ns]
    return run


def _wreath_weyl(p):
    if p.n is not None or p.k is not None:
        return [W.wreath_weyl_check(p.n if p.n is not None else 1, p.k if p.k is not None else 2)]
    pairs = [(0, 2), (1, 2), (1, 3), (2, 2)] + [(n, 1) for n in range(1, p.n_max + 1)]
    return [W.wreath_weyl_check(n, k) for n, k in pairs]


CHECKS: dict[str, Callable] = {
    "dimension": lambda p: [dimension_check(p.n_max)],
    "frobenius": lambda p: [frobenius_check(p.n_max)],
    "nakayama": lambda p: [nakayama_check(p.n_max)],
    "divided-diff": lambda p: [divided_difference_check(p.n_max)],
    "weyl": _weyl(False),
    "graded-weyl": _weyl(True),
    "functor-weyl": lambda p: [F.functor_weyl_check(p.n_max, False, p.seed),
                               F.functor_weyl_check(p.n_max, True, p.seed)],
    "adjunction": lambda p: [F.adjunction_report("left", p.n_max, p.seed)],
    "twisted-adjunction": lambda p: [F.adjunction_report("right-twisted", p.n_max, p.seed)],
    "duality": lambda p: [F.duality_checks(p.n_max, p.seed)],
    "integral": lambda p: [F.integral_checks(p.n_max, p.seed)],
    "mackey": lambda p: [B.mackey_check(*q) for q in _blocks(p, 4, [
        (n, s - n, k, s - k) for s in range(p.n_max + 1) for n in range(s + 1) for k in range(s + 1)])],
    "leibniz": lambda p: [B.leibniz_check(n, m, p.seed) for n, m in _blocks(
        p, 2, [c for c in _compositions(p.n_max, 2) if sum(c) >= 1])],
    "assoc": lambda p: [B.coassoc_and_assoc_check(*c) for c in _blocks(p, 3, _compositions(p.n_max, 3))],
    "pentagon": lambda p: [B.pentagon_check(*c) for c in _blocks(p, 4, _compositions(p.n_max, 4))],
    "quasi-comm": lambda p: [B.quasi_commutativity_check(n, m, p.seed)
                             for n, m in _blocks(p, 2, _compositions(p.n_max, 2))],
    "unit-counit": lambda p: [B.unit_counit_check(p.n_max, p.seed)],
    "decat": lambda p: [decat_check(p.n_max, p.seed)],
    "indecomposable": lambda p: [F.indecomposability_report(p.bound, p.seed)],
    "wreath-weyl": _wreath_weyl,
    "wreath-frobenius": lambda p: [W.wreath_frobenius_check(p.bound)],
}

# default size parameter per check: n_max, or the dimension bound for the last two
DEFAULTS = {
    "dimension": 7, "frobenius": 5, "nakayama": 5, "divided-diff": 6, "weyl": 5, "graded-weyl": 5,
    "functor-weyl": 3, "adjunction": 3, "twisted-adjunction": 3, "duality": 3, "integral": 4,
    "mackey": 4, "leibniz": 3, "assoc": 4, "pentagon": 4, "quasi-comm": 3, "unit-counit": 3,
    "decat": 4, "indecomposable": 48, "wreath-weyl": 3, "wreath-frobenius": 100,
}
_BOUND_CHECKS = {"indecomposable", "wreath-frobenius"}


def check_names() -> list[str]:
    return list(CHECKS)


def run_check(name: str, n=None, n_max=None, k=None, block=None, seed: int = 0,
              bound=None) -> list[CheckReport]:
    """Run one registered check (or all of them, in registration order)."""
    if name == "all":
        out = []
        for each in CHECKS:
            out += run_check(each, n=n, n_max=n_max, seed=seed)
        return out
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}; choose from {', '.join(CHECKS)} or all")
    default = DEFAULTS[name]
    p = SimpleNamespace(n=n, k=k, block=block, seed=seed,
                        n_max=default if n_max is None or name in _BOUND_CHECKS else n_max,
                        bound=bound if bound is not None else default)
    return CHECKS[name](p)
