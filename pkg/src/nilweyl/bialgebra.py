"""
Multiplication (induction along gamma_{n,m}) and comultiplication
(restriction) on the blocks, the double-coset decomposition, and the
coherence checks built from them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Optional

from . import algebra as alg
from . import perm as P
from .bimodule import (Bimodule, BimoduleMap, direct_sum, extend_from_generators, hom_space,
                       is_isomorphic, outer_tensor, psi_twisted, regular_bimodule, restrict,
                       shift, simple_module, tensor_over)
from .decat import class_of, derivative
from .functor import F_D, _finish, block, probes
from .report import CheckReport, Outcome, Timer

__all__ = [
    "BlockPair", "M_bimodule", "delta_block", "J", "mackey_summand", "mackey_check",
    "leibniz_check", "coassoc_and_assoc_check", "pentagon_check", "quasi_commutativity_check",
    "unit_counit_check", "counit", "bialgebra_adjunction_check", "swap_module",
]


@dataclass(frozen=True)
class BlockPair:
    """Source blocks (n, m) and, where relevant, target blocks (k, l)."""
    n: int
    m: int
    k: Optional[int] = None
    l: Optional[int] = None

    def __post_init__(self):
        vals = [v for v in (self.n, self.m, self.k, self.l) if v is not None]
        if any(v < 0 for v in vals):
            raise ValueError("block sizes must be nonnegative")
        if self.k is not None and self.l is not None and self.n + self.m != self.k + self.l:
            raise ValueError(f"n+m={self.n + self.m} differs from k+l={self.k + self.l}")


def M_bimodule(n: int, m: int) -> Bimodule:
    """A_{n+m} as an (A_{n+m}, A_n (x) A_m)-bimodule via gamma_{n,m}."""
    return restrict(regular_bimodule(alg.nil(n + m)), "right", alg.gamma(n, m), name=f"M_{n},{m}")


def delta_block(n: int, k: int, l: int, graded: bool = False) -> Bimodule:
    """A_n as an (A_k (x) A_l, A_n)-bimodule via gamma_{k,l}; graded: shifted up by l."""
    if k + l != n:
        raise ValueError(f"k+l={k + l} differs from n={n}")
    b = restrict(regular_bimodule(alg.nil(n)), "left", alg.gamma(k, l), name=f"Delta_{n};{k},{l}")
    return shift(b, l) if graded else b


def J(N1: Bimodule, N2: Bimodule) -> Bimodule:
    """Induction of N1 (x) N2 from A_n (x) A_m to A_{n+m}."""
    n, m = block(N1), block(N2)
    return tensor_over(M_bimodule(n, m), outer_tensor(N1, N2), name=f"J({N1.name},{N2.name})")


def swap_module(N: Bimodule, n: int, m: int) -> Bimodule:
    """An (A_m (x) A_n)-module viewed over A_n (x) A_m by exchanging factors."""
    return restrict(N, "left", alg.swap_map(n, m), name=f"S({N.name})")


# ---------------------------------------------------------------------------
# double cosets

def mackey_summand(n: int, m: int, k: int, l: int, r: int) -> Bimodule:
    """B_r = (A_k (x) A_l) (x)_H (A_n (x) A_m), H = A_r (x) A_{n-r} (x) A_{k-r} (x) A_{l+r-n}."""
    H = alg.tensor(alg.nil(r), alg.nil(n - r), alg.nil(k - r), alg.nil(l + r - n))
    kl, nm = alg.tensor(alg.nil(k), alg.nil(l)), alg.tensor(alg.nil(n), alg.nil(m))
    into_kl = alg.parabolic_map(H, kl, [(0, 0), (1, 0), (0, r), (1, n - r)], name="H->kl")
    into_nm = alg.parabolic_map(H, nm, [(0, 0), (0, r), (1, 0), (1, k - r)], name="H->nm")
    left = restrict(regular_bimodule(kl), "right", into_kl)
    right = restrict(regular_bimodule(nm), "left", into_nm)
    return tensor_over(left, right, name=f"B_{r}")


def mackey_dimension(n: int, m: int, k: int, l: int, r: int) -> int:
    return (factorial(k) * factorial(l) * factorial(n) * factorial(m)
            // (factorial(r) * factorial(n - r) * factorial(k - r) * factorial(l + r - n)))


def mackey_target(n: int, m: int, k: int, l: int) -> Bimodule:
    """A_{n+m} as an (A_k (x) A_l, A_n (x) A_m)-bimodule."""
    b = restrict(regular_bimodule(alg.nil(n + m)), "left", alg.gamma(k, l))
    return restrict(b, "right", alg.gamma(n, m), name=f"A_{n + m}[{k},{l}|{n},{m}]")


def mackey_check(n: int, m: int, k: int, l: int) -> CheckReport:
    BlockPair(n, m, k, l)
    with Timer() as t:
        out = Outcome()
        rs = list(P.admissible_r(n, m, k, l))
        # B_r sits in degree l(w(r)) inside A_{n+m}
        summands = [shift(mackey_summand(n, m, k, l, r), P.length(P.w_of_r(n, m, k, l, r))) for r in rs]
        for r, B in zip(rs, summands):
            out.expect(B.dim == mackey_dimension(n, m, k, l, r),
                       f"dim B_{r} = {B.dim} matches the factorial formula", quiet=True)
        total = direct_sum(summands, name="sum B_r")
        target = mackey_target(n, m, k, l)
        big = alg.nil(n + m)
        gens, images, off = [], [], 0
        for r, B in zip(rs, summands):
            one_kl = alg.tensor(alg.nil(k), alg.nil(l)).unit
            one_nm = alg.tensor(alg.nil(n), alg.nil(m)).unit
            g = B.tensor_data.pure(one_kl, one_nm)
            gens.append({off + i: c for i, c in g.items()})
            images.append({big.factors[0].index[P.w_of_r(n, m, k, l, r)]: 1})
            off += B.dim
        f = extend_from_generators(total, gens, images, target)
        out.expect(f.verify(graded=True), "g_r -> Y_{w(r)} is an isomorphism")
        dc = P.double_cosets(k, l, n, m)
        reps = set(dc.reps)
        ws = {P.w_of_r(n, m, k, l, r) for r in rs}
        out.expect(dc.count == len(rs), f"double cosets: {dc.count} = number of admissible r")
        out.expect(ws == reps, "w(r) are the minimal double coset representatives")
        out.expect(dc.count == min(n, m, k, l) + 1, f"count = min(n,m,k,l)+1 = {min(n, m, k, l) + 1}")
    dims = " + ".join(str(B.dim) for B in summands) + f" = {target.dim}"
    witness = {"double_cosets": dc.count, "min(n,m,k,l)": min(n, m, k, l),
               "note": "count is min(n,m,k,l)+1, one more than a count of min(n,m,k,l)"}
    return _finish("mackey", {"n": n, "m": m, "k": k, "l": l},
                   "A_{n+m} = sum_r B_r as (A_k(x)A_l, A_n(x)A_m)-bimodules via g_r -> Y_{w(r)}",
                   out, dims=dims, maps=[("g_r->Y_w(r)", f, True)], witness=witness, elapsed=t)


# ---------------------------------------------------------------------------

def leibniz_check(n: int, m: int, seed: int = 0, max_probes: int = 4) -> CheckReport:
    if n + m < 1:
        raise ValueError("need n+m >= 1")
    with Timer() as t:
        out = Outcome()
        maps = []
        for l1, N1 in probes(n, seed)[:max_probes]:
            for l2, N2 in probes(m, seed)[:max_probes]:
                lhs = F_D(J(N1, N2))
                parts = []
                if m >= 1:
                    parts.append(J(N1, F_D(N2)))
                if n >= 1:
                    parts.append(J(F_D(N1), N2))
                rhs = direct_sum(parts)
                r = is_isomorphic(rhs, lhs, seed=seed)
                out.expect(bool(r) and r.certificate.verify(), f"F_D J({l1},{l2})", quiet=True)
                if r and len(maps) < 6:
                    maps.append((f"F_D J({l1},{l2})", r.certificate, False))
                c1, c2 = class_of(N1), class_of(N2)
                out.expect(class_of(lhs) == derivative(c1 * c2) == derivative(c1) * c2 + c1 * derivative(c2),
                           f"Leibniz on classes of {l1},{l2}", quiet=True)
        sub = mackey_check(n, m, n + m - 1, 1)
        out.expect(sub.passed, f"bimodule level: Mackey decomposition for ({n},{m},{n + m - 1},1)")
    return _finish("leibniz", {"n": n, "m": m, "seed": seed},
                   "F_D J(N1,N2) = J(N1, F_D N2) + J(F_D N1, N2)", out, maps=maps, elapsed=t)


# ---------------------------------------------------------------------------
# bracketed products

def _tree_size(tree) -> int:
    return tree if isinstance(tree, int) else _tree_size(tree[0]) + _tree_size(tree[1])


def _tree_leaves(tree) -> list:
    return [tree] if isinstance(tree, int) else _tree_leaves(tree[0]) + _tree_leaves(tree[1])


def _tree_str(tree, names) -> str:
    if isinstance(tree, int):
        return names.pop(0)
    return f"({_tree_str(tree[0], names)}{_tree_str(tree[1], names)})"


def bracketed_product(tree) -> tuple[Bimodule, dict]:
    """
    The iterated induction bimodule for a bracketing of blocks, e.g. ((1, 1), 2),
    together with its canonical generator 1 (x) ... (x) 1.
    """
    if isinstance(tree, int):
        a = alg.nil(tree)
        return regular_bimodule(a, name=f"A_{tree}"), {a.unit: 1}
    (lb, lg), (rb, rg) = bracketed_product(tree[0]), bracketed_product(tree[1])
    inner = outer_tensor(lb, rb)
    g_inner = {i * rb.dim + j: x * y for i, x in lg.items() for j, y in rg.items()}
    Mb = M_bimodule(_tree_size(tree[0]), _tree_size(tree[1]))
    b = tensor_over(Mb, inner, name=f"M{tree}")
    one = alg.nil(_tree_size(tree)).unit
    return b, b.tensor_data.pure_tensor({one: 1}, g_inner)


def _canonical_multi(sizes) -> tuple[Bimodule, dict]:
    total = sum(sizes)
    offs = [sum(sizes[:i]) for i in range(len(sizes))]
    src = alg.tensor(*[alg.nil(s) for s in sizes])
    b = restrict(regular_bimodule(alg.nil(total)), "right",
                 alg.parabolic_map(src, alg.nil(total), [(0, o) for o in offs], name="gamma"),
                 name=f"A_{total}{tuple(sizes)}")
    return b, {alg.nil(total).unit: 1}


def _canonical_map(src, tgt) -> BimoduleMap:
    (sb, sg), (tb, tg) = src, tgt
    return extend_from_generators(sb, [sg], [tg], tb)


def _delta_tree(total: int, tree) -> tuple[Bimodule, dict]:
    """Iterated restriction for a bracketing: an (A_{leaves}, A_total)-bimodule."""
    if isinstance(tree, int):
        a = alg.nil(tree)
        return regular_bimodule(a), {a.unit: 1}
    (lb, lg), (rb, rg) = _delta_tree(_tree_size(tree[0]), tree[0]), _delta_tree(_tree_size(tree[1]), tree[1])
    inner = outer_tensor(lb, rb)
    g_inner = {i * rb.dim + j: x * y for i, x in lg.items() for j, y in rg.items()}
    Db = delta_block(total, _tree_size(tree[0]), _tree_size(tree[1]))
    b = tensor_over(inner, Db, name=f"D{tree}")
    one = alg.nil(total).unit
    return b, b.tensor_data.pure_tensor(g_inner, {one: 1})


def _canonical_multi_delta(sizes) -> tuple[Bimodule, dict]:
    total = sum(sizes)
    offs = [sum(sizes[:i]) for i in range(len(sizes))]
    src = alg.tensor(*[alg.nil(s) for s in sizes])
    b = restrict(regular_bimodule(alg.nil(total)), "left",
                 alg.parabolic_map(src, alg.nil(total), [(0, o) for o in offs], name="gamma"))
    return b, {alg.nil(total).unit: 1}


def coassoc_and_assoc_check(a: int, b: int, c: int) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        maps = []
        canon = _canonical_multi([a, b, c])
        for tree in (((a, b), c), (a, (b, c))):
            f = _canonical_map(bracketed_product(tree), canon)
            out.expect(f.verify(graded=True), f"M{tree} = A_{a + b + c}")
            maps.append((f"M{tree}", f, True))
        dcanon = _canonical_multi_delta([a, b, c])
        for tree in (((a, b), c), (a, (b, c))):
            f = _canonical_map(_delta_tree(a + b + c, tree), dcanon)
            out.expect(f.verify(graded=True), f"Delta{tree} = A_{a + b + c}")
            maps.append((f"Delta{tree}", f, True))
    return _finish("assoc", {"a": a, "b": b, "c": c},
                   "M(M(x)Id) = M(Id(x)M) and (Delta(x)Id)Delta = (Id(x)Delta)Delta, "
                   "both canonically A_{a+b+c}", out, dims=canon[0].dim, maps=maps, elapsed=t)


def pentagon_check(a: int, b: int, c: int, d: int) -> CheckReport:
    """
    Vertices are the five bracketings of four blocks; each edge sends the
    canonical generator to the canonical generator.  Going once around must
    give the identity.
    """
    with Timer() as t:
        out = Outcome()
        v = {
            "((ab)c)d": (((a, b), c), d),
            "(a(bc))d": ((a, (b, c)), d),
            "a((bc)d)": (a, ((b, c), d)),
            "a(b(cd))": (a, (b, (c, d))),
            "(ab)(cd)": ((a, b), (c, d)),
        }
        built = {k: bracketed_product(tree) for k, tree in v.items()}
        edges = [("((ab)c)d", "(a(bc))d"), ("(a(bc))d", "a((bc)d)"), ("a((bc)d)", "a(b(cd))"),
                 ("((ab)c)d", "(ab)(cd)"), ("(ab)(cd)", "a(b(cd))")]
        maps = {}
        for s, e in edges:
            f = _canonical_map(built[s], built[e])
            out.expect(f.verify(graded=True), f"edge {s} -> {e} is an isomorphism", quiet=True)
            maps[(s, e)] = f
        long_way = maps[edges[0]].then(maps[edges[1]]).then(maps[edges[2]])
        short_way = maps[edges[3]].then(maps[edges[4]])
        loop = short_way.then(long_way.inverse())
        dim = built["((ab)c)d"][0].dim
        out.expect(loop.matrix.is_identity(), f"pentagon composite is the identity on dim {dim}")
    return _finish("pentagon", {"a": a, "b": b, "c": c, "d": d},
                   "the associativity isomorphisms satisfy the pentagon identity", out, dims=dim,
                   maps=[(f"{s}->{e}", f, True) for (s, e), f in maps.items()], elapsed=t)


# ---------------------------------------------------------------------------

def quasi_commutativity_check(n: int, m: int, seed: int = 0) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        # M S_12 versus Psi M Psi^(x)2, as (A_{n+m}, A_n (x) A_m)-bimodules
        lhs = restrict(M_bimodule(m, n), "right", alg.swap_map(n, m), name="M S12")
        psi2 = outer_tensor(psi_twisted(n), psi_twisted(m))
        rhs = tensor_over(tensor_over(psi_twisted(n + m), M_bimodule(n, m)), psi2, name="Psi M Psi2")
        r1 = is_isomorphic(lhs, rhs, seed=seed)
        out.expect(bool(r1) and r1.certificate.verify(), "M S12 = Psi M Psi^(x)2")
        # S_12 Delta versus Psi^(x)2 Delta Psi, as (A_n (x) A_m, A_{n+m})-bimodules
        lhs2 = restrict(delta_block(n + m, m, n), "left", alg.swap_map(n, m), name="S12 Delta")
        rhs2 = tensor_over(tensor_over(psi2, delta_block(n + m, n, m)), psi_twisted(n + m),
                           name="Psi2 Delta Psi")
        r2 = is_isomorphic(lhs2, rhs2, seed=seed)
        out.expect(bool(r2) and r2.certificate.verify(), "S12 Delta = Psi^(x)2 Delta Psi")
    maps = [(lab, r.certificate, False) for lab, r in (("M S12", r1), ("S12 Delta", r2)) if r]
    return _finish("quasi-comm", {"n": n, "m": m, "seed": seed},
                   "M S12 = Psi M Psi^(x)2 and S12 Delta = Psi^(x)2 Delta Psi (found by search)",
                   out, dims=lhs.dim, maps=maps, elapsed=t)


def unit_counit_check(m_max: int = 3, seed: int = 0) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        maps = []
        unit = simple_module(0)
        for m in range(m_max + 1):
            reg = regular_bimodule(alg.nil(m))
            for side, Mb in (("left", M_bimodule(0, m)), ("right", M_bimodule(m, 0))):
                r = is_isomorphic(Mb, reg, seed=seed)
                out.expect(bool(r) and r.certificate.matrix.is_identity(),
                           f"gamma is the identity: M on C_0 (x) C_{m} ({side} unit) is A_{m}", quiet=True)
            for label, N in probes(m, seed):
                for which, JN in (("iota(x)Id", J(unit, N)), ("Id(x)iota", J(N, unit))):
                    r = is_isomorphic(JN, N, seed=seed)
                    out.expect(bool(r), f"M({which})({label}) = {label}", quiet=True)
                    if r and m <= 1:
                        maps.append((f"M({which})({label})", r.certificate, False))
            out.expect(counit(simple_module(m)).dim == (1 if m == 0 else 0), f"epsilon on C_{m}", quiet=True)
        r = is_isomorphic(counit(simple_module(0)), unit, seed=seed)
        out.expect(bool(r) and r.certificate.matrix.is_identity(), "epsilon iota = Id on vector spaces")
    return _finish("unit-counit", {"m_max": m_max, "seed": seed},
                   "M(iota (x) Id) = Id = M(Id (x) iota); epsilon kills C_n for n > 0", out,
                   maps=maps, elapsed=t)


def counit(N: Bimodule) -> Bimodule:
    """Keep a module in C_0 and send every other block to zero."""
    if block(N) == 0:
        return N
    return Bimodule(alg.trivial(), alg.trivial(), 0, [], [], [], name="0")


def bialgebra_adjunction_check(n: int, m: int, seed: int = 0, max_probes: int = 4) -> Outcome:
    """dim Hom(M(N1(x)N2), P) = dim Hom(N1(x)N2, Delta P) and the twisted version with S12 Delta."""
    out = Outcome()
    for l1, N1 in probes(n, seed)[:max_probes]:
        for l2, N2 in probes(m, seed)[:max_probes]:
            NN = outer_tensor(N1, N2)
            JN = J(N1, N2)
            for lp, Pm in probes(n + m, seed)[:max_probes]:
                a = len(hom_space(JN, Pm))
                b = len(hom_space(NN, tensor_over(delta_block(n + m, n, m), Pm)))
                out.expect(a == b, f"Hom(M({l1},{l2}), {lp}) = Hom({l1}(x){l2}, Delta {lp})", quiet=True)
                s = swap_module(tensor_over(delta_block(n + m, m, n), Pm), n, m)
                c = len(hom_space(Pm, JN))
                e = len(hom_space(s, NN))
                out.expect(c == e, f"Hom({lp}, M({l1},{l2})) = Hom(S12 Delta {lp}, {l1}(x){l2})", quiet=True)
    return out
