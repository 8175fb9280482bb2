"""
Induction/restriction functors on modules over the nilCoxeter blocks, and the
checks of the Weyl relation, adjunctions, duality and the integral.
"""

from __future__ import annotations

import random
from math import factorial
from dataclasses import dataclass
from typing import Callable, Optional

from . import algebra as alg
from . import perm as P
from .bimodule import (Bimodule, BimoduleMap, D_bimodule, I_bimodule, X_bimodule,
                       direct_sum, dual, extend_from_generators, hom_space, identity_map,
                       is_indecomposable, is_isomorphic, omega, projective_module,
                       psi_twisted, quotient_module, regular_bimodule, restrict, shift,
                       simple_module, submodule, tensor_map, tensor_over, _free_basis)
from .decat import block_sizes, class_of, integral
from .linalg import RatMatrix, rank
from .qpoly import q
from .report import FAIL, PASS, CheckReport, Outcome, Timer

__all__ = [
    "FunctorSpec", "F_X", "F_D", "Psi", "Omega", "F_I", "block", "probes",
    "weyl_relation_check", "weyl_certificate", "functor_weyl_check", "weyl_eta",
    "adjunction_check", "adjunction_report", "duality_checks", "integral_checks",
    "canonical_basis_bimodule", "indecomposability_report", "is_right_projective",
]


def block(N: Bimodule) -> int:
    sizes = block_sizes(N.left)
    if len(sizes) != 1 or not N.is_left_module:
        raise ValueError(f"{N.name} is not a module over a single block")
    return sizes[0]


def F_X(N: Bimodule) -> Bimodule:
    return tensor_over(X_bimodule(block(N)), N, name=f"F_X({N.name})")


def F_D(N: Bimodule) -> Bimodule:
    n = block(N)
    if n == 0:
        raise ValueError("F_D vanishes on the block C_0")
    return tensor_over(D_bimodule(n), N, name=f"F_D({N.name})")


def Psi(N: Bimodule) -> Bimodule:
    return tensor_over(psi_twisted(block(N)), N, name=f"Psi({N.name})")


def Omega(N: Bimodule) -> Bimodule:
    return omega(N)


def F_I(N: Bimodule) -> Bimodule:
    return tensor_over(I_bimodule(block(N)), N, name=f"F_I({N.name})")


_FUNCTORS: dict[str, Callable[[Bimodule], Bimodule]] = {
    "F_X": F_X, "F_D": F_D, "Psi": Psi, "Omega": Omega, "F_I": F_I, "Id": lambda N: N,
}
_BLOCKS = {"F_X": X_bimodule, "F_D": D_bimodule, "Psi": psi_twisted, "F_I": I_bimodule,
           "Id": lambda n: regular_bimodule(alg.nil(n))}


@dataclass(frozen=True)
class FunctorSpec:
    """A word in the basic functors; ``("F_D", "F_X")`` means F_D after F_X."""
    steps: tuple

    @classmethod
    def of(cls, text: str) -> "FunctorSpec":
        steps = tuple(text.split())
        for s in steps:
            if s not in _FUNCTORS:
                raise ValueError(f"unknown functor {s!r}")
        return cls(steps)

    @property
    def name(self) -> str:
        return " ".join(self.steps)

    @property
    def contravariant(self) -> bool:
        return self.steps.count("Omega") % 2 == 1

    def apply(self, N: Bimodule) -> Bimodule:
        for s in reversed(self.steps):
            N = _FUNCTORS[s](N)
        return N

    def block_bimodule(self, n: int) -> Bimodule:
        """The bimodule realising a single covariant functor on C_n."""
        if len(self.steps) != 1 or self.steps[0] == "Omega":
            raise ValueError("only single covariant functors have a block bimodule")
        s = self.steps[0]
        return _BLOCKS[s](n + 1 if s == "F_D" else n)


def is_right_projective(b: Bimodule) -> bool:
    """Free (hence projective) as a right module, shown by an explicit basis."""
    return _free_basis(b, "right") is not None


# ---------------------------------------------------------------------------
# probe modules

def _degree_vectors(n: int, deg: int) -> list:
    a = alg.nil(n)
    return [{i: 1} for i in range(a.dim) if a.degree(i) == deg]


def radical_quotient(n: int, j: int) -> tuple[Bimodule, RatMatrix]:
    """P_n / rad^j P_n and the projection."""
    Pn = projective_module(n)
    vecs = _degree_vectors(n, j)
    if not vecs:
        return Pn, RatMatrix.identity(Pn.dim)
    return quotient_module(Pn, vecs, name=f"P_{n}/rad^{j}")


def probes(n: int, seed: int = 0, random_count: int = 2) -> list[tuple[str, Bimodule]]:
    """
    Cyclic (hence indecomposable, A_n being local) modules over A_n: L_n, P_n,
    radical quotients, left ideals A_n Y_w, A_n / A_n Y_i and a few seeded
    quotients A_n / A_n v with v homogeneous.
    """
    out = [(f"L_{n}", simple_module(n))]
    if n == 0:
        return out
    Pn = projective_module(n)
    out.append((f"P_{n}", Pn))
    top = n * (n - 1) // 2
    for j in range(2, top + 1):
        out.append((f"P_{n}/rad^{j}", radical_quotient(n, j)[0]))
    a = alg.nil(n)
    fac = a.factors[0]
    for w in fac.basis[1:]:
        if P.length(w) == 0:
            continue
        label = "A_{}Y_{}".format(n, "".join(map(str, w.word)))
        out.append((label, submodule(Pn, [{fac.index[w]: 1}], name=label)[0]))
    for i in range(1, n):
        label = f"A_{n}/A_{n}Y{i}"
        gen = fac.index[P.simple_reflection(i, n)]
        out.append((label, quotient_module(Pn, [{gen: 1}], name=label)[0]))
    if top >= 2:
        rng = random.Random(seed * 1000 + n)
        for t in range(random_count):
            deg = rng.randint(1, top - 1)
            vec = {i: rng.randint(-3, 3) for i in range(a.dim) if a.degree(i) == deg}
            vec = {i: c for i, c in vec.items() if c} or {next(i for i in range(a.dim) if a.degree(i) == deg): 1}
            label = f"A_{n}/A_{n}v#{t}"
            out.append((label, quotient_module(Pn, [vec], name=label)[0]))
    for label, N in out:
        N.name = label
    return out


# ---------------------------------------------------------------------------
# the Weyl relation

def _chi_index(n: int, i: int) -> int:
    """Basis index in A_{n+1} of the image of basis element i of A_n."""
    w = alg.nil(n).factors[0].basis[i]
    return alg.nil(n + 1).factors[0].index[P.Permutation(w.word + (n + 1,))]


def weyl_certificate(n: int, graded: bool = False) -> tuple[BimoduleMap, dict]:
    """
    The map A_n (+) X_{n-1} (x) D_n -> D_{n+1} (x) X_n given by 1 -> 1 (x) 1 and
    1 (x) 1 -> Y_n, extended to bimodules.
    """
    D, X = D_bimodule(n + 1), X_bimodule(n)
    lhs = tensor_over(D, X, name=f"D_{n + 1}(x)X_{n}")
    An = regular_bimodule(alg.nil(n), name=f"A_{n}")
    big = alg.nil(n + 1)
    one = big.unit
    gens, images = [{alg.nil(n).unit: 1}], [lhs.tensor_data.pure(one, one)]
    parts = [An]
    dims = {"lhs": lhs.dim, "A_n": An.dim}
    if n >= 1:
        xd = tensor_over(X_bimodule(n - 1), D_bimodule(n), name=f"X_{n - 1}(x)D_{n}")
        parts.append(shift(xd, 1) if graded else xd)
        small = alg.nil(n).unit
        gens.append({An.dim + k: c for k, c in xd.tensor_data.pure(small, small).items()})
        yn = big.generators[n - 1]
        images.append(lhs.tensor_data.pure(one, yn))
        dims["X(x)D"] = xd.dim
    rhs = direct_sum(parts, name=f"A_{n}+X(x)D")
    f = extend_from_generators(rhs, gens, images, lhs)
    return f, dims


def weyl_relation_check(n: int, graded: bool = False) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        f, dims = weyl_certificate(n, graded)
        out.expect(f.is_intertwining(), "certificate intertwines both actions")
        out.expect(f.is_invertible(), "certificate is invertible")
        if graded:
            out.expect(f.is_homogeneous(), "certificate preserves degree")
        rhs_total = dims["A_n"] + dims.get("X(x)D", 0)
        out.expect(dims["lhs"] == rhs_total, f"{dims['lhs']} = {dims['A_n']} + {dims.get('X(x)D', 0)}")
        out.expect(factorial(n + 1) == factorial(n) + n * factorial(n), "(n+1)! = n! + n*n!")
    claim = ("D_{n+1} (x)_{A_{n+1}} X_n = A_n + X_{n-1} (x)_{A_{n-1}} D_n"
             + ("{1}" if graded else "") + ", via 1 -> 1(x)1 and 1(x)1 -> Y_n")
    return _finish("graded-weyl" if graded else "weyl", {"n": n}, claim, out,
                   dims=f"{dims['lhs']} = {dims['A_n']} + {dims.get('X(x)D', 0)}",
                   maps=[("m1|m2", f, graded)], elapsed=t)


def _finish(check, params, claim, out: Outcome, dims=None, maps=(), witness=None,
            elapsed=None, verdict=None) -> CheckReport:
    if verdict is None:
        verdict = PASS if out.ok else FAIL
    if out.failures:
        details = [f"FAILED: {m}" for m in out.failures[:20]]
    else:
        details = list(out.notes) if len(out.notes) <= 12 else []
        details.append(f"{out.passed} expectations hold")
    r = CheckReport(check, params, claim, verdict, dims=dims, maps=list(maps),
                    witness=witness, details=details)
    if elapsed is not None:
        r.elapsed_ms = getattr(elapsed, "ms", 0)
    return r


def weyl_eta(N: Bimodule, graded: bool = False, cache: Optional[dict] = None) -> dict:
    """
    The natural isomorphism N (+) F_X F_D N -> F_D F_X N at N, in closed form:
    v -> 1 (x) 1 (x) v and x (x) d (x) v -> x (x) Y_n d (x) v.
    Returns the objects involved together with the map.
    """
    n = block(N)
    XN = F_X(N)
    DXN = tensor_over(D_bimodule(n + 1), XN, name=f"F_D F_X({N.name})")
    big = alg.nil(n + 1)
    one = big.unit
    xn, dxn = XN.tensor_data, DXN.tensor_data
    cols = [dxn.pure_tensor({one: 1}, xn.pure_tensor({one: 1}, {c: 1})) for c in range(N.dim)]
    parts = [N]
    objs = {"N": N, "XN": XN, "DXN": DXN}
    if n >= 1:
        DN = F_D(N)
        XDN = tensor_over(X_bimodule(n - 1), DN, name=f"F_X F_D({N.name})")
        objs.update(DN=DN, XDN=XDN)
        parts.append(shift(XDN, 1) if graded else XDN)
        dn, xdn = DN.tensor_data, XDN.tensor_data
        yn = big.generators[n - 1]
        for a, t in xdn.pairs:
            b, c = dn.pairs[t]
            x_img = _chi_index(n, a)
            d_img = big.mult(yn, _chi_index(n, b))
            cols.append(dxn.pure_tensor({x_img: 1}, xn.pure_tensor({d_img: 1}, {c: 1})))
    rhs = direct_sum(parts, name=f"{N.name}+F_X F_D({N.name})")
    objs["RHS"] = rhs
    objs["eta"] = BimoduleMap(rhs, DXN, RatMatrix.from_columns(DXN.dim, cols))
    return objs


def _functor_weyl_on_map(f: BimoduleMap, src: dict, tgt: dict) -> bool:
    """Naturality square of eta for a module map f: N -> N'."""
    n = block(f.source)
    idX, idD = identity_map(X_bimodule(n)), identity_map(D_bimodule(n + 1))
    fx = tensor_map(idX, f, src["XN"], tgt["XN"])
    fdx = tensor_map(idD, fx, src["DXN"], tgt["DXN"])
    blocks = [f.matrix]
    if n >= 1:
        fd = tensor_map(identity_map(D_bimodule(n)), f, src["DN"], tgt["DN"])
        fxd = tensor_map(identity_map(X_bimodule(n - 1)), fd, src["XDN"], tgt["XDN"])
        blocks.append(fxd.matrix)
    rhs_f = RatMatrix.block_diag(blocks)
    return tgt["eta"].matrix @ rhs_f == fdx.matrix @ src["eta"].matrix


def functor_weyl_check(n_max: int = 3, graded: bool = False, seed: int = 0) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        maps = []
        count = 0
        for n in range(n_max + 1):
            data = {}
            for label, N in probes(n, seed):
                objs = weyl_eta(N, graded)
                eta = objs["eta"]
                ok = eta.verify(graded)
                out.expect(ok, f"eta at {label} is an isomorphism", quiet=True)
                data[label] = objs
                count += 1
                if n <= 2:
                    maps.append((f"eta[{label}]", eta, graded))
            # naturality on L_n -> P_n/rad^j and P_n -> P_n/rad^j
            if n >= 2:
                top = n * (n - 1) // 2
                for j in range(2, top + 1):
                    Q, proj = radical_quotient(n, j)
                    lab = f"P_{n}/rad^{j}"
                    Qobjs = data.get(lab) or weyl_eta(Q, graded)
                    Pobjs = data[f"P_{n}"]
                    pmap = BimoduleMap(Pobjs["N"], Qobjs["N"], proj)
                    out.expect(pmap.is_intertwining() and _functor_weyl_on_map(pmap, Pobjs, Qobjs),
                               f"naturality for P_{n} -> {lab}", quiet=True)
                    socle = [i for i in range(Q.dim) if Q.degrees[i] == j - 1][0]
                    L = data[f"L_{n}"]["N"]
                    imap = BimoduleMap(L, Qobjs["N"], RatMatrix.from_entries(Q.dim, 1, [(socle, 0, 1)]),
                                       shift=j - 1)
                    out.expect(imap.is_intertwining()
                               and _functor_weyl_on_map(imap, data[f"L_{n}"], Qobjs),
                               f"naturality for L_{n} -> {lab}", quiet=True)
        if graded:
            out.expect(_graded_class_relation(n_max, seed), "[F_D F_X N] = q[F_X F_D N] + [N] on probes")
    claim = ("F_D F_X = F_X F_D{1} + Id" if graded else "F_D F_X = F_X F_D + Id") + \
        ", naturally on probe modules"
    return _finish("functor-weyl-graded" if graded else "functor-weyl", {"n_max": n_max, "seed": seed},
                   claim, out, dims={"probes": count}, maps=maps, elapsed=t)


def _graded_class_relation(n_max: int, seed: int) -> bool:
    for n in range(1, n_max + 1):
        for _, N in probes(n, seed):
            lhs = class_of(F_D(F_X(N)), True)
            rhs = class_of(F_X(F_D(N)), True).scale(q) + class_of(N, True)
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# adjunctions

def adjunction_check(kind: str, M: Bimodule, N: Bimodule) -> tuple[int, int]:
    """
    left: (dim Hom(F_X M, N), dim Hom(M, F_D N)).
    right-twisted: (dim Hom(N, F_X M), dim Hom(Psi F_D Psi N, M)).
    M lives over A_n and N over A_{n+1}.
    """
    if block(N) != block(M) + 1:
        raise ValueError("need M over A_n and N over A_{n+1}")
    if kind == "left":
        return len(hom_space(F_X(M), N)), len(hom_space(M, F_D(N)))
    if kind == "right-twisted":
        return len(hom_space(N, F_X(M))), len(hom_space(Psi(F_D(Psi(N))), M))
    raise ValueError(f"unknown adjunction kind {kind!r}")


def adjunction_report(kind: str, n_max: int = 3, seed: int = 0) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        pairs = 0
        for n in range(n_max):
            for lm, M in probes(n, seed):
                for ln, N in probes(n + 1, seed):
                    a, b = adjunction_check(kind, M, N)
                    out.expect(a == b, f"{kind}: {lm}, {ln}: {a} = {b}", quiet=True)
                    pairs += 1
    claim = ("Hom(F_X M, N) = Hom(M, F_D N)" if kind == "left"
             else "Hom(N, F_X M) = Hom(Psi F_D Psi N, M)")
    check = "adjunction" if kind == "left" else "twisted-adjunction"
    return _finish(check, {"n_max": n_max, "seed": seed}, claim, out,
                   dims={"pairs": pairs}, elapsed=t)


# ---------------------------------------------------------------------------
# duality

def _iso(out: Outcome, maps: list, a: Bimodule, b: Bimodule, label: str, keep: bool, seed: int):
    r = is_isomorphic(a, b, seed=seed)
    out.expect(bool(r) and r.certificate.verify(), label, quiet=True)
    if r and keep:
        maps.append((label, r.certificate, False))
    return r


def duality_checks(n_max: int = 3, seed: int = 0) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        maps: list = []
        for n in range(n_max + 1):
            Xd = dual(X_bimodule(n))
            rhs = tensor_over(D_bimodule(n + 1), psi_twisted(n + 1))
            _iso(out, maps, Xd, rhs, f"X_{n}* = D_{n + 1} (x) A_{n + 1}^psi", True, seed)
            _iso(out, maps, dual(regular_bimodule(alg.nil(n))), psi_twisted(n),
                 f"A_{n}* = A_{n}^psi", n <= 2, seed)
            for label, N in probes(n, seed):
                keep = n <= 1
                _iso(out, maps, Omega(Omega(N)), N, f"Omega^2 {label} = {label}", keep, seed)
                _iso(out, maps, Omega(Psi(N)), Psi(Omega(N)), f"Omega Psi {label} = Psi Omega {label}",
                     keep, seed)
                _iso(out, maps, Omega(Psi(F_X(N))), F_X(Omega(Psi(N))),
                     f"Omega Psi F_X {label} = F_X Omega Psi {label}", keep, seed)
                if n >= 1:
                    _iso(out, maps, Omega(F_D(N)), F_D(Omega(N)),
                         f"Omega F_D {label} = F_D Omega {label}", keep, seed)
    claim = ("X_n* = D_{n+1} (x) A_{n+1}^psi; Omega^2 = Id, Omega Psi = Psi Omega, "
             "Omega Psi F_X = F_X Omega Psi, Omega F_D = F_D Omega")
    return _finish("duality", {"n_max": n_max, "seed": seed}, claim, out,
                   dims={"isomorphisms": out.passed}, maps=maps, elapsed=t)


# ---------------------------------------------------------------------------
# the integral

def integral_checks(n_max: int = 4, seed: int = 0) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        maps: list = []
        witnesses = {}
        for n in range(n_max + 1):
            DI = tensor_over(D_bimodule(n + 1), I_bimodule(n), name=f"D_{n + 1}(x)I_{n}")
            An = regular_bimodule(alg.nil(n), name=f"A_{n}")
            u1, u = alg.nil(n + 1).unit, alg.nil(n).unit
            f = extend_from_generators(An, [{u: 1}], [DI.tensor_data.pure(u1, u)], DI)
            out.expect(f.verify(graded=True), f"A_{n} = D_{n + 1} (x) I_{n} via 1 -> 1(x)1")
            maps.append((f"D(x)I[{n}]", f, True))
            # I (x) D is not A: left Y_n kills I_n (x) D_{n+1} but not A_{n+1}
            ID = tensor_over(I_bimodule(n), D_bimodule(n + 1), name=f"I_{n}(x)D_{n + 1}")
            A1 = regular_bimodule(alg.nil(n + 1))
            if n >= 1:
                r_id, r_a = rank(ID.left_action[n - 1]), rank(A1.left_action[n - 1])
                out.expect(ID.dim == A1.dim and r_id == 0 and r_a > 0,
                           f"I_{n}(x)D_{n + 1} not iso to A_{n + 1}: rank of left Y_{n} is {r_id} vs {r_a}")
                witnesses[f"n={n}"] = f"rank of left Y{n} action: {r_id} on I(x)D vs {r_a} on A"
            for label, N in probes(n, seed):
                out.expect(class_of(F_I(N)) == integral(class_of(N)), f"[F_I {label}] = int [{label}]",
                           quiet=True)
    claim = "D_{n+1} (x) I_n = A_n; I_n (x) D_{n+1} is not A_{n+1}; [I (x) N] = int [N]"
    return _finish("integral", {"n_max": n_max, "seed": seed}, claim, out,
                   dims={"blocks": n_max + 1}, maps=maps, witness=witnesses or None, elapsed=t)


# ---------------------------------------------------------------------------
# canonical basis bimodules

def canonical_basis_bimodule(m: int, n: int, k: int) -> Bimodule:
    """A_{m+k-n} (x)_{A_{k-n}} A_k as an (A_{m+k-n}, A_k)-bimodule."""
    if k < n or m < 0 or n < 0:
        raise ValueError("need k >= n >= 0 and m >= 0")
    big, mid = m + k - n, k - n
    left = restrict(regular_bimodule(alg.nil(big)), "right",
                    alg.parabolic_map(alg.nil(mid), alg.nil(big), [(0, 0)], name="incl"))
    right = restrict(regular_bimodule(alg.nil(k)), "left",
                     alg.parabolic_map(alg.nil(mid), alg.nil(k), [(0, 0)], name="incl"))
    return tensor_over(left, right, name=f"A_{big}(x)A_{mid}A_{k}")


def canonical_triples(max_dim: int) -> list[tuple[int, int, int]]:
    out = []
    for k in range(0, 8):
        for n in range(0, k + 1):
            for m in range(0, 8):
                dim = factorial(m + k - n) * factorial(k) // factorial(k - n)
                if dim <= max_dim:
                    out.append((m, n, k))
    return out


def indecomposability_report(max_dim: int = 48, seed: int = 0) -> CheckReport:
    with Timer() as t:
        out = Outcome()
        verdicts = {}
        for m, n, k in canonical_triples(max_dim):
            b = canonical_basis_bimodule(m, n, k)
            r = is_indecomposable(b, seed)
            verdicts[f"{(m, n, k)}"] = f"{r.verdict} (dim {b.dim}, End {r.end_dim})"
            out.expect(r.verdict == "indecomposable", f"{(m, n, k)}: {r.verdict}", quiet=True)
        out.expect(all(is_right_projective(X_bimodule(n)) and is_right_projective(D_bimodule(n + 1))
                       and is_right_projective(I_bimodule(n)) and is_right_projective(psi_twisted(n))
                       for n in range(4)), "X, D, I, A^psi are right-free for n <= 3")
    return _finish("indecomposable", {"max_dim": max_dim}, "A_{m+k-n} (x)_{A_{k-n}} A_k is indecomposable",
                   out, dims={"bimodules": len(verdicts)}, witness=verdicts, elapsed=t)
