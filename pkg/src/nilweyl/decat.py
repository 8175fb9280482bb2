"""
The Weyl algebra (and its q-analogue) acting on polynomials in x, and the
classes of modules in that polynomial ring.

Coefficients are exact rationals, or quotients of Laurent polynomials in q when
``q_mode`` is on.  Classes of modules over a tensor product of blocks are
polynomials in several variables, keyed by exponent tuples.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Optional, Union

from .linalg import as_rational
from .qpoly import Laurent, QFrac, q, qbinomial, qfactorial, qint

__all__ = [
    "WeylElement", "PolyClass", "weyl_normal_form", "weyl_apply", "tau", "bilinear_form",
    "class_of", "block_sizes", "times_x", "derivative", "integral", "comultiply",
    "antipode", "verify_decategorification", "x", "d",
]

Coeff = Union[int, Fraction, QFrac]


def _zero(q_mode: bool):
    return QFrac(0) if q_mode else 0


def _num(i: int, q_mode: bool):
    return qint(i) if q_mode else i


def _coerce(c, q_mode: bool):
    if q_mode:
        return QFrac.coerce(c)
    if isinstance(c, (Laurent, QFrac)):
        if not c.is_constant():
            raise ValueError("q-dependent coefficient outside q-mode")
        return c.at(0)
    return as_rational(c)


def _is_zero(c) -> bool:
    return not c


def _fmt_coeff(c, mono: str) -> str:
    if isinstance(c, (Laurent, QFrac)):
        if c.is_constant():
            c = c.at(0)
        else:
            return f"({c})*{mono}" if mono else f"({c})"
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


# ---------------------------------------------------------------------------
# the Weyl algebra

class WeylElement:
    """Linear combination of x^m d^n (all d's to the right), stored in normal form."""

    __slots__ = ("terms", "q_mode")

    def __init__(self, terms: Optional[dict] = None, q_mode: bool = False):
        self.q_mode = q_mode
        out = {}
        for (m, n), c in (terms or {}).items():
            if m < 0 or n < 0:
                raise ValueError("exponents must be nonnegative")
            c = _coerce(c, q_mode)
            if not _is_zero(c):
                out[(m, n)] = c
        self.terms = out

    @classmethod
    def monomial(cls, m: int, n: int, coeff=1, q_mode: bool = False) -> "WeylElement":
        return cls({(m, n): coeff}, q_mode)

    @classmethod
    def from_word(cls, word: str, coeff=1, q_mode: bool = False) -> "WeylElement":
        """Product of letters 'x' and 'd' read left to right."""
        out = cls.monomial(0, 0, coeff, q_mode)
        for ch in word:
            if ch == "x":
                out = out * cls.monomial(1, 0, 1, q_mode)
            elif ch == "d":
                out = out * cls.monomial(0, 1, 1, q_mode)
            else:
                raise ValueError(f"unknown letter {ch!r}")
        return out

    def _like(self, terms) -> "WeylElement":
        return WeylElement(terms, self.q_mode)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, _zero(self.q_mode)) + c
        return self._like(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "WeylElement":
        return self._like({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            return self.scale(other)
        if other.q_mode != self.q_mode:
            raise ValueError("cannot mix q-mode and ordinary Weyl elements")
        out: dict = {}
        for (a, b), c1 in self.terms.items():
            for (cc, dd), c2 in other.terms.items():
                for (i, j), c3 in _d_power_times_x_power(b, cc, self.q_mode).items():
                    key = (a + i, j + dd)
                    out[key] = out.get(key, _zero(self.q_mode)) + c1 * c2 * c3
        return self._like(out)

    def __eq__(self, other):
        return (isinstance(other, WeylElement) and self.q_mode == other.q_mode
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.q_mode, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def at_q(self, value) -> "WeylElement":
        """Specialise q to a rational number."""
        if not self.q_mode:
            return self
        return WeylElement({k: c.at(value) for k, c in self.terms.items()}, False)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, n), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(p for p in (_power("x", m), _power("d", n)) if p)
            parts.append(_fmt_coeff(c, mono))
        return " + ".join(parts)


def _power(sym: str, k: int) -> str:
    if k == 0:
        return ""
    return sym if k == 1 else f"{sym}^{k}"


_D_CACHE: dict = {}


def _d_power_times_x_power(b: int, c: int, q_mode: bool) -> dict:
    """Normal form of d^b x^c using d x^i = q^i x^i d + [i] x^(i-1)."""
    key = (b, c, q_mode)
    if key in _D_CACHE:
        return _D_CACHE[key]
    cur = {(c, 0): Laurent(1) if q_mode else 1}
    for _ in range(b):
        nxt: dict = {}
        for (i, j), coef in cur.items():
            lead = coef * (q ** i if q_mode else 1)
            nxt[(i, j + 1)] = nxt.get((i, j + 1), _zero(q_mode)) + lead
            if i > 0:
                low = coef * _num(i, q_mode)
                nxt[(i - 1, j)] = nxt.get((i - 1, j), _zero(q_mode)) + low
        cur = {k: v for k, v in nxt.items() if v}
    _D_CACHE[key] = cur
    return cur


def weyl_normal_form(words: Iterable, q_mode: bool = False) -> WeylElement:
    """
    Normal form of a combination of words in x and d, given as a string
    ('ddxx') or an iterable of (coefficient, word) pairs.
    """
    if isinstance(words, str):
        words = [(1, words)]
    out = WeylElement({}, q_mode)
    for c, w in words:
        out = out + WeylElement.from_word(w, c, q_mode)
    return out


x = WeylElement.monomial(1, 0)
d = WeylElement.monomial(0, 1)


def tau(e: WeylElement) -> WeylElement:
    """Anti-involution exchanging x and d: x^m d^n -> x^n d^m."""
    return WeylElement({(n, m): c for (m, n), c in e.terms.items()}, e.q_mode)


# ---------------------------------------------------------------------------
# classes

class PolyClass:
    """Polynomial in one or more variables; keys are exponent tuples."""

    __slots__ = ("terms", "q_mode")

    def __init__(self, terms: Optional[dict] = None, q_mode: bool = False):
        self.q_mode = q_mode
        out = {}
        for k, c in (terms or {}).items():
            k = (k,) if isinstance(k, int) else tuple(k)
            c = _coerce(c, q_mode)
            if not _is_zero(c):
                out[k] = c
        self.terms = out

    @classmethod
    def monomial(cls, n, coeff=1, q_mode: bool = False) -> "PolyClass":
        return cls({n: coeff}, q_mode)

    def _like(self, terms) -> "PolyClass":
        return PolyClass(terms, self.q_mode)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, _zero(self.q_mode)) + c
        return self._like(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "PolyClass":
        return self._like({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        """Product; multi-variable classes multiply componentwise in each slot."""
        if not isinstance(other, PolyClass):
            return self.scale(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                if len(k1) != len(k2):
                    raise ValueError("classes with different numbers of variables")
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, _zero(self.q_mode)) + c1 * c2
        return self._like(out)

    def __eq__(self, other):
        if not isinstance(other, PolyClass):
            return NotImplemented
        if self.q_mode != other.q_mode:
            a = self if self.q_mode else self.lift()
            b = other if other.q_mode else other.lift()
            return a.terms == b.terms
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda t: t[0])))

    def lift(self) -> "PolyClass":
        return PolyClass(dict(self.terms), True)

    def at_q(self, value) -> "PolyClass":
        if not self.q_mode:
            return self
        return PolyClass({k: c.at(value) for k, c in self.terms.items()}, False)

    def degrees(self) -> set:
        return set(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items(), reverse=True):
            mono = " (x) ".join(_power("x", e) or "1" for e in k)
            if len(k) == 1 and k[0] == 0:
                mono = ""
            parts.append(_fmt_coeff(c, mono))
        return " + ".join(parts)


def weyl_apply(e: WeylElement, p: PolyClass) -> PolyClass:
    """x . x^i = x^(i+1) and d . x^i = [i] x^(i-1), extended linearly."""
    q_mode = e.q_mode or p.q_mode
    out: dict = {}
    for (m, n), c in e.terms.items():
        for (i,), v in p.terms.items():
            if n > i:
                continue
            coef = c * v
            for t in range(i, i - n, -1):
                coef = coef * _num(t, q_mode)
            key = (i - n + m,)
            out[key] = out.get(key, _zero(q_mode)) + coef
    return PolyClass(out, q_mode)


def bilinear_form(a: PolyClass, b: PolyClass):
    """(x^i, x^j) = delta_ij i!, extended bilinearly (products over slots)."""
    total = _zero(a.q_mode or b.q_mode)
    for k, c in a.terms.items():
        if k in b.terms:
            total = total + c * b.terms[k] * prod(factorial(e) for e in k)
    return total


def times_x(p: PolyClass) -> PolyClass:
    return weyl_apply(WeylElement.monomial(1, 0, 1, p.q_mode), p)


def derivative(p: PolyClass) -> PolyClass:
    return weyl_apply(WeylElement.monomial(0, 1, 1, p.q_mode), p)


def integral(p: PolyClass) -> PolyClass:
    """x^n -> x^(n+1)/(n+1)."""
    return PolyClass({(k[0] + 1,): c * Fraction(1, k[0] + 1) for k, c in p.terms.items()},
                     p.q_mode)


def comultiply(p: PolyClass) -> PolyClass:
    """
    x^n -> sum_k C(n,k) x^k (x) x^(n-k); in q-mode the coefficient is
    [n choose k]_q q^(n-k), the expansion of (x (x) 1 + q (x) x)^n with
    (1 (x) x)(x (x) 1) = q (x (x) 1)(1 (x) x).
    """
    out: dict = {}
    for (n,), c in p.terms.items():
        for k in range(n + 1):
            coef = qbinomial(n, k).shift(n - k) if p.q_mode else comb(n, k)
            out[(k, n - k)] = out.get((k, n - k), _zero(p.q_mode)) + c * coef
    return PolyClass(out, p.q_mode)


def antipode(p: PolyClass) -> PolyClass:
    """s(x) = -x on one-variable classes."""
    return PolyClass({k: c * (-1) ** k[0] for k, c in p.terms.items()}, p.q_mode)


def block_sizes(alg_id) -> tuple[int, ...]:
    """Strand counts of a tensor product of nilCoxeter factors."""
    from .algebra import Nil
    sizes = []
    for f in alg_id.factors:
        if not isinstance(f, Nil):
            raise ValueError(f"class_of needs nilCoxeter blocks, got {f}")
        sizes.append(f.n)
    return tuple(sizes) or (0,)


def class_of(module, graded: bool = False) -> PolyClass:
    """
    Class of a left module over A_{n_1} (x) ... (x) A_{n_r}: its dimension over
    n_1!...n_r! (graded: its graded dimension over [n_1]!...[n_r]!) times
    x^{n_1} (x) ... (x) x^{n_r}.
    """
    if not module.is_left_module:
        raise ValueError("class_of expects a left module")
    sizes = block_sizes(module.left)
    if graded:
        gdim = Laurent(module.graded_dimension())
        denom = Laurent(1)
        for n in sizes:
            denom = denom * qfactorial(n)
        return PolyClass({sizes: QFrac(gdim, denom)}, True)
    return PolyClass({sizes: Fraction(module.dim, prod(factorial(n) for n in sizes))})


# ---------------------------------------------------------------------------

def verify_decategorification(n_max: int = 4, seed: int = 0):
    """Compare classes of functor images with the Weyl action on every probe up to n_max."""
    from . import functor as F
    from .bialgebra import delta_block
    from .bimodule import hom_space, projective_module, simple_module, tensor_over
    from .report import Outcome

    out = Outcome()
    xq = WeylElement.monomial(1, 0, 1, True)
    dq = WeylElement.monomial(0, 1, 1, True)
    for n in range(n_max + 1):
        P, L = projective_module(n), simple_module(n)
        out.expect(class_of(P) == PolyClass.monomial(n), f"[P_{n}] = x^{n}")
        out.expect(class_of(L) == PolyClass.monomial(n, Fraction(1, factorial(n))),
                   f"[L_{n}] = x^{n}/{n}!")
        out.expect(class_of(P, True) == PolyClass.monomial(n, 1, True), f"graded [P_{n}] = x^{n}")
        out.expect(class_of(L, True) == PolyClass.monomial(n, QFrac(1, qfactorial(n)), True),
                   f"graded [L_{n}] = x^{n}/[{n}]!")
        for label, N in F.probes(n, seed):
            for graded in (False, True):
                c = class_of(N, graded)
                cx = class_of(F.F_X(N), graded)
                out.expect(cx == times_x(c), f"[F_X {label}] = x[{label}]" + (" (graded)" if graded else ""))
                if n >= 1:
                    cd = class_of(F.F_D(N), graded)
                    out.expect(cd == derivative(c), f"[F_D {label}] = d[{label}]" + (" (graded)" if graded else ""))
                    # graded relation d x = q x d + 1 on the class of N
                    if graded:
                        lhs = class_of(F.F_D(F.F_X(N)), True)
                        rhs = class_of(F.F_X(F.F_D(N)), True).scale(q) + c
                        out.expect(lhs == rhs, f"[F_D F_X {label}] = q[F_X F_D {label}] + [{label}]")
            homs = len(hom_space(P, N))
            out.expect(homs == bilinear_form(class_of(P), class_of(N)),
                       f"dim Hom(P_{n}, {label}) = ([P_{n}], [{label}])")
            for graded in (False, True):
                total = PolyClass({}, graded)
                for k in range(n + 1):
                    part = tensor_over(delta_block(n, k, n - k, graded), N)
                    total = total + class_of(part, graded)
                out.expect(total == comultiply(class_of(N, graded)),
                           f"Delta classes of {label}" + (" (graded)" if graded else ""))
    # tau-adjointness (y a, b) = (a, tau(y) b) on monomials
    rng = random.Random(seed)
    ys = [x, d, x * d, d * x * x]
    for _ in range(6):
        ys.append(WeylElement({(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-3, 3)}))
    for y in ys:
        for i in range(6):
            for j in range(6):
                a, b = PolyClass.monomial(i), PolyClass.monomial(j)
                out.expect(bilinear_form(weyl_apply(y, a), b) == bilinear_form(a, weyl_apply(tau(y), b)),
                           f"tau-adjointness of {y} on x^{i}, x^{j}", quiet=True)
    # antipode reverses products (the ring is commutative, so s is multiplicative too)
    for _ in range(5):
        a = PolyClass({rng.randint(0, 4): rng.randint(-3, 3) for _ in range(3)})
        b = PolyClass({rng.randint(0, 4): rng.randint(-3, 3) for _ in range(3)})
        out.expect(antipode(a * b) == antipode(b) * antipode(a), "s(ab) = s(b)s(a)", quiet=True)
    out.expect(antipode(PolyClass.monomial(1)) == PolyClass.monomial(1, -1), "s(x) = -x")
    # q-relation on the generators themselves
    out.expect(dq * xq == (xq * dq).scale(q) + WeylElement.monomial(0, 0, 1, True), "d x = q x d + 1")
    return out
