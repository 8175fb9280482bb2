"""Laurent polynomials in q with rational coefficients, and q-integers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .linalg import as_rational

__all__ = ["Laurent", "QFrac", "q", "qint", "qfactorial", "qbinomial"]


class Laurent:
    """Immutable sparse Laurent polynomial {exponent: coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        self.terms = {int(e): as_rational(c) for e, c in terms.items() if c}

    @classmethod
    def coerce(cls, x) -> "Laurent":
        return x if isinstance(x, Laurent) else cls({0: x})

    def __add__(self, other):
        if isinstance(other, QFrac):
            return NotImplemented
        other = Laurent.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Laurent.coerce(other))

    def __rsub__(self, other):
        return Laurent.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, QFrac):
            return NotImplemented
        other = Laurent.coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self.terms.items()
            return Laurent({e * k: Fraction(1) / c ** (-k)})
        out = Laurent(1)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        """Exact division; raises if the quotient is not a Laurent polynomial."""
        other = Laurent.coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if len(other.terms) == 1:
            (e, c), = other.terms.items()
            return Laurent({k - e: Fraction(v) / c for k, v in self.terms.items()})
        if not self.terms:
            return Laurent()
        # shift both to honest polynomials; the shifted divisor has nonzero constant term
        a, b = min(self.terms), min(other.terms)
        num = {e - a: Fraction(c) for e, c in self.terms.items()}
        den = {e - b: c for e, c in other.terms.items()}
        ddeg = max(den)
        quot: dict = {}
        while num and max(num) >= ddeg:
            top = max(num)
            coef = num[top] / den[ddeg]
            quot[top - ddeg] = coef
            for e, c in den.items():
                k = e + top - ddeg
                v = num.get(k, 0) - coef * c
                if v:
                    num[k] = v
                else:
                    num.pop(k, None)
        if num:
            raise ArithmeticError("inexact Laurent division")
        return Laurent({e + a - b: c for e, c in quot.items()})

    def __eq__(self, other):
        if isinstance(other, QFrac):
            return NotImplemented
        if isinstance(other, Laurent):
            return self.terms == other.terms
        try:
            return self.terms == Laurent.coerce(as_rational(other)).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def at(self, value):
        """Evaluate at a rational q."""
        value = Fraction(value)
        return as_rational(sum((c * value ** e for e, c in self.terms.items()), Fraction(0)))

    def shift(self, k: int) -> "Laurent":
        return Laurent({e + k: c for e, c in self.terms.items()})

    def is_constant(self) -> bool:
        return set(self.terms) <= {0}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^{e}"
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            elif mono:
                s = f"{c}*{mono}"
            else:
                s = str(c)
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"Laurent({self})"


class QFrac:
    """Quotient num/den of Laurent polynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num, den = Laurent.coerce(num), Laurent.coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if len(den.terms) == 1 or (num and _divides(den, num)):
            num, den = num / den, Laurent(1)
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, x) -> "QFrac":
        if isinstance(x, QFrac):
            return x
        return cls(Laurent.coerce(x if isinstance(x, Laurent) else as_rational(x)))

    def __add__(self, other):
        o = QFrac.coerce(other)
        if self.den == o.den:
            return QFrac(self.num + o.num, self.den)
        return QFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QFrac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-QFrac.coerce(other))

    def __mul__(self, other):
        o = QFrac.coerce(other)
        return QFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QFrac.coerce(other)
        return QFrac(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        try:
            o = QFrac.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.at(2), self.at(3)))

    def __bool__(self):
        return bool(self.num)

    def at(self, value):
        return as_rational(Fraction(self.num.at(value)) / self.den.at(value))

    def is_constant(self) -> bool:
        return self.den == 1 and self.num.is_constant()

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"QFrac({self})"


def _divides(den: Laurent, num: Laurent) -> bool:
    try:
        num / den
        return True
    except ArithmeticError:
        return False


q = Laurent({1: 1})


@lru_cache(maxsize=None)
def qint(i: int) -> Laurent:
    """[i] = 1 + q + ... + q^{i-1}."""
    return Laurent({e: 1 for e in range(i)})


@lru_cache(maxsize=None)
def qfactorial(n: int) -> Laurent:
    out = Laurent(1)
    for i in range(1, n + 1):
        out = out * qint(i)
    return out


@lru_cache(maxsize=None)
def qbinomial(n: int, k: int) -> Laurent:
    if k < 0 or k > n:
        return Laurent()
    if k in (0, n):
        return Laurent(1)
    # q-Pascal: [n, k] = [n-1, k-1] + q^k [n-1, k]
    return qbinomial(n - 1, k - 1) + qbinomial(n - 1, k).shift(k)
