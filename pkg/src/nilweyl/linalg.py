"""
Exact sparse linear algebra over Q.

Entries are Python ints or ``fractions.Fraction``; integral values are kept
as ints because most matrices in this package are 0/1 and int arithmetic is
much cheaper.  Nothing here ever touches floating point.

Vectors are sparse dicts ``{index: value}`` with no stored zeros.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

__all__ = [
    "RatMatrix", "SparseVec", "as_rational", "rank", "rref", "kernel_basis",
    "solve", "solve_many", "inverse", "quotient_projection", "Echelon",
]

SparseVec = dict


def as_rational(x) -> Rational:
    """Normalise to int when integral, Fraction otherwise. Rejects floats."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return as_rational(Fraction(x))
    if isinstance(x, Rational):
        return as_rational(Fraction(x.numerator, x.denominator))
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return as_rational(Fraction(a) / b)


def _clean(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def vec_axpy(y: SparseVec, a, x: SparseVec) -> None:
    """y += a*x in place."""
    for j, v in x.items():
        t = y.get(j, 0) + a * v
        if t:
            y[j] = _clean(t)
        else:
            y.pop(j, None)


def vec_scale(x: SparseVec, a) -> SparseVec:
    if not a:
        return {}
    return {j: _clean(a * v) for j, v in x.items()}


class RatMatrix:
    """
    Sparse matrix with exact rational entries, stored as a list of row dicts.

    Treated as immutable once built; operations return new matrices.
    """

    __slots__ = ("nrows", "ncols", "rows", "_cols")

    def __init__(self, nrows: int, ncols: int, rows: Optional[list] = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        elif len(rows) != nrows:
            raise ValueError("row count mismatch")
        self.rows = rows
        self._cols = None

    # -- construction --------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: Optional[int] = None) -> "RatMatrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: as_rational(v) for j, v in enumerate(r) if v})
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[SparseVec]) -> "RatMatrix":
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(nrows, len(cols), rows)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable) -> "RatMatrix":
        rows = [{} for _ in range(nrows)]
        for i, j, v in entries:
            v = as_rational(v)
            if v:
                rows[i][j] = v
        return cls(nrows, ncols, rows)

    @classmethod
    def block_diag(cls, blocks: Sequence["RatMatrix"]) -> "RatMatrix":
        nr = sum(b.nrows for b in blocks)
        nc = sum(b.ncols for b in blocks)
        rows = []
        off = 0
        for b in blocks:
            for r in b.rows:
                rows.append({j + off: v for j, v in r.items()})
            off += b.ncols
        return cls(nr, nc, rows)

    @classmethod
    def hstack(cls, blocks: Sequence["RatMatrix"]) -> "RatMatrix":
        nr = blocks[0].nrows
        rows = [{} for _ in range(nr)]
        off = 0
        for b in blocks:
            if b.nrows != nr:
                raise ValueError("hstack row mismatch")
            for i, r in enumerate(b.rows):
                for j, v in r.items():
                    rows[i][j + off] = v
            off += b.ncols
        return cls(nr, off, rows)

    @classmethod
    def vstack(cls, blocks: Sequence["RatMatrix"]) -> "RatMatrix":
        nc = blocks[0].ncols
        rows = []
        for b in blocks:
            if b.ncols != nc:
                raise ValueError("vstack column mismatch")
            rows.extend(dict(r) for r in b.rows)
        return cls(len(rows), nc, rows)

    # -- access --------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, 0)

    def columns(self) -> list:
        """Column dicts, cached."""
        if self._cols is None:
            cols = [{} for _ in range(self.ncols)]
            for i, r in enumerate(self.rows):
                for j, v in r.items():
                    cols[j][i] = v
            self._cols = cols
        return self._cols

    def column(self, j: int) -> SparseVec:
        return self.columns()[j]

    def entries(self):
        for i, r in enumerate(self.rows):
            for j in sorted(r):
                yield i, j, r[j]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def to_dense(self) -> list:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(
            r == {i: 1} for i, r in enumerate(self.rows))

    # -- arithmetic ----------------------------------------------------
    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.ncols, self.nrows, [dict(c) for c in self.columns()])

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            orows = other.rows
            out = []
            for r in self.rows:
                acc: dict = {}
                for k, a in r.items():
                    for j, b in orows[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                out.append({j: _clean(v) for j, v in acc.items() if v})
            return RatMatrix(self.nrows, other.ncols, out)
        if isinstance(other, dict):
            return self.apply(other)
        return NotImplemented

    def apply(self, x: SparseVec) -> SparseVec:
        """Matrix times sparse column vector."""
        cols = self.columns()
        acc: dict = {}
        for j, v in x.items():
            for i, a in cols[j].items():
                acc[i] = acc.get(i, 0) + a * v
        return {i: _clean(v) for i, v in acc.items() if v}

    def apply_dense(self, x: Sequence) -> list:
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch")
        return [_clean(sum((v * x[j] for j, v in r.items()), 0)) for r in self.rows]

    def _combine(self, other: "RatMatrix", sign: int) -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for r, s in zip(self.rows, other.rows):
            acc = dict(r)
            vec_axpy(acc, sign, s)
            out.append(acc)
        return RatMatrix(self.nrows, self.ncols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, a) -> "RatMatrix":
        a = as_rational(a)
        return RatMatrix(self.nrows, self.ncols, [vec_scale(r, a) for r in self.rows])

    def kron(self, other: "RatMatrix") -> "RatMatrix":
        """Kronecker product, index (i1, i2) -> i1 * other.nrows + i2."""
        rows = []
        for r in self.rows:
            for s in other.rows:
                row = {}
                for j1, a in r.items():
                    base = j1 * other.ncols
                    for j2, b in s.items():
                        row[base + j2] = _clean(a * b)
                rows.append(row)
        return RatMatrix(self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def select_columns(self, cols: Sequence[int]) -> "RatMatrix":
        pos = {c: k for k, c in enumerate(cols)}
        rows = [{pos[j]: v for j, v in r.items() if j in pos} for r in self.rows]
        return RatMatrix(self.nrows, len(cols), rows)

    def select_rows(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix(len(idx), self.ncols, [dict(self.rows[i]) for i in idx])

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self.rows)))

    def __repr__(self):
        if self.nrows * self.ncols <= 64:
            return f"RatMatrix({self.to_dense()})"
        return f"RatMatrix<{self.nrows}x{self.ncols}, nnz={self.nnz}>"


class Echelon:
    """
    Incrementally built row echelon form.

    Each stored row is normalised to 1 at its pivot, its leading (smallest)
    index, and carries an optional companion ("shadow") that undergoes the
    same row operations.  Shadows are sparse dicts as well, with arbitrary
    hashable keys.
    """

    def __init__(self):
        self.pivots: dict[int, tuple[SparseVec, SparseVec]] = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: SparseVec, shadow: Optional[SparseVec] = None):
        v = dict(v)
        s = dict(shadow) if shadow is not None else {}
        pivots = self.pivots
        while v:
            c = min(v)
            if c not in pivots:
                break
            f = v[c]
            pv, ps = pivots[c]
            vec_axpy(v, -f, pv)
            if ps:
                vec_axpy(s, -f, ps)
        # further pivots may remain at larger indices, which is fine for echelon form
        return v, s

    def insert(self, v: SparseVec, shadow: Optional[SparseVec] = None):
        """Reduce and store. Returns (pivot or None, residual shadow)."""
        v, s = self.reduce(v, shadow)
        if not v:
            return None, s
        c = min(v)
        f = v[c]
        if f != 1:
            inv = _div(1, f)
            v = vec_scale(v, inv)
            s = vec_scale(s, inv)
        self.pivots[c] = (v, s)
        return c, None

    def fully_reduced(self) -> dict[int, tuple[SparseVec, SparseVec]]:
        """Back-substitute so that no stored row has an entry at another pivot."""
        out: dict = {}
        for c in sorted(self.pivots, reverse=True):
            v, s = self.pivots[c]
            v = dict(v)
            s = dict(s)
            for c2 in sorted((k for k in v if k != c and k in out)):
                f = v.get(c2)
                if f:
                    pv, ps = out[c2]
                    vec_axpy(v, -f, pv)
                    vec_axpy(s, -f, ps)
            out[c] = (v, s)
        return out


def rank(m: RatMatrix) -> int:
    ech = Echelon()
    for r in sorted(m.rows, key=len):
        if r:
            ech.insert(r)
    return len(ech)


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    ech = Echelon()
    for r in m.rows:
        if r:
            ech.insert(r)
    red = ech.fully_reduced()
    piv = sorted(red)
    rows = [red[c][0] for c in piv]
    rows += [{} for _ in range(m.nrows - len(rows))]
    return RatMatrix(m.nrows, m.ncols, rows), piv


def kernel_basis(m: RatMatrix) -> RatMatrix:
    """Columns form a basis of {x : m x = 0}, one per free column."""
    red, piv = rref(m)
    pivset = set(piv)
    free = [j for j in range(m.ncols) if j not in pivset]
    # column j of red restricted to pivot rows
    cols = []
    prow = {c: red.rows[k] for k, c in enumerate(piv)}
    for f in free:
        x = {f: 1}
        for c, row in prow.items():
            v = row.get(f)
            if v:
                x[c] = _clean(-v)
        cols.append(x)
    return RatMatrix.from_columns(m.ncols, cols)


def solve_many(m: RatMatrix, bs: Sequence[SparseVec]) -> list[Optional[SparseVec]]:
    """Solve m x = b for each sparse b; entries are None when inconsistent."""
    ech = Echelon()
    conditions = []
    for i, r in enumerate(m.rows):
        c, resid = ech.insert(r, {i: 1})
        if c is None:
            # sum_i resid[i] * row_i == 0, so b must satisfy the same relation
            conditions.append(resid)
    red = ech.fully_reduced()
    out = []
    for b in bs:
        b = {i: as_rational(v) for i, v in b.items() if v}
        if any(sum((c * b.get(i, 0) for i, c in cond.items()), 0) != 0
               for cond in conditions):
            out.append(None)
            continue
        # rref row c reads x_c + (free terms) = sum_i s[i] b_i; free variables set to 0
        x = {}
        for c, (_, s) in red.items():
            val = sum((coef * b.get(i, 0) for i, coef in s.items()), 0)
            if val:
                x[c] = _clean(val)
        out.append(x)
    return out


def solve(m: RatMatrix, b) -> Optional[list]:
    """Some x with m x = b (dense lists in and out), or None if inconsistent."""
    if isinstance(b, dict):
        bs = b
    else:
        if len(b) != m.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
        bs = {i: as_rational(v) for i, v in enumerate(b) if v}
    x = solve_many(m, [bs])[0]
    if x is None:
        return None
    return [x.get(j, 0) for j in range(m.ncols)]


def inverse(m: RatMatrix) -> RatMatrix:
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    ech = Echelon()
    for i, r in enumerate(m.rows):
        c, _ = ech.insert(r, {i: 1})
        if c is None:
            raise ZeroDivisionError("matrix is singular")
    red = ech.fully_reduced()
    # row c of rref = e_c = sum_i s[i] m_i, so s is row c of the inverse
    return RatMatrix(m.nrows, m.ncols, [dict(red[c][1]) for c in range(m.ncols)])


def quotient_projection(ambient_dim: int, subspace: RatMatrix) -> RatMatrix:
    """
    Projection onto the complement spanned by non-pivot coordinates.

    ``subspace`` holds spanning vectors as columns.  Returns P with
    P @ subspace == 0 and P restricted to the complement coordinates equal
    to the identity.
    """
    if subspace.nrows != ambient_dim:
        raise ValueError("subspace vectors do not live in the ambient space")
    proj, comp = _projection_and_complement(ambient_dim, subspace.columns())
    return proj


def _projection_and_complement(ambient_dim: int, vectors) -> tuple[RatMatrix, list[int]]:
    ech = Echelon()
    for v in vectors:
        if v:
            ech.insert(v)
    red = ech.fully_reduced()
    comp = [j for j in range(ambient_dim) if j not in red]
    pos = {c: k for k, c in enumerate(comp)}
    cols = []
    for j in range(ambient_dim):
        if j in pos:
            cols.append({pos[j]: 1})
        else:
            row = red[j][0]
            cols.append({pos[k]: _clean(-v) for k, v in row.items() if k != j})
    return RatMatrix.from_columns(len(comp), cols), comp


def projection_with_complement(ambient_dim: int, vectors) -> tuple[RatMatrix, list[int]]:
    """Like quotient_projection but takes sparse vectors and also returns the complement coordinates."""
    return _projection_and_complement(ambient_dim, vectors)
