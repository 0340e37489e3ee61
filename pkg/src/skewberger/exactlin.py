"""Exact linear algebra over the Gaussian rationals Q(i).

Scalars are ``gmpy2.mpq`` when real and :class:`Gaussian` otherwise, so the
common real case runs at native rational speed while a single elimination
routine serves both.  Vectors passed between modules are either dense tuples
or sparse ``{index: scalar}`` dicts; matrices are :class:`Mat`.
"""
from __future__ import annotations

import hashlib
import heapq
import json
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

from gmpy2 import mpq

log = logging.getLogger(__name__)

CACHE_ENV = "SKEWBERGER_CACHE"


class DimensionError(ValueError):
    pass


class Gaussian:
    """A Gaussian rational ``re + im*i`` with ``im != 0``.

    Build values through :func:`scalar`; it collapses real results back to
    plain ``mpq``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = mpq(re)
        self.im = mpq(im)

    def __add__(self, o):
        if isinstance(o, Gaussian):
            return scalar(self.re + o.re, self.im + o.im)
        return Gaussian(self.re + o, self.im)

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, Gaussian):
            return scalar(self.re - o.re, self.im - o.im)
        return Gaussian(self.re - o, self.im)

    def __rsub__(self, o):
        return Gaussian(o - self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, Gaussian):
            return scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        if not o:
            return mpq(0)
        return Gaussian(self.re * o, self.im * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, Gaussian):
            n = o.re * o.re + o.im * o.im
            return scalar((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)
        return Gaussian(self.re / o, self.im / o)

    def __rtruediv__(self, o):
        n = self.re * self.re + self.im * self.im
        return scalar(o * self.re / n, -o * self.im / n)

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __bool__(self):
        return True

    def __eq__(self, o):
        if isinstance(o, Gaussian):
            return self.re == o.re and self.im == o.im
        return False

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[mpq, Gaussian]
I = Gaussian(0, 1)
ZERO = mpq(0)
ONE = mpq(1)


def scalar(re=0, im=0) -> Scalar:
    """Canonical scalar: ``mpq`` when the imaginary part vanishes."""
    if im:
        return Gaussian(re, im)
    return mpq(re)


def to_scalar(x) -> Scalar:
    if isinstance(x, Gaussian):
        return x
    if isinstance(x, complex):
        return scalar(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, str):
        return parse_scalar(x)
    return mpq(x)


def re_part(x: Scalar):
    return x.re if isinstance(x, Gaussian) else mpq(x)


def im_part(x: Scalar):
    return x.im if isinstance(x, Gaussian) else ZERO


def conj(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, Gaussian) else x


def is_real(x: Scalar) -> bool:
    return not isinstance(x, Gaussian)


def format_scalar(x: Scalar) -> str:
    """``"a/b"`` for reals, ``"a/b+c/d i"`` otherwise."""
    if isinstance(x, Gaussian):
        im = x.im
        sign = "+" if im > 0 else "-"
        return f"{x.re}{sign}{abs(im)} i"
    return str(mpq(x))


def parse_scalar(s: str) -> Scalar:
    t = s.replace(" ", "")
    if not t.endswith("i"):
        return mpq(t)
    body = t[:-1]
    # split at the last sign that is not at position 0 or after '/'
    cut = None
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "/eE":
            cut = k
            break
    if cut is None:
        re, im = "0", body
    else:
        re, im = body[:cut], body[cut:]
    if im in ("", "+"):
        im = "1"
    elif im == "-":
        im = "-1"
    return scalar(mpq(re), mpq(im))


# ----------------------------------------------------------------------------
# sparse matrices

SparseVec = dict


class Mat:
    """Immutable sparse matrix; ``entries`` never stores zeros."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Mapping | None = None):
        self.rows = rows
        self.cols = cols
        ent = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise DimensionError(f"entry ({i},{j}) outside {rows}x{cols}")
                v = to_scalar(v)
                if v:
                    ent[(i, j)] = v
        self.entries = ent
        self._hash = None

    @classmethod
    def _raw(cls, rows, cols, entries):
        m = cls.__new__(cls)
        m.rows, m.cols, m.entries, m._hash = rows, cols, entries, None
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "Mat":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        ent = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise DimensionError("ragged matrix")
            for j, v in enumerate(row):
                v = to_scalar(v)
                if v:
                    ent[(i, j)] = v
        return cls._raw(rows, cols, ent)

    @classmethod
    def identity(cls, n: int, value=1) -> "Mat":
        v = to_scalar(value)
        return cls._raw(n, n, {(i, i): v for i in range(n)} if v else {})

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Mat":
        return cls._raw(rows, rows if cols is None else cols, {})

    @classmethod
    def unit(cls, n: int, i: int, j: int, cols: int | None = None) -> "Mat":
        return cls._raw(n, n if cols is None else cols, {(i, j): ONE})

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Mat":
        ncols = len(columns)
        nrows = rows if rows is not None else (len(columns[0]) if ncols else 0)
        ent = {}
        for j, col in enumerate(columns):
            items = col.items() if isinstance(col, dict) else enumerate(col)
            for i, v in items:
                if v:
                    ent[(i, j)] = to_scalar(v)
        return cls._raw(nrows, ncols, ent)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        return self.entries.get(ij, ZERO)

    def to_dense(self) -> list[list[Scalar]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> dict:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def columns_sparse(self) -> list[dict]:
        cols = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def rows_sparse(self) -> list[dict]:
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def flat(self) -> dict:
        """Row-major sparse flattening, index ``i*cols + j``."""
        c = self.cols
        return {i * c + j: v for (i, j), v in self.entries.items()}

    @classmethod
    def from_flat(cls, flat: Mapping, rows: int, cols: int) -> "Mat":
        return cls._raw(rows, cols, {divmod(k, cols): v for k, v in flat.items() if v})

    def __add__(self, o: "Mat") -> "Mat":
        if self.shape != o.shape:
            raise DimensionError("shape mismatch in addition")
        ent = dict(self.entries)
        for k, v in o.entries.items():
            s = ent.get(k, ZERO) + v
            if s:
                ent[k] = s
            else:
                ent.pop(k, None)
        return Mat._raw(self.rows, self.cols, ent)

    def __neg__(self) -> "Mat":
        return Mat._raw(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, o: "Mat") -> "Mat":
        return self + (-o)

    def scale(self, c) -> "Mat":
        c = to_scalar(c)
        if not c:
            return Mat.zeros(self.rows, self.cols)
        return Mat._raw(self.rows, self.cols, {k: v * c for k, v in self.entries.items()})

    def __matmul__(self, o: "Mat") -> "Mat":
        if self.cols != o.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {o.shape}")
        orows = o.rows_sparse()
        acc: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in orows[k].items():
                key = (i, j)
                acc[key] = acc.get(key, ZERO) + a * b
        return Mat._raw(self.rows, o.cols, {k: v for k, v in acc.items() if v})

    def apply(self, v) -> dict:
        """Matrix times a (dense or sparse) vector, returned sparse."""
        vec = v if isinstance(v, dict) else {i: x for i, x in enumerate(v) if x}
        out: dict = {}
        for (i, j), a in self.entries.items():
            x = vec.get(j)
            if x:
                out[i] = out.get(i, ZERO) + a * x
        return {i: x for i, x in out.items() if x}

    @property
    def T(self) -> "Mat":
        return Mat._raw(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def conj(self) -> "Mat":
        return Mat._raw(self.rows, self.cols, {k: conj(v) for k, v in self.entries.items()})

    def trace(self) -> Scalar:
        t = ZERO
        for (i, j), v in self.entries.items():
            if i == j:
                t = t + v
        return t

    def is_zero(self) -> bool:
        return not self.entries

    def is_real(self) -> bool:
        return all(not isinstance(v, Gaussian) for v in self.entries.values())

    def kron(self, o: "Mat") -> "Mat":
        ent = {}
        for (i, j), a in self.entries.items():
            for (k, l), b in o.entries.items():
                ent[(i * o.rows + k, j * o.cols + l)] = a * b
        return Mat._raw(self.rows * o.rows, self.cols * o.cols, ent)

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        rpos = {r: a for a, r in enumerate(rows)}
        cpos = {c: b for b, c in enumerate(cols)}
        ent = {}
        for (i, j), v in self.entries.items():
            if i in rpos and j in cpos:
                ent[(rpos[i], cpos[j])] = v
        return Mat._raw(len(rows), len(cols), ent)

    def __eq__(self, o):
        return isinstance(o, Mat) and self.shape == o.shape and self.entries == o.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self.entries.items())))
        return self._hash

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, nnz={len(self.entries)})"


def commutator(a: Mat, b: Mat) -> Mat:
    return a @ b - b @ a


def block_diag(*mats: Mat) -> Mat:
    r = c = 0
    ent = {}
    for m in mats:
        for (i, j), v in m.entries.items():
            ent[(r + i, c + j)] = v
        r += m.rows
        c += m.cols
    return Mat._raw(r, c, ent)


def block_matrix(blocks: Sequence[Sequence[Mat]]) -> Mat:
    heights = [row[0].rows for row in blocks]
    widths = [m.cols for m in blocks[0]]
    ent = {}
    r0 = 0
    for bi, row in enumerate(blocks):
        c0 = 0
        for bj, m in enumerate(row):
            if m.rows != heights[bi] or m.cols != widths[bj]:
                raise DimensionError("inconsistent block sizes")
            for (i, j), v in m.entries.items():
                ent[(r0 + i, c0 + j)] = v
            c0 += widths[bj]
        r0 += heights[bi]
    return Mat._raw(sum(heights), sum(widths), ent)


def det(m: Mat) -> Scalar:
    """Exact determinant by fraction-aware elimination (small matrices)."""
    if m.rows != m.cols:
        raise DimensionError("determinant of a non-square matrix")
    a = m.to_dense()
    n = m.rows
    d = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d = d * piv
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f = f / piv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


def inverse(m: Mat) -> Mat:
    n = m.rows
    if m.rows != m.cols:
        raise DimensionError("inverse of a non-square matrix")
    cols = []
    for j in range(n):
        sol = solve(m.rows_sparse(), {j: ONE}, n)
        if sol is None:
            raise ZeroDivisionError("matrix is singular")
        cols.append(sol[0])
    return Mat.from_columns(cols, n)


# ----------------------------------------------------------------------------
# sparse elimination


def _sparse(v) -> dict:
    if isinstance(v, dict):
        return {k: to_scalar(x) for k, x in v.items() if x}
    return {i: to_scalar(x) for i, x in enumerate(v) if x}


def _axpy(row: dict, c, other: dict) -> None:
    """row -= c * other, in place, dropping cancellations."""
    for j, v in other.items():
        s = row.get(j)
        if s is None:
            row[j] = -c * v
        else:
            s = s - c * v
            if s:
                row[j] = s
            else:
                del row[j]


class Echelon:
    """Incremental sparse row echelon structure.

    Each stored row is normalised to pivot value 1 and contains no pivot
    column of an earlier-inserted row, which makes reduction of a new row a
    single pass in insertion order.  Pivot choice is Markowitz-style: the
    column with the smallest static weight, ties broken by index.  With
    ``track=True`` every stored row remembers its combination of the input
    rows, so callers can express vectors in terms of the original generators.
    """

    def __init__(self, ncols: int, weights: Mapping[int, int] | None = None, track: bool = False,
                 leading: bool = False, rhs: bool = False):
        self.ncols = ncols
        self.weights = weights or {}
        self.leading = leading
        self.track = track
        self.rhs = rhs
        self.rows: list[dict] = []
        self.pivcols: list[int] = []
        self.pos: dict[int, int] = {}  # pivot column -> row index
        self.combos: list[dict] = []
        self.n_inputs = 0
        self.inconsistent = False

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, row: dict, combo: dict | None = None) -> dict:
        pos = self.pos
        heap = [pos[j] for j in row if j in pos]
        if not heap:
            return row
        heapq.heapify(heap)
        seen = set(heap)
        rows, pivcols = self.rows, self.pivcols
        while heap:
            k = heapq.heappop(heap)
            c = row.get(pivcols[k])
            if c is None:
                continue
            prow = rows[k]
            _axpy(row, c, prow)
            if combo is not None:
                _axpy(combo, c, self.combos[k])
            for j in prow:
                p = pos.get(j)
                if p is not None and p not in seen and j in row:
                    seen.add(p)
                    heapq.heappush(heap, p)
        return row

    def reduce(self, v) -> dict:
        return self._reduce(_sparse(v))

    def add(self, v, rhs_value=None) -> bool:
        """Insert a row; returns True when it increased the rank."""
        row = _sparse(v)
        if self.rhs and rhs_value:
            row[self.ncols] = to_scalar(rhs_value)
        combo = {self.n_inputs: ONE} if self.track else None
        self.n_inputs += 1
        self._reduce(row, combo)
        cands = [j for j in row if j != self.ncols] if self.rhs else list(row)
        if not cands:
            if row:
                self.inconsistent = True
            return False
        if self.leading:
            p = min(cands)
        else:
            w = self.weights
            p = min(cands, key=lambda j: (w.get(j, 0), j))
        inv = 1 / row[p]
        if inv != 1:
            row = {j: x * inv for j, x in row.items()}
            if combo is not None:
                combo = {j: x * inv for j, x in combo.items()}
        self.pos[p] = len(self.rows)
        self.rows.append(row)
        self.pivcols.append(p)
        if combo is not None:
            self.combos.append(combo)
        return True

    def contains(self, v) -> bool:
        return not self._reduce(_sparse(v))

    def express(self, v) -> dict | None:
        """Coefficients of ``v`` over the inserted rows, or None if outside the span."""
        if not self.track:
            raise RuntimeError("Echelon built without tracking")
        row = _sparse(v)
        combo: dict = {}
        self._reduce(row, combo)
        if row:
            return None
        return {k: -x for k, x in combo.items() if x}

    def back_substitute(self) -> tuple[dict, dict]:
        """Solve for pivot variables in terms of free ones.

        Returns ``(exprs, constants)``: for each pivot column its sparse
        dependence on free columns, and its value with all free columns 0.
        """
        exprs: dict[int, dict] = {}
        consts: dict[int, Scalar] = {}
        rhs_col = self.ncols if self.rhs else None
        pos = self.pos
        for k in range(len(self.rows) - 1, -1, -1):
            p = self.pivcols[k]
            e: dict = {}
            const = ZERO
            for j, a in self.rows[k].items():
                if j == p:
                    continue
                if j == rhs_col:
                    const = const + a
                elif j in pos:
                    for f, b in exprs[j].items():
                        s = e.get(f, ZERO) - a * b
                        if s:
                            e[f] = s
                        else:
                            e.pop(f, None)
                    cj = consts.get(j)
                    if cj:
                        const = const - a * cj
                else:
                    s = e.get(j, ZERO) - a
                    if s:
                        e[j] = s
                    else:
                        e.pop(j, None)
            exprs[p] = e
            if const:
                consts[p] = const
        return exprs, consts

    def rref(self) -> list[dict]:
        """Fully reduced rows sorted by pivot column (requires leading pivots)."""
        order = sorted(range(len(self.rows)), key=lambda k: self.pivcols[k], reverse=True)
        done: dict[int, dict] = {}
        for k in order:
            row = dict(self.rows[k])
            p = self.pivcols[k]
            for j in sorted([j for j in row if j != p and j in done]):
                c = row.get(j)
                if c:
                    _axpy(row, c, done[j])
            done[p] = row
        return [done[p] for p in sorted(done)]


def column_weights(rows: Iterable[dict]) -> dict[int, int]:
    w: dict[int, int] = {}
    for r in rows:
        for j in r:
            w[j] = w.get(j, 0) + 1
    return w


def rref_rows(vectors: Iterable, ncols: int) -> list[dict]:
    """Canonical reduced row echelon basis of the span of ``vectors``."""
    e = Echelon(ncols, leading=True)
    for v in vectors:
        e.add(v)
    return e.rref()


def _cache_key(rows: list[dict], ncols: int) -> str:
    h = hashlib.sha256()
    h.update(str(ncols).encode())
    for r in rows:
        h.update(b"|")
        for j in sorted(r):
            h.update(f"{j}:{format_scalar(r[j])},".encode())
    return h.hexdigest()


def _cache_dir() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    if not d:
        return None
    p = Path(d)
    p.mkdir(parents=True, exist_ok=True)
    return p


def nullspace(rows: Sequence, ncols: int) -> list[dict]:
    """Sparse kernel basis of the matrix with the given rows.

    The basis is returned in canonical reduced echelon form, so it only
    depends on the kernel itself and not on pivoting.
    """
    srows = [_sparse(r) for r in rows]
    for r in srows:
        if any(j >= ncols or j < 0 for j in r):
            raise DimensionError("row index outside the column range")
    cdir = _cache_dir()
    if cdir is not None:
        key = _cache_key(srows, ncols)
        path = cdir / f"{key}.json"
        if path.exists():
            data = json.loads(path.read_text())
            return [{int(k): parse_scalar(v) for k, v in vec.items()} for vec in data]
    srows.sort(key=len)
    e = Echelon(ncols, weights=column_weights(srows))
    for r in srows:
        e.add(r)
    log.debug("nullspace: %d rows, %d cols, rank %d", len(srows), ncols, e.rank)
    exprs, _ = e.back_substitute()
    free = [j for j in range(ncols) if j not in e.pos]
    vecs = {f: {f: ONE} for f in free}
    for p, ex in exprs.items():
        for f, x in ex.items():
            vecs[f][p] = x
    basis = rref_rows((vecs[f] for f in free), ncols)
    if cdir is not None:
        data = [{str(k): format_scalar(v) for k, v in vec.items()} for vec in basis]
        path.write_text(json.dumps(data))
    return basis


def solve(rows: Sequence, rhs: Mapping[int, Scalar], ncols: int) -> tuple[dict, list[dict]] | None:
    """Solve ``M x = b``; returns (particular solution, kernel basis) or None."""
    srows = [_sparse(r) for r in rows]
    e = Echelon(ncols, weights=column_weights(srows), rhs=True)
    for i, r in enumerate(srows):
        e.add(r, rhs.get(i))
    for i in rhs:
        if i >= len(srows) and rhs[i]:
            return None
    if e.inconsistent:
        return None
    exprs, consts = e.back_substitute()
    part = {p: v for p, v in consts.items() if v}
    free = [j for j in range(ncols) if j not in e.pos]
    vecs = {f: {f: ONE} for f in free}
    for p, ex in exprs.items():
        for f, x in ex.items():
            vecs[f][p] = x
    return part, [vecs[f] for f in free]


def rank_rows(rows: Iterable, ncols: int) -> int:
    rows = [_sparse(r) for r in rows]
    e = Echelon(ncols, weights=column_weights(rows))
    for r in sorted(rows, key=len):
        e.add(r)
    return e.rank


def rank_mod_p(rows: Iterable, ncols: int, p: int = 2_147_483_629) -> int:
    """Rank of the reduction mod a word-sized prime (a lower bound for the rank over Q)."""
    work = []
    for r in rows:
        d = {}
        for j, v in _sparse(r).items():
            if isinstance(v, Gaussian):
                raise ValueError("modular rank is only defined for rational rows")
            num, den = int(v.numerator), int(v.denominator)
            if den % p == 0:
                raise ZeroDivisionError("denominator divisible by the modulus")
            x = num * pow(den, -1, p) % p
            if x:
                d[j] = x
        work.append(d)
    piv: dict[int, dict] = {}
    for row in work:
        while row:
            j = min(row)
            if j not in piv:
                inv = pow(row[j], -1, p)
                piv[j] = {k: v * inv % p for k, v in row.items()}
                break
            c = row[j]
            for k, v in piv[j].items():
                s = (row.get(k, 0) - c * v) % p
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
    return len(piv)


# ----------------------------------------------------------------------------
# dense-vector public surface


def _to_dense(v: dict, n: int) -> tuple:
    out = [ZERO] * n
    for j, x in v.items():
        out[j] = x
    return tuple(out)


def _check_lengths(vectors: Sequence[Sequence], n: int | None = None) -> int:
    lens = {len(v) for v in vectors}
    if n is not None:
        lens.add(n)
    if len(lens) > 1:
        raise DimensionError(f"vectors of differing lengths {sorted(lens)}")
    return lens.pop() if lens else 0


def kernel(m) -> list[tuple]:
    """Basis of ``{v : m v = 0}`` as dense tuples, in reduced echelon form."""
    if not isinstance(m, Mat):
        m = Mat.from_dense(m)
    return [_to_dense(v, m.cols) for v in nullspace(m.rows_sparse(), m.cols)]


def rank(m) -> int:
    if not isinstance(m, Mat):
        m = Mat.from_dense(m)
    return rank_rows(m.rows_sparse(), m.cols)


def span_dim(vectors: Sequence[Sequence]) -> int:
    n = _check_lengths(vectors)
    return rank_rows(vectors, n)


def in_span(v: Sequence, vectors: Sequence[Sequence]) -> bool:
    n = _check_lengths(vectors, len(v))
    e = Echelon(n)
    for w in vectors:
        e.add(w)
    return e.contains(v)


def span_equal(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    if a and b:
        _check_lengths(list(a) + list(b))
    if span_dim(a) != span_dim(b):
        return False
    n = len(a[0]) if a else (len(b[0]) if b else 0)
    e = Echelon(n)
    for w in a:
        e.add(w)
    return all(e.contains(w) for w in b)


def span_basis(vectors: Iterable, ncols: int) -> list[dict]:
    """Canonical (reduced echelon) sparse basis of a span."""
    return rref_rows(vectors, ncols)
