"""Matrix Lie algebras, their derived representations and structure tests.

A :class:`MatrixRep` is a linearly independent list of square matrices closed
under the commutator.  Entries are exact (see :mod:`skewberger.exactlin`);
the ``field`` tag records whether the algebra is read over the reals
(``rational``), over the complex numbers (``gaussian``) or is a complex
algebra viewed as a real one (``gaussian-as-real``).
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, NamedTuple, Sequence

from gmpy2 import mpq

from . import clifford
from .exactlin import (
    I,
    ONE,
    ZERO,
    Echelon,
    Mat,
    block_diag,
    block_matrix,
    commutator,
    det,
    format_scalar,
    im_part,
    inverse,
    nullspace,
    parse_scalar,
    re_part,
)

FIELDS = ("rational", "gaussian", "gaussian-as-real")


class UnsupportedConstruction(ValueError):
    pass


class FieldError(ValueError):
    pass


class InvalidStructure(ValueError):
    pass


class RepresentationError(ValueError):
    """A MatrixRep invariant does not hold."""


@dataclass(frozen=True)
class InvariantForm:
    kind: str  # "symmetric" | "skew"
    matrix: Mat


@dataclass(frozen=True, eq=False)
class MatrixRep:
    name: str
    field: str
    dim_v: int
    basis: tuple[Mat, ...]
    invariant_form: InvariantForm | None = None

    def __post_init__(self):
        if self.field not in FIELDS:
            raise FieldError(f"unknown field tag {self.field!r}")
        object.__setattr__(self, "basis", tuple(self.basis))
        for a in self.basis:
            if a.shape != (self.dim_v, self.dim_v):
                raise RepresentationError(f"{self.name}: basis matrix of shape {a.shape}, expected dim {self.dim_v}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"MatrixRep({self.name!r}, field={self.field}, dim={self.dim}, dim_v={self.dim_v})"

    @cached_property
    def _coordinatizer(self) -> Echelon:
        e = Echelon(self.dim_v * self.dim_v, track=True)
        for a in self.basis:
            if not e.add(a.flat()):
                raise RepresentationError(f"{self.name}: basis matrices are linearly dependent")
        return e

    def coords(self, m: Mat) -> list | None:
        """Coordinates of ``m`` in the basis, or None when ``m`` is not in the algebra."""
        c = self._coordinatizer.express(m.flat())
        if c is None:
            return None
        return [c.get(k, ZERO) for k in range(self.dim)]

    def contains(self, m: Mat) -> bool:
        return self._coordinatizer.contains(m.flat())

    @cached_property
    def structure_constants(self) -> dict[tuple[int, int], dict[int, object]]:
        """``[A_i, A_j] = sum_k c[i,j][k] A_k`` for i < j (sparse)."""
        out = {}
        for i, j in itertools.combinations(range(self.dim), 2):
            c = self.coords(commutator(self.basis[i], self.basis[j]))
            if c is None:
                raise RepresentationError(f"{self.name}: not closed under the commutator ({i},{j})")
            out[(i, j)] = {k: x for k, x in enumerate(c) if x}
        return out

    def bracket_coords(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self.structure_constants[(i, j)]
        return {k: -x for k, x in self.structure_constants[(j, i)].items()}

    def validate(self) -> "MatrixRep":
        self._coordinatizer  # independence
        self.structure_constants  # closure
        if self.invariant_form is not None:
            g = self.invariant_form.matrix
            sign = 1 if self.invariant_form.kind == "symmetric" else -1
            if g.T != (g if sign == 1 else -g):
                raise RepresentationError(f"{self.name}: form is not {self.invariant_form.kind}")
            for a in self.basis:
                if not (a.T @ g + g @ a).is_zero():
                    raise RepresentationError(f"{self.name}: basis element does not preserve the form")
        return self

    def with_name(self, name: str) -> "MatrixRep":
        return MatrixRep(name, self.field, self.dim_v, self.basis, self.invariant_form)


@dataclass(frozen=True)
class ComplexStructure:
    J: Mat

    def check(self, rep: MatrixRep) -> None:
        n = self.J.rows
        if self.J.shape != (rep.dim_v, rep.dim_v):
            raise InvalidStructure("complex structure has the wrong size")
        if self.J @ self.J != Mat.identity(n, -1):
            raise InvalidStructure("J^2 != -Id")
        for a in rep.basis:
            if not commutator(self.J, a).is_zero():
                raise InvalidStructure("J does not commute with the algebra")


# ----------------------------------------------------------------------------
# helpers


def _rep(name, field, dim_v, basis, form=None, check=True) -> MatrixRep:
    r = MatrixRep(name, field, dim_v, tuple(basis), form)
    return r.validate() if check else r


def independent(mats: Iterable[Mat]) -> list[Mat]:
    """Keep, in order, the matrices not in the span of the earlier ones."""
    out = []
    e = None
    for m in mats:
        if e is None:
            e = Echelon(m.rows * m.cols)
        if e.add(m.flat()):
            out.append(m)
    return out


def lie_closure(mats: Sequence[Mat], limit: int | None = None) -> list[Mat]:
    """Basis of the Lie algebra generated by ``mats``."""
    basis = independent(mats)
    if not basis:
        return []
    n = basis[0].rows
    e = Echelon(n * n)
    for b in basis:
        e.add(b.flat())
    frontier = list(basis)
    while frontier:
        new = []
        for a in frontier:
            for b in list(basis):
                c = commutator(a, b)
                if not c.is_zero() and e.add(c.flat()):
                    basis.append(c)
                    new.append(c)
                    if limit is not None and len(basis) > limit:
                        raise UnsupportedConstruction("Lie closure exceeded the size limit")
        frontier = new
    return basis


def form_algebra(g: Mat, kind: str) -> list[Mat]:
    """Basis of {A : A^T G + G A = 0} as G^{-1} S, S skew (symmetric G) or symmetric (skew G)."""
    n = g.rows
    ginv = inverse(g)
    out = []
    for i in range(n):
        for j in range(i, n):
            if kind == "symmetric":
                if i == j:
                    continue
                s = Mat.unit(n, i, j) - Mat.unit(n, j, i)
            else:
                s = Mat.unit(n, i, j) + Mat.unit(n, j, i) if i != j else Mat.unit(n, i, i)
            out.append(ginv @ s)
    return out


def standard_symplectic(m: int) -> Mat:
    """omega = [[0, Id_m], [-Id_m, 0]]."""
    return block_matrix([[Mat.zeros(m), Mat.identity(m)], [Mat.identity(m, -1), Mat.zeros(m)]])


def antidiagonal(n: int) -> Mat:
    return Mat(n, n, {(i, n - 1 - i): 1 for i in range(n)})


def _realify_mat(a: Mat) -> Mat:
    """X + iY  ->  [[X, -Y], [Y, X]] in (Re, Im) coordinates."""
    n, m = a.rows, a.cols
    ent = {}
    for (i, j), v in a.entries.items():
        x, y = re_part(v), im_part(v)
        if x:
            ent[(i, j)] = x
            ent[(n + i, m + j)] = x
        if y:
            ent[(i, m + j)] = -y
            ent[(n + i, j)] = y
    return Mat(2 * n, 2 * m, ent)


def complex_unit(n: int) -> Mat:
    """Real matrix of multiplication by i on C^n = R^{2n}."""
    return _realify_mat(Mat.identity(n, I))


# ----------------------------------------------------------------------------
# classical families


def _gl(n):
    return [Mat.unit(n, i, j) for i in range(n) for j in range(n)]


def _sl(n):
    out = [Mat.unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    out += [Mat.unit(n, i, i) - Mat.unit(n, i + 1, i + 1) for i in range(n - 1)]
    return out


def _unitary(p, q, special):
    """Anti-hermitian-w.r.t.-H complex basis of u(p,q) (or su(p,q))."""
    n = p + q
    h = [1] * p + [-1] * q
    out = []
    for k in range(n):
        for l in range(k + 1, n):
            # A = H^{-1} S with S anti-hermitian
            s1 = Mat.unit(n, k, l) - Mat.unit(n, l, k)
            s2 = (Mat.unit(n, k, l) + Mat.unit(n, l, k)).scale(I)
            for s in (s1, s2):
                out.append(Mat(n, n, {(i, j): v * h[i] for (i, j), v in s.entries.items()}))
    if special:
        for k in range(n - 1):
            out.append(Mat(n, n, {(k, k): I, (k + 1, k + 1): -I}))
    else:
        for k in range(n):
            out.append(Mat(n, n, {(k, k): I}))
    return out


def _hermitian_form_real(p, q) -> Mat:
    """Real symplectic form Im h on R^{2n} for h = diag(Id_p, -Id_q)."""
    n = p + q
    h = Mat(n, n, {(i, i): (1 if i < p else -1) for i in range(n)})
    return block_matrix([[Mat.zeros(n), h], [-h, Mat.zeros(n)]])


def _so_h_basis(n: int) -> tuple[list[Mat], Mat]:
    """so(n,H) = so*(2n) on R^{4n}: complex-linear, quaternionic, preserving S = [[0,I],[I,0]]."""
    m = 2 * n
    big = 2 * m
    J = complex_unit(m)
    K = block_matrix([[Mat.zeros(n), Mat.identity(n, -1)], [Mat.identity(n), Mat.zeros(n)]])
    Q = block_diag(K, -K)  # antilinear v -> K conj(v)
    S = block_matrix([[Mat.zeros(n), Mat.identity(n)], [Mat.identity(n), Mat.zeros(n)]])
    G = block_diag(S, -S)  # Re of the complex bilinear form S
    rows = []
    N = big

    def var(i, j):
        return i * N + j

    for C in (J, Q):
        # X C - C X = 0
        ccols = C.columns_sparse()
        crows = C.rows_sparse()
        for i in range(N):
            for j in range(N):
                row = {}
                for k, v in ccols[j].items():  # (XC)_ij = sum_k X_ik C_kj
                    row[var(i, k)] = row.get(var(i, k), ZERO) + v
                for k, v in crows[i].items():  # (CX)_ij = sum_k C_ik X_kj
                    row[var(k, j)] = row.get(var(k, j), ZERO) - v
                row = {a: b for a, b in row.items() if b}
                if row:
                    rows.append(row)
    gcols = G.columns_sparse()
    grows = G.rows_sparse()
    for i in range(N):
        for j in range(i, N):
            # (X^T G + G X)_ij = sum_k X_ki G_kj + sum_k G_ik X_kj
            row = {}
            for k, v in gcols[j].items():
                row[var(k, i)] = row.get(var(k, i), ZERO) + v
            for k, v in grows[i].items():
                row[var(k, j)] = row.get(var(k, j), ZERO) + v
            row = {a: b for a, b in row.items() if b}
            if row:
                rows.append(row)
    ker = nullspace(rows, N * N)
    basis = [Mat.from_flat(v, N, N) for v in ker]
    h = Mat(m, m, {(i, i): (1 if i < n else -1) for i in range(m)})
    omega = block_matrix([[Mat.zeros(m), h], [-h, Mat.zeros(m)]])
    return basis, omega


def _spin(p: int, q: int, half: bool) -> MatrixRep:
    nn = p + q
    k = nn // 2 if nn % 2 == 0 else (nn - 1) // 2
    if not half and nn % 2 == 0:
        k = nn // 2
    gs = clifford.gammas(p, q, k)
    gens = [(gs[a] @ gs[b]).scale(mpq(1, 2)) for a in range(nn) for b in range(a + 1, nn)]
    dim_v = 2 ** k
    name = f"spin({p},{q})" if q else f"spin({p})"
    if half:
        if nn % 2:
            raise UnsupportedConstruction("half-spin requires an even number of generators")
        chi = Mat.identity(dim_v)
        for g in gs:
            chi = chi @ g
        if chi @ chi != Mat.identity(dim_v):
            raise UnsupportedConstruction(f"chirality of Cl({p},{q}) is not real")
        plus = nullspace((chi - Mat.identity(dim_v)).rows_sparse(), dim_v)
        r = _rep(name, "rational", dim_v, gens, check=False)
        return restrict(r, plus, name=f"halfspin({p},{q})")
    form = None
    if all((g.T + g).is_zero() for g in gs) or all((g.T - g).is_zero() for g in gs):
        form = None
    return _rep(name, "rational", dim_v, gens, form)


def construct(family: str, n: int | None = None, *, m: int | None = None, field: str = "rational",
              **params) -> MatrixRep:
    """Build a classical matrix Lie algebra in its defining representation.

    Families: ``gl``, ``sl``, ``so`` (split), ``so_pq``, ``sp`` (dim_v = 2n),
    ``u``, ``su`` (``n=p``, ``m=q``; real matrices on R^{2(p+q)}), ``so_H``,
    ``sp1_so_H``, ``spin7``, ``halfspin12`` (real form spin(6,6)),
    ``halfspin_2_10``, ``trivial`` (``n`` = dim V), ``center`` (R.Id on R^n)
    and ``complex_center`` (R.J on R^{2n}).
    """
    if family in ("gl", "sl", "so", "sp", "so_H", "sp1_so_H", "trivial", "center", "complex_center") and n is None:
        raise UnsupportedConstruction(f"family {family!r} needs a size n")
    if n is not None and (n < 0 or n > 12):
        raise UnsupportedConstruction(f"size {n} outside the supported range 0..12")
    if family == "gl":
        return _rep(f"gl({n})", field, n, _gl(n))
    if family == "sl":
        if n < 2:
            raise UnsupportedConstruction("sl(n) needs n >= 2")
        return _rep(f"sl({n})", field, n, _sl(n))
    if family == "so":
        if n < 2:
            raise UnsupportedConstruction("so(n) needs n >= 2")
        g = antidiagonal(n)
        return _rep(f"so({n})", field, n, form_algebra(g, "symmetric"), InvariantForm("symmetric", g))
    if family == "so_pq":
        p, q = params.get("p", n), params.get("q", m)
        if p is None or q is None or p + q < 2:
            raise UnsupportedConstruction("so(p,q) needs p + q >= 2")
        g = Mat(p + q, p + q, {(i, i): (1 if i < p else -1) for i in range(p + q)})
        name = f"so({p},{q})" if q else f"so({p})"
        return _rep(name, field, p + q, form_algebra(g, "symmetric"), InvariantForm("symmetric", g))
    if family == "sp":
        if n < 1:
            raise UnsupportedConstruction("sp(2n) needs n >= 1")
        w = standard_symplectic(n)
        return _rep(f"sp({2 * n})", field, 2 * n, form_algebra(w, "skew"), InvariantForm("skew", w))
    if family in ("u", "su"):
        p, q = params.get("p", n), params.get("q", m if m is not None else 0)
        if p is None or p + q < 1 or (family == "su" and p + q < 2):
            raise UnsupportedConstruction(f"{family}(p,q) size out of range")
        basis = [_realify_mat(a) for a in _unitary(p, q, family == "su")]
        name = f"{family}({p},{q})" if q else f"{family}({p})"
        return _rep(name, "rational", 2 * (p + q), basis, InvariantForm("skew", _hermitian_form_real(p, q)))
    if family == "so_H":
        if n < 1:
            raise UnsupportedConstruction("so(n,H) needs n >= 1")
        basis, omega = _so_h_basis(n)
        if len(basis) != n * (2 * n - 1):
            raise RepresentationError("so(n,H) construction produced the wrong dimension")
        return _rep(f"so({n},H)", "rational", 4 * n, basis, InvariantForm("skew", omega))
    if family == "sp1_so_H":
        base = construct("so_H", n)
        m2 = 2 * n
        K = block_matrix([[Mat.zeros(n), Mat.identity(n, -1)], [Mat.identity(n), Mat.zeros(n)]])
        J = complex_unit(m2)
        Q = block_diag(K, -K)
        sp1 = [J, Q, J @ Q]
        return _rep(f"sp(1)+so({n},H)", "rational", 4 * n, list(base.basis) + sp1, base.invariant_form)
    if family == "spin7":
        r = _spin(0, 7, half=False)
        return _rep("spin(7)", field, r.dim_v, r.basis, InvariantForm("symmetric", Mat.identity(8)))
    if family == "halfspin12":
        return _spin(6, 6, half=True).with_name("halfspin(6,6)")
    if family == "halfspin_2_10":
        return _spin(2, 10, half=True).with_name("halfspin(2,10)")
    if family == "trivial":
        return _rep("0", field, n, [])
    if family == "center":
        return _rep(f"R.Id({n})", field, n, [Mat.identity(n)])
    if family == "complex_center":
        return _rep(f"R.J({2 * n})", "rational", 2 * n, [complex_unit(n)])
    raise UnsupportedConstruction(
        f"unknown family {family!r}; supported: gl, sl, so, so_pq, sp, u, su, so_H, sp1_so_H, "
        "spin7, halfspin12, halfspin_2_10, trivial, center, complex_center")


CLASSICAL_DIMS: dict[str, Callable[..., int]] = {
    "gl": lambda n: n * n,
    "sl": lambda n: n * n - 1,
    "so": lambda n: n * (n - 1) // 2,
    "sp": lambda n: n * (2 * n + 1),
    "u": lambda n: n * n,
    "su": lambda n: n * n - 1,
    "so_H": lambda n: n * (2 * n - 1),
}


# ----------------------------------------------------------------------------
# derived representations


def _induced_on_words(a: Mat, words: list[tuple], index: dict, alternating: bool) -> Mat:
    """Derivation action of ``a`` on sym/ext power monomials."""
    cols = a.columns_sparse()
    ent: dict = {}
    for c, w in enumerate(words):
        for r, i in enumerate(w):
            for l, v in cols[i].items():
                nw = list(w)
                nw[r] = l
                if alternating:
                    if len(set(nw)) < len(nw):
                        continue
                    sign = _perm_sign(nw)
                    key = tuple(sorted(nw))
                    val = v if sign > 0 else -v
                else:
                    key = tuple(sorted(nw))
                    val = v
                row = index[key]
                ent[(row, c)] = ent.get((row, c), ZERO) + val
    return Mat(len(words), len(words), {k: x for k, x in ent.items() if x})


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _ext_form(g: Mat, words: list[tuple]) -> Mat:
    ent = {}
    for a, u in enumerate(words):
        for b, w in enumerate(words):
            d = det(g.block(list(u), list(w)))
            if d:
                ent[(a, b)] = d
    return Mat(len(words), len(words), ent)


def _volume_pairing(words: list[tuple], n: int) -> Mat:
    index = {w: k for k, w in enumerate(words)}
    ent = {}
    full = set(range(n))
    for a, u in enumerate(words):
        rest = tuple(sorted(full - set(u)))
        b = index[rest]
        ent[(a, b)] = _perm_sign(list(u) + list(rest))
    return Mat(len(words), len(words), ent)


def _same_field(*reps: MatrixRep) -> str:
    fields = {r.field for r in reps}
    if len(fields) > 1:
        raise FieldError(f"field mismatch: {sorted(fields)}")
    return fields.pop()


def derived_rep(kind: str, *inputs: MatrixRep, k: int = 2, extra: Sequence[Mat] = (), name: str | None = None) -> MatrixRep:
    """Functorial constructions on matrix representations.

    ``dual``, ``direct_sum`` (same algebra on V1+V2), ``outer_sum``
    (g1+g2 on V1+V2), ``tensor_product`` (same algebra on V1xV2),
    ``outer_tensor`` (g1+g2 on V1xV2), ``sym_power``/``ext_power`` (``k``),
    ``adjoint``, ``traceless_part``, ``diag_dual_symplectic``,
    ``add`` (sum of two algebras on one space), ``with_center`` (append
    ``extra`` matrices), ``trivial_module`` (dim 1, zero action).
    """
    if not inputs:
        raise ValueError("derived_rep needs at least one input")
    fld = _same_field(*inputs)
    r = inputs[0]
    if kind == "dual":
        form = None
        if r.invariant_form is not None:
            ginv = inverse(r.invariant_form.matrix)
            form = InvariantForm(r.invariant_form.kind, ginv.T)
        return _rep(name or f"{r.name}*", fld, r.dim_v, [-a.T for a in r.basis], form)
    if kind == "direct_sum":
        s = inputs[1]
        if r.dim != s.dim:
            raise RepresentationError("direct_sum needs representations of the same algebra")
        form = None
        if r.invariant_form and s.invariant_form and r.invariant_form.kind == s.invariant_form.kind:
            form = InvariantForm(r.invariant_form.kind, block_diag(r.invariant_form.matrix, s.invariant_form.matrix))
        return _rep(name or f"{r.name}(+){s.name}", fld, r.dim_v + s.dim_v,
                    [block_diag(a, b) for a, b in zip(r.basis, s.basis)], form)
    if kind == "outer_sum":
        s = inputs[1]
        zr, zs = Mat.zeros(r.dim_v), Mat.zeros(s.dim_v)
        basis = [block_diag(a, zs) for a in r.basis] + [block_diag(zr, b) for b in s.basis]
        form = None
        if r.invariant_form and s.invariant_form and r.invariant_form.kind == s.invariant_form.kind:
            form = InvariantForm(r.invariant_form.kind, block_diag(r.invariant_form.matrix, s.invariant_form.matrix))
        return _rep(name or f"{r.name}+{s.name}", fld, r.dim_v + s.dim_v, basis, form)
    if kind == "tensor_product":
        s = inputs[1]
        if r.dim != s.dim:
            raise RepresentationError("tensor_product needs representations of the same algebra")
        ir, is_ = Mat.identity(r.dim_v), Mat.identity(s.dim_v)
        basis = [a.kron(is_) + ir.kron(b) for a, b in zip(r.basis, s.basis)]
        return _rep(name or f"{r.name}(x){s.name}", fld, r.dim_v * s.dim_v, basis, _tensor_form(r, s))
    if kind == "outer_tensor":
        s = inputs[1]
        ir, is_ = Mat.identity(r.dim_v), Mat.identity(s.dim_v)
        basis = [a.kron(is_) for a in r.basis] + [ir.kron(b) for b in s.basis]
        return _rep(name or f"{r.name}+{s.name} on V(x)W", fld, r.dim_v * s.dim_v, basis, _tensor_form(r, s))
    if kind in ("sym_power", "ext_power"):
        alt = kind == "ext_power"
        n = r.dim_v
        if alt:
            words = list(itertools.combinations(range(n), k))
        else:
            words = list(itertools.combinations_with_replacement(range(n), k))
        index = {w: i for i, w in enumerate(words)}
        basis = [_induced_on_words(a, words, index, alt) for a in r.basis]
        form = None
        if r.invariant_form is not None:
            if alt:
                g = _ext_form(r.invariant_form.matrix, words)
                kk = r.invariant_form.kind
                fkind = "skew" if (kk == "skew" and k % 2 == 1) else "symmetric"
                form = InvariantForm(fkind, g)
        elif alt and 2 * k == n and all(a.trace() == 0 for a in r.basis):
            form = InvariantForm("skew" if k % 2 else "symmetric", _volume_pairing(words, n))
        label = ("Lambda" if alt else "S") + f"^{k}"
        return _rep(name or f"{label}({r.name})", fld, len(words), basis, form)
    if kind == "adjoint":
        d = r.dim
        basis = []
        for i in range(d):
            ent = {}
            for j in range(d):
                for kk, v in r.bracket_coords(i, j).items():
                    ent[(kk, j)] = v
            basis.append(Mat(d, d, ent))
        return _rep(name or f"ad({r.name})", fld, d, basis)
    if kind == "traceless_part":
        rows = [{i: a.trace() for i, a in enumerate(r.basis) if a.trace()}]
        ker = nullspace(rows, r.dim)
        basis = [_combine(r.basis, v, r.dim_v) for v in ker]
        return _rep(name or f"{r.name}_0", fld, r.dim_v, basis, r.invariant_form)
    if kind == "diag_dual_symplectic":
        n = r.dim_v
        basis = [block_diag(a, -a.T) for a in r.basis]
        return _rep(name or f"{r.name} on L+L*", fld, 2 * n, basis, InvariantForm("skew", standard_symplectic(n)))
    if kind == "add":
        s = inputs[1]
        if r.dim_v != s.dim_v:
            raise RepresentationError("add needs algebras on the same space")
        basis = lie_closure(list(r.basis) + list(s.basis))
        form = r.invariant_form if r.invariant_form == s.invariant_form else None
        return _rep(name or f"{r.name}+{s.name}", fld, r.dim_v, basis, form)
    if kind == "with_center":
        basis = independent(list(r.basis) + list(extra))
        return _rep(name or f"{r.name}+z", fld, r.dim_v, basis, r.invariant_form if _preserves(extra, r.invariant_form) else None)
    if kind == "trivial_module":
        return _rep(name or "C", fld, 1, [Mat.zeros(1) for _ in r.basis], check=False)
    raise UnsupportedConstruction(f"unknown derived representation kind {kind!r}")


def _preserves(mats, form: InvariantForm | None) -> bool:
    if form is None:
        return False
    g = form.matrix
    return all((a.T @ g + g @ a).is_zero() for a in mats)


def _tensor_form(r: MatrixRep, s: MatrixRep) -> InvariantForm | None:
    if r.invariant_form is None or s.invariant_form is None:
        return None
    skew = (r.invariant_form.kind == "skew") != (s.invariant_form.kind == "skew")
    return InvariantForm("skew" if skew else "symmetric", r.invariant_form.matrix.kron(s.invariant_form.matrix))


def _combine(mats: Sequence[Mat], coeffs: dict, n: int) -> Mat:
    acc = Mat.zeros(n)
    for i, c in coeffs.items():
        acc = acc + mats[i].scale(c)
    return acc


def combine(rep: MatrixRep, coeffs) -> Mat:
    """The algebra element with the given coordinates."""
    if not isinstance(coeffs, dict):
        coeffs = {i: c for i, c in enumerate(coeffs) if c}
    return _combine(rep.basis, coeffs, rep.dim_v)


def conjugate(rep: MatrixRep, p: Mat) -> MatrixRep:
    """Base change V -> P^{-1} V: basis P^{-1} A P, forms P^T G P."""
    pinv = inverse(p)
    form = None
    if rep.invariant_form is not None:
        form = InvariantForm(rep.invariant_form.kind, p.T @ rep.invariant_form.matrix @ p)
    return _rep(f"{rep.name}^P", rep.field, rep.dim_v, [pinv @ a @ p for a in rep.basis], form)


def restrict(rep: MatrixRep, subspace: Sequence, name: str | None = None, keep_dependent: bool = False) -> MatrixRep:
    """Action on an invariant subspace given by spanning vectors (sparse or dense)."""
    e = Echelon(rep.dim_v, track=True)
    vecs = []
    for v in subspace:
        vv = v if isinstance(v, dict) else {i: x for i, x in enumerate(v) if x}
        if e.add(vv):
            vecs.append(vv)
    k = len(vecs)
    images = []
    for a in rep.basis:
        cols = []
        for v in vecs:
            c = e.express(a.apply(v))
            if c is None:
                raise RepresentationError("subspace is not invariant")
            cols.append(c)
        images.append(Mat.from_columns(cols, k))
    basis = images if keep_dependent else independent(images)
    form = None
    if rep.invariant_form is not None:
        g = rep.invariant_form.matrix
        ent = {}
        for a, u in enumerate(vecs):
            gu = g.T.apply(u)
            for b, w in enumerate(vecs):
                s = sum((gu.get(j, ZERO) * x for j, x in w.items()), ZERO)
                if s:
                    ent[(a, b)] = s
        gm = Mat(k, k, ent)
        if k and det(gm):
            form = InvariantForm(rep.invariant_form.kind, gm)
    return _rep(name or f"{rep.name}|W", rep.field, k, basis, form, check=not keep_dependent)


def subspace_matrix(vectors: Sequence[dict], n: int) -> Mat:
    return Mat.from_columns(list(vectors), n)


# ----------------------------------------------------------------------------
# real / complex


def complexify(rep: MatrixRep) -> MatrixRep:
    """Same basis read over Q(i)."""
    if rep.field == "gaussian":
        return rep
    return _rep(f"{rep.name}(x)C", "gaussian", rep.dim_v, rep.basis, rep.invariant_form, check=False)


def realify(rep: MatrixRep) -> MatrixRep:
    """A complex representation viewed as real: V -> R^{2n}, g -> g + i g."""
    if rep.field != "gaussian":
        raise FieldError("realify needs a complex (gaussian) representation")
    basis = []
    for a in rep.basis:
        basis.append(_realify_mat(a))
        basis.append(_realify_mat(a.scale(I)))
    form = None
    if rep.invariant_form is not None:
        g = rep.invariant_form.matrix
        # real part of the complex bilinear form: x^T G a - y^T G b for real G
        gr = _realify_mat(g)
        n = g.rows
        flip = block_diag(Mat.identity(n), Mat.identity(n, -1))
        gre = flip @ gr
        if gre.T == gre or gre.T == -gre:
            form = InvariantForm(rep.invariant_form.kind, gre)
    return _rep(f"{rep.name}_R", "gaussian-as-real", 2 * rep.dim_v, independent(basis), form)


def _eigenspace(j: Mat, value) -> list[dict]:
    n = j.rows
    return nullspace((j - Mat.identity(n, value)).rows_sparse(), n)


def _action_on(rep: MatrixRep, vecs: list[dict]) -> list[Mat]:
    e = Echelon(rep.dim_v, track=True)
    for v in vecs:
        e.add(v)
    out = []
    for a in rep.basis:
        cols = []
        for v in vecs:
            c = e.express(a.apply(v))
            if c is None:
                raise InvalidStructure("eigenspace is not invariant")
            cols.append(c)
        out.append(Mat.from_columns(cols, len(vecs)))
    return out


def split_by_complex_structure(rep: MatrixRep, J: ComplexStructure | Mat) -> tuple[MatrixRep, MatrixRep]:
    """Actions on the +i and -i eigenspaces of J on V (x) C."""
    cs = J if isinstance(J, ComplexStructure) else ComplexStructure(J)
    cs.check(rep)
    parts = []
    for value, tag in ((I, "W"), (-I, "Wbar")):
        vecs = _eigenspace(cs.J, value)
        images = _action_on(rep, vecs)
        parts.append(_rep(f"{rep.name}|{tag}", "gaussian", len(vecs), independent(images)))
    return parts[0], parts[1]


def split_direct_sum(rep: MatrixRep, J: ComplexStructure | Mat) -> MatrixRep:
    """g acting on W + Wbar in the eigenbasis, basis aligned with ``rep``."""
    cs = J if isinstance(J, ComplexStructure) else ComplexStructure(J)
    cs.check(rep)
    w = _action_on(rep, _eigenspace(cs.J, I))
    wb = _action_on(rep, _eigenspace(cs.J, -I))
    return _rep(f"{rep.name}|W+Wbar", "gaussian", rep.dim_v, [block_diag(a, b) for a, b in zip(w, wb)])


# ----------------------------------------------------------------------------
# commutants, intertwiners, irreducibility


def intertwiners(r1: MatrixRep, r2: MatrixRep) -> list[Mat]:
    """Basis of {X : X A1_i = A2_i X for all i} (X maps V1 -> V2)."""
    if r1.dim != r2.dim:
        raise RepresentationError("intertwiners need aligned bases of equal length")
    n1, n2 = r1.dim_v, r2.dim_v
    rows = []
    for a, b in zip(r1.basis, r2.basis):
        acols = a.columns_sparse()
        brows = b.rows_sparse()
        for i in range(n2):
            for j in range(n1):
                row: dict = {}
                for k, v in acols[j].items():  # (X A)_ij = sum_k X_ik A_kj
                    key = i * n1 + k
                    row[key] = row.get(key, ZERO) + v
                for k, v in brows[i].items():  # (B X)_ij = sum_k B_ik X_kj
                    key = k * n1 + j
                    row[key] = row.get(key, ZERO) - v
                row = {x: y for x, y in row.items() if y}
                if row:
                    rows.append(row)
    return [Mat.from_flat(v, n2, n1) for v in nullspace(rows, n1 * n2)]


def equivalent(r1: MatrixRep, r2: MatrixRep, tries: int = 8, seed: int = 0) -> bool:
    """True when an invertible intertwiner exists (found by seeded random combination)."""
    if r1.dim_v != r2.dim_v:
        return False
    hom = intertwiners(r1, r2)
    if not hom:
        return False
    rng = random.Random(seed)
    for _ in range(tries):
        x = Mat.zeros(r2.dim_v, r1.dim_v)
        for h in hom:
            x = x + h.scale(rng.randint(-50, 50))
        if det(x):
            return True
    return False


def commutant(rep: MatrixRep) -> list[Mat]:
    return intertwiners(rep, rep) if rep.dim else [Mat.unit(rep.dim_v, i, j) for i in range(rep.dim_v) for j in range(rep.dim_v)]


def associative_envelope(rep: MatrixRep) -> list[Mat]:
    """Basis of the unital associative algebra generated by the basis matrices."""
    n = rep.dim_v
    e = Echelon(n * n)
    basis = []
    for m in [Mat.identity(n)] + list(rep.basis):
        if e.add(m.flat()):
            basis.append(m)
    frontier = list(basis)
    gens = list(rep.basis)
    while frontier and len(basis) < n * n:
        new = []
        for x in frontier:
            for g in gens:
                y = g @ x
                if not y.is_zero() and e.add(y.flat()):
                    basis.append(y)
                    new.append(y)
        frontier = new
    return basis


def _is_division(comm: list[Mat], n: int) -> bool:
    """Commutant is R, C or H: traceless part squares to negative scalars."""
    if len(comm) not in (1, 2, 4):
        return False
    # traceless part
    tr_rows = [{i: m.trace() for i, m in enumerate(comm) if m.trace()}]
    ker = nullspace(tr_rows, len(comm))
    d0 = [_combine(comm, v, n) for v in ker]
    if len(d0) != len(comm) - 1:
        return False
    gram = [[None] * len(d0) for _ in d0]
    ident = Mat.identity(n)
    for a in range(len(d0)):
        for b in range(a, len(d0)):
            s = d0[a] @ d0[b] + d0[b] @ d0[a]
            c = s.trace() / n
            if s != ident.scale(c):
                return False
            gram[a][b] = gram[b][a] = c
    # negative definite by leading principal minors of -gram
    for k in range(1, len(d0) + 1):
        minor = det(Mat.from_dense([[-gram[i][j] for j in range(k)] for i in range(k)]))
        if not (isinstance(minor, type(ONE)) and minor > 0):
            return False
    return True


class Irreducibility(NamedTuple):
    irreducible: bool
    witness: list[tuple] | None = None

    def __bool__(self):
        return self.irreducible


def _orbit(env: list[Mat], v: dict, n: int) -> list[dict]:
    e = Echelon(n, leading=True)
    for m in env:
        e.add(m.apply(v))
    return e.rref()


def _find_witness(rep: MatrixRep, env: list[Mat], comm: list[Mat], seed: int = 0) -> list[tuple] | None:
    n = rep.dim_v
    dense = lambda vs: [tuple(v.get(i, ZERO) for i in range(n)) for v in vs]
    # common kernel of the basis
    rows = [r for a in rep.basis for r in a.rows_sparse() if r]
    ck = nullspace(rows, n)
    if 0 < len(ck) < n:
        return dense(ck)
    # non-invertible commutant elements with rational eigenvalues
    for x in comm:
        if x == Mat.identity(n).scale(x.trace() / n if n else 0):
            continue
        for lam in _rational_eigenvalues(x):
            k = nullspace((x - Mat.identity(n, lam)).rows_sparse(), n)
            if 0 < len(k) < n:
                return dense(k)
    candidates = [{i: ONE} for i in range(n)]
    rng = random.Random(seed)
    candidates += [{i: mpq(rng.randint(-9, 9)) for i in range(n)} for _ in range(4)]
    for v in candidates:
        v = {i: x for i, x in v.items() if x}
        if not v:
            continue
        orb = _orbit(env, v, n)
        if 0 < len(orb) < n:
            return dense(orb)
    return None


def _rational_eigenvalues(x: Mat) -> list:
    import sympy

    if not x.is_real():
        return []
    m = sympy.Matrix(x.rows, x.cols, lambda i, j: sympy.Rational(str(x[(i, j)])))
    lam = sympy.Symbol("lam")
    poly = sympy.Poly(m.charpoly(lam).as_expr(), lam)
    out = []
    for root, _ in sympy.roots(poly, filter="Q").items():
        out.append(mpq(str(root)))
    return sorted(out)


def is_irreducible(rep: MatrixRep, witness: bool = True) -> Irreducibility:
    """Irreducibility over the rep's field (real for rational tags, complex for gaussian).

    Over C the test is Burnside's theorem (the associative envelope is all of
    End V).  Over R the commutant must be a division algebra D and the
    envelope must have dimension n^2 / dim D.
    """
    n = rep.dim_v
    if n == 0:
        return Irreducibility(False, None)
    if n == 1:
        return Irreducibility(True, None)
    env = associative_envelope(rep)
    if rep.field == "gaussian":
        ok = len(env) == n * n
        comm = [] if ok else commutant(rep)
    else:
        comm = commutant(rep)
        ok = _is_division(comm, n) and len(env) * len(comm) == n * n
    if ok:
        return Irreducibility(True, None)
    return Irreducibility(False, _find_witness(rep, env, comm) if witness else None)


def random_subalgebra(seed: int, n: int = 3, entries: int = 3, field: str = "rational") -> MatrixRep:
    """Lie algebra generated by two seeded random integer matrices, redrawn until irreducible."""
    rng = random.Random(seed)
    for attempt in range(50):
        gens = [Mat.from_dense([[rng.randint(-entries, entries) for _ in range(n)] for _ in range(n)]) for _ in range(2)]
        gens = [g - Mat.identity(n, g.trace() / n) for g in gens] if rng.random() < 0.5 else gens
        basis = lie_closure(gens)
        if not basis:
            continue
        rep = _rep(f"rand({seed},{attempt})", field, n, basis)
        if is_irreducible(rep, witness=False):
            return rep
    raise RuntimeError("no irreducible random subalgebra found")


def invariant_forms(rep: MatrixRep) -> list[Mat]:
    """Basis of invariant bilinear forms {G : A^T G + G A = 0}."""
    n = rep.dim_v
    rows = []
    for a in rep.basis:
        acols = a.columns_sparse()
        for i in range(n):
            for j in range(n):
                row: dict = {}
                for k, v in acols[i].items():  # (A^T G)_ij = sum_k A_ki G_kj
                    key = k * n + j
                    row[key] = row.get(key, ZERO) + v
                for k, v in acols[j].items():  # (G A)_ij = sum_k G_ik A_kj
                    key = i * n + k
                    row[key] = row.get(key, ZERO) + v
                row = {x: y for x, y in row.items() if y}
                if row:
                    rows.append(row)
    return [Mat.from_flat(v, n, n) for v in nullspace(rows, n * n)]


def contraction_kernel_dim(n: int, k: int, traceless: bool = True) -> int:
    """dim of ker(C^n (x) Lambda^k (C^n)* -> Lambda^{k-1} (C^n)*), computed as a kernel."""
    words = list(itertools.combinations(range(n), k))
    lower = {w: i for i, w in enumerate(itertools.combinations(range(n), k - 1))}
    ncols = n * len(words)
    rows: dict[int, dict] = {}
    for a in range(n):
        for wi, w in enumerate(words):
            if a not in w:
                continue
            pos = w.index(a)
            rest = w[:pos] + w[pos + 1:]
            sign = -1 if pos % 2 else 1
            r = rows.setdefault(lower[rest], {})
            r[a * len(words) + wi] = mpq(sign)
    return len(nullspace(list(rows.values()), ncols))


# ----------------------------------------------------------------------------
# serialization


def _mat_json(m: Mat) -> list:
    return [[i, j, format_scalar(v)] for (i, j), v in sorted(m.entries.items())]


def to_json(rep: MatrixRep) -> dict:
    form = None
    if rep.invariant_form is not None:
        form = {"kind": rep.invariant_form.kind, "matrix": _mat_json(rep.invariant_form.matrix)}
    return {"name": rep.name, "field": rep.field, "dimV": rep.dim_v,
            "basis": [_mat_json(a) for a in rep.basis], "form": form}


def from_json(data: dict | str) -> MatrixRep:
    if isinstance(data, str):
        data = json.loads(data)
    n = data["dimV"]
    mk = lambda ents: Mat(n, n, {(i, j): parse_scalar(v) for i, j, v in ents})
    form = None
    if data.get("form"):
        form = InvariantForm(data["form"]["kind"], mk(data["form"]["matrix"]))
    return _rep(data["name"], data["field"], n, [mk(b) for b in data["basis"]], form)
