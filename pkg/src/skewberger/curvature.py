"""Curvature spaces, the second-Bianchi derivative space, skew-Berger tests,
Lagrangian pairs, symmetric pair superalgebras and the Wu splitting."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .exactlin import ONE, ZERO, Echelon, Mat, commutator, det, nullspace
from .liealg import (
    MatrixRep,
    commutant,
    derived_rep,
    is_irreducible,
    restrict,
)
from .prolong import prolongation

KINDS = ("odd", "even")


class PreconditionError(ValueError):
    pass


class InvalidCurvature(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """An identity that must hold by construction failed."""


def _pairs(n: int, kind: str) -> list[tuple[int, int]]:
    if kind == "odd":
        return list(itertools.combinations_with_replacement(range(n), 2))
    return list(itertools.combinations(range(n), 2))


def _triples(n: int, kind: str):
    # the cyclic sum is totally symmetric (odd) or totally alternating (even)
    if kind == "odd":
        return itertools.combinations_with_replacement(range(n), 3)
    return itertools.combinations(range(n), 3)


@dataclass(frozen=True)
class CurvatureSpace:
    """Each basis element maps a pair index to sparse g-coordinates (flat ``pair * dim_g + a``)."""
    kind: str
    dim_v: int
    dim_g: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return _pairs(self.dim_v, self.kind)

    @property
    def pair_index(self) -> dict:
        return {p: k for k, p in enumerate(self.pairs)}

    def value(self, k: int, x: int, y: int) -> dict:
        """R_k(e_x, e_y) in g-coordinates."""
        return _pair_value(self.basis[k], self.kind, self.pair_index, self.dim_g, x, y)


def _pair_value(vec: dict, kind: str, index: dict, dim_g: int, x: int, y: int) -> dict:
    sign = 1
    if x > y:
        x, y = y, x
        sign = 1 if kind == "odd" else -1
    if kind == "even" and x == y:
        return {}
    p = index[(x, y)]
    lo = p * dim_g
    out = {}
    for i, c in vec.items():
        if lo <= i < lo + dim_g:
            out[i - lo] = c if sign > 0 else -c
    return out


def _apply(rep: MatrixRep, coeffs: dict, z: int) -> dict:
    """(sum_a c_a A_a) e_z in V-coordinates."""
    out = {}
    for a, c in coeffs.items():
        for l, v in rep.basis[a].column(z).items():
            out[l] = out.get(l, ZERO) + c * v
    return {k: v for k, v in out.items() if v}


def curvature_space(rep: MatrixRep, kind: str = "odd") -> CurvatureSpace:
    """Solutions of the first Bianchi identity in (sym or alt)^2 V* (x) g."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    n, d = rep.dim_v, rep.dim
    pairs = _pairs(n, kind)
    index = {p: k for k, p in enumerate(pairs)}
    if d == 0 or not pairs:
        return CurvatureSpace(kind, n, d, ())
    cols = [a.columns_sparse() for a in rep.basis]
    s = -1 if kind == "even" else 1
    rows = []
    for x, y, z in _triples(n, kind):
        eq: dict[int, dict] = {}
        # R(x,y)z + R(y,z)x + R(z,x)y with R(z,x) = s R(x,z)
        for (u, w, t, sign) in ((x, y, z, 1), (y, z, x, 1), (x, z, y, s)):
            if kind == "even" and u == w:
                continue
            p = index[(u, w)] * d
            for a in range(d):
                for l, v in cols[a][t].items():
                    r = eq.setdefault(l, {})
                    r[p + a] = r.get(p + a, ZERO) + (v if sign > 0 else -v)
        for r in eq.values():
            r = {k: c for k, c in r.items() if c}
            if r:
                rows.append(r)
    basis = nullspace(rows, len(pairs) * d)
    return CurvatureSpace(kind, n, d, tuple(basis))


def bianchi_holds(rep: MatrixRep, cs: CurvatureSpace, order: Sequence[int] | None = None) -> bool:
    """Re-check the first Bianchi identity on every triple, optionally in a permuted basis order."""
    n = rep.dim_v
    perm = list(order) if order is not None else list(range(n))
    for k in range(cs.dim):
        for x, y, z in itertools.product(perm, repeat=3):
            total: dict = {}
            for (u, w, t) in ((x, y, z), (y, z, x), (z, x, y)):
                for l, v in _apply(rep, cs.value(k, u, w), t).items():
                    total[l] = total.get(l, ZERO) + v
            if any(total.values()):
                return False
    return True


@dataclass(frozen=True)
class DerivativeSpace:
    """Basis of S in V* (x) CurvatureSpace, flat index ``x * dim(cs) + k``."""
    curvature: CurvatureSpace
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def value(self, j: int, x: int, y: int, z: int) -> dict:
        """S_j at e_x evaluated on (e_y, e_z), in g-coordinates."""
        c = self.curvature
        w = c.dim
        out: dict = {}
        for i, coef in self.basis[j].items():
            xx, k = divmod(i, w)
            if xx != x:
                continue
            for a, v in c.value(k, y, z).items():
                out[a] = out.get(a, ZERO) + coef * v
        return {a: v for a, v in out.items() if v}


def derivative_space(rep: MatrixRep, cs: CurvatureSpace) -> DerivativeSpace:
    """Solutions of S_X(Y,Z) + S_Y(Z,X) + S_Z(X,Y) = 0 relative to the kind of ``cs``."""
    n, w = rep.dim_v, cs.dim
    if w == 0:
        return DerivativeSpace(cs, ())
    vals = {}
    for k in range(w):
        for y in range(n):
            for z in range(n):
                vals[(k, y, z)] = cs.value(k, y, z)
    rows = []
    for x, y, z in _triples(n, cs.kind):
        eq: dict[int, dict] = {}
        for (u, a, b) in ((x, y, z), (y, z, x), (z, x, y)):
            for k in range(w):
                for g, v in vals[(k, a, b)].items():
                    r = eq.setdefault(g, {})
                    key = u * w + k
                    r[key] = r.get(key, ZERO) + v
        for r in eq.values():
            r = {k: c for k, c in r.items() if c}
            if r:
                rows.append(r)
    return DerivativeSpace(cs, tuple(nullspace(rows, n * w)))


def image_span(cs: CurvatureSpace) -> Echelon:
    """Echelon of span{R(e_x, e_y)} over the curvature basis, in g-coordinates."""
    e = Echelon(cs.dim_g, leading=True)
    for k in range(cs.dim):
        for x, y in cs.pairs:
            v = cs.value(k, x, y)
            if v:
                e.add(v)
                if e.rank == cs.dim_g:
                    return e
    return e


@dataclass(frozen=True)
class SkewBergerResult:
    is_skew_berger: bool
    span_dim: int
    is_symmetric: bool
    curvature_dim: int
    derivative_dim: int
    dim_g: int
    dim_v: int

    def to_json(self, algebra: str = "") -> dict:
        return {"algebra": algebra, "dimV": self.dim_v, "dim_g": self.dim_g, "curvature_dim": self.curvature_dim,
                "derivative_dim": self.derivative_dim, "span_dim": self.span_dim,
                "is_skew_berger": self.is_skew_berger, "is_symmetric": self.is_symmetric}


def skew_berger_test(rep: MatrixRep, kind: str = "odd") -> SkewBergerResult:
    """Spanning test (the zero algebra counts as spanned by the empty set) and symmetry test."""
    cs = curvature_space(rep, kind)
    span = image_span(cs).rank
    ds = derivative_space(rep, cs)
    return SkewBergerResult(span == rep.dim, span, ds.dim == 0, cs.dim, ds.dim, rep.dim, rep.dim_v)


# ----------------------------------------------------------------------------
# g-action on curvature tensors


def act_on_curvature(rep: MatrixRep, a: int, cs: CurvatureSpace, k: int) -> dict:
    """(A.R)(X,Y) = [A, R(X,Y)] - R(AX,Y) - R(X,AY) as a flat pair-indexed vector."""
    return act_on_tensor(rep, a, cs.kind, lambda x, y: cs.value(k, x, y))


def act_on_tensor(rep: MatrixRep, a: int, kind: str, value) -> dict:
    n, d = rep.dim_v, rep.dim
    amat = rep.basis[a]
    acols = amat.columns_sparse()
    out: dict = {}
    for p, (x, y) in enumerate(_pairs(n, kind)):
        acc: dict = {}
        for b, c in value(x, y).items():
            for g, v in rep.bracket_coords(a, b).items():
                acc[g] = acc.get(g, ZERO) + c * v
        for l, v in acols[x].items():
            for g, c in value(l, y).items():
                acc[g] = acc.get(g, ZERO) - v * c
        for l, v in acols[y].items():
            for g, c in value(x, l).items():
                acc[g] = acc.get(g, ZERO) - v * c
        for g, c in acc.items():
            if c:
                out[p * d + g] = c
    return out


def annihilated_subspace(rep: MatrixRep, cs: CurvatureSpace) -> list[dict]:
    """Coefficient vectors (over the curvature basis) of the elements killed by every A in g."""
    if cs.dim == 0:
        return []
    rows: dict[int, dict] = {}
    for a in range(rep.dim):
        for k in range(cs.dim):
            for key, v in act_on_curvature(rep, a, cs, k).items():
                r = rows.setdefault(a * (len(cs.pairs) * rep.dim) + key, {})
                r[k] = v
    return nullspace(list(rows.values()), cs.dim)


def is_equivariant(rep: MatrixRep, cs: CurvatureSpace) -> bool:
    """The g-action maps the curvature space into itself."""
    e = Echelon(len(cs.pairs) * cs.dim_g)
    for v in cs.basis:
        e.add(v)
    return all(e.contains(act_on_curvature(rep, a, cs, k)) for a in range(rep.dim) for k in range(cs.dim))


# ----------------------------------------------------------------------------
# Lagrangian pairs


@dataclass(frozen=True)
class LagrangianReport:
    dim_first_prolongation: int
    curvature_dim: int
    vanishes_on_lagrangians: bool
    implication_holds: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def lagrangian_pair_analysis(rep: MatrixRep) -> LagrangianReport:
    """Curvature of g on L + L* versus the first skew prolongation of g on L."""
    if not is_irreducible(rep, witness=False):
        raise PreconditionError(f"{rep.name} is not irreducible on L")
    n = rep.dim_v
    pair = derived_rep("diag_dual_symplectic", rep)
    cs = curvature_space(pair, "odd")
    vanish = True
    for k in range(cs.dim):
        for x, y in cs.pairs:
            same = (x < n and y < n) or (x >= n and y >= n)
            if same and cs.value(k, x, y):
                vanish = False
    first = prolongation(rep, "skew", 1).dim
    return LagrangianReport(first, cs.dim, vanish, cs.dim == 0 or first > 0)


# ----------------------------------------------------------------------------
# symmetric pair superalgebras


@dataclass
class SuperPair:
    """k = g + Pi V.  Basis: g-basis (even, indices < dim g), then Pi e_i (odd)."""
    rep: MatrixRep
    curvature: dict  # (i, j) with i <= j -> sparse g-coordinates of R(e_i, e_j)
    jacobi_ok: bool = False
    annihilated: bool = False
    spans: bool = False
    span_dim: int = 0

    @property
    def even_dim(self) -> int:
        return self.rep.dim

    @property
    def odd_dim(self) -> int:
        return self.rep.dim_v

    def parity(self, i: int) -> int:
        return 0 if i < self.rep.dim else 1

    def bracket(self, i: int, j: int) -> dict:
        d = self.rep.dim
        if i < d and j < d:
            return dict(self.rep.bracket_coords(i, j))
        if i < d:
            return {d + l: v for l, v in self.rep.basis[i].column(j - d).items()}
        if j < d:
            # [Pi X, A] = -[A, Pi X]
            return {d + l: -v for l, v in self.rep.basis[j].column(i - d).items()}
        x, y = i - d, j - d
        return dict(self.curvature.get((min(x, y), max(x, y)), {}))

    def bracket_vec(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket(i, j).items():
                    out[k] = out.get(k, ZERO) + a * b * c
        return {k: c for k, c in out.items() if c}

    def check_jacobi(self) -> bool:
        """[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]] on all basis triples."""
        total = self.rep.dim + self.rep.dim_v
        unit = [{i: ONE} for i in range(total)]
        br = {}
        for i in range(total):
            for j in range(total):
                br[(i, j)] = self.bracket(i, j)
        for x in range(total):
            for y in range(total):
                xy = br[(x, y)]
                sign = -1 if self.parity(x) and self.parity(y) else 1
                for z in range(total):
                    lhs = self.bracket_vec(unit[x], br[(y, z)])
                    rhs = self.bracket_vec(xy, unit[z])
                    t = self.bracket_vec(unit[y], br[(x, z)])
                    for k, c in t.items():
                        rhs[k] = rhs.get(k, ZERO) + sign * c
                    for k in set(lhs) | set(rhs):
                        if lhs.get(k, ZERO) != rhs.get(k, ZERO):
                            return False
        return True

    def to_json(self) -> dict:
        return {"algebra": self.rep.name, "even_dim": self.even_dim, "odd_dim": self.odd_dim,
                "jacobi": self.jacobi_ok, "annihilated": self.annihilated, "spans": self.spans,
                "span_dim": self.span_dim}


def curvature_element(cs: CurvatureSpace, coeffs: dict | int) -> dict:
    """The pair-indexed curvature tensor sum_k c_k R_k (or basis element ``coeffs``)."""
    if isinstance(coeffs, int):
        coeffs = {coeffs: ONE}
    out: dict = {}
    for k, c in coeffs.items():
        for i, v in cs.basis[k].items():
            out[i] = out.get(i, ZERO) + c * v
    return {i: v for i, v in out.items() if v}


def build_symmetric_pair(rep: MatrixRep, curvature: dict | None = None, *, cs: CurvatureSpace | None = None,
                         r_index: int | None = None) -> SuperPair:
    """Build k = g + Pi V from an odd curvature tensor annihilated by g.

    ``curvature`` is a flat pair-indexed vector over ``cs``'s pairs; with
    ``r_index`` the generator of the annihilated subspace at that index is used.
    """
    if cs is None:
        cs = curvature_space(rep, "odd")
    if cs.kind != "odd":
        raise ValueError("symmetric pairs use the odd curvature space")
    if curvature is None:
        ann = annihilated_subspace(rep, cs)
        if not ann:
            raise InvalidCurvature(f"{rep.name}: no nonzero curvature tensor is annihilated by g")
        curvature = curvature_element(cs, ann[r_index or 0])
    d = rep.dim
    pairs = cs.pairs
    table = {}
    for p, (x, y) in enumerate(pairs):
        v = {i - p * d: c for i, c in curvature.items() if p * d <= i < (p + 1) * d}
        if v:
            table[(x, y)] = v
    # membership in the curvature space
    e = Echelon(len(pairs) * d)
    for v in cs.basis:
        e.add(v)
    if curvature and not e.contains(curvature):
        raise InvalidCurvature("tensor does not satisfy the first Bianchi identity")

    def value(x, y):
        return table.get((min(x, y), max(x, y)), {})

    for a in range(d):
        if act_on_tensor(rep, a, "odd", value):
            raise InvalidCurvature("curvature tensor is not annihilated by g")
    pair = SuperPair(rep, table, annihilated=True)
    span = Echelon(d)
    for v in table.values():
        span.add(v)
    pair.span_dim = span.rank
    pair.spans = span.rank == d
    pair.jacobi_ok = pair.check_jacobi()
    if not pair.jacobi_ok:
        raise ConsistencyError("graded Jacobi identity failed for an annihilated curvature tensor")
    return pair


# ----------------------------------------------------------------------------
# Wu decomposition


@dataclass(frozen=True)
class WuBlock:
    subspace: tuple  # dense spanning vectors
    rep: MatrixRep
    trivial: bool


def _form_restricted(g: Mat, vecs: list[dict]) -> Mat:
    k = len(vecs)
    ent = {}
    for a, u in enumerate(vecs):
        gu = g.T.apply(u)
        for b, w in enumerate(vecs):
            s = sum((gu.get(j, ZERO) * x for j, x in w.items()), ZERO)
            if s:
                ent[(a, b)] = s
    return Mat(k, k, ent)


def _center(alg: list[Mat]) -> list[Mat]:
    if not alg:
        return []
    n = alg[0].rows
    m = len(alg)
    rows = []
    for y in alg:
        comms = [commutator(x, y).flat() for x in alg]
        keys = set().union(*comms)
        for key in keys:
            r = {i: c[key] for i, c in enumerate(comms) if c.get(key)}
            if r:
                rows.append(r)
    ker = nullspace(rows, m)
    return [combine_mats(alg, v, n) for v in ker]


def combine_mats(mats, coeffs: dict, n: int) -> Mat:
    acc = Mat.zeros(n)
    for i, c in coeffs.items():
        acc = acc + mats[i].scale(c)
    return acc


def _split_by_central(z: Mat) -> list[list[dict]]:
    """Kernels of f(z) for the distinct irreducible factors f of the minimal polynomial."""
    import sympy

    n = z.rows
    lam = sympy.Symbol("lam")
    m = sympy.Matrix(n, n, lambda i, j: sympy.Rational(str(z[(i, j)])))
    factors = sympy.factor_list(m.charpoly(lam).as_expr(), lam)[1]
    out = []
    for f, _mult in factors:
        poly = sympy.Poly(f, lam)
        coeffs = poly.all_coeffs()
        acc = Mat.zeros(n)
        power = Mat.identity(n)
        for c in reversed(coeffs):
            acc = acc + power.scale(mpq(str(sympy.Rational(c))))
            power = power @ z
        # f(z) may be nilpotent on a generalized eigenspace; a semisimple z makes the kernel exact
        k = nullspace(acc.rows_sparse(), n)
        if k:
            out.append(k)
    return out


def wu_decompose(rep: MatrixRep, seed: int = 0) -> list[WuBlock]:
    """Split V into V0 (joint kernel) and pairwise orthogonal nondegenerate invariant blocks."""
    form = rep.invariant_form
    if form is None or form.kind != "skew":
        raise PreconditionError("wu_decompose needs a skew invariant form")
    g = form.matrix
    n = rep.dim_v
    if not det(g):
        raise PreconditionError("invariant form is degenerate")
    rows = [r for a in rep.basis for r in a.rows_sparse() if r]
    v0 = nullspace(rows, n) if rows else [{i: ONE} for i in range(n)]
    blocks: list[list[dict]] = []
    if len(v0) < n:
        # image g.V is the orthogonal complement of V0
        e = Echelon(n, leading=True)
        for a in rep.basis:
            for c in a.columns_sparse():
                if c:
                    e.add(c)
        img = e.rref()
        sub = restrict(rep, img, keep_dependent=True)
        comm = commutant(sub)
        cen = _center(comm)
        rng = random.Random(seed)
        z = combine_mats(cen, {i: mpq(rng.randint(1, 97)) for i in range(len(cen))}, sub.dim_v)
        parts = _split_by_central(z) if len(cen) > 1 else [[{i: ONE} for i in range(sub.dim_v)]]
        for part in parts:
            vecs = []
            for v in part:
                w: dict = {}
                for i, c in v.items():
                    for j, x in img[i].items():
                        w[j] = w.get(j, ZERO) + c * x
                vecs.append({j: x for j, x in w.items() if x})
            blocks.append(vecs)
        blocks = _merge_paired(blocks, g)
    out = []
    if v0:
        out.append((v0, True))
    out += [(b, False) for b in blocks]
    out.sort(key=lambda t: min(min(v) for v in t[0]))
    result = []
    for vecs, triv in out:
        r = restrict(rep, vecs, keep_dependent=True)
        r = MatrixRep(r.name, r.field, r.dim_v, tuple(_unique(r.basis)), r.invariant_form)
        if r.invariant_form is None:
            raise ConsistencyError("Wu block carries a degenerate form")
        dense = tuple(tuple(v.get(i, ZERO) for i in range(n)) for v in vecs)
        result.append(WuBlock(dense, r, triv))
    return result


def _unique(mats):
    from .liealg import independent

    return independent(m for m in mats if not m.is_zero())


def _merge_paired(blocks: list[list[dict]], g: Mat) -> list[list[dict]]:
    """Union blocks that pair nontrivially under the form (dual isotypic pieces)."""
    k = len(blocks)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if _pairs_nontrivially(blocks[i], blocks[j], g):
                parent[find(i)] = find(j)
    groups: dict[int, list[dict]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).extend(blocks[i])
    return list(groups.values())


def _pairs_nontrivially(a: list[dict], b: list[dict], g: Mat) -> bool:
    for u in a:
        gu = g.T.apply(u)
        for w in b:
            if sum((gu.get(j, ZERO) * x for j, x in w.items()), ZERO):
                return True
    return False


def block_holonomy_matches(rep: MatrixRep, blocks: list[WuBlock], expected: Sequence[MatrixRep]) -> bool:
    """Nontrivial Wu blocks have the given dimensions pattern (algebra dim, space dim), order-free.

    Expected factors acting by zero belong to the flat block and are skipped.
    """
    got = sorted((b.rep.dim, b.rep.dim_v) for b in blocks if not b.trivial)
    want = sorted((r.dim, r.dim_v) for r in expected if r.dim)
    return got == want
