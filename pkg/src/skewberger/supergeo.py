"""Odd Riemannian supermetrics on Lambda(2m): Levi-Civita connection, curvature,
covariant derivatives and the holonomy span at the base point.

Sign conventions (odd coordinate fields d_1..d_2m, even nabla):

* nabla_a d_b = sum_c G^c_ab d_c.  G is odd, since nabla_a d_b is even while d_c is odd.
* Torsion T(d_a, d_b) = nabla_a d_b + nabla_b d_a (coordinate fields anticommute),
  so torsion-free means G^c_ab = -G^c_ba.
* Metricity: d_a g_bc = sum_d G^d_ab g_dc + sum_d G^d_ac g_bd.
* R(d_a, d_b) = nabla_a nabla_b + nabla_b nabla_a, symmetric in (a, b).
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from gmpy2 import mpq, popcount

from .exactlin import ZERO, Echelon, Mat, commutator, det, format_scalar, solve
from .grassmann import GrassmannElement, _mul_sign, addmul_into, from_accumulator, monomials
from .liealg import InvariantForm, MatrixRep, is_irreducible


class MetricError(ValueError):
    pass


class ConnectionError_(RuntimeError):
    """The defining system of the connection is inconsistent or not uniquely solvable."""


@dataclass(frozen=True)
class SuperMetric:
    m: int
    g: tuple  # 2m x 2m tuple of tuples of GrassmannElement

    @property
    def m2(self) -> int:
        return 2 * self.m

    def body(self) -> Mat:
        n = self.m2
        return Mat(n, n, {(a, b): self.g[a][b].body() for a in range(n) for b in range(n) if self.g[a][b].body()})

    def validate(self) -> "SuperMetric":
        n = self.m2
        if len(self.g) != n or any(len(r) != n for r in self.g):
            raise MetricError("metric must be a 2m x 2m array")
        for a in range(n):
            for b in range(n):
                e = self.g[a][b]
                if e.m2 != n:
                    raise MetricError("entries must live in Lambda(2m)")
                if not e.is_even():
                    raise MetricError(f"entry ({a + 1},{b + 1}) is not even")
                if e + self.g[b][a] != GrassmannElement(n):
                    raise MetricError(f"entry ({a + 1},{b + 1}) breaks antisymmetry")
        if not det(self.body()):
            raise MetricError("body of the metric is degenerate")
        return self

    @classmethod
    def from_upper(cls, m: int, upper: dict) -> "SuperMetric":
        """``upper[(a, b)]`` (1-based, a < b) gives g_ab; the rest follows by antisymmetry."""
        n = 2 * m
        rows = [[GrassmannElement(n) for _ in range(n)] for _ in range(n)]
        for (a, b), e in upper.items():
            if not a < b:
                raise MetricError("only entries with a < b may be given")
            rows[a - 1][b - 1] = e
            rows[b - 1][a - 1] = -e
        return cls(m, tuple(tuple(r) for r in rows)).validate()

    def to_json(self) -> dict:
        n = self.m2
        ents = []
        for a in range(n):
            for b in range(a + 1, n):
                if not self.g[a][b].is_zero():
                    ents.append({"a": a + 1, "b": b + 1, "terms": self.g[a][b].to_json()})
        return {"m": self.m, "g": ents}


def metric_from_json(data) -> SuperMetric:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        m = int(data["m"])
        n = 2 * m
        upper = {}
        for ent in data["g"]:
            terms = {tuple(t["subset"]): mpq(str(t["coeff"])) for t in ent["terms"]}
            upper[(int(ent["a"]), int(ent["b"]))] = GrassmannElement.from_terms(n, terms)
    except (KeyError, TypeError) as exc:
        raise MetricError(f"malformed metric document: missing or invalid {exc}") from exc
    return SuperMetric.from_upper(m, upper)


def standard_body(m: int) -> dict:
    """omega = [[0, Id], [-Id, 0]]: g(d_i, d_{m+i}) = 1."""
    return {(i, m + i): 1 for i in range(1, m + 1)}


def flat_metric(m: int) -> SuperMetric:
    n = 2 * m
    return SuperMetric.from_upper(m, {k: GrassmannElement.constant(n, v) for k, v in standard_body(m).items()})


def random_metric(seed: int, m: int, degree: int | None = None, density: float = 0.6, size: int = 3) -> SuperMetric:
    """Seeded metric: standard body plus random even terms of degree 2..``degree``."""
    n = 2 * m
    degree = n if degree is None else min(degree, n)
    rng = random.Random(seed)
    upper = {}
    body = standard_body(m)
    evens = [k for k in monomials(n, parity=0, max_degree=degree) if k]
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            coeffs = {}
            if (a, b) in body:
                coeffs[0] = mpq(body[(a, b)])
            for k in evens:
                if rng.random() < density:
                    c = mpq(rng.randint(-size, size), rng.randint(1, size))
                    if c:
                        coeffs[k] = c
            upper[(a, b)] = GrassmannElement(n, coeffs)
    return SuperMetric.from_upper(m, upper)


def product_metric(first: SuperMetric, second: SuperMetric) -> SuperMetric:
    """Metric on Lambda(2m1 + 2m2) with block form; coordinates of ``second`` shifted."""
    n1, n2 = first.m2, second.m2
    n = n1 + n2

    def lift(e: GrassmannElement, shift: int) -> GrassmannElement:
        return GrassmannElement(n, {k << shift: v for k, v in e.coeffs.items()})

    rows = [[GrassmannElement(n) for _ in range(n)] for _ in range(n)]
    for a in range(n1):
        for b in range(n1):
            rows[a][b] = lift(first.g[a][b], 0)
    for a in range(n2):
        for b in range(n2):
            rows[n1 + a][n1 + b] = lift(second.g[a][b], n1)
    return SuperMetric((n1 + n2) // 2, tuple(tuple(r) for r in rows)).validate()


# ----------------------------------------------------------------------------
# Levi-Civita


@dataclass(frozen=True)
class SuperConnection:
    """``gamma[c][a][b]`` is G^c_ab (odd GrassmannElement)."""
    metric: SuperMetric
    gamma: tuple

    def torsion_free(self) -> bool:
        n = self.metric.m2
        zero = GrassmannElement(n)
        return all(self.gamma[c][a][b] + self.gamma[c][b][a] == zero
                   for c in range(n) for a in range(n) for b in range(n))

    def metric_compatible(self) -> bool:
        return all(e.is_zero() for e in metricity_defect(self))

    def christoffel_parity_ok(self) -> bool:
        return all(e.is_odd() for plane in self.gamma for row in plane for e in row)


def metricity_defect(conn: SuperConnection) -> list[GrassmannElement]:
    """d_a g_bc - G^d_ab g_dc - G^d_ac g_bd for all (a, b, c)."""
    g = conn.metric.g
    n = conn.metric.m2
    out = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                e = g[b][c].derive(a + 1)
                for d in range(n):
                    e = e - conn.gamma[d][a][b] * g[d][c] - conn.gamma[d][a][c] * g[b][d]
                out.append(e)
    return out


def levi_civita(metric: SuperMetric) -> SuperConnection:
    """Solve metricity + torsion-freeness coefficientwise and require a unique solution."""
    metric.validate()
    n = metric.m2
    g = metric.g
    odd = monomials(n, parity=1)
    oidx = {k: i for i, k in enumerate(odd)}
    pairs = list(itertools.combinations(range(n), 2))  # unknown G^c_ab with a < b
    pidx = {p: i for i, p in enumerate(pairs)}
    no = len(odd)

    def var(c, a, b, mono):
        return ((c * len(pairs)) + pidx[(a, b)]) * no + oidx[mono]

    def gamma_terms(c, a, b):
        """List of (sign, pair) for G^c_ab in terms of unknowns with a < b."""
        if a == b:
            return None
        return (1, (a, b)) if a < b else (-1, (b, a))

    rows = []
    rhs = {}
    for a in range(n):
        for b in range(n):
            for cc in range(b + 1, n):
                eqs: dict[int, dict] = {}
                # sum_d G^d_ab g_dc + G^d_ac g_bd: unknown monomial u times metric monomial w
                for d in range(n):
                    for (lo, hi, gel) in ((a, b, g[d][cc]), (a, cc, g[b][d])):
                        t = gamma_terms(d, lo, hi)
                        if t is None:
                            continue
                        sign, (p, q) = t
                        for u in odd:
                            for w, coef in gel.coeffs.items():
                                if u & w:
                                    continue
                                s = _mul_sign(u, w) * sign
                                key = u | w
                                r = eqs.setdefault(key, {})
                                vi = var(d, p, q, u)
                                r[vi] = r.get(vi, ZERO) + s * coef
                lhs = g[b][cc].derive(a + 1)
                for key in set(eqs) | set(lhs.coeffs):
                    r = {k: v for k, v in eqs.get(key, {}).items() if v}
                    val = lhs.coeffs.get(key, mpq(0))
                    if r or val:
                        if not r:
                            raise ConnectionError_("metricity system is inconsistent")
                        rhs[len(rows)] = val
                        rows.append(r)
    ncols = n * len(pairs) * no
    sol = solve(rows, rhs, ncols)
    if sol is None:
        raise ConnectionError_("no torsion-free metric connection exists")
    particular, kernel = sol
    if kernel:
        raise ConnectionError_(f"connection not unique: kernel of dimension {len(kernel)}")
    gamma = [[[GrassmannElement(n) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for c in range(n):
        for (a, b) in pairs:
            coeffs = {u: particular.get(var(c, a, b, u), ZERO) for u in odd}
            e = GrassmannElement(n, {k: v for k, v in coeffs.items() if v})
            gamma[c][a][b] = e
            gamma[c][b][a] = -e
    conn = SuperConnection(metric, tuple(tuple(tuple(r) for r in plane) for plane in gamma))
    return conn


# ----------------------------------------------------------------------------
# tensors: dict from argument tuples to lists of components (one per output index)


def curvature(conn: SuperConnection, degree: int | None = None) -> dict:
    """R[(a, b, c)][e] = component of R(d_a, d_b) d_c along d_e."""
    n = conn.metric.m2
    G = conn.gamma
    top = n if degree is None else degree
    R = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                comps = []
                for e in range(n):
                    # nabla_a nabla_b d_c = sum_d (d_a G^d_bc) d_d - sum_{d} G^d_bc G^e_ad d_e
                    acc = G[e][b][c].derive(a + 1) + G[e][a][c].derive(b + 1)
                    for d in range(n):
                        acc = acc - G[d][b][c] * G[e][a][d] - G[d][a][c] * G[e][b][d]
                    comps.append(acc.truncate(top))
                R[(a, b, c)] = comps
    return R


def covariant_derivative(conn: SuperConnection, T: dict, degree: int | None = None) -> dict:
    """(nabla T)(d_z, X_1..X_k) for an even vector-valued tensor with k odd arguments.

    (nabla_z T)(X) = nabla_z(T(X)) - sum_i (-1)^(i-1) T(.., nabla_z X_i, ..), and pulling an
    odd function out of slot i costs (-1)^(i-1), so the two signs cancel.
    """
    n = conn.metric.m2
    G = conn.gamma
    k = len(next(iter(T)))
    comp_sign = -1 if (k + 1) % 2 else 1  # parity of the components is k + 1
    top = n if degree is None else degree
    out = {}
    for z in range(n):
        for args, comps in T.items():
            new = []
            for e in range(n):
                acc = {k: v for k, v in comps[e].derive(z + 1).coeffs.items() if popcount(k) <= top}
                for d in range(n):
                    if not comps[d].is_zero():
                        addmul_into(acc, comps[d], G[e][z][d], comp_sign, top)
                for i in range(k):
                    for d in range(n):
                        g = G[d][z][args[i]]
                        if g.is_zero():
                            continue
                        other = T[args[:i] + (d,) + args[i + 1:]][e]
                        if not other.is_zero():
                            addmul_into(acc, g, other, -1, top)
                new.append(from_accumulator(n, acc))
            out[(z,) + args] = new
    return out


def bianchi_defect(R: dict, n: int) -> list:
    bad = []
    for a, b, c in itertools.product(range(n), repeat=3):
        for e in range(n):
            s = R[(a, b, c)][e] + R[(b, c, a)][e] + R[(c, a, b)][e]
            if not s.is_zero():
                bad.append((a, b, c, e))
    return bad


# ----------------------------------------------------------------------------
# holonomy


@dataclass
class HolonomyReport:
    m: int
    generators: list = field(default_factory=list)  # list of (label, Mat)
    span: list = field(default_factory=list)  # rref basis matrices
    dim: int = 0
    contained_in_sp: bool = True
    bracket_closed: bool = True
    irreducible: bool | None = None
    torsion_free: bool = True
    metric_compatible: bool = True
    bianchi: bool = True
    debug_dim: int | None = None

    def rep(self, form: Mat) -> MatrixRep:
        n = 2 * self.m
        return MatrixRep("hol", "rational", n, tuple(self.span), InvariantForm("skew", form))

    def to_json(self) -> dict:
        def mat(m: Mat):
            return [[i, j, format_scalar(v)] for (i, j), v in sorted(m.entries.items())]

        return {"m": self.m, "dim": self.dim, "contained_in_sp": self.contained_in_sp,
                "bracket_closed": self.bracket_closed, "irreducible": self.irreducible,
                "torsion_free": self.torsion_free, "metric_compatible": self.metric_compatible,
                "bianchi": self.bianchi, "debug_dim": self.debug_dim,
                "generators": [{"indices": list(lbl), "matrix": mat(g)} for lbl, g in self.generators],
                "span": [mat(s) for s in self.span]}


def _endomorphism(T: dict, prefix: tuple, n: int) -> Mat:
    # column c: the image of d_c
    ent = {}
    for c in range(n):
        comps = T[prefix + (c,)]
        for e in range(n):
            v = comps[e].body()
            if v:
                ent[(e, c)] = v
    return Mat(n, n, ent)


def _derivative_tuples(n: int, r: int, strict: bool):
    if strict:
        # alpha_1 < ... < alpha_r, listed outermost first: (alpha_r, ..., alpha_1)
        return [tuple(reversed(c)) for c in itertools.combinations(range(n), r)]
    return list(itertools.product(range(n), repeat=r))


def holonomy(metric: SuperMetric, debug_span: bool = False) -> HolonomyReport:
    n = metric.m2
    conn = levi_civita(metric)
    rep = HolonomyReport(metric.m)
    rep.torsion_free = conn.torsion_free()
    rep.metric_compatible = conn.metric_compatible()
    T = curvature(conn)
    rep.bianchi = not bianchi_defect(T, n)
    omega = metric.body()
    strict_span = Echelon(n * n, leading=True)
    loose_span = Echelon(n * n, leading=True) if debug_span else None
    for r in range(0, n + 1):
        if r:
            # level r only needs terms of degree <= n - r for later bodies
            T = covariant_derivative(conn, T, degree=n - r)
        for der in _derivative_tuples(n, r, strict=False):
            strict = list(der) == sorted(der, reverse=True) and len(set(der)) == len(der)
            if not strict and not debug_span:
                continue
            for b in range(n):
                for c in range(n):
                    gmat = _endomorphism(T, der + (b, c), n)
                    if gmat.is_zero():
                        continue
                    if strict:
                        rep.generators.append((der + (b, c), gmat))
                        strict_span.add(gmat.flat())
                    if loose_span is not None:
                        loose_span.add(gmat.flat())
    rep.span = [Mat.from_flat(v, n, n) for v in strict_span.rref()]
    rep.dim = len(rep.span)
    rep.contained_in_sp = all((g.T @ omega + omega @ g).is_zero() for _, g in rep.generators)
    closed = True
    for x, y in itertools.combinations(rep.span, 2):
        if not strict_span.contains(commutator(x, y).flat()):
            closed = False
            break
    rep.bracket_closed = closed
    if rep.dim:
        rep.irreducible = bool(is_irreducible(MatrixRep("hol", "rational", n, tuple(rep.span)), witness=False))
    else:
        rep.irreducible = False
    if loose_span is not None:
        rep.debug_dim = loose_span.rank
    return rep
