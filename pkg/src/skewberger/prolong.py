"""First and second prolongations (symmetric and skew-symmetric) as exact kernels."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .exactlin import ZERO, Echelon, nullspace
from .liealg import MatrixRep, contraction_kernel_dim, derived_rep

KINDS = ("skew", "symmetric")


@dataclass(frozen=True)
class ProlongationSpace:
    """Basis vectors live in V* (x) X with flat index ``x * width + b``.

    For order 1, X is g (b runs over the algebra basis).  For order 2, X is the
    order-1 space and b runs over its basis (``parent``).
    """
    order: int
    kind: str
    basis: tuple
    dim_g: int
    dim_v: int
    parent: "ProlongationSpace | None" = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def width(self) -> int:
        return self.dim_g if self.order == 1 else self.parent.dim

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.dim_g, self.dim_v, self.dim)

    def value(self, k: int, x: int) -> dict:
        """phi_k(e_x) as g-coordinates (order 1) or as order-1 coordinates (order 2)."""
        w = self.width
        return {i - x * w: c for i, c in self.basis[k].items() if x * w <= i < (x + 1) * w}

    def to_json(self) -> dict:
        return {"order": self.order, "kind": self.kind, "dim_g": self.dim_g, "dim_v": self.dim_v, "dim": self.dim}


def _maps_of_rep(rep: MatrixRep) -> list[list[dict]]:
    # M[b][y] = A_b e_y in V-coordinates
    return [a.columns_sparse() for a in rep.basis]


def _maps_of_space(space: ProlongationSpace) -> list[list[dict]]:
    # M[b][y] = phi_b(e_y) in g-coordinates
    return [[space.value(b, y) for y in range(space.dim_v)] for b in range(space.dim)]


def _solve(maps: list[list[dict]], n: int, sign: int) -> list[dict]:
    """Coefficients d[x, b] with sum_b d[x,b] M_b(e_y) + sign * sum_b d[y,b] M_b(e_x) = 0."""
    width = len(maps)
    if width == 0 or n == 0:
        return []
    rows = []
    for x in range(n):
        start = x if sign > 0 else x + 1
        for y in range(start, n):
            eq: dict[int, dict] = {}
            for b, mb in enumerate(maps):
                for l, v in mb[y].items():
                    r = eq.setdefault(l, {})
                    k = x * width + b
                    r[k] = r.get(k, ZERO) + v
                for l, v in mb[x].items():
                    r = eq.setdefault(l, {})
                    k = y * width + b
                    r[k] = r.get(k, ZERO) + (v if sign > 0 else -v)
            for r in eq.values():
                r = {k: c for k, c in r.items() if c}
                if r:
                    rows.append(r)
    return nullspace(rows, n * width)


def prolongation(rep: MatrixRep, kind: str = "skew", order: int = 1) -> ProlongationSpace:
    """g^[k] (kind skew) or g^(k) (kind symmetric) for k = 1, 2."""
    if kind in ("sym",):
        kind = "symmetric"
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    sign = 1 if kind == "skew" else -1
    first = ProlongationSpace(1, kind, tuple(_solve(_maps_of_rep(rep), rep.dim_v, sign)), rep.dim, rep.dim_v)
    if order == 1:
        return first
    basis = tuple(_solve(_maps_of_space(first), rep.dim_v, sign)) if first.dim else ()
    return ProlongationSpace(2, kind, basis, rep.dim, rep.dim_v, first)


def check_prolongation(rep: MatrixRep, space: ProlongationSpace) -> bool:
    """Re-evaluate the defining symmetry on every basis element and every pair (x, y)."""
    sign = 1 if space.kind == "skew" else -1
    n = rep.dim_v
    for k in range(space.dim):
        vals = [space.value(k, x) for x in range(n)]
        if space.order == 1:
            def act(coeffs, y):
                out = {}
                for b, c in coeffs.items():
                    for l, v in rep.basis[b].column(y).items():
                        out[l] = out.get(l, ZERO) + c * v
                return out
        else:
            parent = space.parent

            def act(coeffs, y):
                out = {}
                for b, c in coeffs.items():
                    for l, v in parent.value(b, y).items():
                        out[l] = out.get(l, ZERO) + c * v
                return out
        for x in range(n):
            for y in range(x, n):
                u, w = act(vals[x], y), act(vals[y], x)
                for key in set(u) | set(w):
                    if u.get(key, ZERO) + sign * w.get(key, ZERO):
                        return False
    return True


def contained(small: ProlongationSpace, big: ProlongationSpace, small_rep: MatrixRep, big_rep: MatrixRep) -> bool:
    """Whether small^[1] lies inside big^[1] after mapping g-coordinates of the subalgebra into the big algebra."""
    if small.order != 1 or big.order != 1:
        raise ValueError("containment is implemented for order 1")
    embed = [big_rep.coords(a) for a in small_rep.basis]
    if any(c is None for c in embed):
        raise ValueError("not a subalgebra on the same space")
    e = Echelon(big.dim_v * big.dim_g)
    for v in big.basis:
        e.add(v)
    for v in small.basis:
        img: dict = {}
        for i, c in v.items():
            x, b = divmod(i, small.dim_g)
            for k, w in enumerate(embed[b]):
                if w:
                    key = x * big.dim_g + k
                    img[key] = img.get(key, ZERO) + c * w
        if not e.contains({k: c for k, c in img.items() if c}):
            return False
    return True


# ----------------------------------------------------------------------------
# expected module dimensions, evaluated by building the modules


def module_dim(expr, rep: MatrixRep, n: int) -> int:
    """Dimension of a module expression.

    ``"V"`` is the representation space of ``rep``; ``"Vstd"`` is the
    n-dimensional standard space.  Forms: ``["dual", e]``, ``["ext", k, e]``, ``["sym", k, e]``,
    ``["tensor", e1, e2]``, ``["traceless", ["tensor", "Vstd", ["ext", k,
    ["dual", "Vstd"]]]]`` (kernel of the contraction), ``["trivial"]`` and
    ``["zero"]``.
    """
    built = _build(expr, rep, n)
    return built if isinstance(built, int) else built.dim_v


def _carrier(d: int, field: str) -> MatrixRep:
    return MatrixRep(f"0 on {d}-space", field, d, ())


def _build(expr, rep: MatrixRep, n: int):
    # modules are built over the zero algebra on the same spaces: functors such
    # as the top exterior power are not faithful, and only the space is needed
    if expr == "V":
        return _carrier(rep.dim_v, rep.field)
    if expr == "Vstd":
        return _carrier(n, rep.field)
    head = expr[0]
    if head == "zero":
        return 0
    if head == "trivial":
        return 1
    if head == "dual":
        inner = _build(expr[1], rep, n)
        return inner if isinstance(inner, int) else derived_rep("dual", inner)
    if head in ("ext", "sym"):
        k = expr[1]
        inner = _build(expr[2], rep, n)
        if isinstance(inner, int):
            raise ValueError("powers of scalar modules are not supported")
        if head == "ext" and k > inner.dim_v:
            return 0
        return derived_rep("ext_power" if head == "ext" else "sym_power", inner, k=k)
    if head == "tensor":
        a, b = _build(expr[1], rep, n), _build(expr[2], rep, n)
        if isinstance(a, int) or isinstance(b, int):
            da = a if isinstance(a, int) else a.dim_v
            db = b if isinstance(b, int) else b.dim_v
            return da * db
        return derived_rep("tensor_product", a, b)
    if head == "traceless":
        inner = expr[1]
        if not (inner[0] == "tensor" and inner[1] == "Vstd" and inner[2][0] == "ext"
                and inner[2][2] == ["dual", "Vstd"]):
            raise ValueError(f"traceless part only defined for Vstd (x) ext^k(Vstd*), got {inner!r}")
        k = inner[2][1]
        if k > n:
            return 0
        return contraction_kernel_dim(n, k)
    raise ValueError(f"unknown module expression {expr!r}")


# ----------------------------------------------------------------------------
# table verification


@dataclass
class TableReport:
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.get("pass", True) for e in self.entries if e.get("status") != "skipped")

    def to_json(self) -> list:
        return self.entries

    def dumps(self) -> str:
        return json.dumps(self.entries, indent=2, sort_keys=True)

    def text(self) -> str:
        cols = ("table", "row", "size", "quantity", "expected", "got", "status")
        rows = []
        for e in self.entries:
            size = ",".join(f"{k}={v}" for k, v in sorted(e.get("params", {}).items()))
            rows.append([str(e.get("table", "")), e["row"], size, e.get("quantity", ""),
                         str(e.get("expected", "")), str(e.get("got", "")),
                         e.get("status") or ("pass" if e.get("pass") else "FAIL")])
        widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
        lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)) for r in rows]
        return "\n".join(lines)


def check_prolongation_row(row: dict, params: dict) -> list[dict]:
    """Compute g^[1], g^[2] for one instantiated catalog row and compare to its module columns."""
    from .descriptors import instantiate

    rep = instantiate(row["algebra"], row["module"], params)
    n = params.get("n")
    out = []
    first = prolongation(rep, "skew", 1)
    second = prolongation(rep, "skew", 2)
    for q, space, key in (("g[1]", first, "g1"), ("g[2]", second, "g2")):
        expected = module_dim(row["extra"][key], rep, n)
        out.append({"table": row["table"], "row": row["id"], "params": dict(params), "quantity": q,
                    "expected": expected, "got": space.dim, "pass": expected == space.dim})
    return out


def verify_prolongation_table(max_n: int, tables: Sequence[int] = (5, 6), sizes_per_row: int | None = None,
                              jobs: int = 1) -> TableReport:
    """Check every constructible row of the prolongation tables at admissible sizes up to ``max_n``."""
    from .catalog import load_table, row_instances, run_jobs

    work = []
    report = TableReport()
    for t in tables:
        for row in load_table(t)["rows"]:
            if row.get("status") == "catalog-only":
                reason = f"catalog-only: {row['reason']}" if row.get("reason") else "catalog-only"
                report.entries.append({"table": t, "row": row["id"], "params": {}, "status": "skipped",
                                       "reason": reason})
                continue
            insts = row_instances(row, max_n, sizes_per_row)
            if not insts:
                report.entries.append({"table": t, "row": row["id"], "params": {}, "status": "skipped",
                                       "reason": f"no admissible size within max-size {max_n}"})
            work.extend((row, params) for params in insts)
    for res in run_jobs(_row_job, work, jobs):
        report.entries.extend(res)
    report.entries.sort(key=_entry_key)
    return report


def _row_job(item):
    row, params = item
    return check_prolongation_row(row, params)


def _entry_key(e):
    return (e.get("table", 0), e["row"], sorted(e.get("params", {}).items()), e.get("quantity", ""))
