"""Table data, row instantiation and the cross-checking harness.

Each table is a JSON document under ``skewberger/data``.  Rows of the
superalgebra tables (1-4) carry dimension descriptors for the even and odd
parts; rows of the prolongation tables (5-6) carry module expressions for
``g^[1]`` and ``g^[2]``; rows of the holonomy tables (7-8) carry the verdicts
the skew-Berger test must return.
"""
from __future__ import annotations

import datetime
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import comb
from typing import Callable, Iterable, Sequence

import sympy

TABLES = tuple(range(1, 9))
_DEG = {"R": 1, "C": 2, "H": 4}


class CatalogError(ValueError):
    pass


@lru_cache(maxsize=None)
def _load(k: int) -> str:
    if k not in TABLES:
        raise CatalogError(f"no table {k}; tables are {TABLES[0]}..{TABLES[-1]}")
    return resources.files("skewberger").joinpath("data").joinpath(f"table{k}.json").read_text()


def load_table(k: int) -> dict:
    return json.loads(_load(k))


def find_row(k: int, row_id: str) -> dict:
    for row in load_table(k)["rows"]:
        if row["id"] == row_id:
            return row
    raise CatalogError(f"table {k} has no row {row_id!r}")


# ----------------------------------------------------------------------------
# parameter instances


@lru_cache(maxsize=None)
def _parsed(expr: str):
    parsed = sympy.sympify(expr)
    return parsed, {str(x): x for x in parsed.free_symbols}


def _value(expr, env: dict) -> int:
    if isinstance(expr, int):
        return expr
    parsed, syms = _parsed(expr)
    v = parsed.xreplace({x: sympy.Integer(env[name]) for name, x in syms.items()})
    if not v.is_Integer:
        raise CatalogError(f"{expr!r} does not evaluate to an integer under {env}")
    return int(v)


def _constraint_ok(c: Sequence, env: dict) -> bool:
    op = c[0]
    if op == "sum_ge":
        return sum(env[a] for a in c[1:-1]) >= c[-1]
    a, b = (_value(x, env) for x in c[1:3])
    return {"ne": a != b, "gt": a > b, "ge": a >= b, "le": a <= b, "lt": a < b, "eq": a == b}[op]


def row_size(row: dict, params: dict) -> int:
    """The size used against ``--max-size``: an explicit ``size`` or the largest size parameter."""
    if "size" in row:
        return _value(row["size"], params)
    spec = row.get("params", {})
    sizes = [params[k] for k, s in spec.items() if s.get("size", True) and "equals" not in s]
    return max(sizes, default=0)


def row_instances(row: dict, max_size: int, k: int | None = None) -> list[dict]:
    """Admissible parameter assignments with size at most ``max_size``.

    Sorted by (size, parameters).  With ``k`` only instances whose size is
    among the ``k`` smallest admissible sizes are kept.
    """
    spec = row.get("params", {})
    free = [name for name, s in spec.items() if "equals" not in s]
    ranges = []
    for name in free:
        s = spec[name]
        if "values" in s:
            ranges.append(list(s["values"]))
        else:
            ranges.append(range(s.get("min", 1), s.get("max", max_size) + 1))
    out = []
    for combo in itertools.product(*ranges):
        env = dict(zip(free, combo))
        for name, s in spec.items():
            if "equals" in s:
                env[name] = _value(s["equals"], env)
        if not all(_constraint_ok(c, env) for c in row.get("constraints", ())):
            continue
        size = row_size(row, env)
        if size <= max_size:
            out.append((size, tuple(sorted(env.items())), env))
    out.sort(key=lambda t: (t[0], t[1]))
    if k is not None:
        keep = sorted({t[0] for t in out})[:k]
        out = [t for t in out if t[0] in keep]
    return [t[2] for t in out]


def smallest_size(row: dict, limit: int = 64) -> int | None:
    """Smallest admissible size, found by growing the bound (no huge grid scans)."""
    if not row.get("params"):
        return row_size(row, {})
    for bound in range(1, limit + 1):
        insts = row_instances(row, bound, k=1)
        if insts:
            return row_size(row, insts[0])
    return None


def run_jobs(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """Map ``fn`` over ``items``, in worker processes when ``jobs > 1``; order is preserved."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=1))


# ----------------------------------------------------------------------------
# dimension bookkeeping for the superalgebra tables

# complex dimensions of the even part, the odd part and (type II) the two odd summands
SUPERALGEBRAS = {
    "osp": ("n*(n-1)/2 + m*(2*m+1)", "2*n*m", None),
    "D21alpha": ("9", "8", None),
    "F4": ("24", "16", None),
    "G3": ("17", "14", None),
    "q": ("n**2 - 1", "n**2 - 1", None),
    "sl": ("n**2 + m**2 - 1", "2*n*m", ("n*m", "n*m")),
    "psl": ("2*n**2 - 2", "2*n**2", ("n**2", "n**2")),
    "osp2": ("1 + m*(2*m+1)", "4*m", ("2*m", "2*m")),
    "pe": ("n**2 - 1", "n**2", ("n*(n+1)/2", "n*(n-1)/2")),
}


def _algebra_dim(atom: Sequence, env: dict) -> tuple[str, int]:
    """(scalar field, dimension over it) of a summand of an even part."""
    kind = atom[0]
    v = lambda i: _value(atom[i], env)
    if kind == "sl":
        n = v(2)
        return ("R", 4 * n * n - 1) if atom[1] == "H" else (atom[1], n * n - 1)
    if kind == "so":
        n = v(2)
        return atom[1], n * (n - 1) // 2
    if kind == "sp":
        m = v(2)
        return atom[1], m * (2 * m + 1)
    if kind == "center":
        return atom[1], 1
    if kind == "G2":
        return atom[1], 14
    if kind == "so_pq":
        n = v(1) + v(2)
        return "R", n * (n - 1) // 2
    if kind == "sp_pq":
        m = v(1) + v(2)
        return "R", m * (2 * m + 1)
    if kind == "su":
        n = v(1) + v(2)
        return "R", n * n - 1
    if kind == "so_H":
        n = v(1)
        return "R", n * (2 * n - 1)
    raise CatalogError(f"unknown algebra descriptor {atom!r}")


def _real(fd: tuple[str, int]) -> int:
    return _DEG[fd[0]] * fd[1]


def _module_dim(expr: Sequence, env: dict) -> tuple[str, int]:
    kind = expr[0]
    if kind in ("std", "spinor"):
        return expr[1], _value(expr[2], env)
    if kind in ("dual", "conj"):
        return _module_dim(expr[1], env)
    if kind == "adjoint":
        return _algebra_dim(expr[1], env)
    if kind == "tensor":
        over = expr[1]
        dims = []
        for e in expr[2:]:
            r = _real(_module_dim(e, env))
            if r % _DEG[over]:
                raise CatalogError(f"{e!r} is not a module over {over}")
            dims.append(r // _DEG[over])
        return over, dims[0] * dims[1]
    if kind == "sum":
        a, b = _module_dim(expr[1], env), _module_dim(expr[2], env)
        return (a[0], a[1] + b[1]) if a[0] == b[0] else ("R", _real(a) + _real(b))
    if kind in ("sym", "ext"):
        k = expr[1]
        f, d = _module_dim(expr[2], env)
        if f == "H":
            raise CatalogError("symmetric and exterior powers need a commutative scalar field")
        return f, comb(d + k - 1, k) if kind == "sym" else comb(d, k)
    if kind == "real_points":
        r = _real(_module_dim(expr[1], env))
        return "R", r // 2
    raise CatalogError(f"unknown module descriptor {expr!r}")


def _in_base(fd: tuple[str, int], base: str) -> int:
    if base == "C":
        if fd[0] != "C":
            raise CatalogError(f"complex table entry has scalars {fd[0]}")
        return fd[1]
    return _real(fd)


def _bookkeeping_instance(row: dict, base: str, env: dict, odd_keys: dict) -> dict:
    sa = row["superalgebra"]
    args = {k: _value(v, env) for k, v in sa["args"].items()}
    ref_even, ref_odd, ref_split = SUPERALGEBRAS[sa["name"]]
    ev = lambda s: _value(s, args)
    even = sum(_in_base(_algebra_dim(a, env), base) for a in row["even"])
    got = {"even": even}
    want = {"even": ev(ref_even)}
    if "odd" in odd_keys:
        got["odd"] = _in_base(_module_dim(odd_keys["odd"], env), base)
        want["odd"] = ev(ref_odd)
    else:
        plus = _in_base(_module_dim(odd_keys["odd_plus"], env), base)
        minus = _in_base(_module_dim(odd_keys["odd_minus"], env), base)
        got.update({"odd": plus + minus, "odd_plus": plus, "odd_minus": minus})
        want["odd"] = ev(ref_odd)
        if ref_split:
            want["odd_plus"], want["odd_minus"] = ev(ref_split[0]), ev(ref_split[1])
    return {"params": env, "expected": want, "got": got, "pass": all(got[k] == v for k, v in want.items())}


def bookkeeping_row(row: dict, base: str, max_size: int) -> dict:
    """One report entry per row: even/odd dimensions against the superalgebra formulas at every instance."""
    insts = row_instances(row, max_size) if row.get("params") else [{}]
    odd = {k: row[k] for k in ("odd", "odd_plus", "odd_minus") if k in row}
    results = [_bookkeeping_instance(row, base, env, odd) for env in insts]
    entry = {"table": row["table"], "row": row["id"], "params": {}, "check": "dimensions",
             "instances": len(results), "expected": results[0]["expected"] if results else None,
             "got": results[0]["got"] if results else None}
    failures = [r for r in results if not r["pass"]]
    if row.get("status") == "descriptor ambiguous":
        norm = {k: row["normalized"].get(k, v) for k, v in odd.items()}
        normalized = [_bookkeeping_instance(row, base, env, norm) for env in insts]
        entry["literal_pass"] = not failures
        entry["normalized_got"] = normalized[0]["got"] if normalized else None
        entry["status"] = "ambiguous" if all(r["pass"] for r in normalized) else "fail"
        entry["reason"] = "descriptor ambiguous: literal reading mismatches, normalized reading checked"
        return entry
    entry["status"] = "pass" if results and not failures else "fail"
    if failures:
        entry["first_failure"] = failures[0]
    if not results:
        entry["reason"] = "no admissible instance within max-size"
    return entry


# ----------------------------------------------------------------------------
# holonomy tables


def _holonomy_job(item) -> list[dict]:
    from .curvature import skew_berger_test
    from .descriptors import instantiate

    row, params = item
    rep = instantiate(row["algebra"], row["module"], params)
    res = skew_berger_test(rep)
    detail = {"dim_g": res.dim_g, "dim_v": res.dim_v, "curvature_dim": res.curvature_dim,
              "derivative_dim": res.derivative_dim, "span_dim": res.span_dim}
    got_all = {"is_skew_berger": res.is_skew_berger, "is_symmetric": res.is_symmetric,
               "curvature_dim": res.curvature_dim}
    out = []
    for key, want in row["expect"].items():
        got = got_all[key]
        out.append({"table": row["table"], "row": row["id"], "params": dict(params), "check": key,
                    "expected": want, "got": got, "status": "pass" if got == want else "fail",
                    "detail": detail})
    return out


def _skip(row: dict, reason: str, params: dict | None = None) -> dict:
    return {"table": row["table"], "row": row["id"], "params": params or {}, "check": "",
            "status": "skipped", "reason": reason}


def holonomy_work(table: int, max_size: int) -> tuple[list, list[dict]]:
    work, skipped = [], []
    for row in load_table(table)["rows"]:
        if row.get("status") == "catalog-only":
            skipped.append(_skip(row, f"catalog-only: {row.get('reason', '')}".rstrip(": ")))
            continue
        insts = row_instances(row, max_size)
        if not insts:
            # refuse to extrapolate past the configured bound
            size = smallest_size(row)
            skipped.append(_skip(row, f"smallest admissible size {size} exceeds max-size {max_size}"))
            continue
        work.extend((row, p) for p in insts)
    return work, skipped


# ----------------------------------------------------------------------------
# report


@dataclass
class VerificationReport:
    tables: list
    max_size: int
    entries: list = field(default_factory=list)
    timestamp: str = ""

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "skipped": 0, "ambiguous": 0}
        for e in self.entries:
            counts[e["status"]] += 1
        return counts

    @property
    def passed(self) -> bool:
        return self.summary["fail"] == 0

    def rows(self, table: int) -> list[str]:
        return [e["row"] for e in self.entries if e["table"] == table]

    def to_json(self) -> dict:
        return {"timestamp": self.timestamp, "tables": self.tables, "max_size": self.max_size,
                "summary": self.summary, "entries": self.entries}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, default=str)

    def text(self) -> str:
        cols = ("table", "row", "params", "check", "expected", "got", "status")
        lines = []
        for e in self.entries:
            params = ",".join(f"{k}={v}" for k, v in sorted(e.get("params", {}).items()))
            if e["check"] == "dimensions":
                params = f"{e['instances']} inst."
            status = e["status"] if e["status"] != "skipped" else f"skipped ({e['reason']})"
            lines.append([str(e["table"]), e["row"], params, e.get("check", ""), _short(e.get("expected")),
                          _short(e.get("got")), status])
        widths = [max([len(c)] + [len(r[i]) for r in lines]) for i, c in enumerate(cols)]
        out = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
        out += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in lines]
        s = self.summary
        out.append(f"{s['pass']} passed, {s['fail']} failed, {s['ambiguous']} ambiguous, {s['skipped']} skipped")
        return "\n".join(out)


def _short(v) -> str:
    if v is None:
        return ""
    if isinstance(v, dict):
        return " ".join(f"{k}={v[k]}" for k in sorted(v))
    return str(v)


def _entry_key(e: dict):
    return (e["table"], e["row"], sorted(e.get("params", {}).items()), e.get("check", ""))


def verify(tables: Iterable[int] = TABLES, max_size: int = 4, jobs: int = 1) -> VerificationReport:
    """Run every check the tables support, up to ``max_size``."""
    from .prolong import verify_prolongation_table

    tables = sorted(set(tables))
    for t in tables:
        load_table(t)
    report = VerificationReport(tables=tables, max_size=max_size,
                                timestamp=datetime.datetime.now(datetime.timezone.utc).isoformat())
    work = []
    for t in tables:
        doc = load_table(t)
        if t <= 4:
            report.entries.extend(bookkeeping_row(row, doc["base_field"], max_size) for row in doc["rows"])
        elif t <= 6:
            for e in verify_prolongation_table(max_size, tables=(t,), jobs=jobs).entries:
                report.entries.append(_from_prolongation(e))
        else:
            w, skipped = holonomy_work(t, max_size)
            work.extend(w)
            report.entries.extend(skipped)
    for res in run_jobs(_holonomy_job, work, jobs):
        report.entries.extend(res)
    report.entries.sort(key=_entry_key)
    return report


def _from_prolongation(e: dict) -> dict:
    out = {"table": e["table"], "row": e["row"], "params": e.get("params", {}), "check": e.get("quantity", "")}
    if e.get("status") == "skipped":
        out.update(status="skipped", reason=e.get("reason", ""))
    else:
        out.update(expected=e["expected"], got=e["got"], status="pass" if e["pass"] else "fail")
    return out


# ----------------------------------------------------------------------------
# rendering


def table_text(k: int) -> str:
    doc = load_table(k)
    lines = [f"Table {k}: {doc['title']}"]
    for row in doc["rows"]:
        cells = " | ".join(v for v in row["cells"].values() if v)
        status = row.get("status", "")
        lines.append(f"  {row['id']:<20} [{status}] {cells}")
    return "\n".join(lines)
