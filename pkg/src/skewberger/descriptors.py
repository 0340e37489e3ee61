"""Turn structured catalog descriptors into concrete representations.

An algebra descriptor is a dict ``{"family": ..., "center": "none"|"one"|"z",
"field": "rational"|"gaussian", "as_real": bool}``; a module descriptor is one
of the strings in :data:`MODULES`.  ``params`` supplies the integer sizes
(``n``, ``m``, ``p``, ``q``, ``z``) and may override the family.
"""
from __future__ import annotations

import itertools

from .exactlin import I, ZERO, Mat, im_part, nullspace, re_part
from .liealg import (
    MatrixRep,
    UnsupportedConstruction,
    complexify,
    construct,
    derived_rep,
    realify,
    restrict,
)

MODULES = ("std", "sym2", "ext2", "ext3", "primitive3", "adjoint", "tensor", "hermitian", "spinor")

FAMILIES = ("gl", "sl", "so", "so_pq", "sp", "u", "su", "so_H", "sp1_so_H", "sl+sl", "sl2+so", "sl2+so_pq",
            "so+sp", "spin7+sl2", "halfspin12", "halfspin_2_10", "slC")


def _base(family: str, p: dict) -> MatrixRep:
    n = p.get("n")
    if family in ("gl", "sl", "so", "sp", "so_H", "sp1_so_H"):
        return construct(family, n)
    if family == "so_pq":
        return construct("so_pq", p=p["p"], q=p["q"])
    if family in ("u", "su"):
        return construct(family, p=p["p"], q=p.get("q", 0))
    if family == "halfspin12":
        return construct("halfspin12")
    if family == "halfspin_2_10":
        return construct("halfspin_2_10")
    raise UnsupportedConstruction(f"family {family!r} has no standard module; supported: {', '.join(FAMILIES)}")


def primitive_cube(n: int) -> MatrixRep:
    """sp(2n) on the kernel of the omega-contraction Lambda^3 -> Lambda^1."""
    base = construct("sp", n)
    ext = derived_rep("ext_power", base, k=3)
    w = base.invariant_form.matrix
    d = 2 * n
    words = list(itertools.combinations(range(d), 3))
    rows: dict[int, dict] = {}
    # contract e_a ^ e_b ^ e_c with omega over each pair of slots
    for col, (a, b, c) in enumerate(words):
        for (x, y, z, s) in ((a, b, c, 1), (a, c, b, -1), (b, c, a, 1)):
            v = w[(x, y)]
            if v:
                r = rows.setdefault(z, {})
                r[col] = r.get(col, ZERO) + s * v
    ker = nullspace([{k: v for k, v in r.items() if v} for r in rows.values()], len(words))
    return restrict(ext, ker, name=f"sp({d}) on V{len(ker)}")


def hermitian_rep(n: int) -> MatrixRep:
    """sl(n,C) (as a real algebra) on H_n(C) by A.H = A H + H A^*."""
    herm = []
    for k in range(n):
        herm.append(Mat.unit(n, k, k))
    for k in range(n):
        for l in range(k + 1, n):
            herm.append(Mat.unit(n, k, l) + Mat.unit(n, l, k))
            herm.append((Mat.unit(n, k, l) - Mat.unit(n, l, k)).scale(I))
    index_diag = {k: k for k in range(n)}
    pair_index = {}
    pos = n
    for k in range(n):
        for l in range(k + 1, n):
            pair_index[(k, l)] = pos
            pos += 2

    def coords(m: Mat) -> dict:
        out = {}
        for k in range(n):
            v = m[(k, k)]
            if v:
                out[index_diag[k]] = v
        for (k, l), j in pair_index.items():
            v = m[(k, l)]
            if v:
                if re_part(v):
                    out[j] = re_part(v)
                if im_part(v):
                    out[j + 1] = im_part(v)
        return out

    sl = construct("sl", n).basis
    gens = list(sl) + [a.scale(I) for a in sl]
    dim = n * n
    basis = []
    for a in gens:
        cols = [coords(a @ h + h @ a.conj().T) for h in herm]
        basis.append(Mat.from_columns(cols, dim))
    return MatrixRep(f"sl({n},C) on H_{n}(C)", "rational", dim, tuple(basis)).validate()


def _on_module(family: str, module: str, p: dict) -> MatrixRep:
    n = p.get("n")
    if module == "std":
        return _base(family, p)
    if module in ("sym2", "ext2", "ext3"):
        k = 2 if module != "ext3" else 3
        kind = "sym_power" if module == "sym2" else "ext_power"
        return derived_rep(kind, _base(family, p), k=k)
    if module == "adjoint":
        return derived_rep("adjoint", _base(family, p))
    if module == "primitive3":
        if family != "sp":
            raise UnsupportedConstruction("primitive3 is defined for sp only")
        return primitive_cube(n)
    if module == "hermitian":
        if family != "slC":
            raise UnsupportedConstruction("hermitian module is defined for slC only")
        return hermitian_rep(n)
    if module in ("tensor", "spinor"):
        if family == "sl+sl":
            return derived_rep("outer_tensor", construct("sl", n), construct("sl", p["m"]))
        if family == "sl2+so":
            return derived_rep("outer_tensor", construct("sp", 1), construct("so", p["m"]))
        if family == "sl2+so_pq":
            return derived_rep("outer_tensor", construct("sp", 1), construct("so_pq", p=p["p"], q=p["q"]))
        if family == "so+sp":
            return derived_rep("outer_tensor", construct("so", n), construct("sp", p["q"]))
        if family == "spin7+sl2":
            return derived_rep("outer_tensor", construct("spin7"), construct("sp", 1))
        if family in ("halfspin12", "halfspin_2_10"):
            return _base(family, p)
    raise UnsupportedConstruction(f"module {module!r} unsupported for family {family!r}")


def instantiate(algebra: dict, module: str, params: dict) -> MatrixRep:
    family = params.get("family", algebra["family"])
    if module not in MODULES:
        raise UnsupportedConstruction(f"unknown module {module!r}; supported: {', '.join(MODULES)}")
    rep = _on_module(family, module, params)
    center = algebra.get("center", "none")
    if center == "one" or (center == "z" and params.get("z")):
        rep = derived_rep("with_center", rep, extra=[Mat.identity(rep.dim_v)], name=f"{rep.name}+z")
    if algebra.get("field") == "gaussian" or algebra.get("as_real"):
        rep = complexify(rep)
    if algebra.get("as_real"):
        rep = realify(rep)
    return rep
