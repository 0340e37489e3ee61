"""Independent dense floating-point oracles.

These rebuild the constraint systems straight from the definitions with numpy
and full (unsymmetrized) index sets, so they share no code path with the
sparse exact solvers they check.
"""
from __future__ import annotations

import itertools

import numpy as np

from skewberger.exactlin import im_part, re_part


def dense_basis(rep) -> np.ndarray:
    n = rep.dim_v
    out = np.zeros((rep.dim, n, n), dtype=complex)
    for a, m in enumerate(rep.basis):
        for (i, j), v in m.entries.items():
            out[a, i, j] = float(re_part(v)) + 1j * float(im_part(v))
    return out


def _rank(rows: list[np.ndarray], ncols: int) -> int:
    if not rows:
        return 0
    return int(np.linalg.matrix_rank(np.array(rows), tol=1e-8))


def prolongation_dim(rep, sign: int = -1) -> int:
    """dim {phi in V*(x)g : phi(x)y = sign*phi(y)x} (skew for sign=-1)."""
    basis = dense_basis(rep)
    d, n = basis.shape[0], basis.shape[1]
    rows = []
    # unknown phi[x, a] at x*d + a
    for x, y, i in itertools.product(range(n), range(n), range(n)):
        r = np.zeros(n * d, dtype=complex)
        r[x * d:(x + 1) * d] += basis[:, i, y]
        r[y * d:(y + 1) * d] -= sign * basis[:, i, x]
        rows.append(r)
    return n * d - _rank(rows, n * d)


def curvature_dim(rep, sym: int = 1) -> int:
    basis = dense_basis(rep)
    d, n = basis.shape[0], basis.shape[1]
    idx = lambda x, y, a: (x * n + y) * d + a
    size = n * n * d
    rows = []
    for x, y, a in itertools.product(range(n), range(n), range(d)):
        r = np.zeros(size, dtype=complex)
        r[idx(x, y, a)] += 1
        r[idx(y, x, a)] -= sym
        rows.append(r)
    for x, y, z, i in itertools.product(range(n), repeat=4):
        r = np.zeros(size, dtype=complex)
        for p, q, s in ((x, y, z), (y, z, x), (z, x, y)):
            r[idx(p, q, 0):idx(p, q, 0) + d] += basis[:, i, s]
        rows.append(r)
    return size - _rank(rows, size)


def derivative_dim(rep, sym: int = 1) -> int:
    """dim of S in V*(x)V*(x)V*(x)g with S_w in the curvature space and the cyclic identity."""
    basis = dense_basis(rep)
    d, n = basis.shape[0], basis.shape[1]
    idx = lambda w, x, y: ((w * n + x) * n + y) * d
    size = n ** 3 * d
    rows = []
    for w, x, y, a in itertools.product(range(n), range(n), range(n), range(d)):
        r = np.zeros(size)
        r[idx(w, x, y) + a] += 1
        r[idx(w, y, x) + a] -= sym
        rows.append(r)
    for w, x, y, z, i in itertools.product(range(n), repeat=5):
        r = np.zeros(size, dtype=complex)
        for p, q, s in ((x, y, z), (y, z, x), (z, x, y)):
            r[idx(w, p, q):idx(w, p, q) + d] += basis[:, i, s]
        rows.append(r)
    for x, y, z, a in itertools.product(range(n), range(n), range(n), range(d)):
        r = np.zeros(size)
        for w, p, q in ((x, y, z), (y, z, x), (z, x, y)):
            r[idx(w, p, q) + a] += 1
        rows.append(r)
    return size - _rank(rows, size)
