"""Real gamma matrices as tensor products of 2x2 real Pauli-type factors."""
from __future__ import annotations

from functools import reduce

from .exactlin import Mat

# factor codes: identity, sigma_1, sigma_3, epsilon = sigma_3 sigma_1
_FACTORS = {
    0: Mat.from_dense([[1, 0], [0, 1]]),
    1: Mat.from_dense([[0, 1], [1, 0]]),
    2: Mat.from_dense([[1, 0], [0, -1]]),
    3: Mat.from_dense([[0, 1], [-1, 0]]),
}


class CliffordError(ValueError):
    pass


def _square_sign(word):
    return -1 if sum(1 for c in word if c == 3) % 2 else 1


def _anticommute(u, v):
    return sum(1 for a, b in zip(u, v) if a and b and a != b) % 2 == 1


def _words(k):
    if k == 0:
        return [()]
    return [w + (c,) for w in _words(k - 1) for c in range(4)]


def word_matrix(word) -> Mat:
    return reduce(lambda a, b: a.kron(b), (_FACTORS[c] for c in word), Mat.identity(1))


def gamma_words(p: int, q: int, k: int):
    """Find ``p`` words squaring to +1 and ``q`` squaring to -1, pairwise anticommuting."""
    cands = [w for w in _words(k) if any(w)]
    plus = [w for w in cands if _square_sign(w) > 0]
    minus = [w for w in cands if _square_sign(w) < 0]

    def search(chosen, need_p, need_q, start_p, start_q):
        if need_p == 0 and need_q == 0:
            return chosen
        if need_p:
            pool, start = plus, start_p
        else:
            pool, start = minus, start_q
        for idx in range(start, len(pool)):
            w = pool[idx]
            if all(_anticommute(w, c) for c in chosen):
                if need_p:
                    res = search(chosen + [w], need_p - 1, need_q, idx + 1, 0)
                else:
                    res = search(chosen + [w], 0, need_q - 1, start_p, idx + 1)
                if res is not None:
                    return res
        return None

    found = search([], p, q, 0, 0)
    if found is None:
        raise CliffordError(f"no real Pauli-product gammas for Cl({p},{q}) in dimension {2 ** k}")
    return found


def gammas(p: int, q: int, k: int) -> list[Mat]:
    """Real ``2**k``-dimensional generators: first ``p`` square to +1, then ``q`` to -1."""
    return [word_matrix(w) for w in gamma_words(p, q, k)]
