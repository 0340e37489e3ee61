"""Exterior algebra on ``m2`` anticommuting generators with rational coefficients.

Monomials are bitmasks: bit ``i`` stands for generator ``i + 1``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from gmpy2 import mpq, popcount

from .exactlin import to_scalar


class GeneratorMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def _mul_sign(a: int, b: int) -> int:
    """Sign of xi^a xi^b after sorting into increasing order (0 if they overlap)."""
    if a & b:
        return 0
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        # generators of a sitting above this generator of b must pass it
        swaps += popcount(a & ~((low << 1) - 1))
        bb ^= low
    return -1 if swaps & 1 else 1


def _mask(subset: Iterable[int]) -> int:
    m = 0
    for i in subset:
        if i < 1:
            raise ValueError("generator indices start at 1")
        bit = 1 << (i - 1)
        if m & bit:
            raise ValueError(f"repeated generator {i}")
        m |= bit
    return m


def _subset(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class GrassmannElement:
    __slots__ = ("m2", "coeffs")

    def __init__(self, m2: int, coeffs: Mapping[int, object] | None = None):
        self.m2 = m2
        self.coeffs = {k: mpq(v) for k, v in (coeffs or {}).items() if v}

    # construction ---------------------------------------------------------

    @classmethod
    def from_terms(cls, m2: int, terms: Mapping) -> "GrassmannElement":
        """``terms`` maps increasing index tuples (1-based) to coefficients."""
        out = {}
        for subset, c in terms.items():
            subset = tuple(subset)
            if list(subset) != sorted(set(subset)):
                raise ValueError(f"subset {subset} is not strictly increasing")
            if subset and subset[-1] > m2:
                raise GeneratorMismatch(f"generator {subset[-1]} exceeds {m2}")
            out[_mask(subset)] = mpq(to_scalar(c)) if isinstance(c, str) else mpq(c)
        return cls(m2, out)

    @classmethod
    def constant(cls, m2: int, c=1) -> "GrassmannElement":
        return cls(m2, {0: c})

    @classmethod
    def generator(cls, m2: int, i: int) -> "GrassmannElement":
        if not 1 <= i <= m2:
            raise GeneratorMismatch(f"generator {i} outside 1..{m2}")
        return cls(m2, {1 << (i - 1): 1})

    @classmethod
    def _raw(cls, m2, coeffs):
        g = cls.__new__(cls)
        g.m2 = m2
        g.coeffs = coeffs
        return g

    # inspection -----------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], mpq]:
        return {_subset(k): v for k, v in sorted(self.coeffs.items())}

    def body(self) -> mpq:
        return self.coeffs.get(0, mpq(0))

    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements, None for mixed, 0 for zero."""
        ps = {popcount(k) & 1 for k in self.coeffs}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def is_even(self) -> bool:
        return all(not (popcount(k) & 1) for k in self.coeffs)

    def is_odd(self) -> bool:
        return all(popcount(k) & 1 for k in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_degree(self) -> int:
        return max((popcount(k) for k in self.coeffs), default=-1)

    def truncate(self, degree: int) -> "GrassmannElement":
        return GrassmannElement._raw(self.m2, {k: v for k, v in self.coeffs.items() if popcount(k) <= degree})

    # arithmetic -----------------------------------------------------------

    def _check(self, o: "GrassmannElement"):
        if o.m2 != self.m2:
            raise GeneratorMismatch(f"generator counts differ: {self.m2} vs {o.m2}")

    def __add__(self, o):
        if not isinstance(o, GrassmannElement):
            o = GrassmannElement.constant(self.m2, o)
        self._check(o)
        out = dict(self.coeffs)
        for k, v in o.coeffs.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GrassmannElement._raw(self.m2, out)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement._raw(self.m2, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def scale(self, c) -> "GrassmannElement":
        c = mpq(c)
        if not c:
            return GrassmannElement._raw(self.m2, {})
        return GrassmannElement._raw(self.m2, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, o):
        if not isinstance(o, GrassmannElement):
            return self.scale(o)
        self._check(o)
        out: dict[int, mpq] = {}
        for a, x in self.coeffs.items():
            for b, y in o.coeffs.items():
                s = _mul_sign(a, b)
                if s:
                    k = a | b
                    out[k] = out.get(k, 0) + (x * y if s > 0 else -(x * y))
        return GrassmannElement._raw(self.m2, {k: v for k, v in out.items() if v})

    def __rmul__(self, o):
        return self.scale(o)

    def __eq__(self, o):
        if isinstance(o, GrassmannElement):
            return self.m2 == o.m2 and self.coeffs == o.coeffs
        return self.coeffs == ({0: mpq(o)} if o else {})

    def __hash__(self):
        return hash((self.m2, frozenset(self.coeffs.items())))

    def derive(self, i: int) -> "GrassmannElement":
        """Left derivative by generator ``i`` (1-based)."""
        if not 1 <= i <= self.m2:
            raise GeneratorMismatch(f"generator {i} outside 1..{self.m2}")
        bit = 1 << (i - 1)
        below = bit - 1
        out = {}
        for k, v in self.coeffs.items():
            if k & bit:
                out[k ^ bit] = -v if popcount(k & below) & 1 else v
        return GrassmannElement._raw(self.m2, out)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for sub, v in self.terms.items():
            mono = "*".join(f"x{i}" for i in sub)
            parts.append(f"{v}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [{"subset": list(s), "coeff": str(v)} for s, v in self.terms.items()]


def addmul_into(acc: dict, f: GrassmannElement, h: GrassmannElement, sign: int = 1, top: int | None = None) -> None:
    """acc += sign * f * h, dropping monomials of degree above ``top``."""
    for a, x in f.coeffs.items():
        for b, y in h.coeffs.items():
            if a & b:
                continue
            k = a | b
            if top is not None and popcount(k) > top:
                continue
            v = x * y if _mul_sign(a, b) * sign > 0 else -(x * y)
            acc[k] = acc.get(k, 0) + v


def from_accumulator(m2: int, acc: dict) -> GrassmannElement:
    return GrassmannElement._raw(m2, {k: v for k, v in acc.items() if v})


def mul(f: GrassmannElement, h: GrassmannElement) -> GrassmannElement:
    return f * h


def derivation(f: GrassmannElement, i: int) -> GrassmannElement:
    return f.derive(i)


def body(f: GrassmannElement) -> mpq:
    return f.body()


def monomials(m2: int, parity: int | None = None, max_degree: int | None = None) -> list[int]:
    """Bitmasks of all monomials (optionally of one parity / bounded degree), by degree then value."""
    out = [k for k in range(1 << m2)
           if (parity is None or popcount(k) % 2 == parity) and (max_degree is None or popcount(k) <= max_degree)]
    return sorted(out, key=lambda k: (popcount(k), k))
