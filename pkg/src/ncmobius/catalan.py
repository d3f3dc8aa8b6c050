"""Degrees of finite Coxeter groups and Fuss-Catalan numbers."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .coxeter import CoxeterType
from .errors import NonIntegerResult, UnsupportedType

MAX_K = 64


@dataclass(frozen=True)
class DegreeData:
    degrees: tuple[int, ...]

    @property
    def coxeter_number(self) -> int:
        return self.degrees[-1]

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.degrees)

    @property
    def group_order(self) -> int:
        return prod(self.degrees)

    @property
    def num_reflections(self) -> int:
        return sum(self.exponents)

    @property
    def rank(self) -> int:
        return len(self.degrees)


def degrees(ctype: CoxeterType) -> DegreeData:
    fam, n = ctype.family, ctype.rank
    if fam == "A":
        ds = range(2, n + 2)
    elif fam == "B":
        ds = range(2, 2 * n + 1, 2)
    elif fam == "D":
        ds = list(range(2, 2 * n - 1, 2)) + [n]
    elif fam == "I2":
        ds = (2, ctype.m)
    elif fam == "H3":
        ds = (2, 6, 10)
    elif fam == "F4":
        ds = (2, 6, 8, 12)
    else:
        raise UnsupportedType(str(ctype))
    return DegreeData(tuple(sorted(ds)))


def _exact_product(ctype: CoxeterType, k: int, shift: int) -> int:
    if not isinstance(k, int) or k < 0 or k > MAX_K:
        raise ValueError(f"k must be an integer in [0, {MAX_K}], got {k!r}")
    data = degrees(ctype)
    h = data.coxeter_number
    num = prod(k * h + d + shift for d in data.degrees)
    den = prod(data.degrees)
    q, r = divmod(num, den)
    if r:
        raise NonIntegerResult(f"{ctype}, k={k}: {num}/{den} is not an integer")
    return q


def fuss_catalan(ctype: CoxeterType, k: int) -> int:
    """prod (k h + d_i) / d_i."""
    return _exact_product(ctype, k, 0)


def positive_fuss_catalan(ctype: CoxeterType, k: int) -> int:
    """prod (k h + d_i - 2) / d_i."""
    return _exact_product(ctype, k, -2)
