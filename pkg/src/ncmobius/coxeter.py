"""Finite Coxeter systems with exact element arithmetic.

Every group element is stored as a permutation of a finite set on which the
group acts faithfully:

* ``A_n``   permutations of ``{1..n+1}``
* ``B_n``, ``D_n``  signed permutations, stored as permutations of ``{±1..±n}``
* ``I2(m)`` symmetries of the regular m-gon, acting on its vertices
* ``H3``    permutations of the 30 roots, built over Q(sqrt 5)
* ``F4``    permutations of the 48 roots, built over the integers

Products compose as functions: ``(a*b)(x) = a(b(x))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidRank, MixedSystems, UnsupportedType
from .qfield import GOLDEN, QSqrt5

FAMILIES = ("A", "B", "D", "I2", "H3", "F4")
_KNOWN_UNSUPPORTED = ("E", "H4", "G2")


@dataclass(frozen=True)
class CoxeterType:
    family: str
    rank: int
    m: int | None = None

    def __post_init__(self):
        fam, n = self.family, self.rank
        if fam not in FAMILIES:
            raise UnsupportedType(f"unsupported Coxeter family {fam!r}")
        if not isinstance(n, int) or n < 1:
            raise InvalidRank(f"rank must be a positive integer, got {n!r}")
        if fam == "I2":
            if n != 2:
                raise InvalidRank("I2(m) has rank 2")
            if self.m is None or self.m < 3:
                raise InvalidRank("I2(m) needs m >= 3")
        elif self.m is not None:
            raise InvalidRank(f"dihedral order only applies to I2, not {fam}")
        if fam == "H3" and n != 3:
            raise InvalidRank("H3 has rank 3")
        if fam == "F4" and n != 4:
            raise InvalidRank("F4 has rank 4")
        if fam == "D" and n < 4:
            # D2 = A1xA1 and D3 = A3 are aliases, not separate types
            raise InvalidRank(f"D{n} is an alias; use a rank >= 4")

    @classmethod
    def parse(cls, text: str) -> CoxeterType:
        """Parse names such as ``A3``, ``B2``, ``D4``, ``I2(5)``, ``H3``."""
        s = text.strip().upper().replace(" ", "")
        if s.startswith("I2"):
            rest = s[2:].strip("()")
            if not rest.isdigit():
                raise InvalidRank(f"cannot read dihedral order from {text!r}")
            return cls("I2", 2, int(rest))
        if s in ("H3", "F4"):
            return cls(s, int(s[1]))
        fam, digits = s[:1], s[1:]
        if not digits.isdigit():
            if any(s.startswith(u) for u in _KNOWN_UNSUPPORTED):
                raise UnsupportedType(f"{text!r} is not supported")
            raise UnsupportedType(f"cannot parse Coxeter type {text!r}")
        if fam == "H" or fam == "E" or fam == "G":
            raise UnsupportedType(f"{text!r} is not supported")
        return cls(fam, int(digits))

    def __str__(self):
        if self.family == "I2":
            return f"I2({self.m})"
        if self.family in ("H3", "F4"):
            return self.family
        return f"{self.family}{self.rank}"

    def coxeter_matrix(self) -> list[list[int]]:
        """Coxeter matrix in the canonical generator order."""
        n = self.rank
        mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]

        def link(i, j, v):
            mat[i][j] = mat[j][i] = v

        if self.family == "A":
            for i in range(n - 1):
                link(i, i + 1, 3)
        elif self.family == "B":
            if n >= 2:
                link(0, 1, 4)
            for i in range(1, n - 1):
                link(i, i + 1, 3)
        elif self.family == "D":
            link(0, 2, 3)
            for i in range(1, n - 1):
                link(i, i + 1, 3)
        elif self.family == "I2":
            link(0, 1, self.m)
        elif self.family == "H3":
            link(0, 1, 5)
            link(1, 2, 3)
        elif self.family == "F4":
            link(0, 1, 3)
            link(1, 2, 4)
            link(2, 3, 3)
        return mat


class GroupElement:
    """An element of a finite Coxeter group, compared exactly."""

    __slots__ = ("perm", "system", "_hash")

    def __init__(self, perm: tuple[int, ...], system: CoxeterSystem):
        self.perm = perm
        self.system = system
        self._hash = hash(perm)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.system is other.system and self.perm == other.perm

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.perm < other.perm

    def __mul__(self, other):
        return self.system.multiply(self, other)

    def inverse(self) -> GroupElement:
        return self.system.inverse(self)

    def is_identity(self) -> bool:
        return self.perm == self.system.identity.perm

    def __repr__(self):
        return self.system.render(self)


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(map(a.__getitem__, b))


def _invert(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


class CoxeterSystem:
    """A fully enumerated finite Coxeter system.

    Built by :func:`build_coxeter_system`; treat as read-only afterwards.
    """

    def __init__(self, ctype: CoxeterType, generator_perms: Sequence[tuple[int, ...]],
                 generator_order: Sequence[int], roots: list | None = None):
        self.ctype = ctype
        self.rank = ctype.rank
        self.generator_order = tuple(generator_order)
        self._roots = roots
        degree = len(generator_perms[0])
        self._interned: dict[tuple[int, ...], GroupElement] = {}
        self.identity = self._intern(tuple(range(degree)))
        self.simple_generators = tuple(self._intern(generator_perms[i])
                                       for i in self.generator_order)

        # Cayley graph BFS over S: standard length and a reduced word per element
        self._s_length: dict[GroupElement, int] = {self.identity: 0}
        self._s_parent: dict[GroupElement, tuple[GroupElement, int] | None] = {
            self.identity: None}
        order = [self.identity]
        queue = deque(order)
        while queue:
            w = queue.popleft()
            for i, s in enumerate(self.simple_generators):
                ws = self._intern(_compose(w.perm, s.perm))
                if ws not in self._s_length:
                    self._s_length[ws] = self._s_length[w] + 1
                    self._s_parent[ws] = (w, i)
                    order.append(ws)
                    queue.append(ws)
        self.elements = tuple(order)
        self.group_order = len(order)
        self._index = {w: i for i, w in enumerate(order)}

        refl = {w * s * w.inverse() for w in self.elements for s in self.simple_generators}
        self.reflections = tuple(sorted(refl))
        self.num_reflections = len(self.reflections)
        self._reflection_set = frozenset(refl)

        gamma = self.identity
        for s in self.simple_generators:
            gamma = gamma * s
        self.coxeter_element = gamma

        self._abs_length = self._absolute_length_table()

    # -- element plumbing -------------------------------------------------
    def _intern(self, perm: tuple[int, ...]) -> GroupElement:
        w = self._interned.get(perm)
        if w is None:
            w = GroupElement(perm, self)
            self._interned[perm] = w
        return w

    def _check(self, *ws: GroupElement):
        for w in ws:
            if not isinstance(w, GroupElement) or w.system is not self:
                raise MixedSystems(f"{w!r} does not belong to {self.ctype}")

    def element(self, perm: Iterable[int]) -> GroupElement:
        perm = tuple(perm)
        w = self._interned.get(perm)
        if w is None or w not in self._index:
            raise ValueError(f"{perm} is not an element of {self.ctype}")
        return w

    def index(self, w: GroupElement) -> int:
        self._check(w)
        return self._index[w]

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a, b)
        return self._intern(_compose(a.perm, b.perm))

    def product(self, ws: Iterable[GroupElement]) -> GroupElement:
        out = self.identity
        for w in ws:
            out = self.multiply(out, w)
        return out

    def inverse(self, w: GroupElement) -> GroupElement:
        self._check(w)
        return self._intern(_invert(w.perm))

    def is_reflection(self, w: GroupElement) -> bool:
        return w in self._reflection_set

    # -- lengths -------------------------------------------------------------
    def _absolute_length_table(self) -> dict[GroupElement, int]:
        lengths = {self.identity: 0}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                r = lengths[w] + 1
                for t in self.reflections:
                    wt = self.multiply(w, t)
                    if wt not in lengths:
                        lengths[wt] = r
                        nxt.append(wt)
            frontier = nxt
        return lengths

    def absolute_length(self, w: GroupElement) -> int:
        """Length of a shortest factorization of ``w`` into reflections."""
        self._check(w)
        return self._abs_length[w]

    def absolute_leq(self, pi: GroupElement, sigma: GroupElement) -> bool:
        """``pi <= sigma`` in absolute order."""
        self._check(pi, sigma)
        ell = self._abs_length
        return ell[sigma] == ell[pi] + ell[self.multiply(self.inverse(pi), sigma)]

    def coxeter_length(self, w: GroupElement) -> int:
        self._check(w)
        return self._s_length[w]

    def reduced_word(self, w: GroupElement) -> tuple[int, ...]:
        """A reduced S-word for ``w`` as indices into ``simple_generators``."""
        self._check(w)
        word = []
        while self._s_parent[w] is not None:
            w, i = self._s_parent[w]
            word.append(i)
        return tuple(reversed(word))

    def longest_element(self) -> GroupElement:
        return self.elements[-1]

    def coxeter_matrix(self) -> list[list[int]]:
        """Coxeter matrix indexed by the stored generator order."""
        base = self.ctype.coxeter_matrix()
        o = self.generator_order
        return [[base[o[i]][o[j]] for j in range(self.rank)] for i in range(self.rank)]

    # -- rendering -------------------------------------------------------------
    def render(self, w: GroupElement) -> str:
        fam = self.ctype.family
        p = w.perm
        if fam == "A":
            return _cycle_notation(p)
        if fam in ("B", "D"):
            n = self.rank
            vals = []
            for i in range(n):
                j = p[i]
                vals.append(j + 1 if j < n else -(j - n + 1))
            return "[" + ", ".join(map(str, vals)) + "]"
        if fam == "I2":
            m = self.ctype.m
            rot = p[0]
            flip = (p[1] - p[0]) % m != 1
            return f"r{rot}f" if flip else f"r{rot}"
        return self._render_matrix(w)

    def _render_matrix(self, w: GroupElement) -> str:
        cols = []
        for j in range(self.rank):
            cols.append(self._roots[w.perm[j]])
        rows = [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in rows) + "]"

    def __repr__(self):
        return f"CoxeterSystem({self.ctype}, |W|={self.group_order}, N={self.num_reflections})"


def _cycle_notation(p: tuple[int, ...]) -> str:
    seen = set()
    cycles = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


# -- generator construction per family -----------------------------------------

def _transposition(size: int, i: int, j: int) -> tuple[int, ...]:
    p = list(range(size))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def _signed_generators(family: str, n: int) -> list[tuple[int, ...]]:
    # point i < n is +(i+1), point n+i is -(i+1)
    def signed(images: dict[int, int]) -> tuple[int, ...]:
        p = list(range(2 * n))
        for src, dst in images.items():
            # src, dst are signed integers
            def idx(v):
                return v - 1 if v > 0 else n - v - 1
            p[idx(src)] = idx(dst)
            p[idx(-src)] = idx(-dst)
        return tuple(p)

    gens = []
    if family == "B":
        gens.append(signed({1: -1}))
    else:
        gens.append(signed({1: -2, 2: -1}))
    for i in range(1, n):
        gens.append(signed({i: i + 1, i + 1: i}))
    return gens


def _dihedral_generators(m: int) -> list[tuple[int, ...]]:
    return [tuple((-i) % m for i in range(m)), tuple((1 - i) % m for i in range(m))]


def _root_generators(cartan: list[list], max_roots: int = 500):
    """Permutation action of the simple reflections on the root orbit.

    ``cartan[i][j]`` is the coefficient with ``s_i(a_j) = a_j - cartan[i][j] a_i``.
    Roots are coordinate tuples in the simple-root basis.
    """
    n = len(cartan)
    zero = cartan[0][0] - cartan[0][0]
    simple = [tuple(zero + (1 if k == i else 0) for k in range(n)) for i in range(n)]

    def reflect(i, v):
        c = sum((cartan[i][j] * v[j] for j in range(n)), zero)
        out = list(v)
        out[i] = out[i] - c
        return tuple(out)

    roots = list(simple)
    index = {r: k for k, r in enumerate(roots)}
    queue = deque(roots)
    while queue:
        v = queue.popleft()
        for i in range(n):
            u = reflect(i, v)
            if u not in index:
                if len(roots) >= max_roots:
                    raise UnsupportedType("root orbit is not finite at desk scale")
                index[u] = len(roots)
                roots.append(u)
                queue.append(u)
    gens = [tuple(index[reflect(i, r)] for r in roots) for i in range(n)]
    return gens, roots


_F4_CARTAN = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]


def _h3_cartan():
    two, one, zero = QSqrt5(2), QSqrt5(1), QSqrt5(0)
    phi = GOLDEN
    return [[two, -phi, zero], [-phi, two, -one], [zero, -one, two]]


def build_coxeter_system(ctype: CoxeterType, gamma_order: Sequence[int] | None = None
                         ) -> CoxeterSystem:
    """Enumerate the group of ``ctype``.

    ``gamma_order`` permutes the canonical simple generators; the Coxeter
    element is always the product of the stored generators in stored order.
    """
    if isinstance(ctype, str):
        ctype = CoxeterType.parse(ctype)
    n = ctype.rank
    order = list(range(n)) if gamma_order is None else list(gamma_order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"gamma_order must permute 0..{n - 1}, got {gamma_order!r}")

    roots = None
    fam = ctype.family
    if fam == "A":
        gens = [_transposition(n + 1, i, i + 1) for i in range(n)]
    elif fam in ("B", "D"):
        gens = _signed_generators(fam, n)
    elif fam == "I2":
        gens = _dihedral_generators(ctype.m)
    elif fam == "H3":
        gens, roots = _root_generators(_h3_cartan())
    elif fam == "F4":
        gens, roots = _root_generators([[Fraction(x) for x in row] for row in _F4_CARTAN])
    else:  # pragma: no cover - CoxeterType already validated
        raise UnsupportedType(str(ctype))

    system = CoxeterSystem(ctype, gens, order, roots)

    from .catalan import degrees  # local import: catalan depends on CoxeterType

    data = degrees(ctype)
    if data.group_order != system.group_order or data.num_reflections != system.num_reflections:
        raise AssertionError(
            f"{ctype}: built |W|={system.group_order}, N={system.num_reflections}; "
            f"degrees give {data.group_order}, {data.num_reflections}")
    return system
