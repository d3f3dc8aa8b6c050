"""Finite posets stored as reachability matrices.

A :class:`FinitePoset` keeps its order relation as a boolean ``leq`` matrix
over element indices.  Covers, ranks and extremal elements are derived
lazily.  All surgery (intervals, removing extremal elements, adjoining bounds)
produces a new poset whose covers are recomputed by transitive reduction.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

import numpy as np

from .errors import CapExceeded, NoMinimum, NotBounded, NotComparable, NotGraded


class Bound:
    """A formally adjoined bottom or top element."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __eq__(self, other):
        return isinstance(other, Bound) and other.name == self.name

    def __hash__(self):
        return hash(("Bound", self.name))

    def __repr__(self):
        return self.name


BOTTOM = Bound("0^")
TOP = Bound("1^")


def _closure(adj: np.ndarray) -> np.ndarray:
    n = adj.shape[0]
    reach = adj | np.eye(n, dtype=bool)
    while True:
        r = reach.astype(np.float32)
        nxt = (r @ r) > 0
        if np.array_equal(nxt, reach):
            return reach
        reach = nxt


class FinitePoset:
    def __init__(self, elements: Sequence[Hashable], leq: np.ndarray, check: bool = True):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("poset elements must be distinct")
        leq = np.asarray(leq, dtype=bool)
        n = len(self.elements)
        if leq.shape != (n, n):
            raise ValueError(f"relation has shape {leq.shape}, expected {(n, n)}")
        if check and n:
            if not leq.diagonal().all():
                raise ValueError("relation is not reflexive")
            if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
                raise ValueError("relation is not antisymmetric")
            lf = leq.astype(np.float32)
            if np.any(((lf @ lf) > 0) & ~leq):
                raise ValueError("relation is not transitive")
        leq = leq.copy()
        leq.flags.writeable = False
        self.leq = leq

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_covers(cls, elements: Sequence[Hashable],
                    covers: Iterable[tuple[Hashable, Hashable]]) -> FinitePoset:
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        adj = np.zeros((len(elements), len(elements)), dtype=bool)
        for x, y in covers:
            adj[index[x], index[y]] = True
        reach = _closure(adj)
        if np.any(reach & reach.T & ~np.eye(len(elements), dtype=bool)):
            raise ValueError("cover relation has a cycle")
        return cls(elements, reach, check=False)

    @classmethod
    def from_relation(cls, elements: Sequence[Hashable],
                      leq: Callable[[Hashable, Hashable], bool]) -> FinitePoset:
        elements = tuple(elements)
        mat = np.array([[leq(x, y) for y in elements] for x in elements], dtype=bool)
        return cls(elements, mat.reshape(len(elements), len(elements)))

    # -- basic structure ------------------------------------------------------
    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.leq, other.leq)

    def __repr__(self):
        return f"FinitePoset(size={len(self)}, covers={len(self.covers)})"

    def le(self, x, y) -> bool:
        return bool(self.leq[self.index[x], self.index[y]])

    @cached_property
    def lt(self) -> np.ndarray:
        return self.leq & ~np.eye(len(self), dtype=bool)

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        lt = self.lt
        f = lt.astype(np.float32)
        return lt & ~((f @ f) > 0)

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs ``(i, j)`` with ``i`` covered by ``j``, as indices."""
        xs, ys = np.nonzero(self.cover_matrix)
        return sorted(zip(xs.tolist(), ys.tolist()))

    @cached_property
    def lower_covers(self) -> list[list[int]]:
        out = [[] for _ in range(len(self))]
        for i, j in self.covers:
            out[j].append(i)
        return out

    @cached_property
    def upper_covers(self) -> list[list[int]]:
        out = [[] for _ in range(len(self))]
        for i, j in self.covers:
            out[i].append(j)
        return out

    @cached_property
    def linear_extension(self) -> list[int]:
        below = self.leq.sum(axis=0)
        return sorted(range(len(self)), key=lambda i: (int(below[i]), i))

    @cached_property
    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.lt[:, i].any()]

    @cached_property
    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.lt[i, :].any()]

    @property
    def bottom(self) -> int | None:
        return self.minimal[0] if len(self.minimal) == 1 and self.leq[self.minimal[0]].all() else None

    @property
    def top(self) -> int | None:
        return self.maximal[0] if len(self.maximal) == 1 and self.leq[:, self.maximal[0]].all() else None

    @property
    def is_bounded(self) -> bool:
        return self.bottom is not None and self.top is not None

    @cached_property
    def ranks(self) -> list[int]:
        """Length of the longest chain from a minimal element to each element."""
        r = [0] * len(self)
        for y in self.linear_extension:
            low = self.lower_covers[y]
            if low:
                r[y] = max(r[x] for x in low) + 1
        return r

    @cached_property
    def is_graded(self) -> bool:
        r = self.ranks
        if any(r[j] != r[i] + 1 for i, j in self.covers):
            return False
        return len({r[i] for i in self.maximal}) <= 1

    @property
    def rank(self) -> int:
        if not self.is_graded:
            raise NotGraded("poset is not graded")
        return max(self.ranks, default=0)

    def induced(self, indices: Iterable[int]) -> FinitePoset:
        idx = sorted(set(indices))
        sub = self.leq[np.ix_(idx, idx)]
        return FinitePoset([self.elements[i] for i in idx], sub, check=False)

    # -- export -------------------------------------------------------------------
    def to_json_dict(self, render: Callable[[Hashable], object] = str) -> dict:
        graded = self.is_graded
        return {
            "elements": [render(x) for x in self.elements],
            "covers": [[i, j] for i, j in self.covers],
            "graded": graded,
            "rank": self.rank if graded else None,
        }

    def to_json(self, render: Callable[[Hashable], object] = str) -> str:
        return json.dumps(self.to_json_dict(render), indent=1)

    def to_dot(self, render: Callable[[Hashable], str] = str,
               edge_label: Callable[[int, int], str] | None = None,
               name: str = "hasse") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
        for i, x in enumerate(self.elements):
            lines.append(f"  n{i} [label={json.dumps(str(render(x)))}];")
        by_rank: dict[int, list[int]] = {}
        for i, r in enumerate(self.ranks):
            by_rank.setdefault(r, []).append(i)
        for r in sorted(by_rank):
            members = " ".join(f"n{i};" for i in by_rank[r])
            lines.append(f"  {{ rank=same; {members} }}")
        for i, j in self.covers:
            if edge_label is None:
                lines.append(f"  n{i} -> n{j};")
            else:
                lines.append(f"  n{i} -> n{j} [label={json.dumps(edge_label(i, j))}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- surgery ------------------------------------------------------------------------

def adjoin_bottom(P: FinitePoset, key: Hashable = BOTTOM) -> FinitePoset:
    n = len(P)
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[0, :] = True
    leq[1:, 1:] = P.leq
    return FinitePoset((key,) + P.elements, leq, check=False)


def adjoin_top(P: FinitePoset, key: Hashable = TOP) -> FinitePoset:
    n = len(P)
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[:, n] = True
    leq[:n, :n] = P.leq
    return FinitePoset(P.elements + (key,), leq, check=False)


def remove_minimals(P: FinitePoset) -> FinitePoset:
    drop = set(P.minimal)
    return P.induced(i for i in range(len(P)) if i not in drop)


def remove_maximals(P: FinitePoset) -> FinitePoset:
    drop = set(P.maximal)
    return P.induced(i for i in range(len(P)) if i not in drop)


def dualize(P: FinitePoset) -> FinitePoset:
    return FinitePoset(P.elements, P.leq.T, check=False)


def interval(P: FinitePoset, x: Hashable, y: Hashable) -> FinitePoset:
    i, j = P.index[x], P.index[y]
    if not P.leq[i, j]:
        raise NotComparable(f"{x!r} is not below {y!r}")
    members = np.nonzero(P.leq[i, :] & P.leq[:, j])[0]
    return P.induced(members.tolist())


# -- Moebius numbers ---------------------------------------------------------------

def mobius_from(P: FinitePoset, x: int) -> dict[int, int]:
    """``mu(x, y)`` for every ``y >= x``, by the defining recursion."""
    lt = P.lt
    mu = np.zeros(len(P), dtype=np.int64)
    up = P.leq[x]
    for y in P.linear_extension:
        if not up[y]:
            continue
        if y == x:
            mu[y] = 1
        else:
            mu[y] = -mu[lt[:, y] & up].sum()
    return {int(y): int(mu[y]) for y in np.nonzero(up)[0]}


def _require_bounded(P: FinitePoset) -> tuple[int, int]:
    lo, hi = P.bottom, P.top
    if lo is None or hi is None:
        raise NotBounded("poset needs a unique minimum and a unique maximum")
    return lo, hi


def mobius_number(P: FinitePoset) -> int:
    """``mu(0^, 1^)`` of a bounded poset."""
    lo, hi = _require_bounded(P)
    return mobius_from(P, lo)[hi]


def chain_counts(P: FinitePoset, lo: int, hi: int, cap: int | None = None) -> list[int]:
    """``c[i]`` = number of chains ``lo = x0 < x1 < ... < xi = hi``.

    Counted by dynamic programming over the strict order; ``cap`` bounds the
    total number of chains and raises :class:`CapExceeded` past it.
    """
    n = len(P)
    if lo == hi:
        return [1]
    height = max(P.ranks) + 1 if n else 1
    # entries are bounded by n**steps; switch to Python ints if int64 could overflow
    dtype = np.int64 if n ** (height + 1) < 2 ** 62 else object
    lt = P.lt.astype(dtype)
    v = np.zeros(n, dtype=dtype)
    v[lo] = 1
    counts = [0]
    total = 0
    while True:
        v = v @ lt
        if not v.any():
            break
        c = int(v[hi])
        counts.append(c)
        total += c
        if cap is not None and total > cap:
            raise CapExceeded(f"more than {cap} chains")
    return counts


def mobius_by_hall(P: FinitePoset, cap: int | None = None) -> int:
    """Moebius number as the alternating sum of chain counts."""
    lo, hi = _require_bounded(P)
    return sum((-1) ** i * c for i, c in enumerate(chain_counts(P, lo, hi, cap)))


class LemmaCheck(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def lemma_maxs_deletion_check(P: FinitePoset) -> LemmaCheck:
    """Compare ``mu(P - maxs + 1^)`` with ``mu(P + 1^) + sum mu(0^, x)`` over maxs.

    Both sides are computed from scratch.  ``P`` needs a unique minimum; when
    ``P`` is a single point the two sides differ (1 versus 0).
    """
    lo = P.bottom
    if lo is None:
        raise NoMinimum("poset has no unique minimum")
    lhs = mobius_number(adjoin_top(remove_maximals(P)))
    rhs = mobius_number(adjoin_top(P))
    for x in P.maximal:
        rhs += mobius_number(interval(P, P.elements[lo], P.elements[x]))
    return LemmaCheck(lhs, rhs, lhs == rhs)
