"""Edge labelings, rising/falling chains and EL-labelings.

Labels are stored as positions in a :class:`LabelSet`, so comparing labels is
comparing integers.  Chain censuses are done by dynamic programming over the
Hasse diagram; :func:`iter_maximal_chains` enumerates lazily when the chains
themselves are wanted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Hashable, Iterator, Sequence

import numpy as np

from .errors import MalformedCover, NoMinimum, NotBounded, NotGraded, NotUnrefinable
from .poset import TOP, Bound, FinitePoset, mobius_from

THETA = "θ"


@dataclass(frozen=True)
class LabelSet:
    """A totally ordered label set; earlier means smaller."""

    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        object.__setattr__(self, "_pos", {lab: i for i, lab in enumerate(self.labels)})

    def position(self, label) -> int:
        return self._pos[label]

    def __len__(self):
        return len(self.labels)


@dataclass
class EdgeLabeling:
    """Map from the covers of ``poset`` to positions in ``label_set``."""

    poset: FinitePoset
    label_set: LabelSet
    values: dict[tuple[int, int], int] = field(repr=False)

    def __post_init__(self):
        missing = [c for c in self.poset.covers if c not in self.values]
        if missing:
            raise ValueError(f"labeling is not defined on covers {missing[:5]}")

    def __call__(self, i: int, j: int) -> int:
        return self.values[(i, j)]

    def label(self, i: int, j: int):
        return self.label_set.labels[self.values[(i, j)]]

    def to_json_dict(self, render=str) -> dict:
        P = self.poset
        return {
            "labels": [str(lab) for lab in self.label_set.labels],
            "elements": [render(x) for x in P.elements],
            "edges": [[i, j, self.values[(i, j)]] for i, j in P.covers],
        }


def chain_label_word(labeling: EdgeLabeling, chain: Sequence[Hashable]) -> list[int]:
    P = labeling.poset
    idx = [P.index[x] for x in chain]
    word = []
    for a, b in zip(idx, idx[1:]):
        if not P.cover_matrix[a, b]:
            raise NotUnrefinable(f"{P.elements[a]!r} is not covered by {P.elements[b]!r}")
        word.append(labeling(a, b))
    return word


def is_rising(word: Sequence) -> bool:
    return all(a < b for a, b in zip(word, word[1:]))


def is_falling(word: Sequence) -> bool:
    return all(a >= b for a, b in zip(word, word[1:]))


def iter_maximal_chains(P: FinitePoset, lo: int | None = None,
                        hi: int | None = None) -> Iterator[list[int]]:
    """Yield unrefinable chains from ``lo`` to ``hi`` (indices), depth first."""
    lo = P.bottom if lo is None else lo
    hi = P.top if hi is None else hi
    if lo is None or hi is None:
        raise NotBounded("need both endpoints")
    below_hi = P.leq[:, hi]
    stack = [(lo, [lo])]
    while stack:
        x, path = stack.pop()
        if x == hi:
            yield path
            continue
        for y in reversed(P.upper_covers[x]):
            if below_hi[y]:
                stack.append((y, path + [y]))


@dataclass
class ELResult:
    ok: bool
    witness: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> str:
        return json.dumps({"ok": self.ok, "witness": self.witness}, indent=1)


def _witness(P: FinitePoset, labeling: EdgeLabeling, u: int, v: int,
             rising_count: int, lexmin: tuple, limit: int = 200) -> dict:
    chains = []
    for chain in iter_maximal_chains(P, u, v):
        word = [labeling(a, b) for a, b in zip(chain, chain[1:])]
        chains.append({"chain": [repr(P.elements[c]) for c in chain], "word": word,
                       "rising": is_rising(word)})
        if len(chains) >= limit:
            break
    return {
        "interval": [repr(P.elements[u]), repr(P.elements[v])],
        "rising_count": rising_count,
        "lex_smallest_word": list(lexmin),
        "lex_smallest_is_rising": is_rising(lexmin),
        "chains": chains,
    }


def is_el_labeling(P: FinitePoset, labeling: EdgeLabeling) -> ELResult:
    """Check the EL conditions on every nonsingleton interval of ``P``.

    For a fixed lower end ``u`` one pass over the up-set of ``u`` yields, for
    every ``v >= u``, the lexicographically smallest word of ``[u, v]`` and
    the number of rising maximal chains (capped at 2).  Intervals in a graded
    poset have chains of equal length, so words compare positionwise.
    """
    if not P.is_graded:
        raise NotGraded("EL-labelings are only defined here for graded posets")
    lab = labeling.values
    low = P.lower_covers
    order = np.array(P.linear_extension, dtype=np.int64)
    for u in range(len(P)):
        nodes = order[P.leq[u, order]].tolist()
        inside = set(nodes)
        best: dict[int, tuple] = {u: ()}
        # rising[x]: last label -> number of rising chains u..x ending with it
        rising: dict[int, dict[int, int]] = {u: {}}
        for x in nodes:
            if x == u:
                continue
            bw = None
            rc: dict[int, int] = {}
            for y in low[x]:
                if y not in inside:
                    continue
                lbl = lab[(y, x)]
                w = best[y] + (lbl,)
                if bw is None or w < bw:
                    bw = w
                if y == u:
                    cnt = 1
                else:
                    cnt = sum(c for last, c in rising[y].items() if last < lbl)
                if cnt:
                    rc[lbl] = min(2, rc.get(lbl, 0) + cnt)
            best[x] = bw
            rising[x] = rc
            total = sum(rc.values())
            if total != 1 or not is_rising(bw):
                return ELResult(False, _witness(P, labeling, u, x, min(total, 2), bw))
    return ELResult(True)


def _falling_by_last_label(P: FinitePoset, labeling: EdgeLabeling,
                           lo: int, hi: int) -> dict[int, int]:
    """Falling chains ``lo..hi`` grouped by their last label."""
    lab = labeling.values
    inside = P.leq[lo] & P.leq[:, hi]
    falling: dict[int, dict[int, int]] = {lo: {}}
    for x in P.linear_extension:
        if x == lo or not inside[x]:
            continue
        fc: dict[int, int] = {}
        for y in P.lower_covers[x]:
            if not inside[y]:
                continue
            lbl = lab[(y, x)]
            cnt = 1 if y == lo else sum(c for last, c in falling[y].items() if last >= lbl)
            if cnt:
                fc[lbl] = fc.get(lbl, 0) + cnt
        falling[x] = fc
    return falling[hi]


def count_falling_chains_between(P: FinitePoset, labeling: EdgeLabeling,
                                 lo: int, hi: int) -> int:
    """Number of unrefinable chains from ``lo`` to ``hi`` with weakly decreasing words."""
    if lo == hi:
        return 1
    return sum(_falling_by_last_label(P, labeling, lo, hi).values())


def count_falling_maximal_chains(P: FinitePoset, labeling: EdgeLabeling) -> int:
    if not P.is_graded:
        raise NotGraded("poset is not graded")
    lo, hi = P.bottom, P.top
    if lo is None or hi is None:
        raise NotBounded("poset is not bounded")
    return count_falling_chains_between(P, labeling, lo, hi)


# -- the lex-ABW labeling of NC_(k)(W) with a top adjoined ---------------------------

def lex_abw_label_set(order, k: int) -> LabelSet:
    """``t_{1,1} < ... < t_{1,N} < theta < t_{2,1} < ... < t_{k,N}``."""
    N = len(order)
    labels = [f"t1,{j}" for j in range(1, N + 1)] + [THETA]
    for i in range(2, k + 1):
        labels += [f"t{i},{j}" for j in range(1, N + 1)]
    return LabelSet(tuple(labels))


def lex_abw_position(block: int, j: int, num_reflections: int) -> int:
    """Position of ``t_{block, j}`` (both 1-based in the label order)."""
    if block == 1:
        return j - 1
    return (block - 1) * num_reflections + j


def lex_abw_labeling(P: FinitePoset, order) -> EdgeLabeling:
    """Label ``NC_(k)(W)`` with a top adjoined.

    A cover that changes coordinate ``i`` from ``d`` to ``d'`` gets
    ``t_{i,j}`` where ``t_j = d^{-1} d'`` in ``order``; covers into the top get
    the separator label.
    """
    keys = [x for x in P.elements if not isinstance(x, Bound)]
    if not keys:
        raise MalformedCover("poset has no delta sequences")
    k = len(keys[0].entries)
    N = len(order)
    values = {}
    theta = N
    for a, b in P.covers:
        x, y = P.elements[a], P.elements[b]
        if y == TOP:
            values[(a, b)] = theta
            continue
        if isinstance(x, Bound) or isinstance(y, Bound):
            raise MalformedCover(f"unexpected formal element in cover {x!r} < {y!r}")
        diff = [i for i in range(k) if x.entries[i] != y.entries[i]]
        if len(diff) != 1:
            raise MalformedCover(f"cover {x!r} < {y!r} changes {len(diff)} coordinates")
        i = diff[0]
        t = x.entries[i].inverse() * y.entries[i]
        try:
            j = order.position(t) + 1
        except KeyError:
            raise MalformedCover(f"cover {x!r} < {y!r} is not labeled by a reflection") from None
        values[(a, b)] = lex_abw_position(i + 1, j, N)
    return EdgeLabeling(P, lex_abw_label_set(order, k), values)


def falling_chain_decomposition(P: FinitePoset, nc, order) -> dict:
    """Falling-chain counts of ``P = NC_(k)(W) + top`` assembled coordinate-wise.

    A falling maximal chain ends with the separator label, so every earlier
    label lies in a block ``>= 2``: the first coordinate stays ``e`` and the
    chain fills coordinates ``k, k-1, ..., 2`` in turn, each by a falling
    chain of ``NC(W)``.  Returns ``{maximal delta sequence: count}``.
    """
    top = P.top
    if top is None or P.elements[top] != TOP:
        raise NotBounded("expected NC_(k)(W) with a formal top adjoined")
    labeling = natural_labeling_of(nc.poset, order)
    e_idx = nc.poset.index[nc.system.identity]
    falling_nc = {w: count_falling_chains_between(nc.poset, labeling, e_idx, i)
                  for i, w in enumerate(nc.poset.elements)}
    out = {}
    for m in P.lower_covers[top]:
        x = P.elements[m]
        if not x.entries[0].is_identity():
            out[x] = 0
            continue
        count = 1
        for d in x.entries[1:]:
            count *= falling_nc[d]
        out[x] = count
    return out


def falling_chain_decomposition_census(P: FinitePoset, nc, order) -> int:
    return sum(falling_chain_decomposition(P, nc, order).values())


def natural_labeling_of(P: FinitePoset, order) -> EdgeLabeling:
    """Label each cover ``x < y`` of a poset of group elements by ``x^{-1} y``."""
    values = {}
    for a, b in P.covers:
        x, y = P.elements[a], P.elements[b]
        values[(a, b)] = order.position(x.inverse() * y)
    return EdgeLabeling(P, order.label_set(), values)


def falling_chain_delta_one_is_identity(P: FinitePoset, labeling: EdgeLabeling) -> bool:
    """Every falling maximal chain of ``NC_(k)(W) + top`` passes through a
    maximal element whose first coordinate is ``e``.

    Checked by counting falling chains from the bottom to each maximal element
    and keeping those whose last step into the top is still weakly decreasing.
    """
    lo, top = P.bottom, P.top
    for m in P.lower_covers[top]:
        if P.elements[m].entries[0].is_identity():
            continue
        theta = labeling(m, top)
        ends = _falling_by_last_label(P, labeling, lo, m)
        if any(c for last, c in ends.items() if last >= theta):
            return False
    return True


# -- Moebius sums over factorizations ---------------------------------------------------

def sum_mobius_to_maxs(P: FinitePoset) -> int:
    """Sum of ``mu(0^, x)`` over the maximal elements ``x``."""
    lo = P.bottom
    if lo is None:
        raise NoMinimum("poset has no unique minimum")
    mu = mobius_from(P, lo)
    return sum(mu[x] for x in P.maximal)


def factorization_mobius_sum(system, j: int, nc=None, max_elements: int | None = None) -> int:
    """Sum over length-additive factorizations ``gamma = d_1 ... d_j`` of
    ``prod mu([e, d_i])``, intervals taken in ``NC(W)``."""
    from .kdiv import DEFAULT_MAX_ELEMENTS, maximal_factorizations
    from .nc import build_nc

    nc = nc or build_nc(system)
    mu = mobius_from(nc.poset, nc.poset.index[system.identity])
    mu_of = {w: mu[i] for i, w in enumerate(nc.poset.elements)}
    total = 0
    cap = DEFAULT_MAX_ELEMENTS if max_elements is None else max_elements
    for ds in maximal_factorizations(system, j, max_elements=cap):
        term = 1
        for d in ds.entries:
            term *= mu_of[d]
        total += term
    return total
