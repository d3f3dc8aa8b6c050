"""The noncrossing partition lattice NC(W) = [e, gamma] in absolute order."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .coxeter import CoxeterSystem, GroupElement
from .errors import SearchExhausted
from .poset import FinitePoset
from .shelling import EdgeLabeling, LabelSet, is_el_labeling, natural_labeling_of

SEARCH_BUDGET = 10**7


@dataclass(frozen=True)
class NCLattice:
    system: CoxeterSystem
    poset: FinitePoset

    @property
    def elements(self) -> tuple[GroupElement, ...]:
        return self.poset.elements

    @property
    def natural_labels(self) -> dict[tuple[int, int], GroupElement]:
        """Reflection ``x^{-1} y`` on each cover ``(x, y)`` (by index)."""
        P = self.poset
        return {(i, j): P.elements[i].inverse() * P.elements[j] for i, j in P.covers}


class ReflectionOrder:
    """A total order ``t_1 < ... < t_N`` on the reflections of a system."""

    def __init__(self, system: CoxeterSystem, reflections: Iterable[GroupElement]):
        self.system = system
        self.reflections = tuple(reflections)
        if set(self.reflections) != set(system.reflections) or \
                len(self.reflections) != system.num_reflections:
            raise ValueError("a reflection order must list every reflection exactly once")
        self._pos = {t: i for i, t in enumerate(self.reflections)}

    def position(self, t: GroupElement) -> int:
        return self._pos[t]

    def __len__(self):
        return len(self.reflections)

    def __eq__(self, other):
        return isinstance(other, ReflectionOrder) and other.reflections == self.reflections

    def __hash__(self):
        return hash(self.reflections)

    def label_set(self) -> LabelSet:
        return LabelSet(tuple(repr(t) for t in self.reflections))

    def canonical_indices(self) -> tuple[int, ...]:
        """The order as indices into ``system.reflections``."""
        canon = {t: i for i, t in enumerate(self.system.reflections)}
        return tuple(canon[t] for t in self.reflections)

    def __repr__(self):
        return "ReflectionOrder(" + " < ".join(map(repr, self.reflections)) + ")"


def build_nc(system: CoxeterSystem) -> NCLattice:
    gamma = system.coxeter_element
    members = [w for w in system.elements if system.absolute_leq(w, gamma)]
    members.sort(key=lambda w: (system.absolute_length(w), w.perm))
    P = FinitePoset.from_relation(members, system.absolute_leq)
    return NCLattice(system, P)


def natural_labeling(nc: NCLattice, order: ReflectionOrder) -> EdgeLabeling:
    return natural_labeling_of(nc.poset, order)


def coxeter_sorting_order(system: CoxeterSystem) -> ReflectionOrder:
    """Reflection order read off the leftmost reduced word of ``w0`` inside
    ``gamma^infinity``.

    The word ``s_{i1} s_{i2} ... s_{iN}`` gives ``t_j = s_{i1}...s_{ij}...s_{i1}``.
    """
    S = system.simple_generators
    N = system.num_reflections
    w = system.identity
    word: list[int] = []
    for step in itertools.count():
        if len(word) == N:
            break
        i = step % len(S)
        ws = w * S[i]
        if system.coxeter_length(ws) > system.coxeter_length(w):
            word.append(i)
            w = ws
    refl = []
    prefix = system.identity
    for i in word:
        refl.append(prefix * S[i] * prefix.inverse())
        prefix = prefix * S[i]
    return ReflectionOrder(system, refl)


def _candidate_orders(system: CoxeterSystem) -> Iterator[ReflectionOrder]:
    first = coxeter_sorting_order(system)
    yield first
    yield ReflectionOrder(system, reversed(first.reflections))
    for perm in itertools.permutations(system.reflections):
        yield ReflectionOrder(system, perm)


def find_el_reflection_order(nc: NCLattice, budget: int = SEARCH_BUDGET) -> ReflectionOrder:
    """A reflection order under which the natural labeling of ``nc`` is EL.

    Candidates are tried in a fixed sequence: the order coming from the
    sorting word of the longest element, its reverse, then every permutation
    of the reflections in lexicographic order.  The EL checker decides.
    """
    for calls, order in enumerate(_candidate_orders(nc.system), start=1):
        if calls > budget:
            break
        if is_el_labeling(nc.poset, natural_labeling(nc, order)):
            return order
    raise SearchExhausted(f"no EL reflection order for {nc.system.ctype} within {budget} checks")


def all_el_reflection_orders(nc: NCLattice) -> list[ReflectionOrder]:
    """Every EL-inducing reflection order, by exhaustive search (tiny N only)."""
    out = []
    for perm in itertools.permutations(nc.system.reflections):
        order = ReflectionOrder(nc.system, perm)
        if is_el_labeling(nc.poset, natural_labeling(nc, order)):
            out.append(order)
    return out


def labeled_dot(nc: NCLattice, order: ReflectionOrder) -> str:
    """Hasse diagram of NC(W); edges carry the reflection and its order index."""
    P = nc.poset

    def edge_label(i, j):
        t = P.elements[i].inverse() * P.elements[j]
        return f"{t!r} #{order.position(t) + 1}"

    return P.to_dot(render=repr, edge_label=edge_label, name="nc")
