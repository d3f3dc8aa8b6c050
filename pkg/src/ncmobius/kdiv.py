"""k-divisible noncrossing partitions in both coordinate systems.

``NC^(k)(W)`` consists of multichains ``pi_1 <= ... <= pi_k <= gamma``, with
``(pi) <= (pi')`` when every quotient ``pi'_i^{-1} pi'_{i+1}`` lies below
``pi_i^{-1} pi_{i+1}`` (``pi_{k+1} = gamma``).  ``NC_(k)(W)`` consists of delta
sequences ordered componentwise.  The quotient map sends one to the other and
reverses order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalan import fuss_catalan
from .coxeter import CoxeterSystem, GroupElement
from .errors import ScaleExceeded
from .nc import NCLattice, build_nc
from .poset import FinitePoset, adjoin_bottom, adjoin_top, remove_maximals, remove_minimals

DEFAULT_MAX_ELEMENTS = 250_000


@dataclass(frozen=True)
class MultiChain:
    entries: tuple[GroupElement, ...]

    def __repr__(self):
        return "<" + ", ".join(map(repr, self.entries)) + ">"


@dataclass(frozen=True)
class DeltaSequence:
    entries: tuple[GroupElement, ...]

    def __repr__(self):
        return "(" + ", ".join(map(repr, self.entries)) + ")"


def _check_k(k: int):
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


def _precheck_scale(system: CoxeterSystem, k: int, max_elements: int):
    expected = fuss_catalan(system.ctype, k)
    if expected > max_elements:
        raise ScaleExceeded(f"{system.ctype}, k={k}: {expected} elements exceeds cap {max_elements}")


def enumerate_multichains(nc: NCLattice, k: int) -> list[MultiChain]:
    _check_k(k)
    P = nc.poset
    up = [np.nonzero(P.leq[i])[0].tolist() for i in range(len(P))]
    out = []

    def extend(prefix: list[int]):
        if len(prefix) == k:
            out.append(MultiChain(tuple(P.elements[i] for i in prefix)))
            return
        start = prefix[-1] if prefix else None
        for j in (range(len(P)) if start is None else up[start]):
            prefix.append(j)
            extend(prefix)
            prefix.pop()

    extend([])
    return out


def enumerate_delta_sequences(system: CoxeterSystem, k: int, nc: NCLattice | None = None,
                              reading: str = "partial_products") -> list[DeltaSequence]:
    """All delta sequences of length ``k``.

    ``reading="partial_products"`` requires every partial product
    ``d_1...d_i`` to lie in NC(W) besides length additivity;
    ``reading="literal"`` only asks each ``d_i`` to be in NC(W) and the
    lengths of partial products to add up.
    """
    _check_k(k)
    if reading not in ("partial_products", "literal"):
        raise ValueError(f"unknown reading {reading!r}")
    nc = nc or build_nc(system)
    gamma = system.coxeter_element
    ell = system.absolute_length
    members = nc.poset.elements
    out = []

    def extend(prefix: list[GroupElement], prod: GroupElement, length: int):
        if len(prefix) == k:
            out.append(DeltaSequence(tuple(prefix)))
            return
        for d in members:
            p = prod * d
            if ell(p) != length + ell(d):
                continue
            if reading == "partial_products" and not system.absolute_leq(p, gamma):
                continue
            prefix.append(d)
            extend(prefix, p, length + ell(d))
            prefix.pop()

    extend([], system.identity, 0)
    return out


def maximal_factorizations(system: CoxeterSystem, k: int,
                           max_elements: int = DEFAULT_MAX_ELEMENTS) -> list[DeltaSequence]:
    """Length-additive factorizations ``gamma = d_1 ... d_k`` (trivial factors allowed)."""
    _check_k(k)
    n = system.rank
    gamma = system.coxeter_element
    ell = system.absolute_length
    out = []

    def extend(prefix, prod, length):
        if len(out) > max_elements:
            raise ScaleExceeded(f"more than {max_elements} factorizations")
        if len(prefix) == k:
            if length == n and prod == gamma:
                out.append(DeltaSequence(tuple(prefix)))
            return
        for d in system.elements:
            ld = ell(d)
            if length + ld > n:
                continue
            p = prod * d
            if ell(p) != length + ld:
                continue
            prefix.append(d)
            extend(prefix, p, length + ld)
            prefix.pop()

    extend([], system.identity, 0)
    return out


def _quotient_table(nc: NCLattice) -> dict[tuple[int, int], int]:
    """``(i, j) -> index of x_i^{-1} x_j`` for ``x_i <= x_j`` in NC(W)."""
    P = nc.poset
    table = {}
    for i, j in zip(*np.nonzero(P.leq)):
        q = P.elements[i].inverse() * P.elements[j]
        table[(int(i), int(j))] = P.index[q]
    return table


def build_nc_upper(system: CoxeterSystem, k: int, max_elements: int = DEFAULT_MAX_ELEMENTS,
                   nc: NCLattice | None = None) -> FinitePoset:
    """``NC^(k)(W)`` on multichains."""
    _check_k(k)
    _precheck_scale(system, k, max_elements)
    nc = nc or build_nc(system)
    chains = enumerate_multichains(nc, k)
    if len(chains) > max_elements:
        raise ScaleExceeded(f"{len(chains)} multichains exceeds cap {max_elements}")
    P = nc.poset
    quot = _quotient_table(nc)
    g = P.index[system.coxeter_element]
    idx = np.array([[P.index[x] for x in mc.entries] + [g] for mc in chains], dtype=np.int64)
    L = P.leq
    leq = np.ones((len(chains), len(chains)), dtype=bool)
    for i in range(k):
        q = np.array([quot[(a, b)] for a, b in zip(idx[:, i], idx[:, i + 1])], dtype=np.int64)
        # x <= y  iff  q_i(y) <= q_i(x) for every i
        leq &= L[np.ix_(q, q)].T
    return FinitePoset(chains, leq, check=False)


def build_nc_lower(system: CoxeterSystem, k: int, max_elements: int = DEFAULT_MAX_ELEMENTS,
                   nc: NCLattice | None = None) -> FinitePoset:
    """``NC_(k)(W)`` on delta sequences, ordered componentwise."""
    _check_k(k)
    _precheck_scale(system, k, max_elements)
    nc = nc or build_nc(system)
    seqs = enumerate_delta_sequences(system, k, nc)
    if len(seqs) > max_elements:
        raise ScaleExceeded(f"{len(seqs)} delta sequences exceeds cap {max_elements}")
    P = nc.poset
    idx = np.array([[P.index[d] for d in s.entries] for s in seqs], dtype=np.int64)
    leq = np.ones((len(seqs), len(seqs)), dtype=bool)
    for i in range(k):
        leq &= P.leq[np.ix_(idx[:, i], idx[:, i])]
    return FinitePoset(seqs, leq, check=False)


DUALITY_VARIANTS = ("quotient", "reversed_quotient")


def duality_map(mc: MultiChain, system: CoxeterSystem, variant: str = "quotient") -> DeltaSequence:
    """``d_i = pi_i^{-1} pi_{i+1}`` with ``pi_{k+1} = gamma`` (optionally reversed)."""
    pis = list(mc.entries) + [system.coxeter_element]
    ds = [pis[i].inverse() * pis[i + 1] for i in range(len(mc.entries))]
    if variant == "reversed_quotient":
        ds.reverse()
    elif variant != "quotient":
        raise ValueError(f"unknown duality variant {variant!r}")
    return DeltaSequence(tuple(ds))


def inverse_duality_map(ds: DeltaSequence, system: CoxeterSystem,
                        variant: str = "quotient") -> MultiChain:
    d = list(ds.entries)
    if variant == "reversed_quotient":
        d.reverse()
    pi1 = system.coxeter_element * system.product(d).inverse()
    pis = [pi1]
    for x in d[:-1]:
        pis.append(pis[-1] * x)
    return MultiChain(tuple(pis))


def is_order_reversing_bijection(upper: FinitePoset, lower: FinitePoset, system: CoxeterSystem,
                                 variant: str) -> bool:
    if len(upper) != len(lower):
        return False
    image = [duality_map(mc, system, variant) for mc in upper.elements]
    if set(image) != set(lower.elements):
        return False
    perm = np.array([lower.index[d] for d in image], dtype=np.int64)
    # upper x <= y  iff  lower f(y) <= f(x)
    return bool(np.array_equal(upper.leq, lower.leq[np.ix_(perm, perm)].T))


def select_duality_variant(system: CoxeterSystem, k: int, upper: FinitePoset | None = None,
                           lower: FinitePoset | None = None) -> str:
    """The first variant of the quotient map that is verified order-reversing."""
    upper = upper if upper is not None else build_nc_upper(system, k)
    lower = lower if lower is not None else build_nc_lower(system, k)
    for variant in DUALITY_VARIANTS:
        if is_order_reversing_bijection(upper, lower, system, variant):
            return variant
    raise AssertionError(f"{system.ctype}, k={k}: no duality variant reverses order")


def theorem_poset_upper(system: CoxeterSystem, k: int, max_elements: int = DEFAULT_MAX_ELEMENTS,
                        nc: NCLattice | None = None, upper: FinitePoset | None = None
                        ) -> FinitePoset:
    """``NC^(k)(W)`` minus its minimal elements, plus a bottom."""
    upper = upper if upper is not None else build_nc_upper(system, k, max_elements, nc)
    return adjoin_bottom(remove_minimals(upper))


def theorem_poset_lower(system: CoxeterSystem, k: int, max_elements: int = DEFAULT_MAX_ELEMENTS,
                        nc: NCLattice | None = None, lower: FinitePoset | None = None
                        ) -> FinitePoset:
    """``NC_(k)(W)`` minus its maximal elements, plus a top."""
    lower = lower if lower is not None else build_nc_lower(system, k, max_elements, nc)
    return adjoin_top(remove_maximals(lower))


def is_order_ideal_of_product(lower: FinitePoset, nc: NCLattice) -> bool:
    """Whether the delta sequences form a down-set of ``NC(W)^k``.

    Checked through lower covers: every tuple obtained by moving one
    coordinate down a cover of NC(W) must again be present.
    """
    P = nc.poset
    present = set(lower.elements)
    for ds in lower.elements:
        for i, d in enumerate(ds.entries):
            for c in P.lower_covers[P.index[d]]:
                entries = list(ds.entries)
                entries[i] = P.elements[c]
                if DeltaSequence(tuple(entries)) not in present:
                    return False
    return True
