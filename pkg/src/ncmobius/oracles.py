"""Independent cross-checks for absolute length.

The geometric (Tits) representation acts on the span of simple roots with
``s_i(a_j) = a_j + 2 cos(pi / m_ij) a_i``.  For every ``w`` the codimension
of its fixed space equals its absolute length.  Entries live in
``Q(cos(pi/m))``; sympy's algebraic fields keep the rank computation exact.
"""

from __future__ import annotations

import sympy as sp
from sympy.polys.matrices import DomainMatrix

from .coxeter import CoxeterSystem, GroupElement


def _field_and_cosines(coxeter_matrix):
    ms = {m for row in coxeter_matrix for m in row if m > 1}
    irrational = sorted(m for m in ms if m not in (2, 3))
    if irrational:
        K = sp.QQ.algebraic_field(*[sp.cos(sp.pi / m) for m in irrational])
    else:
        K = sp.QQ
    cos = {m: K.from_sympy(sp.cos(sp.pi / m)) for m in ms}
    return K, cos


def generator_matrices(system: CoxeterSystem) -> list[DomainMatrix]:
    M = system.coxeter_matrix()
    n = system.rank
    K, cos = _field_and_cosines(M)
    mats = []
    for i in range(n):
        rows = [[K.one if r == c else K.zero for c in range(n)] for r in range(n)]
        for j in range(n):
            # column j gains -2 B(a_i, a_j) in row i, B(a_i, a_i) = 1
            b = K.one if i == j else -cos[M[i][j]]
            rows[i][j] = rows[i][j] - 2 * b
        mats.append(DomainMatrix(rows, (n, n), K))
    return mats


def geometric_matrices(system: CoxeterSystem) -> dict[GroupElement, DomainMatrix]:
    gens = generator_matrices(system)
    n = system.rank
    K = gens[0].domain
    out = {system.identity: DomainMatrix.eye(n, K)}
    for w in system.elements[1:]:
        word = system.reduced_word(w)
        s = word[-1]
        prefix = w * system.simple_generators[s]
        out[w] = out[prefix] * gens[s]
    return out


def fixed_space_codimensions(system: CoxeterSystem) -> dict[GroupElement, int]:
    mats = geometric_matrices(system)
    n = system.rank
    K = next(iter(mats.values())).domain
    eye = DomainMatrix.eye(n, K)
    return {w: (m - eye).rank() for w, m in mats.items()}


def representation_is_faithful(system: CoxeterSystem) -> bool:
    mats = geometric_matrices(system)
    seen = {tuple(tuple(r) for r in m.to_list()) for m in mats.values()}
    return len(seen) == system.group_order
