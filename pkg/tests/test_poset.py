import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _oracles
from _posets import random_graded_poset
from ncmobius.coxeter import build_coxeter_system
from ncmobius.errors import CapExceeded, NoMinimum, NotBounded, NotComparable
from ncmobius.kdiv import build_nc_lower, build_nc_upper
from ncmobius.nc import build_nc
from ncmobius.poset import (
    BOTTOM,
    TOP,
    FinitePoset,
    adjoin_bottom,
    adjoin_top,
    chain_counts,
    dualize,
    interval,
    lemma_maxs_deletion_check,
    mobius_by_hall,
    mobius_number,
    remove_maximals,
    remove_minimals,
)


def chain(n):
    return FinitePoset.from_covers(list(range(n)), [(i, i + 1) for i in range(n - 1)])


def diamond():
    return FinitePoset.from_covers("0abz", [("0", "a"), ("0", "b"), ("a", "z"), ("b", "z")])


def test_construction_validates():
    with pytest.raises(ValueError):
        FinitePoset(["a", "b"], np.array([[1, 1], [1, 1]]))
    with pytest.raises(ValueError):
        FinitePoset.from_covers("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(ValueError):
        FinitePoset("abc", np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]]))  # not transitive


def test_adjoin_examples():
    P = FinitePoset([], np.zeros((0, 0), dtype=bool))
    assert len(adjoin_bottom(P)) == 1
    anti = FinitePoset("ab", np.eye(2, dtype=bool))
    Q = adjoin_bottom(anti)
    assert [(Q.elements[i], Q.elements[j]) for i, j in Q.covers] == [(BOTTOM, "a"), (BOTTOM, "b")]
    W = build_coxeter_system("A2")
    lower = build_nc_lower(W, 2)
    assert len(adjoin_top(lower)) == len(lower) + 1 == 13


def test_remove_examples():
    C = chain(3)
    assert remove_minimals(C) == FinitePoset.from_covers([1, 2], [(1, 2)])
    upper1 = build_nc_upper(build_coxeter_system("A2"), 1)
    assert len(remove_minimals(upper1)) == 4
    P = chain(5)
    for _ in range(5):
        P = remove_maximals(P)
    assert len(P) == 0


def test_removal_recomputes_covers():
    # a < b < d, a < c < d, plus a < e < d ; removing mins leaves b, c, e < d
    P = FinitePoset.from_covers("abcde", [("a", "b"), ("a", "c"), ("a", "e"),
                                          ("b", "d"), ("c", "d"), ("e", "d")])
    Q = remove_minimals(P)
    assert sorted((Q.elements[i], Q.elements[j]) for i, j in Q.covers) == \
        [("b", "d"), ("c", "d"), ("e", "d")]


def test_mobius_examples():
    assert mobius_number(chain(2)) == -1
    assert mobius_number(diamond()) == 1
    nc = build_nc(build_coxeter_system("A2"))
    assert mobius_number(nc.poset) == 2
    with pytest.raises(NotBounded):
        mobius_number(FinitePoset("ab", np.eye(2, dtype=bool)))


def test_mobius_against_brute_force_on_nc_a3():
    nc = build_nc(build_coxeter_system("A3"))
    P = nc.poset
    expected = _oracles.mobius_brute(list(P.elements), P.le)
    assert mobius_number(P) == expected == -5
    assert mobius_by_hall(P) == expected


def test_hall_examples():
    assert mobius_by_hall(chain(2)) == -1
    assert mobius_by_hall(diamond()) == 1
    assert mobius_by_hall(chain(1)) == 1
    assert chain_counts(diamond(), 0, 3) == [0, 1, 2]
    with pytest.raises(CapExceeded):
        mobius_by_hall(build_nc(build_coxeter_system("A3")).poset, cap=10)


def test_dualize_examples():
    C = chain(4)
    D = dualize(C)
    assert D.covers == [(1, 0), (2, 1), (3, 2)]
    assert dualize(D) == C
    top = adjoin_bottom(adjoin_top(build_nc_lower(build_coxeter_system("A2"), 2)))
    assert mobius_number(top) == mobius_number(dualize(top))


def test_interval_examples():
    nc = build_nc(build_coxeter_system("A2"))
    P = nc.poset
    e, g = nc.system.identity, nc.system.coxeter_element
    assert len(interval(P, e, e)) == 1
    assert interval(P, e, g) == P
    t = nc.system.reflections[0]
    with pytest.raises(NotComparable):
        interval(P, g, t)
    nc3 = build_nc(build_coxeter_system("A3"))
    w = next(x for x in nc3.poset.elements if nc3.system.absolute_length(x) == 2)
    I = interval(nc3.poset, nc3.system.identity, w)
    assert I.is_graded and I.rank == 2
    assert mobius_number(I) == mobius_by_hall(I)


def test_lemma_examples():
    assert lemma_maxs_deletion_check(chain(3)).equal
    r = lemma_maxs_deletion_check(build_nc_lower(build_coxeter_system("A2"), 2))
    assert r.equal and r.lhs == r.rhs
    r = lemma_maxs_deletion_check(build_nc_lower(build_coxeter_system("B2"), 3))
    assert r.equal
    with pytest.raises(NoMinimum):
        lemma_maxs_deletion_check(FinitePoset("ab", np.eye(2, dtype=bool)))


def test_lemma_degenerate_single_point():
    r = lemma_maxs_deletion_check(chain(1))
    assert (r.lhs, r.rhs, r.equal) == (1, 0, False)


def test_grading():
    assert chain(4).is_graded and chain(4).rank == 3
    # a < b < c and a < c' : maximal chains of different length
    P = FinitePoset.from_covers("abcd", [("a", "b"), ("b", "c"), ("a", "d")])
    assert not P.is_graded
    nc = build_nc(build_coxeter_system("B3"))
    assert nc.poset.is_graded and nc.poset.rank == 3


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_random_graded_posets(seed):
    rng = np.random.default_rng(seed)
    P = random_graded_poset(rng, unique_bottom=True)
    assert P.is_graded
    if len(P) >= 2:
        assert lemma_maxs_deletion_check(P).equal
    Q = adjoin_top(P)
    assert mobius_number(Q) == mobius_by_hall(Q) == mobius_number(dualize(Q))
    assert remove_minimals(adjoin_bottom(P)) == P
    assert dualize(dualize(P)) == P
    assert remove_maximals(P).is_graded


def test_json_and_dot_export():
    nc = build_nc(build_coxeter_system("A2"))
    d = json.loads(nc.poset.to_json(repr))
    assert set(d) == {"elements", "covers", "graded", "rank"}
    assert len(d["elements"]) == 5 and len(d["covers"]) == 6
    assert d["graded"] and d["rank"] == 2
    dot = nc.poset.to_dot(repr)
    assert dot.count("->") == 6 and "rank=same" in dot


def test_bounds_are_distinct_keys():
    assert BOTTOM != TOP
    P = adjoin_top(adjoin_bottom(chain(2)))
    assert P.elements[0] == BOTTOM and P.elements[-1] == TOP
