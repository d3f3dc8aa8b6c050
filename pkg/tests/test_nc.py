import itertools

import pytest

import _oracles
from ncmobius.catalan import fuss_catalan
from ncmobius.coxeter import build_coxeter_system
from ncmobius.errors import SearchExhausted
from ncmobius.nc import (
    ReflectionOrder,
    all_el_reflection_orders,
    build_nc,
    coxeter_sorting_order,
    find_el_reflection_order,
    labeled_dot,
    natural_labeling,
)
from ncmobius.shelling import chain_label_word, is_el_labeling, is_rising, iter_maximal_chains


@pytest.fixture(scope="module")
def nc_a2():
    return build_nc(build_coxeter_system("A2"))


def test_a1():
    nc = build_nc(build_coxeter_system("A1"))
    assert len(nc.poset) == 2 and len(nc.poset.covers) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_type_a_against_cycle_oracle(n):
    nc = build_nc(build_coxeter_system(f"A{n}"))
    assert {w.perm for w in nc.poset.elements} == set(_oracles.sym_nc(n + 1))
    assert len(nc.poset) == _oracles.count_noncrossing_partitions(n + 1)


@pytest.mark.parametrize("name,size", [("A2", 5), ("A3", 14), ("B3", 20), ("D4", 50),
                                       ("H3", 32), ("I2(7)", 9)])
def test_sizes(name, size):
    W = build_coxeter_system(name)
    nc = build_nc(W)
    assert len(nc.poset) == size == fuss_catalan(W.ctype, 1)


@pytest.mark.parametrize("name", ["A3", "B3", "I2(5)", "H3"])
def test_lattice_invariants(name):
    W = build_coxeter_system(name)
    nc = build_nc(W)
    P = nc.poset
    g = W.coxeter_element
    assert all(W.absolute_leq(W.identity, w) and W.absolute_leq(w, g) for w in P.elements)
    assert P.is_graded and P.rank == W.rank
    assert P.ranks == [W.absolute_length(w) for w in P.elements]
    assert all(W.is_reflection(t) for t in nc.natural_labels.values())


def test_reflection_order_a1():
    nc = build_nc(build_coxeter_system("A1"))
    order = find_el_reflection_order(nc)
    assert order.reflections == nc.system.reflections


def test_reflection_order_a2(nc_a2):
    order = find_el_reflection_order(nc_a2)
    lab = natural_labeling(nc_a2, order)
    assert is_el_labeling(nc_a2.poset, lab)
    words = [chain_label_word(lab, [nc_a2.poset.elements[i] for i in c])
             for c in iter_maximal_chains(nc_a2.poset)]
    assert sum(is_rising(w) for w in words) == 1


def test_all_orders_a2_direct(nc_a2):
    """Compare the checker with a direct reading of the three chains e < t < gamma."""
    W = nc_a2.system
    g = W.coxeter_element
    valid = []
    for perm in itertools.permutations(W.reflections):
        pos = {t: i for i, t in enumerate(perm)}
        words = sorted((pos[t], pos[t.inverse() * g]) for t in W.reflections)
        rising = [w for w in words if w[0] < w[1]]
        direct = len(rising) == 1 and rising[0] == words[0]
        result = is_el_labeling(nc_a2.poset, natural_labeling(nc_a2, ReflectionOrder(W, perm)))
        assert bool(result) == direct
        if not result:
            assert result.witness["interval"] == [repr(W.identity), repr(g)]
        valid.append(direct)
    assert 0 < sum(valid) < 6
    assert len(all_el_reflection_orders(nc_a2)) == sum(valid)


def test_reflection_order_b2():
    nc = build_nc(build_coxeter_system("B2"))
    order = find_el_reflection_order(nc)
    assert is_el_labeling(nc.poset, natural_labeling(nc, order))
    assert len(order) == 4


def test_search_is_deterministic():
    nc = build_nc(build_coxeter_system("D4"))
    a = find_el_reflection_order(nc)
    b = find_el_reflection_order(build_nc(build_coxeter_system("D4")))
    assert a.canonical_indices() == b.canonical_indices()
    assert a == coxeter_sorting_order(nc.system)


def test_search_budget(nc_a2):
    with pytest.raises(SearchExhausted):
        find_el_reflection_order(nc_a2, budget=0)


def test_reflection_order_validation(nc_a2):
    W = nc_a2.system
    with pytest.raises(ValueError):
        ReflectionOrder(W, W.reflections[:2])
    with pytest.raises(ValueError):
        ReflectionOrder(W, [W.reflections[0]] * 3)


def test_natural_labeling_examples(nc_a2):
    order = find_el_reflection_order(nc_a2)
    lab = natural_labeling(nc_a2, order)
    P = nc_a2.poset
    W = nc_a2.system
    e = P.index[W.identity]
    for t in W.reflections:
        assert lab(e, P.index[t]) == order.position(t)
        assert lab(P.index[t], P.index[W.coxeter_element]) == order.position(t.inverse() * W.coxeter_element)
    nc3 = build_nc(build_coxeter_system("A3"))
    lab3 = natural_labeling(nc3, find_el_reflection_order(nc3))
    for c in iter_maximal_chains(nc3.poset):
        assert len(chain_label_word(lab3, [nc3.poset.elements[i] for i in c])) == 3


def test_labeled_dot(nc_a2):
    dot = labeled_dot(nc_a2, find_el_reflection_order(nc_a2))
    assert dot.count("->") == 6
    assert dot.count("#") == 6
