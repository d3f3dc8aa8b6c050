import pytest

import _oracles
from ncmobius.catalan import degrees, fuss_catalan, positive_fuss_catalan
from ncmobius.coxeter import CoxeterType, build_coxeter_system
from ncmobius.errors import NonIntegerResult
from ncmobius.catalan import _exact_product

TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "D4", "I2(3)", "I2(9)", "H3", "F4"]


@pytest.mark.parametrize("name", TYPES)
def test_degrees_match_group(name):
    W = build_coxeter_system(name)
    d = degrees(W.ctype)
    assert d.group_order == W.group_order
    assert d.num_reflections == W.num_reflections
    assert d.degrees[0] == 2 and d.rank == W.rank
    assert d.coxeter_number == d.degrees[-1]


def test_degree_examples():
    assert degrees(CoxeterType.parse("A2")).degrees == (2, 3)
    assert degrees(CoxeterType.parse("B3")).degrees == (2, 4, 6)
    assert degrees(CoxeterType.parse("B3")).coxeter_number == 6
    for m in range(3, 13):
        d = degrees(CoxeterType("I2", 2, m))
        assert d.degrees == (2, m) and d.coxeter_number == m
        assert d.group_order == 2 * m and d.num_reflections == m


@pytest.mark.parametrize("name", TYPES)
def test_k_zero(name):
    t = CoxeterType.parse(name)
    assert fuss_catalan(t, 0) == 1
    assert positive_fuss_catalan(t, 0) == 0


def test_type_a_is_classical_fuss_catalan():
    from math import comb

    # Cat^(k)(A_{n-1}) = binom((k+1)n, n) / (kn + 1)
    for n in range(2, 7):
        for k in range(0, 5):
            t = CoxeterType("A", n - 1)
            assert fuss_catalan(t, k) == comb((k + 1) * n, n) // (k * n + 1)


def test_catalan_numbers_match_noncrossing_partitions():
    # NC(A_{m-1}) counted as noncrossing set partitions of m points
    for m in range(2, 7):
        assert fuss_catalan(CoxeterType("A", m - 1), 1) == _oracles.count_noncrossing_partitions(m)


def test_spot_values():
    a2 = CoxeterType.parse("A2")
    assert fuss_catalan(a2, 1) == 5
    assert fuss_catalan(a2, 2) == 12
    assert positive_fuss_catalan(a2, 1) == 2
    assert positive_fuss_catalan(a2, 2) == 7
    b2 = CoxeterType.parse("B2")
    assert positive_fuss_catalan(b2, 2) - positive_fuss_catalan(b2, 1) == 10 - 3


def test_bad_k():
    t = CoxeterType.parse("A2")
    with pytest.raises(ValueError):
        fuss_catalan(t, -1)
    with pytest.raises(ValueError):
        fuss_catalan(t, 65)


def test_non_integer_detection(monkeypatch):
    import ncmobius.catalan as cat

    monkeypatch.setattr(cat, "degrees", lambda t: cat.DegreeData((3, 5)))
    with pytest.raises(NonIntegerResult):
        _exact_product(CoxeterType.parse("A2"), 1, 0)


@pytest.mark.parametrize("name", TYPES)
def test_formulas_divide_for_all_k(name):
    t = CoxeterType.parse(name)
    for k in range(0, 65):
        fuss_catalan(t, k)
        positive_fuss_catalan(t, k)
