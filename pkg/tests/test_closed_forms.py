from fractions import Fraction

import pytest

from ics_rowmotion import closed_forms as cf
from ics_rowmotion.ics import count_ics, enumerate_order_ideals
from ics_rowmotion.poset import (PosetError, chain, ordinal_sum_of_antichains, product_of_chains,
                                 stacked_diamond)
from ics_rowmotion.rowmotion import orbit_decomposition

from conftest import compositions


def test_chain_counts():
    assert cf.ics_count_chain(3) == 7
    assert cf.ics_count_chain(1) == 2
    assert cf.ics_count_chain(12) == 79 == count_ics(chain(12))
    with pytest.raises(ValueError):
        cf.ics_count_chain(0)


def test_ordinal_sum_counts():
    assert cf.ics_count_ordinal_sum((1, 1, 1)) == 7 == cf.ics_count_chain(3)
    assert cf.ics_count_ordinal_sum((2, 2)) == 16
    assert cf.ics_count_ordinal_sum((2, 3, 1, 4)) == count_ics(ordinal_sum_of_antichains((2, 3, 1, 4)))
    for total in range(1, 8):
        for a in compositions(total):
            assert cf.ics_count_ordinal_sum(a) == count_ics(ordinal_sum_of_antichains(a)), a


def test_specialized_counts():
    for n, m in [(3, 2), (5, 2), (5, 3), (7, 2), (7, 3), (9, 2)]:
        assert cf.ics_count_stacked_diamond(n, m) == count_ics(stacked_diamond(n, m))
        a = [1 if i % 2 == 0 else m for i in range(n)]
        assert cf.ics_count_stacked_diamond(n, m) == cf.ics_count_ordinal_sum(a)
    for n, m in [(1, 3), (2, 2), (3, 2), (4, 3), (5, 2)]:
        assert cf.ics_count_uniform_ordinal_sum(n, m) == count_ics(ordinal_sum_of_antichains([m] * n))


def test_2xn_counts():
    assert cf.ics_count_2xn(2) == 13
    assert cf.ics_count_2xn(7) == 393
    assert cf.ics_count_2xn(8) == 613
    for n in range(2, 9):
        assert cf.ics_count_2xn(n) == count_ics(product_of_chains(2, n))


def test_chain_orbit_structure_examples():
    s4 = cf.chain_orbit_structure(4)
    assert s4.sizes == {2: 1, 3: 1, 6: 1} and s4.order == 6
    s5 = cf.chain_orbit_structure(5)
    assert s5.sizes == {2: 1, 7: 2} and s5.order == 14
    s1 = cf.chain_orbit_structure(1)
    assert s1.sizes == {2: 1} and s1.order == 2 and s1.special_case
    assert cf.chain_orbit_structure(2).order == 2
    assert cf.chain_orbit_structure(3).order == 10


def test_chain_orbit_structure_matches_observed():
    for n in range(1, 11):
        pred = cf.chain_orbit_structure(n)
        dec = orbit_decomposition(chain(n))
        assert pred.sizes == dec.size_counts(), n
        assert pred.order == dec.order
        assert pred.total == cf.ics_count_chain(n)


def test_ordinal_sum_orbit_structure():
    for a in [(2, 4, 2, 4), (2, 3, 1, 4), (3, 3, 3), (1, 2, 1), (2, 2), (4,), (2, 1, 2, 1, 2, 1)]:
        pred = cf.ordinal_sum_orbit_structure(a)
        dec = orbit_decomposition(ordinal_sum_of_antichains(a))
        assert pred.sizes == dec.size_counts(), a
        assert pred.order == dec.order, a
        assert pred.total == cf.ics_count_ordinal_sum(a)


def test_ordinal_sum_orders():
    assert cf.ordinal_sum_orbit_structure((2, 2, 2)).order == 30
    assert cf.ordinal_sum_orbit_structure((3, 3, 3)).order == 30
    assert cf.ordinal_sum_orbit_structure((2, 2, 2, 2)).order == 12
    # all layers of size one is a chain: no orbits of size 2n
    assert cf.ordinal_sum_orbit_structure((1, 1, 1)).order == 10


def test_specialized_structures_agree():
    for n in (3, 5, 7, 9):
        for m in (2, 3, 4):
            cf.stacked_diamond_orbit_structure(n, m)
    for n in (3, 4, 5, 6):
        for m in (1, 2, 3):
            cf.uniform_ordinal_sum_orbit_structure(n, m)
    assert cf.stacked_diamond_orbit_structure(5, 2).sizes == \
        orbit_decomposition(stacked_diamond(5, 2)).size_counts()


def test_chain_orbit_averages():
    assert cf.chain_orbit_averages(3) == [(2, Fraction(3, 2)), (5, Fraction(7, 5))]
    assert cf.chain_orbit_averages(4) == [(2, Fraction(2)), (3, Fraction(2)), (6, Fraction(5, 3))]


def test_narayana():
    assert cf.narayana(5, 3) == 20
    assert cf.narayana(4, 2) == 6
    assert all(cf.narayana(j, 1) == 1 for j in range(1, 10))
    assert cf.narayana(5, 3) == len(enumerate_order_ideals(product_of_chains(2, 2, 2)))
    assert sum(cf.narayana(6, k) for k in range(1, 7)) == 132


def test_full_support_counts():
    assert len(cf.full_support_family(2, 2)) == 6 == cf.count_full_support(2, 2)
    assert cf.count_full_support(2, 3) == 20
    assert len(cf.full_support_family(3, 2)) == 10 == cf.count_full_support(3, 2)
    for m in range(1, 8):
        for n in range(2, 10 - m):
            assert len(cf.full_support_family(m, n)) == cf.count_full_support(m, n), (m, n)


EXAMPLE_J = {(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2), (2, 1, 1)}
EXAMPLE_I = {(1, 3), (2, 1), (2, 2)}


def test_psi_worked_example():
    assert cf.psi(2, 3, EXAMPLE_J) == EXAMPLE_I
    assert cf.psi_inverse(2, 3, EXAMPLE_I) == EXAMPLE_J


def test_psi_full_ideal():
    m, n = 2, 3
    full = {(a, x, z) for a in range(1, m + 1) for x in range(1, n) for z in (1, 2)}
    i = cf.psi(m, n, full)
    # each chain keeps only its top element
    assert i == {(1, 3), (2, 3)}
    assert cf.psi_inverse(m, n, i) == full


def test_psi_empty_ideal():
    assert cf.psi(2, 3, set()) == {(1, 1), (2, 1)}


def test_psi_round_trips():
    for m in range(1, 6):
        for n in range(2, 8 - m):
            ideals, family, ok = cf.psi_round_trip(m, n)
            assert ok, (m, n)
            assert ideals == family == cf.narayana(m + n, n)


def test_psi_rejects_bad_input():
    with pytest.raises(PosetError):
        cf.psi(2, 3, {(1, 2, 1)})  # not an ideal
    with pytest.raises(PosetError):
        cf.psi(2, 3, {(3, 1, 1)})
    with pytest.raises(PosetError):
        cf.psi_inverse(2, 3, {(1, 1), (1, 2)})  # misses the second chain
    with pytest.raises(PosetError):
        cf.psi_inverse(2, 3, {(1, 1), (1, 3), (2, 1)})  # not interval-closed


def test_table1():
    assert cf.table1_check(3, 3) == 114
    assert cf.table1_check(4, 4) == 1146
    assert cf.table1_check(2, 7) == 393
    assert cf.table1_check(6, 2) == count_ics(product_of_chains(2, 6))


def test_table1_symmetric():
    for m in range(1, 6):
        for n in range(1, 6):
            assert cf.TABLE1[m][n - 1] == cf.TABLE1[n][m - 1]
    assert count_ics(product_of_chains(3, 5)) == count_ics(product_of_chains(5, 3))


def test_table1_first_row_is_chain():
    assert list(cf.TABLE1[1]) == [cf.ics_count_chain(n) for n in range(1, 9)]


def test_verify_quick_all_ok():
    checks = cf.verify("quick")
    assert checks and all(c.ok for c in checks), [c.to_dict() for c in checks if not c.ok]
    names = {c.formula for c in checks}
    assert {"ics_count_chain", "table1", "psi_bijection", "ordinal_sum_orbit_structure"} <= names


def test_check_report_shape():
    c = cf.Check("x", [1], 2, 3)
    assert c.to_dict() == {"formula": "x", "params": [1], "predicted": 2, "observed": 3, "ok": False}


def test_verify_bad_scope():
    with pytest.raises(ValueError):
        cf.verify("medium")
