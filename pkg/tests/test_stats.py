import cmath
import json
from fractions import Fraction

import pytest

from ics_rowmotion.ics import enumerate_ics
from ics_rowmotion.poset import (PosetError, Poset, antichain, chain, ordinal_sum_of_antichains,
                                 product_of_chains)
from ics_rowmotion.rowmotion import orbit_decomposition, orbit_of, rowmotion
from ics_rowmotion.stats import (NAMES, Statistic, csp_check, cyclotomic, evaluate,
                                 evaluates_to, homomesy_report, orbit_average, parse_statistic)

from conftest import small_corpus


def test_registry_is_closed():
    with pytest.raises(ValueError):
        Statistic("rank_sum")
    with pytest.raises(ValueError):
        Statistic("toggleability")
    with pytest.raises(ValueError):
        Statistic("cardinality", 2)
    assert len(NAMES) == 6


def test_parse_statistic(diamond):
    assert parse_statistic(diamond, "toggleability:top") == Statistic("toggleability", 3)
    assert parse_statistic(diamond, "toggleability:(1,2)") == Statistic("toggleability", 1)
    assert parse_statistic(diamond, "max_minus_min") == Statistic("max_minus_min")
    with pytest.raises(ValueError):
        parse_statistic(diamond, "cardinality:3")
    with pytest.raises(ValueError):
        parse_statistic(diamond, "toggleability")


def test_trivial_values():
    p = product_of_chains(2, 3)
    assert evaluate(p, Statistic("cardinality"), 0) == 0
    assert evaluate(p, Statistic("max_minus_min"), 0) == 0
    assert evaluate(p, Statistic("max_count"), p.full) == 1
    assert evaluate(p, Statistic("min_count"), p.full) == 1


def test_diamond_toggleability_labels(diamond):
    top = Statistic("toggleability", 3)
    bottom = Statistic("toggleability", 0)
    mid = Statistic("toggleability", 1)
    # empty set: every element can be toggled in
    assert [evaluate(diamond, Statistic("toggleability", x), 0) for x in range(4)] == [1, 1, 1, 1]
    # full set: extremes can leave, the middle cannot
    assert [evaluate(diamond, Statistic("toggleability", x), diamond.full)
            for x in range(4)] == [-1, 0, 0, -1]
    # {(1,2),(2,2)}: labels 0, -1, 1, -1
    s = diamond.mask([1, 3])
    assert [evaluate(diamond, Statistic("toggleability", x), s) for x in range(4)] == [0, -1, 1, -1]
    # from the bottom alone the top cannot be added
    assert evaluate(diamond, top, 0b0001) == 0
    assert evaluate(diamond, bottom, 0b0001) == -1
    assert evaluate(diamond, mid, 0b0001) == 1


def test_toggleability_matches_toggle():
    from ics_rowmotion.rowmotion import toggle
    for name, p in small_corpus().items():
        for x in range(p.n):
            f = Statistic("toggleability", x).bind(p)
            for s in enumerate_ics(p):
                t = toggle(p, s, x)
                want = 0 if t == s else (1 if t & (1 << x) else -1)
                assert f(s) == want, name


def test_signed_cardinality_needs_ranks():
    p = Poset.from_covers(5, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)])
    with pytest.raises(PosetError):
        evaluate(p, Statistic("signed_cardinality"), 0)
    q = chain(3)
    assert evaluate(q, Statistic("signed_cardinality"), 0b111) == 1
    assert evaluate(q, Statistic("signed_cardinality"), 0b110) == 0


def test_fig10_orbit_values():
    p = product_of_chains(2, 5)
    start = p.mask([1, 2, 6])  # {(1,2),(1,3),(2,2)}
    o = orbit_of(p, start)
    f = Statistic("max_minus_min").bind(p)
    assert [f(s) for s in o.starting_at(start)] == [1, 0, 0, -1, 1, 0, -1, 0]


def test_chain_cardinality_averages():
    stat = Statistic("cardinality")
    for n in range(1, 11):
        p = chain(n)
        assert orbit_average(p, stat, orbit_of(p, 0)) == Fraction(n, 2)
        for k in range(1, (n - 1) // 2 + 1):
            o = orbit_of(p, (1 << k) - 1)  # the interval {1..k}
            assert o.size == n + 2
            assert orbit_average(p, stat, o) == Fraction(2 * k * (n - k) + n, n + 2)


def test_diamond_middle_element_averages(diamond):
    rep = homomesy_report(diamond, Statistic("toggleability", 1))
    assert rep.averages == (Fraction(1, 2), Fraction(-1, 5), Fraction(0))
    assert not rep.homomesic


def test_extremal_toggleability_zero_mesic():
    for name, p in small_corpus().items():
        ext = p.minimal_elements | p.maximal_elements
        for x in p.members(ext):
            rep = homomesy_report(p, Statistic("toggleability", x))
            assert rep.homomesic and rep.c == 0, (name, x)


def test_plus_one_followed_by_minus_one():
    for name, p in small_corpus().items():
        for x in p.members(p.maximal_elements):
            f = Statistic("toggleability", x).bind(p)
            for s in enumerate_ics(p):
                if f(s) == 1:
                    assert f(rowmotion(p, s)) == -1, (name, x)


def test_report_chain3():
    rep = homomesy_report(chain(3), Statistic("cardinality"))
    assert not rep.homomesic
    assert rep.averages == (Fraction(3, 2), Fraction(7, 5))
    assert rep.witness == (0, 1)
    d = json.loads(rep.to_json())
    assert d["orbit_averages"] == [["3/2", 2], ["7/5", 5]]
    assert "c" not in d
    assert d["witness"]["orbits"] == [0, 1]


def test_report_homomesic_json():
    p = product_of_chains(2, 4)
    d = homomesy_report(p, Statistic("max_minus_min")).to_dict()
    assert d["homomesic"] and d["c"] == "0/1" and d["witness"] is None


def test_sum_identity():
    for name, p in small_corpus().items():
        fam = enumerate_ics(p)
        for sname in ("cardinality", "max_count", "min_count", "max_minus_min"):
            stat = Statistic(sname)
            rep = homomesy_report(p, stat)
            f = stat.bind(p)
            assert sum(a * k for a, k in zip(rep.averages, rep.sizes)) == sum(f(s) for s in fam)


def test_signed_cardinality_uniform_sums():
    for n, m in [(4, 2), (4, 3), (6, 2)]:
        rep = homomesy_report(ordinal_sum_of_antichains([m] * n), Statistic("signed_cardinality"))
        assert rep.homomesic and rep.c == 0
    for a in [(2, 1, 1, 2), (1, 2, 1, 2, 1), (2, 2, 2)]:
        rep = homomesy_report(ordinal_sum_of_antichains(a), Statistic("signed_cardinality"))
        assert not rep.homomesic, a


def test_signed_cardinality_grid_counterexample():
    assert not homomesy_report(product_of_chains(2, 4), Statistic("signed_cardinality")).homomesic


def test_max_count_not_homomesic_on_diamond(diamond):
    assert not homomesy_report(diamond, Statistic("max_count")).homomesic
    assert not homomesy_report(diamond, Statistic("cardinality")).homomesic


# -- cyclic sieving -----------------------------------------------------------

def test_cyclotomic_polynomials():
    assert cyclotomic(1) == [-1, 1]
    assert cyclotomic(2) == [1, 1]
    assert cyclotomic(4) == [1, 0, 1]
    assert cyclotomic(6) == [1, -1, 1]
    assert cyclotomic(12) == [1, 0, -1, 0, 1]


def _numeric(coeffs, order, d):
    w = cmath.exp(2j * cmath.pi / order)
    return sum(c * w ** (e * d) for e, c in coeffs.items())


def test_exact_evaluation_matches_complex_oracle():
    cases = [({0: 1, 1: 2, 2: 1}, 4), ({0: 1, 3: 1}, 6), ({1: 1, 2: 1, 3: 1, 4: 1, 5: 1}, 5),
             ({0: 2, 2: 3, 5: 1}, 10), ({0: 13}, 30)]
    for coeffs, order in cases:
        for d in range(order):
            z = _numeric(coeffs, order, d)
            for value in range(-3, 16):
                want = abs(z - value) < 1e-9
                assert evaluates_to(coeffs, order, d, value) == want, (coeffs, order, d, value)


def _csp_oracle(p, stat):
    dec = orbit_decomposition(p)
    f = stat.bind(p)
    coeffs = {}
    for s in enumerate_ics(p):
        coeffs[f(s)] = coeffs.get(f(s), 0) + 1
    order = dec.order
    for d in range(order):
        fixed = sum(o.size for o in dec.orbits if d % o.size == 0)
        if abs(_numeric(coeffs, order, d) - fixed) > 1e-9:
            return False, d
    return True, None


def test_csp_diamond_fails(diamond):
    for s in ("cardinality", "max_count", "min_count"):
        v = csp_check(diamond, Statistic(s))
        assert not v.holds
        assert (v.holds, v.failing_d) == _csp_oracle(diamond, Statistic(s))


def test_csp_chain2():
    v = csp_check(chain(2), Statistic("cardinality"))
    assert (v.holds, v.failing_d) == _csp_oracle(chain(2), Statistic("cardinality"))
    assert v.order == 2 and v.fixed_points == (4, 0)
    assert v.holds


def test_csp_agrees_with_oracle_on_corpus():
    for name, p in small_corpus().items():
        for s in ("cardinality", "max_count", "min_count"):
            v = csp_check(p, Statistic(s))
            assert (v.holds, v.failing_d) == _csp_oracle(p, Statistic(s)), (name, s)


def test_csp_constant_statistic():
    # max_minus_min vanishes on a one-element poset, so f(q) = 2 but
    # rowmotion swaps the two sets
    p = antichain(1)
    v = csp_check(p, Statistic("max_minus_min"))
    assert v.order == 2 and not v.holds and v.failing_d == 1


def test_csp_rejects_negative_values(diamond):
    with pytest.raises(ValueError):
        csp_check(diamond, Statistic("toggleability", 3))
