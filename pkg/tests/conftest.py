import sys

import pytest

from ics_rowmotion.poset import (Poset, antichain, chain, ordinal_sum_of_antichains,
                                 product_of_chains, stacked_diamond)

# Cover relations of the 20-element worked example, elements labelled 1..20.
FIG1_COVERS = [(1, 2), (2, 7), (7, 12), (12, 18), (7, 13), (13, 19), (7, 14), (14, 20),
               (2, 8), (8, 14), (14, 19), (8, 15), (15, 20), (1, 3), (3, 9), (9, 16),
               (16, 20), (1, 4), (4, 10), (10, 17), (17, 20), (1, 5), (5, 10), (10, 16),
               (5, 9), (9, 15), (10, 15), (13, 20), (11, 16), (6, 11)]


def fig1_poset() -> Poset:
    return Poset.from_covers(20, [(a - 1, b - 1) for a, b in FIG1_COVERS],
                             [str(k) for k in range(1, 21)])


def lab(*labels: int) -> int:
    """Mask from 1-based labels of the worked example."""
    return sum(1 << (x - 1) for x in labels)


def compositions(total: int):
    if total == 0:
        yield ()
        return
    for k in range(1, total + 1):
        for rest in compositions(total - k):
            yield (k,) + rest


def ordinal_sum_corpus(max_total: int = 12):
    for s in range(1, max_total + 1):
        yield from compositions(s)


def small_corpus():
    """Named posets small enough for exhaustive per-pair checks."""
    out = {f"chain({n})": chain(n) for n in range(1, 9)}
    out.update({f"antichain({k})": antichain(k) for k in range(1, 7)})
    for a in [(1, 2, 1), (2, 2), (2, 1, 2), (1, 3, 1), (2, 2, 2), (3, 1, 2), (1, 2, 1, 2, 1),
              (2, 1, 1, 2), (1, 1, 3, 1), (4, 1), (2, 3, 1)]:
        out[f"osum{a}"] = ordinal_sum_of_antichains(a)
    out["diamonds(5,2)"] = stacked_diamond(5, 2)
    for m, n in [(2, 2), (2, 3), (2, 4), (3, 2)]:
        out[f"[{m}]x[{n}]"] = product_of_chains(m, n)
    return out


def main_corpus():
    """The broader corpus: chains, antichains, ordinal sums, diamonds, grids and [2]x[2]x[3]."""
    out = {f"chain({n})": chain(n) for n in range(1, 11)}
    out.update({f"antichain({k})": antichain(k) for k in range(1, 7)})
    for a in [(2, 4, 2, 4), (2, 3, 1, 4), (1, 2, 1), (2, 2, 2), (3, 3, 3), (2, 1, 1, 2),
              (1, 2, 1, 2, 1), (4, 4, 4), (2, 2, 2, 2, 2, 2), (6, 6), (1, 1, 5, 1, 1)]:
        out[f"osum{a}"] = ordinal_sum_of_antichains(a)
    out["diamonds(5,2)"] = stacked_diamond(5, 2)
    out["diamonds(7,3)"] = stacked_diamond(7, 3)
    for m in range(1, 8):
        for n in range(m, 9 - m):
            out[f"[{m}]x[{n}]"] = product_of_chains(m, n)
    out["[2]x[2]x[3]"] = product_of_chains(2, 2, 3)
    return out


@pytest.fixture
def fig1():
    return fig1_poset()


@pytest.fixture
def diamond():
    return product_of_chains(2, 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.LINES:
        terminalreporter.write_line(line)
