"""Closed-form counts and orbit structures, the Narayana bijection, and brute-force verifiers."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from math import comb, lcm
from typing import Callable, Iterable, Sequence

from .ics import _is_ics, count_ics, enumerate_ics, enumerate_order_ideals
from .poset import (Poset, PosetError, chain, ordinal_sum_of_antichains, popcount,
                    product_of_chains, stacked_diamond)
from .rowmotion import orbit_decomposition

# Number of interval-closed sets of [m] x [n], rows m = 1..5, columns n = 1..8.
TABLE1 = {
    1: (2, 4, 7, 11, 16, 22, 29, 37),
    2: (4, 13, 33, 71, 136, 239, 393, 613),
    3: (7, 33, 114, 321, 781, 1702, 3403, 6349),
    4: (11, 71, 321, 1146, 3449, 9115, 21743, 47737),
    5: (16, 136, 781, 3449, 12578, 39614, 111063, 283243),
}


def _positive(name: str, value: int, low: int = 1) -> None:
    if not isinstance(value, int) or value < low:
        raise ValueError(f"{name} must be an integer >= {low}, got {value!r}")


# -- counts -------------------------------------------------------------------

def ics_count_chain(n: int) -> int:
    _positive("n", n)
    return comb(n, 2) + n + 1


def ics_count_ordinal_sum(a: Sequence[int]) -> int:
    if not a:
        raise ValueError("need at least one layer")
    for x in a:
        _positive("layer size", x)
    w = [2 ** x - 1 for x in a]
    pairs = sum(w[i] * w[j] for i in range(len(w)) for j in range(i + 1, len(w)))
    return 1 + sum(w) + pairs


def ics_count_stacked_diamond(n: int, m: int) -> int:
    """Count for ``1 + m + 1 + ... + m + 1`` with ``n`` summands."""
    if n < 3 or n % 2 == 0 or m < 2:
        raise ValueError("need odd n >= 3 and m >= 2")
    w = 2 ** m - 1
    total = Fraction(8 + (n + 1) * (n + 3), 8) + Fraction((n - 1) * (n + 3), 4) * w \
        + Fraction((n - 3) * (n - 1), 8) * w * w
    assert total.denominator == 1
    return int(total)


def ics_count_uniform_ordinal_sum(n: int, m: int) -> int:
    """Count for the ordinal sum of ``n`` copies of an ``m``-element antichain."""
    _positive("n", n)
    _positive("m", m)
    w = 2 ** m - 1
    return 1 + n * w + comb(n, 2) * w * w


def ics_count_2xn(n: int) -> int:
    _positive("n", n, 2)
    total = 1 + 2 * (comb(n, 2) + n) + Fraction(n + 1, 2) * comb(n + 2, 3)
    assert total.denominator == 1
    return int(total)


# -- orbit structures ---------------------------------------------------------

@dataclass(frozen=True)
class OrbitStructurePrediction:
    sizes: dict[int, int]
    order: int
    special_case: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def total(self) -> int:
        return sum(s * k for s, k in self.sizes.items())


def _prediction(sizes: dict[int, int], special: bool = False,
                notes: Iterable[str] = ()) -> OrbitStructurePrediction:
    sizes = {s: k for s, k in sorted(sizes.items()) if k}
    return OrbitStructurePrediction(sizes, lcm(*sizes), special, tuple(notes))


def chain_orbit_structure(n: int) -> OrbitStructurePrediction:
    _positive("n", n)
    sizes = {2: 1}
    sizes[n + 2] = sizes.get(n + 2, 0) + (n - 1) // 2
    if n % 2 == 0:
        sizes[(n + 2) // 2] = sizes.get((n + 2) // 2, 0) + 1
    notes = []
    if n <= 2:
        notes.append("order is 2 for n = 1, 2")
    elif n == 3:
        notes.append("single orbit of size n + 2")
    return _prediction(sizes, n <= 3, notes)


def ordinal_sum_orbit_structure(a: Sequence[int]) -> OrbitStructurePrediction:
    """Orbit sizes of rowmotion on ``a_1 + ... + a_n`` (antichain layers).

    For ``n <= 2`` every subset is interval-closed and rowmotion is
    complementation, so all orbits have size 2.
    """
    if not a:
        raise ValueError("need at least one layer")
    for x in a:
        _positive("layer size", x)
    n = len(a)
    if n <= 2:
        return _prediction({2: 2 ** (sum(a) - 1)}, True, ["rank <= 1: complementation"])
    u = [2 ** x - 2 for x in a]
    pairs = sum(u[i] * u[j] for i in range(n) for j in range(i + 1, n))
    assert pairs % 2 == 0
    sizes = {2: 1 + pairs // 2}
    sizes[n + 2] = sizes.get(n + 2, 0) + (n - 1) // 2
    if n % 2 == 0:
        sizes[(n + 2) // 2] = sizes.get((n + 2) // 2, 0) + 1
        sizes[n] = sizes.get(n, 0) + sum(u)
    else:
        sizes[2 * n] = sizes.get(2 * n, 0) + sum(2 ** (x - 1) - 1 for x in a)
    return _prediction(sizes, all(x == 1 for x in a))


def stacked_diamond_orbit_structure(n: int, m: int) -> OrbitStructurePrediction:
    """Specialized form for ``1 + m + 1 + ... + 1``; must agree with the general one."""
    if n < 3 or n % 2 == 0 or m < 2:
        raise ValueError("need odd n >= 3 and m >= 2")
    two = 1 + (n - 3) * (n - 1) // 8 * (2 ** (m - 1) - 1) * (2 ** m - 2)
    pred = _prediction({2: two, n + 2: (n - 1) // 2, 2 * n: (n - 1) // 2 * (2 ** (m - 1) - 1)})
    general = ordinal_sum_orbit_structure([1 if i % 2 == 0 else m for i in range(n)])
    assert pred.sizes == general.sizes, (pred, general)
    return pred


def uniform_ordinal_sum_orbit_structure(n: int, m: int) -> OrbitStructurePrediction:
    """Specialized form for ``n`` copies of an ``m``-antichain; must agree with the general one."""
    if n < 3:
        raise ValueError("need n >= 3")
    _positive("m", m)
    sizes = {2: 1 + comb(n, 2) * (2 ** m - 2) ** 2 // 2, n + 2: (n - 1) // 2}
    if n % 2:
        sizes[2 * n] = n * (2 ** (m - 1) - 1)
    else:
        sizes[(n + 2) // 2] = 1
        sizes[n] = sizes.get(n, 0) + n * (2 ** m - 2)
    pred = _prediction(sizes, m == 1)
    general = ordinal_sum_orbit_structure([m] * n)
    assert pred.sizes == general.sizes, (pred, general)
    return pred


def chain_orbit_averages(n: int) -> list[tuple[int, Fraction]]:
    """``(orbit size, average cardinality)`` for every rowmotion orbit of a chain."""
    _positive("n", n)
    out = [(2, Fraction(n, 2))]
    out += [(n + 2, Fraction(2 * k * (n - k) + n, n + 2)) for k in range(1, (n - 1) // 2 + 1)]
    if n % 2 == 0:
        out.append(((n + 2) // 2, Fraction(n, 2)))
    return sorted(out)


# -- Narayana numbers and the bijection psi -----------------------------------

def narayana(j: int, k: int) -> int:
    _positive("j", j)
    _positive("k", k)
    if k > j:
        return 0
    num = comb(j, k - 1) * comb(j - 1, k - 1)
    assert num % k == 0
    return num // k


def count_full_support(m: int, n: int) -> int:
    """ICS of ``[m] x [n]`` meeting every chain ``{a} x [n]``."""
    _positive("m", m)
    _positive("n", n, 2)
    return narayana(n + m, n)


def _chain_masks(m: int, n: int) -> list[int]:
    return [((1 << n) - 1) << (a * n) for a in range(m)]


def full_support_family(m: int, n: int) -> list[int]:
    """Brute filter of ``enumerate_ics([m] x [n])``."""
    rows = _chain_masks(m, n)
    return [s for s in enumerate_ics(product_of_chains(m, n)) if all(s & r for r in rows)]


def _triple_index(m: int, n: int, a: int, x: int, z: int) -> int:
    # 1-based (a, x, z) in [m] x [n-1] x [2]
    return ((a - 1) * (n - 1) + (x - 1)) * 2 + (z - 1)


def _check_mn(m: int, n: int) -> None:
    _positive("m", m)
    _positive("n", n, 2)


def psi(m: int, n: int, ideal: Iterable[tuple[int, int, int]]) -> set[tuple[int, int]]:
    """Map an order ideal of ``[m] x [n-1] x [2]`` to a full-support ICS of ``[m] x [n]``.

    Chain ``a`` of the image runs from just above the highest level-2 member
    ``(a, y, 2)`` up to one past the highest level-1 member ``(a, x, 1)``, with
    0 standing in for a missing member.
    """
    _check_mn(m, n)
    j = set(ideal)
    triple = product_of_chains(m, n - 1, 2)
    mask = 0
    for a, x, z in j:
        if not (1 <= a <= m and 1 <= x <= n - 1 and z in (1, 2)):
            raise PosetError(f"{(a, x, z)} is not in [{m}]x[{n - 1}]x[2]")
        mask |= 1 << _triple_index(m, n, a, x, z)
    if not triple.is_order_ideal(mask):
        raise PosetError("input is not an order ideal")
    out = set()
    for a in range(1, m + 1):
        c = max((x for (b, x, z) in j if b == a and z == 1), default=0)
        b_ = max((y for (b, y, z) in j if b == a and z == 2), default=0)
        out.update((a, x) for x in range(b_ + 1, c + 2))
    return out


def psi_inverse(m: int, n: int, ics: Iterable[tuple[int, int]]) -> set[tuple[int, int, int]]:
    """Order ideal generated by ``(a, x-1, 1)`` for maximal ``(a, x)`` and ``(a, y, 2)`` for floor ``(a, y)``."""
    _check_mn(m, n)
    grid = product_of_chains(m, n)
    mask = 0
    for a, x in ics:
        if not (1 <= a <= m and 1 <= x <= n):
            raise PosetError(f"{(a, x)} is not in [{m}]x[{n}]")
        mask |= 1 << ((a - 1) * n + (x - 1))
    if not _is_ics(grid, mask):
        raise PosetError("input is not interval-closed")
    if not all(mask & r for r in _chain_masks(m, n)):
        raise PosetError("input does not meet every chain {a} x [n]")
    gens = []
    for e in grid.members(grid.maximal(mask)):
        a, x = divmod(e, n)
        if x >= 1:
            gens.append((a + 1, x, 1))
    floor = grid.maximal(grid.ideal_closure(mask) & ~mask)
    for e in grid.members(floor):
        a, y = divmod(e, n)
        gens.append((a + 1, y + 1, 2))
    triple = product_of_chains(m, n - 1, 2)
    closed = triple.ideal_closure(sum(1 << _triple_index(m, n, *g) for g in gens))
    out = set()
    for t in triple.members(closed):
        rest, z = divmod(t, 2)
        a, x = divmod(rest, n - 1)
        out.add((a + 1, x + 1, z + 1))
    return out


def triple_ideals(m: int, n: int) -> list[set[tuple[int, int, int]]]:
    """Every order ideal of ``[m] x [n-1] x [2]`` as 1-based tuples."""
    _check_mn(m, n)
    triple = product_of_chains(m, n - 1, 2)
    out = []
    for ideal in enumerate_order_ideals(triple):
        s = set()
        for t in triple.members(ideal):
            rest, z = divmod(t, 2)
            a, x = divmod(rest, n - 1)
            s.add((a + 1, x + 1, z + 1))
        out.append(s)
    return out


def grid_tuples(n: int, mask: int) -> set[tuple[int, int]]:
    """Mask of ``[m] x [n]`` to 1-based tuples."""
    out = set()
    x = 0
    while mask:
        if mask & 1:
            out.add((x // n + 1, x % n + 1))
        mask >>= 1
        x += 1
    return out


def psi_round_trip(m: int, n: int) -> tuple[int, int, bool]:
    """``(number of ideals, number of full-support ICS, bijection holds)``."""
    ideals = triple_ideals(m, n)
    family = {frozenset(grid_tuples(n, s)) for s in full_support_family(m, n)}
    images = set()
    ok = True
    for j in ideals:
        i = frozenset(psi(m, n, j))
        images.add(i)
        ok = ok and i in family and psi_inverse(m, n, i) == j
    ok = ok and images == family
    for i in family:
        ok = ok and frozenset(psi(m, n, psi_inverse(m, n, i))) == i
    return len(ideals), len(family), ok


# -- reference counts for [m]x[n] --------------------------------------------

def table1_check(m: int, n: int) -> int:
    """Brute count of ICS in ``[m] x [n]``; raises if it disagrees with the golden table."""
    _positive("m", m)
    _positive("n", n)
    got = count_ics(product_of_chains(m, n))
    want = TABLE1.get(m, ())[n - 1:n]
    if want and want[0] != got:
        raise AssertionError(f"[{m}]x[{n}]: counted {got}, table says {want[0]}")
    return got


# -- verification reports -----------------------------------------------------

@dataclass(frozen=True)
class Check:
    formula: str
    params: object
    predicted: object
    observed: object

    @property
    def ok(self) -> bool:
        return self.predicted == self.observed

    def to_dict(self) -> dict:
        return {"formula": self.formula, "params": self.params,
                "predicted": self.predicted, "observed": self.observed, "ok": self.ok}


def _sizes(p: Poset) -> dict[str, int]:
    return {str(k): v for k, v in orbit_decomposition(p).size_counts().items()}


def _str_sizes(pred: OrbitStructurePrediction) -> dict[str, int]:
    return {str(k): v for k, v in pred.sizes.items()}


QUICK_OSUMS = [(2, 2), (1, 2, 1), (2, 2, 2), (2, 1, 1, 2), (1, 2, 1, 2, 1),
               (2, 3, 1, 4), (2, 4, 2, 4), (3, 3, 3), (1, 1, 1, 1, 1, 1), (3, 1, 2)]
FULL_OSUMS = QUICK_OSUMS + [(4, 4, 4), (2, 2, 2, 2, 2, 2), (3, 3, 3, 3), (1, 3, 1, 3, 1, 3, 1),
                            (2, 3, 2, 3, 2), (5, 1, 5), (6, 6)]


def verification_checks(scope: str = "quick") -> Iterable[Check]:
    """Yield one check per (formula, parameters) pair in the chosen budget."""
    if scope not in ("quick", "full"):
        raise ValueError("scope must be 'quick' or 'full'")
    full = scope == "full"
    for n in range(1, 13):
        yield Check("ics_count_chain", [n], ics_count_chain(n), count_ics(chain(n)))
    for n in range(2, 9 if full else 7):
        yield Check("ics_count_2xn", [n], ics_count_2xn(n), count_ics(product_of_chains(2, n)))
    cells = [(m, n) for m in range(1, 5) for n in range(1, 7)]
    if full:
        cells += [(m, n) for m in range(1, 6) for n in range(1, 9) if (m, n) not in cells]
    for m, n in cells:
        yield Check("table1", [m, n], TABLE1[m][n - 1], count_ics(product_of_chains(m, n)))
    osums = FULL_OSUMS if full else QUICK_OSUMS
    for a in osums:
        yield Check("ics_count_ordinal_sum", list(a), ics_count_ordinal_sum(a),
                    count_ics(ordinal_sum_of_antichains(a)))
    for n, m in [(3, 2), (5, 2), (7, 3)] + ([(5, 4), (9, 2)] if full else []):
        yield Check("ics_count_stacked_diamond", [n, m], ics_count_stacked_diamond(n, m),
                    count_ics(stacked_diamond(n, m)))
        yield Check("stacked_diamond_orbit_structure", [n, m],
                    _str_sizes(stacked_diamond_orbit_structure(n, m)), _sizes(stacked_diamond(n, m)))
    for n, m in [(3, 2), (4, 2), (3, 3)] + ([(4, 3), (6, 2)] if full else []):
        p = ordinal_sum_of_antichains([m] * n)
        yield Check("ics_count_uniform_ordinal_sum", [n, m], ics_count_uniform_ordinal_sum(n, m),
                    count_ics(p))
        yield Check("uniform_ordinal_sum_orbit_structure", [n, m],
                    _str_sizes(uniform_ordinal_sum_orbit_structure(n, m)), _sizes(p))
    for n in range(1, 11):
        yield Check("chain_orbit_structure", [n], _str_sizes(chain_orbit_structure(n)),
                    _sizes(chain(n)))
    for a in osums:
        yield Check("ordinal_sum_orbit_structure", list(a),
                    _str_sizes(ordinal_sum_orbit_structure(a)),
                    _sizes(ordinal_sum_of_antichains(a)))
    for n in range(1, 11):
        dec = orbit_decomposition(chain(n))
        card = sorted((o.size, Fraction(sum(popcount(s) for s in o.members), o.size))
                      for o in dec.orbits)
        yield Check("chain_orbit_averages", [n],
                    [[s, str(q)] for s, q in chain_orbit_averages(n)],
                    [[s, str(q)] for s, q in card])
    budget = 9 if full else 7
    for m, n in iproduct(range(1, budget), range(2, budget)):
        if m + n <= budget:
            yield Check("count_full_support", [m, n], count_full_support(m, n),
                        len(full_support_family(m, n)))
    budget = 7 if full else 6
    for m, n in iproduct(range(1, budget), range(2, budget)):
        if m + n <= budget:
            ideals, family, ok = psi_round_trip(m, n)
            yield Check("psi_bijection", [m, n], [narayana(m + n, n), narayana(m + n, n), True],
                        [ideals, family, ok])


def verify(scope: str = "quick", on_check: Callable[[Check], None] | None = None) -> list[Check]:
    out = []
    for c in verification_checks(scope):
        if on_check:
            on_check(c)
        out.append(c)
    return out


def timed_verify(scope: str = "quick") -> tuple[list[Check], float]:
    t0 = time.perf_counter()
    checks = verify(scope)
    return checks, time.perf_counter() - t0
