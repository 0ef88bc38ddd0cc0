"""Interval-closed sets: validation, enumeration and the antichain-pair encoding."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from .poset import Poset, PosetError, bits


class NotIntervalClosed(PosetError):
    pass


def is_interval_closed(p: Poset, s: int) -> bool:
    """True when no element outside ``s`` sits strictly between two members."""
    p.check(s)
    outside = p.full & ~s
    for z in bits(outside):
        if p.strict_down[z] & s and p.strict_up[z] & s:
            return False
    return True


def _is_ics(p: Poset, s: int) -> bool:
    sd, su = p.strict_down, p.strict_up
    for z in bits(p.full & ~s):
        if sd[z] & s and su[z] & s:
            return False
    return True


def require_ics(p: Poset, s: int) -> int:
    if not is_interval_closed(p, s):
        raise NotIntervalClosed(f"{p.members(s)} is not interval-closed")
    return s


# -- antichains ---------------------------------------------------------------

def _antichains(p: Poset, region: int) -> Iterator[tuple[int, int]]:
    """Yield ``(antichain, ideal generated by it)`` for every antichain inside ``region``.

    Depth-first over elements in index order; the empty antichain comes first.
    """
    inc, down = p.incomparable, p.down
    stack = [(0, 0, region)]
    while stack:
        a, ideal, cand = stack.pop()
        yield a, ideal
        # push in reverse so smaller indices are explored first
        for x in reversed(list(bits(cand))):
            higher = cand & ~((2 << x) - 1)
            stack.append((a | 1 << x, ideal | down[x], higher & inc[x]))


def antichains(p: Poset, region: int | None = None) -> Iterator[int]:
    for a, _ in _antichains(p, p.full if region is None else p.check(region)):
        yield a


def _ics_from_roots(p: Poset, roots: list[int] | None) -> list[int]:
    """All ICS whose max antichain starts at one of ``roots`` (``None`` means all)."""
    out = []
    if roots is None:
        gen = _antichains(p, p.full)
    else:
        gen = _rooted(p, roots)
    for a, ideal_a in gen:
        if a == 0:
            if roots is None:
                out.append(0)
            continue
        region = ideal_a & ~a
        for _, ideal_b in _antichains(p, region):
            out.append(ideal_a & ~ideal_b)
    return out


def _rooted(p: Poset, roots: list[int]) -> Iterator[tuple[int, int]]:
    inc, down = p.incomparable, p.down
    for x in roots:
        higher = p.full & ~((2 << x) - 1)
        sub = higher & inc[x]
        for a, ideal in _antichains(p, sub):
            yield a | 1 << x, ideal | down[x]


def enumerate_ics(p: Poset, ordered: bool = True, jobs: int = 1) -> list[int]:
    """Every interval-closed set of ``p`` exactly once.

    Each ICS is ``Delta(A) - Delta(B)`` for a unique pair of disjoint antichains
    with ``B`` inside ``Delta(A)``, so no subset filtering or deduplication is
    needed.  ``ordered=False`` keeps generation order (the same for any
    ``jobs``); the default sorts by mask value.
    """
    if jobs <= 1 or p.n < 2:
        out = _ics_from_roots(p, None)
    else:
        # one task per smallest antichain element; concatenating in root order
        # reproduces the sequential generation order exactly
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_ics_from_roots, [p] * p.n, [[x] for x in range(p.n)]))
        out = [0] + [s for part in parts for s in part]
    if ordered:
        out.sort()
    return out


def count_ics(p: Poset) -> int:
    """Number of ICS without materializing them."""
    total = 0
    for a, ideal_a in _antichains(p, p.full):
        if a == 0:
            total += 1
            continue
        for _ in _antichains(p, ideal_a & ~a):
            total += 1
    return total


def enumerate_ics_brute(p: Poset) -> list[int]:
    """All 2^n subsets filtered through the interval check; for cross-checks only."""
    if p.n > 24:
        raise PosetError("brute-force enumeration is limited to 24 elements")
    return [s for s in range(1 << p.n) if _is_ics(p, s)]


def enumerate_order_ideals(p: Poset) -> list[int]:
    return sorted(ideal for _, ideal in _antichains(p, p.full))


# -- antichain pairs ----------------------------------------------------------

@dataclass(frozen=True)
class AntichainPair:
    max_part: int
    floor_part: int


def floor(p: Poset, i: int) -> int:
    return p.maximal(p.ideal_closure(i) & ~i)


def to_antichain_pair(p: Poset, i: int) -> AntichainPair:
    require_ics(p, i)
    return AntichainPair(p.maximal(i), floor(p, i))


def from_antichain_pair(p: Poset, pair: AntichainPair) -> int:
    a, b = p.check(pair.max_part), p.check(pair.floor_part)
    if not p.is_antichain(a):
        raise PosetError(f"max part {p.members(a)} is not an antichain")
    if not p.is_antichain(b):
        raise PosetError(f"floor part {p.members(b)} is not an antichain")
    if a & b:
        raise PosetError("max part and floor part overlap")
    ideal_a = p.ideal_closure(a)
    if b & ~ideal_a:
        raise PosetError("floor part is not inside the ideal generated by the max part")
    return ideal_a & ~p.ideal_closure(b)


# -- regions ------------------------------------------------------------------

@dataclass(frozen=True)
class Regions:
    inc: int
    comp: int
    ceiling: int
    min_under_ceiling: int
    floor: int


def regions(p: Poset, i: int) -> Regions:
    require_ics(p, i)
    ideal, filt = p.ideal_closure(i), p.filter_closure(i)
    comp = ideal | filt
    ceiling = p.minimal(filt & ~i)
    under = p.minimal(i) & p.ideal_closure(ceiling)
    return Regions(p.full & ~comp, comp, ceiling, under, p.maximal(ideal & ~i))


# -- export -------------------------------------------------------------------

def ics_to_json(p: Poset, family: Iterable[int]) -> str:
    return json.dumps([p.members(s) for s in family])


def ics_to_csv(p: Poset, family: Iterable[int]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for s in family:
        w.writerow(p.members(s))
    return buf.getvalue()
