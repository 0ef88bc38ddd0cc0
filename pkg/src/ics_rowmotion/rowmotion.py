"""Toggles, rowmotion and orbit decomposition on interval-closed sets."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import lcm
from typing import Callable, Sequence

from .ics import enumerate_ics, require_ics
from .poset import Poset, PosetError, bits, dual, ordinal_sum_of_antichains


class OrbitError(RuntimeError):
    pass


def _down(p: Poset, mask: int) -> int:
    out = 0
    down = p.down
    for x in bits(mask):
        out |= down[x]
    return out


def _up(p: Poset, mask: int) -> int:
    out = 0
    up = p.up
    for x in bits(mask):
        out |= up[x]
    return out


def _minimal(p: Poset, mask: int) -> int:
    sd = p.strict_down
    return sum(1 << x for x in bits(mask) if not sd[x] & mask)


# -- toggles ------------------------------------------------------------------

def _toggle(p: Poset, i: int, x: int) -> int:
    # i is interval-closed, so only violations involving x can appear
    sd, su = p.strict_down, p.strict_up
    bit = 1 << x
    if i & bit:
        return i if sd[x] & i and su[x] & i else i ^ bit
    for z in bits(su[x] & ~i):
        if su[z] & i:
            return i
    for z in bits(sd[x] & ~i):
        if sd[z] & i:
            return i
    return i | bit


def toggle(p: Poset, i: int, x: int) -> int:
    """Add or remove ``x`` when the result stays interval-closed, else return ``i``."""
    require_ics(p, i)
    if not 0 <= x < p.n:
        raise PosetError(f"element {x} out of range 0..{p.n - 1}")
    return _toggle(p, i, x)


def rowmotion_toggles(p: Poset, i: int, ext: Sequence[int] | None = None) -> int:
    """Toggle every element, from the top of a linear extension down."""
    require_ics(p, i)
    if ext is None:
        ext = p.linear_extension()
    elif not p.is_linear_extension(ext):
        raise PosetError("not a linear extension of the poset")
    for x in reversed(ext):
        i = _toggle(p, i, x)
    return i


def _row_global(p: Poset, i: int) -> int:
    if i == 0:
        return p.full
    ideal, filt = _down(p, i), _up(p, i)
    inc = p.full & ~(ideal | filt)
    ceiling = _minimal(p, filt & ~i)
    ideal_ceiling = _down(p, ceiling)
    # members of i incomparable to every ceiling element
    inc_i = i & ~(ideal_ceiling | _up(p, ceiling))
    part2 = _down(p, inc_i) & ~(i | ideal_ceiling)
    part3 = ideal_ceiling & ~_down(p, _minimal(p, i) & ideal_ceiling)
    return inc | part2 | part3


def rowmotion_global(p: Poset, i: int) -> int:
    """Rowmotion from the incomparable set, ceiling and minimal elements of ``i``.

    Union of three pieces: everything incomparable to ``i``; the ideal below
    the members of ``i`` that are incomparable to the ceiling, minus ``i`` and
    minus the ideal of the ceiling; and the ideal of the ceiling minus the
    ideal of the minimal elements of ``i`` lying under the ceiling.
    """
    return _row_global(p, require_ics(p, i))


def rowmotion(p: Poset, i: int) -> int:
    return rowmotion_global(p, i)


def antichain_layers(p: Poset) -> tuple[int, ...]:
    """Layer sizes when ``p`` is exactly an ordinal sum of antichains as built here."""
    ranks = p.ranks
    if ranks is None:
        raise PosetError("poset is not an ordinal sum of antichains")
    sizes = [0] * (max(ranks) + 1)
    for r in ranks:
        sizes[r] += 1
    if ordinal_sum_of_antichains(sizes) != p:
        raise PosetError("poset is not an ordinal sum of antichains")
    return tuple(sizes)


def rowmotion_ordinal_sum(p: Poset, i: int, layers: Sequence[int] | None = None) -> int:
    """Rowmotion on an ordinal sum of antichains.

    Complement when ``i`` is empty, contains the top layer or lies inside it;
    otherwise the ideal of the ceiling minus the ideal of the minimal elements.
    """
    if layers is None:
        layers = antichain_layers(p)
    elif ordinal_sum_of_antichains(list(layers)) != p:
        raise PosetError(f"poset is not the ordinal sum of antichains {tuple(layers)}")
    require_ics(p, i)
    top = p.full & ~((1 << (p.n - layers[-1])) - 1)
    if i == 0 or top & ~i == 0 or i & ~top == 0:
        return p.full & ~i
    ceiling = p.minimal(p.filter_closure(i) & ~i)
    return p.ideal_closure(ceiling) & ~p.ideal_closure(p.minimal(i))


def inverse_rowmotion(p: Poset, i: int) -> int:
    """Rowmotion on the dual poset, which undoes rowmotion on ``p``."""
    return rowmotion_global(_dual_cached(p), i)


_DUALS: dict[Poset, Poset] = {}


def _dual_cached(p: Poset) -> Poset:
    d = _DUALS.get(p)
    if d is None:
        if len(_DUALS) > 64:
            _DUALS.clear()
        d = _DUALS[p] = dual(p)
    return d


def toggle_tables(p: Poset, family: list[int] | None = None) -> list[list[int]]:
    """``tables[x][k]`` is the index in ``family`` of ``t_x`` applied to ``family[k]``.

    Any word in the toggles can then be evaluated on the whole family by
    composing index lists, without re-checking interval closure.
    """
    family = enumerate_ics(p) if family is None else family
    index = {s: k for k, s in enumerate(family)}
    try:
        return [[index[_toggle(p, s, x)] for s in family] for x in range(p.n)]
    except KeyError:
        raise PosetError("family is not closed under toggles") from None


# -- orbits -------------------------------------------------------------------

@dataclass(frozen=True)
class Orbit:
    """A rowmotion cycle, rotated so the smallest mask comes first."""

    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def representative(self) -> int:
        return self.members[0]

    def starting_at(self, i: int) -> tuple[int, ...]:
        k = self.members.index(i)
        return self.members[k:] + self.members[:k]

    def to_dict(self, p: Poset) -> dict:
        return {"size": self.size, "members": [p.members(s) for s in self.members]}


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple[Orbit, ...]

    @property
    def total(self) -> int:
        return sum(o.size for o in self.orbits)

    @property
    def order(self) -> int:
        return lcm(*(o.size for o in self.orbits))

    def size_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for o in self.orbits:
            counts[o.size] = counts.get(o.size, 0) + 1
        return dict(sorted(counts.items()))

    def to_dict(self, p: Poset, members: bool = True) -> dict:
        d: dict = {"order": self.order, "total": self.total,
                   "sizes": {str(k): v for k, v in self.size_counts().items()}}
        if members:
            d["orbits"] = [o.to_dict(p) for o in self.orbits]
        return d

    def to_json(self, p: Poset, members: bool = True) -> str:
        return json.dumps(self.to_dict(p, members), sort_keys=True)


def _rotate(cycle: list[int]) -> Orbit:
    k = cycle.index(min(cycle))
    return Orbit(tuple(cycle[k:] + cycle[:k]))


def orbit_of(p: Poset, i: int, step: Callable[[Poset, int], int] | None = None,
             max_steps: int | None = None) -> Orbit:
    require_ics(p, i)
    step = step or _row_global
    cap = max_steps if max_steps is not None else 1 << min(p.n, 62)
    cycle = [i]
    j = step(p, i)
    while j != i:
        cycle.append(j)
        if len(cycle) > cap:
            raise OrbitError(f"orbit of {p.members(i)} exceeds {cap} steps")
        j = step(p, j)
    return _rotate(cycle)


def _row_chunk(p: Poset, chunk: list[int]) -> list[int]:
    return [_row_global(p, s) for s in chunk]


def rowmotion_map(p: Poset, family: list[int] | None = None, jobs: int = 1) -> dict[int, int]:
    """``{I: Row(I)}`` over every ICS (or over ``family``)."""
    family = enumerate_ics(p) if family is None else family
    if jobs <= 1:
        images = _row_chunk(p, family)
    else:
        size = -(-len(family) // jobs)
        chunks = [family[k:k + size] for k in range(0, len(family), size)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            images = [s for part in ex.map(_row_chunk, [p] * len(chunks), chunks)
                      for s in part]
    return dict(zip(family, images))


def orbit_decomposition(p: Poset, jobs: int = 1) -> OrbitDecomposition:
    """Partition all ICS of ``p`` into rowmotion orbits, sorted by (size, representative)."""
    family = enumerate_ics(p, jobs=jobs)
    row = rowmotion_map(p, family, jobs=jobs)
    seen: set[int] = set()
    orbits = []
    for s in family:
        if s in seen:
            continue
        cycle = [s]
        seen.add(s)
        t = row[s]
        while t != s:
            if t in seen or len(cycle) > len(family):
                raise OrbitError("rowmotion is not a permutation of the ICS family")
            cycle.append(t)
            seen.add(t)
            t = row[t]
        orbits.append(_rotate(cycle))
    orbits.sort(key=lambda o: (o.size, o.representative))
    return OrbitDecomposition(tuple(orbits))


def functional_graph_dot(p: Poset, row: dict[int, int] | None = None) -> str:
    """Graphviz source for the map ``I -> Row(I)`` on all ICS."""
    row = rowmotion_map(p) if row is None else row
    lines = ["digraph Row {", "  node [shape=box, fontsize=10];"]
    for s in sorted(row):
        name = "{" + ",".join(p.label(x) for x in bits(s)) + "}"
        lines.append(f'  s{s} [label="{name}"];')
    for s in sorted(row):
        lines.append(f"  s{s} -> s{row[s]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
