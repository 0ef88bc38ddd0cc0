"""Finite posets on the ground set ``0..n-1`` with bitmask subsets.

Every subset of a poset (order ideals, filters, antichains, interval-closed
sets) is a plain ``int`` whose bit ``i`` marks element ``i``.  A :class:`Poset`
precomputes, for each element, the mask of everything below it and above it,
so closures and extremal elements reduce to a handful of OR/AND operations.
"""
from __future__ import annotations

import heapq
import json
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

# enumeration cost, not representation, is the binding constraint
DEFAULT_MAX_ELEMENTS = 256


class PosetError(ValueError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, eq=False)
class Poset:
    """Immutable finite poset given by its cover relations.

    Equality and hashing are structural: two posets are equal when they have
    the same number of elements and the same cover pairs.  Labels and ranks are
    display metadata and do not take part in comparisons.
    """

    n: int
    covers: frozenset[tuple[int, int]]
    labels: tuple[str, ...] | None = None
    down: tuple[int, ...] = field(init=False, repr=False)
    up: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PosetError("empty posets are not supported")
        if self.labels is not None and len(self.labels) != self.n:
            raise PosetError("need exactly one label per element")
        lower: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.covers:
            if not (0 <= a < self.n and 0 <= b < self.n) or a == b:
                raise PosetError(f"bad cover pair {(a, b)}")
            lower[b].append(a)
        down = [0] * self.n
        state = [0] * self.n  # 0 new, 1 on stack, 2 done
        for root in range(self.n):
            if state[root]:
                continue
            stack = [(root, iter(lower[root]))]
            state[root] = 1
            while stack:
                x, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    m = 1 << x
                    for y in lower[x]:
                        m |= down[y]
                    down[x] = m
                    state[x] = 2
                    stack.pop()
                elif state[nxt] == 1:
                    raise PosetError("cover relation contains a cycle")
                elif state[nxt] == 0:
                    state[nxt] = 1
                    stack.append((nxt, iter(lower[nxt])))
        up = [0] * self.n
        for x in range(self.n):
            for y in bits(down[x]):
                up[y] |= 1 << x
        for a, b in self.covers:
            # a cover implied by a longer path is not a cover
            for c in lower[b]:
                if c != a and down[c] >> a & 1:
                    raise PosetError(f"{(a, b)} is not transitively reduced")
        object.__setattr__(self, "down", tuple(down))
        object.__setattr__(self, "up", tuple(up))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[Sequence[int]],
                    labels: Sequence[str] | None = None) -> "Poset":
        return cls(n, frozenset((int(a), int(b)) for a, b in covers),
                   tuple(labels) if labels is not None else None)

    @classmethod
    def from_relation(cls, n: int, less: Iterable[Sequence[int]],
                      labels: Sequence[str] | None = None) -> "Poset":
        """Build a poset from any generating set of strict relations.

        The relation is transitively closed and then reduced to covers.
        """
        below = [1 << x for x in range(n)]
        succ: list[list[int]] = [[] for _ in range(n)]
        for a, b in less:
            succ[a].append(b)
        order = _topological(n, succ)
        for x in order:
            for y in succ[x]:
                below[y] |= below[x]
        covers = set()
        for b in range(n):
            strict = below[b] & ~(1 << b)
            for a in bits(strict):
                # a is covered by b unless some c strictly between
                between = strict & ~below[a]
                if not any(below[c] >> a & 1 for c in bits(between)):
                    covers.add((a, b))
        return cls(n, frozenset(covers), tuple(labels) if labels else None)

    # -- basic queries --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.n, self.covers))

    def __len__(self) -> int:
        return self.n

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def leq_matrix(self) -> list[list[bool]]:
        return [[self.leq(a, b) for b in range(self.n)] for a in range(self.n)]

    @cached_property
    def strict_down(self) -> tuple[int, ...]:
        return tuple(d & ~(1 << x) for x, d in enumerate(self.down))

    @cached_property
    def strict_up(self) -> tuple[int, ...]:
        return tuple(u & ~(1 << x) for x, u in enumerate(self.up))

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        low: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.covers:
            low[b].append(a)
        return tuple(tuple(sorted(c)) for c in low)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        upp: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.covers:
            upp[a].append(b)
        return tuple(tuple(sorted(c)) for c in upp)

    @cached_property
    def incomparable(self) -> tuple[int, ...]:
        return tuple(self.full & ~(d | u) for d, u in zip(self.down, self.up))

    @cached_property
    def minimal_elements(self) -> int:
        return sum(1 << x for x in range(self.n) if self.strict_down[x] == 0)

    @cached_property
    def maximal_elements(self) -> int:
        return sum(1 << x for x in range(self.n) if self.strict_up[x] == 0)

    @cached_property
    def ranks(self) -> tuple[int, ...] | None:
        """Rank function with minimum 0 on each connected component.

        ``None`` when no function with ``rk(b) = rk(a) + 1`` on every cover
        exists.
        """
        rk: list[int | None] = [None] * self.n
        for root in range(self.n):
            if rk[root] is not None:
                continue
            rk[root] = 0
            comp = [root]
            queue = deque([root])
            while queue:
                x = queue.popleft()
                steps = [(y, -1) for y in self.lower_covers[x]]
                steps += [(y, 1) for y in self.upper_covers[x]]
                for y, d in steps:
                    want = rk[x] + d
                    if rk[y] is None:
                        rk[y] = want
                        comp.append(y)
                        queue.append(y)
                    elif rk[y] != want:
                        return None
            low = min(rk[x] for x in comp)
            for x in comp:
                rk[x] -= low
        return tuple(rk)  # type: ignore[arg-type]

    @property
    def is_ranked(self) -> bool:
        return self.ranks is not None

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def resolve(self, token: str) -> int:
        """Element index named by ``token``: an index, a label, ``top`` or ``bottom``."""
        t = token.strip()
        squashed = t.replace(" ", "")
        if self.labels is not None:
            for x, lab in enumerate(self.labels):
                if lab.replace(" ", "") == squashed:
                    return x
        if t in ("top", "bottom"):
            ext = self.maximal_elements if t == "top" else self.minimal_elements
            if popcount(ext) != 1:
                raise PosetError(f"poset has no unique {t} element")
            return ext.bit_length() - 1
        try:
            x = int(t)
        except ValueError:
            raise PosetError(f"unknown element {token!r}") from None
        if not 0 <= x < self.n:
            raise PosetError(f"element {x} out of range 0..{self.n - 1}")
        return x

    # -- subsets --------------------------------------------------------------

    def check(self, mask: int) -> int:
        """Return ``mask`` unchanged, rejecting anything outside the ground set."""
        if mask < 0 or mask >> self.n:
            raise PosetError(f"subset {mask:#x} is not over a {self.n}-element poset")
        return mask

    def mask(self, elements: Iterable[int]) -> int:
        m = 0
        for x in elements:
            if not 0 <= x < self.n:
                raise PosetError(f"element {x} out of range 0..{self.n - 1}")
            m |= 1 << x
        return m

    def members(self, mask: int) -> list[int]:
        return list(bits(self.check(mask)))

    def ideal_closure(self, mask: int) -> int:
        out = 0
        for x in bits(self.check(mask)):
            out |= self.down[x]
        return out

    def filter_closure(self, mask: int) -> int:
        out = 0
        for x in bits(self.check(mask)):
            out |= self.up[x]
        return out

    def minimal(self, mask: int) -> int:
        """Elements of ``mask`` with nothing smaller inside ``mask``."""
        return sum(1 << x for x in bits(self.check(mask))
                   if not self.strict_down[x] & mask)

    def maximal(self, mask: int) -> int:
        return sum(1 << x for x in bits(self.check(mask))
                   if not self.strict_up[x] & mask)

    def extremal(self, mask: int, which: str) -> int:
        if which == "min":
            return self.minimal(mask)
        if which == "max":
            return self.maximal(mask)
        raise ValueError("which must be 'min' or 'max'")

    def is_antichain(self, mask: int) -> bool:
        return all(not (self.strict_down[x] & mask) for x in bits(self.check(mask)))

    def is_order_ideal(self, mask: int) -> bool:
        return self.ideal_closure(mask) == mask

    # -- linear extensions ----------------------------------------------------

    def linear_extension(self) -> tuple[int, ...]:
        """Topological order that always takes the smallest available index."""
        indeg = [len(c) for c in self.lower_covers]
        heap = [x for x in range(self.n) if indeg[x] == 0]
        heapq.heapify(heap)
        out = []
        while heap:
            x = heapq.heappop(heap)
            out.append(x)
            for y in self.upper_covers[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    heapq.heappush(heap, y)
        return tuple(out)

    def random_linear_extension(self, rng: random.Random) -> tuple[int, ...]:
        indeg = [len(c) for c in self.lower_covers]
        avail = [x for x in range(self.n) if indeg[x] == 0]
        out = []
        while avail:
            x = avail.pop(rng.randrange(len(avail)))
            out.append(x)
            for y in self.upper_covers[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    avail.append(y)
        return tuple(out)

    def is_linear_extension(self, order: Sequence[int]) -> bool:
        if sorted(order) != list(range(self.n)):
            return False
        pos = {x: i for i, x in enumerate(order)}
        return all(pos[a] < pos[b] for a, b in self.covers)

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        d: dict = {"n": self.n, "covers": [list(c) for c in sorted(self.covers)]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        if self.ranks is not None:
            d["ranks"] = list(self.ranks)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Poset":
        p = cls.from_covers(d["n"], d["covers"], d.get("labels"))
        if "ranks" in d and list(p.ranks or []) != list(d["ranks"]):
            raise PosetError("stored ranks disagree with the cover relation")
        return p

    @classmethod
    def from_json(cls, text: str) -> "Poset":
        return cls.from_dict(json.loads(text))

    def to_dot(self, highlight: int = 0, name: str = "P") -> str:
        """Graphviz source for the Hasse diagram, bottom to top by rank."""
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
        for x in range(self.n):
            style = ', style=filled, fillcolor="#e06666"' if highlight >> x & 1 else ""
            lines.append(f'  {x} [label="{self.label(x)}"{style}];')
        if self.ranks is not None:
            layers: dict[int, list[int]] = {}
            for x, r in enumerate(self.ranks):
                layers.setdefault(r, []).append(x)
            for r in sorted(layers):
                lines.append("  { rank=same; " + " ".join(map(str, layers[r])) + "; }")
        for a, b in sorted(self.covers):
            lines.append(f"  {a} -> {b} [arrowhead=none];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _topological(n: int, succ: list[list[int]]) -> list[int]:
    indeg = [0] * n
    for x in range(n):
        for y in succ[x]:
            indeg[y] += 1
    queue = deque(x for x in range(n) if indeg[x] == 0)
    order = []
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if len(order) != n:
        raise PosetError("relation contains a cycle")
    return order


# -- constructors -------------------------------------------------------------

def chain(n: int) -> Poset:
    if n < 1:
        raise PosetError("chain needs at least one element")
    return Poset.from_covers(n, [(i, i + 1) for i in range(n - 1)],
                             [str(i + 1) for i in range(n)])


def antichain(n: int) -> Poset:
    if n < 1:
        raise PosetError("antichain needs at least one element")
    return Poset.from_covers(n, [], [str(i + 1) for i in range(n)])


def _offsets(parts: Sequence[Poset]) -> list[int]:
    if not parts:
        raise PosetError("need at least one part")
    offs, total = [], 0
    for p in parts:
        offs.append(total)
        total += p.n
    return offs


def ordinal_sum(parts: Sequence[Poset]) -> Poset:
    """Stack ``parts`` bottom to top; labels are ``(part, local)``, both 1-based."""
    offs = _offsets(parts)
    covers = []
    labels = []
    for i, (p, o) in enumerate(zip(parts, offs)):
        covers += [(a + o, b + o) for a, b in p.covers]
        labels += [f"({i + 1},{x + 1})" for x in range(p.n)]
        if i + 1 < len(parts):
            q, oq = parts[i + 1], offs[i + 1]
            covers += [(a + o, b + oq) for a in bits(p.maximal_elements)
                       for b in bits(q.minimal_elements)]
    return Poset.from_covers(sum(p.n for p in parts), covers, labels)


def disjoint_union(parts: Sequence[Poset]) -> Poset:
    offs = _offsets(parts)
    covers = []
    labels = []
    for i, (p, o) in enumerate(zip(parts, offs)):
        covers += [(a + o, b + o) for a, b in p.covers]
        labels += [f"({i + 1},{x + 1})" for x in range(p.n)]
    return Poset.from_covers(sum(p.n for p in parts), covers, labels)


def _coords(p: Poset, x: int) -> str:
    return p.label(x).strip("()")


def product(p: Poset, q: Poset) -> Poset:
    """Cartesian product, element ``(a, b)`` at index ``a * q.n + b``.

    Labels are coordinate tuples; nested products flatten, so the product of
    three chains is labelled ``(a,b,c)`` with 1-based coordinates.
    """
    covers = []
    for a, b in p.covers:
        covers += [(a * q.n + y, b * q.n + y) for y in range(q.n)]
    for a, b in q.covers:
        covers += [(x * q.n + a, x * q.n + b) for x in range(p.n)]
    labels = [f"({_coords(p, x)},{_coords(q, y)})" for x in range(p.n) for y in range(q.n)]
    return Poset.from_covers(p.n * q.n, covers, labels)


def product_of_chains(*sizes: int) -> Poset:
    if not sizes:
        raise PosetError("need at least one chain")
    out = chain(sizes[0])
    for s in sizes[1:]:
        out = product(out, chain(s))
    return out


def ordinal_sum_of_antichains(sizes: Sequence[int]) -> Poset:
    return ordinal_sum([antichain(a) for a in sizes])


def stacked_diamond(n: int, m: int) -> Poset:
    """``1 + m + 1 + ... + m + 1`` with ``n`` summands."""
    if n < 3 or n % 2 == 0:
        raise PosetError("stacked diamonds need an odd number of summands >= 3")
    if m < 2:
        raise PosetError("stacked diamonds need m >= 2")
    return ordinal_sum_of_antichains([1 if i % 2 == 0 else m for i in range(n)])


def _factorize(d: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= d:
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if d > 1:
        out.append((d, 1))
    return out


def divisor_poset(d: int) -> Poset:
    """Divisors of ``d`` under divisibility.

    Chains are ordered by increasing exponent (ties by prime) so that, for
    example, 48 = 3 * 2^4 comes out as ``[2] x [5]``.
    """
    if d < 2:
        raise PosetError("divisor poset needs d >= 2")
    factors = sorted(_factorize(d), key=lambda pe: (pe[1], pe[0]))
    p = product_of_chains(*(e + 1 for _, e in factors))
    divisors = []
    for x in range(p.n):
        value, rest = 1, x
        for prime, e in reversed(factors):
            rest, k = divmod(rest, e + 1)
            value *= prime ** k
        divisors.append(str(value))
    return Poset(p.n, p.covers, tuple(divisors))


def dual(p: Poset) -> Poset:
    return Poset(p.n, frozenset((b, a) for a, b in p.covers), p.labels)


def check_size(p: Poset, limit: int = DEFAULT_MAX_ELEMENTS) -> Poset:
    if p.n > limit:
        raise PosetError(f"poset has {p.n} elements, above the cap of {limit}")
    return p


def is_isomorphic(p: Poset, q: Poset) -> bool:
    """Order isomorphism, i.e. equality up to renaming elements."""
    if p.n != q.n or len(p.covers) != len(q.covers):
        return False
    import networkx as nx

    def graph(r: Poset):
        g = nx.DiGraph()
        g.add_nodes_from(range(r.n))
        g.add_edges_from(r.covers)
        return g
    return nx.is_isomorphic(graph(p), graph(q))
