"""Statistics on interval-closed sets, homomesy reports and a cyclic sieving check."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .ics import _is_ics, require_ics
from .poset import Poset, PosetError, bits, popcount
from .rowmotion import Orbit, OrbitDecomposition, orbit_decomposition

NAMES = ("cardinality", "signed_cardinality", "toggleability",
         "max_count", "min_count", "max_minus_min")


@dataclass(frozen=True)
class Statistic:
    """A registered statistic; ``element`` is only used by toggleability."""

    name: str
    element: int | None = None

    def __post_init__(self) -> None:
        if self.name not in NAMES:
            raise ValueError(f"unknown statistic {self.name!r}; choose from {', '.join(NAMES)}")
        if (self.name == "toggleability") != (self.element is not None):
            raise ValueError("toggleability needs an element and nothing else takes one")

    @property
    def id(self) -> str:
        return self.name if self.element is None else f"{self.name}:{self.element}"

    def bind(self, p: Poset) -> Callable[[int], int]:
        """Fast evaluator for ICS of ``p`` (no validation)."""
        if self.name == "cardinality":
            return popcount
        if self.name == "signed_cardinality":
            if p.ranks is None:
                raise PosetError("signed cardinality needs a ranked poset")
            even = sum(1 << x for x, r in enumerate(p.ranks) if r % 2 == 0)
            return lambda i: popcount(i & even) - popcount(i & ~even)
        if self.name == "toggleability":
            x = self.element
            if not 0 <= x < p.n:
                raise PosetError(f"element {x} out of range 0..{p.n - 1}")
            bit = 1 << x

            def toggleability(i: int) -> int:
                if not _is_ics(p, i ^ bit):
                    return 0
                return -1 if i & bit else 1
            return toggleability
        sd, su = p.strict_down, p.strict_up

        def n_max(i: int) -> int:
            return sum(1 for x in bits(i) if not su[x] & i)

        def n_min(i: int) -> int:
            return sum(1 for x in bits(i) if not sd[x] & i)
        if self.name == "max_count":
            return n_max
        if self.name == "min_count":
            return n_min
        return lambda i: n_max(i) - n_min(i)


def parse_statistic(p: Poset, text: str) -> Statistic:
    """``cardinality`` or ``toggleability:<index|label|top|bottom>`` and so on."""
    name, _, arg = text.partition(":")
    name = name.strip()
    if name == "toggleability":
        if not arg:
            raise ValueError("toggleability needs an element, e.g. toggleability:top")
        return Statistic(name, p.resolve(arg))
    if arg:
        raise ValueError(f"statistic {name!r} takes no argument")
    return Statistic(name)


def evaluate(p: Poset, stat: Statistic, i: int) -> int:
    return stat.bind(p)(require_ics(p, i))


def orbit_average(p: Poset, stat: Statistic, orbit: Orbit) -> Fraction:
    f = stat.bind(p)
    return Fraction(sum(f(i) for i in orbit.members), orbit.size)


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class HomomesyReport:
    stat: str
    averages: tuple[Fraction, ...]
    sizes: tuple[int, ...]
    global_average: Fraction
    witness: tuple[int, int] | None

    @property
    def homomesic(self) -> bool:
        return self.witness is None

    @property
    def c(self) -> Fraction | None:
        return self.global_average if self.homomesic else None

    def to_dict(self) -> dict:
        d: dict = {
            "stat": self.stat,
            "homomesic": self.homomesic,
            "global_average": _frac(self.global_average),
            "orbit_averages": [[_frac(a), s] for a, s in zip(self.averages, self.sizes)],
            "witness": None,
        }
        if self.homomesic:
            d["c"] = _frac(self.global_average)
        else:
            i, j = self.witness
            d["witness"] = {"orbits": [i, j],
                            "averages": [_frac(self.averages[i]), _frac(self.averages[j])]}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def homomesy_report(p: Poset, stat: Statistic,
                    decomposition: OrbitDecomposition | None = None) -> HomomesyReport:
    """Exact orbit averages and the first pair of orbits whose averages differ."""
    dec = decomposition or orbit_decomposition(p)
    f = stat.bind(p)
    sums = [sum(f(i) for i in o.members) for o in dec.orbits]
    sizes = tuple(o.size for o in dec.orbits)
    avgs = tuple(Fraction(s, k) for s, k in zip(sums, sizes))
    witness = None
    for j, a in enumerate(avgs):
        if a != avgs[0]:
            witness = (0, j)
            break
    return HomomesyReport(stat.id, avgs, sizes, Fraction(sum(sums), sum(sizes)), witness)


# -- cyclic sieving -----------------------------------------------------------

def _polydivmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials by a monic divisor, lowest degree first."""
    num = num[:]
    q = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        if c:
            q[k] = c
            for t, d in enumerate(den):
                num[k + t] -= c * d
    rem = num[:len(den) - 1] or [0]
    return q, rem


_CYCLO: dict[int, list[int]] = {}


def cyclotomic(n: int) -> list[int]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n in _CYCLO:
        return _CYCLO[n]
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _polydivmod(poly, cyclotomic(d))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    _CYCLO[n] = poly
    return poly


def evaluates_to(coeffs: dict[int, int], order: int, d: int, value: int) -> bool:
    """Whether ``sum c_e w^(e d)`` equals ``value`` for a primitive ``order``-th root ``w``."""
    g = [0] * order
    for e, c in coeffs.items():
        g[e * d % order] += c
    g[0] -= value
    _, rem = _polydivmod(g, cyclotomic(order))
    return not any(rem)


@dataclass(frozen=True)
class CspVerdict:
    order: int
    fixed_points: tuple[int, ...]
    failing_d: int | None

    @property
    def holds(self) -> bool:
        return self.failing_d is None


def csp_check(p: Poset, stat: Statistic,
              decomposition: OrbitDecomposition | None = None) -> CspVerdict:
    """Test ``(IC(P), sum_I q^stat(I), Row)`` for the cyclic sieving phenomenon."""
    dec = decomposition or orbit_decomposition(p)
    f = stat.bind(p)
    coeffs: dict[int, int] = {}
    for o in dec.orbits:
        for i in o.members:
            e = f(i)
            if e < 0:
                raise ValueError(f"{stat.id} takes negative values; CSP needs a nonnegative statistic")
            coeffs[e] = coeffs.get(e, 0) + 1
    order = dec.order
    fixed = tuple(sum(o.size for o in dec.orbits if d % o.size == 0) for d in range(order))
    failing = None
    for d in range(order):
        if not evaluates_to(coeffs, order, d, fixed[d]):
            failing = d
            break
    return CspVerdict(order, fixed, failing)
