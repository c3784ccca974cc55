"""Deterministic constructions of the standard small SRGs used as test corpus."""

from __future__ import annotations

import itertools
import re

from .graphs import Graph

__all__ = [
    "UnknownFixture",
    "fixture",
    "fixture_names",
    "petersen",
    "rook",
    "shrikhande",
    "clebsch",
    "cycle",
    "complete",
    "paley",
]


class UnknownFixture(KeyError):
    pass


def petersen() -> Graph:
    """Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint."""
    pairs = list(itertools.combinations(range(5), 2))
    edges = [(i, j) for i, j in itertools.combinations(range(10), 2) if not set(pairs[i]) & set(pairs[j])]
    return Graph.from_edges(10, edges)


def rook(m: int = 4) -> Graph:
    """K_m box K_m; vertex ``m*r + c`` is cell (r, c)."""
    n = m * m
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(n), 2)
        if (i // m == j // m) != (i % m == j % m)
    ]
    return Graph.from_edges(n, edges)


def _cayley_z4z4(conn: set[tuple[int, int]]) -> Graph:
    def vid(x: int, y: int) -> int:
        return 4 * (x % 4) + (y % 4)

    edges = set()
    for x, y in itertools.product(range(4), repeat=2):
        for dx, dy in conn:
            u, v = vid(x, y), vid(x + dx, y + dy)
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(16, sorted(edges))


def shrikhande() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}."""
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    return _cayley_z4z4(conn)


def clebsch() -> Graph:
    """Folded 5-cube: 4-bit words, adjacent when they differ in one bit or in all four."""
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(16), 2)
        if (u ^ v).bit_count() in (1, 4)
    ]
    return Graph.from_edges(16, edges)


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


# -- small finite fields ----------------------------------------------------


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def _polymulmod(a: tuple[int, ...], b: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    e = len(mod) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce by the monic modulus, highest degree first
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            for i in range(e + 1):
                prod[deg - e + i] = (prod[deg - e + i] - c * mod[i]) % p
    return tuple(prod[:e])


def _field_elements(p: int, e: int) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    elems = list(itertools.product(range(p), repeat=e))
    if e == 1:
        return elems, (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        mod = tail + (1,)
        # the quotient ring is a field iff it has no zero divisors
        zero = (0,) * e
        ok = all(
            _polymulmod(a, b, mod, p) != zero
            for a in elems if a != zero
            for b in elems if b != zero
        )
        if ok:
            return elems, mod
    raise AssertionError("no irreducible polynomial found")


def paley(q: int) -> Graph:
    """Paley graph on GF(q), q a prime power congruent to 1 mod 4."""
    p, e = _prime_power(q)
    if q % 4 != 1:
        raise ValueError(f"Paley graph needs q = 1 mod 4, got {q}")
    elems, mod = _field_elements(p, e)
    index = {x: i for i, x in enumerate(elems)}
    zero = (0,) * e
    squares = {_polymulmod(x, x, mod, p) for x in elems if x != zero}
    edges = []
    for x, y in itertools.combinations(elems, 2):
        diff = tuple((a - b) % p for a, b in zip(x, y))
        if diff in squares:
            edges.append((index[x], index[y]))
    return Graph.from_edges(q, edges)


_SIMPLE = {
    "petersen": petersen,
    "rook4": lambda: rook(4),
    "shrikhande": shrikhande,
    "clebsch": clebsch,
    "c5": lambda: cycle(5),
}


def fixture_names() -> list[str]:
    return sorted(_SIMPLE) + ["paley(q)", "rook(m)"]


def fixture(name: str) -> Graph:
    """Look up a fixture by name: petersen, rook4, shrikhande, clebsch, c5,
    paley(q) for prime powers q = 1 mod 4, or rook(m) for the m x m rook's graph."""
    key = name.strip().lower()
    if key in _SIMPLE:
        return _SIMPLE[key]()
    m = re.fullmatch(r"paley[(:]?(\d+)\)?", key)
    if m:
        try:
            return paley(int(m.group(1)))
        except ValueError as exc:
            raise UnknownFixture(f"{name}: {exc}") from None
    m = re.fullmatch(r"rook[(:]?(\d+)\)?", key)
    if m and int(m.group(1)) >= 2:
        return rook(int(m.group(1)))
    raise UnknownFixture(name)
