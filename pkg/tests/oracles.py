"""Brute-force reference implementations used only by the tests.

Each oracle is deliberately naive and shares no code with the library's
solvers beyond the ``Graph`` container.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from srgkit.graphs import Graph


def edge_set(g: Graph) -> set[tuple[int, int]]:
    return {(u, v) for u in range(g.n) for v in range(u + 1, g.n) if g.adj[u] >> v & 1}


def adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in edge_set(g):
        a[u, v] = a[v, u] = 1
    return a


def float_spectrum(g: Graph) -> list[float]:
    return sorted(np.linalg.eigvalsh(adjacency(g)))


def common_neighbours(g: Graph, u: int, v: int) -> int:
    return sum(1 for w in range(g.n) if g.adj[u] >> w & 1 and g.adj[v] >> w & 1)


def srg_params_brute(g: Graph):
    """(n, k, lambda, mu) by direct counting, or None."""
    degs = {bin(r).count("1") for r in g.adj}
    if len(degs) != 1:
        return None
    k = degs.pop()
    lams, mus = set(), set()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            (lams if g.adj[u] >> v & 1 else mus).add(common_neighbours(g, u, v))
    if len(lams) > 1 or len(mus) > 1 or not lams:
        return None
    return (g.n, k, lams.pop(), mus.pop() if mus else 0)


def _subset_flags(g: Graph, want_clique: bool) -> list[bool]:
    """flags[S] says whether subset S is a clique (or coclique)."""
    n = g.n
    flags = [True] * (1 << n)
    for s in range(1, 1 << n):
        v = (s & -s).bit_length() - 1
        rest = s & ~(1 << v)
        nb = g.adj[v] if want_clique else ~g.adj[v]
        flags[s] = flags[rest] and (rest & ~nb) == 0
    return flags


def omega_brute(g: Graph) -> int:
    if g.n <= 20:
        f = _subset_flags(g, True)
        return max(bin(s).count("1") for s in range(1 << g.n) if f[s])
    for size in range(g.n, 0, -1):
        for c in itertools.combinations(range(g.n), size):
            if all(g.adj[u] >> v & 1 for u, v in itertools.combinations(c, 2)):
                return size
    return 0


def alpha_brute(g: Graph) -> int:
    f = _subset_flags(g, False)
    return max(bin(s).count("1") for s in range(1 << g.n) if f[s])


def maximum_cocliques(g: Graph) -> list[frozenset[int]]:
    f = _subset_flags(g, False)
    best = max(bin(s).count("1") for s in range(1 << g.n) if f[s])
    return [frozenset(v for v in range(g.n) if s >> v & 1) for s in range(1 << g.n) if f[s] and bin(s).count("1") == best]


def chromatic_brute(g: Graph) -> int:
    """Inclusion-exclusion over independent-set counts (exact for n <= 20)."""
    n = g.n
    if n == 0:
        return 0
    f = _subset_flags(g, False)
    # ind[S] = number of independent subsets of S (empty set included)
    ind = [1 if f[s] else 0 for s in range(1 << n)]
    for i in range(n):
        for s in range(1 << n):
            if s >> i & 1:
                ind[s] += ind[s ^ (1 << i)]
    full = (1 << n) - 1
    for k in range(1, n + 1):
        total = 0
        for s in range(1 << n):
            sign = -1 if bin(full ^ s).count("1") % 2 else 1
            total += sign * ind[s] ** k
        if total > 0:
            return k
    return n


def proper_colorings(g: Graph, k: int) -> list[tuple[int, ...]]:
    """Every labelled proper k-coloring, by plain backtracking in vertex order."""
    out = []
    col = [-1] * g.n

    def rec(v: int) -> None:
        if v == g.n:
            out.append(tuple(col))
            return
        for c in range(k):
            if all(col[w] != c for w in range(v) if g.adj[v] >> w & 1):
                col[v] = c
                rec(v + 1)
        col[v] = -1

    rec(0)
    return out


def homs_brute(g: Graph, h: Graph) -> list[tuple[int, ...]]:
    """Filter all ``|H|^|G|`` maps."""
    edges = list(edge_set(g))
    return [phi for phi in itertools.product(range(h.n), repeat=g.n) if all(h.adj[phi[u]] >> phi[v] & 1 for u, v in edges)]


def all_graphs_up_to_iso(n_max: int) -> dict[int, list[Graph]]:
    """Isomorphism classes by vertex augmentation, deduplicated with nauty certificates."""
    import pynauty

    def cert(n: int, adj: tuple[int, ...]) -> bytes:
        g = pynauty.Graph(n, adjacency_dict={u: [v for v in range(n) if adj[u] >> v & 1] for u in range(n)})
        return pynauty.certificate(g)

    out = {0: [Graph(0, ())], 1: [Graph(1, (0,))]}
    for n in range(2, n_max + 1):
        seen: dict[bytes, Graph] = {}
        for g in out[n - 1]:
            for nb in range(1 << (n - 1)):
                adj = [r | ((nb >> u & 1) << (n - 1)) for u, r in enumerate(g.adj)] + [nb]
                c = cert(n, tuple(adj))
                if c not in seen:
                    seen[c] = Graph(n, tuple(adj))
        out[n] = list(seen.values())
    return {n: gs for n, gs in out.items() if n <= n_max}


@lru_cache(maxsize=None)
def small_graph_classes(n_max: int = 8) -> dict[int, list[Graph]]:
    return all_graphs_up_to_iso(n_max)


def is_isomorphic_brute(g: Graph, h: Graph) -> bool:
    if g.n != h.n or len(edge_set(g)) != len(edge_set(h)):
        return False
    eg = edge_set(g)
    eh = edge_set(h)
    for perm in itertools.permutations(range(g.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in eh for u, v in eg):
            return True
    return False
