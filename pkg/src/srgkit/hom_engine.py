"""Homomorphism search, classification, core testing and hulls."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .errors import NotHomomorphism, NotPrimitiveSrg
from .exactnum import QuadNum, quad_sign
from .graphs import Graph, complement, iter_bits, verify_srg
from .solvers import Budget, chromatic_number, enumerate_hoffman_colorings, max_clique
from .spectral_certs import check_product_lemma, hom_matrix
from .srg_params import cosines, hoffman_bound

__all__ = [
    "HomKind",
    "Hom",
    "HomSearchResult",
    "TheoremReport",
    "CoreResult",
    "HullGraph",
    "CounterexampleFound",
    "find_homs",
    "is_homomorphism",
    "classify_hom",
    "verify_main_theorem",
    "is_core",
    "hull",
]


class CounterexampleFound(AssertionError):
    """A homomorphism that is neither a coloring nor an isomorphism onto its image."""


class HomKind(str, enum.Enum):
    ISOMORPHISM = "isomorphism"
    ISO_ONTO_INDUCED = "iso-onto-induced-subgraph"
    COLORING = "coloring"
    OTHER = "other"


@dataclass(frozen=True)
class Hom:
    map: tuple[int, ...]
    kind: HomKind

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.map)


@dataclass
class HomSearchResult:
    homs: list[Hom]
    count: int
    complete: bool
    nodes: int

    @property
    def exists(self) -> bool | None:
        if self.count:
            return True
        return False if self.complete else None


def is_homomorphism(g: Graph, h: Graph, phi: Sequence[int]) -> bool:
    return len(phi) == g.n and all(h.has_edge(phi[u], phi[v]) for u, v in g.edges())


def _search_order(g: Graph) -> list[int]:
    """Max degree first, then the vertex with most already-ordered neighbours."""
    order: list[int] = []
    placed = 0
    left = set(range(g.n))
    while left:
        v = max(left, key=lambda u: ((g.adj[u] & placed).bit_count(), g.degree(u), -u))
        order.append(v)
        placed |= 1 << v
        left.remove(v)
    return order


def _backtrack(
    g: Graph,
    h: Graph,
    domains: list[int],
    budget: Budget,
    injective: bool = False,
    induced: bool = False,
) -> Iterator[tuple[int, ...]]:
    """Yield homomorphisms ``g -> h`` respecting the initial ``domains``.

    Forward checking: each assignment intersects the domains of unassigned
    neighbours with the image's neighbourhood.  ``injective`` adds
    all-different; ``induced`` also forces non-edges onto non-edges.
    Stops silently when the budget runs out; callers inspect ``budget``.
    """
    n = g.n
    order = _search_order(g)
    phi = [-1] * n
    h_nonadj = [~h.adj[x] & ~(1 << x) & h.all_vertices for x in range(h.n)]

    def rec(i: int, dom: list[int]) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(phi)
            return
        v = order[i]
        cand = dom[v]
        later = order[i + 1:]
        while cand:
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            if not budget.tick():
                return
            new = dom[:]
            ok = True
            nbrs = g.adj[v]
            for w in later:
                dw = new[w]
                if nbrs >> w & 1:
                    dw &= h.adj[x]
                elif induced:
                    dw &= h_nonadj[x]
                if injective:
                    dw &= ~low
                if not dw:
                    ok = False
                    break
                new[w] = dw
            if not ok:
                continue
            phi[v] = x
            yield from rec(i + 1, new)
            if budget.limit is not None and budget.used > budget.limit:
                return
        phi[v] = -1

    if n == 0:
        yield ()
        return
    yield from rec(0, list(domains))


def classify_hom(g: Graph, h: Graph, phi: Sequence[int]) -> HomKind:
    """Coloring if the image is a clique; iso onto an induced subgraph if
    injective and non-edges stay non-edges (an isomorphism when ``|G| = |H|``)."""
    for u, v in g.edges():
        if not h.has_edge(phi[u], phi[v]):
            raise NotHomomorphism((u, v), (phi[u], phi[v]))
    image = 0
    for x in phi:
        image |= 1 << x
    if h.is_clique(image):
        return HomKind.COLORING
    if image.bit_count() == g.n:
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if not g.has_edge(u, v) and h.has_edge(phi[u], phi[v]):
                    return HomKind.OTHER
        return HomKind.ISOMORPHISM if g.n == h.n else HomKind.ISO_ONTO_INDUCED
    return HomKind.OTHER


def find_homs(
    g: Graph,
    h: Graph,
    mode: str = "enumerate",
    budget: Budget | int | None = None,
    oracle: bool = True,
    domains: list[int] | None = None,
) -> HomSearchResult:
    """Backtracking homomorphism search.

    ``mode`` is ``first``, ``enumerate`` or ``count``.  Oracle mode searches
    all maps with no theorem assumptions.  Fast mode (``oracle=False``) is for
    two primitive SRGs with the same parameters: it only explores isomorphisms
    and colorings onto cliques of size ``1 - k/tau``, which is all that can
    exist between such graphs.  Enumerated homs come back in lexicographic
    order of their maps.
    """
    if mode not in ("first", "enumerate", "count"):
        raise ValueError(f"unknown mode {mode!r}")
    budget = Budget.of(budget)
    start = budget.used
    full = h.all_vertices
    base = list(domains) if domains is not None else [full] * g.n

    if oracle:
        searches = [(base, False, False, None)]
    else:
        searches = _fast_searches(g, h, base)

    homs: list[Hom] = []
    count = 0
    stop = False
    for dom, injective, induced, forced_kind in searches:
        for phi in _backtrack(g, h, dom, budget, injective, induced):
            count += 1
            if mode != "count":
                kind = forced_kind or classify_hom(g, h, phi)
                homs.append(Hom(phi, kind))
            if mode == "first":
                stop = True
                break
        if stop:
            break
    complete = stop or budget.limit is None or budget.used <= budget.limit
    homs.sort(key=lambda m: m.map)
    return HomSearchResult(homs, count, complete, budget.used - start)


def _fast_searches(g: Graph, h: Graph, base: list[int]):
    rg, rh = verify_srg(g), verify_srg(h)
    if not (rg.is_srg and rg.primitive and rh.is_srg and rh.primitive) or rg.params != rh.params:
        raise NotPrimitiveSrg("fast mode needs two primitive SRGs with equal parameters")
    out = [(base, True, True, HomKind.ISOMORPHISM)]
    hb = hoffman_bound(rg.params)
    if hb.is_integer:
        size = int(hb.a)
        for clique in _cliques_of_size(h, size):
            out.append(([d & clique for d in base], False, False, HomKind.COLORING))
    return out


def _cliques_of_size(h: Graph, size: int) -> Iterator[int]:
    def rec(cur: int, cand: int, k: int) -> Iterator[int]:
        if k == 0:
            yield cur
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            yield from rec(cur | low, cand & h.adj[v], k - 1)

    yield from rec(0, h.all_vertices, size)


# -- theorem verification ----------------------------------------------------


@dataclass
class TheoremReport:
    counts: dict[HomKind, int]
    beta: QuadNum
    beta_prime: QuadNum
    product_lemma_failures: int
    complete: bool
    nodes: int
    homs: list[Hom] = field(default_factory=list)
    counterexample: Hom | None = None

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def ok(self) -> bool:
        return self.counterexample is None and self.product_lemma_failures == 0 and self.complete


def verify_main_theorem(
    g: Graph, h: Graph, budget: Budget | int | None = None, keep_homs: bool = False, raise_on_counterexample: bool = False
) -> TheoremReport:
    """Enumerate every homomorphism ``g -> h`` in oracle mode and check that each
    is a coloring or an isomorphism onto an induced subgraph (only a coloring
    when ``beta > beta'``), and that ``(A - tau I) X = 0`` for its homomorphism
    matrix ``X``.
    """
    rg, rh = verify_srg(g), verify_srg(h)
    if not (rg.is_srg and rg.primitive and rh.is_srg and rh.primitive):
        raise NotPrimitiveSrg("both graphs must be primitive SRGs")
    cg, ch = cosines(rg.params), cosines(rh.params)
    if cg.alpha != ch.alpha:
        from .spectral_certs import CosineMismatch

        raise CosineMismatch(f"adjacency cosines differ: {cg.alpha} vs {ch.alpha}")
    budget = Budget.of(budget)
    start = budget.used
    counts = {k: 0 for k in HomKind}
    failures = 0
    cx = None
    kept = []
    strict = quad_sign(cg.beta - ch.beta) > 0
    for phi in _backtrack(g, h, [h.all_vertices] * g.n, budget):
        kind = classify_hom(g, h, phi)
        counts[kind] += 1
        hom = Hom(phi, kind)
        if keep_homs:
            kept.append(hom)
        allowed = {HomKind.COLORING} if strict else {HomKind.COLORING, HomKind.ISOMORPHISM, HomKind.ISO_ONTO_INDUCED}
        if kind not in allowed and cx is None:
            cx = hom
            if raise_on_counterexample:
                raise CounterexampleFound(f"{phi} is {kind.value}")
        X = hom_matrix(g, h, phi, (rg.params, rh.params))
        if not check_product_lemma(g, X, rg.params).ok:
            failures += 1
    complete = budget.limit is None or budget.used <= budget.limit
    kept.sort(key=lambda m: m.map)
    return TheoremReport(counts, cg.beta, ch.beta, failures, complete, budget.used - start, kept, cx)


# -- cores ----------------------------------------------------------------------------


@dataclass
class CoreResult:
    is_core: bool | None
    witness: Hom | None
    fast: bool | None
    slow: bool | None
    note: str = ""

    @property
    def agree(self) -> bool:
        return self.fast is None or self.slow is None or self.fast == self.slow


def _proper_endo(g: Graph, budget: Budget) -> tuple[Hom | None, bool]:
    """Search for an endomorphism missing some vertex; returns (witness, complete)."""
    full = g.all_vertices
    for w in range(g.n):
        res = find_homs(g, g, "first", budget, domains=[full & ~(1 << w)] * g.n)
        if res.homs:
            return res.homs[0], True
        if not res.complete:
            return None, False
    return None, True


def is_core(g: Graph, budget: Budget | int | None = None, strategy: str = "both") -> CoreResult:
    """Core test.

    ``fast`` (primitive SRGs only): not a core iff ``omega = 1 - k/tau = chi``.
    ``slow``: exhaustive search for a non-surjective endomorphism.
    ``both`` runs each applicable path and reports whether they agree.
    """
    if strategy not in ("fast", "slow", "both"):
        raise ValueError(f"unknown strategy {strategy!r}")
    budget = Budget.of(budget)
    rep = verify_srg(g)
    fast = None
    witness = None
    notes = []
    if strategy in ("fast", "both") and rep.is_srg and rep.primitive:
        hb = hoffman_bound(rep.params)
        omega = max_clique(g, budget)
        if omega.size != hb:
            fast = True
        else:
            chi = chromatic_number(g, budget)
            fast = chi.chromatic != hb
            if not fast:
                col = chi.coloring(g.n)
                phi = tuple(omega.witness[c] for c in col)
                witness = Hom(phi, classify_hom(g, g, phi))
    elif strategy == "fast":
        raise NotPrimitiveSrg("the fast core test needs a primitive SRG")
    slow = None
    if strategy in ("slow", "both") or fast is None:
        endo, complete = _proper_endo(g, budget)
        if endo is not None:
            slow = False
            witness = witness or endo
        elif complete:
            slow = True
        else:
            notes.append("exhaustive search ran out of budget")
    verdicts = {x for x in (fast, slow) if x is not None}
    if len(verdicts) > 1:
        notes.append("fast and slow paths disagree")
        result = None
    else:
        result = verdicts.pop() if verdicts else None
    return CoreResult(result, witness, fast, slow, "; ".join(notes))


# -- hull --------------------------------------------------------------------------------


@dataclass
class HullGraph:
    base: Graph
    hull_adj: tuple[int, ...]
    complete: bool = True

    @property
    def graph(self) -> Graph:
        return Graph(self.base.n, self.hull_adj)


def _identified_pairs(phi: Sequence[int]) -> Iterator[tuple[int, int]]:
    fibers: dict[int, list[int]] = {}
    for u, x in enumerate(phi):
        fibers.setdefault(x, []).append(u)
    for vs in fibers.values():
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                yield u, v


def hull(g: Graph, strategy: str = "bruteforce", budget: Budget | int | None = None) -> HullGraph:
    """Graph on V(G) where ``u ~ v`` iff no endomorphism identifies ``u`` and ``v``.

    ``bruteforce`` runs a constrained search per non-adjacent pair (on the
    quotient with ``u`` and ``v`` merged), reusing every endomorphism found to
    settle other pairs.  ``pseudocore-fast`` needs a primitive SRG and uses
    that its proper endomorphisms are exactly the colorings onto cliques of
    size ``1 - k/tau``, so pairs are identified iff some Hoffman coloring puts
    them in one class (and such a clique exists).
    """
    budget = Budget.of(budget)
    n = g.n
    identified = [0] * n
    complete = True
    if strategy == "bruteforce":
        for u in range(n):
            for v in range(u + 1, n):
                if g.has_edge(u, v) or identified[u] >> v & 1:
                    continue
                quotient, old_to_new = g.contract(u, v)
                res = find_homs(quotient, g, "first", budget)
                if res.homs:
                    phi = [res.homs[0].map[old_to_new[w]] for w in range(n)]
                    for a, b in _identified_pairs(phi):
                        identified[a] |= 1 << b
                        identified[b] |= 1 << a
                elif not res.complete:
                    complete = False
    elif strategy == "pseudocore-fast":
        rep = verify_srg(g)
        if not (rep.is_srg and rep.primitive):
            raise NotPrimitiveSrg("pseudocore-fast hull needs a primitive SRG")
        hb = hoffman_bound(rep.params)
        if hb.is_integer and max_clique(g, budget).size == hb:
            for part in enumerate_hoffman_colorings(g, budget=budget).partitions:
                for cls in part:
                    for a in cls:
                        for b in cls:
                            if a != b:
                                identified[a] |= 1 << b
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    full = g.all_vertices
    rows = tuple(full & ~identified[u] & ~(1 << u) for u in range(n))
    return HullGraph(g, rows, complete)
