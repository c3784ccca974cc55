"""Exact clique, coclique and chromatic number solvers plus Hoffman colorings.

All searches are deterministic and metered by a node budget (a count of
search nodes, not wall-clock time).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, NotPrimitiveSrg
from .exactnum import QuadNum, as_quad, quad_sign
from .graphs import Graph, complement, iter_bits, verify_srg
from .srg_params import SrgParams, check_feasible, hoffman_bound, ratio_bound, spectrum

__all__ = [
    "CliqueResult",
    "ColoringResult",
    "HoffmanColoringReport",
    "NonIntegerBound",
    "NotPartition",
    "Budget",
    "max_clique",
    "max_coclique",
    "chromatic_number",
    "greedy_dsatur",
    "check_hoffman_coloring",
    "enumerate_hoffman_colorings",
]


class NonIntegerBound(ValueError):
    pass


class NotPartition(ValueError):
    pass


class Budget:
    """Shared node counter; ``None`` means unlimited."""

    def __init__(self, limit: int | None = None):
        if limit is not None and limit < 1:
            raise ValueError("budget must be >= 1")
        self.limit = limit
        self.used = 0

    def tick(self) -> bool:
        self.used += 1
        return self.limit is None or self.used <= self.limit

    @classmethod
    def of(cls, budget: Budget | int | None) -> Budget:
        return budget if isinstance(budget, Budget) else cls(budget)


def _srg_params(g: Graph) -> SrgParams | None:
    rep = verify_srg(g)
    if rep.is_srg and check_feasible(rep.params):
        return rep.params
    return None


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[int, ...]
    is_delsarte: bool


@dataclass(frozen=True)
class ColoringResult:
    chromatic: int
    classes: tuple[tuple[int, ...], ...]
    is_hoffman: bool

    def coloring(self, n: int) -> list[int]:
        col = [-1] * n
        for c, cls in enumerate(self.classes):
            for v in cls:
                col[v] = c
        return col


# -- maximum clique -------------------------------------------------------------


def _color_bound(g: Graph, cand: int) -> tuple[list[int], list[int]]:
    """Greedy sequential coloring of ``cand``; returns vertices and color numbers in color order."""
    order, colors = [], []
    color = 0
    left = cand
    while left:
        color += 1
        avail = left
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~g.adj[v] & ~(1 << v)
            left &= ~(1 << v)
            order.append(v)
            colors.append(color)
    return order, colors


def _clique_search(g: Graph, budget: Budget, ceiling: int | None) -> tuple[int, ...]:
    best: list[int] = []
    cur: list[int] = []

    def expand(cand: int) -> bool:
        nonlocal best
        order, colors = _color_bound(g, cand)
        for i in range(len(order) - 1, -1, -1):
            if len(cur) + colors[i] <= len(best):
                return False
            v = order[i]
            if not budget.tick():
                raise BudgetExceeded("max_clique", len(best), None, tuple(sorted(best)))
            cur.append(v)
            new = cand & g.adj[v]
            if new:
                if expand(new):
                    return True
            elif len(cur) > len(best):
                best = cur[:]
                if ceiling is not None and len(best) >= ceiling:
                    return True
            cur.pop()
            cand &= ~(1 << v)
        return False

    if g.n:
        expand(g.all_vertices)
    return tuple(sorted(best))


def max_clique(g: Graph, budget: Budget | int | None = None) -> CliqueResult:
    """Exact clique number by colour-bounded branch and bound on bitsets.

    For a strongly regular input the search stops as soon as a clique of size
    ``floor(1 - k/tau)`` appears, since nothing larger exists.
    """
    budget = Budget.of(budget)
    p = _srg_params(g)
    ceiling = hoffman_bound(p).floor() if p else None
    try:
        witness = _clique_search(g, budget, ceiling)
    except BudgetExceeded as exc:
        exc.upper = ceiling if ceiling is not None else g.n
        raise
    delsarte = p is not None and hoffman_bound(p) == len(witness)
    return CliqueResult(len(witness), witness, delsarte)


def max_coclique(g: Graph, budget: Budget | int | None = None) -> CliqueResult:
    """Maximum independent set, flagged Delsarte when it meets ``n tau/(tau - k)``."""
    budget = Budget.of(budget)
    p = _srg_params(g)
    ceiling = ratio_bound(p).floor() if p else None
    try:
        witness = _clique_search(complement(g), budget, ceiling)
    except BudgetExceeded as exc:
        exc.upper = ceiling if ceiling is not None else g.n
        raise
    delsarte = p is not None and ratio_bound(p) == len(witness)
    return CliqueResult(len(witness), witness, delsarte)


# -- chromatic number ---------------------------------------------------------------


def greedy_dsatur(g: Graph, seed: Sequence[int] = ()) -> list[int]:
    """DSATUR greedy coloring; ties go to higher degree then lower index."""
    n = g.n
    col = [-1] * n
    sat = [0] * n  # bitmask of neighbouring colours
    for c, v in enumerate(seed):
        col[v] = c
        for w in iter_bits(g.adj[v]):
            sat[w] |= 1 << c
    for _ in range(n - len(seed)):
        v = max((u for u in range(n) if col[u] < 0), key=lambda u: (sat[u].bit_count(), g.degree(u), -u))
        c = (~sat[v] & (sat[v] + 1)).bit_length() - 1
        col[v] = c
        for w in iter_bits(g.adj[v]):
            sat[w] |= 1 << c
    return col


def _classes(col: list[int]) -> tuple[tuple[int, ...], ...]:
    k = max(col) + 1 if col else 0
    return tuple(tuple(v for v, c in enumerate(col) if c == i) for i in range(k))


def _k_colorable(g: Graph, k: int, seed: tuple[int, ...], budget: Budget) -> list[int] | None:
    """DSATUR-ordered backtracking; the seed clique is precoloured 0..|seed|-1."""
    n = g.n
    col = [-1] * n
    sat_count = [[0] * k for _ in range(n)]  # neighbours per colour
    sat = [0] * n
    uncolored = set(range(n))

    def assign(v: int, c: int) -> None:
        col[v] = c
        uncolored.discard(v)
        for w in iter_bits(g.adj[v]):
            sat_count[w][c] += 1
            if sat_count[w][c] == 1:
                sat[w] += 1

    def unassign(v: int, c: int) -> None:
        col[v] = -1
        uncolored.add(v)
        for w in iter_bits(g.adj[v]):
            sat_count[w][c] -= 1
            if sat_count[w][c] == 0:
                sat[w] -= 1

    for c, v in enumerate(seed):
        assign(v, c)
    used = [len(seed)]

    def search() -> bool:
        if not uncolored:
            return True
        v = max(uncolored, key=lambda u: (sat[u], g.degree(u), -u))
        if sat[v] >= k:
            return False
        top = min(used[0] + 1, k)
        for c in range(top):
            if sat_count[v][c]:
                continue
            if not budget.tick():
                raise BudgetExceeded("chromatic_number")
            prev = used[0]
            used[0] = max(prev, c + 1)
            assign(v, c)
            if search():
                return True
            unassign(v, c)
            used[0] = prev
        return False

    return col[:] if search() else None


def chromatic_number(g: Graph, budget: Budget | int | None = None) -> ColoringResult:
    """Exact chromatic number by iterative deepening over k-colorability.

    Lower bound: the clique number and, for SRGs, the ceiling of ``1 - k/tau``.
    Raises :class:`BudgetExceeded` with the current bracket when out of nodes.
    """
    budget = Budget.of(budget)
    if g.n == 0:
        return ColoringResult(0, (), False)
    p = _srg_params(g)
    hb = hoffman_bound(p) if p else None
    upper_col = greedy_dsatur(g)
    upper = max(upper_col) + 1
    lower = 1
    if hb is not None:
        lower = max(lower, hb.ceil())
    try:
        clique = max_clique(g, budget).witness
    except BudgetExceeded as exc:
        raise BudgetExceeded("chromatic_number", max(lower, exc.lower or 1), upper) from None
    lower = max(lower, len(clique))
    if upper > lower:
        seeded = greedy_dsatur(g, clique)
        if max(seeded) + 1 < upper:
            upper_col, upper = seeded, max(seeded) + 1
    best = upper_col
    k = lower
    while k < upper:
        try:
            col = _k_colorable(g, k, clique, budget)
        except BudgetExceeded:
            raise BudgetExceeded("chromatic_number", k, upper, tuple(best)) from None
        if col is not None:
            best = col
            upper = k
            break
        k += 1
        lower = k
    chi = max(best) + 1
    return ColoringResult(chi, _classes(best), hb is not None and hb == chi)


# -- Hoffman colorings -------------------------------------------------------------


@dataclass
class HoffmanColoringReport:
    ok: bool
    class_count_ok: bool
    delsarte_classes: bool
    equitable: bool
    witness: tuple[int, int, int] | None = None  # (vertex, class, neighbours there)
    reason: str = ""


def _partition_masks(g: Graph, classes: Sequence[Sequence[int]]) -> list[int]:
    masks = []
    seen = 0
    for cls in classes:
        m = 0
        for v in cls:
            if not 0 <= v < g.n or (seen | m) >> v & 1:
                raise NotPartition(f"vertex {v} repeated or out of range")
            m |= 1 << v
        seen |= m
        masks.append(m)
    if seen != g.all_vertices:
        raise NotPartition("classes do not cover every vertex")
    return masks


def check_hoffman_coloring(g: Graph, classes: Sequence[Sequence[int]]) -> HoffmanColoringReport:
    """Check count ``1 - k/tau``, Delsarte classes, and the ``-tau`` equitable condition."""
    rep = verify_srg(g)
    if not (rep.is_srg and rep.primitive):
        raise NotPrimitiveSrg("Hoffman colorings are checked on primitive SRGs")
    p = rep.params
    masks = _partition_masks(g, classes)
    hb = hoffman_bound(p)
    tau = spectrum(p).tau
    rb = ratio_bound(p)
    count_ok = hb == len(masks)
    delsarte = all(g.is_coclique(m) and rb == m.bit_count() for m in masks)
    witness = None
    for v in range(g.n):
        for i, m in enumerate(masks):
            c = (g.adj[v] & m).bit_count()
            want = 0 if m >> v & 1 else -tau
            if as_quad(c) != want:
                witness = (v, i, c)
                break
        if witness:
            break
    equitable = witness is None
    reason = ""
    if not count_ok:
        reason = f"{len(masks)} classes but the Hoffman bound is {hb}"
    elif not delsarte:
        reason = "some class is not a Delsarte coclique"
    elif not equitable:
        reason = f"vertex {witness[0]} has {witness[2]} neighbours in class {witness[1]}"
    return HoffmanColoringReport(count_ok and delsarte and equitable, count_ok, delsarte, equitable, witness, reason)


@dataclass
class HoffmanEnumeration:
    partitions: list[tuple[tuple[int, ...], ...]]
    truncated: bool

    def __len__(self) -> int:
        return len(self.partitions)

    def __iter__(self):
        return iter(self.partitions)


def enumerate_hoffman_colorings(
    g: Graph, limit: int | None = None, budget: Budget | int | None = None
) -> HoffmanEnumeration:
    """All partitions into ``1 - k/tau`` Delsarte cocliques, up to relabelling.

    Colours are introduced in order of first use along a BFS vertex order, so
    each unlabelled partition is produced once.  Extensions that would give a
    vertex more than ``-tau`` neighbours in a foreign class, or a class more
    than ``n/(1 - k/tau)`` vertices, are cut.
    """
    rep = verify_srg(g)
    if not (rep.is_srg and rep.primitive):
        raise NotPrimitiveSrg("Hoffman colorings are enumerated on primitive SRGs")
    p = rep.params
    hb = hoffman_bound(p)
    if not hb.is_integer:
        raise NonIntegerBound(f"Hoffman bound {hb} of {p} is not an integer")
    budget = Budget.of(budget)
    h = int(hb.a)
    tau = spectrum(p).tau
    if not tau.is_integer or p.n % h:
        return HoffmanEnumeration([], False)
    per_class = -int(tau.a)
    size = p.n // h
    n = g.n

    order = []
    seen = 0
    for root in range(n):
        if seen >> root & 1:
            continue
        seen |= 1 << root
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in iter_bits(g.adj[v] & ~seen):
                seen |= 1 << w
                queue.append(w)

    col = [-1] * n
    masks = [0] * h
    # nbr[v][c] = neighbours of v already in class c
    nbr = [[0] * h for _ in range(n)]
    out: list[tuple[tuple[int, ...], ...]] = []
    truncated = False

    def feasible(v: int, c: int) -> bool:
        if masks[c].bit_count() >= size or nbr[v][c]:
            return False
        if any(nbr[v][o] > per_class for o in range(h) if o != c):
            return False
        for w in iter_bits(g.adj[v]):
            if col[w] >= 0 and col[w] != c and nbr[w][c] + 1 > per_class:
                return False
        return True

    def place(v: int, c: int, sign: int) -> None:
        col[v] = c if sign > 0 else -1
        masks[c] ^= 1 << v
        for w in iter_bits(g.adj[v]):
            nbr[w][c] += sign

    def search(i: int, used: int) -> bool:
        nonlocal truncated
        if i == n:
            if used == h:
                out.append(tuple(tuple(iter_bits(m)) for m in masks))
                if limit is not None and len(out) >= limit:
                    truncated = True
                    return True
            return False
        if n - i < h - used:
            return False
        v = order[i]
        for c in range(min(used + 1, h)):
            if not feasible(v, c):
                continue
            if not budget.tick():
                raise BudgetExceeded("enumerate_hoffman_colorings", len(out), None)
            place(v, c, 1)
            stop = search(i + 1, max(used, c + 1))
            place(v, c, -1)
            if stop:
                return True
        return False

    search(0, 0)
    return HoffmanEnumeration(out, truncated)
