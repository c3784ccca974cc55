"""Type A/B/C/X classification, catalog batches and Hasse diagrams."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BudgetExceeded, NotPrimitiveSrg
from .exactnum import QuadNum, format_exact, quad_sign
from .graphs import Graph, Graph6Error, read_graph6_lines, verify_srg
from .schemas import schema_for, validate_output
from .solvers import Budget, chromatic_number, max_clique
from .srg_params import SrgParams, hoffman_bound

__all__ = [
    "SrgType",
    "CatalogEntry",
    "BatchResult",
    "MixedParameters",
    "classify_type",
    "type_from_values",
    "hasse_dot",
    "batch_classify",
    "report_schema",
    "validate_report",
]

TAGS = ("A", "B", "C", "X")


class MixedParameters(ValueError):
    pass


# keyed by (omega meets the bound, chi meets the bound)
_TAG = {(False, True): "A", (True, True): "B", (True, False): "C", (False, False): "X"}


def type_from_values(omega: int, chi: int, bound: QuadNum) -> str:
    """Tag from exact ``omega``, ``chi`` and Hoffman bound."""
    return _TAG[quad_sign(bound - omega) == 0, quad_sign(bound - chi) == 0]


@dataclass(frozen=True)
class SrgType:
    """Classification result.

    ``tag`` is None when a budget ran out before the type was pinned down;
    ``candidates`` then lists every tag consistent with the brackets.
    """

    tag: str | None
    candidates: tuple[str, ...]
    omega: int | tuple[int, int]
    chi: int | tuple[int, int]
    bound: QuadNum
    clique: tuple[int, ...] = ()
    coloring: tuple[tuple[int, ...], ...] = ()

    @property
    def determined(self) -> bool:
        return self.tag is not None


def _candidates(omega_lo: int, omega_hi: int, chi_lo: int, chi_hi: int, bound: QuadNum) -> tuple[str, ...]:
    omegas = {quad_sign(bound - w) == 0 for w in range(omega_lo, omega_hi + 1)}
    chis = {quad_sign(bound - c) == 0 for c in range(chi_lo, chi_hi + 1)}
    tags = {_TAG[o, c] for o in omegas for c in chis}
    return tuple(t for t in TAGS if t in tags)


def classify_type(g: Graph, budget: Budget | int | None = None) -> SrgType:
    """Compare exact omega and chi against ``1 - k/tau``.

    A non-integer bound fixes the type as X whatever the solvers return.
    Otherwise omega and chi are solved exactly; if a solver runs out of
    budget the result is bracketed and the type left undetermined.
    """
    rep = verify_srg(g)
    if not (rep.is_srg and rep.primitive):
        raise NotPrimitiveSrg("classification needs a primitive SRG")
    bound = hoffman_bound(rep.params)
    budget = Budget.of(budget)
    try:
        cq = max_clique(g, budget)
        omega_lo = omega_hi = cq.size
        clique = cq.witness
    except BudgetExceeded as exc:
        omega_lo, omega_hi, clique = exc.lower or 1, int(bound.floor()), tuple(exc.witness or ())
    try:
        col = chromatic_number(g, budget)
        chi_lo = chi_hi = col.chromatic
        classes = col.classes
    except BudgetExceeded as exc:
        chi_lo, chi_hi, classes = max(int(bound.ceil()), exc.lower or 1), exc.upper or g.n, ()
    if not bound.is_integer:
        # neither omega nor chi can equal the bound; the solves above only
        # fill in the report
        cands: tuple[str, ...] = ("X",)
    else:
        cands = _candidates(omega_lo, omega_hi, chi_lo, chi_hi, bound)
    omega = omega_lo if omega_lo == omega_hi else (omega_lo, omega_hi)
    chi = chi_lo if chi_lo == chi_hi else (chi_lo, chi_hi)
    tag = cands[0] if len(cands) == 1 else None
    return SrgType(tag, cands, omega, chi, bound, clique, classes)


@dataclass
class CatalogEntry:
    id: str
    graph: Graph
    params: SrgParams
    type: SrgType
    flags: dict[str, bool | None] = field(default_factory=dict)

    @property
    def core(self) -> bool | None:
        return self.flags.get("core")

    def to_json(self) -> dict:
        t = self.type
        return {
            "id": self.id,
            "n": self.params.n,
            "k": self.params.k,
            "lambda": self.params.lam,
            "mu": self.params.mu,
            "omega": t.omega if isinstance(t.omega, int) else list(t.omega),
            "chi": t.chi if isinstance(t.chi, int) else list(t.chi),
            "bound": format_exact(t.bound),
            "type": t.tag if t.tag else "undetermined",
            "candidates": list(t.candidates),
            "core": self.core,
        }


def make_entry(id: str, g: Graph, budget: Budget | int | None = None) -> CatalogEntry:
    t = classify_type(g, budget)
    params = verify_srg(g).params
    flags: dict[str, bool | None] = {
        "has_hoffman_coloring": None,
        "has_delsarte_clique": None,
        "core": None,
        # every primitive SRG is a pseudocore; this flag records an exhaustive
        # endomorphism check and is only set by callers that ran one
        "pseudocore_verified": None,
    }
    if t.tag:
        flags["has_hoffman_coloring"] = t.tag in ("A", "B")
        flags["has_delsarte_clique"] = t.tag in ("B", "C")
        flags["core"] = t.tag != "B"
    elif "B" not in t.candidates:
        flags["core"] = True
    return CatalogEntry(id, g, params, t, flags)


def _node_id(i: int) -> str:
    return f"g{i}"


def _label(e: CatalogEntry) -> str:
    t = e.type
    om = t.omega if isinstance(t.omega, int) else f"{t.omega[0]}..{t.omega[1]}"
    ch = t.chi if isinstance(t.chi, int) else f"{t.chi[0]}..{t.chi[1]}"
    return f"{e.id}\\ntype {t.tag or '?'}  omega={om} chi={ch} bound={format_exact(t.bound)}"


def hasse_dot(entries: Sequence[CatalogEntry], name: str = "hom_order") -> str:
    """DOT digraph of the homomorphism order on one parameter set.

    All type B graphs are homomorphically equivalent and share one node.
    Types A and B map to every B and C graph, so the cover edges are A -> [B]
    and [B] -> C; with no B graph present the covers are A -> C directly.
    Undetermined entries are drawn dashed with no edges.
    """
    params = {e.params for e in entries}
    if len(params) > 1:
        raise MixedParameters(f"entries span {len(params)} parameter sets")
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    if not entries:
        lines.append("}")
        return "\n".join(lines) + "\n"
    p = next(iter(params))
    lines.append(f'  label="SRG({p.n},{p.k},{p.lam},{p.mu})";')
    a_nodes, c_nodes, b_members = [], [], []
    for i, e in enumerate(entries):
        tag = e.type.tag
        if tag == "B":
            b_members.append(e.id)
            continue
        style = ', style=dashed' if tag is None else ""
        lines.append(f'  {_node_id(i)} [label="{_label(e)}"{style}];')
        if tag == "A":
            a_nodes.append(_node_id(i))
        elif tag == "C":
            c_nodes.append(_node_id(i))
    if b_members:
        lines.append(f'  B [label="[B] {", ".join(b_members)}", shape=box];')
        edges = [(a, "B") for a in a_nodes] + [("B", c) for c in c_nodes]
    else:
        edges = [(a, c) for a in a_nodes for c in c_nodes]
    for src, dst in edges:
        lines.append(f"  {src} -> {dst};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- batches ------------------------------------------------------------------------------


@dataclass
class BatchResult:
    entries: list[CatalogEntry]
    histogram: dict[str, int]
    notes: list[str]

    def to_json(self) -> dict:
        return {
            "entries": [e.to_json() for e in self.entries],
            "histogram": self.histogram,
            "notes": self.notes,
        }


def _classify_job(args: tuple[str, Graph, int | None]) -> CatalogEntry | str:
    id, g, budget = args
    rep = verify_srg(g)
    if not rep.is_srg:
        return f"{id}: skipped, not an SRG ({rep.failure_witness.reason})"
    if not rep.primitive:
        p = rep.params
        return f"{id}: skipped, imprimitive SRG({p.n},{p.k},{p.lam},{p.mu})"
    return make_entry(id, g, budget)


def batch_classify(
    source: str | Path | Iterable[str], budget: int | None = None, threads: int = 1, prefix: str = "line"
) -> BatchResult:
    """Classify every graph6 line of ``source`` (a path or an iterable of lines).

    ``budget`` applies per graph.  Parse errors and non-SRG lines become notes.
    With ``threads > 1`` graphs are classified in a process pool; output
    order always follows the input.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="ascii", errors="replace") as fh:
            lines = fh.readlines()
    else:
        lines = list(source)
    parse_notes: dict[int, str] = {}
    jobs, job_lines = [], []
    for lineno, item in read_graph6_lines(lines):
        id = f"{prefix}{lineno}"
        if isinstance(item, Graph6Error):
            parse_notes[lineno] = f"{id}: parse error ({item})"
        else:
            jobs.append((id, item, budget))
            job_lines.append(lineno)
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_classify_job, jobs))
    else:
        results = [_classify_job(j) for j in jobs]
    entries = []
    for lineno, r in zip(job_lines, results):
        if isinstance(r, str):
            parse_notes[lineno] = r
        else:
            entries.append(r)
    notes = [parse_notes[k] for k in sorted(parse_notes)]
    hist = Counter(e.type.tag or "undetermined" for e in entries)
    histogram = {t: hist.get(t, 0) for t in (*TAGS, "undetermined")}
    return BatchResult(entries, histogram, notes)


# -- JSON schema --------------------------------------------------------------------------


def report_schema() -> dict:
    return schema_for("classify")


def validate_report(doc: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` is not a valid batch report."""
    validate_output("classify", doc)
