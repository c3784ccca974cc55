"""Command-line entry point ``srg``.

Exit codes: 0 success, 1 a check failed (or a budget ran out before an
answer), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .classify import MixedParameters, batch_classify, hasse_dot
from .errors import BudgetExceeded, CertFailure, NotHomomorphism, NotPrimitiveSrg
from .exactnum import format_exact
from .fixtures import UnknownFixture, fixture, fixture_names
from .graphs import Graph, Graph6Error, check_n2_connected, encode_graph6, read_graph6_lines, verify_srg
from .hom_engine import CounterexampleFound, find_homs, hull, is_core, verify_main_theorem
from .schemas import validate_output
from .solvers import (
    Budget,
    NonIntegerBound,
    chromatic_number,
    enumerate_hoffman_colorings,
    max_clique,
    max_coclique,
)
from .spectral_certs import (
    CosineMismatch,
    NotCoclique,
    check_projector_identities,
    ratio_witness,
    theta_witnesses,
)
from .srg_params import (
    ImprimitiveParams,
    SrgParams,
    check_feasible,
    complement_params,
    cosines,
    hoffman_bound,
    ratio_bound,
    spectrum,
)

FIXTURE_PREFIX = "fixture:"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    budget: int | None = None
    threads: int = 1
    output: str = "text"
    json_path: str | None = None
    paths: list[str] = field(default_factory=list)


@dataclass
class Outcome:
    code: int
    lines: list[str]
    doc: dict


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _ex(x) -> str:
    return format_exact(x)


def _pstr(p: SrgParams) -> str:
    return f"SRG({p.n},{p.k},{p.lam},{p.mu})"


def load_graph(spec: str) -> Graph:
    """``fixture:NAME``, a graph6 file (first graph is used) or ``-`` for stdin."""
    if spec.startswith(FIXTURE_PREFIX):
        return fixture(spec[len(FIXTURE_PREFIX):])
    if spec == "-":
        lines = sys.stdin.readlines()
    else:
        path = Path(spec)
        if not path.exists():
            raise UsageError(f"{spec}: no such file (use {FIXTURE_PREFIX}NAME for built-in graphs)")
        lines = path.read_bytes().splitlines()
    for lineno, item in read_graph6_lines(lines):
        if isinstance(item, Graph6Error):
            raise UsageError(f"{spec}:{lineno}: {item}")
        return item
    raise UsageError(f"{spec}: no graph found")


def _read_lines(spec: str) -> list:
    if spec == "-":
        return sys.stdin.readlines()
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"{spec}: no such file")
    return path.read_bytes().splitlines()


def _params_doc(p: SrgParams) -> dict:
    return {"n": p.n, "k": p.k, "lambda": p.lam, "mu": p.mu}


# -- subcommands ----------------------------------------------------------------


def cmd_params(args, cfg: RunConfig) -> Outcome:
    p = SrgParams(args.n, args.k, args.lam, args.mu)
    rep = check_feasible(p)
    if not rep:
        return Outcome(1, [f"{_pstr(p)} infeasible: {rep.violation}"], {**_params_doc(p), "feasible": False, "violation": rep.violation})
    s = spectrum(p)
    cp, cs = complement_params(p)
    doc = {
        **_params_doc(p),
        "feasible": True,
        "primitive": p.primitive,
        "theta": _ex(s.theta),
        "tau": _ex(s.tau),
        "m_theta": s.m_theta,
        "m_tau": s.m_tau,
        "hoffman_bound": _ex(hoffman_bound(p)),
        "ratio_bound": _ex(ratio_bound(p)),
        "complement": {**_params_doc(cp), "theta": _ex(cs.theta), "tau": _ex(cs.tau)},
    }
    lines = [
        f"{_pstr(p)} feasible, {'primitive' if p.primitive else 'imprimitive'}",
        f"theta = {doc['theta']} (multiplicity {s.m_theta})",
        f"tau = {doc['tau']} (multiplicity {s.m_tau})",
        f"hoffman bound 1-k/tau = {doc['hoffman_bound']}",
        f"ratio bound n*tau/(tau-k) = {doc['ratio_bound']}",
    ]
    if p.primitive:
        c = cosines(p)
        doc["cosines"] = {"alpha": _ex(c.alpha), "beta": _ex(c.beta)}
        lines.append(f"cosines alpha = {_ex(c.alpha)}, beta = {_ex(c.beta)}")
    lines.append(f"complement {_pstr(cp)}: theta = {_ex(cs.theta)}, tau = {_ex(cs.tau)}")
    return Outcome(0, lines, doc)


def cmd_verify(args, cfg: RunConfig) -> Outcome:
    g = load_graph(args.graph)
    rep = verify_srg(g)
    if not rep.is_srg:
        w = rep.failure_witness
        doc = {"is_srg": False, "reason": w.reason, "pair": list(w.pair) if w.pair else None,
               "observed": w.observed, "expected": w.expected}
        detail = f" at pair {w.pair}: observed {w.observed}, expected {w.expected}" if w.pair else ""
        return Outcome(1, [f"not an SRG: {w.reason}{detail}"], doc)
    p = rep.params
    doc = {"is_srg": True, **_params_doc(p), "primitive": rep.primitive}
    lines = [f"{_pstr(p)}, {'primitive' if rep.primitive else 'imprimitive'}"]
    if rep.primitive:
        flags = check_n2_connected(g)
        ok = all(flags)
        doc["second_neighbourhoods_connected"] = ok
        lines.append(f"second neighbourhoods connected: {'yes' if ok else 'no'}")
    return Outcome(0, lines, doc)


def _parse_vertices(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def cmd_cert(args, cfg: RunConfig) -> Outcome:
    g = load_graph(args.graph)
    params = None
    if args.params:
        try:
            params = SrgParams(*(int(x) for x in args.params.split(",")))
        except (TypeError, ValueError):
            raise UsageError("--params wants n,k,lambda,mu") from None
    rep = check_projector_identities(g, params)
    checks = dict(rep.checks)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in checks.items()]
    doc: dict = {"checks": checks}
    if rep.failure is not None:
        doc["failure"] = str(rep.failure)
        lines.append(f"first failure: {rep.failure}")
    code = 0 if rep.ok else 1
    if args.coclique is not None:
        rw = ratio_witness(g, _parse_vertices(args.coclique))
        doc["ratio"] = {
            "size": rw.size,
            "bound": _ex(rw.bound),
            "tight": rw.tight,
            "quadratic_form": _ex(rw.quadratic_form),
            "n_psd": rw.n_psd,
            "equality_condition": rw.equality_condition,
        }
        lines.append(f"{'PASS' if rw.ok else 'FAIL'}  coclique of size {rw.size} within ratio bound {_ex(rw.bound)}"
                     + (" (tight, equality condition " + ("holds)" if rw.equality_condition else "fails)") if rw.tight else ""))
        code = max(code, 0 if rw.ok else 1)
    return Outcome(code, lines, doc)


def cmd_theta(args, cfg: RunConfig) -> Outcome:
    g = load_graph(args.graph)
    cert = theta_witnesses(g)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in cert.report.checks.items()]
    lines.append(f"theta-bar = {_ex(cert.value)}")
    return Outcome(0 if cert.ok else 1, lines, {"value": _ex(cert.value), "checks": dict(cert.report.checks)})


def cmd_solve(args, cfg: RunConfig) -> Outcome:
    g = load_graph(args.graph)
    wanted = [w for w in ("clique", "coclique", "chromatic", "hoffman") if getattr(args, w)]
    if not wanted:
        wanted = ["clique", "coclique", "chromatic"]
    budget = Budget(cfg.budget)
    lines, doc = [], {}
    if "clique" in wanted:
        r = max_clique(g, budget)
        doc["omega"] = {"size": r.size, "witness": list(r.witness), "delsarte": r.is_delsarte}
        lines.append(f"omega = {r.size}  clique {list(r.witness)}{'  (Delsarte)' if r.is_delsarte else ''}")
    if "coclique" in wanted:
        r = max_coclique(g, budget)
        doc["alpha"] = {"size": r.size, "witness": list(r.witness), "delsarte": r.is_delsarte}
        lines.append(f"alpha = {r.size}  coclique {list(r.witness)}{'  (Delsarte)' if r.is_delsarte else ''}")
    if "chromatic" in wanted:
        r = chromatic_number(g, budget)
        doc["chi"] = {"value": r.chromatic, "classes": [list(c) for c in r.classes], "hoffman": r.is_hoffman}
        lines.append(f"chi = {r.chromatic}{'  (Hoffman coloring)' if r.is_hoffman else ''}")
        lines.extend(f"  class {i}: {list(c)}" for i, c in enumerate(r.classes))
    if "hoffman" in wanted:
        e = enumerate_hoffman_colorings(g, budget=budget)
        doc["hoffman_colorings"] = {"count": len(e.partitions), "truncated": e.truncated,
                                    "partitions": [[list(c) for c in part] for part in e.partitions]}
        lines.append(f"Hoffman colorings up to relabelling: {len(e.partitions)}")
    return Outcome(0, lines, doc)


def _fmt_map(phi: Sequence[int]) -> str:
    return " ".join(f"{u}->{x}" for u, x in enumerate(phi))


def cmd_hom(args, cfg: RunConfig) -> Outcome:
    g, h = load_graph(args.source), load_graph(args.target)
    budget = Budget(cfg.budget)
    if args.verify:
        rep = verify_main_theorem(g, h, budget)
        counts = {k.value: v for k, v in rep.counts.items()}
        doc = {"counts": counts, "total": rep.total, "beta": _ex(rep.beta), "beta_prime": _ex(rep.beta_prime),
               "product_lemma_failures": rep.product_lemma_failures, "complete": rep.complete,
               "counterexample": list(rep.counterexample.map) if rep.counterexample else None}
        lines = [f"{rep.total} homomorphisms: " + ", ".join(f"{k} {v}" for k, v in counts.items()),
                 f"(A - tau I) X = 0 failures: {rep.product_lemma_failures}"]
        if not rep.complete:
            lines.append("search incomplete: budget exhausted")
        if rep.counterexample:
            raise CounterexampleFound(_fmt_map(rep.counterexample.map))
        return Outcome(0 if rep.ok else 1, lines, doc)
    oracle = args.oracle or not _same_primitive(g, h)
    res = find_homs(g, h, args.mode, budget, oracle=oracle)
    doc = {"mode": args.mode, "oracle": oracle, "count": res.count, "complete": res.complete,
           "homs": [{"map": list(m.map), "kind": m.kind.value} for m in res.homs]}
    if args.mode == "count":
        lines = [f"{res.count} homomorphisms"]
    elif not res.homs:
        lines = ["no homomorphism"]
    else:
        lines = [f"{m.kind.value}: {_fmt_map(m.map)}" for m in res.homs]
    if not res.complete:
        lines.append("search incomplete: budget exhausted")
        return Outcome(1, lines, doc)
    return Outcome(0, lines, doc)


def _same_primitive(g: Graph, h: Graph) -> bool:
    rg, rh = verify_srg(g), verify_srg(h)
    return rg.is_srg and rh.is_srg and rg.primitive and rh.primitive and rg.params == rh.params


def cmd_core(args, cfg: RunConfig) -> Outcome:
    g = load_graph(args.graph)
    res = is_core(g, Budget(cfg.budget), args.strategy)
    doc = {"core": res.is_core, "fast": res.fast, "slow": res.slow, "note": res.note,
           "witness": {"map": list(res.witness.map), "kind": res.witness.kind.value} if res.witness else None}
    verdict = {True: "core", False: "not a core", None: "undetermined"}[res.is_core]
    lines = [verdict + (f" ({res.note})" if res.note else "")]
    if res.witness:
        lines.append(f"proper endomorphism ({res.witness.kind.value}): {_fmt_map(res.witness.map)}")
    return Outcome(0 if res.is_core is not None else 1, lines, doc)


def cmd_hull(args, cfg: RunConfig) -> Outcome:
    g = load_graph(args.graph)
    rep = verify_srg(g)
    strategy = "bruteforce" if args.bruteforce or not (rep.is_srg and rep.primitive) else "pseudocore-fast"
    hg = hull(g, strategy, Budget(cfg.budget))
    hgraph = hg.graph
    complete = hgraph.num_edges() == g.n * (g.n - 1) // 2
    same = hgraph.adj == g.adj
    doc = {"strategy": strategy, "graph6": encode_graph6(hgraph).decode(), "edges": hgraph.num_edges(),
           "complete": complete, "equals_base": same, "search_complete": hg.complete}
    lines = [f"hull ({strategy}): {doc['graph6']}", f"{hgraph.num_edges()} edges"
             + ("; complete graph" if complete else "") + ("; equal to the input graph" if same else "")]
    if not hg.complete:
        lines.append("search incomplete: budget exhausted")
    return Outcome(0 if hg.complete else 1, lines, doc)


def _batch(args, cfg: RunConfig):
    return batch_classify(_read_lines(args.file), cfg.budget, cfg.threads)


def cmd_classify(args, cfg: RunConfig) -> Outcome:
    res = _batch(args, cfg)
    doc = res.to_json()
    lines = []
    for e in res.entries:
        j = e.to_json()
        lines.append(f"{e.id}  {_pstr(e.params)}  type {j['type']}  omega={j['omega']} chi={j['chi']} "
                     f"bound={j['bound']} core={j['core']}")
    lines.append("histogram: " + " ".join(f"{k}={v}" for k, v in res.histogram.items()))
    lines.extend(f"note: {n}" for n in res.notes)
    if args.dot:
        Path(args.dot).write_text(_dot_for(res.entries))
    return Outcome(0, lines, doc)


def _dot_for(entries) -> str:
    groups: dict[SrgParams, list] = {}
    for e in entries:
        groups.setdefault(e.params, []).append(e)
    if len(groups) <= 1:
        return hasse_dot(entries)
    return "".join(hasse_dot(v, f"hom_order_{p.n}_{p.k}_{p.lam}_{p.mu}") for p, v in sorted(groups.items()))


def cmd_hasse(args, cfg: RunConfig) -> Outcome:
    res = _batch(args, cfg)
    dot = hasse_dot(res.entries)
    if args.out:
        Path(args.out).write_text(dot)
    return Outcome(0, dot.rstrip("\n").split("\n"), {"dot": dot, "notes": res.notes})


def cmd_fixture(args, cfg: RunConfig) -> Outcome:
    if args.list or not args.name:
        names = fixture_names()
        return Outcome(0, names, {"fixtures": names})
    g = fixture(args.name)
    line = encode_graph6(g).decode()
    return Outcome(0, [line], {"name": args.name, "graph6": line})


# -- parser and dispatch --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=argparse.SUPPRESS, help="search node budget")
    common.add_argument("--threads", type=_positive, default=argparse.SUPPRESS, help="worker processes for batches")
    common.add_argument("--json", nargs="?", const="-", default=argparse.SUPPRESS, metavar="OUT",
                        help="emit JSON (to OUT, or stdout)")

    parser = argparse.ArgumentParser(prog="srg", description="Exact tools for strongly regular graphs.")
    parser.add_argument("--budget", type=_positive, help="search node budget")
    parser.add_argument("--threads", type=_positive, help="worker processes for batches")
    # before the subcommand --json is a plain flag, so it cannot swallow the command name
    parser.add_argument("--json", action="store_const", const="-", help="emit JSON on stdout")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.set_defaults(budget=None, threads=1, json=None)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("params", cmd_params, "spectrum, cosines and bounds of a parameter set")
    for a in ("n", "k", "lam", "mu"):
        p.add_argument(a, type=int)
    graph_help = "graph6 file, '-' for stdin, or fixture:NAME"
    p = add("verify", cmd_verify, "check strong regularity")
    p.add_argument("graph", help=graph_help)
    p = add("cert", cmd_cert, "exact projector and quadratic identities")
    p.add_argument("graph", help=graph_help)
    p.add_argument("--params", help="claimed n,k,lambda,mu to test against")
    p.add_argument("--coclique", help="vertex list to certify against the ratio bound")
    p = add("theta", cmd_theta, "closed-form theta primal/dual certificate")
    p.add_argument("graph", help=graph_help)
    p = add("solve", cmd_solve, "exact clique, coclique and chromatic numbers")
    p.add_argument("graph", help=graph_help)
    for flag in ("clique", "coclique", "chromatic", "hoffman"):
        p.add_argument(f"--{flag}", action="store_true")
    p = add("hom", cmd_hom, "homomorphism search")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--first", dest="mode", action="store_const", const="first")
    mode.add_argument("--enumerate", dest="mode", action="store_const", const="enumerate")
    mode.add_argument("--count", dest="mode", action="store_const", const="count")
    p.set_defaults(mode="first")
    p.add_argument("--oracle", action="store_true", help="search all maps with no structural pruning")
    p.add_argument("--verify", action="store_true", help="check every hom is a coloring or an isomorphism")
    p.add_argument("source", help=graph_help)
    p.add_argument("target", help=graph_help)
    p = add("core", cmd_core, "decide whether a graph is a core")
    p.add_argument("graph", help=graph_help)
    p.add_argument("--strategy", choices=("fast", "slow", "both"), default="both")
    p = add("hull", cmd_hull, "hull of a graph")
    p.add_argument("graph", help=graph_help)
    p.add_argument("--bruteforce", action="store_true")
    p = add("classify", cmd_classify, "type A/B/C/X classification of a graph6 file")
    p.add_argument("file")
    p.add_argument("--dot", metavar="OUT", help="also write the Hasse diagram")
    p = add("hasse", cmd_hasse, "Hasse diagram (DOT) of the homomorphism order")
    p.add_argument("file")
    p.add_argument("--out", metavar="OUT")
    p = add("fixture", cmd_fixture, "print a built-in graph in graph6")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    return parser


def _emit(command: str, out: Outcome, cfg: RunConfig) -> None:
    if cfg.output == "json":
        validate_output(command, out.doc)
        text = json.dumps(out.doc, indent=2, ensure_ascii=False) + "\n"
        if cfg.json_path and cfg.json_path != "-":
            Path(cfg.json_path).write_text(text, encoding="utf-8")
            if out.lines:
                print("\n".join(out.lines))
        else:
            sys.stdout.write(text)
    elif out.lines:
        print("\n".join(out.lines))


def _fail(code: int, msg: str) -> int:
    print(f"srg: {msg}", file=sys.stderr)
    return code


def dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(args.budget, args.threads, "json" if args.json else "text", args.json,
                    [v for k, v in vars(args).items() if k in ("graph", "source", "target", "file") and v])
    try:
        out = args.func(args, cfg)
    except UnknownFixture as exc:
        return _fail(2, f"unknown fixture {exc.args[0]} (known: {', '.join(fixture_names())})")
    except (UsageError, Graph6Error, OSError, MixedParameters) as exc:
        return _fail(2, str(exc))
    except BudgetExceeded as exc:
        return _fail(1, str(exc))
    except (CertFailure, CounterexampleFound) as exc:
        return _fail(1, f"{type(exc).__name__}: {exc}")
    except (NotPrimitiveSrg, ImprimitiveParams, NotHomomorphism, CosineMismatch, NotCoclique, NonIntegerBound) as exc:
        return _fail(1, str(exc))
    _emit(args.command, out, cfg)
    return out.code


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
