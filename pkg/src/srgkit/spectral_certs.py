"""Exact matrix certificates for strongly regular graphs.

Covers the cosine matrix, projector identities, pullbacks along vertex maps,
homomorphism matrices, the ratio-bound witness, theta primal/dual pairs and
the (alpha, beta)-graph test.  Every check is exact; reports carry the first
violated entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CertFailure, NotHomomorphism, NotPrimitiveSrg
from .exactnum import QuadNum, as_quad, quad_sign
from .graphs import Graph, iter_bits, verify_srg
from .linalg import ExactMatrix, PsdResult, ldlt_psd
from .srg_params import SrgParams, Spectrum, check_feasible, cosines, hoffman_bound, ratio_bound, spectrum

__all__ = [
    "CertReport",
    "HomMatrix",
    "ThetaCert",
    "RatioWitness",
    "AlphaBetaReport",
    "CosineMismatch",
    "NotCoclique",
    "srg_data",
    "adjacency_matrix",
    "shifted_adjacency_product",
    "cosine_matrix",
    "check_projector_identities",
    "pullback",
    "hom_matrix",
    "check_product_lemma",
    "ratio_witness",
    "theta_witnesses",
    "alphabeta_check",
    "ldlt_psd",
    "ExactMatrix",
]


class CosineMismatch(ValueError):
    pass


class NotCoclique(ValueError):
    pass


@dataclass
class CertReport:
    """Outcome of a batch of named exact checks."""

    checks: dict[str, bool] = field(default_factory=dict)
    failure: CertFailure | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, passed: bool, where=None, value=None) -> None:
        self.checks[name] = passed
        if not passed and self.failure is None:
            self.failure = CertFailure(name, where, value)

    def require(self) -> CertReport:
        if not self.ok:
            raise self.failure
        return self


def srg_data(g: Graph, params: SrgParams | None = None) -> tuple[SrgParams, Spectrum]:
    """Parameters and spectrum of a primitive SRG (or of claimed parameters)."""
    if params is None:
        rep = verify_srg(g)
        if not rep.is_srg or not rep.primitive:
            raise NotPrimitiveSrg("graph is not a primitive strongly regular graph")
        params = rep.params
    elif not (params.primitive and check_feasible(params)):
        raise NotPrimitiveSrg(f"{params} are not feasible primitive parameters")
    return params, spectrum(params)


def adjacency_matrix(g: Graph) -> ExactMatrix:
    return ExactMatrix.pattern(g.adj, 0, 1, 0)


def shifted_adjacency_product(g: Graph, tau, M: ExactMatrix) -> ExactMatrix:
    """``(A - tau*I) @ M`` using the sparsity of ``A``."""
    tau = as_quad(tau)
    d = M.d or tau.d
    den_t = tau.a.denominator * tau.b.denominator
    ta, tb = int(tau.a * den_t), int(tau.b * den_t)
    Ma, Mb = M.ra, M._b()
    n = M.n
    ra, rb = [], []
    for u in range(n):
        sa = [0] * n
        sb = [0] * n
        for w in iter_bits(g.adj[u]):
            wa, wb = Ma[w], Mb[w]
            for j in range(n):
                sa[j] += wa[j]
                sb[j] += wb[j]
        ua, ub = Ma[u], Mb[u]
        ra.append([den_t * sa[j] - ta * ua[j] - tb * d * ub[j] for j in range(n)])
        rb.append([den_t * sb[j] - ta * ub[j] - tb * ua[j] for j in range(n)])
    return ExactMatrix(ra, rb if d else None, M.den * den_t, d)


def cosine_matrix(g: Graph, params: SrgParams | None = None) -> ExactMatrix:
    """Unit-diagonal multiple of the tau-eigenspace projector."""
    p, _ = srg_data(g, params)
    c = cosines(p)
    return ExactMatrix.pattern(g.adj, 1, c.alpha, c.beta)


def _first_nonzero(name: str, M: ExactMatrix, report: CertReport) -> None:
    bad = M.first_nonzero()
    if bad is None:
        report.record(name, True)
    else:
        report.record(name, False, bad[:2], bad[2])


def check_projector_identities(g: Graph, params: SrgParams | None = None) -> CertReport:
    """Verify ``(A - tau I)E_G = 0``, ``E_G^2 = (n/m_tau)E_G``, the quadratic
    identity ``A^2 + (mu-lambda)A + (mu-k)I = mu J`` and ``E_G`` PSD.

    With ``params`` given, the graph is tested against claimed parameters
    instead of the ones ``verify_srg`` would find.
    """
    p, spec = srg_data(g, params)
    report = CertReport()
    n = g.n
    E = cosine_matrix(g, p)

    # A^2 entries are common-neighbour counts
    quad = []
    for u in range(n):
        row = []
        for v in range(n):
            a2 = (g.adj[u] & g.adj[v]).bit_count()
            a = g.adj[u] >> v & 1
            row.append(a2 + (p.mu - p.lam) * a + (p.mu - p.k) * (u == v) - p.mu)
        quad.append(row)
    _first_nonzero("A^2 + (mu-lambda)A + (mu-k)I = mu J", ExactMatrix(quad, None), report)
    _first_nonzero("(A - tau I) E_G = 0", shifted_adjacency_product(g, spec.tau, E), report)
    _first_nonzero("E_G^2 = (n/m_tau) E_G", E @ E - E.scale(Fraction(n, spec.m_tau)), report)
    psd = ldlt_psd(E)
    report.record("E_G is PSD", psd.is_psd, None, psd.witness)
    return report


def pullback(M: ExactMatrix, phi: Sequence[int]) -> ExactMatrix:
    """``(M^phi)[u, v] = M[phi(u), phi(v)]``."""
    return M.pullback(phi)


def _require_hom(g: Graph, h: Graph, phi: Sequence[int]) -> None:
    if len(phi) != g.n:
        raise ValueError(f"map has {len(phi)} entries for {g.n} vertices")
    for x in phi:
        if not 0 <= x < h.n:
            raise IndexError(f"map value {x} outside target")
    for u, v in g.edges():
        if not h.has_edge(phi[u], phi[v]):
            raise NotHomomorphism((u, v), (phi[u], phi[v]))


@dataclass
class HomMatrix:
    X: ExactMatrix
    alpha: QuadNum
    beta: QuadNum
    beta_prime: QuadNum


def hom_matrix(
    g: Graph, h: Graph, phi: Sequence[int], params: tuple[SrgParams, SrgParams] | None = None
) -> HomMatrix:
    """``X = E_H^phi - E_G`` for a homomorphism between equal-cosine SRGs.

    ``params`` skips re-verifying both graphs when the caller already has them.
    """
    pg, _ = srg_data(g, params and params[0])
    ph, _ = srg_data(h, params and params[1])
    cg, ch = cosines(pg), cosines(ph)
    if cg.alpha != ch.alpha:
        raise CosineMismatch(f"adjacency cosines differ: {cg.alpha} vs {ch.alpha}")
    _require_hom(g, h, phi)
    X = pullback(cosine_matrix(h, ph), phi) - cosine_matrix(g, pg)
    alpha, beta, beta2 = cg.alpha, cg.beta, ch.beta
    # case table: only non-adjacent distinct pairs can be nonzero
    codes = []
    for u in range(g.n):
        row = []
        for v in range(g.n):
            if u == v or g.has_edge(u, v):
                row.append(0)
            elif phi[u] == phi[v]:
                row.append(1)
            else:
                row.append(2 if h.has_edge(phi[u], phi[v]) else 3)
        codes.append(row)
    bad = (X - ExactMatrix.from_codes(codes, [0, 1 - beta, alpha - beta, beta2 - beta])).first_nonzero()
    if bad is not None:
        raise CertFailure("homomorphism matrix case table", bad[:2], X[bad[0], bad[1]])
    return HomMatrix(X, alpha, beta, beta2)


def check_product_lemma(g: Graph, M: ExactMatrix | HomMatrix, params: SrgParams | None = None) -> CertReport:
    """``(A - tau I) M = 0`` for a pullback ``E_H^phi`` or a homomorphism matrix."""
    _, spec = srg_data(g, params)
    if isinstance(M, HomMatrix):
        M = M.X
    report = CertReport()
    _first_nonzero("(A - tau I) M = 0", shifted_adjacency_product(g, spec.tau, M), report)
    return report


@dataclass
class RatioWitness:
    size: int
    bound: QuadNum
    tight: bool
    # y^T N y with N = (A - tau I) - (k - tau)/n J and y the indicator of S
    quadratic_form: QuadNum
    n_psd: bool
    outside_counts: dict[int, int]
    equality_condition: bool | None

    @property
    def ok(self) -> bool:
        within = quad_sign(self.bound - self.size) >= 0
        return within and self.n_psd and quad_sign(self.quadratic_form) >= 0 and self.equality_condition is not False


def ratio_witness(g: Graph, S: Sequence[int] | set[int], check_n_psd: bool = True) -> RatioWitness:
    """Certify ``|S| <= n tau/(tau - k)`` for a coclique ``S`` of an SRG.

    When the bound is met, also checks that every outside vertex has exactly
    ``-tau`` neighbours in ``S``.
    """
    rep = verify_srg(g)
    if not rep.is_srg or not check_feasible(rep.params):
        raise NotPrimitiveSrg("exact least eigenvalue needs a strongly regular graph")
    p = rep.params
    tau = spectrum(p).tau
    members = sorted(set(S))
    mask = 0
    for v in members:
        mask |= 1 << v
    if not g.is_coclique(mask):
        raise NotCoclique(f"{members} contains an edge")
    bound = ratio_bound(p)
    N = ExactMatrix.pattern(g.adj, -tau, 1, 0) - ExactMatrix.pattern(g.adj, 1, 1, 1).scale((p.k - tau) / p.n)
    y = [Fraction(1 if mask >> v & 1 else 0) for v in range(g.n)]
    qf = N.quadform(y)
    n_psd = ldlt_psd(N).is_psd if check_n_psd else True
    counts = {v: (g.adj[v] & mask).bit_count() for v in range(g.n) if not mask >> v & 1}
    tight = bound == len(members)
    eq = None
    if tight:
        eq = all(as_quad(c) == -tau for c in counts.values())
    return RatioWitness(len(members), bound, tight, qf, n_psd, counts, eq)


@dataclass
class ThetaCert:
    primal: ExactMatrix
    dual: ExactMatrix
    value: QuadNum
    report: CertReport

    @property
    def ok(self) -> bool:
        return self.report.ok


def theta_witnesses(g: Graph) -> ThetaCert:
    """Closed-form optimal primal/dual pair for the strict vector chromatic number.

    Primal ``M = (t-1) E_G`` with ``t = 1 - k/tau``; dual ``B = (A - tau I)/(-n tau)``.
    """
    p, spec = srg_data(g)
    tau = spec.tau
    t = hoffman_bound(p)
    M = cosine_matrix(g, p).scale(t - 1)
    B = ExactMatrix.pattern(g.adj, -tau, 1, 0).scale(1 / (-tau * p.n))
    rep = CertReport()
    n = g.n
    diag_bad = next(((u, u) for u in range(n) if M[u, u] != t - 1), None)
    rep.record("primal diagonal = t - 1", diag_bad is None, diag_bad)
    edge_bad = next(((u, v) for u, v in g.edges() if M[u, v] != -1), None)
    rep.record("primal edges = -1", edge_bad is None, edge_bad)
    rep.record("primal PSD", ldlt_psd(M).is_psd)
    nonedge_bad = next(
        ((u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v) and not B.entry_is_zero(u, v)),
        None,
    )
    rep.record("dual zero off edges", nonedge_bad is None, nonedge_bad)
    rep.record("dual trace = 1", B.trace() == 1, None, B.trace())
    rep.record("dual PSD", ldlt_psd(B).is_psd)
    MB = M @ B
    rep.record("tr(MB) = 0", MB.trace() == 0, None, MB.trace())
    _first_nonzero("MB = 0", MB, rep)
    rep.record("primal value = 1 - k/tau", M[0, 0] + 1 == t, None, M[0, 0] + 1)
    rep.record("sum(B) = 1 - k/tau", B.total() == t, None, B.total())
    return ThetaCert(M, B, t, rep)


@dataclass
class AlphaBetaReport:
    gram: ExactMatrix
    psd: PsdResult
    feasible: bool
    optimal: bool | None
    note: str

    @property
    def tiers(self) -> str:
        if not self.feasible:
            return "infeasible"
        return "feasible and optimal" if self.optimal else "feasible, optimality unverified"


def alphabeta_check(h: Graph, alpha, beta) -> AlphaBetaReport:
    """Test whether ``I + alpha A + beta Abar`` is an optimal strict vector coloring Gram matrix.

    Optimality is certified only for regular ``h``, by the dual witness
    ``A - k*alpha*I`` together with complementary slackness.
    """
    alpha, beta = as_quad(alpha), as_quad(beta)
    if not (quad_sign(alpha + 1) >= 0 and quad_sign(alpha) < 0):
        raise ValueError("need -1 <= alpha < 0")
    gram = ExactMatrix.pattern(h.adj, 1, alpha, beta)
    psd = ldlt_psd(gram)
    if not psd.is_psd:
        return AlphaBetaReport(gram, psd, False, False, "Gram matrix is not PSD")
    degs = {h.degree(u) for u in range(h.n)}
    if len(degs) != 1 or h.num_edges() == 0:
        return AlphaBetaReport(gram, psd, True, None, "non-regular graph: optimality unverified")
    k = degs.pop()
    shift = alpha * k
    dual = ExactMatrix.pattern(h.adj, -shift, 1, 0)
    if not ldlt_psd(dual).is_psd:
        return AlphaBetaReport(gram, psd, True, None, f"A - ({shift})I is not PSD; optimality unverified")
    if not shifted_adjacency_product(h, shift, gram).is_zero():
        return AlphaBetaReport(gram, psd, True, None, "complementary slackness fails; optimality unverified")
    return AlphaBetaReport(gram, psd, True, True, f"dual witness A - ({shift})I certifies optimality")
