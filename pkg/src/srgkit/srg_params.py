"""Everything about an SRG that follows from (n, k, lambda, mu) alone."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .exactnum import QuadNum, quad_make

__all__ = [
    "SrgParams",
    "Spectrum",
    "Cosines",
    "FeasibilityReport",
    "InfeasibleParams",
    "ImprimitiveParams",
    "check_feasible",
    "spectrum",
    "complement_params",
    "cosines",
    "hoffman_bound",
    "ratio_bound",
]


class InfeasibleParams(ValueError):
    pass


class ImprimitiveParams(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SrgParams:
    n: int
    k: int
    lam: int
    mu: int

    @property
    def primitive(self) -> bool:
        return 1 <= self.mu < self.k

    @property
    def discriminant(self) -> int:
        return (self.lam - self.mu) ** 2 + 4 * (self.k - self.mu)

    def __str__(self) -> str:
        return f"({self.n},{self.k},{self.lam},{self.mu})"


@dataclass(frozen=True)
class Spectrum:
    theta: QuadNum
    tau: QuadNum
    m_theta: int
    m_tau: int


@dataclass(frozen=True)
class Cosines:
    alpha: QuadNum
    beta: QuadNum


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    violation: str | None = None
    m_theta: QuadNum | None = None
    m_tau: QuadNum | None = None

    def __bool__(self) -> bool:
        return self.feasible


def _eigenvalues(p: SrgParams) -> tuple[QuadNum, QuadNum]:
    half = Fraction(1, 2)
    base = Fraction(p.lam - p.mu, 2)
    return quad_make(base, half, p.discriminant), quad_make(base, -half, p.discriminant)


def _multiplicities(p: SrgParams, theta: QuadNum, tau: QuadNum) -> tuple[QuadNum, QuadNum]:
    # 1 + m_theta + m_tau = n  and  k + m_theta*theta + m_tau*tau = 0
    m_theta = (-p.k - tau * (p.n - 1)) / (theta - tau)
    return m_theta, (p.n - 1) - m_theta


@lru_cache(maxsize=256)
def check_feasible(p: SrgParams) -> FeasibilityReport:
    """Necessary conditions only: ranges (for the graph and, unless it is
    complete, its complement), edge count, integral multiplicities."""
    n, k, lam, mu = p.n, p.k, p.lam, p.mu
    if not n > k >= 1:
        return FeasibilityReport(False, f"need n > k >= 1, got n={n}, k={k}")
    if not 0 <= lam < k or not 0 <= mu <= k:
        return FeasibilityReport(False, f"need 0 <= lambda < k and 0 <= mu <= k")
    if k < n - 1 and (n - 2 * k - 2 + mu < 0 or n - 2 * k + lam < 0):
        return FeasibilityReport(
            False, f"complement parameters ({n},{n - k - 1},{n - 2 * k - 2 + mu},{n - 2 * k + lam}) are negative"
        )
    if k * (k - lam - 1) != (n - k - 1) * mu:
        return FeasibilityReport(
            False,
            f"edge identity k(k-lambda-1) = (n-k-1)mu fails: {k * (k - lam - 1)} != {(n - k - 1) * mu}",
        )
    theta, tau = _eigenvalues(p)
    m_theta, m_tau = _multiplicities(p, theta, tau)
    for name, m in (("m_theta", m_theta), ("m_tau", m_tau)):
        if not m.is_integer or m.a <= 0:
            return FeasibilityReport(False, f"multiplicity {name} = {m} is not a positive integer", m_theta, m_tau)
    return FeasibilityReport(True, None, m_theta, m_tau)


def _require_feasible(p: SrgParams) -> FeasibilityReport:
    rep = check_feasible(p)
    if not rep:
        raise InfeasibleParams(f"{p}: {rep.violation}")
    return rep


@lru_cache(maxsize=256)
def spectrum(p: SrgParams) -> Spectrum:
    rep = _require_feasible(p)
    theta, tau = _eigenvalues(p)
    return Spectrum(theta, tau, int(rep.m_theta.a), int(rep.m_tau.a))


def complement_params(p: SrgParams) -> tuple[SrgParams, Spectrum]:
    """Complement parameters together with the complement's spectrum."""
    spec = spectrum(p)
    n, k, lam, mu = p.n, p.k, p.lam, p.mu
    q = SrgParams(n, n - k - 1, n - 2 * k - 2 + mu, n - 2 * k + lam)
    # the complement's theta-eigenspace is our tau-eigenspace and vice versa
    return q, Spectrum(-spec.tau - 1, -spec.theta - 1, spec.m_tau, spec.m_theta)


@lru_cache(maxsize=256)
def cosines(p: SrgParams) -> Cosines:
    """Adjacency and non-adjacency cosines ``tau/k`` and ``(-tau-1)/(n-k-1)``."""
    spec = spectrum(p)
    if not p.primitive:
        raise ImprimitiveParams(f"{p} is imprimitive")
    tau = spec.tau
    return Cosines(tau / p.k, (-tau - 1) / (p.n - p.k - 1))


def hoffman_bound(p: SrgParams) -> QuadNum:
    """``1 - k/tau``; ``.is_integer`` on the result tells whether it can be met."""
    tau = spectrum(p).tau
    return 1 - QuadNum(Fraction(p.k)) / tau


def ratio_bound(p: SrgParams) -> QuadNum:
    """Upper bound ``n*tau/(tau - k)`` on the independence number."""
    tau = spectrum(p).tau
    return tau * p.n / (tau - p.k)
