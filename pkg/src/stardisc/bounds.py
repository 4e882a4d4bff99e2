"""Probability bounds for random point sets and the explicit constant chain.

The discrepancy bound for N uniform random points in ``[0, 1]^s`` holding
with probability at least q is

    5.7 * sqrt(4.9 + L / s) * sqrt(s / N),    L = ln(1 / (1 - q)).

Its proof uses a dyadic decomposition with depth K and per-level
deviation constants ``c_0, ..., c_K``.  :func:`build_constants` rebuilds
those constants and :func:`audit_proof` re-checks every numeric inequality
the argument relies on.  All logarithms are natural except inside K.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import List, Sequence, Tuple

from .covers import class_cardinality_bound
from .errors import InputError, TrivialRegimeError

LEAD = 5.7
OFFSET = 4.9
KAPPA = 2.08
SUM_TAIL = 3.28
SUM_OFFSET = 5.98
C0_OFFSET = 4.88
C1_OFFSET = 5.39
REGIME_FACTOR = 32


def _check_q(q: float):
    if not (isinstance(q, (int, float)) and 0.0 < q < 1.0):
        raise InputError(f"q must lie in the open interval (0, 1), got {q!r}")


def _check_pos_int(name: str, value):
    if int(value) != value or value < 1:
        raise InputError(f"{name} must be a positive integer, got {value!r}")


def log_inv(q: float) -> float:
    """``L = ln(1/(1-q))``, accurate for q near 0."""
    _check_q(q)
    return -math.log1p(-q)


def coefficient(q: float, s: int) -> float:
    """The multiplier ``c(q, s)`` of ``sqrt(s/N)``."""
    _check_pos_int("s", s)
    return LEAD * math.sqrt(OFFSET + log_inv(q) / s)


def theorem_bound(q: float, s: int, N: int) -> float:
    _check_pos_int("N", N)
    return coefficient(q, s) * math.sqrt(s / N)


def corollary_bound(q: float, s: int, N: int) -> float:
    """Dimension-uniform form: ``5.7 sqrt(4.9 + L) sqrt(s/N)``."""
    _check_pos_int("s", s)
    _check_pos_int("N", N)
    return LEAD * math.sqrt(OFFSET + log_inv(q)) * math.sqrt(s / N)


def round_half_up(x: float, digits: int = 2) -> float:
    """Round for display, with ties going away from zero on the decimal repr."""
    from decimal import ROUND_HALF_UP, Decimal

    quantum = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(x)).quantize(quantum, rounding=ROUND_HALF_UP))


def coefficient_table(q_list: Sequence[float], s_list: Sequence[int]) -> List[List[float]]:
    """Raw coefficients, one row per s and one column per q."""
    for q in q_list:
        _check_q(q)
    return [[coefficient(q, s) for q in q_list] for s in s_list]


def inverse_discrepancy_theorem(q: float, s: int, eps: float) -> int:
    """Smallest N with ``theorem_bound(q, s, N) <= eps``."""
    _check_pos_int("s", s)
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps!r}")
    n = max(1, math.ceil(LEAD**2 * (OFFSET * s + log_inv(q)) / eps**2))
    # the closed form can be off by one after rounding
    while n > 1 and theorem_bound(q, s, n - 1) <= eps:
        n -= 1
    while theorem_bound(q, s, n) > eps:
        n += 1
    return n


def inverse_discrepancy_existence(s: int, eps: float, c_abs: float = 10.0) -> int:
    """``ceil(c_abs^2 s / eps^2)``: a point count for which some set reaches eps."""
    _check_pos_int("s", s)
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps!r}")
    return max(1, math.ceil(c_abs**2 * s / eps**2))


@dataclass(frozen=True)
class TailBoundResult:
    probability_bound: float
    inequality: str

    @property
    def vacuous(self) -> bool:
        return self.probability_bound > 1.0


def hoeffding_tail(N: int, t: float) -> TailBoundResult:
    """``P(|S_N - N lambda| > t) <= 2 exp(-2 t^2 / N)`` for indicator sums."""
    _check_pos_int("N", N)
    if not t > 0:
        raise InputError(f"t must be positive, got {t!r}")
    return TailBoundResult(2.0 * math.exp(-2.0 * t * t / N), "hoeffding")


def bernstein_tail_generic(sum_var: float, C: float, t: float) -> TailBoundResult:
    """Bernstein for centred summands bounded by C with total variance ``sum_var``."""
    if sum_var < 0:
        raise InputError(f"sum_var must be non-negative, got {sum_var!r}")
    if not C > 0:
        raise InputError(f"C must be positive, got {C!r}")
    if not t > 0:
        raise InputError(f"t must be positive, got {t!r}")
    return TailBoundResult(
        2.0 * math.exp(-t * t / (2.0 * sum_var + 2.0 * C * t / 3.0)), "bernstein_generic"
    )


def level_variance(k: int) -> float:
    """Variance bound ``2^-k (1 - 2^-k)`` of one indicator at level k >= 1; 1/4 at k = 0."""
    if k == 0:
        return 0.25
    p = 2.0**-k
    return p * (1.0 - p)


def bernstein_tail_k(N: int, k: int, t: float) -> TailBoundResult:
    """Bernstein specialised to level-k pieces (valid for k >= 2)."""
    _check_pos_int("N", N)
    if int(k) != k or k < 2:
        raise InputError(f"the level-k Bernstein bound needs k >= 2, got {k!r}")
    if not t > 0:
        raise InputError(f"t must be positive, got {t!r}")
    denom = 2.0 * N * level_variance(k) + 2.0 * t / 3.0
    return TailBoundResult(2.0 * math.exp(-t * t / denom), "bernstein_k")


@dataclass(frozen=True)
class TheoremConstants:
    q: float
    s: int
    N: int
    L: float
    K: int
    c: Tuple[float, ...]
    lam: Tuple[float, ...]  # lambda_2 .. lambda_K

    def to_dict(self) -> dict:
        d = asdict(self)
        d["c"] = list(self.c)
        d["lambda"] = list(d.pop("lam"))
        return d


def regime_threshold(q: float, s: int) -> float:
    """Smallest N (as a real) for which the constant chain is built."""
    return REGIME_FACTOR * (s + log_inv(q))


def depth(q: float, s: int, N: int) -> int:
    """Dyadic depth ``K = ceil((log2 N - log2(s + L)) / 2)``."""
    return math.ceil((math.log2(N) - math.log2(s + log_inv(q))) / 2.0)


def level_lambda(k: int, K: int) -> float:
    return math.sqrt(2.0 * level_variance(k) + KAPPA * 4.0 * 2.0**-K / 3.0)


def build_constants(q: float, s: int, N: int) -> TheoremConstants:
    _check_q(q)
    _check_pos_int("s", s)
    _check_pos_int("N", N)
    L = log_inv(q)
    threshold = regime_threshold(q, s)
    if N < threshold:
        raise TrivialRegimeError(
            f"trivial regime: N={N} < 32(s + ln(1/(1-q))) = {threshold:.6g}; "
            "the bound exceeds 1 and holds vacuously",
            threshold=threshold,
        )
    K = depth(q, s, N)
    log8 = math.log(8.0) + L
    c0 = math.sqrt((1.0 + math.log(6.0)) / 2.0 + log8 / (2.0 * s))
    c1 = math.sqrt((1.0 + math.log(10.0)) / 2.0 + log8 / (2.0 * s))
    lam = []
    c = [c0, c1]
    for k in range(2, K + 1):
        lk = level_lambda(k, K)
        lam.append(lk)
        inner = 1.0 + math.log(2.0 * (2.0 ** (k + 1) + 1.0)) + ((k + 1) * math.log(2.0) + L) / s
        c.append(math.sqrt(inner) * lk)
    return TheoremConstants(q=float(q), s=int(s), N=int(N), L=L, K=K, c=tuple(c), lam=tuple(lam))


@dataclass(frozen=True)
class Check:
    name: str
    lhs: float
    rhs: float
    passed: bool
    strict: bool = False

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "margin": self.margin, "pass": self.passed}


@dataclass(frozen=True)
class AuditReport:
    constants: TheoremConstants
    checks: Tuple[Check, ...] = field(default_factory=tuple)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        k = self.constants
        return {
            "schema": "stardisc/1",
            "inputs": {"q": k.q, "s": k.s, "N": k.N},
            "constants": k.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
        }


# log-space identities are exact in real arithmetic; allow for rounding only
_IDENTITY_RTOL = 1e-10


def _le(name, lhs, rhs) -> Check:
    return Check(name, float(lhs), float(rhs), bool(lhs <= rhs))


def _lt(name, lhs, rhs) -> Check:
    return Check(name, float(lhs), float(rhs), bool(lhs < rhs), strict=True)


def _close(name, lhs, rhs) -> Check:
    ok = abs(lhs - rhs) <= _IDENTITY_RTOL * max(1.0, abs(rhs))
    return Check(name, float(lhs), float(rhs), bool(ok))


def audit_proof(q: float, s: int, N: int) -> AuditReport:
    """Re-evaluate every numeric step of the constant chain for ``(q, s, N)``."""
    k_ = build_constants(q, s, N)
    L, K, c = k_.L, k_.K, k_.c
    ratio = L / s
    checks: List[Check] = []
    add = checks.append

    # (a) depth sandwich
    scale = math.sqrt(s + L) / math.sqrt(N)
    step = 2.0**-K
    add(_le("K>=3", 3, K))
    add(_le("Kest.lower", scale / 2.0, step))
    add(_le("Kest.upper", step, scale))

    # (b), (c) closed forms for c0 and c1
    add(_le("c0approx", c[0], math.sqrt(C0_OFFSET + ratio) / math.sqrt(2.0)))
    add(_le("c1approx", c[1], math.sqrt(C1_OFFSET + ratio) / math.sqrt(2.0)))

    # (d) the cap that keeps the Bernstein denominator below lambda_k^2
    shrink = math.sqrt(s) / math.sqrt(s + L)
    for k in range(2, K + 1):
        add(_le(f"kappa[k={k}]", c[k] * shrink, KAPPA))

    # (e), (f) summed constants
    tail_sum = math.fsum(c[2:])
    add(_le("ckapprox", tail_sum, SUM_TAIL * math.sqrt(SUM_OFFSET + ratio)))
    sumapprox_rhs = (math.sqrt(C0_OFFSET + ratio) / math.sqrt(2.0)
                     + math.sqrt(C1_OFFSET + ratio) / math.sqrt(2.0)
                     + SUM_TAIL * math.sqrt(SUM_OFFSET + ratio))
    total = math.fsum(c)
    add(_le("sumapprox", total, sumapprox_rhs))
    add(_le("final", math.sqrt(1.0 + ratio) + total, LEAD * math.sqrt(OFFSET + ratio)))

    # (g) probability budget, in log space
    log_fail = math.log1p(-q)
    log2 = math.log(2.0)
    log_terms = []
    for k, share in ((0, 4.0), (1, 4.0)):
        lhs = class_cardinality_bound(s, k).log + log2 - 2.0 * c[k] ** 2 * s
        add(_close(f"budget[k={k}]", lhs, log_fail - math.log(share)))
        log_terms.append(lhs)
    for k in range(2, K + 1):
        card = class_cardinality_bound(s, k).log + log2
        lam2 = k_.lam[k - 2] ** 2
        # with the 2.08 cap in the denominator the term is exactly (1-q)/2^k
        capped = card - c[k] ** 2 * s / lam2
        add(_close(f"budget[k={k}].identity", capped, log_fail - k * log2))
        actual_denom = 2.0 * level_variance(k) + 4.0 * c[k] * step * shrink / 3.0
        actual = card - c[k] ** 2 * s / actual_denom
        add(_le(f"budget[k={k}]", actual, log_fail - k * log2))
        log_terms.append(actual)
    total_prob = math.fsum(math.exp(t) for t in log_terms)
    share = 0.75 + math.fsum(2.0**-k for k in range(3, K + 1))
    add(_le("budget.sum", total_prob, share * (1.0 - q) * (1.0 + _IDENTITY_RTOL)))
    add(_lt("budget.total<1-q", share * (1.0 - q), 1.0 - q))
    return AuditReport(constants=k_, checks=tuple(checks))
