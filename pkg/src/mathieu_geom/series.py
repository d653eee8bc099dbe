"""Coefficient generation and evaluation of Mathieu-type power series.

Two normalized parametric families are supported:

* F family:  a_n = n (r^2+1)^(mu+1) / (n^2+r^2)^(mu+1)
* Q family:  C_n = n! (r^2+1)^(mu+1) / ((n!)^2+r^2)^(mu+1)

plus two fixed example families (SHat, DoubleFactorial).  All magnitudes
are computed in the log domain first: (n!)^2 overflows double precision
near n = 86 while the coefficient itself underflows gracefully, so the
log form is the only faithful representation at large n.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate

from .params import (
    EvalDomainError,
    NumericError,
    ParamSet,
    ParameterDomainError,
    TruncationError,
)

DEFAULT_TOL = 1e-12
N_MAX = 10**6

# Apery's constant zeta(3); regenerated by a test from the defining series.
ZETA3 = 1.2020569031595942


class Family(str, enum.Enum):
    F = "F"
    Q = "Q"
    SHAT = "SHat"
    DOUBLE_FACTORIAL = "DoubleFactorial"


def _log_coeff_F(n: np.ndarray, mu: float, r: float) -> np.ndarray:
    return np.log(n) + (mu + 1.0) * (math.log1p(r * r) - np.log(n * n + r * r))


def _log_coeff_Q(n: np.ndarray, mu: float, r: float) -> np.ndarray:
    lf = np.vectorize(math.lgamma)(n + 1.0)  # log n!
    # log((n!)^2 + r^2) without forming (n!)^2
    log_denom = 2.0 * lf + np.log1p(r * r * np.exp(-2.0 * lf))
    return lf + (mu + 1.0) * (math.log1p(r * r) - log_denom)


def _log_coeff_shat(n: np.ndarray) -> np.ndarray:
    out = math.log(8.0) - 3.0 * np.log(n * n + 1.0)
    return np.where(n == 1, 0.0, out)


def _log_double_factorial_odd(m_max: int) -> np.ndarray:
    """log((2k-1)!!) for k = 0..m_max, with (-1)!! = 1."""
    logs = np.zeros(m_max + 1)
    if m_max >= 1:
        logs[1:] = np.cumsum(np.log(2.0 * np.arange(1, m_max + 1) - 1.0))
    return logs


def _log_coeff_double_factorial(n: np.ndarray) -> np.ndarray:
    n = np.asarray(n)
    m_max = int(n.max())
    ldf = _log_double_factorial_odd(m_max + 1)
    num = math.log(4.0) + ldf[n]  # 4 (2n-1)!!
    ldf_p = ldf[n + 1]  # log (2n+1)!!
    denom = 2.0 * (ldf_p + np.log1p(np.exp(-ldf_p)))  # log [(2n+1)!!+1]^2
    out = num - denom
    return np.where(n == 1, 0.0, out)


class SequenceBase:
    """Common access paths for a coefficient sequence a_1, a_2, ...

    Subclasses provide vectorized ``log_values_at`` over 1-based index
    arrays; everything else derives from it.
    """

    def log_values_at(self, n: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def values_at(self, n: np.ndarray) -> np.ndarray:
        return np.exp(self.log_values_at(n))

    def log_values(self, n_terms: int) -> np.ndarray:
        return self.log_values_at(np.arange(1, n_terms + 1))

    def values(self, n_terms: int) -> np.ndarray:
        return self.values_at(np.arange(1, n_terms + 1))

    def value(self, n: int) -> float:
        return float(self.values_at(np.array([n]))[0])

    def log_value(self, n: int) -> float:
        return float(self.log_values_at(np.array([n]))[0])

    def prefix(self, n_terms: int) -> list[tuple[int, float, float]]:
        logs = self.log_values(n_terms)
        vals = np.exp(logs)
        return [(i + 1, float(vals[i]), float(logs[i])) for i in range(n_terms)]


class CoefficientSeq(SequenceBase):
    """Lazily evaluated normalized family coefficient sequence.

    Values are exposed both linearly and as log magnitudes.  All family
    coefficients are non-negative and a_1 = 1.
    """

    def __init__(self, family: Family | str, params: Optional[ParamSet] = None):
        self.family = Family(family)
        if self.family in (Family.F, Family.Q):
            if params is None:
                raise ParameterDomainError(f"family {self.family.value} requires (mu, r)")
            self.params = params
        else:
            if params is not None:
                raise ParameterDomainError(
                    f"family {self.family.value} takes no (mu, r) parameters"
                )
            self.params = None

    def log_values_at(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        if n.size and n.min() < 1:
            raise ParameterDomainError("coefficient index must be >= 1")
        if self.family is Family.F:
            return _log_coeff_F(n.astype(float), self.params.mu, self.params.r)
        if self.family is Family.Q:
            return _log_coeff_Q(n.astype(float), self.params.mu, self.params.r)
        if self.family is Family.SHAT:
            return _log_coeff_shat(n.astype(float))
        return _log_coeff_double_factorial(n)


class FunctionSequence(SequenceBase):
    """Coefficient sequence a_n = fn(n) for a non-negative vectorized fn;
    handy for synthetic fixtures like a_n = 1/n."""

    family = None
    params = None

    def __init__(self, fn):
        self.fn = fn

    def values_at(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        if n.size and n.min() < 1:
            raise ParameterDomainError("coefficient index must be >= 1")
        return np.asarray(self.fn(n.astype(float)), dtype=float)

    def log_values_at(self, n: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.values_at(n))


def coeff_F(n: int, p: ParamSet) -> float:
    """n-th coefficient of the normalized F family."""
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    return CoefficientSeq(Family.F, p).value(n)


def coeff_Q(n: int, p: ParamSet) -> float:
    """n-th coefficient of the normalized Q (factorial) family."""
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    return CoefficientSeq(Family.Q, p).value(n)


def coeff_example(family: Family | str, n: int) -> float:
    """n-th coefficient of one of the two fixed example families."""
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    fam = Family(family)
    if fam not in (Family.SHAT, Family.DOUBLE_FACTORIAL):
        raise ParameterDomainError(f"not an example family: {fam.value}")
    return CoefficientSeq(fam).value(n)


@dataclass
class EvalResult:
    value: complex
    truncation_index: int
    tail_bound: float


def eval_series(
    c: CoefficientSeq,
    z: complex,
    tol: float = DEFAULT_TOL,
    n_max: int = N_MAX,
) -> EvalResult:
    """Evaluate sum_{n>=1} a_n z^n with a certified truncation tail bound.

    Truncates at the first N where a geometric majorant
    |a_N| |z|^(N+1) / (1-|z|) falls below tol.  The majorant is applied
    only once the coefficient tip has been observed non-increasing for a
    few consecutive terms (all supported families are eventually
    monotone); otherwise a Cauchy-difference fallback is used.
    """
    if tol <= 0:
        raise ParameterDomainError(f"tol must be > 0, got {tol}")
    z = complex(z)
    rho = abs(z)
    if rho >= 1.0:
        raise EvalDomainError(f"|z| must be < 1, got |z| = {rho}")
    if rho == 0.0:
        return EvalResult(0j, 0, 0.0)

    total = 0j
    n_done = 0
    block = 64
    prev_last = math.inf
    monotone_run = 0
    checkpoint_total = None
    checkpoint_diff_small = False

    while n_done < n_max:
        m = min(block, n_max - n_done)
        idx = np.arange(n_done + 1, n_done + m + 1)
        vals = c.values_at(idx)
        total += complex(np.sum(vals * z**idx))
        n_done += m

        if np.all(np.diff(vals) <= 0.0) and vals[0] <= prev_last:
            monotone_run += m
        else:
            monotone_run = 0
        prev_last = float(vals[-1])

        if monotone_run >= 3:
            bound = prev_last * rho ** (n_done + 1) / (1.0 - rho)
            if bound < tol:
                return EvalResult(total, n_done, bound)

        # Fallback: Cauchy differences at doubling checkpoints, for
        # sequences whose prefix never settles into decrease.
        if checkpoint_total is not None:
            diff = abs(total - checkpoint_total)
            if diff < tol / 2 and checkpoint_diff_small:
                return EvalResult(total, n_done, 2.0 * diff + tol / 2)
            checkpoint_diff_small = diff < tol / 2
        checkpoint_total = total

        block = min(2 * block, 8192)

    bound = prev_last * rho ** (n_done + 1) / (1.0 - rho)
    raise TruncationError(
        f"tolerance {tol} not reached within {n_max} terms",
        partial=EvalResult(total, n_done, bound),
    )


def eval_S(r: float, tol: float = DEFAULT_TOL, n_max: int = N_MAX) -> EvalResult:
    """Classical Mathieu series S(r) = sum 2n/(n^2+r^2)^2.

    The tail after N terms is bounded by the integral comparison
    int_N^inf 2x/(x^2+r^2)^2 dx = 1/(N^2+r^2).
    """
    if not (r > 0):
        raise ParameterDomainError(f"r must be > 0, got {r}")
    if tol <= 0:
        raise ParameterDomainError(f"tol must be > 0, got {tol}")
    total = 0.0
    n_done = 0
    chunk = 1 << 16
    r2 = r * r
    while n_done < n_max:
        m = min(chunk, n_max - n_done)
        idx = np.arange(n_done + 1, n_done + m + 1, dtype=float)
        total += float(np.sum(2.0 * idx / (idx * idx + r2) ** 2))
        n_done += m
        bound = 1.0 / (float(n_done) ** 2 + r2)
        if bound < tol:
            return EvalResult(total, n_done, bound)
    raise TruncationError(
        f"tolerance {tol} not reached within {n_max} terms",
        partial=EvalResult(total, n_done, bound),
    )


def eval_S_integral(r: float, tol: float = 1e-10) -> float:
    """S(r) via its integral representation (1/r) int_0^inf t sin(rt)/(e^t-1) dt.

    Integrates over [0, T] with T chosen so the dropped remainder is
    below tol/2: for t >= T >= 1 the integrand is at most
    2 t e^{-t}, whose tail integral is 2(T+1)e^{-T}.
    """
    if not (r > 0):
        raise ParameterDomainError(f"r must be > 0, got {r}")
    if tol <= 0:
        raise ParameterDomainError(f"tol must be > 0, got {tol}")

    big_t = max(50.0, 40.0 / r)
    while 2.0 * (big_t + 1.0) * math.exp(-big_t) >= tol / 2:
        big_t *= 1.5

    def integrand(t: float) -> float:
        if t == 0.0:
            return 0.0
        return t * math.sin(r * t) / math.expm1(t)

    limit = max(200, int(4.0 * r * big_t / math.pi) + 50)
    val, abserr, info, *rest = integrate.quad(
        integrand, 0.0, big_t, epsabs=tol / 2, epsrel=1e-13,
        limit=limit, full_output=1,
    )
    if rest:  # non-empty message => quadrature warning
        raise NumericError(f"quadrature did not converge: {rest[0]}")
    if abserr > 100 * tol:
        raise NumericError(f"quadrature error estimate {abserr} exceeds tolerance {tol}")
    return val / r
