"""
Partition-style sums over a spectrum model.

    Z(alpha) = sum_n alpha^c(n)         (partition sum)
    M(alpha) = sum_n c(n) alpha^c(n)    (moment sum)

For the square well Z is a partial theta series. Both sums are evaluated by
direct summation in increasing n with a rigorous geometric tail bound; the
harmonic model uses its geometric closed forms. Internally every sum is taken
at the decay rate beta = -ln(alpha), which keeps full relative precision when
alpha is close to 1.
"""

import math
from dataclasses import dataclass

import numpy as np

from quantum_carnot_pkg.core.exceptions import DomainError, PrecisionError
from quantum_carnot_pkg.core.spectrum import SpectrumKind, SpectrumModel

DEFAULT_REL_TOL = 1e-12
MAX_TERMS = 10 ** 6

_FIRST_BLOCK = 64
_MAX_BLOCK = 65536


@dataclass(frozen=True)
class SeriesResult:
    """
    A truncated series value.

    Attributes:
        value: Sum of the kept terms
        terms_used: Number of summed terms (0 for closed forms)
        tail_bound: Upper bound on the dropped remainder
    """

    value: float
    terms_used: int
    tail_bound: float


def _rate_from_alpha(alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    return -math.log(alpha)


def _check_rate(rate: float, rel_tol: float) -> None:
    if not (rate > 0.0 and math.isfinite(rate)):
        raise DomainError(f"Decay rate -ln(alpha) must be positive and finite, got {rate}")
    if not rel_tol > 0.0:
        raise DomainError(f"rel_tol must be positive, got {rel_tol}")


def _direct_sum(model: SpectrumModel, rate: float, weighted: bool,
                rel_tol: float, max_terms: int, offset: float = 0.0) -> SeriesResult:
    """
    Sum exp(-rate (c(n) - offset)) (times c(n) when ``weighted``) in increasing n.

    After term t_n the remainder is bounded by t_n r / (1 - r), where r is the
    ratio t_{n+1} / t_n. The ratios never increase with n because the level
    gaps do not shrink, so the bound holds for the whole tail. Summation stops
    at the first n where the bound drops below rel_tol times the partial sum.
    A nonzero offset scales every term by exp(rate * offset), which keeps the
    leading term at order one when rate is large.
    """
    kept = []
    running = 0.0
    used = 0
    n_start = model.n_min
    block = _FIRST_BLOCK
    last_bound = math.inf

    while used < max_terms:
        count = min(block, max_terms - used)
        n = np.arange(n_start, n_start + count, dtype=float)
        c = model.coefficients(n)
        terms = np.exp(-rate * (c - offset))
        decay = -rate * model.gap(n)
        if weighted:
            terms = terms * c
            ratio = np.exp(decay) * model.coefficients(n + 1.0) / c
            one_minus = 1.0 - ratio
        else:
            ratio = np.exp(decay)
            one_minus = -np.expm1(decay)

        partial = running + np.cumsum(terms)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            bound = np.where(ratio < 1.0, terms * ratio / one_minus, np.inf)

        done = np.flatnonzero(bound < rel_tol * partial)
        if done.size:
            stop = int(done[0])
            kept.append(terms[:stop + 1])
            value = math.fsum(np.concatenate(kept))
            return SeriesResult(value=value, terms_used=used + stop + 1,
                                tail_bound=float(bound[stop]))

        kept.append(terms)
        running = float(partial[-1])
        last_bound = float(bound[-1])
        used += count
        n_start += count
        block = min(2 * block, _MAX_BLOCK)

    partial_result = SeriesResult(value=math.fsum(np.concatenate(kept)),
                                  terms_used=used, tail_bound=last_bound)
    raise PrecisionError(
        f"{model.name} series at -ln(alpha)={rate:.6g} needs more than {max_terms} terms "
        f"for rel_tol={rel_tol:g}", partial=partial_result)


def _harmonic_sums(rate: float):
    """Closed forms (Z, M) for c(n) = n + 1/2."""
    one_minus = -math.expm1(-rate)  # 1 - alpha
    root = math.exp(-0.5 * rate)  # alpha^(1/2)
    z = root / one_minus
    m = root * (0.5 / one_minus + math.exp(-rate) / (one_minus * one_minus))
    return z, m


def partition_sum_at_rate(model: SpectrumModel, rate: float, rel_tol: float = DEFAULT_REL_TOL,
                          closed_form: bool = True, max_terms: int = MAX_TERMS) -> SeriesResult:
    """
    Z at alpha = exp(-rate).

    Args:
        model: Spectrum model
        rate: Decay rate -ln(alpha) > 0
        rel_tol: Relative truncation tolerance
        closed_form: Use the harmonic closed form when available
        max_terms: Hard cap on summed terms

    Returns:
        SeriesResult for sum_n alpha^c(n)

    Raises:
        DomainError: rate or rel_tol out of range
        PrecisionError: more than max_terms terms would be required
    """
    _check_rate(rate, rel_tol)
    if closed_form and model.kind is SpectrumKind.HARMONIC:
        return SeriesResult(value=_harmonic_sums(rate)[0], terms_used=0, tail_bound=0.0)
    return _direct_sum(model, rate, False, rel_tol, max_terms)


def moment_sum_at_rate(model: SpectrumModel, rate: float, rel_tol: float = DEFAULT_REL_TOL,
                       closed_form: bool = True, max_terms: int = MAX_TERMS) -> SeriesResult:
    """M at alpha = exp(-rate); see partition_sum_at_rate."""
    _check_rate(rate, rel_tol)
    if closed_form and model.kind is SpectrumKind.HARMONIC:
        return SeriesResult(value=_harmonic_sums(rate)[1], terms_used=0, tail_bound=0.0)
    return _direct_sum(model, rate, True, rel_tol, max_terms)


def partition_sum(model: SpectrumModel, alpha: float, rel_tol: float = DEFAULT_REL_TOL,
                  closed_form: bool = True, max_terms: int = MAX_TERMS) -> SeriesResult:
    """
    Z(alpha) = sum_{n >= n_min} alpha^c(n), relative error <= rel_tol.

    Raises:
        DomainError: alpha outside (0, 1) or rel_tol <= 0
        PrecisionError: more than max_terms terms would be required
    """
    return partition_sum_at_rate(model, _rate_from_alpha(alpha), rel_tol, closed_form, max_terms)


def moment_sum(model: SpectrumModel, alpha: float, rel_tol: float = DEFAULT_REL_TOL,
               closed_form: bool = True, max_terms: int = MAX_TERMS) -> SeriesResult:
    """
    M(alpha) = sum_{n >= n_min} c(n) alpha^c(n), relative error <= rel_tol.

    Raises:
        DomainError: alpha outside (0, 1) or rel_tol <= 0
        PrecisionError: more than max_terms terms would be required
    """
    return moment_sum_at_rate(model, _rate_from_alpha(alpha), rel_tol, closed_form, max_terms)


def mean_level_at_rate(model: SpectrumModel, rate: float, rel_tol: float = DEFAULT_REL_TOL,
                       closed_form: bool = True, max_terms: int = MAX_TERMS) -> float:
    """Mean coefficient mu = M / Z at alpha = exp(-rate); strictly decreasing in rate."""
    _check_rate(rate, rel_tol)
    if closed_form and model.kind is SpectrumKind.HARMONIC:
        return 0.5 + math.exp(-rate) / -math.expm1(-rate)
    offset = model.ground_coefficient
    z = _direct_sum(model, rate, False, rel_tol, max_terms, offset)
    m = _direct_sum(model, rate, True, rel_tol, max_terms, offset)
    return m.value / z.value


def log_partition_at_rate(model: SpectrumModel, rate: float, rel_tol: float = DEFAULT_REL_TOL,
                          closed_form: bool = True, max_terms: int = MAX_TERMS) -> float:
    """ln Z at alpha = exp(-rate), free of underflow for large rates."""
    _check_rate(rate, rel_tol)
    if closed_form and model.kind is SpectrumKind.HARMONIC:
        return -0.5 * rate - math.log(-math.expm1(-rate))
    offset = model.ground_coefficient
    shifted = _direct_sum(model, rate, False, rel_tol, max_terms, offset)
    return math.log(shifted.value) - rate * offset


def mean_level(model: SpectrumModel, alpha: float, rel_tol: float = DEFAULT_REL_TOL,
               closed_form: bool = True) -> float:
    """Mean coefficient mu(alpha) = M(alpha) / Z(alpha); strictly increasing in alpha."""
    return mean_level_at_rate(model, _rate_from_alpha(alpha), rel_tol, closed_form)


def theta_asymptotic(eps: float) -> float:
    """
    Leading asymptotics of sum_{n>=1} (1 - eps)^(n^2) as eps -> 0+:

        sqrt(pi) / (2 sqrt(eps)) - 1/2

    Only a cross-check; production sums always use direct summation.

    Raises:
        DomainError: eps outside (0, 1)
    """
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    return math.sqrt(math.pi) / (2.0 * math.sqrt(eps)) - 0.5
