"""Closed-form optima: sample lengths, pass counts, and the quantum
advantage when each strategy operates at its own optimum.

All length optima scale as 1/(a + beta), so the transmission through the
length-dependent losses at the optimum is a universal constant per
strategy: exp(-2) ~ 0.1353 for coherent probes and exp(-(W[-2 g^2/e^2]+2))
(~ 0.2032 at g = 1) for Fock probes. With the length free, the Fock
advantage saturates at a fixed factor ~= 1.19631 (for g = 1), independent
of the absorbance and of any co-propagating loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import AbsorbanceChannel
from .errors import DomainError
from .fisher import (
    fisher_a_classical,
    fisher_a_fock,
    fisher_multipass_coherent,
    fisher_multipass_fock,
)
from .lambertw import lambert_w0

__all__ = [
    "OptimumReport",
    "PassOptimum",
    "optimal_length_classical",
    "optimal_length_fock",
    "optimal_length_general",
    "optimum_report",
    "quantum_advantage",
    "quantum_advantage_at_optimum",
    "advantage_vs_gamma_sweep",
    "optimal_passes",
]


@dataclass(frozen=True)
class OptimumReport:
    """A strategy's optimal operating point.

    ``optimal_total_transmission`` is exp(-(a+beta)*L_opt), the
    transmission of the length-dependent losses at the optimum (the facet
    factor gamma^2 is length-independent and excluded).
    """

    strategy: str
    optimal_length: float
    optimal_total_transmission: float
    info_at_optimum: float


@dataclass(frozen=True)
class PassOptimum:
    """Continuous and discrete optimal pass counts for one strategy."""

    strategy: str
    continuous: float
    discrete: int
    info_at_discrete: float


def _check_rate(a: float, beta: float) -> float:
    if a < 0.0 or beta < 0.0:
        raise DomainError(f"a and beta must be >= 0, got a={a!r}, beta={beta!r}")
    total = a + beta
    if total <= 0.0:
        raise DomainError(
            "no finite optimal length exists for a + beta = 0 (information "
            "grows without bound with L)"
        )
    return total


def optimal_length_classical(a: float, beta: float = 0.0) -> float:
    """Length maximizing the coherent-state absorbance information.

    The stationarity condition is (a+beta)*L = 2, so L = 2/(a+beta),
    independent of the facet transmission gamma.
    """
    return 2.0 / _check_rate(a, beta)


def optimal_length_fock(a: float, beta: float = 0.0, gamma: float = 1.0) -> float:
    """Length maximizing the Fock-state absorbance information.

    Returns (W[-2*gamma^2/e^2] + 2) / (a + beta) with W the principal
    Lambert branch. The gamma -> 0 limit recovers the classical 2/(a+beta).
    """
    total = _check_rate(a, beta)
    if not 0.0 < gamma <= 1.0:
        raise DomainError(f"gamma must lie in (0, 1], got {gamma!r}")
    w = lambert_w0(-2.0 * gamma**2 / math.e**2)
    return (w + 2.0) / total


def optimal_length_general(a: float, fano: float) -> float:
    """Length maximizing the information for light of Fano factor ``fano``
    (no instrumental loss).

    Returns (W[2*(fano-1)/e^2] + 2) / a. fano = 1 gives 2/a; fano = 0
    matches the Fock optimum at gamma = 1.
    """
    if a <= 0.0:
        raise DomainError(f"a must be > 0 for a finite optimum, got {a!r}")
    if fano < 0.0:
        raise DomainError(f"Fano factor must be >= 0, got {fano!r}")
    w = lambert_w0(2.0 * (fano - 1.0) / math.e**2)
    return (w + 2.0) / a


def optimum_report(
    a: float,
    beta: float = 0.0,
    gamma: float = 1.0,
    strategy: str = "classical",
    fano: float | None = None,
) -> OptimumReport:
    """Optimal length, transmission there, and information there for one
    strategy ('classical', 'fock', or 'general' with a Fano factor)."""
    if strategy == "classical":
        L = optimal_length_classical(a, beta)
        ch = AbsorbanceChannel(a, L, beta, gamma)
        info = fisher_a_classical(ch)
        label = "classical"
    elif strategy == "fock":
        L = optimal_length_fock(a, beta, gamma)
        ch = AbsorbanceChannel(a, L, beta, gamma)
        info = fisher_a_fock(ch)
        label = "fock"
    elif strategy == "general":
        if fano is None:
            raise DomainError("strategy 'general' requires a Fano factor")
        if beta != 0.0 or gamma != 1.0:
            raise DomainError(
                "the general-statistics optimum is defined without "
                "instrumental loss (beta = 0, gamma = 1)"
            )
        from .fisher import fisher_a_general

        L = optimal_length_general(a, fano)
        info = fisher_a_general(a, L, fano)
        label = f"general(fano={fano:g})"
    else:
        raise DomainError(f"unknown strategy {strategy!r}")
    return OptimumReport(
        strategy=label,
        optimal_length=L,
        optimal_total_transmission=math.exp(-(a + beta) * L),
        info_at_optimum=info,
    )


def quantum_advantage(ch: AbsorbanceChannel) -> float:
    """Ratio of Fock to coherent absorbance information at a shared
    operating point; >= 1 wherever both are defined."""
    return fisher_a_fock(ch) / fisher_a_classical(ch)


def quantum_advantage_at_optimum(
    a: float, beta: float = 0.0, gamma: float = 1.0
) -> float:
    """Fock-to-coherent information ratio with each strategy at its own
    optimal length.

    Independent of ``a`` and ``beta``; equals
    -W[-2 gamma^2/e^2] (W[-2 gamma^2/e^2] + 2) e^2 / (4 gamma^2),
    which is ~= 1.19631 at gamma = 1 and tends to 1 as gamma -> 0.
    """
    fock = optimum_report(a, beta, gamma, "fock")
    classical = optimum_report(a, beta, gamma, "classical")
    return fock.info_at_optimum / classical.info_at_optimum


def advantage_vs_gamma_sweep(
    a: float, beta: float, gammas
) -> list[float]:
    """Per-gamma advantage at the per-strategy optima; non-decreasing in
    gamma."""
    return [quantum_advantage_at_optimum(a, beta, g) for g in gammas]


def _discrete_argmax(info, center: float) -> tuple[int, float]:
    """Argmax of a unimodal per-pass information over integers >= 1.

    Scans a window around the continuous optimum plus the boundary i = 1;
    exact ties break toward fewer passes.
    """
    lo = max(1, math.floor(center) - 3)
    hi = math.ceil(center) + 3
    best_i, best_f = 1, -math.inf
    for i in sorted({1, *range(lo, hi + 1)}):
        f = info(float(i))
        if f > best_f:  # strict: ties keep the smaller i
            best_i, best_f = i, f
    return best_i, best_f


def optimal_passes(epsilon: float, strategy: str) -> PassOptimum:
    """Optimal number of interrogations of a single-pass transmission.

    Parameters
    ----------
    epsilon : float
        Single-pass transmission, in (0, 1) strictly.
    strategy : str
        'classical' or 'fock'.

    Returns
    -------
    PassOptimum
        The continuous maximizer (-2/ln(eps) classically,
        -(W[-2/e^2]+2)/ln(eps) for Fock) and the best integer pass count;
        exact ties prefer fewer passes. The implied optimal total
        transmissions eps^i_cont are exp(-2) ~ 0.135 and ~0.203
        respectively, for every epsilon.
    """
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    log_eps = math.log(epsilon)
    if strategy == "classical":
        cont = -2.0 / log_eps
        disc, best = _discrete_argmax(
            lambda i: fisher_multipass_coherent(epsilon, i), cont
        )
    elif strategy == "fock":
        cont = -(lambert_w0(-2.0 / math.e**2) + 2.0) / log_eps
        disc, best = _discrete_argmax(
            lambda i: fisher_multipass_fock(epsilon, i), cont
        )
    else:
        raise DomainError(f"unknown strategy {strategy!r}")
    return PassOptimum(
        strategy=strategy, continuous=cont, discrete=disc, info_at_discrete=best
    )
