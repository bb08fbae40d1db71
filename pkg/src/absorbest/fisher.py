"""Closed-form information bounds for transmission and absorbance estimation.

All quantities are Fisher information per mean incident photon, so the
Cramer-Rao bound on any unbiased estimator reads

    Var >= 1 / (N0 * info_per_photon)

with N0 the mean number of probe photons. Transmission-space bounds
(``fisher_eta_*``) take the transmission(s) directly; absorbance-space
bounds (``fisher_a_*``) take the channel and equal the transmission-space
value times the squared Jacobian L^2 exp(-2aL).

Conventions for the general-statistics bounds: ``fisher_eta_general`` and
``estimator_info_dark`` describe light of Fano factor ``fano`` at a chosen
reference plane experiencing the *entire* downstream transmission
``eta_total``. When instrumental loss sits upstream of that plane, move the
Fano factor across it first with :func:`absorbest.photon_stats.fano_after_loss`.

Divergent information (for example Fock probing of a lossless channel) is
reported as a :class:`DomainError`, never as ``inf``: an infinity would
silently poison every downstream variance bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import AbsorbanceChannel
from .errors import DomainError

__all__ = [
    "FisherReport",
    "fisher_eta_classical",
    "fisher_eta_fock",
    "fisher_eta_general",
    "fisher_a_classical",
    "fisher_a_fock",
    "fisher_a_general",
    "estimator_info_dark",
    "fisher_per_absorbed_photon",
    "fisher_multipass_coherent",
    "fisher_multipass_fock",
]


@dataclass(frozen=True)
class FisherReport:
    """Information per photon together with the implied variance bound.

    ``variance_bound * n0 * info_per_photon == 1`` whenever ``n0 > 0``.
    """

    info_per_photon: float
    variance_bound: float
    n0: float

    def __post_init__(self) -> None:
        if self.info_per_photon < 0.0:
            raise DomainError("info_per_photon must be >= 0")
        if self.n0 < 0.0:
            raise DomainError("n0 must be >= 0")

    @classmethod
    def from_info(cls, info_per_photon: float, n0: float) -> "FisherReport":
        """Build a report, deriving the minimum unbiased-estimator variance."""
        if n0 > 0.0 and info_per_photon > 0.0:
            bound = 1.0 / (n0 * info_per_photon)
        else:
            bound = math.inf
        return cls(info_per_photon=info_per_photon, variance_bound=bound, n0=n0)

    @property
    def std_error_bound(self) -> float:
        """Square root of the variance bound."""
        return math.sqrt(self.variance_bound)


def _check_fraction(value: float, name: str, *, allow_one: bool = True) -> None:
    hi_ok = value <= 1.0 if allow_one else value < 1.0
    if not (0.0 < value and hi_ok):
        hi = "1" if allow_one else "1 (exclusive)"
        raise DomainError(f"{name} must lie in (0, {hi}], got {value!r}")


def fisher_eta_classical(eta: float, eta_l: float = 1.0) -> float:
    """Coherent-state information per photon on the sample transmission.

    Parameters
    ----------
    eta : float
        Sample transmission in (0, 1].
    eta_l : float
        Instrumental transmission in (0, 1].

    Returns
    -------
    float
        eta_l / eta.
    """
    if eta <= 0.0:
        raise DomainError(
            "classical transmission information diverges as eta -> 0 "
            f"(formula eta_l/eta); got eta = {eta!r}"
        )
    _check_fraction(eta, "eta")
    _check_fraction(eta_l, "eta_l")
    return eta_l / eta


def fisher_eta_fock(eta: float, eta_l: float = 1.0) -> float:
    """Fock-state information per photon on the sample transmission.

    Returns eta_l / (eta * (1 - eta*eta_l)). Diverges when eta*eta_l = 1:
    a lossless channel probed with definite photon number is noiseless, so
    that point is rejected rather than mapped to infinity.
    """
    if eta <= 0.0:
        raise DomainError(f"eta must be positive, got {eta!r}")
    _check_fraction(eta, "eta")
    _check_fraction(eta_l, "eta_l")
    survival = eta * eta_l
    if survival >= 1.0:
        raise DomainError(
            "Fock information diverges at eta*eta_l = 1: lossless Fock "
            "probing is noiseless (zero-variance binomial)"
        )
    return eta_l / (eta * (1.0 - survival))


def fisher_eta_general(eta_total: float, fano: float) -> float:
    """Information per photon on the total transmission for light of
    arbitrary photon-number statistics.

    Parameters
    ----------
    eta_total : float
        The entire transmission experienced by the light downstream of the
        plane where ``fano`` is specified, in (0, 1].
    fano : float
        Fano factor (variance/mean of the photon number) at that plane,
        >= 0. 1 reproduces the coherent bound, 0 the Fock bound.

    Returns
    -------
    float
        1 / (eta^2 * fano + eta * (1 - eta)).
    """
    _check_fraction(eta_total, "eta_total")
    if fano < 0.0:
        raise DomainError(f"Fano factor must be >= 0, got {fano!r}")
    denom = eta_total**2 * fano + eta_total * (1.0 - eta_total)
    if denom <= 0.0:
        raise DomainError(
            "information diverges: zero output variance at "
            f"eta_total = {eta_total!r}, fano = {fano!r}"
        )
    return 1.0 / denom


def fisher_a_classical(ch: AbsorbanceChannel) -> float:
    """Coherent-state information per photon on the absorbance.

    Equals ``reparametrize_fisher(fisher_eta_classical(...), a, L)``
    exactly: L^2 gamma^2 exp(-(a+beta)L).
    """
    L = ch.length
    return L**2 * ch.gamma**2 * math.exp(-(ch.a + ch.beta) * L)


def fisher_a_fock(ch: AbsorbanceChannel) -> float:
    """Fock-state information per photon on the absorbance.

    Returns L^2 gamma^2 / (exp((a+beta)L) - gamma^2). The denominator can
    only vanish at L = 0 with gamma = 1, the lossless point where Fock
    probing is noiseless; that case raises.
    """
    L = ch.length
    denom = math.exp((ch.a + ch.beta) * L) - ch.gamma**2
    if denom <= 0.0:
        raise DomainError(
            "Fock absorbance information diverges for the lossless channel "
            f"(L = {L!r}, gamma = {ch.gamma!r})"
        )
    return L**2 * ch.gamma**2 / denom


def fisher_a_general(a: float, L: float, fano: float) -> float:
    """Absorbance information per photon for light of arbitrary statistics,
    with no instrumental loss.

    Returns L^2 / (fano + exp(a*L) - 1). For instrumental loss, compose
    :func:`fisher_eta_general` on the total transmission with the channel
    Jacobian instead.
    """
    if L < 0.0:
        raise DomainError(f"length must be >= 0, got {L!r}")
    if a < 0.0:
        raise DomainError(f"absorbance must be >= 0, got {a!r}")
    if fano < 0.0:
        raise DomainError(f"Fano factor must be >= 0, got {fano!r}")
    denom = fano + math.expm1(a * L)
    if denom <= 0.0:
        raise DomainError(
            "information diverges for noiseless light through a lossless "
            f"sample (fano = {fano!r}, a*L = {a * L!r})"
        )
    return L**2 / denom


def estimator_info_dark(
    eta_total: float, fano: float, var_dc: float, n0: float
) -> float:
    """Per-photon information of the background-subtracted transmission
    estimator in the presence of detector dark counts.

    This is the information delivered by the estimator
    (N - mean_dark)/N0; it is expected, but not proven, to saturate the
    Fisher bound, hence "estimator info" rather than "fisher".

    Parameters
    ----------
    eta_total : float
        Total transmission downstream of the reference plane, in (0, 1].
    fano : float
        Fano factor of the light at the reference plane, >= 0.
    var_dc : float
        Dark-count variance per counting window, >= 0.
    n0 : float
        Mean photons per window at the reference plane, > 0.

    Returns
    -------
    float
        1 / (var_dc/n0 + eta^2*fano + (1-eta)*eta). Reduces to
        :func:`fisher_eta_general` when ``var_dc`` is 0 and in the
        ``n0 -> inf`` limit.
    """
    _check_fraction(eta_total, "eta_total")
    if fano < 0.0:
        raise DomainError(f"Fano factor must be >= 0, got {fano!r}")
    if var_dc < 0.0:
        raise DomainError(f"dark-count variance must be >= 0, got {var_dc!r}")
    if n0 <= 0.0:
        raise DomainError(f"mean photon number must be > 0, got {n0!r}")
    denom = var_dc / n0 + eta_total**2 * fano + (1.0 - eta_total) * eta_total
    if denom <= 0.0:
        raise DomainError(
            "estimator information diverges: zero total variance at "
            f"eta_total = {eta_total!r}, fano = {fano!r}, var_dc = {var_dc!r}"
        )
    return 1.0 / denom


def fisher_per_absorbed_photon(f: float, eta_total: float) -> float:
    """Renormalize information from per-incident to per-absorbed photon.

    Returns f / (1 - eta_total); rejected at eta_total = 1 where nothing
    is absorbed.
    """
    if f < 0.0:
        raise DomainError(f"information must be >= 0, got {f!r}")
    if not 0.0 <= eta_total <= 1.0:
        raise DomainError(f"eta_total must lie in [0, 1], got {eta_total!r}")
    if eta_total == 1.0:
        raise DomainError(
            "per-absorbed-photon information is undefined at eta_total = 1 "
            "(no photons absorbed)"
        )
    return f / (1.0 - eta_total)


def fisher_multipass_coherent(epsilon: float, i: float) -> float:
    """Coherent-state information per photon on a single-pass transmission
    ``epsilon`` interrogated ``i`` times (total transmission epsilon^i).

    ``i`` may be real-valued for plotting continuous curves; physical runs
    use integers.
    """
    _check_fraction(epsilon, "epsilon")
    if i < 1.0:
        raise DomainError(f"pass count must be >= 1, got {i!r}")
    return i**2 / epsilon ** (2.0 - i)


def fisher_multipass_fock(epsilon: float, i: float) -> float:
    """Fock-state information per photon for ``i`` passes through a
    single-pass transmission ``epsilon``.

    Returns i^2 / (epsilon^(2-i) * (1 - epsilon^i)); diverges at
    epsilon = 1, which raises.
    """
    _check_fraction(epsilon, "epsilon", allow_one=False)
    if i < 1.0:
        raise DomainError(f"pass count must be >= 1, got {i!r}")
    return i**2 / (epsilon ** (2.0 - i) * (1.0 - epsilon**i))
