"""Beer-Lambert loss channel with instrumental losses.

A sample of absorbance ``a`` and length ``L`` transmits a fraction
exp(-a*L) of the incident light. Instrumental losses are grouped into a
length-independent per-facet amplitude transmission ``gamma`` (applied
twice, entrance and exit) and a co-propagating loss ``beta`` per unit
length, so the non-sample transmission is gamma^2 * exp(-beta*L) and the
channel as a whole transmits exp(-a*L) * gamma^2 * exp(-beta*L).

Lengths are unit-agnostic; ``a`` and ``beta`` must carry the inverse unit
of ``L``. Zero ``a`` or ``L`` is allowed (the channel type stays total);
optimisers, not the channel, exclude degenerate optima.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["AbsorbanceChannel", "Transmissions", "reparametrize_fisher"]


@dataclass(frozen=True)
class Transmissions:
    """Transmission factors of a channel, each in (0, 1]."""

    sample: float
    instrumental: float
    total: float


@dataclass(frozen=True)
class AbsorbanceChannel:
    """Immutable loss model: sample absorbance plus instrumental losses.

    Parameters
    ----------
    a : float
        Absorbance per unit length, >= 0. The parameter being estimated.
    length : float
        Sample path length, >= 0, in the unit that makes ``a*length``
        dimensionless.
    beta : float
        Co-propagating loss per unit length, >= 0.
    gamma : float
        Per-facet amplitude-independent transmission, in (0, 1]. Enters all
        formulas as gamma^2 (equal entrance and exit facets); the per-facet
        value is stored to keep the squaring explicit and in one place.
    """

    a: float
    length: float
    beta: float = 0.0
    gamma: float = 1.0

    def __post_init__(self) -> None:
        for name in ("a", "length", "beta", "gamma"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"channel {name} must be finite, got {v!r}")
        if self.a < 0.0:
            raise DomainError(f"absorbance must be >= 0, got {self.a!r}")
        if self.length < 0.0:
            raise DomainError(f"length must be >= 0, got {self.length!r}")
        if self.beta < 0.0:
            raise DomainError(f"beta must be >= 0, got {self.beta!r}")
        if not 0.0 < self.gamma <= 1.0:
            raise DomainError(f"gamma must lie in (0, 1], got {self.gamma!r}")

    @property
    def sample_transmission(self) -> float:
        """exp(-a*L), the fraction surviving the sample alone."""
        return math.exp(-self.a * self.length)

    @property
    def instrumental_transmission(self) -> float:
        """gamma^2 * exp(-beta*L), all non-sample losses."""
        return self.gamma**2 * math.exp(-self.beta * self.length)

    @property
    def total_transmission(self) -> float:
        """Product of sample and instrumental transmissions."""
        return self.sample_transmission * self.instrumental_transmission

    def transmissions(self) -> Transmissions:
        """All three transmission factors in one value."""
        return Transmissions(
            sample=self.sample_transmission,
            instrumental=self.instrumental_transmission,
            total=self.total_transmission,
        )

    def with_length(self, length: float) -> "AbsorbanceChannel":
        """Copy of this channel at a different path length."""
        return AbsorbanceChannel(self.a, length, self.beta, self.gamma)


def reparametrize_fisher(f_eta: float, a: float, L: float) -> float:
    """Convert information about the sample transmission to information
    about the absorbance.

    The sample transmission eta = exp(-a*L) is a smooth function of ``a``,
    so information transforms with the squared Jacobian (d eta / d a)^2 =
    L^2 exp(-2 a L).

    Parameters
    ----------
    f_eta : float
        Information per photon on eta, >= 0.
    a : float
        Absorbance, >= 0.
    L : float
        Path length, >= 0.

    Returns
    -------
    float
        L^2 * exp(-2*a*L) * f_eta, information per photon on ``a``.
    """
    if f_eta < 0.0:
        raise DomainError(f"information must be >= 0, got {f_eta!r}")
    if L < 0.0:
        raise DomainError(f"length must be >= 0, got {L!r}")
    return L**2 * math.exp(-2.0 * a * L) * f_eta
