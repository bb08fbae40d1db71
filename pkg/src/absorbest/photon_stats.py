"""Photon-number statistics, the binomial-thinning loss channel, and
Fano-factor propagation across loss.

A linear loss channel acts on each photon independently, so a channel of
transmission ``eta`` maps an input photon-number distribution X(N0) to the
compound distribution sum_N0 X(N0) * Binomial(N | N0, eta). Only the first
two moments enter the information bounds:

    mean_out = eta * mean_in
    var_out  = eta^2 * var_in + eta * (1 - eta) * mean_in

which in Fano-factor form reads fano_out = eta * fano_in + (1 - eta).

Sources are immutable; all sampling takes a caller-supplied
``numpy.random.Generator`` so that parallel runs can use independently
seeded streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError

__all__ = [
    "MAX_EXACT_SUPPORT",
    "PhotonSource",
    "DetectorModel",
    "thinned_moments",
    "sample_input",
    "thin",
    "thin_pmf",
    "sample_dark_counts",
    "fano_before_loss",
    "fano_after_loss",
    "load_empirical_pmf",
]

# Exact pmf work (empirical sources, convolution checks) stays cheap below
# this support size; larger sources are handled through moments only.
MAX_EXACT_SUPPORT = 1000

_PMF_SUM_TOL = 1e-9


@dataclass(frozen=True)
class PhotonSource:
    """Input photon-number statistics, summarized by kind, mean and Fano.

    Construct through the classmethods; each pins the (mean, fano) pair:
    ``fock`` has fano 0, ``coherent`` 1, single-mode ``thermal``
    1 + mean (Bose-Einstein), ``empirical`` whatever its pmf implies, and
    ``from_fano`` keeps mean and fano independent (realized as a negative
    binomial for fano > 1, Poisson at fano = 1; sub-Poissonian statistics
    need a ``fock`` or ``empirical`` source, since no overdispersed
    counting family reaches fano < 1).
    """

    kind: str
    mean: float
    fano: float
    pmf: np.ndarray | None = None
    fock_n: int | None = None

    @property
    def variance(self) -> float:
        return self.fano * self.mean

    @classmethod
    def fock(cls, n: int) -> "PhotonSource":
        if n < 0 or n != int(n):
            raise DomainError(f"Fock photon number must be an integer >= 0, got {n!r}")
        return cls(kind="fock", mean=float(n), fano=0.0, fock_n=int(n))

    @classmethod
    def coherent(cls, mean: float) -> "PhotonSource":
        if mean < 0.0:
            raise DomainError(f"coherent mean must be >= 0, got {mean!r}")
        return cls(kind="coherent", mean=float(mean), fano=1.0)

    @classmethod
    def thermal(cls, mean: float) -> "PhotonSource":
        """Single-mode thermal (Bose-Einstein) source; fano = 1 + mean."""
        if mean < 0.0:
            raise DomainError(f"thermal mean must be >= 0, got {mean!r}")
        return cls(kind="thermal", mean=float(mean), fano=1.0 + float(mean))

    @classmethod
    def empirical(cls, pmf) -> "PhotonSource":
        """Source with an explicit pmf over photon numbers 0..len(pmf)-1."""
        p = np.asarray(pmf, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise DomainError("empirical pmf must be a non-empty 1-d vector")
        if p.size > MAX_EXACT_SUPPORT + 1:
            raise DomainError(
                f"empirical pmf support {p.size - 1} exceeds the exact-computation "
                f"limit {MAX_EXACT_SUPPORT}"
            )
        if np.any(p < 0.0) or not np.all(np.isfinite(p)):
            raise DomainError("empirical pmf entries must be finite and >= 0")
        total = float(p.sum())
        if abs(total - 1.0) > _PMF_SUM_TOL:
            raise DomainError(
                f"empirical pmf sums to {total!r}; must equal 1 within {_PMF_SUM_TOL}"
            )
        p = p / total
        n = np.arange(p.size, dtype=float)
        mean = float(n @ p)
        var = float((n - mean) ** 2 @ p)
        fano = var / mean if mean > 0.0 else 0.0
        return cls(kind="empirical", mean=mean, fano=fano, pmf=p)

    @classmethod
    def from_fano(cls, mean: float, fano: float) -> "PhotonSource":
        """Overdispersed source with independently chosen mean and Fano."""
        if mean <= 0.0:
            raise DomainError(f"mean must be > 0, got {mean!r}")
        if fano < 1.0:
            raise DomainError(
                f"from_fano supports fano >= 1 (got {fano!r}); sub-Poissonian "
                "statistics require a fock or empirical source"
            )
        return cls(kind="fano", mean=float(mean), fano=float(fano))


@dataclass(frozen=True)
class DetectorModel:
    """Dark-count statistics of a photon-counting detector.

    ``dark_mean`` and ``dark_var`` are per counting window of duration
    ``window`` seconds; callers that record dark rates in s^-1 / s^-2 must
    scale by window and window^2 before constructing the model (the CLI
    config exposes ``detector.rate_scaling`` for exactly that).

    A Poisson detector has dark_var = dark_mean. Overdispersed dark counts
    (dark_var > dark_mean) are realized as a zero-inflated Poisson matched
    to both moments. Sub-Poissonian dark counts are rejected: no Poisson
    mixture can have variance below its mean.
    """

    dark_mean: float
    dark_var: float
    window: float = 1.0

    def __post_init__(self) -> None:
        if self.dark_mean < 0.0:
            raise DomainError(f"dark mean must be >= 0, got {self.dark_mean!r}")
        if self.dark_mean == 0.0 and self.dark_var != 0.0:
            raise DomainError("a detector with zero dark mean must have zero variance")
        if self.dark_var < self.dark_mean:
            raise DomainError(
                f"dark variance {self.dark_var!r} below dark mean "
                f"{self.dark_mean!r} is not realizable by a Poisson mixture"
            )
        if self.window <= 0.0:
            raise DomainError(f"window must be > 0 seconds, got {self.window!r}")

    @classmethod
    def poisson(cls, dark_mean: float, window: float = 1.0) -> "DetectorModel":
        return cls(dark_mean=dark_mean, dark_var=dark_mean, window=window)

    @classmethod
    def noiseless(cls, window: float = 1.0) -> "DetectorModel":
        return cls(dark_mean=0.0, dark_var=0.0, window=window)


def thinned_moments(source: PhotonSource, eta: float) -> tuple[float, float]:
    """Exact (mean, variance) of the photon count after loss ``eta``."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    mean = eta * source.mean
    var = eta**2 * source.variance + eta * (1.0 - eta) * source.mean
    return mean, var


def sample_input(source: PhotonSource, rng: np.random.Generator) -> int:
    """Draw one photon number from the source."""
    if source.kind == "fock":
        return int(source.fock_n)  # deterministic
    if source.kind == "coherent":
        return int(rng.poisson(source.mean))
    if source.kind == "thermal":
        if source.mean == 0.0:
            return 0
        # Bose-Einstein is geometric on {0, 1, ...}; numpy's geometric
        # counts trials, hence the -1.
        return int(rng.geometric(1.0 / (1.0 + source.mean)) - 1)
    if source.kind == "empirical":
        return int(rng.choice(source.pmf.size, p=source.pmf))
    if source.kind == "fano":
        if source.fano == 1.0:
            return int(rng.poisson(source.mean))
        # Negative binomial with fano = 1/p, mean = r(1-p)/p.
        p = 1.0 / source.fano
        r = source.mean / (source.fano - 1.0)
        return int(rng.negative_binomial(r, p))
    raise DomainError(f"unknown source kind {source.kind!r}")


def thin(n_in: int, eta: float, rng: np.random.Generator) -> int:
    """Binomial survival of ``n_in`` photons through transmission ``eta``."""
    if n_in < 0:
        raise DomainError(f"photon number must be >= 0, got {n_in!r}")
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    return int(rng.binomial(int(n_in), eta))


def thin_pmf(pmf, eta: float) -> np.ndarray:
    """Exact pmf of the compound (binomially thinned) distribution.

    Limited to supports of :data:`MAX_EXACT_SUPPORT`; larger inputs should
    work with moments via :func:`thinned_moments`.
    """
    p = np.asarray(pmf, dtype=float)
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    if p.size > MAX_EXACT_SUPPORT + 1:
        raise DomainError(f"support {p.size - 1} exceeds {MAX_EXACT_SUPPORT}")
    if eta == 1.0:
        return p.copy()
    out = np.zeros_like(p)
    if eta == 0.0:
        out[0] = p.sum()
        return out
    ratio = eta / (1.0 - eta)
    # B(k | n, eta) by the recurrence B(k+1) = B(k) * (n-k)/(k+1) * ratio.
    for n in range(p.size):
        if p[n] == 0.0:
            continue
        b = (1.0 - eta) ** n
        for k in range(n + 1):
            out[k] += p[n] * b
            b *= (n - k) / (k + 1.0) * ratio
    return out


def sample_dark_counts(det: DetectorModel, rng: np.random.Generator) -> int:
    """Draw the dark counts registered in one counting window."""
    if det.dark_mean == 0.0:
        return 0
    if det.dark_var == det.dark_mean:
        return int(rng.poisson(det.dark_mean))
    # Zero-inflated Poisson: with probability q a Poisson(lam) burst, else
    # silence. Matches (mean, var) exactly for any var > mean > 0.
    q = det.dark_mean**2 / (det.dark_mean**2 + det.dark_var - det.dark_mean)
    lam = det.dark_mean / q
    if rng.random() < q:
        return int(rng.poisson(lam))
    return 0


def fano_before_loss(sigma_after: float, eta_l: float) -> float:
    """Back-propagate a measured Fano factor across an upstream loss.

    Inverts fano_after = eta_l * fano_before + (1 - eta_l), giving
    (sigma_after + eta_l - 1) / eta_l.
    """
    if not 0.0 < eta_l <= 1.0:
        raise DomainError(f"eta_l must lie in (0, 1], got {eta_l!r}")
    sigma0 = (sigma_after + eta_l - 1.0) / eta_l
    if sigma0 < 0.0:
        raise DomainError(
            f"measured fano {sigma_after!r} through loss {eta_l!r} implies an "
            f"impossible negative source fano {sigma0!r}"
        )
    return sigma0


def fano_after_loss(sigma0: float, eta_l: float) -> float:
    """Fano factor after a loss channel: eta_l * sigma0 + (1 - eta_l).

    Deep thinning (eta_l -> 0) drives any source towards Poisson
    statistics (fano 1).
    """
    if not 0.0 <= eta_l <= 1.0:
        raise DomainError(f"eta_l must lie in [0, 1], got {eta_l!r}")
    if sigma0 < 0.0:
        raise DomainError(f"fano must be >= 0, got {sigma0!r}")
    return eta_l * sigma0 + (1.0 - eta_l)


def load_empirical_pmf(path: str | Path) -> PhotonSource:
    """Load an empirical source from a two-column text file.

    Each non-comment row is ``photon_number probability``. Photon numbers
    must be distinct non-negative integers; probabilities must be >= 0 and
    sum to 1 within 1e-9 (re-normalized if so, rejected if worse).
    """
    data = np.loadtxt(path, ndmin=2)
    if data.shape[1] != 2:
        raise DomainError(
            f"{path}: expected two columns (photon number, probability), "
            f"got {data.shape[1]}"
        )
    ns = data[:, 0]
    probs = data[:, 1]
    if np.any(ns < 0) or np.any(ns != np.round(ns)):
        raise DomainError(f"{path}: photon numbers must be non-negative integers")
    ints = ns.astype(int)
    if np.unique(ints).size != ints.size:
        raise DomainError(f"{path}: duplicate photon numbers")
    if ints.max() > MAX_EXACT_SUPPORT:
        raise DomainError(
            f"{path}: support {ints.max()} exceeds the exact-computation "
            f"limit {MAX_EXACT_SUPPORT}"
        )
    pmf = np.zeros(int(ints.max()) + 1)
    pmf[ints] = probs
    return PhotonSource.empirical(pmf)
