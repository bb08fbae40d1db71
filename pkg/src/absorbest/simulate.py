"""Monte Carlo photon-counting experiments that test the analytic bounds.

Two experiment families are modelled. The heralded-pair experiment detects
signal photons (heralds) and counts how many of their twins survive the
lossy arm; the absorbance estimator inverts the coincidence ratio. The
single-arm experiment counts transmitted photons from a noisy source
directly, with detector dark counts added and subtracted in the mean.

Each counting window is an independent trial drawn from its own random
substream PCG64(SeedSequence((seed, window_index))), so a run is
bit-reproducible for a fixed seed and independent of evaluation order.

The analysis protocol mirrors the standard grouped-variance estimate: the
per-window absorbance estimates are split into consecutive groups, each
group's unbiased sample variance gives one information estimate
1/(n0 * var), and the group mean and standard error are reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import AbsorbanceChannel
from .errors import DomainError
from .fisher import (
    estimator_info_dark,
    fisher_a_classical,
    fisher_a_fock,
    fisher_eta_general,
)
from .optimize import (
    optimal_length_classical,
    optimal_length_fock,
    optimal_length_general,
)
from .photon_stats import (
    DetectorModel,
    PhotonSource,
    sample_dark_counts,
    sample_input,
    thin,
)

__all__ = [
    "TrialOutcome",
    "FisherEstimate",
    "HeraldedExperimentConfig",
    "SingleArmExperimentConfig",
    "estimate_a_heralded",
    "estimate_a_single_arm",
    "run_heralded",
    "run_single_arm",
    "group_fisher_estimate",
    "theory_overlay",
]


@dataclass(frozen=True)
class TrialOutcome:
    """Counts registered in one window.

    Heralded runs fill ``n_signal``/``n_coincidence`` (and report the
    coincidences as the idler count); single-arm runs fill ``n_idler`` and
    ``n_dark`` and leave the herald fields at zero.
    """

    n_signal: int
    n_coincidence: int
    n_idler: int
    n_dark: int
    discarded: bool = False

    def __post_init__(self) -> None:
        for name in ("n_signal", "n_coincidence", "n_idler", "n_dark"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0")
        if self.n_coincidence > self.n_signal:
            raise DomainError("coincidences cannot exceed heralds")


@dataclass(frozen=True)
class FisherEstimate:
    """Grouped-variance information estimate with its standard error."""

    mean_info_per_photon: float
    std_error: float
    n_groups: int
    discard_count: int

    def __post_init__(self) -> None:
        if self.std_error < 0.0:
            raise DomainError("std_error must be >= 0")
        if self.n_groups < 2:
            raise DomainError("at least 2 groups are required to report")


def _positive(value: float, name: str) -> None:
    if value <= 0.0:
        raise DomainError(f"{name} must be > 0, got {value!r}")


@dataclass(frozen=True)
class HeraldedExperimentConfig:
    """Configuration of a heralded-pair run.

    ``herald_rate`` is the expected signal-detector rate in counts per
    second, so the mean heralds per window is herald_rate * window (must be
    >= 1). ``literal_facet_convention`` switches the estimator denominator
    from the arm's instrumental transmission gamma^2 exp(-beta L) (the
    default, asymptotically unbiased) to the bare per-facet gamma.
    """

    channel: AbsorbanceChannel
    herald_rate: float
    window: float = 0.5
    n_windows: int = 500
    group_size: int = 100
    seed: int = 0
    literal_facet_convention: bool = False

    def __post_init__(self) -> None:
        _positive(self.herald_rate, "herald_rate")
        _positive(self.window, "window")
        _positive(self.channel.length, "channel length")
        if self.herald_rate * self.window < 1.0:
            raise DomainError(
                "mean heralds per window must be >= 1, got "
                f"{self.herald_rate * self.window!r}"
            )
        _check_grouping(self.n_windows, self.group_size)
        _check_seed(self.seed)

    @property
    def mean_heralds_per_window(self) -> float:
        return self.herald_rate * self.window

    @property
    def arm_transmission(self) -> float:
        """Denominator constant of the coincidence estimator."""
        if self.literal_facet_convention:
            return self.channel.gamma
        return self.channel.instrumental_transmission


@dataclass(frozen=True)
class SingleArmExperimentConfig:
    """Configuration of a single-arm (direct counting) run.

    The source describes the light at the sample input, per counting
    window; it then experiences the channel's *total* transmission.
    ``calibrated_n0`` is the mean count registered with no sample present
    (absorbance dialed to zero, instrumental losses still in place); when
    omitted it is derived as source.mean * instrumental_transmission.
    """

    channel: AbsorbanceChannel
    source: PhotonSource
    detector: DetectorModel = field(default_factory=DetectorModel.noiseless)
    calibrated_n0: float | None = None
    n_windows: int = 500
    group_size: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        _positive(self.channel.length, "channel length")
        _check_grouping(self.n_windows, self.group_size)
        _check_seed(self.seed)
        if self.calibrated_n0 is None:
            derived = self.source.mean * self.channel.instrumental_transmission
            if derived <= 0.0:
                raise DomainError(
                    "calibrated_n0 cannot be derived from a zero-mean source; "
                    "pass it explicitly"
                )
            object.__setattr__(self, "calibrated_n0", derived)
        elif self.calibrated_n0 <= 0.0:
            raise DomainError(
                f"calibrated_n0 must be > 0, got {self.calibrated_n0!r}"
            )


def _check_grouping(n_windows: int, group_size: int) -> None:
    if group_size < 2:
        raise DomainError(f"group_size must be >= 2, got {group_size!r}")
    if n_windows < 2 * group_size:
        raise DomainError(
            f"need at least two groups: n_windows {n_windows!r} < "
            f"2 * group_size {group_size!r}"
        )
    if n_windows % group_size != 0:
        raise DomainError(
            f"n_windows {n_windows!r} must be divisible by group_size "
            f"{group_size!r}"
        )


def _check_seed(seed: int) -> None:
    if seed < 0 or seed != int(seed):
        raise DomainError(f"seed must be a non-negative integer, got {seed!r}")


def _window_rng(seed: int, index: int) -> np.random.Generator:
    """Independent substream for one window; order of use is irrelevant."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, index))))


def estimate_a_heralded(
    outcome: TrialOutcome, arm_transmission: float, length: float
) -> float | None:
    """Absorbance estimate from one heralded window:
    -ln(N_cc / (arm_transmission * N_S)) / L.

    Returns None (trial to be discarded) when either count is
    non-positive, where the logarithm is undefined.
    """
    _positive(arm_transmission, "arm_transmission")
    _positive(length, "length")
    if outcome.n_coincidence <= 0 or outcome.n_signal <= 0:
        return None
    ratio = outcome.n_coincidence / (arm_transmission * outcome.n_signal)
    return -math.log(ratio) / length


def estimate_a_single_arm(
    outcome: TrialOutcome, calibrated_n0: float, dark_mean: float, length: float
) -> float | None:
    """Absorbance estimate from one single-arm window:
    -ln((N_I - dark_mean) / calibrated_n0) / L.

    The calibration constant is the no-sample mean count, so instrumental
    loss cancels by construction. Returns None when the background-
    subtracted count is non-positive.
    """
    _positive(calibrated_n0, "calibrated_n0")
    _positive(length, "length")
    if dark_mean < 0.0:
        raise DomainError(f"dark_mean must be >= 0, got {dark_mean!r}")
    net = outcome.n_idler - dark_mean
    if net <= 0.0:
        return None
    return -math.log(net / calibrated_n0) / length


def _heralded_window(cfg: HeraldedExperimentConfig, index: int) -> TrialOutcome:
    rng = _window_rng(cfg.seed, index)
    n_signal = int(rng.poisson(cfg.mean_heralds_per_window))
    n_cc = thin(n_signal, cfg.channel.total_transmission, rng)
    return TrialOutcome(
        n_signal=n_signal, n_coincidence=n_cc, n_idler=n_cc, n_dark=0
    )


def _single_arm_window(cfg: SingleArmExperimentConfig, index: int) -> TrialOutcome:
    rng = _window_rng(cfg.seed, index)
    n0 = sample_input(cfg.source, rng)
    transmitted = thin(n0, cfg.channel.total_transmission, rng)
    dark = sample_dark_counts(cfg.detector, rng)
    return TrialOutcome(
        n_signal=0, n_coincidence=0, n_idler=transmitted + dark, n_dark=dark
    )


def run_heralded(
    cfg: HeraldedExperimentConfig,
) -> tuple[list[float], list[TrialOutcome]]:
    """Simulate all windows of a heralded-pair run.

    Returns the surviving absorbance estimates (in window order) and every
    window's outcome with its discard flag; len(estimates) plus the number
    of discarded outcomes equals n_windows exactly.
    """
    estimates: list[float] = []
    outcomes: list[TrialOutcome] = []
    for i in range(cfg.n_windows):
        outcome = _heralded_window(cfg, i)
        est = estimate_a_heralded(outcome, cfg.arm_transmission, cfg.channel.length)
        if est is None:
            outcome = TrialOutcome(
                outcome.n_signal,
                outcome.n_coincidence,
                outcome.n_idler,
                outcome.n_dark,
                discarded=True,
            )
        else:
            estimates.append(est)
        outcomes.append(outcome)
    return estimates, outcomes


def run_single_arm(
    cfg: SingleArmExperimentConfig,
) -> tuple[list[float], list[TrialOutcome]]:
    """Simulate all windows of a single-arm run; see :func:`run_heralded`
    for the return convention."""
    estimates: list[float] = []
    outcomes: list[TrialOutcome] = []
    for i in range(cfg.n_windows):
        outcome = _single_arm_window(cfg, i)
        est = estimate_a_single_arm(
            outcome, cfg.calibrated_n0, cfg.detector.dark_mean, cfg.channel.length
        )
        if est is None:
            outcome = TrialOutcome(
                outcome.n_signal,
                outcome.n_coincidence,
                outcome.n_idler,
                outcome.n_dark,
                discarded=True,
            )
        else:
            estimates.append(est)
        outcomes.append(outcome)
    return estimates, outcomes


def group_fisher_estimate(
    estimates, group_size: int, n0: float, discard_count: int = 0
) -> FisherEstimate:
    """Grouped-variance information estimate.

    Splits the surviving estimates into consecutive full groups of
    ``group_size``, computes one information value 1/(n0 * Var_g) per group
    with the unbiased (n-1) sample variance, and reports the group mean and
    the standard error across groups.

    Raises
    ------
    DomainError
        If fewer than two full groups survive, or any group has zero
        variance (constant estimates carry formally infinite information).
    """
    values = np.asarray(list(estimates), dtype=float)
    _positive(n0, "n0")
    if group_size < 2:
        raise DomainError(f"group_size must be >= 2, got {group_size!r}")
    n_groups = values.size // group_size
    if n_groups < 2:
        raise DomainError(
            f"insufficient surviving estimates ({values.size}) for two "
            f"groups of {group_size}"
        )
    infos = np.empty(n_groups)
    for g in range(n_groups):
        block = values[g * group_size : (g + 1) * group_size]
        var = float(np.var(block, ddof=1))
        if var == 0.0:
            raise DomainError(
                f"group {g} has zero variance; the information estimate "
                "1/(n0*var) is infinite"
            )
        infos[g] = 1.0 / (n0 * var)
    return FisherEstimate(
        mean_info_per_photon=float(infos.mean()),
        std_error=float(np.std(infos, ddof=1) / math.sqrt(n_groups)),
        n_groups=n_groups,
        discard_count=int(discard_count),
    )


def theory_overlay(
    channel: AbsorbanceChannel,
    *,
    lengths=None,
    absorbances=None,
    at_optimal_length: bool = False,
    fano: float | None = None,
    dark_var: float = 0.0,
    n0: float | None = None,
) -> dict[str, np.ndarray]:
    """Tabulate the analytic absorbance-information curves on a grid.

    Exactly one of ``lengths`` (sweep L at the channel's absorbance) or
    ``absorbances`` (sweep a at the channel's length, or at each
    strategy's own optimal length when ``at_optimal_length``) must be
    given. Columns: ``x``, ``classical``, ``fock``, plus ``general`` when
    a Fano factor is supplied and ``dark`` when dark-count inputs
    (``dark_var``, ``n0``) are supplied as well. The general and dark
    columns fold instrumental loss through the total transmission with the
    Fano factor taken at the sample input.

    Domain errors raise with the offending grid value named.
    """
    if (lengths is None) == (absorbances is None):
        raise DomainError("provide exactly one of lengths= or absorbances=")
    if at_optimal_length and lengths is not None:
        raise DomainError("at_optimal_length only applies to an absorbance sweep")
    if (
        at_optimal_length
        and fano is not None
        and (channel.beta != 0.0 or channel.gamma != 1.0)
    ):
        raise DomainError(
            "the general-statistics optimum is defined without instrumental "
            "loss (beta = 0, gamma = 1)"
        )
    want_dark = dark_var > 0.0 or n0 is not None
    if want_dark and (n0 is None or fano is None):
        raise DomainError("the dark column needs both fano= and n0=")

    xs = np.asarray(lengths if lengths is not None else absorbances, dtype=float)
    cols: dict[str, list[float]] = {"classical": [], "fock": []}
    if fano is not None:
        cols["general"] = []
    if want_dark:
        cols["dark"] = []

    for x in xs:
        try:
            if lengths is not None:
                points = {name: channel.with_length(float(x)) for name in cols}
            elif at_optimal_length:
                a = float(x)
                points = {}
                for name in cols:
                    if name == "classical":
                        L = optimal_length_classical(a, channel.beta)
                    elif name == "fock":
                        L = optimal_length_fock(a, channel.beta, channel.gamma)
                    else:
                        L = optimal_length_general(a, fano)
                    points[name] = AbsorbanceChannel(
                        a, L, channel.beta, channel.gamma
                    )
            else:
                points = {
                    name: AbsorbanceChannel(
                        float(x), channel.length, channel.beta, channel.gamma
                    )
                    for name in cols
                }
            for name in cols:
                ch = points[name]
                if name == "classical":
                    v = fisher_a_classical(ch)
                elif name == "fock":
                    v = fisher_a_fock(ch)
                else:
                    eta = ch.total_transmission
                    jacobian = ch.length**2 * eta**2
                    if name == "general":
                        v = jacobian * fisher_eta_general(eta, fano)
                    else:
                        v = jacobian * estimator_info_dark(eta, fano, dark_var, n0)
                cols[name].append(v)
        except DomainError as err:
            raise DomainError(f"at grid value {float(x)!r}: {err}") from err

    out: dict[str, np.ndarray] = {"x": xs}
    out.update({name: np.asarray(vals) for name, vals in cols.items()})
    return out
