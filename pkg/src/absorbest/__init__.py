"""Precision bounds and Monte Carlo experiments for Beer-Lambert
absorbance estimation.

The library answers three questions about estimating an absorbance
coefficient by photon counting:

1. How much information per probe photon does a given strategy deliver
   (coherent, Fock, or any photon statistics via the Fano factor, with
   instrumental losses and detector dark counts)?
2. What sample length, or pass count, maximizes that information, and how
   large is the residual quantum advantage once the length is optimal?
3. Do simulated photon-counting experiments actually attain the analytic
   bounds?
"""

from .channel import AbsorbanceChannel, Transmissions, reparametrize_fisher
from .errors import ConfigError, DomainError
from .fisher import (
    FisherReport,
    estimator_info_dark,
    fisher_a_classical,
    fisher_a_fock,
    fisher_a_general,
    fisher_eta_classical,
    fisher_eta_fock,
    fisher_eta_general,
    fisher_multipass_coherent,
    fisher_multipass_fock,
    fisher_per_absorbed_photon,
)
from .lambertw import lambert_w0
from .optimize import (
    OptimumReport,
    PassOptimum,
    advantage_vs_gamma_sweep,
    optimal_length_classical,
    optimal_length_fock,
    optimal_length_general,
    optimal_passes,
    optimum_report,
    quantum_advantage,
    quantum_advantage_at_optimum,
)
from .photon_stats import (
    DetectorModel,
    PhotonSource,
    fano_after_loss,
    fano_before_loss,
    load_empirical_pmf,
    sample_dark_counts,
    sample_input,
    thin,
    thin_pmf,
    thinned_moments,
)
from .simulate import (
    FisherEstimate,
    HeraldedExperimentConfig,
    SingleArmExperimentConfig,
    TrialOutcome,
    estimate_a_heralded,
    estimate_a_single_arm,
    group_fisher_estimate,
    run_heralded,
    run_single_arm,
    theory_overlay,
)

__version__ = "0.1.0"

__all__ = [
    "AbsorbanceChannel",
    "ConfigError",
    "DetectorModel",
    "DomainError",
    "FisherEstimate",
    "FisherReport",
    "HeraldedExperimentConfig",
    "OptimumReport",
    "PassOptimum",
    "PhotonSource",
    "SingleArmExperimentConfig",
    "Transmissions",
    "TrialOutcome",
    "advantage_vs_gamma_sweep",
    "estimate_a_heralded",
    "estimate_a_single_arm",
    "estimator_info_dark",
    "fano_after_loss",
    "fano_before_loss",
    "fisher_a_classical",
    "fisher_a_fock",
    "fisher_a_general",
    "fisher_eta_classical",
    "fisher_eta_fock",
    "fisher_eta_general",
    "fisher_multipass_coherent",
    "fisher_multipass_fock",
    "fisher_per_absorbed_photon",
    "group_fisher_estimate",
    "lambert_w0",
    "load_empirical_pmf",
    "optimal_length_classical",
    "optimal_length_fock",
    "optimal_length_general",
    "optimal_passes",
    "optimum_report",
    "quantum_advantage",
    "quantum_advantage_at_optimum",
    "reparametrize_fisher",
    "run_heralded",
    "run_single_arm",
    "sample_dark_counts",
    "sample_input",
    "thin",
    "thin_pmf",
    "thinned_moments",
    "theory_overlay",
]
