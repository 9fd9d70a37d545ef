#pragma once

#include "homsim/distribution.hpp"
#include "homsim/fock.hpp"

namespace homsim {

/// Gaussian pump/signal pulse, characterised by its intensity FWHM.
struct PulseModel {
  double duration_fwhm_ps = 3.0;
};

struct HomConfig {
  SqueezeParams squeeze;
  PulseModel pulse;
  double delay_ps = 0.0;
  int total_cutoff = 16;
};

/// Mode-overlap amplitude of two identical Gaussian envelopes delayed by
/// tau: O(tau) = 2^(-tau^2 / T^2) where T is the intensity FWHM.
double overlap_from_delay(double delay_ps, const PulseModel& pulse);

/// Distinguishability angle: cos(theta_dis) = overlap. 0 means perfect
/// interference, pi/2 fully distinguishable.
double theta_dis_from_overlap(double overlap);

/// Four-mode distinguishability model: builds
///   |Psi> = B_13(pi/4) B_02(pi/4) B_01(theta_dis) S_02(r) |0>
/// and returns P(n_A, n_B) with detector A reading modes {2,3} and
/// detector B modes {0,1}. Throws if the cutoff leaves leakage > 1e-6.
JointDistribution simulate_hom_theta(const SqueezeParams& squeeze,
                                     double theta_dis, int total_cutoff);

/// Same, with theta_dis derived from the configured delay.
JointDistribution simulate_hom(const HomConfig& config);

/// Closed-form TMSVS joint distribution: diagonal with
/// P(n, n) = tanh^{2n}(r) / cosh^2(r), n up to max_photons_per_arm.
JointDistribution tmsvs_reference_distribution(const SqueezeParams& squeeze,
                                               int max_photons_per_arm);

/// Outer product of two identical single-mode squeezed vacuum photon
/// number distributions (the perfect-overlap output).
JointDistribution smsvs_product_distribution(const SqueezeParams& squeeze,
                                             int max_photons_per_arm);

/// Back-calculates the squeezing parameter from a measured mean photon
/// number: r = arsinh(sqrt(mean_photon / efficiency)).
SqueezeParams squeeze_from_mean_photon(double mean_photon, double efficiency);

} // namespace homsim
