#include "homsim/interference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace homsim {

double overlap_from_delay(double delay_ps, const PulseModel& pulse) {
  if (!(pulse.duration_fwhm_ps > 0.0)) {
    throw std::invalid_argument("PulseModel: duration_fwhm_ps must be > 0");
  }
  const double x = delay_ps / pulse.duration_fwhm_ps;
  return std::exp2(-x * x);
}

double theta_dis_from_overlap(double overlap) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw std::invalid_argument("theta_dis_from_overlap: overlap must be in [0, 1]");
  }
  return std::acos(overlap);
}

JointDistribution simulate_hom_theta(const SqueezeParams& squeeze,
                                     double theta_dis, int total_cutoff) {
  if (total_cutoff < 4 || total_cutoff % 2 != 0) {
    throw std::invalid_argument("simulate_hom: total_cutoff must be even and >= 4");
  }

  const double t = std::tanh(squeeze.r);
  const double leakage = (t == 0.0) ? 0.0 : std::pow(t, total_cutoff + 2);
  if (leakage > 1e-6) {
    throw std::invalid_argument(
        "simulate_hom: cutoff " + std::to_string(total_cutoff) +
        " leaves truncation leakage " + std::to_string(leakage) +
        "; need total_cutoff >= " +
        std::to_string(cutoff_for_leakage(squeeze.r, 1e-6)));
  }

  constexpr double quarter = std::numbers::pi / 4;
  FockVector state = two_mode_squeezed_vacuum(squeeze, 0, 2, 4, total_cutoff);
  state = apply_beam_splitter(state, {0, 1, theta_dis});
  state = apply_beam_splitter(state, {0, 2, quarter});
  state = apply_beam_splitter(state, {1, 3, quarter});

  // Joint detection: detector A reads modes {2,3}, detector B modes {0,1}.
  return joint_number_distribution(state, {2, 3}, {0, 1});
}

JointDistribution simulate_hom(const HomConfig& config) {
  const double overlap = overlap_from_delay(config.delay_ps, config.pulse);
  return simulate_hom_theta(config.squeeze, theta_dis_from_overlap(overlap),
                            config.total_cutoff);
}

JointDistribution tmsvs_reference_distribution(const SqueezeParams& squeeze,
                                               int max_photons_per_arm) {
  if (squeeze.r < 0.0) throw std::invalid_argument("squeeze.r must be >= 0");
  if (max_photons_per_arm < 0) {
    throw std::invalid_argument("max_photons_per_arm must be >= 0");
  }
  const int n = max_photons_per_arm;
  const double t = std::tanh(squeeze.r);
  const double ch = std::cosh(squeeze.r);

  JointDistribution dist;
  dist.p = Eigen::MatrixXd::Zero(n + 1, n + 1);
  double captured = 0.0;
  for (int k = 0; k <= n; ++k) {
    dist.p(k, k) = std::pow(t, 2 * k) / (ch * ch);
    captured += dist.p(k, k);
  }
  dist.provenance = Provenance::ideal;
  dist.truncation_leakage = (t == 0.0) ? 0.0 : std::pow(t, 2 * (n + 1));
  return dist;
}

JointDistribution smsvs_product_distribution(const SqueezeParams& squeeze,
                                             int max_photons_per_arm) {
  if (squeeze.r < 0.0) throw std::invalid_argument("squeeze.r must be >= 0");
  if (max_photons_per_arm < 0) {
    throw std::invalid_argument("max_photons_per_arm must be >= 0");
  }
  const int n = max_photons_per_arm;
  const double t = std::tanh(squeeze.r);
  const double ch = std::cosh(squeeze.r);

  Eigen::VectorXd marginal = Eigen::VectorXd::Zero(n + 1);
  double prob = 1.0 / ch;
  for (int k = 0; 2 * k <= n; ++k) {
    marginal[2 * k] = prob;
    prob *= t * t * (2.0 * k + 1.0) / (2.0 * k + 2.0);
  }

  JointDistribution dist;
  dist.p = marginal * marginal.transpose();
  dist.provenance = Provenance::ideal;
  dist.truncation_leakage = std::max(0.0, 1.0 - dist.p.sum());
  return dist;
}

SqueezeParams squeeze_from_mean_photon(double mean_photon, double efficiency) {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument(
        "squeeze_from_mean_photon: efficiency must be in (0, 1]");
  }
  if (mean_photon < 0.0) {
    throw std::invalid_argument("squeeze_from_mean_photon: mean_photon must be >= 0");
  }
  return SqueezeParams{std::asinh(std::sqrt(mean_photon / efficiency)), 0.0};
}

} // namespace homsim
