#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "homsim/distribution.hpp"

namespace homsim {

/// Per-arm total transmission and time-multiplexed detector bin counts.
struct DetectionChain {
  double eta_a = 1.0;
  double eta_b = 1.0;
  int bins_a = 8;
  int bins_b = 8;
};

using CountMatrix =
    Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Joint click counts over (k_A, k_B), k <= bins per arm.
struct ClickHistogram {
  int bins_a = 8;
  int bins_b = 8;
  CountMatrix counts;  // (bins_a + 1) x (bins_b + 1)
  std::uint64_t total_shots = 0;

  /// Empirical click frequencies (provenance: sampled).
  JointDistribution to_distribution() const;
};

/// Binomial loss channel applied per arm:
/// P'(m_A, m_B) = sum_{n >= m} P(n_A, n_B) B(n_A, m_A; eta_A) B(n_B, m_B; eta_B).
/// Requires eta in (0, 1]. Preserves normalization.
JointDistribution apply_loss(const JointDistribution& dist, double eta_a,
                             double eta_b);

/// C[k][n] = probability that n photons spread uniformly over `bins` time
/// bins occupy exactly k distinct bins; equals
/// binom(bins, k) k! S2(n, k) / bins^n. Columns sum to 1, C[k][n] = 0 for
/// k > n. Shape (bins + 1) x (max_n + 1).
Eigen::MatrixXd tmd_convolution_matrix(int bins, int max_n);

/// Click statistics Q(k_A, k_B) from photon statistics via the TMD
/// convolution applied per arm. Loss must already be applied.
JointDistribution clicks_from_photons(const JointDistribution& dist,
                                      const DetectionChain& chain);

/// Inverts the truncated (bins+1)x(bins+1) convolution per arm. Photon
/// numbers above the bin count are unrecoverable; mass folded onto lower
/// clicks shows up as negative entries, which are clamped to zero and the
/// pre-clamp residual recorded before renormalizing.
JointDistribution deconvolve_clicks(const JointDistribution& clicks,
                                    const DetectionChain& chain);
JointDistribution deconvolve_clicks(const ClickHistogram& histogram,
                                    const DetectionChain& chain);

/// Multinomial sample of a click distribution. Deterministic for a fixed
/// seed: shots are split into fixed-size chunks with per-chunk derived
/// seeds, so the histogram is independent of how chunks are scheduled.
ClickHistogram sample_clicks(const JointDistribution& clicks,
                             std::uint64_t shots, std::uint64_t seed);

} // namespace homsim
