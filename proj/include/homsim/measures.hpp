#pragma once

#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "homsim/distribution.hpp"

namespace homsim {

/// The three correlation measures evaluated on one joint distribution.
struct CorrelationReport {
  double corr = 0.0;                // in [-1, 1]
  double schmidt_k = 1.0;           // >= 1
  double mutual_information = 0.0;  // >= 0, log base 10
  bool degenerate_marginal_a = false;
  bool degenerate_marginal_b = false;
};

/// Photon-number conditioning: drop components above a per-mode maximum
/// and/or remove the two-mode vacuum component.
struct ConditioningSpec {
  bool remove_vacuum = false;
  std::optional<int> max_photons_per_mode;
};

/// Row and column sums (marginal distributions of arm A and arm B).
std::pair<Eigen::VectorXd, Eigen::VectorXd> marginals(
    const JointDistribution& dist);

/// Pearson correlation of the photon numbers: cov(n_A, n_B)/(sigma_A sigma_B).
/// A degenerate marginal (zero variance) yields 0; the optional flag output
/// reports which marginal was degenerate.
double correlation_coefficient(const JointDistribution& dist,
                               bool* degenerate_a = nullptr,
                               bool* degenerate_b = nullptr);

/// Which matrix the Schmidt decomposition is applied to. The measured
/// intensities (probabilities) are the default; the amplitude-like square
/// root is exposed as an alternative.
enum class SchmidtInput { probabilities, sqrt_probabilities };

/// Schmidt number K = 1 / sum_i lambda_i^2 with lambda_i the singular values
/// of the (normalized) joint matrix, scaled to unit sum. 1 for any outer
/// product, bounded by min(rows, cols).
double schmidt_number(const JointDistribution& dist,
                      SchmidtInput input = SchmidtInput::probabilities);

/// I = sum P(n_a, n_b) log10( P(n_a,n_b) / (P(n_a) P(n_b)) ), zero terms
/// contribute 0. Nonnegative; tiny negative rounding is clamped to zero.
double mutual_information(const JointDistribution& dist);

/// g^(2)(0) = <n(n-1)> / <n>^2 of a photon-number marginal. Throws on a
/// zero-mean input.
double g2_zero(const Eigen::VectorXd& marginal);

/// Effective (thermal) mode number 1/(g2 - 1); defined for g2 in (1, 2].
double effective_mode_number(double g2);

/// Applies a ConditioningSpec and renormalizes. Throws if conditioning
/// removes all probability mass. A spec with no options returns the input
/// unchanged.
JointDistribution condition_distribution(const JointDistribution& dist,
                                         const ConditioningSpec& spec);

/// All three measures of one distribution, with degeneracy flags.
CorrelationReport analyze_distribution(const JointDistribution& dist);

} // namespace homsim
