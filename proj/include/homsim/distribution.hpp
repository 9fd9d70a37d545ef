#pragma once

#include <Eigen/Dense>
#include <string>

namespace homsim {

// Stage of the measurement chain a distribution belongs to.
enum class Provenance { ideal, lossy, clicks, sampled, deconvolved };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

/// Joint distribution P(n_A, n_B) over photon numbers (or clicks) in the two
/// detected arms. Rows index arm A, columns arm B. Entries are nonnegative
/// and sum to 1 up to the recorded truncation leakage.
struct JointDistribution {
  Eigen::MatrixXd p;
  Provenance provenance = Provenance::ideal;
  double truncation_leakage = 0.0;  // mass lost to the Fock cutoff
  double clamp_residual = 0.0;      // negative mass removed by deconvolution

  int max_n_a() const { return static_cast<int>(p.rows()) - 1; }
  int max_n_b() const { return static_cast<int>(p.cols()) - 1; }
  double total() const { return p.sum(); }
};

} // namespace homsim
