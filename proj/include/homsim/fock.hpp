#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "homsim/distribution.hpp"

namespace homsim {

/// Squeezing strength r >= 0 and angle phi (radians). The squeeze argument
/// is xi = r * exp(i*phi); everything downstream uses phi = 0.
struct SqueezeParams {
  double r = 0.0;
  double phi = 0.0;
};

/// Two-mode beam splitter with mixing angle theta in [0, pi/2].
/// Convention: a_i -> cos(theta) a_i + sin(theta) a_j,
///             a_j -> -sin(theta) a_i + cos(theta) a_j.
struct BeamSplitterSpec {
  int mode_i;
  int mode_j;
  double theta;
};

/// Occupation-number basis of an m-mode Fock space truncated at a total
/// photon number. Tuples are enumerated in graded lexicographic order:
/// by total photon number first, then lexicographically ascending.
class FockBasis {
 public:
  FockBasis(int num_modes, int total_cutoff);

  int num_modes() const { return num_modes_; }
  int total_cutoff() const { return total_cutoff_; }
  std::size_t size() const { return occupations_.size() / num_modes_; }

  std::span<const int> occupation(std::size_t index) const {
    return {occupations_.data() + index * num_modes_,
            static_cast<std::size_t>(num_modes_)};
  }
  int total_photons(std::size_t index) const;

  /// Index of an occupation tuple; throws if the tuple is out of range.
  std::size_t index_of(std::span<const int> occ) const;

  /// First basis index of the given total-photon-number sector.
  std::size_t sector_begin(int total) const { return sector_offset_[total]; }
  std::size_t sector_end(int total) const { return sector_offset_[total + 1]; }

 private:
  std::size_t rank_unchecked(std::span<const int> occ) const;
  friend class FockVector;
  friend FockVector apply_beam_splitter(const FockVector&,
                                        const BeamSplitterSpec&);

  int num_modes_;
  int total_cutoff_;
  std::vector<int> occupations_;          // size() * num_modes_
  std::vector<std::size_t> sector_offset_;  // total_cutoff_ + 2 entries
  std::vector<std::size_t> binom_;          // C(a, b), b <= num_modes_
  std::size_t binom(int a, int b) const {
    return binom_[static_cast<std::size_t>(a) * (num_modes_ + 1) + b];
  }
};

/// Pure state in a truncated Fock space. Immutable value type: all
/// operations return fresh vectors and may share the basis.
class FockVector {
 public:
  FockVector(std::shared_ptr<const FockBasis> basis, Eigen::VectorXcd amplitudes,
             double truncation_leakage = 0.0, bool truncation_warning = false);

  const FockBasis& basis() const { return *basis_; }
  std::shared_ptr<const FockBasis> basis_ptr() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

  double norm_squared() const { return amplitudes_.squaredNorm(); }

  /// Probability mass beyond the cutoff, known analytically for the
  /// constructors and preserved by photon-number conserving unitaries.
  double truncation_leakage() const { return truncation_leakage_; }
  /// Set when the leakage exceeded the bound requested at construction.
  bool truncation_warning() const { return truncation_warning_; }

 private:
  std::shared_ptr<const FockBasis> basis_;
  Eigen::VectorXcd amplitudes_;
  double truncation_leakage_;
  bool truncation_warning_;
};

/// S_ij(xi)|0>: amplitudes (-1)^n e^{i n phi} tanh^n(r) / cosh(r) on
/// |n>_i |n>_j. total_cutoff must be even and >= 2. If the truncation
/// leakage tanh(r)^(2*(floor(N/2)+1)) exceeds leakage_bound the result
/// carries a truncation warning.
FockVector two_mode_squeezed_vacuum(const SqueezeParams& params, int mode_i,
                                    int mode_j, int num_modes, int total_cutoff,
                                    double leakage_bound = 1e-10);

/// Single-mode squeezed vacuum on mode_i; support on even photon numbers
/// only, P(2n) = (2n)!/(2^{2n} n!^2) tanh^{2n}(r)/cosh(r).
FockVector single_mode_squeezed_vacuum(const SqueezeParams& params, int mode_i,
                                       int num_modes, int total_cutoff,
                                       double leakage_bound = 1e-10);

/// Applies exp(theta (a_i a_j^dag - a_i^dag a_j)) in the Fock basis.
/// Block-diagonal in total photon number, so no leakage is introduced.
FockVector apply_beam_splitter(const FockVector& state,
                               const BeamSplitterSpec& spec);

/// Matrix of the beam splitter on the two-mode sector with s photons total:
/// element (m, n) = <m, s-m| B(theta) |n, s-n>. Real orthogonal.
Eigen::MatrixXd beam_splitter_block(int total_photons, double theta);

/// P(n_A, n_B) with n_A = sum of photons in group_a, n_B in group_b.
/// The groups must be disjoint and together cover all modes.
JointDistribution joint_number_distribution(const FockVector& state,
                                            const std::vector<int>& group_a,
                                            const std::vector<int>& group_b);

/// Smallest even total cutoff N with TMSVS tail tanh(r)^(N+2) <= bound.
int cutoff_for_leakage(double r, double bound);

} // namespace homsim
