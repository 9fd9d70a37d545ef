#include "homsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace homsim {

namespace {

std::size_t compositions_count(int total, int parts) {
  // C(total + parts - 1, parts - 1), small enough for exact size_t arithmetic
  std::size_t num = 1;
  for (int k = 1; k < parts; ++k) {
    num = num * static_cast<std::size_t>(total + k) / static_cast<std::size_t>(k);
  }
  return num;
}

} // namespace

FockBasis::FockBasis(int num_modes, int total_cutoff)
    : num_modes_(num_modes), total_cutoff_(total_cutoff) {
  if (num_modes < 1 || num_modes > 16) {
    throw std::invalid_argument("FockBasis: num_modes must be in [1, 16]");
  }
  if (total_cutoff < 0) {
    throw std::invalid_argument("FockBasis: total_cutoff must be >= 0");
  }

  // Binomial table C(a, b) for a <= cutoff + num_modes, b <= num_modes.
  const int amax = total_cutoff + num_modes;
  binom_.assign(static_cast<std::size_t>(amax + 1) * (num_modes + 1), 0);
  for (int a = 0; a <= amax; ++a) {
    binom_[static_cast<std::size_t>(a) * (num_modes_ + 1)] = 1;
    for (int b = 1; b <= std::min(a, num_modes); ++b) {
      binom_[static_cast<std::size_t>(a) * (num_modes_ + 1) + b] =
          binom(a - 1, b - 1) + (b <= a - 1 ? binom(a - 1, b) : 0);
    }
  }

  std::size_t dim = 0;
  sector_offset_.reserve(total_cutoff + 2);
  for (int n = 0; n <= total_cutoff; ++n) {
    sector_offset_.push_back(dim);
    dim += compositions_count(n, num_modes);
  }
  sector_offset_.push_back(dim);
  occupations_.reserve(dim * num_modes);

  // Graded lexicographic enumeration: sectors by total photon number,
  // ascending lexicographic within each sector.
  std::vector<int> occ(num_modes);
  auto emit = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == num_modes_ - 1) {
      occ[pos] = remaining;
      occupations_.insert(occupations_.end(), occ.begin(), occ.end());
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      occ[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  for (int n = 0; n <= total_cutoff; ++n) {
    emit(emit, 0, n);
  }
}

int FockBasis::total_photons(std::size_t index) const {
  auto occ = occupation(index);
  return std::accumulate(occ.begin(), occ.end(), 0);
}

std::size_t FockBasis::rank_unchecked(std::span<const int> occ) const {
  // Position in the ascending-lex order of its sector: count compositions
  // with a smaller digit at each position (hockey-stick sums).
  std::size_t rank = 0;
  int rem = std::accumulate(occ.begin(), occ.end(), 0);
  for (int p = 0; p < num_modes_ - 1; ++p) {
    const int k = num_modes_ - 1 - p;  // parts after position p
    rank += binom(rem + k, k) - binom(rem - occ[p] + k, k);
    rem -= occ[p];
  }
  return rank;
}

std::size_t FockBasis::index_of(std::span<const int> occ) const {
  if (static_cast<int>(occ.size()) != num_modes_) {
    throw std::invalid_argument("FockBasis::index_of: wrong number of modes");
  }
  int total = 0;
  for (int v : occ) {
    if (v < 0) throw std::invalid_argument("FockBasis::index_of: negative occupation");
    total += v;
  }
  if (total > total_cutoff_) {
    throw std::invalid_argument("FockBasis::index_of: tuple above total cutoff");
  }
  return sector_offset_[total] + rank_unchecked(occ);
}

FockVector::FockVector(std::shared_ptr<const FockBasis> basis,
                       Eigen::VectorXcd amplitudes, double truncation_leakage,
                       bool truncation_warning)
    : basis_(std::move(basis)),
      amplitudes_(std::move(amplitudes)),
      truncation_leakage_(truncation_leakage),
      truncation_warning_(truncation_warning) {
  if (!basis_) throw std::invalid_argument("FockVector: null basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->size()) {
    throw std::invalid_argument("FockVector: amplitude size does not match basis");
  }
}

namespace {

void check_squeeze(const SqueezeParams& params) {
  if (params.r < 0.0 || !std::isfinite(params.r)) {
    throw std::invalid_argument("squeeze parameter r must be finite and >= 0");
  }
}

void check_cutoff_even(int total_cutoff) {
  if (total_cutoff < 2 || total_cutoff % 2 != 0) {
    throw std::invalid_argument("total_cutoff must be even and >= 2");
  }
}

void check_mode(int mode, int num_modes) {
  if (mode < 0 || mode >= num_modes) {
    throw std::invalid_argument("mode index out of range: " + std::to_string(mode));
  }
}

} // namespace

FockVector two_mode_squeezed_vacuum(const SqueezeParams& params, int mode_i,
                                    int mode_j, int num_modes, int total_cutoff,
                                    double leakage_bound) {
  check_squeeze(params);
  check_cutoff_even(total_cutoff);
  check_mode(mode_i, num_modes);
  check_mode(mode_j, num_modes);
  if (mode_i == mode_j) {
    throw std::invalid_argument("two_mode_squeezed_vacuum: modes must differ");
  }

  auto basis = std::make_shared<const FockBasis>(num_modes, total_cutoff);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis->size());

  const double t = std::tanh(params.r);
  const double ch = std::cosh(params.r);
  const int n_max = total_cutoff / 2;

  std::vector<int> occ(num_modes, 0);
  for (int n = 0; n <= n_max; ++n) {
    occ[mode_i] = n;
    occ[mode_j] = n;
    const double mag = std::pow(t, n) / ch;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    amps[basis->index_of(occ)] = sign * std::polar(mag, n * params.phi);
    if (t == 0.0) break;  // only the vacuum term survives
  }

  const double leakage = (t == 0.0) ? 0.0 : std::pow(t, 2 * (n_max + 1));
  return FockVector(std::move(basis), std::move(amps), leakage,
                    leakage > leakage_bound);
}

FockVector single_mode_squeezed_vacuum(const SqueezeParams& params, int mode_i,
                                       int num_modes, int total_cutoff,
                                       double leakage_bound) {
  check_squeeze(params);
  check_cutoff_even(total_cutoff);
  check_mode(mode_i, num_modes);

  auto basis = std::make_shared<const FockBasis>(num_modes, total_cutoff);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis->size());

  const double t = std::tanh(params.r);
  const double ch = std::cosh(params.r);

  std::vector<int> occ(num_modes, 0);
  double prob = 1.0 / ch;  // P(0); P(2k+2) = P(2k) * t^2 (2k+1)/(2k+2)
  double captured = 0.0;
  for (int k = 0; 2 * k <= total_cutoff; ++k) {
    occ[mode_i] = 2 * k;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    amps[basis->index_of(occ)] = sign * std::polar(std::sqrt(prob), k * params.phi);
    captured += prob;
    if (t == 0.0) break;
    prob *= t * t * (2.0 * k + 1.0) / (2.0 * k + 2.0);
  }

  const double leakage = std::max(0.0, 1.0 - captured);
  return FockVector(std::move(basis), std::move(amps), leakage,
                    leakage > leakage_bound);
}

Eigen::MatrixXd beam_splitter_block(int total_photons, double theta) {
  const int s = total_photons;
  if (s < 0) throw std::invalid_argument("beam_splitter_block: negative sector");

  // log-factorials and a double-precision Pascal triangle
  std::vector<double> lgfact(s + 1);
  for (int k = 1; k <= s; ++k) lgfact[k] = std::lgamma(k + 1.0);
  std::vector<std::vector<double>> choose(s + 1);
  for (int n = 0; n <= s; ++n) {
    choose[n].assign(n + 1, 1.0);
    for (int p = 1; p < n; ++p) choose[n][p] = choose[n - 1][p - 1] + choose[n - 1][p];
  }

  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  std::vector<double> cpow(s + 1, 1.0), spow(s + 1, 1.0);
  for (int k = 1; k <= s; ++k) {
    cpow[k] = cpow[k - 1] * c;
    spow[k] = spow[k - 1] * sn;
  }

  // <m, s-m| B |n, s-n> from the binomial expansion of the transformed
  // creation operators acting on vacuum.
  Eigen::MatrixXd B(s + 1, s + 1);
  for (int n = 0; n <= s; ++n) {
    for (int m = 0; m <= s; ++m) {
      double acc = 0.0;
      const int p_lo = std::max(0, m - (s - n));
      const int p_hi = std::min(n, m);
      for (int p = p_lo; p <= p_hi; ++p) {
        const int q = m - p;
        double term = choose[n][p] * choose[s - n][q] * cpow[p + s - n - q] *
                      spow[(n - p) + q];
        acc += (q % 2 == 0) ? term : -term;
      }
      const double pref = std::exp(
          0.5 * (lgfact[m] + lgfact[s - m] - lgfact[n] - lgfact[s - n]));
      B(m, n) = pref * acc;
    }
  }
  return B;
}

FockVector apply_beam_splitter(const FockVector& state,
                               const BeamSplitterSpec& spec) {
  const FockBasis& basis = state.basis();
  const int m = basis.num_modes();
  check_mode(spec.mode_i, m);
  check_mode(spec.mode_j, m);
  if (spec.mode_i == spec.mode_j) {
    throw std::invalid_argument("apply_beam_splitter: modes must differ");
  }
  if (!(spec.theta >= 0.0 && spec.theta <= std::numbers::pi / 2 + 1e-12)) {
    throw std::invalid_argument("apply_beam_splitter: theta must be in [0, pi/2]");
  }

  const std::size_t dim = basis.size();
  const Eigen::VectorXcd& in = state.amplitudes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);

  std::vector<Eigen::MatrixXd> blocks(basis.total_cutoff() + 1);
  std::vector<bool> have_block(basis.total_cutoff() + 1, false);

  std::vector<int> occ(m);
  std::vector<std::size_t> idx;
  idx.reserve(basis.total_cutoff() + 1);

  // Each class of tuples differing only in the (mode_i, mode_j) pair is a
  // closed (s+1)-dimensional block; visit each class at its n_i = 0 member.
  for (std::size_t t = 0; t < dim; ++t) {
    auto tup = basis.occupation(t);
    if (tup[spec.mode_i] != 0) continue;
    const int s = tup[spec.mode_j];

    std::copy(tup.begin(), tup.end(), occ.begin());
    int total = 0;
    for (int v : occ) total += v;

    idx.clear();
    for (int k = 0; k <= s; ++k) {
      occ[spec.mode_i] = k;
      occ[spec.mode_j] = s - k;
      idx.push_back(basis.sector_offset_[total] + basis.rank_unchecked(occ));
    }

    if (!have_block[s]) {
      blocks[s] = beam_splitter_block(s, spec.theta);
      have_block[s] = true;
    }
    const Eigen::MatrixXd& B = blocks[s];
    for (int row = 0; row <= s; ++row) {
      std::complex<double> acc = 0.0;
      for (int col = 0; col <= s; ++col) acc += B(row, col) * in[idx[col]];
      out[idx[row]] = acc;
    }
  }

  return FockVector(state.basis_ptr(), std::move(out),
                    state.truncation_leakage(), state.truncation_warning());
}

JointDistribution joint_number_distribution(const FockVector& state,
                                            const std::vector<int>& group_a,
                                            const std::vector<int>& group_b) {
  const FockBasis& basis = state.basis();
  const int m = basis.num_modes();

  std::vector<int> owner(m, -1);
  for (int mode : group_a) {
    check_mode(mode, m);
    if (owner[mode] != -1) throw std::invalid_argument("joint_number_distribution: overlapping groups");
    owner[mode] = 0;
  }
  for (int mode : group_b) {
    check_mode(mode, m);
    if (owner[mode] != -1) throw std::invalid_argument("joint_number_distribution: overlapping groups");
    owner[mode] = 1;
  }
  for (int mode = 0; mode < m; ++mode) {
    if (owner[mode] == -1) {
      throw std::invalid_argument("joint_number_distribution: groups must cover all modes");
    }
  }

  const int n = basis.total_cutoff();
  JointDistribution dist;
  dist.p = Eigen::MatrixXd::Zero(n + 1, n + 1);
  dist.provenance = Provenance::ideal;
  dist.truncation_leakage = state.truncation_leakage();

  const Eigen::VectorXcd& amps = state.amplitudes();
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const double w = std::norm(amps[t]);
    if (w == 0.0) continue;
    auto occ = basis.occupation(t);
    int na = 0, nb = 0;
    for (int mode = 0; mode < m; ++mode) {
      (owner[mode] == 0 ? na : nb) += occ[mode];
    }
    dist.p(na, nb) += w;
  }
  return dist;
}

int cutoff_for_leakage(double r, double bound) {
  if (bound <= 0.0) throw std::invalid_argument("cutoff_for_leakage: bound must be > 0");
  if (r <= 0.0) return 2;
  const double t = std::tanh(r);
  int cutoff = 2;
  while (std::pow(t, cutoff + 2) > bound) {
    cutoff += 2;
    if (cutoff > 512) {
      throw std::invalid_argument("cutoff_for_leakage: bound unreachable below cutoff 512");
    }
  }
  return cutoff;
}

} // namespace homsim
