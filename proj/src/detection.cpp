#include "homsim/detection.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

#include "homsim/rng.hpp"

namespace homsim {

namespace {

constexpr std::uint64_t kSampleChunk = 1u << 16;

void check_eta(double eta, const char* name) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must be in (0, 1]");
  }
}

// L(m, n) = binom(n, m) eta^m (1-eta)^(n-m); pow(0, 0) = 1 keeps eta = 1 exact.
Eigen::MatrixXd binomial_loss_matrix(int max_n, double eta) {
  std::vector<std::vector<double>> choose(max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    choose[n].assign(n + 1, 1.0);
    for (int m = 1; m < n; ++m) choose[n][m] = choose[n - 1][m - 1] + choose[n - 1][m];
  }
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(max_n + 1, max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    for (int m = 0; m <= n; ++m) {
      L(m, n) = choose[n][m] * std::pow(eta, m) * std::pow(1.0 - eta, n - m);
    }
  }
  return L;
}

} // namespace

JointDistribution ClickHistogram::to_distribution() const {
  if (total_shots == 0) {
    throw std::invalid_argument("ClickHistogram: no shots recorded");
  }
  JointDistribution dist;
  dist.p = counts.cast<double>() / static_cast<double>(total_shots);
  dist.provenance = Provenance::sampled;
  return dist;
}

JointDistribution apply_loss(const JointDistribution& dist, double eta_a,
                             double eta_b) {
  check_eta(eta_a, "eta_a");
  check_eta(eta_b, "eta_b");

  JointDistribution out;
  const Eigen::MatrixXd la = binomial_loss_matrix(dist.max_n_a(), eta_a);
  const Eigen::MatrixXd lb = binomial_loss_matrix(dist.max_n_b(), eta_b);
  out.p = la * dist.p * lb.transpose();
  out.provenance = Provenance::lossy;
  out.truncation_leakage = dist.truncation_leakage;
  out.clamp_residual = dist.clamp_residual;
  return out;
}

Eigen::MatrixXd tmd_convolution_matrix(int bins, int max_n) {
  if (bins < 1) throw std::invalid_argument("tmd_convolution_matrix: bins must be >= 1");
  if (max_n < 0) throw std::invalid_argument("tmd_convolution_matrix: max_n must be >= 0");

  // Occupied-bin count distribution, one photon at a time; equivalent to
  // binom(bins, k) k! S2(n, k) / bins^n but numerically stable.
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(bins + 1, max_n + 1);
  Eigen::VectorXd col = Eigen::VectorXd::Zero(bins + 1);
  col[0] = 1.0;
  C.col(0) = col;
  for (int n = 1; n <= max_n; ++n) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(bins + 1);
    for (int k = 0; k <= bins; ++k) {
      next[k] = col[k] * (static_cast<double>(k) / bins);
      if (k > 0) next[k] += col[k - 1] * (static_cast<double>(bins - k + 1) / bins);
    }
    col = next;
    C.col(n) = col;
  }
  return C;
}

JointDistribution clicks_from_photons(const JointDistribution& dist,
                                      const DetectionChain& chain) {
  if (chain.bins_a < 1 || chain.bins_b < 1) {
    throw std::invalid_argument("DetectionChain: bins must be >= 1");
  }
  const Eigen::MatrixXd ca = tmd_convolution_matrix(chain.bins_a, dist.max_n_a());
  const Eigen::MatrixXd cb = tmd_convolution_matrix(chain.bins_b, dist.max_n_b());

  JointDistribution out;
  out.p = ca * dist.p * cb.transpose();
  out.provenance = Provenance::clicks;
  out.truncation_leakage = dist.truncation_leakage;
  out.clamp_residual = dist.clamp_residual;
  return out;
}

JointDistribution deconvolve_clicks(const JointDistribution& clicks,
                                    const DetectionChain& chain) {
  if (chain.bins_a < 1 || chain.bins_b < 1) {
    throw std::invalid_argument("DetectionChain: bins must be >= 1");
  }
  for (int i = 0; i < clicks.p.rows(); ++i) {
    for (int j = 0; j < clicks.p.cols(); ++j) {
      if ((i > chain.bins_a || j > chain.bins_b) && clicks.p(i, j) != 0.0) {
        throw std::invalid_argument(
            "deconvolve_clicks: click counts exceed the TMD bin count");
      }
    }
  }

  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(chain.bins_a + 1, chain.bins_b + 1);
  const int rows = std::min<int>(q.rows(), clicks.p.rows());
  const int cols = std::min<int>(q.cols(), clicks.p.cols());
  q.topLeftCorner(rows, cols) = clicks.p.topLeftCorner(rows, cols);

  // The truncated convolution matrix is upper triangular (C[k][n] = 0 for
  // k > n) with positive diagonal, so both per-arm solves are exact.
  const Eigen::MatrixXd ca = tmd_convolution_matrix(chain.bins_a, chain.bins_a);
  const Eigen::MatrixXd cb = tmd_convolution_matrix(chain.bins_b, chain.bins_b);
  Eigen::MatrixXd r = ca.triangularView<Eigen::Upper>().solve(q);
  r = cb.triangularView<Eigen::Upper>().solve(r.transpose()).transpose();

  double residual = 0.0;
  for (int i = 0; i < r.rows(); ++i) {
    for (int j = 0; j < r.cols(); ++j) {
      if (r(i, j) < 0.0) {
        residual -= r(i, j);
        r(i, j) = 0.0;
      }
    }
  }
  const double total = r.sum();
  if (!(total > 0.0)) {
    throw std::runtime_error("deconvolve_clicks: no probability mass left");
  }

  JointDistribution out;
  out.p = r / total;
  out.provenance = Provenance::deconvolved;
  out.truncation_leakage = clicks.truncation_leakage;
  out.clamp_residual = residual;
  return out;
}

JointDistribution deconvolve_clicks(const ClickHistogram& histogram,
                                    const DetectionChain& chain) {
  return deconvolve_clicks(histogram.to_distribution(), chain);
}

ClickHistogram sample_clicks(const JointDistribution& clicks,
                             std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_clicks: shots must be >= 1");
  const int rows = static_cast<int>(clicks.p.rows());
  const int cols = static_cast<int>(clicks.p.cols());

  std::vector<double> cdf;
  cdf.reserve(rows * cols);
  double acc = 0.0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double v = clicks.p(i, j);
      if (v < 0.0) throw std::invalid_argument("sample_clicks: negative probability");
      acc += v;
      cdf.push_back(acc);
    }
  }
  if (!(acc > 0.0)) throw std::invalid_argument("sample_clicks: empty distribution");
  for (double& c : cdf) c /= acc;
  cdf.back() = 1.0;

  const std::uint64_t num_chunks = (shots + kSampleChunk - 1) / kSampleChunk;
  auto run_chunks = [&](std::uint64_t first, std::uint64_t stride) {
    CountMatrix local = CountMatrix::Zero(rows, cols);
    for (std::uint64_t c = first; c < num_chunks; c += stride) {
      const std::uint64_t begin = c * kSampleChunk;
      const std::uint64_t count = std::min<std::uint64_t>(kSampleChunk, shots - begin);
      SplitMix64 gen(derive_seed(seed, c));
      for (std::uint64_t d = 0; d < count; ++d) {
        const double u = gen.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto cell = static_cast<int>(it - cdf.begin());
        local(cell / cols, cell % cols) += 1;
      }
    }
    return local;
  };

  ClickHistogram hist;
  hist.bins_a = rows - 1;
  hist.bins_b = cols - 1;
  hist.total_shots = shots;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t workers = std::min<std::uint64_t>(hw, num_chunks);
  if (workers <= 1) {
    hist.counts = run_chunks(0, 1);
    return hist;
  }
  std::vector<std::future<CountMatrix>> parts;
  for (std::uint64_t w = 0; w < workers; ++w) {
    parts.push_back(std::async(std::launch::async, run_chunks, w, workers));
  }
  CountMatrix total = CountMatrix::Zero(rows, cols);
  for (auto& f : parts) total += f.get();
  hist.counts = std::move(total);
  return hist;
}

} // namespace homsim
