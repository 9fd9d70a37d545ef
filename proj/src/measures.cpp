#include "homsim/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace homsim {

namespace {

Eigen::MatrixXd normalized_matrix(const JointDistribution& dist) {
  const double total = dist.p.sum();
  if (!(total > 0.0)) {
    throw std::invalid_argument("measures: distribution has no probability mass");
  }
  return dist.p / total;
}

} // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> marginals(
    const JointDistribution& dist) {
  return {dist.p.rowwise().sum(), dist.p.colwise().sum().transpose()};
}

double correlation_coefficient(const JointDistribution& dist, bool* degenerate_a,
                               bool* degenerate_b) {
  const Eigen::MatrixXd p = normalized_matrix(dist);
  const Eigen::VectorXd pa = p.rowwise().sum();
  const Eigen::VectorXd pb = p.colwise().sum().transpose();

  const Eigen::VectorXd na = Eigen::VectorXd::LinSpaced(pa.size(), 0, pa.size() - 1);
  const Eigen::VectorXd nb = Eigen::VectorXd::LinSpaced(pb.size(), 0, pb.size() - 1);

  const double mean_a = na.dot(pa);
  const double mean_b = nb.dot(pb);
  const double var_a = na.cwiseProduct(na).dot(pa) - mean_a * mean_a;
  const double var_b = nb.cwiseProduct(nb).dot(pb) - mean_b * mean_b;

  const bool deg_a = !(var_a > 0.0);
  const bool deg_b = !(var_b > 0.0);
  if (degenerate_a) *degenerate_a = deg_a;
  if (degenerate_b) *degenerate_b = deg_b;
  if (deg_a || deg_b) return 0.0;

  const double mean_ab = na.transpose() * p * nb;
  return (mean_ab - mean_a * mean_b) / std::sqrt(var_a * var_b);
}

double schmidt_number(const JointDistribution& dist, SchmidtInput input) {
  Eigen::MatrixXd m = normalized_matrix(dist);
  if (input == SchmidtInput::sqrt_probabilities) m = m.cwiseSqrt();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  const double sum = s.sum();
  if (!(sum > 0.0)) return 1.0;
  const Eigen::VectorXd lambda = s / sum;
  return 1.0 / lambda.squaredNorm();
}

double mutual_information(const JointDistribution& dist) {
  const Eigen::MatrixXd p = normalized_matrix(dist);
  const Eigen::VectorXd pa = p.rowwise().sum();
  const Eigen::VectorXd pb = p.colwise().sum().transpose();

  double mi = 0.0;
  for (int i = 0; i < p.rows(); ++i) {
    if (pa[i] <= 0.0) continue;
    for (int j = 0; j < p.cols(); ++j) {
      const double v = p(i, j);
      if (v <= 0.0) continue;
      mi += v * std::log10(v / (pa[i] * pb[j]));
    }
  }
  return std::max(0.0, mi);
}

double g2_zero(const Eigen::VectorXd& marginal) {
  const double total = marginal.sum();
  if (!(total > 0.0)) {
    throw std::invalid_argument("g2_zero: marginal has no probability mass");
  }
  double mean = 0.0, fac2 = 0.0;
  for (int n = 0; n < marginal.size(); ++n) {
    const double v = marginal[n] / total;
    mean += n * v;
    fac2 += static_cast<double>(n) * (n - 1.0) * v;
  }
  if (!(mean > 0.0)) {
    throw std::invalid_argument("g2_zero: mean photon number is zero");
  }
  return fac2 / (mean * mean);
}

double effective_mode_number(double g2) {
  if (!(g2 > 1.0 && g2 <= 2.0)) {
    throw std::domain_error("effective_mode_number: g2 must be in (1, 2]");
  }
  return 1.0 / (g2 - 1.0);
}

JointDistribution condition_distribution(const JointDistribution& dist,
                                         const ConditioningSpec& spec) {
  if (spec.max_photons_per_mode && *spec.max_photons_per_mode < 1) {
    throw std::invalid_argument("ConditioningSpec: max_photons_per_mode must be >= 1");
  }
  if (!spec.remove_vacuum && !spec.max_photons_per_mode) return dist;

  JointDistribution out = dist;
  if (spec.max_photons_per_mode) {
    const int keep = *spec.max_photons_per_mode + 1;
    if (out.p.rows() > keep) {
      out.p.bottomRows(out.p.rows() - keep).setZero();
    }
    if (out.p.cols() > keep) {
      out.p.rightCols(out.p.cols() - keep).setZero();
    }
  }
  if (spec.remove_vacuum) out.p(0, 0) = 0.0;

  const double total = out.p.sum();
  if (!(total > 0.0)) {
    throw std::runtime_error("condition_distribution: all probability mass removed");
  }
  out.p /= total;
  return out;
}

CorrelationReport analyze_distribution(const JointDistribution& dist) {
  CorrelationReport report;
  report.corr = correlation_coefficient(dist, &report.degenerate_marginal_a,
                                        &report.degenerate_marginal_b);
  report.schmidt_k = schmidt_number(dist);
  report.mutual_information = mutual_information(dist);
  return report;
}

} // namespace homsim
