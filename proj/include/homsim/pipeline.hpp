#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "homsim/detection.hpp"
#include "homsim/distribution.hpp"
#include "homsim/interference.hpp"
#include "homsim/measures.hpp"

namespace homsim {

/// Scan driver configuration. The source is given either as the squeezing
/// parameter r directly or as a (mean_photon, efficiency) pair that r is
/// back-calculated from.
struct ScanConfig {
  std::optional<double> r;
  std::optional<double> mean_photon;
  double efficiency = 1.0;
  std::optional<double> mean_photon_sigma;  // analytic confidence band

  double pulse_fwhm_ps = 3.0;
  std::vector<double> delays_ps;
  DetectionChain chain;
  std::optional<int> cutoff;  // auto-selected from r when absent
  std::optional<std::uint64_t> shots;  // Monte Carlo mode when present
  std::uint64_t seed = 1;
  std::vector<ConditioningSpec> conditioning;
  int bootstrap_resamples = 200;

  double resolved_r() const;
  int resolved_cutoff() const;
  void validate() const;
};

/// Parses a JSON config with keys mirroring the ScanConfig fields.
/// Unknown keys are errors.
ScanConfig parse_scan_config(const std::string& json_text);
ScanConfig load_scan_config(const std::filesystem::path& path);

struct MeasureInterval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Percentile confidence intervals (default 16/84) of the three measures
/// under multinomial resampling of a click histogram.
struct BootstrapIntervals {
  MeasureInterval corr;
  MeasureInterval schmidt_k;
  MeasureInterval mutual_information;
  int resamples = 0;
};

BootstrapIntervals bootstrap_uncertainty(const ClickHistogram& histogram,
                                         const DetectionChain& chain,
                                         int resamples, std::uint64_t seed,
                                         double lo_percentile = 16.0,
                                         double hi_percentile = 84.0);

/// Everything recorded for one delay point.
struct ScanRecord {
  double delay_ps = 0.0;
  double overlap = 1.0;
  double theta_dis = 0.0;

  JointDistribution ideal;        // lossless 4-mode model output
  JointDistribution lossy;        // after per-arm transmission
  JointDistribution clicks;       // TMD-convolved click probabilities
  JointDistribution deconvolved;  // clicks inverted back to photon numbers

  // Analytic path: measured on the photon-number distribution, as in the
  // no-free-parameter simulation the scan reproduces.
  CorrelationReport analytic;
  std::vector<CorrelationReport> conditioned;  // one per conditioning spec

  // Optional confidence band from the mean-photon uncertainty.
  std::optional<CorrelationReport> analytic_lo;
  std::optional<CorrelationReport> analytic_hi;

  // Monte Carlo path (present when shots were requested).
  std::optional<ClickHistogram> histogram;
  std::optional<JointDistribution> sampled_deconvolved;
  std::optional<CorrelationReport> sampled;
  std::vector<CorrelationReport> sampled_conditioned;
  std::optional<BootstrapIntervals> bootstrap;

  // Selected photon-number components of the lossy distribution.
  double p11 = 0.0, p22 = 0.0, p20 = 0.0, p02 = 0.0;
};

struct ScanResult {
  ScanConfig config;
  double r_used = 0.0;
  int cutoff_used = 0;
  std::vector<ScanRecord> records;
};

/// Runs the scan; delays are evaluated as an order-independent parallel map
/// (num_threads = 0 picks the hardware count). Output is deterministic for
/// a given config and seed regardless of worker count.
ScanResult run_scan(const ScanConfig& config, int num_threads = 0);

enum class ExportFormat { table, structured };

/// Writes per-delay measure tables and the full distributions under out_dir.
/// Table mode emits TSV files plus a JSON metadata echo; structured mode
/// emits a single scan.json. Schema version: 1.
void export_results(const ScanResult& result,
                    const std::filesystem::path& out_dir, ExportFormat format);

/// Click-record file I/O. Text format (exact): a header line
/// "bins_A bins_B total_shots" followed by (bins_A+1)*(bins_B+1) lines
/// "k_A k_B count". A JSON document with fields bins_a, bins_b,
/// total_shots, counts is accepted as the structured equivalent.
ClickHistogram ingest_click_records(const std::filesystem::path& path);
void write_click_records(const ClickHistogram& histogram,
                         const std::filesystem::path& path,
                         ExportFormat format = ExportFormat::table);

/// Distribution file I/O; see docs/file-formats.md. Entries survive a
/// write/read round trip exactly.
void write_distribution(const JointDistribution& dist,
                        const std::filesystem::path& path,
                        ExportFormat format = ExportFormat::table);
JointDistribution read_distribution(const std::filesystem::path& path);

/// Named preset configurations for the `reproduce` CLI command.
ScanConfig preset_config(const std::string& name);

} // namespace homsim
