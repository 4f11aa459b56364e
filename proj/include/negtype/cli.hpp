#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "negtype/graph.hpp"
#include "negtype/metric.hpp"
#include "negtype/negative_type.hpp"

namespace negtype::cli {

enum class InputKind { GraphFile, MatrixFile, Generator };

struct InputSpec {
  InputKind kind = InputKind::Generator;
  /// File path or generator spec ("cycle:5", "fixture:G1", ...).
  std::string source;
  /// Matrices are only rescaled on request; graphs always are.
  bool normalize = false;
};

struct LoadedInput {
  MetricSpace space;
  /// Minimum distance divided out (1 when not normalized).
  double scale = 1.0;
  bool normalized = false;
};

LoadedInput load_input(const InputSpec& spec);

/// Everything `compute` prints. Serializes to a fixed key set:
/// input, config, status, p (finite only), trigger, bracket, alpha, simplex,
/// diagnostics, wall_ms.
struct RunReport {
  InputSpec input;
  std::size_t points = 0;
  double scale = 1.0;
  bool normalized = false;
  PntConfig config;
  PntResult result;
  std::optional<ExtremalCertificate> certificate;
  double wall_ms = 0.0;
};

nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

RunReport cmd_compute(const InputSpec& input, const PntConfig& cfg);

/// CSV with header p,det,bordered_det,inner,lambda_max and 17 significant
/// digits per value.
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows);

/// One row of the regression table `verify` runs.
struct Fixture {
  std::string name;
  Graph graph;
  /// nullopt means the scan must report InfiniteBeyond(p_max).
  std::optional<double> expected_p;
  double p_tol = 1e-8;
  std::optional<Trigger> trigger;
  /// Alternative to expected_p: p must lie in [range.first, range.second].
  std::optional<std::pair<double, double>> range;
  /// Must vanish at the computed p (to residual_tol).
  std::function<double(double)> residual;
  double residual_tol = 1e-6;
  /// Compared entrywise against the certificate's alpha.
  std::vector<double> expected_alpha;
  double alpha_tol = 1e-6;
};

std::vector<Fixture> reference_fixtures();

struct FixtureOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs every fixture. When `tol_override` is set it replaces all fixture
/// tolerances as well as cfg.tol_eig and cfg.tol_det.
std::vector<FixtureOutcome> run_fixtures(const std::vector<Fixture>& fixtures, PntConfig cfg,
                                         std::optional<double> tol_override = std::nullopt);

struct GapViolation {
  std::size_t n;
  std::uint64_t mask;
  std::string edges;
  double p;
};

struct GapScanReport {
  std::size_t graphs = 0;
  std::vector<GapViolation> violations;  // sorted by (n, mask)
  std::size_t at_lower_end = 0;          // within 1e-8 of log2(2+sqrt 3)
  std::size_t at_upper_end = 0;          // within 1e-8 of 2
  std::size_t infinite = 0;
  /// Counts of finite values in [0.1k, 0.1(k+1)) for k = 0..19, then >= 2.
  std::vector<std::size_t> histogram;
};

inline constexpr double kGapEpsilon = 1e-6;

/// Every labeled connected graph on 2..n_max vertices; InfiniteBeyond counts
/// as >= 2. Work is spread over `threads` workers.
GapScanReport run_gap_scan(std::size_t n_max, const PntConfig& cfg, unsigned threads);

void print_gap_report(std::ostream& os, const GapScanReport& r);

}  // namespace negtype::cli
