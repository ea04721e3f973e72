#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glrusim/catalog.hpp"
#include "glrusim/simulation.hpp"

namespace glrusim {

// One grid point of the VoD parameter sweep.
struct SweepPoint {
  double alpha = 0.8;           // Zipf exponent
  double cp = 0.1;              // capacity as fraction of total chunks
  double startup_delay_s = 3.0; // d_s
  double chunk_len_s = 2.0;     // L
  double rho = 0.5;             // traffic intensity without cache
  double rate_MBps = 10.0;      // processing rate r
};

// Full 384-point grid: every combination of the VoD parameter axes.
std::vector<SweepPoint> full_grid();
// 16-point sub-grid (alpha x cp x rho x rate at d_s=3, L=2) for quick runs.
std::vector<SweepPoint> desk_grid();

struct SweepParams {
  std::size_t n_files = 1000;
  std::size_t n_requests = 1000000;
  ParetoSpec pareto{};
  CorrelationMode correlation = CorrelationMode::Independent;
  std::uint64_t seed = 1;
  // Draw fresh video lengths per configuration instead of sharing one draw.
  bool resample_lengths = false;
  // Pins the video-length population (e.g. loaded from a catalog CSV);
  // overrides the Pareto draw when non-empty.
  std::vector<double> fixed_lengths;
  unsigned jobs = 1;
  double stall_threshold = 1e-12;
};

// The shared length draw a sweep uses when not resampling per config.
std::vector<double> sweep_lengths(const SweepParams& params);

// Everything run_sweep derives for one grid point: catalog, capacity,
// service parameters, trace, and coupled-simulation options.
struct ConfigInstance {
  FileCatalog catalog;
  std::uint64_t capacity = 0;
  ServiceConfig service;
  RequestTrace trace;
  SimOptions options;
};

ConfigInstance materialize_config(std::size_t config_index, const SweepPoint& point,
                                  const SweepParams& params,
                                  const std::vector<double>& shared_lengths);

struct ConfigResult {
  std::size_t config_index = 0;
  SweepPoint point;
  std::uint64_t capacity = 0;
  std::uint64_t total_chunks = 0;
  MetricsReport lru;
  MetricsReport glru;
};

// Runs both policies per grid point over one shared trace with coupled
// service draws. Configurations are independent and fan out across jobs.
std::vector<ConfigResult> run_sweep(const std::vector<SweepPoint>& grid,
                                    const SweepParams& params);

inline constexpr const char* kMetricNames[] = {"p_c", "p_m", "T_w", "T_d", "p_d"};

double metric_value(const MetricsReport& report, std::size_t metric);

// Relative improvement (glru - lru) / lru; zero whenever the LRU value is 0.
double relative_difference(double lru, double glru);

struct ComparisonRow {
  std::string metric;
  double lru = 0.0;
  double glru = 0.0;
  double relative = 0.0;
  double gross = 0.0;
};

std::vector<ComparisonRow> compare(const MetricsReport& lru, const MetricsReport& glru);

// Best/worst/mean improvement per metric across a sweep. "Best" is the most
// improved value (largest for p_c, most negative for the cost metrics);
// relative and gross columns are ranked independently.
struct MetricSummary {
  std::string metric;
  double worst_relative = 0.0, worst_gross = 0.0;
  double best_relative = 0.0, best_gross = 0.0;
  double mean_relative = 0.0, mean_gross = 0.0;
};

std::vector<MetricSummary> summarize(const std::vector<ConfigResult>& results);

struct CorrelationStudy {
  std::vector<ConfigResult> positive;
  std::vector<ConfigResult> negative;
};

CorrelationStudy correlation_study(const std::vector<SweepPoint>& grid,
                                   const SweepParams& params);

// Mean of (positive - negative) / negative per metric and policy.
struct CorrelationContrastRow {
  std::string metric;
  double glru = 0.0;
  double lru = 0.0;
};

std::vector<CorrelationContrastRow> positive_vs_negative(const CorrelationStudy& study);

// Mean gLRU-over-LRU relative improvement per metric under each coupling.
struct CorrelationImprovementRow {
  std::string metric;
  double positive = 0.0;
  double negative = 0.0;
};

std::vector<CorrelationImprovementRow> improvement_by_correlation(
    const CorrelationStudy& study);

}  // namespace glrusim
