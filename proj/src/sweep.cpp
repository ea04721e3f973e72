#include "glrusim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "glrusim/rng.hpp"
#include "glrusim/workload.hpp"

namespace glrusim {

namespace {

constexpr std::uint64_t kLengthSalt = 0x6c656e73;   // "lens"
constexpr std::uint64_t kTraceSalt = 0x74726163;    // "trac"
constexpr std::uint64_t kServiceSalt = 0x73657276;  // "serv"

ConfigResult run_one(std::size_t config_index, const SweepPoint& point,
                     const SweepParams& params, const std::vector<double>& shared_lengths) {
  const ConfigInstance instance =
      materialize_config(config_index, point, params, shared_lengths);
  const ComparisonOutcome outcome =
      run_comparison(instance.catalog, instance.capacity, instance.trace,
                     instance.service, instance.options);

  ConfigResult result;
  result.config_index = config_index;
  result.point = point;
  result.capacity = instance.capacity;
  result.total_chunks = instance.catalog.total_chunks();
  result.lru = outcome.lru;
  result.glru = outcome.glru;
  return result;
}

}  // namespace

std::vector<double> sweep_lengths(const SweepParams& params) {
  if (!params.fixed_lengths.empty()) {
    if (params.fixed_lengths.size() != params.n_files)
      throw std::invalid_argument("sweep: fixed lengths must match n_files");
    return params.fixed_lengths;
  }
  return make_censored_pareto_lengths(params.n_files, params.pareto.shape,
                                      params.pareto.scale, params.pareto.cap,
                                      mix_seed(params.seed, kLengthSalt));
}

ConfigInstance materialize_config(std::size_t config_index, const SweepPoint& point,
                                  const SweepParams& params,
                                  const std::vector<double>& shared_lengths) {
  ConfigInstance instance;
  FileCatalog& catalog = instance.catalog;
  catalog.popularity = make_zipf_popularity(params.n_files, point.alpha);
  if (params.resample_lengths && params.fixed_lengths.empty()) {
    catalog.video_length_s = make_censored_pareto_lengths(
        params.n_files, params.pareto.shape, params.pareto.scale, params.pareto.cap,
        mix_seed(mix_seed(params.seed, kLengthSalt), config_index + 1));
  } else {
    catalog.video_length_s = shared_lengths;
  }
  catalog.chunk_len_s = point.chunk_len_s;
  catalog.chunks = chunkize(catalog.video_length_s, point.chunk_len_s);
  catalog = couple_popularity_size(std::move(catalog), params.correlation);

  const std::uint64_t total = catalog.total_chunks();
  auto capacity = static_cast<std::uint64_t>(
      std::llround(point.cp * static_cast<double>(total)));
  instance.capacity = std::max<std::uint64_t>(1, std::min(capacity, total - 1));

  instance.service.chunk_len_s = point.chunk_len_s;
  instance.service.processing_rate_MBps = point.rate_MBps;
  instance.service.startup_delay_s = point.startup_delay_s;

  const double rate = rate_for_intensity(catalog, point.rho,
                                         instance.service.service_rate_chunks_per_s());
  instance.trace = generate_trace(catalog, rate, params.n_requests,
                                  mix_seed(mix_seed(params.seed, kTraceSalt), config_index));

  instance.options.service_seed =
      mix_seed(mix_seed(params.seed, kServiceSalt), config_index);
  instance.options.stall_threshold = params.stall_threshold;
  return instance;
}

std::vector<SweepPoint> full_grid() {
  std::vector<SweepPoint> grid;
  for (double alpha : {0.8, 1.2})
    for (double cp : {0.1, 0.2})
      for (double ds : {3.0, 4.0})
        for (double L : {1.0, 2.0, 3.0, 4.0})
          for (double rho : {0.1, 0.5, 0.9})
            for (double r : {1.0, 2.0, 10.0, 30.0})
              grid.push_back({alpha, cp, ds, L, rho, r});
  return grid;
}

std::vector<SweepPoint> desk_grid() {
  std::vector<SweepPoint> grid;
  for (double alpha : {0.8, 1.2})
    for (double cp : {0.1, 0.2})
      for (double rho : {0.5, 0.9})
        for (double r : {2.0, 10.0})
          grid.push_back({alpha, cp, 3.0, 2.0, rho, r});
  return grid;
}

std::vector<ConfigResult> run_sweep(const std::vector<SweepPoint>& grid,
                                    const SweepParams& params) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");

  std::vector<double> shared_lengths;
  if (!params.resample_lengths || !params.fixed_lengths.empty()) {
    shared_lengths = sweep_lengths(params);
  }

  std::vector<ConfigResult> results(grid.size());
  const unsigned jobs = std::max(1u, params.jobs);
  if (jobs == 1 || grid.size() == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      results[i] = run_one(i, grid[i], params, shared_lengths);
    }
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size() || failed.load()) return;
      try {
        results[i] = run_one(i, grid[i], params, shared_lengths);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, grid.size()); ++t) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

double metric_value(const MetricsReport& report, std::size_t metric) {
  switch (metric) {
    case 0: return report.p_c;
    case 1: return report.p_m;
    case 2: return report.T_w;
    case 3: return report.T_d;
    case 4: return report.p_d;
    default: throw std::out_of_range("metric index");
  }
}

double relative_difference(double lru, double glru) {
  if (lru == 0.0) return 0.0;
  return (glru - lru) / lru;
}

std::vector<ComparisonRow> compare(const MetricsReport& lru, const MetricsReport& glru) {
  std::vector<ComparisonRow> rows(5);
  for (std::size_t m = 0; m < 5; ++m) {
    const double l = metric_value(lru, m);
    const double g = metric_value(glru, m);
    rows[m] = {kMetricNames[m], l, g, relative_difference(l, g), g - l};
  }
  return rows;
}

std::vector<MetricSummary> summarize(const std::vector<ConfigResult>& results) {
  if (results.empty()) throw std::invalid_argument("summarize: no results");
  std::vector<MetricSummary> summaries(5);
  for (std::size_t m = 0; m < 5; ++m) {
    MetricSummary& summary = summaries[m];
    summary.metric = kMetricNames[m];
    const bool higher_is_better = m == 0;  // p_c gains, the rest are costs
    bool first = true;
    double sum_rel = 0.0, sum_gross = 0.0;
    for (const ConfigResult& result : results) {
      const double l = metric_value(result.lru, m);
      const double g = metric_value(result.glru, m);
      const double rel = relative_difference(l, g);
      const double gross = g - l;
      sum_rel += rel;
      sum_gross += gross;
      if (first) {
        summary.worst_relative = summary.best_relative = rel;
        summary.worst_gross = summary.best_gross = gross;
        first = false;
        continue;
      }
      if (higher_is_better) {
        summary.worst_relative = std::min(summary.worst_relative, rel);
        summary.best_relative = std::max(summary.best_relative, rel);
        summary.worst_gross = std::min(summary.worst_gross, gross);
        summary.best_gross = std::max(summary.best_gross, gross);
      } else {
        summary.worst_relative = std::max(summary.worst_relative, rel);
        summary.best_relative = std::min(summary.best_relative, rel);
        summary.worst_gross = std::max(summary.worst_gross, gross);
        summary.best_gross = std::min(summary.best_gross, gross);
      }
    }
    summary.mean_relative = sum_rel / static_cast<double>(results.size());
    summary.mean_gross = sum_gross / static_cast<double>(results.size());
  }
  return summaries;
}

CorrelationStudy correlation_study(const std::vector<SweepPoint>& grid,
                                   const SweepParams& params) {
  CorrelationStudy study;
  SweepParams positive = params;
  positive.correlation = CorrelationMode::Positive;
  study.positive = run_sweep(grid, positive);
  SweepParams negative = params;
  negative.correlation = CorrelationMode::Negative;
  study.negative = run_sweep(grid, negative);
  return study;
}

std::vector<CorrelationContrastRow> positive_vs_negative(const CorrelationStudy& study) {
  if (study.positive.size() != study.negative.size())
    throw std::invalid_argument("correlation study: mismatched sweeps");
  std::vector<CorrelationContrastRow> rows(5);
  for (std::size_t m = 0; m < 5; ++m) {
    rows[m].metric = kMetricNames[m];
    for (int which = 0; which < 2; ++which) {
      double sum = 0.0;
      std::size_t used = 0;
      for (std::size_t c = 0; c < study.positive.size(); ++c) {
        const MetricsReport& pos =
            which == 0 ? study.positive[c].glru : study.positive[c].lru;
        const MetricsReport& neg =
            which == 0 ? study.negative[c].glru : study.negative[c].lru;
        const double denom = metric_value(neg, m);
        const double numer = metric_value(pos, m) - denom;
        if (denom == 0.0) {
          if (numer == 0.0) ++used;  // counts as zero contrast
          continue;                  // no finite contrast for this config
        }
        sum += numer / denom;
        ++used;
      }
      const double mean = used > 0 ? sum / static_cast<double>(used) : 0.0;
      (which == 0 ? rows[m].glru : rows[m].lru) = mean;
    }
  }
  return rows;
}

std::vector<CorrelationImprovementRow> improvement_by_correlation(
    const CorrelationStudy& study) {
  std::vector<CorrelationImprovementRow> rows(5);
  for (std::size_t m = 0; m < 5; ++m) {
    rows[m].metric = kMetricNames[m];
    double sum_pos = 0.0, sum_neg = 0.0;
    for (const ConfigResult& result : study.positive) {
      sum_pos += relative_difference(metric_value(result.lru, m),
                                     metric_value(result.glru, m));
    }
    for (const ConfigResult& result : study.negative) {
      sum_neg += relative_difference(metric_value(result.lru, m),
                                     metric_value(result.glru, m));
    }
    rows[m].positive = sum_pos / static_cast<double>(study.positive.size());
    rows[m].negative = sum_neg / static_cast<double>(study.negative.size());
  }
  return rows;
}

}  // namespace glrusim
