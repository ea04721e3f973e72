#include "glrusim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glrusim {

namespace {

struct MetricAccumulator {
  double stall_threshold;
  std::size_t n = 0;
  std::size_t n_miss = 0;
  std::size_t n_stalled = 0;
  double sum_s = 0.0, sum_h = 0.0;
  double sum_s2 = 0.0, sum_h2 = 0.0, sum_hs = 0.0;
  double sum_dl = 0.0, sum_dl2 = 0.0;
  double sum_st = 0.0, sum_st2 = 0.0;

  explicit MetricAccumulator(double threshold) : stall_threshold(threshold) {}

  void add(std::uint32_t total_chunks, std::uint32_t chunks_hit, double dl, double stall) {
    const double s = total_chunks;
    const double h = chunks_hit;
    ++n;
    if (chunks_hit == 0) ++n_miss;
    if (stall > stall_threshold) ++n_stalled;
    sum_s += s;
    sum_h += h;
    sum_s2 += s * s;
    sum_h2 += h * h;
    sum_hs += h * s;
    sum_dl += dl;
    sum_dl2 += dl * dl;
    sum_st += stall;
    sum_st2 += stall * stall;
  }

  void fill(MetricsReport& report) const {
    report.n_counted = n;
    if (n == 0) return;
    const double dn = static_cast<double>(n);

    report.p_c = sum_h / sum_s;
    // Ratio-estimator linearization: SE = sqrt(sum (h_k - p s_k)^2) / sum s.
    const double err2 =
        sum_h2 - 2.0 * report.p_c * sum_hs + report.p_c * report.p_c * sum_s2;
    report.se_p_c = std::sqrt(std::max(0.0, err2)) / sum_s;

    report.p_m = static_cast<double>(n_miss) / dn;
    report.se_p_m = std::sqrt(report.p_m * (1.0 - report.p_m) / dn);
    report.p_d = static_cast<double>(n_stalled) / dn;
    report.se_p_d = std::sqrt(report.p_d * (1.0 - report.p_d) / dn);

    report.T_w = sum_dl / dn;
    report.T_d = sum_st / dn;
    if (n > 1) {
      const double var_dl = std::max(0.0, (sum_dl2 - dn * report.T_w * report.T_w) / (dn - 1.0));
      const double var_st = std::max(0.0, (sum_st2 - dn * report.T_d * report.T_d) / (dn - 1.0));
      report.se_T_w = std::sqrt(var_dl / dn);
      report.se_T_d = std::sqrt(var_st / dn);
    }
  }
};

}  // namespace

MetricsReport run_simulation(const FileCatalog& catalog, PolicyKind policy,
                             std::uint64_t capacity, const RequestTrace& trace,
                             const ServiceConfig& service, const SimOptions& options,
                             std::vector<RequestRecord>* records) {
  catalog.validate();
  service.validate();
  if (capacity >= catalog.total_chunks())
    throw std::invalid_argument("simulation: capacity must be below total chunks");

  ChunkCache cache(capacity, catalog.chunks, options.eviction);
  const double mu = service.service_rate_chunks_per_s();
  FifoQueue queue(mu);
  ServiceSampler sampler(options.service_seed, mu);
  MetricAccumulator acc(options.stall_threshold);
  if (records) {
    records->clear();
    records->reserve(trace.n_requests());
  }

  const bool auto_warmup = options.warmup_requests < 0;
  bool warmed = false;
  std::size_t warmup_used = auto_warmup ? trace.n_requests()
                                        : static_cast<std::size_t>(options.warmup_requests);

  std::vector<double> draws, completions, offsets;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const RequestEvent& ev = trace.events[i];
    const std::uint32_t s = catalog.chunks[ev.file];
    const bool counted = auto_warmup ? warmed : i >= warmup_used;

    const RequestOutcome outcome = cache.request(ev.file, policy);
    const std::uint32_t prev = outcome.chunks_hit;

    draws.clear();
    for (std::uint32_t j = prev; j < s; ++j) draws.push_back(sampler.draw(i, j));
    queue.enqueue(ev.time, draws, completions);

    const double dl = completions.empty() ? 0.0 : completions.back() - ev.time;
    offsets.assign(prev, 0.0);
    for (double c : completions) offsets.push_back(c - ev.time);
    const double stall =
        stall_duration(std::span<const double>(offsets), service.startup_delay_s,
                       service.chunk_len_s);

    if (counted) acc.add(s, prev, dl, stall);
    if (records) records->push_back({ev.time, ev.file, s, prev, dl, stall});

    if (auto_warmup && !warmed && cache.cumulative_insertions() >= capacity) {
      warmed = true;
      warmup_used = i + 1;
    }
  }

  MetricsReport report;
  report.n_requests = trace.n_requests();
  report.warmup_requests = std::min(warmup_used, trace.n_requests());
  report.trace_hash = trace_hash(trace);
  report.capacity = capacity;
  report.final_occupancy = cache.occupancy();
  acc.fill(report);
  return report;
}

MetricsReport metrics_from_records(std::span<const RequestRecord> records,
                                   std::size_t warmup_requests, double stall_threshold) {
  MetricAccumulator acc(stall_threshold);
  for (std::size_t i = warmup_requests; i < records.size(); ++i) {
    const RequestRecord& r = records[i];
    acc.add(r.total_chunks, r.chunks_hit, r.download_time, r.stall);
  }
  MetricsReport report;
  report.n_requests = records.size();
  report.warmup_requests = std::min(warmup_requests, records.size());
  acc.fill(report);
  return report;
}

ComparisonOutcome run_comparison(const FileCatalog& catalog, std::uint64_t capacity,
                                 const RequestTrace& trace, const ServiceConfig& service,
                                 const SimOptions& options, bool keep_records) {
  ComparisonOutcome out;
  const MetricsReport lru_raw =
      run_simulation(catalog, PolicyKind::LRU, capacity, trace, service, options,
                     &out.lru_records);
  const MetricsReport glru_raw =
      run_simulation(catalog, PolicyKind::GLRU, capacity, trace, service, options,
                     &out.glru_records);

  out.warmup_requests = std::max(lru_raw.warmup_requests, glru_raw.warmup_requests);
  out.lru = metrics_from_records(out.lru_records, out.warmup_requests,
                                 options.stall_threshold);
  out.glru = metrics_from_records(out.glru_records, out.warmup_requests,
                                  options.stall_threshold);
  out.lru.trace_hash = out.glru.trace_hash = lru_raw.trace_hash;
  out.lru.capacity = out.glru.capacity = capacity;
  out.lru.final_occupancy = lru_raw.final_occupancy;
  out.glru.final_occupancy = glru_raw.final_occupancy;
  if (!keep_records) {
    out.lru_records.clear();
    out.lru_records.shrink_to_fit();
    out.glru_records.clear();
    out.glru_records.shrink_to_fit();
  }
  return out;
}

ValidationResult validate_approximation(const FileCatalog& catalog, std::uint64_t capacity,
                                        const RequestTrace& trace,
                                        std::span<const std::uint32_t> ranks, double tol) {
  catalog.validate();
  for (std::size_t i = 1; i < catalog.chunks.size(); ++i) {
    if (catalog.chunks[i] != catalog.chunks[0])
      throw std::invalid_argument("validation: catalog must have constant chunk counts");
  }
  ValidationResult result;
  result.model = solve_tc_glru(catalog, capacity, tol);

  std::vector<std::size_t> slot(catalog.n_files(), SIZE_MAX);
  std::vector<std::vector<std::uint64_t>> hist(ranks.size());
  for (std::size_t r = 0; r < ranks.size(); ++r) {
    if (ranks[r] < 1 || ranks[r] > catalog.n_files())
      throw std::out_of_range("validation: rank outside catalog");
    slot[ranks[r] - 1] = r;
    hist[r].assign(catalog.chunks[ranks[r] - 1] + 1, 0);
  }

  ChunkCache cache(capacity, catalog.chunks);
  bool warmed = false;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const FileId file = trace.events[i].file;
    const RequestOutcome outcome = cache.request(file, PolicyKind::GLRU);
    if (warmed && slot[file] != SIZE_MAX) ++hist[slot[file]][outcome.chunks_hit];
    if (!warmed && cache.cumulative_insertions() >= capacity) {
      warmed = true;
      result.warmup_requests = i + 1;
    }
  }

  result.rows.resize(ranks.size());
  for (std::size_t r = 0; r < ranks.size(); ++r) {
    ValidationRow& row = result.rows[r];
    row.rank = ranks[r];
    const FileId file = ranks[r] - 1;
    std::uint64_t samples = 0;
    for (auto c : hist[r]) samples += c;
    row.n_samples = samples;
    row.empirical.resize(hist[r].size(), 0.0);
    if (samples > 0) {
      for (std::size_t j = 0; j < hist[r].size(); ++j) {
        row.empirical[j] = static_cast<double>(hist[r][j]) / static_cast<double>(samples);
      }
    }
    row.analytic = chunk_distribution(result.model, file).probs;
    double l1 = 0.0;
    for (std::size_t j = 0; j < row.empirical.size(); ++j) {
      l1 += std::abs(row.empirical[j] - row.analytic[j]);
    }
    row.l1 = l1;
  }
  return result;
}

std::vector<std::vector<double>> simulate_chunk_frequencies(const FileCatalog& catalog,
                                                            std::uint64_t capacity,
                                                            PolicyKind policy,
                                                            const RequestTrace& trace) {
  catalog.validate();
  ChunkCache cache(capacity, catalog.chunks);
  std::vector<std::vector<std::uint64_t>> counts(catalog.n_files());
  for (std::size_t f = 0; f < counts.size(); ++f) counts[f].assign(catalog.chunks[f] + 1, 0);

  for (const RequestEvent& ev : trace.events) {
    cache.request(ev.file, policy);
    for (FileId f = 0; f < counts.size(); ++f) ++counts[f][cache.lookup(f)];
  }

  std::vector<std::vector<double>> freq(counts.size());
  const double dn = static_cast<double>(trace.n_requests());
  for (std::size_t f = 0; f < counts.size(); ++f) {
    freq[f].resize(counts[f].size());
    for (std::size_t j = 0; j < counts[f].size(); ++j) {
      freq[f][j] = static_cast<double>(counts[f][j]) / dn;
    }
  }
  return freq;
}

}  // namespace glrusim
