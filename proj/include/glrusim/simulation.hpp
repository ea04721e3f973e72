#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "glrusim/analytic.hpp"
#include "glrusim/cache.hpp"
#include "glrusim/catalog.hpp"
#include "glrusim/delivery.hpp"
#include "glrusim/workload.hpp"

namespace glrusim {

struct SimOptions {
  // Requests excluded from metrics. -1 excludes the cache-fill prefix
  // (cumulative insertions reaching capacity).
  std::int64_t warmup_requests = -1;
  std::uint64_t service_seed = 0x5eed;
  // A stall counts toward p_d when it exceeds this many seconds.
  double stall_threshold = 1e-12;
  // Whole-file tail eviction is available for sensitivity checks.
  EvictionMode eviction = EvictionMode::ChunkWise;
};

struct RequestRecord {
  double time = 0.0;
  FileId file = 0;
  std::uint32_t total_chunks = 0;
  std::uint32_t chunks_hit = 0;
  double download_time = 0.0;
  double stall = 0.0;
};

// The five VoD metrics plus their standard errors and run bookkeeping.
// p_c: share of requested chunks served from cache; p_m: share of requests
// finding nothing; T_w: mean download time; T_d: mean stall; p_d: share of
// requests with a nonzero stall.
struct MetricsReport {
  double p_c = 0.0, p_m = 0.0, T_w = 0.0, T_d = 0.0, p_d = 0.0;
  double se_p_c = 0.0, se_p_m = 0.0, se_T_w = 0.0, se_T_d = 0.0, se_p_d = 0.0;
  std::size_t n_requests = 0;
  std::size_t n_counted = 0;
  std::size_t warmup_requests = 0;
  std::uint64_t trace_hash = 0;
  std::uint64_t capacity = 0;
  std::uint64_t final_occupancy = 0;
};

// Drives cache + FIFO delivery over the trace. When `records` is non-null it
// receives one entry per request including the warm-up prefix; the report's
// warmup_requests says how many of those its own metrics excluded.
MetricsReport run_simulation(const FileCatalog& catalog, PolicyKind policy,
                             std::uint64_t capacity, const RequestTrace& trace,
                             const ServiceConfig& service, const SimOptions& options,
                             std::vector<RequestRecord>* records = nullptr);

// Metrics over records[warmup..]; shares the accumulation path used by
// run_simulation so recomputed values match reports exactly.
MetricsReport metrics_from_records(std::span<const RequestRecord> records,
                                   std::size_t warmup_requests, double stall_threshold);

// Both policies over one trace with identical per-(request, chunk) service
// draws. Metrics for the pair are aligned to a common warm-up window (the
// later of the two cache-fill points) so the comparison sees the same
// requests.
struct ComparisonOutcome {
  MetricsReport lru;
  MetricsReport glru;
  std::size_t warmup_requests = 0;
  std::vector<RequestRecord> lru_records;
  std::vector<RequestRecord> glru_records;
};

ComparisonOutcome run_comparison(const FileCatalog& catalog, std::uint64_t capacity,
                                 const RequestTrace& trace, const ServiceConfig& service,
                                 const SimOptions& options, bool keep_records = false);

// Empirical vs. analytic chunk-count distributions under gLRU for chosen
// popularity ranks. The empirical distribution counts the cached chunks of
// the requested file at its own post-warm-up request instants.
struct ValidationRow {
  std::uint32_t rank = 0;  // 1-based popularity rank
  std::size_t n_samples = 0;
  double l1 = 0.0;
  std::vector<double> empirical;  // index j = exactly j chunks cached
  std::vector<double> analytic;
};

struct ValidationResult {
  ApproxModel model;
  std::vector<ValidationRow> rows;
  std::size_t warmup_requests = 0;
};

ValidationResult validate_approximation(const FileCatalog& catalog, std::uint64_t capacity,
                                        const RequestTrace& trace,
                                        std::span<const std::uint32_t> ranks,
                                        double tol = 1e-9);

// Per-file chunk-count frequencies sampled after every request, cache only.
// O(n_files) per request; intended for the tiny oracle cross-checks.
std::vector<std::vector<double>> simulate_chunk_frequencies(const FileCatalog& catalog,
                                                            std::uint64_t capacity,
                                                            PolicyKind policy,
                                                            const RequestTrace& trace);

}  // namespace glrusim
