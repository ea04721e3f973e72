#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "glrusim/analytic.hpp"
#include "glrusim/cache.hpp"
#include "glrusim/catalog.hpp"
#include "glrusim/csv.hpp"
#include "glrusim/delivery.hpp"
#include "glrusim/oracle.hpp"
#include "glrusim/simulation.hpp"
#include "glrusim/sweep.hpp"
#include "glrusim/workload.hpp"

namespace py = pybind11;
using namespace glrusim;

PYBIND11_MODULE(_glrusim, m) {
  m.doc() = "Chunk-granular LRU/gLRU cache simulator and characteristic-time toolkit";

  py::enum_<PolicyKind>(m, "PolicyKind")
      .value("LRU", PolicyKind::LRU)
      .value("GLRU", PolicyKind::GLRU);
  py::enum_<CorrelationMode>(m, "CorrelationMode")
      .value("INDEPENDENT", CorrelationMode::Independent)
      .value("POSITIVE", CorrelationMode::Positive)
      .value("NEGATIVE", CorrelationMode::Negative);
  py::enum_<EvictionMode>(m, "EvictionMode")
      .value("CHUNK_WISE", EvictionMode::ChunkWise)
      .value("WHOLE_FILE", EvictionMode::WholeFile);

  py::class_<FileCatalog>(m, "FileCatalog")
      .def(py::init<>())
      .def_readwrite("popularity", &FileCatalog::popularity)
      .def_readwrite("chunks", &FileCatalog::chunks)
      .def_readwrite("video_length_s", &FileCatalog::video_length_s)
      .def_readwrite("chunk_len_s", &FileCatalog::chunk_len_s)
      .def("n_files", &FileCatalog::n_files)
      .def("total_chunks", &FileCatalog::total_chunks)
      .def("total_popularity", &FileCatalog::total_popularity)
      .def("mean_chunks_per_request", &FileCatalog::mean_chunks_per_request)
      .def("validate", &FileCatalog::validate);

  py::class_<ParetoSpec>(m, "ParetoSpec")
      .def(py::init<>())
      .def(py::init([](double shape, double scale, double cap) {
             return ParetoSpec{shape, scale, cap};
           }),
           py::arg("shape"), py::arg("scale"), py::arg("cap"))
      .def_readwrite("shape", &ParetoSpec::shape)
      .def_readwrite("scale", &ParetoSpec::scale)
      .def_readwrite("cap", &ParetoSpec::cap);

  m.def("make_zipf_popularity", &make_zipf_popularity, py::arg("n_files"),
        py::arg("alpha"));
  m.def("make_censored_pareto_lengths", &make_censored_pareto_lengths,
        py::arg("n_files"), py::arg("shape"), py::arg("scale"), py::arg("cap"),
        py::arg("rng_seed"));
  m.def("chunkize", &chunkize, py::arg("lengths_s"), py::arg("chunk_len_s"));
  m.def("couple_popularity_size", &couple_popularity_size, py::arg("catalog"),
        py::arg("mode"));
  m.def("make_uniform_catalog", &make_uniform_catalog, py::arg("n_files"),
        py::arg("alpha"), py::arg("chunks_per_file"));
  m.def("make_vod_catalog", &make_vod_catalog, py::arg("n_files"), py::arg("alpha"),
        py::arg("pareto"), py::arg("chunk_len_s"), py::arg("rng_seed"),
        py::arg("mode") = CorrelationMode::Independent);

  py::class_<ChunkCache::Entry>(m, "CacheEntry")
      .def_readonly("file", &ChunkCache::Entry::file)
      .def_readonly("cached", &ChunkCache::Entry::cached)
      .def("__repr__", [](const ChunkCache::Entry& e) {
        return "CacheEntry(file=" + std::to_string(e.file) +
               ", cached=" + std::to_string(e.cached) + ")";
      });

  py::class_<RequestOutcome>(m, "RequestOutcome")
      .def_readonly("chunks_hit", &RequestOutcome::chunks_hit)
      .def_readonly("evicted", &RequestOutcome::evicted);

  py::class_<ChunkCache>(m, "ChunkCache")
      .def(py::init<std::uint64_t, std::vector<std::uint32_t>, EvictionMode>(),
           py::arg("capacity_chunks"), py::arg("file_chunks"),
           py::arg("eviction") = EvictionMode::ChunkWise)
      .def_static("from_entries",
                  [](std::uint64_t capacity, std::vector<std::uint32_t> chunks,
                     const std::vector<std::pair<FileId, std::uint32_t>>& entries,
                     EvictionMode eviction) {
                    std::vector<ChunkCache::Entry> converted;
                    converted.reserve(entries.size());
                    for (const auto& [file, cached] : entries) {
                      converted.push_back({file, cached});
                    }
                    return ChunkCache::from_entries(capacity, std::move(chunks),
                                                    converted, eviction);
                  },
                  py::arg("capacity_chunks"), py::arg("file_chunks"),
                  py::arg("entries"), py::arg("eviction") = EvictionMode::ChunkWise)
      .def("lookup", &ChunkCache::lookup, py::arg("file"))
      .def("request", &ChunkCache::request, py::arg("file"), py::arg("policy"))
      .def("snapshot_counts", &ChunkCache::snapshot_counts)
      .def("capacity", &ChunkCache::capacity)
      .def("occupancy", &ChunkCache::occupancy)
      .def("cumulative_insertions", &ChunkCache::cumulative_insertions)
      .def("check_invariants", &ChunkCache::check_invariants);

  py::class_<ApproxModel>(m, "ApproxModel")
      .def_readonly("policy", &ApproxModel::policy)
      .def_readonly("t_c", &ApproxModel::t_c)
      .def_readonly("residual", &ApproxModel::residual)
      .def_readonly("capacity", &ApproxModel::capacity)
      .def_readonly("q", &ApproxModel::q)
      .def_readonly("s", &ApproxModel::s);

  py::class_<ChunkDistribution>(m, "ChunkDistribution")
      .def_readonly("file", &ChunkDistribution::file)
      .def_readonly("probs", &ChunkDistribution::probs);

  py::class_<Fig1Row>(m, "Fig1Row")
      .def_readonly("lru_any", &Fig1Row::lru_any)
      .def_readonly("glru_any", &Fig1Row::glru_any)
      .def_readonly("glru_full", &Fig1Row::glru_full);

  m.def("solve_tc_lru", &solve_tc_lru, py::arg("catalog"), py::arg("capacity"),
        py::arg("tol") = 1e-9);
  m.def("solve_tc_glru", &solve_tc_glru, py::arg("catalog"), py::arg("capacity"),
        py::arg("tol") = 1e-9);
  m.def("hit_at_least_j", &hit_at_least_j, py::arg("model"), py::arg("file"),
        py::arg("j"));
  m.def("lru_hit_probability", &lru_hit_probability, py::arg("model"), py::arg("file"));
  m.def("expected_cached_chunks", &expected_cached_chunks, py::arg("model"),
        py::arg("file"));
  m.def("chunk_distribution", &chunk_distribution, py::arg("model"), py::arg("file"));
  m.def("figure1_curves", &figure1_curves, py::arg("catalog"), py::arg("capacity"),
        py::arg("tol") = 1e-9);

  py::class_<RequestEvent>(m, "RequestEvent")
      .def_readonly("time", &RequestEvent::time)
      .def_readonly("file", &RequestEvent::file);

  py::class_<RequestTrace>(m, "RequestTrace")
      .def(py::init<>())
      .def_readwrite("events", &RequestTrace::events)
      .def_readwrite("total_rate", &RequestTrace::total_rate)
      .def("n_requests", &RequestTrace::n_requests);

  m.def("generate_trace", &generate_trace, py::arg("catalog"), py::arg("total_rate"),
        py::arg("n_requests"), py::arg("rng_seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("rate_for_intensity", &rate_for_intensity, py::arg("catalog"), py::arg("rho"),
        py::arg("service_rate_chunks_per_s"));
  m.def("trace_hash", &trace_hash, py::arg("trace"));

  py::class_<ServiceConfig>(m, "ServiceConfig")
      .def(py::init<>())
      .def_readwrite("chunk_len_s", &ServiceConfig::chunk_len_s)
      .def_readwrite("processing_rate_MBps", &ServiceConfig::processing_rate_MBps)
      .def_readwrite("video_MB_per_s", &ServiceConfig::video_MB_per_s)
      .def_readwrite("startup_delay_s", &ServiceConfig::startup_delay_s)
      .def("service_rate_chunks_per_s", &ServiceConfig::service_rate_chunks_per_s)
      .def("validate", &ServiceConfig::validate);

  py::class_<FifoQueue>(m, "FifoQueue")
      .def(py::init<double>(), py::arg("service_rate_chunks_per_s"))
      .def("enqueue",
           [](FifoQueue& queue, double request_time,
              const std::vector<double>& service_draws) {
             std::vector<double> completions;
             queue.enqueue(request_time, service_draws, completions);
             return completions;
           },
           py::arg("request_time"), py::arg("service_draws"))
      .def("server_free_time", &FifoQueue::server_free_time);

  py::class_<ServiceSampler>(m, "ServiceSampler")
      .def(py::init<std::uint64_t, double>(), py::arg("seed"),
           py::arg("service_rate_chunks_per_s"))
      .def("draw", &ServiceSampler::draw, py::arg("request_index"),
           py::arg("chunk_index"));

  py::class_<DownloadTimeline>(m, "DownloadTimeline")
      .def(py::init<>())
      .def_readwrite("request_time", &DownloadTimeline::request_time)
      .def_readwrite("ready", &DownloadTimeline::ready)
      .def_readwrite("cached_prefix", &DownloadTimeline::cached_prefix)
      .def("from_cache", &DownloadTimeline::from_cache, py::arg("chunk"));

  m.def("download_time", &download_time, py::arg("timeline"));
  m.def("stall_duration",
        [](const std::vector<double>& ready_offsets, double startup_delay_s,
           double chunk_len_s) {
          return stall_duration(std::span<const double>(ready_offsets),
                                startup_delay_s, chunk_len_s);
        },
        py::arg("ready_offsets"), py::arg("startup_delay_s"), py::arg("chunk_len_s"));
  m.def("stall_duration_timeline",
        py::overload_cast<const DownloadTimeline&, double, double>(&stall_duration),
        py::arg("timeline"), py::arg("startup_delay_s"), py::arg("chunk_len_s"));

  py::class_<SimOptions>(m, "SimOptions")
      .def(py::init<>())
      .def_readwrite("warmup_requests", &SimOptions::warmup_requests)
      .def_readwrite("service_seed", &SimOptions::service_seed)
      .def_readwrite("stall_threshold", &SimOptions::stall_threshold)
      .def_readwrite("eviction", &SimOptions::eviction);

  py::class_<RequestRecord>(m, "RequestRecord")
      .def_readonly("time", &RequestRecord::time)
      .def_readonly("file", &RequestRecord::file)
      .def_readonly("total_chunks", &RequestRecord::total_chunks)
      .def_readonly("chunks_hit", &RequestRecord::chunks_hit)
      .def_readonly("download_time", &RequestRecord::download_time)
      .def_readonly("stall", &RequestRecord::stall);

  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("p_c", &MetricsReport::p_c)
      .def_readonly("p_m", &MetricsReport::p_m)
      .def_readonly("T_w", &MetricsReport::T_w)
      .def_readonly("T_d", &MetricsReport::T_d)
      .def_readonly("p_d", &MetricsReport::p_d)
      .def_readonly("se_p_c", &MetricsReport::se_p_c)
      .def_readonly("se_p_m", &MetricsReport::se_p_m)
      .def_readonly("se_T_w", &MetricsReport::se_T_w)
      .def_readonly("se_T_d", &MetricsReport::se_T_d)
      .def_readonly("se_p_d", &MetricsReport::se_p_d)
      .def_readonly("n_requests", &MetricsReport::n_requests)
      .def_readonly("n_counted", &MetricsReport::n_counted)
      .def_readonly("warmup_requests", &MetricsReport::warmup_requests)
      .def_readonly("trace_hash", &MetricsReport::trace_hash)
      .def_readonly("capacity", &MetricsReport::capacity)
      .def_readonly("final_occupancy", &MetricsReport::final_occupancy);

  m.def("run_simulation",
        [](const FileCatalog& catalog, PolicyKind policy, std::uint64_t capacity,
           const RequestTrace& trace, const ServiceConfig& service,
           const SimOptions& options, bool keep_records) {
          std::vector<RequestRecord> records;
          MetricsReport report;
          {
            py::gil_scoped_release release;
            report = run_simulation(catalog, policy, capacity, trace, service, options,
                                    keep_records ? &records : nullptr);
          }
          return py::make_tuple(report, keep_records ? py::cast(records) : py::none());
        },
        py::arg("catalog"), py::arg("policy"), py::arg("capacity"), py::arg("trace"),
        py::arg("service"), py::arg("options") = SimOptions{},
        py::arg("keep_records") = false);
  m.def("metrics_from_records",
        [](const std::vector<RequestRecord>& records, std::size_t warmup,
           double stall_threshold) {
          return metrics_from_records(records, warmup, stall_threshold);
        },
        py::arg("records"), py::arg("warmup_requests"),
        py::arg("stall_threshold") = 1e-12);

  py::class_<ComparisonOutcome>(m, "ComparisonOutcome")
      .def_readonly("lru", &ComparisonOutcome::lru)
      .def_readonly("glru", &ComparisonOutcome::glru)
      .def_readonly("warmup_requests", &ComparisonOutcome::warmup_requests)
      .def_readonly("lru_records", &ComparisonOutcome::lru_records)
      .def_readonly("glru_records", &ComparisonOutcome::glru_records);

  m.def("run_comparison", &run_comparison, py::arg("catalog"), py::arg("capacity"),
        py::arg("trace"), py::arg("service"), py::arg("options") = SimOptions{},
        py::arg("keep_records") = false, py::call_guard<py::gil_scoped_release>());

  py::class_<ValidationRow>(m, "ValidationRow")
      .def_readonly("rank", &ValidationRow::rank)
      .def_readonly("n_samples", &ValidationRow::n_samples)
      .def_readonly("l1", &ValidationRow::l1)
      .def_readonly("empirical", &ValidationRow::empirical)
      .def_readonly("analytic", &ValidationRow::analytic);

  py::class_<ValidationResult>(m, "ValidationResult")
      .def_readonly("model", &ValidationResult::model)
      .def_readonly("rows", &ValidationResult::rows)
      .def_readonly("warmup_requests", &ValidationResult::warmup_requests);

  m.def("validate_approximation",
        [](const FileCatalog& catalog, std::uint64_t capacity,
           const RequestTrace& trace, const std::vector<std::uint32_t>& ranks,
           double tol) {
          py::gil_scoped_release release;
          return validate_approximation(catalog, capacity, trace, ranks, tol);
        },
        py::arg("catalog"), py::arg("capacity"), py::arg("trace"), py::arg("ranks"),
        py::arg("tol") = 1e-9);
  m.def("simulate_chunk_frequencies", &simulate_chunk_frequencies, py::arg("catalog"),
        py::arg("capacity"), py::arg("policy"), py::arg("trace"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<StationaryDistribution>(m, "StationaryDistribution")
      .def_readonly("policy", &StationaryDistribution::policy)
      .def_readonly("n_states", &StationaryDistribution::n_states)
      .def_readonly("iterations", &StationaryDistribution::iterations)
      .def_readonly("per_file", &StationaryDistribution::per_file);

  m.def("brute_force_oracle", &brute_force_oracle, py::arg("catalog"),
        py::arg("capacity"), py::arg("policy"), py::arg("max_states") = 100000,
        py::arg("tol") = 1e-12, py::call_guard<py::gil_scoped_release>());

  py::class_<SweepPoint>(m, "SweepPoint")
      .def(py::init<>())
      .def_readwrite("alpha", &SweepPoint::alpha)
      .def_readwrite("cp", &SweepPoint::cp)
      .def_readwrite("startup_delay_s", &SweepPoint::startup_delay_s)
      .def_readwrite("chunk_len_s", &SweepPoint::chunk_len_s)
      .def_readwrite("rho", &SweepPoint::rho)
      .def_readwrite("rate_MBps", &SweepPoint::rate_MBps);

  py::class_<SweepParams>(m, "SweepParams")
      .def(py::init<>())
      .def_readwrite("n_files", &SweepParams::n_files)
      .def_readwrite("n_requests", &SweepParams::n_requests)
      .def_readwrite("pareto", &SweepParams::pareto)
      .def_readwrite("correlation", &SweepParams::correlation)
      .def_readwrite("seed", &SweepParams::seed)
      .def_readwrite("resample_lengths", &SweepParams::resample_lengths)
      .def_readwrite("fixed_lengths", &SweepParams::fixed_lengths)
      .def_readwrite("jobs", &SweepParams::jobs)
      .def_readwrite("stall_threshold", &SweepParams::stall_threshold);

  py::class_<ConfigResult>(m, "ConfigResult")
      .def_readonly("config_index", &ConfigResult::config_index)
      .def_readonly("point", &ConfigResult::point)
      .def_readonly("capacity", &ConfigResult::capacity)
      .def_readonly("total_chunks", &ConfigResult::total_chunks)
      .def_readonly("lru", &ConfigResult::lru)
      .def_readonly("glru", &ConfigResult::glru);

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_readonly("metric", &ComparisonRow::metric)
      .def_readonly("lru", &ComparisonRow::lru)
      .def_readonly("glru", &ComparisonRow::glru)
      .def_readonly("relative", &ComparisonRow::relative)
      .def_readonly("gross", &ComparisonRow::gross);

  py::class_<MetricSummary>(m, "MetricSummary")
      .def_readonly("metric", &MetricSummary::metric)
      .def_readonly("worst_relative", &MetricSummary::worst_relative)
      .def_readonly("worst_gross", &MetricSummary::worst_gross)
      .def_readonly("best_relative", &MetricSummary::best_relative)
      .def_readonly("best_gross", &MetricSummary::best_gross)
      .def_readonly("mean_relative", &MetricSummary::mean_relative)
      .def_readonly("mean_gross", &MetricSummary::mean_gross);

  py::class_<CorrelationStudy>(m, "CorrelationStudy")
      .def_readonly("positive", &CorrelationStudy::positive)
      .def_readonly("negative", &CorrelationStudy::negative);

  py::class_<CorrelationContrastRow>(m, "CorrelationContrastRow")
      .def_readonly("metric", &CorrelationContrastRow::metric)
      .def_readonly("glru", &CorrelationContrastRow::glru)
      .def_readonly("lru", &CorrelationContrastRow::lru);

  py::class_<CorrelationImprovementRow>(m, "CorrelationImprovementRow")
      .def_readonly("metric", &CorrelationImprovementRow::metric)
      .def_readonly("positive", &CorrelationImprovementRow::positive)
      .def_readonly("negative", &CorrelationImprovementRow::negative);

  m.def("full_grid", &full_grid);
  m.def("desk_grid", &desk_grid);
  m.def("run_sweep", &run_sweep, py::arg("grid"), py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def("compare", &compare, py::arg("lru"), py::arg("glru"));
  m.def("summarize", &summarize, py::arg("results"));
  m.def("correlation_study", &correlation_study, py::arg("grid"), py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def("positive_vs_negative", &positive_vs_negative, py::arg("study"));
  m.def("improvement_by_correlation", &improvement_by_correlation, py::arg("study"));
  m.def("relative_difference", &relative_difference, py::arg("lru"), py::arg("glru"));

  m.def("save_catalog_csv", &save_catalog_csv, py::arg("catalog"), py::arg("path"));
  m.def("load_catalog_csv", &load_catalog_csv, py::arg("path"));
  m.def("save_trace_csv", &save_trace_csv, py::arg("trace"), py::arg("path"));
  m.def("load_trace_csv", &load_trace_csv, py::arg("path"),
        py::arg("total_rate") = 0.0);
}
