// glrusim command line tool.
//
// Commands: validate | sweep | correlate | oracle | fig1. Flags override
// --config file values, which override per-command defaults. The resolved
// configuration is echoed into the output directory so every run can be
// reproduced exactly.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glrusim/analytic.hpp"
#include "glrusim/csv.hpp"
#include "glrusim/oracle.hpp"
#include "glrusim/rng.hpp"
#include "glrusim/simulation.hpp"
#include "glrusim/sweep.hpp"

namespace fs = std::filesystem;
using namespace glrusim;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::size_t n_files = 0;
  std::size_t n_requests = 1000000;
  std::uint64_t seed = 1;
  std::string out;
  std::string grid = "full";
  unsigned jobs = 1;
  bool resample_lengths = false;
  bool export_trace = false;
  bool export_records = false;
  std::string catalog_file;
  std::string trace_file;
  std::string policy = "both";
  std::string correlation = "independent";
  std::vector<std::uint32_t> ranks;
  std::uint32_t max_j = 0;
  // Optional scalars: set means given by flag/config (or filled by a
  // per-command default during resolve). For sweep/correlate an unset value
  // keeps the whole grid axis.
  std::optional<double> alpha, cp, chunk_len, startup_delay, rho, rate;
  std::optional<std::uint64_t> capacity;
  std::optional<std::uint32_t> chunks;
  std::optional<std::vector<double>> pareto;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

constexpr const char* kCommands[] = {"validate", "sweep", "correlate", "oracle", "fig1"};

void build_app(CLI::App& app, RunConfig& cfg) {
  app.add_option("command", cfg.command, "validate | sweep | correlate | oracle | fig1")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kCommands),
                                                     std::end(kCommands))));
  app.set_config("--config", "", "flat key=value configuration file");
  app.allow_config_extras(false);  // unknown keys are configuration errors

  app.add_option("--n-files", cfg.n_files, "catalog size N")
      ->check(CLI::PositiveNumber);
  app.add_option("--alpha", cfg.alpha, "Zipf exponent");
  app.add_option("--capacity", cfg.capacity, "cache capacity in chunks");
  app.add_option("--cp", cfg.cp, "capacity as a fraction of total chunks, in (0,1)");
  app.add_option("--chunks", cfg.chunks, "constant chunks per file");
  app.add_option("--pareto", cfg.pareto,
                 "video length distribution: shape,scale,cap seconds")
      ->delimiter(',')
      ->expected(1, 3);
  app.add_option("--chunk-len", cfg.chunk_len, "chunk length L in seconds");
  app.add_option("--startup-delay", cfg.startup_delay, "playback startup delay d_s");
  app.add_option("--rho", cfg.rho, "traffic intensity in (0,1)");
  app.add_option("--rate", cfg.rate, "processing rate r in MBps");
  app.add_option("--policy", cfg.policy, "lru | glru | both (oracle command)")
      ->check(CLI::IsMember({"lru", "glru", "both"}));
  app.add_option("--correlation", cfg.correlation,
                 "popularity-size coupling: independent | positive | negative")
      ->check(CLI::IsMember({"independent", "positive", "negative"}));
  app.add_option("--requests", cfg.n_requests, "requests per simulation")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "master RNG seed");
  app.add_option("--out", cfg.out, "output directory (default out/<command>)");
  app.add_option("--grid", cfg.grid, "sweep grid: full (384 configs) | desk (16)")
      ->check(CLI::IsMember({"full", "desk"}));
  app.add_option("--jobs", cfg.jobs, "worker threads for sweeps");
  app.add_option("--ranks", cfg.ranks, "validation ranks (1-based)")->delimiter(',');
  app.add_option("--max-j", cfg.max_j, "h_j columns in model.csv (0 = all)");
  app.add_option("--catalog", cfg.catalog_file, "load the file population from CSV");
  app.add_option("--trace", cfg.trace_file, "replay a request trace from CSV");
  app.add_flag("--resample-lengths", cfg.resample_lengths,
               "draw fresh video lengths per sweep configuration");
  app.add_flag("--export-trace", cfg.export_trace, "write generated traces to CSV");
  app.add_flag("--export-records", cfg.export_records,
               "write per-request records per configuration");
}

PolicyKind parse_policy(const std::string& name) {
  return name == "lru" ? PolicyKind::LRU : PolicyKind::GLRU;
}

CorrelationMode parse_correlation(const std::string& name) {
  if (name == "positive") return CorrelationMode::Positive;
  if (name == "negative") return CorrelationMode::Negative;
  return CorrelationMode::Independent;
}

// Fills per-command defaults and enforces the cross-field rules.
void resolve(RunConfig& cfg) {
  const bool is_sweep = cfg.command == "sweep" || cfg.command == "correlate";

  if (cfg.capacity && cfg.cp) throw ConfigError("set only one of --capacity and --cp");
  if (cfg.chunks && cfg.pareto) throw ConfigError("set only one of --chunks and --pareto");
  if (cfg.cp && !(*cfg.cp > 0.0 && *cfg.cp < 1.0))
    throw ConfigError("--cp must lie in (0,1)");
  if (cfg.capacity && *cfg.capacity == 0) throw ConfigError("--capacity must be >= 1");
  if (cfg.rho && !(*cfg.rho > 0.0 && *cfg.rho < 1.0))
    throw ConfigError("--rho must lie in (0,1)");
  if (cfg.pareto) {
    if (cfg.pareto->size() != 3) throw ConfigError("--pareto needs shape,scale,cap");
    if (!((*cfg.pareto)[0] > 1.0) || !((*cfg.pareto)[1] > 0.0) ||
        !((*cfg.pareto)[2] > (*cfg.pareto)[1]))
      throw ConfigError("--pareto needs shape > 1, scale > 0, cap > scale");
  }
  if (cfg.command == "validate" && cfg.pareto)
    throw ConfigError("validate needs constant chunk counts; drop --pareto");
  if (cfg.command == "validate" && cfg.policy == "lru")
    throw ConfigError(
        "validate models the gLRU chunk distribution; --policy lru is not available");

  if (cfg.out.empty()) cfg.out = "out/" + cfg.command;

  if (cfg.n_files == 0) {
    cfg.n_files = cfg.command == "oracle" ? 3 : cfg.command == "fig1" ? 10000 : 1000;
  }

  if (is_sweep) {
    if (cfg.capacity)
      throw ConfigError("sweeps size the cache per configuration; use --cp");
    if (cfg.chunks)
      throw ConfigError("sweeps draw Pareto video lengths; --chunks is not available");
    if (!cfg.pareto) cfg.pareto = std::vector<double>{2.0, 300.0, 3600.0};
  } else {
    // Single-configuration commands pin every axis.
    if (!cfg.alpha) cfg.alpha = 0.8;
    if (!cfg.chunk_len) cfg.chunk_len = 2.0;
    if (!cfg.startup_delay) cfg.startup_delay = 3.0;
    if (!cfg.rho) cfg.rho = 0.5;
    if (!cfg.rate) cfg.rate = 10.0;
    if (!cfg.chunks && !cfg.pareto && cfg.catalog_file.empty()) {
      cfg.chunks = cfg.command == "oracle" ? 2u : cfg.command == "fig1" ? 5u : 10u;
    }
    if (!cfg.capacity && !cfg.cp) {
      if (cfg.command == "oracle") cfg.capacity = 3;
      else if (cfg.command == "fig1") cfg.capacity = 1000;
      else cfg.cp = 0.1;
    }
  }

  if (cfg.command == "validate" && cfg.ranks.empty()) {
    for (std::uint32_t r : {1u, 10u, 100u, 1000u}) {
      if (r <= cfg.n_files) cfg.ranks.push_back(r);
    }
  }
}

std::string bool_word(bool v) { return v ? "true" : "false"; }

// Writes the fully resolved configuration; the file re-parses through
// --config to an equal RunConfig.
void echo_config(const RunConfig& cfg, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# resolved configuration (command: " << cfg.command << ")\n";
  out << "n-files=" << cfg.n_files << '\n';
  if (cfg.alpha) out << "alpha=" << format_exact(*cfg.alpha) << '\n';
  if (cfg.capacity) out << "capacity=" << *cfg.capacity << '\n';
  if (cfg.cp) out << "cp=" << format_exact(*cfg.cp) << '\n';
  if (cfg.chunks) out << "chunks=" << *cfg.chunks << '\n';
  if (cfg.pareto) {
    out << "pareto=" << format_exact((*cfg.pareto)[0]) << ','
        << format_exact((*cfg.pareto)[1]) << ',' << format_exact((*cfg.pareto)[2])
        << '\n';
  }
  if (cfg.chunk_len) out << "chunk-len=" << format_exact(*cfg.chunk_len) << '\n';
  if (cfg.startup_delay)
    out << "startup-delay=" << format_exact(*cfg.startup_delay) << '\n';
  if (cfg.rho) out << "rho=" << format_exact(*cfg.rho) << '\n';
  if (cfg.rate) out << "rate=" << format_exact(*cfg.rate) << '\n';
  out << "policy=" << cfg.policy << '\n';
  out << "correlation=" << cfg.correlation << '\n';
  out << "requests=" << cfg.n_requests << '\n';
  out << "seed=" << cfg.seed << '\n';
  out << "out=" << cfg.out << '\n';
  out << "grid=" << cfg.grid << '\n';
  out << "jobs=" << cfg.jobs << '\n';
  if (!cfg.ranks.empty()) {
    out << "ranks=";
    for (std::size_t i = 0; i < cfg.ranks.size(); ++i) {
      out << (i ? "," : "") << cfg.ranks[i];
    }
    out << '\n';
  }
  out << "max-j=" << cfg.max_j << '\n';
  if (!cfg.catalog_file.empty()) out << "catalog=" << cfg.catalog_file << '\n';
  if (!cfg.trace_file.empty()) out << "trace=" << cfg.trace_file << '\n';
  out << "resample-lengths=" << bool_word(cfg.resample_lengths) << '\n';
  out << "export-trace=" << bool_word(cfg.export_trace) << '\n';
  out << "export-records=" << bool_word(cfg.export_records) << '\n';
}

// ---------------------------------------------------------------------------
// Single-configuration catalog construction (validate, fig1, oracle).

FileCatalog build_catalog(const RunConfig& cfg) {
  FileCatalog catalog;
  if (!cfg.catalog_file.empty()) {
    catalog = load_catalog_csv(cfg.catalog_file);
    if (!catalog.video_length_s.empty()) {
      catalog.chunk_len_s = *cfg.chunk_len;
      catalog.chunks = chunkize(catalog.video_length_s, *cfg.chunk_len);
    }
  } else if (cfg.chunks) {
    catalog = make_uniform_catalog(cfg.n_files, *cfg.alpha, *cfg.chunks);
  } else {
    const auto& p = *cfg.pareto;
    catalog = make_vod_catalog(cfg.n_files, *cfg.alpha, ParetoSpec{p[0], p[1], p[2]},
                               *cfg.chunk_len, mix_seed(cfg.seed, 0x6c656e73));
  }
  catalog =
      couple_popularity_size(std::move(catalog), parse_correlation(cfg.correlation));
  return catalog;
}

std::uint64_t resolve_capacity(const RunConfig& cfg, const FileCatalog& catalog) {
  if (cfg.capacity) return *cfg.capacity;
  const auto total = static_cast<double>(catalog.total_chunks());
  const auto capacity = static_cast<std::uint64_t>(std::llround(*cfg.cp * total));
  return std::max<std::uint64_t>(1, capacity);
}

RequestTrace build_trace(const RunConfig& cfg, const FileCatalog& catalog,
                         double total_rate) {
  if (!cfg.trace_file.empty()) return load_trace_csv(cfg.trace_file, total_rate);
  return generate_trace(catalog, total_rate, cfg.n_requests,
                        mix_seed(cfg.seed, 0x74726163));
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

// ---------------------------------------------------------------------------
// Commands.

int run_validate(const RunConfig& cfg, const fs::path& dir) {
  const FileCatalog catalog = build_catalog(cfg);
  for (std::uint32_t rank : cfg.ranks) {
    if (rank < 1 || rank > catalog.n_files())
      throw ConfigError("rank " + std::to_string(rank) + " outside the catalog");
  }
  const std::uint64_t capacity = resolve_capacity(cfg, catalog);
  const RequestTrace trace = build_trace(cfg, catalog, catalog.total_popularity());
  if (cfg.export_trace) save_trace_csv(trace, (dir / "trace.csv").string());
  save_catalog_csv(catalog, (dir / "catalog.csv").string());

  const auto result = validate_approximation(catalog, capacity, trace, cfg.ranks);
  for (const auto& row : result.rows) {
    if (row.n_samples == 0) {
      std::fprintf(stderr,
                   "warning: rank %u was never requested after warm-up; its "
                   "empirical distribution is empty. Increase --requests.\n",
                   row.rank);
    }
  }

  auto validation = open_out(dir, "validation.csv");
  validation << "rank,j,empirical,analytic\n";
  for (const auto& row : result.rows) {
    for (std::size_t j = 0; j < row.empirical.size(); ++j) {
      validation << row.rank << ',' << j << ',' << format_metric(row.empirical[j])
                 << ',' << format_metric(row.analytic[j]) << '\n';
    }
  }

  const std::uint32_t s_max = catalog.chunks[0];
  const std::uint32_t columns = cfg.max_j == 0 ? s_max : std::min(cfg.max_j, s_max);
  auto model = open_out(dir, "model.csv");
  model << "rank,q,s,t_c";
  for (std::uint32_t j = 1; j <= columns; ++j) model << ",h" << j;
  model << '\n';
  for (FileId f = 0; f < catalog.n_files(); ++f) {
    model << (f + 1) << ',' << format_exact(catalog.popularity[f]) << ','
          << catalog.chunks[f] << ',' << format_exact(result.model.t_c);
    for (std::uint32_t j = 1; j <= columns; ++j) {
      model << ',' << format_metric(hit_at_least_j(result.model, f, j));
    }
    model << '\n';
  }

  auto summary = open_out(dir, "summary.txt");
  summary << "validate: N=" << catalog.n_files() << " alpha=" << *cfg.alpha
          << " C=" << capacity << " c=" << s_max << " requests=" << trace.n_requests()
          << "\n";
  summary << "t_c=" << format_metric(result.model.t_c)
          << " residual=" << format_metric(result.model.residual)
          << " warmup_requests=" << result.warmup_requests << "\n";
  for (const auto& row : result.rows) {
    summary << "rank " << row.rank << ": L1=" << format_metric(row.l1)
            << " samples=" << row.n_samples << "\n";
  }
  return 0;
}

int run_fig1(const RunConfig& cfg, const fs::path& dir) {
  const FileCatalog catalog = build_catalog(cfg);
  const std::uint64_t capacity = resolve_capacity(cfg, catalog);
  save_catalog_csv(catalog, (dir / "catalog.csv").string());

  const auto rows = figure1_curves(catalog, capacity);
  auto out = open_out(dir, "fig1.csv");
  out << "rank,lru_any,glru_any,glru_full\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << (r + 1) << ',' << format_metric(rows[r].lru_any) << ','
        << format_metric(rows[r].glru_any) << ',' << format_metric(rows[r].glru_full)
        << '\n';
  }

  auto summary = open_out(dir, "summary.txt");
  summary << "fig1: N=" << catalog.n_files() << " alpha=" << *cfg.alpha
          << " C=" << capacity << "\n";
  summary << "rank 1: lru_any=" << format_metric(rows[0].lru_any)
          << " glru_any=" << format_metric(rows[0].glru_any)
          << " glru_full=" << format_metric(rows[0].glru_full) << "\n";
  return 0;
}

int run_oracle(const RunConfig& cfg, const fs::path& dir) {
  const FileCatalog catalog = build_catalog(cfg);
  const std::uint64_t capacity = resolve_capacity(cfg, catalog);
  save_catalog_csv(catalog, (dir / "catalog.csv").string());

  std::vector<PolicyKind> policies;
  if (cfg.policy == "both") {
    policies = {PolicyKind::LRU, PolicyKind::GLRU};
  } else {
    policies = {parse_policy(cfg.policy)};
  }

  auto out = open_out(dir, "oracle.csv");
  out << "policy,rank,j,probability\n";
  auto summary = open_out(dir, "summary.txt");
  summary << "oracle: N=" << catalog.n_files() << " C=" << capacity << "\n";
  for (PolicyKind policy : policies) {
    const auto oracle = brute_force_oracle(catalog, capacity, policy);
    const char* name = policy == PolicyKind::LRU ? "lru" : "glru";
    for (std::size_t f = 0; f < oracle.per_file.size(); ++f) {
      double mean = 0.0;
      for (std::size_t j = 0; j < oracle.per_file[f].size(); ++j) {
        out << name << ',' << (f + 1) << ',' << j << ','
            << format_metric(oracle.per_file[f][j]) << '\n';
        mean += static_cast<double>(j) * oracle.per_file[f][j];
      }
      summary << name << " rank " << (f + 1)
              << ": E[cached chunks]=" << format_metric(mean) << "\n";
    }
    summary << name << ": states=" << oracle.n_states
            << " iterations=" << oracle.iterations << "\n";
  }
  return 0;
}

SweepParams sweep_params(const RunConfig& cfg) {
  SweepParams params;
  params.n_files = cfg.n_files;
  params.n_requests = cfg.n_requests;
  const auto& p = *cfg.pareto;
  params.pareto = ParetoSpec{p[0], p[1], p[2]};
  params.correlation = parse_correlation(cfg.correlation);
  params.seed = cfg.seed;
  params.resample_lengths = cfg.resample_lengths;
  params.jobs = cfg.jobs;
  if (!cfg.catalog_file.empty()) {
    const auto pinned = load_catalog_csv(cfg.catalog_file);
    if (pinned.video_length_s.empty())
      throw ConfigError("sweeps need a catalog CSV with video lengths");
    params.fixed_lengths = pinned.video_length_s;
    params.n_files = pinned.n_files();
  }
  return params;
}

std::vector<SweepPoint> build_grid(const RunConfig& cfg) {
  const bool desk = cfg.grid == "desk";
  std::vector<double> alphas{0.8, 1.2};
  std::vector<double> cps{0.1, 0.2};
  std::vector<double> delays = desk ? std::vector<double>{3.0}
                                    : std::vector<double>{3.0, 4.0};
  std::vector<double> lens = desk ? std::vector<double>{2.0}
                                  : std::vector<double>{1.0, 2.0, 3.0, 4.0};
  std::vector<double> rhos = desk ? std::vector<double>{0.5, 0.9}
                                  : std::vector<double>{0.1, 0.5, 0.9};
  std::vector<double> rates = desk ? std::vector<double>{2.0, 10.0}
                                   : std::vector<double>{1.0, 2.0, 10.0, 30.0};
  if (cfg.alpha) alphas = {*cfg.alpha};
  if (cfg.cp) cps = {*cfg.cp};
  if (cfg.startup_delay) delays = {*cfg.startup_delay};
  if (cfg.chunk_len) lens = {*cfg.chunk_len};
  if (cfg.rho) rhos = {*cfg.rho};
  if (cfg.rate) rates = {*cfg.rate};

  std::vector<SweepPoint> grid;
  for (double alpha : alphas)
    for (double cp : cps)
      for (double ds : delays)
        for (double L : lens)
          for (double rho : rhos)
            for (double r : rates) grid.push_back({alpha, cp, ds, L, rho, r});
  return grid;
}

void write_lengths(const SweepParams& params, const fs::path& dir) {
  const auto lengths = sweep_lengths(params);
  auto out = open_out(dir, "lengths.csv");
  out << "index,length_s\n";
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    out << i << ',' << format_exact(lengths[i]) << '\n';
  }
}

void write_sweep_outputs(const std::vector<ConfigResult>& results,
                         const SweepParams& params, const fs::path& dir,
                         const std::string& suffix) {
  auto sweep = open_out(dir, "sweep" + suffix + ".csv");
  sweep << "config,alpha,cp,d_s,L,rho,r,correlation,capacity,total_chunks,"
           "n_counted,warmup,trace_hash,policy,metric,value,se\n";
  const char* corr = params.correlation == CorrelationMode::Positive   ? "positive"
                     : params.correlation == CorrelationMode::Negative ? "negative"
                                                                       : "independent";
  for (const auto& r : results) {
    for (int which = 0; which < 2; ++which) {
      const MetricsReport& report = which == 0 ? r.lru : r.glru;
      const double ses[5] = {report.se_p_c, report.se_p_m, report.se_T_w,
                             report.se_T_d, report.se_p_d};
      for (std::size_t m = 0; m < 5; ++m) {
        sweep << r.config_index << ',' << format_metric(r.point.alpha) << ','
              << format_metric(r.point.cp) << ','
              << format_metric(r.point.startup_delay_s) << ','
              << format_metric(r.point.chunk_len_s) << ','
              << format_metric(r.point.rho) << ',' << format_metric(r.point.rate_MBps)
              << ',' << corr << ',' << r.capacity << ',' << r.total_chunks << ','
              << report.n_counted << ',' << report.warmup_requests << ','
              << report.trace_hash << ',' << (which == 0 ? "lru" : "glru") << ','
              << kMetricNames[m] << ',' << format_metric(metric_value(report, m))
              << ',' << format_metric(ses[m]) << '\n';
      }
    }
  }

  auto comparison = open_out(dir, "comparison" + suffix + ".csv");
  comparison << "config,alpha,cp,d_s,L,rho,r,metric,lru,glru,relative,gross\n";
  for (const auto& r : results) {
    for (const auto& row : compare(r.lru, r.glru)) {
      comparison << r.config_index << ',' << format_metric(r.point.alpha) << ','
                 << format_metric(r.point.cp) << ','
                 << format_metric(r.point.startup_delay_s) << ','
                 << format_metric(r.point.chunk_len_s) << ','
                 << format_metric(r.point.rho) << ','
                 << format_metric(r.point.rate_MBps) << ',' << row.metric << ','
                 << format_metric(row.lru) << ',' << format_metric(row.glru) << ','
                 << format_metric(row.relative) << ',' << format_metric(row.gross)
                 << '\n';
    }
  }
}

void warn_unwarmed(const std::vector<ConfigResult>& results, std::size_t n_requests) {
  std::size_t unwarmed = 0;
  for (const auto& r : results) {
    if (r.lru.n_counted == 0 || r.glru.n_counted == 0) ++unwarmed;
  }
  if (unwarmed > 0) {
    std::fprintf(stderr,
                 "warning: %zu configuration(s) never filled the cache within %zu "
                 "requests; their metrics are zero. Increase --requests.\n",
                 unwarmed, n_requests);
  }
}

void write_summary_table(std::ostream& out, const std::vector<ConfigResult>& results) {
  out << "metric  worst(rel/gross)  best(rel/gross)  mean(rel/gross)\n";
  for (const auto& s : summarize(results)) {
    out << s.metric << "  " << format_metric(s.worst_relative) << " / "
        << format_metric(s.worst_gross) << "  " << format_metric(s.best_relative)
        << " / " << format_metric(s.best_gross) << "  "
        << format_metric(s.mean_relative) << " / " << format_metric(s.mean_gross)
        << "\n";
  }
}

void export_details(const std::vector<SweepPoint>& grid, const SweepParams& params,
                    const RunConfig& cfg, const fs::path& dir,
                    const std::string& suffix) {
  if (!cfg.export_trace && !cfg.export_records) return;
  const auto lengths = sweep_lengths(params);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto instance = materialize_config(i, grid[i], params, lengths);
    const std::string tag = suffix + "_cfg" + std::to_string(i);
    if (cfg.export_trace) {
      save_trace_csv(instance.trace, (dir / ("trace" + tag + ".csv")).string());
    }
    if (cfg.export_records) {
      const auto outcome =
          run_comparison(instance.catalog, instance.capacity, instance.trace,
                         instance.service, instance.options, true);
      for (int which = 0; which < 2; ++which) {
        const auto& records = which == 0 ? outcome.lru_records : outcome.glru_records;
        auto out = open_out(
            dir, "records" + tag + (which == 0 ? "_lru" : "_glru") + ".csv");
        out << "t,file,s,chunks_hit,download_time,stall,stalled_flag\n";
        for (const auto& rec : records) {
          out << format_exact(rec.time) << ',' << rec.file << ',' << rec.total_chunks
              << ',' << rec.chunks_hit << ',' << format_metric(rec.download_time)
              << ',' << format_metric(rec.stall) << ','
              << (rec.stall > instance.options.stall_threshold ? 1 : 0) << '\n';
        }
      }
    }
  }
}

int run_sweep_command(const RunConfig& cfg, const fs::path& dir) {
  const SweepParams params = sweep_params(cfg);
  const auto grid = build_grid(cfg);
  const auto results = run_sweep(grid, params);
  warn_unwarmed(results, params.n_requests);

  if (!params.resample_lengths) write_lengths(params, dir);
  write_sweep_outputs(results, params, dir, "");

  auto table2 = open_out(dir, "table2.csv");
  table2 << "metric,worst_relative,worst_gross,best_relative,best_gross,"
            "mean_relative,mean_gross\n";
  for (const auto& s : summarize(results)) {
    table2 << s.metric << ',' << format_metric(s.worst_relative) << ','
           << format_metric(s.worst_gross) << ',' << format_metric(s.best_relative)
           << ',' << format_metric(s.best_gross) << ','
           << format_metric(s.mean_relative) << ',' << format_metric(s.mean_gross)
           << '\n';
  }

  auto summary = open_out(dir, "summary.txt");
  summary << "sweep: " << grid.size() << " configurations, N=" << params.n_files
          << ", requests=" << params.n_requests << ", correlation=" << cfg.correlation
          << "\n";
  write_summary_table(summary, results);

  export_details(grid, params, cfg, dir, "");
  return 0;
}

int run_correlate(const RunConfig& cfg, const fs::path& dir) {
  const SweepParams params = sweep_params(cfg);
  const auto grid = build_grid(cfg);
  const auto study = correlation_study(grid, params);
  warn_unwarmed(study.positive, params.n_requests);
  warn_unwarmed(study.negative, params.n_requests);

  SweepParams positive = params;
  positive.correlation = CorrelationMode::Positive;
  SweepParams negative = params;
  negative.correlation = CorrelationMode::Negative;
  write_sweep_outputs(study.positive, positive, dir, "_positive");
  write_sweep_outputs(study.negative, negative, dir, "_negative");
  if (!params.resample_lengths) write_lengths(params, dir);

  auto table3 = open_out(dir, "table3.csv");
  table3 << "metric,glru,lru\n";
  for (const auto& row : positive_vs_negative(study)) {
    table3 << row.metric << ',' << format_metric(row.glru) << ','
           << format_metric(row.lru) << '\n';
  }

  auto table4 = open_out(dir, "table4.csv");
  table4 << "metric,positive,negative\n";
  for (const auto& row : improvement_by_correlation(study)) {
    table4 << row.metric << ',' << format_metric(row.positive) << ','
           << format_metric(row.negative) << '\n';
  }

  auto diff = open_out(dir, "correlation_diff.csv");
  diff << "config,policy,metric,positive,negative,negative_minus_positive\n";
  for (std::size_t c = 0; c < study.positive.size(); ++c) {
    for (int which = 0; which < 2; ++which) {
      const MetricsReport& pos =
          which == 0 ? study.positive[c].lru : study.positive[c].glru;
      const MetricsReport& neg =
          which == 0 ? study.negative[c].lru : study.negative[c].glru;
      for (std::size_t m = 0; m < 5; ++m) {
        const double p = metric_value(pos, m);
        const double n = metric_value(neg, m);
        diff << c << ',' << (which == 0 ? "lru" : "glru") << ',' << kMetricNames[m]
             << ',' << format_metric(p) << ',' << format_metric(n) << ','
             << format_metric(n - p) << '\n';
      }
    }
  }

  auto summary = open_out(dir, "summary.txt");
  summary << "correlate: " << grid.size() << " configurations per mode, N="
          << params.n_files << ", requests=" << params.n_requests << "\n";
  summary << "positive correlation:\n";
  write_summary_table(summary, study.positive);
  summary << "negative correlation:\n";
  write_summary_table(summary, study.negative);

  export_details(grid, positive, cfg, dir, "_positive");
  export_details(grid, negative, cfg, dir, "_negative");
  return 0;
}

int dispatch(const RunConfig& cfg) {
  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  echo_config(cfg, dir / "config.txt");
  if (cfg.command == "validate") return run_validate(cfg, dir);
  if (cfg.command == "fig1") return run_fig1(cfg, dir);
  if (cfg.command == "oracle") return run_oracle(cfg, dir);
  if (cfg.command == "sweep") return run_sweep_command(cfg, dir);
  if (cfg.command == "correlate") return run_correlate(cfg, dir);
  throw ConfigError("unknown command " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"gLRU/LRU chunk cache simulator and analytic toolkit"};
  build_app(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    resolve(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  }

  try {
    return dispatch(cfg);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
