#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "glrusim/simulation.hpp"
#include "glrusim/sweep.hpp"

using namespace glrusim;

namespace {

ServiceConfig desk_service() {
  ServiceConfig svc;
  svc.chunk_len_s = 2.0;
  svc.processing_rate_MBps = 10.0;
  svc.startup_delay_s = 3.0;
  return svc;
}

bool reports_equal(const MetricsReport& a, const MetricsReport& b) {
  return a.p_c == b.p_c && a.p_m == b.p_m && a.T_w == b.T_w && a.T_d == b.T_d &&
         a.p_d == b.p_d && a.n_counted == b.n_counted;
}

}  // namespace

TEST_CASE("a dominant always-fitting file is served from cache") {
  FileCatalog catalog;
  catalog.popularity = {1e6, 1.0};
  catalog.chunks = {5, 5};
  const auto trace = generate_trace(catalog, 1.0, 20000, 3);
  // The cache never fills (one hot file), so pick an explicit warm-up.
  SimOptions options;
  options.warmup_requests = 10;
  const auto report = run_simulation(catalog, PolicyKind::LRU, 8, trace, desk_service(),
                                     options);
  CHECK(report.n_counted > 10000);
  CHECK(report.p_c > 0.999);
  CHECK(report.T_w < 1e-3);
  CHECK(report.p_d < 1e-3);
}

TEST_CASE("a one-chunk cache yields almost no hits") {
  const auto catalog = make_uniform_catalog(50, 0.8, 20);
  const auto trace = generate_trace(catalog, 1.0, 20000, 5);
  for (auto policy : {PolicyKind::LRU, PolicyKind::GLRU}) {
    const auto report =
        run_simulation(catalog, policy, 1, trace, desk_service(), SimOptions{});
    CHECK(report.p_c < 0.05);
    CHECK(report.p_m > 0.7);
  }
}

TEST_CASE("unit-chunk catalogs give byte-identical policy reports") {
  const auto catalog = make_uniform_catalog(40, 0.8, 1);
  const auto trace = generate_trace(catalog, 2.0, 30000, 11);
  SimOptions options;
  options.service_seed = 99;
  const auto outcome = run_comparison(catalog, 12, trace, desk_service(), options);
  CHECK(reports_equal(outcome.lru, outcome.glru));
  CHECK(outcome.lru.trace_hash == outcome.glru.trace_hash);
}

TEST_CASE("metrics recomputed from records match the report exactly") {
  const auto catalog = make_vod_catalog(50, 0.8, ParetoSpec{}, 2.0, 21);
  const auto trace = generate_trace(catalog, 0.05, 20000, 13);
  SimOptions options;
  std::vector<RequestRecord> records;
  const auto report = run_simulation(catalog, PolicyKind::GLRU,
                                     catalog.total_chunks() / 10, trace, desk_service(),
                                     options, &records);
  REQUIRE(records.size() == trace.n_requests());
  const auto again =
      metrics_from_records(records, report.warmup_requests, options.stall_threshold);
  CHECK(again.p_c == report.p_c);
  CHECK(again.p_m == report.p_m);
  CHECK(again.T_w == report.T_w);
  CHECK(again.T_d == report.T_d);
  CHECK(again.p_d == report.p_d);
  CHECK(again.se_T_w == report.se_T_w);
  CHECK(again.n_counted == report.n_counted);

  // Definitional identity for p_m.
  std::size_t misses = 0;
  for (std::size_t i = report.warmup_requests; i < records.size(); ++i) {
    if (records[i].chunks_hit == 0) ++misses;
  }
  CHECK(report.p_m ==
        static_cast<double>(misses) / static_cast<double>(report.n_counted));
}

TEST_CASE("occupancy sits at capacity once warmed") {
  const auto catalog = make_uniform_catalog(60, 1.0, 4);
  const auto trace = generate_trace(catalog, 1.0, 20000, 17);
  for (auto policy : {PolicyKind::LRU, PolicyKind::GLRU}) {
    const auto report =
        run_simulation(catalog, policy, 50, trace, desk_service(), SimOptions{});
    CHECK(report.final_occupancy == 50);
    CHECK(report.warmup_requests < trace.n_requests());
    CHECK(report.n_counted == trace.n_requests() - report.warmup_requests);
  }
}

TEST_CASE("explicit warm-up and degenerate windows") {
  const auto catalog = make_uniform_catalog(10, 1.0, 2);
  const auto trace = generate_trace(catalog, 1.0, 100, 19);
  SimOptions options;
  options.warmup_requests = 0;
  auto report =
      run_simulation(catalog, PolicyKind::GLRU, 5, trace, desk_service(), options);
  CHECK(report.n_counted == 100);

  options.warmup_requests = 1000;  // longer than the trace
  report = run_simulation(catalog, PolicyKind::GLRU, 5, trace, desk_service(), options);
  CHECK(report.n_counted == 0);
  CHECK(report.p_c == 0.0);
}

TEST_CASE("whole-file eviction mode flows through the simulation") {
  const auto catalog = make_uniform_catalog(30, 0.8, 7);
  const auto trace = generate_trace(catalog, 1.0, 20000, 29);
  SimOptions options;
  options.eviction = EvictionMode::WholeFile;
  const auto report =
      run_simulation(catalog, PolicyKind::LRU, 50, trace, desk_service(), options);
  // Whole-file eviction leaves slack: 50 is not a multiple of 7, so the
  // steady occupancy sits strictly below capacity.
  CHECK(report.final_occupancy < 50);
  CHECK(report.final_occupancy >= 50 - 6);
  CHECK(report.n_counted > 0);

  const auto chunkwise =
      run_simulation(catalog, PolicyKind::LRU, 50, trace, desk_service(), SimOptions{});
  CHECK(chunkwise.final_occupancy == 50);
}

TEST_CASE("simulation rejects a cache that swallows the catalog") {
  const auto catalog = make_uniform_catalog(4, 1.0, 2);
  const auto trace = generate_trace(catalog, 1.0, 10, 23);
  CHECK_THROWS_AS(run_simulation(catalog, PolicyKind::LRU, 8, trace, desk_service(),
                                 SimOptions{}),
                  std::invalid_argument);
}

TEST_CASE("validation rows agree with the approximation at desk scale") {
  const auto catalog = make_uniform_catalog(1000, 0.8, 10);
  const auto trace =
      generate_trace(catalog, catalog.total_popularity(), 1000000, 4242);
  const std::uint32_t ranks[] = {1, 10, 100};
  const auto result = validate_approximation(catalog, 500, trace, ranks);
  REQUIRE(result.rows.size() == 3);
  for (const auto& row : result.rows) {
    CHECK(row.n_samples > 100);
    CHECK(row.l1 <= 0.05);
    double esum = 0.0;
    for (double p : row.empirical) esum += p;
    CHECK(esum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("validation demands uniform chunk counts and sane ranks") {
  auto catalog = make_uniform_catalog(10, 1.0, 3);
  const auto trace = generate_trace(catalog, 1.0, 100, 1);
  const std::uint32_t bad_rank[] = {11};
  CHECK_THROWS_AS(validate_approximation(catalog, 10, trace, bad_rank),
                  std::out_of_range);
  catalog.chunks[3] = 4;
  const std::uint32_t ranks[] = {1};
  CHECK_THROWS_AS(validate_approximation(catalog, 10, trace, ranks),
                  std::invalid_argument);
}

TEST_CASE("LRU hit probabilities track the characteristic-time model") {
  const auto catalog = make_uniform_catalog(300, 0.8, 4);
  const auto model = solve_tc_lru(catalog, 120);
  const auto trace =
      generate_trace(catalog, catalog.total_popularity(), 400000, 777);

  // Empirical any-chunk hit frequency at the file's own request instants.
  const FileId tracked[] = {0, 9, 49};
  std::size_t hits[3] = {}, seen[3] = {};
  ChunkCache cache(120, catalog.chunks);
  bool warmed = false;
  for (const auto& ev : trace.events) {
    const auto outcome = cache.request(ev.file, PolicyKind::LRU);
    if (warmed) {
      for (std::size_t k = 0; k < 3; ++k) {
        if (ev.file == tracked[k]) {
          ++seen[k];
          if (outcome.chunks_hit > 0) ++hits[k];
        }
      }
    }
    warmed = warmed || cache.cumulative_insertions() >= 120;
  }

  for (std::size_t k = 0; k < 3; ++k) {
    REQUIRE(seen[k] > 500);
    const double empirical = static_cast<double>(hits[k]) / seen[k];
    CHECK(std::abs(empirical - lru_hit_probability(model, tracked[k])) < 0.05);
  }
}

TEST_CASE("an extreme popularity skew pins the top file fully") {
  FileCatalog catalog;
  catalog.popularity = make_zipf_popularity(50, 3.0);
  catalog.chunks.assign(50, 6);
  const auto model = solve_tc_glru(catalog, 30);
  const auto dist = chunk_distribution(model, 0);
  CHECK(dist.probs[6] > 0.99);
}

TEST_CASE("single-point sweep produces a well-formed comparison") {
  SweepParams params;
  params.n_files = 60;
  params.n_requests = 30000;
  params.seed = 6;
  const std::vector<SweepPoint> grid{{0.8, 0.1, 3.0, 2.0, 0.5, 10.0}};
  const auto results = run_sweep(grid, params);
  REQUIRE(results.size() == 1);
  const auto& r = results[0];
  CHECK(r.capacity > 0);
  CHECK(r.capacity < r.total_chunks);
  CHECK(r.lru.trace_hash == r.glru.trace_hash);
  CHECK(r.lru.n_counted == r.glru.n_counted);
  for (const auto& report : {r.lru, r.glru}) {
    CHECK(report.p_c >= 0.0);
    CHECK(report.p_c <= 1.0);
    CHECK(report.p_m >= 0.0);
    CHECK(report.p_m <= 1.0);
    CHECK(report.p_d >= 0.0);
    CHECK(report.p_d <= 1.0);
    CHECK(report.T_w >= 0.0);
    CHECK(report.T_d >= 0.0);
    CHECK(report.n_counted > 0);
  }

  const auto rows = compare(r.lru, r.glru);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    CHECK(row.gross == doctest::Approx(row.glru - row.lru));
    if (row.lru != 0.0) {
      CHECK(row.relative == doctest::Approx((row.glru - row.lru) / row.lru));
    } else {
      CHECK(row.relative == 0.0);
    }
  }

  const auto summaries = summarize(results);
  REQUIRE(summaries.size() == 5);
  CHECK(summaries[0].metric == "p_c");
  CHECK(summaries[0].mean_relative == doctest::Approx(rows[0].relative));
}

TEST_CASE("sweeps are deterministic and job-count independent") {
  SweepParams params;
  params.n_files = 40;
  params.n_requests = 8000;
  params.seed = 9;
  std::vector<SweepPoint> grid{{0.8, 0.1, 3.0, 2.0, 0.5, 10.0},
                               {1.2, 0.2, 3.0, 2.0, 0.9, 2.0}};
  const auto serial = run_sweep(grid, params);
  params.jobs = 2;
  const auto parallel = run_sweep(grid, params);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(reports_equal(serial[i].lru, parallel[i].lru));
    CHECK(reports_equal(serial[i].glru, parallel[i].glru));
    CHECK(serial[i].lru.trace_hash == parallel[i].lru.trace_hash);
  }
}

TEST_CASE("equal-size catalogs make the coupling direction irrelevant") {
  SweepParams params;
  params.n_files = 30;
  params.n_requests = 10000;
  params.seed = 12;
  // Every draw lands in (300, 302] and ceils to 151 chunks at L=2, so the
  // coupling permutation is a no-op either way.
  params.pareto = ParetoSpec{2.0, 300.0, 302.0};
  const std::vector<SweepPoint> grid{{0.8, 0.1, 3.0, 2.0, 0.5, 10.0}};
  const auto study = correlation_study(grid, params);
  CHECK(reports_equal(study.positive[0].lru, study.negative[0].lru));
  CHECK(reports_equal(study.positive[0].glru, study.negative[0].glru));
}

TEST_CASE("length resampling and pinning control the population draw") {
  SweepParams params;
  params.n_files = 30;
  params.n_requests = 4000;
  params.seed = 21;
  const std::vector<SweepPoint> grid{{0.8, 0.1, 3.0, 2.0, 0.5, 10.0},
                                     {0.8, 0.1, 3.0, 2.0, 0.9, 10.0}};

  // Shared draw: both configurations see identical lengths.
  const auto lengths = sweep_lengths(params);
  const auto a = materialize_config(0, grid[0], params, lengths);
  const auto b = materialize_config(1, grid[1], params, lengths);
  CHECK(a.catalog.video_length_s == b.catalog.video_length_s);

  // Resampling: configurations draw different populations.
  SweepParams resample = params;
  resample.resample_lengths = true;
  const auto c = materialize_config(0, grid[0], resample, {});
  const auto d = materialize_config(1, grid[1], resample, {});
  CHECK(c.catalog.video_length_s != d.catalog.video_length_s);

  // Pinned lengths override the Pareto draw entirely, seed included.
  SweepParams pinned = params;
  pinned.seed = 99;
  pinned.fixed_lengths = lengths;
  const auto e = materialize_config(0, grid[0], pinned, sweep_lengths(pinned));
  CHECK(e.catalog.video_length_s == a.catalog.video_length_s);
  SweepParams wrong = pinned;
  wrong.fixed_lengths.pop_back();
  CHECK_THROWS_AS(sweep_lengths(wrong), std::invalid_argument);
}

TEST_CASE("correlation tables have the documented shape and conventions") {
  SweepParams params;
  params.n_files = 40;
  params.n_requests = 15000;
  params.seed = 31;
  const std::vector<SweepPoint> grid{{0.8, 0.1, 3.0, 2.0, 0.5, 10.0},
                                     {1.2, 0.1, 3.0, 2.0, 0.5, 10.0}};
  const auto study = correlation_study(grid, params);
  REQUIRE(study.positive.size() == 2);
  REQUIRE(study.negative.size() == 2);

  const auto contrast = positive_vs_negative(study);
  const auto improvement = improvement_by_correlation(study);
  REQUIRE(contrast.size() == 5);
  REQUIRE(improvement.size() == 5);
  for (std::size_t m = 0; m < 5; ++m) {
    CHECK(contrast[m].metric == kMetricNames[m]);
    CHECK(improvement[m].metric == kMetricNames[m]);
    CHECK(std::isfinite(contrast[m].glru));
    CHECK(std::isfinite(contrast[m].lru));
    CHECK(std::isfinite(improvement[m].positive));
    CHECK(std::isfinite(improvement[m].negative));
  }

  // Recompute one cell by hand: mean over configs of (pos - neg)/neg.
  double manual = 0.0;
  for (std::size_t c = 0; c < 2; ++c) {
    const double pos = study.positive[c].glru.p_c;
    const double neg = study.negative[c].glru.p_c;
    manual += (pos - neg) / neg;
  }
  CHECK(contrast[0].glru == doctest::Approx(manual / 2.0));
}

TEST_CASE("grids have the documented shapes") {
  CHECK(full_grid().size() == 384);
  CHECK(desk_grid().size() == 16);
  for (const auto& point : desk_grid()) {
    CHECK(point.startup_delay_s == 3.0);
    CHECK(point.chunk_len_s == 2.0);
  }
}
