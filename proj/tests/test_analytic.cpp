#include <stdexcept>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "glrusim/analytic.hpp"

using namespace glrusim;

namespace {

FileCatalog single_file(double q, std::uint32_t s) {
  FileCatalog catalog;
  catalog.popularity = {q};
  catalog.chunks = {s};
  return catalog;
}

ApproxModel fixed_model(PolicyKind policy, double t_c, std::vector<double> q,
                        std::vector<std::uint32_t> s) {
  ApproxModel model;
  model.policy = policy;
  model.t_c = t_c;
  model.q = std::move(q);
  model.s = std::move(s);
  return model;
}

FileCatalog random_catalog(std::mt19937_64& gen) {
  FileCatalog catalog;
  const std::size_t n = 2 + gen() % 40;
  catalog.popularity = make_zipf_popularity(n, 0.5 + (gen() % 16) * 0.1);
  catalog.chunks.resize(n);
  for (auto& s : catalog.chunks) s = 1 + gen() % 30;
  return catalog;
}

}  // namespace

TEST_CASE("LRU characteristic time closed forms") {
  // Two unit files with q = ln 2 and C = 1: 2(1 - e^(-ln2 t)) = 1 at t = 1.
  FileCatalog pair;
  pair.popularity = {std::log(2.0), std::log(2.0)};
  pair.chunks = {1, 1};
  const auto model = solve_tc_lru(pair, 1);
  CHECK(model.t_c == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(model.residual <= 1e-9);

  // Single file: t_c = -ln(1 - C/s)/q.
  const auto single = solve_tc_lru(single_file(0.7, 10), 4);
  CHECK(single.t_c == doctest::Approx(-std::log(1.0 - 0.4) / 0.7).epsilon(1e-9));
}

TEST_CASE("halving the tolerance never increases the residual") {
  const auto catalog = make_uniform_catalog(50, 0.8, 5);
  double tol = 1e-3;
  double last = solve_tc_lru(catalog, 60, tol).residual;
  for (int i = 0; i < 6; ++i) {
    tol *= 0.5;
    const double res = solve_tc_lru(catalog, 60, tol).residual;
    CHECK(res <= last + 1e-15);
    last = res;
  }
}

TEST_CASE("gLRU characteristic time golden ratio case") {
  // Single file, s=2, q=1, C=1: x + x^2 = 1 so x = (sqrt 5 - 1)/2.
  const auto model = solve_tc_glru(single_file(1.0, 2), 1);
  const double x = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(model.t_c == doctest::Approx(-std::log(1.0 - x)).epsilon(1e-9));
}

TEST_CASE("unit-chunk catalogs make both solvers agree") {
  const auto catalog = make_uniform_catalog(30, 1.1, 1);
  const auto lru = solve_tc_lru(catalog, 12);
  const auto glru = solve_tc_glru(catalog, 12);
  CHECK(lru.t_c == doctest::Approx(glru.t_c).epsilon(1e-8));
}

TEST_CASE("larger capacity raises the characteristic time") {
  const auto catalog = make_uniform_catalog(40, 0.8, 4);
  double last = 0.0;
  for (std::uint64_t c : {10, 40, 80, 120}) {
    const double t = solve_tc_glru(catalog, c).t_c;
    CHECK(t > last);
    last = t;
  }
}

TEST_CASE("solver rejects degenerate capacities") {
  const auto catalog = make_uniform_catalog(10, 0.8, 2);
  CHECK_THROWS_AS(solve_tc_lru(catalog, 0), std::invalid_argument);
  CHECK_THROWS_AS(solve_tc_lru(catalog, 20), std::invalid_argument);
  CHECK_THROWS_AS(solve_tc_glru(catalog, 25), std::invalid_argument);
}

TEST_CASE("solver residual stays within tolerance on random catalogs") {
  std::mt19937_64 gen(404);
  for (int round = 0; round < 25; ++round) {
    const auto catalog = random_catalog(gen);
    const auto total = catalog.total_chunks();
    const std::uint64_t capacity = 1 + gen() % (total - 1);
    for (auto solver : {solve_tc_lru, solve_tc_glru}) {
      const auto model = solver(catalog, capacity, 1e-9);
      CHECK(model.residual <= 1e-9);
      CHECK(model.t_c > 0.0);
    }
  }
}

TEST_CASE("hit_at_least_j powers the any-chunk probability") {
  // q t_c = ln 2 makes the any-chunk probability exactly 1/2.
  const auto model = fixed_model(PolicyKind::GLRU, std::log(2.0), {1.0}, {5});
  CHECK(hit_at_least_j(model, 0, 3) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(hit_at_least_j(model, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  double last = 1.0;
  for (std::uint32_t j = 1; j <= 5; ++j) {
    const double h = hit_at_least_j(model, 0, j);
    CHECK(h <= last);
    last = h;
  }
  CHECK_THROWS_AS(hit_at_least_j(model, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(hit_at_least_j(model, 0, 6), std::out_of_range);
  const auto wrong = fixed_model(PolicyKind::LRU, 1.0, {1.0}, {5});
  CHECK_THROWS_AS(hit_at_least_j(wrong, 0, 1), std::invalid_argument);
}

TEST_CASE("lru_hit_probability is the whole-file hit law") {
  const auto model = fixed_model(PolicyKind::LRU, std::log(2.0), {1.0, 0.5, 0.1}, {3, 3, 3});
  CHECK(lru_hit_probability(model, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lru_hit_probability(model, 0) > lru_hit_probability(model, 1));
  CHECK(lru_hit_probability(model, 1) > lru_hit_probability(model, 2));

  const auto huge = fixed_model(PolicyKind::LRU, 1.0, {1e9}, {2});
  CHECK(lru_hit_probability(huge, 0) == doctest::Approx(1.0));
}

TEST_CASE("chunk distribution telescopes the hit probabilities") {
  const auto model = fixed_model(PolicyKind::GLRU, std::log(2.0), {1.0}, {2});
  const auto dist = chunk_distribution(model, 0);
  REQUIRE(dist.probs.size() == 3);
  CHECK(dist.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.probs[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(dist.probs[2] == doctest::Approx(0.25).epsilon(1e-12));

  const auto bernoulli = fixed_model(PolicyKind::GLRU, 0.3, {2.0}, {1});
  const auto d1 = chunk_distribution(bernoulli, 0);
  CHECK(d1.probs[0] == doctest::Approx(std::exp(-0.6)).epsilon(1e-12));
  CHECK(d1.probs[1] == doctest::Approx(-std::expm1(-0.6)).epsilon(1e-12));
}

TEST_CASE("chunk distribution properties on random models") {
  std::mt19937_64 gen(808);
  for (int round = 0; round < 20; ++round) {
    const auto catalog = random_catalog(gen);
    const auto total = catalog.total_chunks();
    const std::uint64_t capacity = 1 + gen() % (total - 1);
    const auto model = solve_tc_glru(catalog, capacity);

    double expected_total = 0.0;
    for (FileId f = 0; f < catalog.n_files(); ++f) {
      const auto dist = chunk_distribution(model, f);
      const double sum = std::accumulate(dist.probs.begin(), dist.probs.end(), 0.0);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
      for (double p : dist.probs) CHECK(p >= 0.0);

      // Tail identity: sum_{k>=j} probs[k] = h_j.
      double tail = 0.0;
      for (std::uint32_t j = catalog.chunks[f]; j >= 1; --j) {
        tail += dist.probs[j];
        CHECK(tail == doctest::Approx(hit_at_least_j(model, f, j)).epsilon(1e-11));
      }

      // Mean identity: sum_j j probs[j] = d(f, t_c).
      double mean = 0.0;
      for (std::size_t j = 0; j < dist.probs.size(); ++j) mean += j * dist.probs[j];
      CHECK(mean == doctest::Approx(expected_cached_chunks(model, f)).epsilon(1e-9));
      expected_total += mean;
    }
    // The fixed point itself: expected cached chunks add up to the capacity.
    CHECK(expected_total == doctest::Approx(static_cast<double>(capacity)).epsilon(1e-8));
  }
}

TEST_CASE("figure 1 curves reproduce the qualitative ordering") {
  const auto catalog = make_uniform_catalog(10000, 0.8, 5);
  const auto rows = figure1_curves(catalog, 1000);
  REQUIRE(rows.size() == 10000);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    CHECK(row.glru_full <= row.glru_any + 1e-15);
    CHECK(row.glru_any >= row.lru_any - 1e-12);
    // gLRU keeps the top files fully cached so often that gLRU-F sits above
    // LRU-A there; away from the head the curves order the familiar way.
    if (r >= 100) CHECK(row.lru_any >= row.glru_full - 1e-12);
    if (r > 0) {
      CHECK(rows[r - 1].lru_any >= row.lru_any);
      CHECK(rows[r - 1].glru_any >= row.glru_any);
      CHECK(rows[r - 1].glru_full >= row.glru_full);
    }
  }
  CHECK(rows[0].glru_full > rows[0].lru_any);  // the head-rank crossover
}

TEST_CASE("figure 1 collapses for unit-chunk files") {
  const auto catalog = make_uniform_catalog(50, 1.0, 1);
  const auto rows = figure1_curves(catalog, 20);
  for (const auto& row : rows) {
    CHECK(row.glru_any == doctest::Approx(row.glru_full).epsilon(1e-12));
  }
}
