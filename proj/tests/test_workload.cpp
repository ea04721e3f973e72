#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "glrusim/workload.hpp"

using namespace glrusim;

TEST_CASE("single-event trace") {
  const auto catalog = make_uniform_catalog(3, 1.0, 2);
  const auto trace = generate_trace(catalog, 4.0, 1, 42);
  REQUIRE(trace.n_requests() == 1);
  CHECK(trace.events[0].time > 0.0);
  CHECK(trace.events[0].file < 3);
  CHECK(trace.total_rate == 4.0);
}

TEST_CASE("identical seeds give identical traces") {
  const auto catalog = make_uniform_catalog(20, 0.8, 3);
  const auto a = generate_trace(catalog, 2.5, 5000, 7);
  const auto b = generate_trace(catalog, 2.5, 5000, 7);
  CHECK(a.events == b.events);
  CHECK(trace_hash(a) == trace_hash(b));
  const auto c = generate_trace(catalog, 2.5, 5000, 8);
  CHECK(trace_hash(a) != trace_hash(c));
}

TEST_CASE("arrival times increase strictly and average 1/rate") {
  const auto catalog = make_uniform_catalog(10, 1.0, 1);
  const double rate = 3.0;
  const auto trace = generate_trace(catalog, rate, 1000000, 99);
  double last = 0.0;
  for (const auto& ev : trace.events) {
    CHECK(ev.time > last);
    last = ev.time;
  }
  const double mean_gap = last / static_cast<double>(trace.n_requests());
  CHECK(mean_gap == doctest::Approx(1.0 / rate).epsilon(0.01));
}

TEST_CASE("empirical file frequencies track the popularity law") {
  const auto catalog = make_uniform_catalog(100, 0.8, 1);
  const auto trace = generate_trace(catalog, 1.0, 1000000, 123);
  std::vector<double> freq(catalog.n_files(), 0.0);
  for (const auto& ev : trace.events) freq[ev.file] += 1.0;
  for (auto& f : freq) f /= static_cast<double>(trace.n_requests());

  const double total_q = catalog.total_popularity();
  double l1 = 0.0;
  for (std::size_t i = 0; i < freq.size(); ++i) {
    l1 += std::abs(freq[i] - catalog.popularity[i] / total_q);
  }
  CHECK(l1 < 0.01);
}

TEST_CASE("per-file sub-traces look exponential (KS check)") {
  const auto catalog = make_uniform_catalog(5, 1.0, 1);
  const double rate = 2.0;
  const auto trace = generate_trace(catalog, rate, 200000, 31);
  const double total_q = catalog.total_popularity();

  for (FileId f : {FileId{0}, FileId{3}}) {
    std::vector<double> gaps;
    double last = 0.0;
    for (const auto& ev : trace.events) {
      if (ev.file != f) continue;
      gaps.push_back(ev.time - last);
      last = ev.time;
    }
    REQUIRE(gaps.size() > 1000);
    std::sort(gaps.begin(), gaps.end());
    const double sub_rate = rate * catalog.popularity[f] / total_q;
    double d = 0.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      const double cdf = -std::expm1(-sub_rate * gaps[i]);
      const double hi = static_cast<double>(i + 1) / gaps.size();
      const double lo = static_cast<double>(i) / gaps.size();
      d = std::max({d, std::abs(cdf - hi), std::abs(cdf - lo)});
    }
    // 0.1% KS critical value is ~1.95/sqrt(n).
    CHECK(d < 1.95 / std::sqrt(static_cast<double>(gaps.size())));
  }
}

TEST_CASE("rate_for_intensity hits the target load exactly") {
  const auto catalog = make_uniform_catalog(4, 1.0, 5);  // E[s] = 5
  const double mu = 10.0;
  CHECK(rate_for_intensity(catalog, 0.5, mu) == doctest::Approx(1.0).epsilon(1e-12));

  for (double rho : {0.05, 0.3, 0.9}) {
    const double rate = rate_for_intensity(catalog, rho, mu);
    CHECK(rate * catalog.mean_chunks_per_request() / mu ==
          doctest::Approx(rho).epsilon(1e-12));
  }
  CHECK(rate_for_intensity(catalog, 1e-9, mu) == doctest::Approx(0.0).epsilon(1e-8));

  CHECK_THROWS_AS(rate_for_intensity(catalog, 0.0, mu), std::invalid_argument);
  CHECK_THROWS_AS(rate_for_intensity(catalog, 1.0, mu), std::invalid_argument);
  CHECK_THROWS_AS(rate_for_intensity(catalog, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("trace generation rejects bad arguments") {
  const auto catalog = make_uniform_catalog(2, 1.0, 1);
  CHECK_THROWS_AS(generate_trace(catalog, 0.0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_trace(catalog, 1.0, 0, 1), std::invalid_argument);
}
