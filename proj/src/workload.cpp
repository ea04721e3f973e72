#include "glrusim/workload.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "glrusim/rng.hpp"

namespace glrusim {

RequestTrace generate_trace(const FileCatalog& catalog, double total_rate,
                            std::size_t n_requests, std::uint64_t rng_seed) {
  catalog.validate();
  if (!(total_rate > 0.0)) throw std::invalid_argument("trace: total_rate must be > 0");
  if (n_requests == 0) throw std::invalid_argument("trace: n_requests must be >= 1");

  std::vector<double> cumulative(catalog.n_files());
  double acc = 0.0;
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    acc += catalog.popularity[i];
    cumulative[i] = acc;
  }

  RequestTrace trace;
  trace.total_rate = total_rate;
  trace.events.resize(n_requests);
  std::mt19937_64 gen(rng_seed);
  double t = 0.0;
  for (auto& ev : trace.events) {
    t += exponential_draw(gen, total_rate);
    const double target = uniform01(gen) * acc;
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
    ev.time = t;
    ev.file = static_cast<FileId>(it == cumulative.end() ? cumulative.size() - 1
                                                         : it - cumulative.begin());
  }
  return trace;
}

double rate_for_intensity(const FileCatalog& catalog, double rho,
                          double service_rate_chunks_per_s) {
  catalog.validate();
  if (!(rho > 0.0) || !(rho < 1.0))
    throw std::invalid_argument("rate_for_intensity: rho must lie in (0,1)");
  if (!(service_rate_chunks_per_s > 0.0))
    throw std::invalid_argument("rate_for_intensity: service rate must be > 0");
  return rho * service_rate_chunks_per_s / catalog.mean_chunks_per_request();
}

std::uint64_t trace_hash(const RequestTrace& trace) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  };
  mix(trace.events.size());
  for (const auto& ev : trace.events) {
    mix(std::bit_cast<std::uint64_t>(ev.time));
    mix(ev.file);
  }
  return h;
}

}  // namespace glrusim
