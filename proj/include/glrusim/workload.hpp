#pragma once

#include <cstdint>
#include <vector>

#include "glrusim/catalog.hpp"

namespace glrusim {

struct RequestEvent {
  double time = 0.0;
  FileId file = 0;
  friend bool operator==(const RequestEvent&, const RequestEvent&) = default;
};

// Poisson request stream over the catalog: exponential inter-arrivals at
// total_rate, file picks proportional to q(i).
struct RequestTrace {
  std::vector<RequestEvent> events;  // strictly increasing times
  double total_rate = 0.0;
  std::size_t n_requests() const { return events.size(); }
};

RequestTrace generate_trace(const FileCatalog& catalog, double total_rate,
                            std::size_t n_requests, std::uint64_t rng_seed);

// Arrival rate such that offered chunk load / service rate equals rho:
// total_rate = rho * service_rate / E[s].
double rate_for_intensity(const FileCatalog& catalog, double rho,
                          double service_rate_chunks_per_s);

// FNV-1a over the event stream; pins trace identity across coupled runs.
std::uint64_t trace_hash(const RequestTrace& trace);

}  // namespace glrusim
