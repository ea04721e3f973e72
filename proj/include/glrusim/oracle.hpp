#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "glrusim/cache.hpp"
#include "glrusim/catalog.hpp"

namespace glrusim {

// Exact stationary behavior of the request-embedded cache chain for tiny
// instances; the independent yardstick for both the simulator and the
// characteristic-time approximation.
struct StationaryDistribution {
  PolicyKind policy = PolicyKind::LRU;
  std::size_t n_states = 0;
  std::size_t iterations = 0;
  // per_file[f][j] = stationary probability of exactly j cached chunks.
  std::vector<std::vector<double>> per_file;
};

// Enumerates every cache state reachable from empty, builds the embedded
// Markov chain over request events (transition probability q(i)/sum q), and
// power-iterates to the stationary distribution.
StationaryDistribution brute_force_oracle(const FileCatalog& catalog,
                                          std::uint64_t capacity, PolicyKind policy,
                                          std::size_t max_states = 100000,
                                          double tol = 1e-12);

}  // namespace glrusim
