#include "glrusim/oracle.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace glrusim {

namespace {

using State = std::vector<ChunkCache::Entry>;

struct StateLess {
  bool operator()(const State& a, const State& b) const {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].file != b[i].file) return a[i].file < b[i].file;
      if (a[i].cached != b[i].cached) return a[i].cached < b[i].cached;
    }
    return a.size() < b.size();
  }
};

}  // namespace

StationaryDistribution brute_force_oracle(const FileCatalog& catalog,
                                          std::uint64_t capacity, PolicyKind policy,
                                          std::size_t max_states, double tol) {
  catalog.validate();
  const std::size_t n_files = catalog.n_files();

  std::vector<double> p(n_files);
  const double total_q = catalog.total_popularity();
  for (std::size_t i = 0; i < n_files; ++i) p[i] = catalog.popularity[i] / total_q;

  // Reachability sweep from the empty cache; each state stores one successor
  // per possible request.
  std::vector<State> states;
  std::map<State, std::uint32_t, StateLess> state_index;
  std::vector<std::vector<std::uint32_t>> next;
  states.push_back({});
  state_index.emplace(states.back(), 0);
  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    next.emplace_back(n_files);
    for (FileId f = 0; f < n_files; ++f) {
      ChunkCache cache = ChunkCache::from_entries(capacity, catalog.chunks, states[cur]);
      cache.request(f, policy);
      State successor = cache.snapshot_counts();
      auto [it, inserted] = state_index.emplace(std::move(successor),
                                                static_cast<std::uint32_t>(states.size()));
      if (inserted) {
        states.push_back(it->first);
        if (states.size() > max_states)
          throw std::length_error("oracle: state space exceeds limit");
      }
      next[cur][f] = it->second;
    }
  }

  // Damped power iteration; the averaging step removes any periodicity while
  // keeping the same fixed point. Transient states (e.g. the empty start)
  // lose their mass along the way.
  const std::size_t n_states = states.size();
  std::vector<double> pi(n_states, 1.0 / static_cast<double>(n_states));
  std::vector<double> stepped(n_states);
  StationaryDistribution result;
  result.policy = policy;
  result.n_states = n_states;

  const std::size_t max_iterations = 1000000;
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::fill(stepped.begin(), stepped.end(), 0.0);
    for (std::size_t sidx = 0; sidx < n_states; ++sidx) {
      const double mass = pi[sidx];
      if (mass == 0.0) continue;
      for (FileId f = 0; f < n_files; ++f) stepped[next[sidx][f]] += mass * p[f];
    }
    double delta = 0.0;
    for (std::size_t sidx = 0; sidx < n_states; ++sidx) {
      const double blended = 0.5 * (pi[sidx] + stepped[sidx]);
      delta += std::abs(blended - pi[sidx]);
      pi[sidx] = blended;
    }
    result.iterations = iter + 1;
    if (delta <= tol) break;
    if (iter + 1 == max_iterations)
      throw std::runtime_error("oracle: power iteration did not converge");
  }

  result.per_file.resize(n_files);
  for (std::size_t f = 0; f < n_files; ++f) {
    result.per_file[f].assign(catalog.chunks[f] + 1, 0.0);
  }
  for (std::size_t sidx = 0; sidx < n_states; ++sidx) {
    std::vector<std::uint32_t> counts(n_files, 0);
    for (const auto& entry : states[sidx]) counts[entry.file] = entry.cached;
    for (std::size_t f = 0; f < n_files; ++f) {
      result.per_file[f][counts[f]] += pi[sidx];
    }
  }
  return result;
}

}  // namespace glrusim
