#pragma once

#include <cstdint>
#include <vector>

#include "glrusim/cache.hpp"
#include "glrusim/catalog.hpp"

namespace glrusim {

// Solved characteristic time for a catalog/capacity pair. The capacity
// fixed-point equation differs by policy: LRU counts whole files entering the
// cache, gLRU counts the expected chunks resident per file.
struct ApproxModel {
  PolicyKind policy = PolicyKind::LRU;
  double t_c = 0.0;
  double residual = 0.0;  // |capacity - expected occupancy at t_c|
  std::uint64_t capacity = 0;
  std::vector<double> q;
  std::vector<std::uint32_t> s;
};

// Root of C = sum_i (1 - e^(-q(i) t)) s(i).
ApproxModel solve_tc_lru(const FileCatalog& catalog, std::uint64_t capacity,
                         double tol = 1e-9);

// Root of C = sum_i sum_{j=1..s(i)} x_i^j with x_i = 1 - e^(-q(i) t).
ApproxModel solve_tc_glru(const FileCatalog& catalog, std::uint64_t capacity,
                          double tol = 1e-9);

// h_j: probability of finding at least j chunks of `file`, gLRU model only.
double hit_at_least_j(const ApproxModel& model, FileId file, std::uint32_t j);

// Whole-file hit probability 1 - e^(-q t_c), LRU model only.
double lru_hit_probability(const ApproxModel& model, FileId file);

// d(i, t_c): expected resident chunks of `file`, gLRU model only.
double expected_cached_chunks(const ApproxModel& model, FileId file);

struct ChunkDistribution {
  FileId file = 0;
  std::vector<double> probs;  // probs[j] = P(exactly j chunks cached), j = 0..s(file)
};

ChunkDistribution chunk_distribution(const ApproxModel& model, FileId file);

struct Fig1Row {
  double lru_any = 0.0;
  double glru_any = 0.0;
  double glru_full = 0.0;
};

// Per-rank hit curves: LRU any-chunk, gLRU any-chunk (h_1), gLRU full file
// (h_{s(i)}). Solves both models internally.
std::vector<Fig1Row> figure1_curves(const FileCatalog& catalog, std::uint64_t capacity,
                                    double tol = 1e-9);

}  // namespace glrusim
