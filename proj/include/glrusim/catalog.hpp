#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace glrusim {

using FileId = std::uint32_t;

enum class CorrelationMode { Independent, Positive, Negative };

// File population: Zipf popularity weights q(i) in rank order plus per-file
// chunk counts s(i). Video lengths are carried along when the chunk counts
// were derived from them.
struct FileCatalog {
  std::vector<double> popularity;       // q(i) > 0, non-increasing in rank
  std::vector<std::uint32_t> chunks;    // s(i) >= 1
  std::vector<double> video_length_s;   // empty unless built from lengths
  double chunk_len_s = 0.0;             // > 0 when chunks derive from lengths

  std::size_t n_files() const { return popularity.size(); }
  std::uint64_t total_chunks() const;
  double total_popularity() const;         // lambda = sum_i q(i)
  double mean_chunks_per_request() const;  // E[s] under request probabilities q/sum q

  // Throws std::invalid_argument when any structural invariant is broken.
  void validate() const;
};

// Unnormalized Zipf weights q(i) = i^-alpha for ranks 1..n.
std::vector<double> make_zipf_popularity(std::size_t n_files, double alpha);

// I.i.d. Pareto(shape, scale) lengths, redrawn while a draw exceeds cap.
std::vector<double> make_censored_pareto_lengths(std::size_t n_files, double shape,
                                                 double scale, double cap,
                                                 std::uint64_t rng_seed);

// s(i) = ceil(length / chunk_len_s), at least 1.
std::vector<std::uint32_t> chunkize(const std::vector<double>& lengths_s,
                                    double chunk_len_s);

// Re-pairs chunk counts (and lengths, when present) with popularity ranks.
// Positive: largest files to most popular ranks; negative: smallest files to
// most popular ranks; independent: identity. Popularity itself never moves.
FileCatalog couple_popularity_size(FileCatalog catalog, CorrelationMode mode);

struct ParetoSpec {
  double shape = 2.0;
  double scale = 300.0;
  double cap = 3600.0;
};

FileCatalog make_uniform_catalog(std::size_t n_files, double alpha,
                                 std::uint32_t chunks_per_file);

FileCatalog make_vod_catalog(std::size_t n_files, double alpha, const ParetoSpec& pareto,
                             double chunk_len_s, std::uint64_t rng_seed,
                             CorrelationMode mode = CorrelationMode::Independent);

}  // namespace glrusim
