#include "glrusim/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "glrusim/rng.hpp"

namespace glrusim {

std::uint64_t FileCatalog::total_chunks() const {
  std::uint64_t total = 0;
  for (auto s : chunks) total += s;
  return total;
}

double FileCatalog::total_popularity() const {
  return std::accumulate(popularity.begin(), popularity.end(), 0.0);
}

double FileCatalog::mean_chunks_per_request() const {
  double weighted = 0.0;
  for (std::size_t i = 0; i < popularity.size(); ++i) {
    weighted += popularity[i] * static_cast<double>(chunks[i]);
  }
  return weighted / total_popularity();
}

void FileCatalog::validate() const {
  if (popularity.empty()) throw std::invalid_argument("catalog: no files");
  if (chunks.size() != popularity.size())
    throw std::invalid_argument("catalog: popularity/chunks size mismatch");
  for (std::size_t i = 0; i < popularity.size(); ++i) {
    if (!(popularity[i] > 0.0))
      throw std::invalid_argument("catalog: popularity must be positive");
    if (i > 0 && popularity[i] > popularity[i - 1])
      throw std::invalid_argument("catalog: popularity must be non-increasing in rank");
    if (chunks[i] == 0) throw std::invalid_argument("catalog: chunk count must be >= 1");
  }
  if (!video_length_s.empty()) {
    if (video_length_s.size() != popularity.size())
      throw std::invalid_argument("catalog: video length vector size mismatch");
    for (double len : video_length_s) {
      if (!(len > 0.0)) throw std::invalid_argument("catalog: lengths must be positive");
    }
    // chunk_len_s == 0 marks lengths as metadata only (e.g. a catalog loaded
    // from CSV before re-chunking); consistency is checked once it is set.
    if (chunk_len_s > 0.0) {
      for (std::size_t i = 0; i < video_length_s.size(); ++i) {
        auto want = static_cast<std::uint32_t>(
            std::max(1.0, std::ceil(video_length_s[i] / chunk_len_s)));
        if (chunks[i] != want)
          throw std::invalid_argument("catalog: chunks inconsistent with lengths");
      }
    }
  }
}

std::vector<double> make_zipf_popularity(std::size_t n_files, double alpha) {
  if (n_files == 0) throw std::invalid_argument("zipf: n_files must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("zipf: alpha must be > 0");
  std::vector<double> q(n_files);
  for (std::size_t i = 0; i < n_files; ++i) {
    q[i] = std::pow(static_cast<double>(i + 1), -alpha);
  }
  return q;
}

std::vector<double> make_censored_pareto_lengths(std::size_t n_files, double shape,
                                                 double scale, double cap,
                                                 std::uint64_t rng_seed) {
  if (!(shape > 1.0)) throw std::invalid_argument("pareto: shape must be > 1");
  if (!(scale > 0.0)) throw std::invalid_argument("pareto: scale must be > 0");
  if (!(cap > scale)) throw std::invalid_argument("pareto: cap must exceed scale");
  std::vector<double> lengths(n_files);
  std::mt19937_64 gen(rng_seed);
  for (auto& len : lengths) {
    double x = pareto_draw(gen, shape, scale);
    while (x > cap) x = pareto_draw(gen, shape, scale);
    len = x;
  }
  return lengths;
}

std::vector<std::uint32_t> chunkize(const std::vector<double>& lengths_s,
                                    double chunk_len_s) {
  if (!(chunk_len_s > 0.0)) throw std::invalid_argument("chunkize: chunk length must be > 0");
  std::vector<std::uint32_t> counts(lengths_s.size());
  for (std::size_t i = 0; i < lengths_s.size(); ++i) {
    counts[i] = static_cast<std::uint32_t>(
        std::max(1.0, std::ceil(lengths_s[i] / chunk_len_s)));
  }
  return counts;
}

FileCatalog couple_popularity_size(FileCatalog catalog, CorrelationMode mode) {
  catalog.validate();
  if (mode == CorrelationMode::Independent) return catalog;

  std::vector<std::size_t> order(catalog.n_files());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (mode == CorrelationMode::Positive) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return catalog.chunks[a] > catalog.chunks[b];
    });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return catalog.chunks[a] < catalog.chunks[b];
    });
  }

  std::vector<std::uint32_t> chunks(catalog.n_files());
  std::vector<double> lengths(catalog.video_length_s.empty() ? 0 : catalog.n_files());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    chunks[rank] = catalog.chunks[order[rank]];
    if (!lengths.empty()) lengths[rank] = catalog.video_length_s[order[rank]];
  }
  catalog.chunks = std::move(chunks);
  catalog.video_length_s = std::move(lengths);
  return catalog;
}

FileCatalog make_uniform_catalog(std::size_t n_files, double alpha,
                                 std::uint32_t chunks_per_file) {
  if (chunks_per_file == 0)
    throw std::invalid_argument("catalog: chunks_per_file must be >= 1");
  FileCatalog catalog;
  catalog.popularity = make_zipf_popularity(n_files, alpha);
  catalog.chunks.assign(n_files, chunks_per_file);
  return catalog;
}

FileCatalog make_vod_catalog(std::size_t n_files, double alpha, const ParetoSpec& pareto,
                             double chunk_len_s, std::uint64_t rng_seed,
                             CorrelationMode mode) {
  FileCatalog catalog;
  catalog.popularity = make_zipf_popularity(n_files, alpha);
  catalog.video_length_s =
      make_censored_pareto_lengths(n_files, pareto.shape, pareto.scale, pareto.cap, rng_seed);
  catalog.chunk_len_s = chunk_len_s;
  catalog.chunks = chunkize(catalog.video_length_s, chunk_len_s);
  return couple_popularity_size(std::move(catalog), mode);
}

}  // namespace glrusim
