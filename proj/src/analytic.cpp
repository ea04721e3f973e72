#include "glrusim/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace glrusim {

namespace {

// sum_{j=1..s} x^j with x = 1 - e^(-q t), via the geometric closed form
// x (1 - x^s) / (1 - x). The x -> 1 branch degenerates to s.
double geometric_chunk_sum(double q, double t, std::uint32_t s) {
  const double ex = std::exp(-q * t);  // 1 - x
  if (ex == 0.0) return static_cast<double>(s);
  const double x = -std::expm1(-q * t);
  if (x == 0.0) return 0.0;
  const double one_minus_xs = -std::expm1(static_cast<double>(s) * std::log1p(-ex));
  return x * one_minus_xs / ex;
}

double expected_occupancy(PolicyKind policy, const std::vector<double>& q,
                          const std::vector<std::uint32_t>& s, double t) {
  double total = 0.0;
  if (policy == PolicyKind::LRU) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      total += -std::expm1(-q[i] * t) * static_cast<double>(s[i]);
    }
  } else {
    for (std::size_t i = 0; i < q.size(); ++i) {
      total += geometric_chunk_sum(q[i], t, s[i]);
    }
  }
  return total;
}

ApproxModel solve(PolicyKind policy, const FileCatalog& catalog, std::uint64_t capacity,
                  double tol) {
  catalog.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("solver: tol must be > 0");
  const std::uint64_t total = catalog.total_chunks();
  if (capacity == 0) throw std::invalid_argument("solver: capacity must be > 0");
  if (capacity >= total)
    throw std::invalid_argument("solver: capacity must be below total chunks");

  ApproxModel model;
  model.policy = policy;
  model.capacity = capacity;
  model.q = catalog.popularity;
  model.s = catalog.chunks;

  const double target = static_cast<double>(capacity);
  auto objective = [&](double t) {
    return expected_occupancy(policy, model.q, model.s, t) - target;
  };

  // The objective rises monotonically from -C at t=0 toward total-C > 0, so a
  // doubled bracket plus bisection always pins the unique root.
  double lo = 0.0;
  double hi = 1.0 / catalog.popularity.front();
  int guard = 0;
  while (objective(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 1100) throw std::runtime_error("solver: bracketing failed");
  }

  double mid = hi;
  double res = objective(mid);
  for (int iter = 0; iter < 600 && std::abs(res) > tol; ++iter) {
    mid = 0.5 * (lo + hi);
    res = objective(mid);
    (res < 0.0 ? lo : hi) = mid;
  }
  if (std::abs(res) > tol)
    throw std::runtime_error("solver: residual " + std::to_string(std::abs(res)) +
                             " above tolerance");
  model.t_c = mid;
  model.residual = std::abs(res);
  return model;
}

void check_file(const ApproxModel& model, FileId file) {
  if (file >= model.q.size()) throw std::out_of_range("model: unknown file id");
}

double any_chunk_probability(const ApproxModel& model, FileId file) {
  return -std::expm1(-model.q[file] * model.t_c);
}

}  // namespace

ApproxModel solve_tc_lru(const FileCatalog& catalog, std::uint64_t capacity, double tol) {
  return solve(PolicyKind::LRU, catalog, capacity, tol);
}

ApproxModel solve_tc_glru(const FileCatalog& catalog, std::uint64_t capacity, double tol) {
  return solve(PolicyKind::GLRU, catalog, capacity, tol);
}

double hit_at_least_j(const ApproxModel& model, FileId file, std::uint32_t j) {
  check_file(model, file);
  if (model.policy != PolicyKind::GLRU)
    throw std::invalid_argument("hit_at_least_j: requires a gLRU model");
  if (j < 1 || j > model.s[file])
    throw std::out_of_range("hit_at_least_j: j outside 1..s(file)");
  return std::pow(any_chunk_probability(model, file), static_cast<double>(j));
}

double lru_hit_probability(const ApproxModel& model, FileId file) {
  check_file(model, file);
  if (model.policy != PolicyKind::LRU)
    throw std::invalid_argument("lru_hit_probability: requires an LRU model");
  return any_chunk_probability(model, file);
}

double expected_cached_chunks(const ApproxModel& model, FileId file) {
  check_file(model, file);
  if (model.policy != PolicyKind::GLRU)
    throw std::invalid_argument("expected_cached_chunks: requires a gLRU model");
  return geometric_chunk_sum(model.q[file], model.t_c, model.s[file]);
}

ChunkDistribution chunk_distribution(const ApproxModel& model, FileId file) {
  check_file(model, file);
  if (model.policy != PolicyKind::GLRU)
    throw std::invalid_argument("chunk_distribution: requires a gLRU model");
  const std::uint32_t s = model.s[file];
  const double x = any_chunk_probability(model, file);

  ChunkDistribution dist;
  dist.file = file;
  dist.probs.resize(s + 1);
  dist.probs[0] = std::exp(-model.q[file] * model.t_c);  // 1 - h_1
  double power = x;                                      // x^j, telescoping h_j - h_{j+1}
  for (std::uint32_t j = 1; j < s; ++j) {
    const double next = power * x;
    dist.probs[j] = power - next;
    power = next;
  }
  dist.probs[s] = power;
  return dist;
}

std::vector<Fig1Row> figure1_curves(const FileCatalog& catalog, std::uint64_t capacity,
                                    double tol) {
  const ApproxModel lru = solve_tc_lru(catalog, capacity, tol);
  const ApproxModel glru = solve_tc_glru(catalog, capacity, tol);
  std::vector<Fig1Row> rows(catalog.n_files());
  for (FileId f = 0; f < rows.size(); ++f) {
    rows[f].lru_any = lru_hit_probability(lru, f);
    rows[f].glru_any = hit_at_least_j(glru, f, 1);
    rows[f].glru_full = hit_at_least_j(glru, f, glru.s[f]);
  }
  return rows;
}

}  // namespace glrusim
