#include "glrusim/delivery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "glrusim/rng.hpp"

namespace glrusim {

double ServiceConfig::service_rate_chunks_per_s() const {
  return processing_rate_MBps / (video_MB_per_s * chunk_len_s);
}

void ServiceConfig::validate() const {
  if (!(chunk_len_s > 0.0) || !(processing_rate_MBps > 0.0) || !(video_MB_per_s > 0.0))
    throw std::invalid_argument("service config: rates and chunk length must be > 0");
  if (startup_delay_s < 0.0)
    throw std::invalid_argument("service config: startup delay must be >= 0");
}

FifoQueue::FifoQueue(double service_rate_chunks_per_s) : rate_(service_rate_chunks_per_s) {
  if (!(rate_ > 0.0)) throw std::invalid_argument("queue: service rate must be > 0");
}

void FifoQueue::enqueue(double request_time, std::span<const double> service_draws,
                        std::vector<double>& completions_out) {
  completions_out.clear();
  completions_out.reserve(service_draws.size());
  for (double dt : service_draws) {
    free_time_ = std::max(request_time, free_time_) + dt;
    completions_out.push_back(free_time_);
  }
}

ServiceSampler::ServiceSampler(std::uint64_t seed, double service_rate_chunks_per_s)
    : seed_(seed), rate_(service_rate_chunks_per_s) {
  if (!(rate_ > 0.0)) throw std::invalid_argument("sampler: service rate must be > 0");
}

double ServiceSampler::draw(std::uint64_t request_index, std::uint32_t chunk_index) const {
  SplitMix64 stream(mix_seed(mix_seed(seed_, request_index), chunk_index));
  return -std::log(to_unit_open(stream.next())) / rate_;
}

double download_time(const DownloadTimeline& timeline) {
  double latest = timeline.request_time;
  for (double r : timeline.ready) latest = std::max(latest, r);
  return latest - timeline.request_time;
}

double stall_duration(std::span<const double> ready_offsets, double startup_delay_s,
                      double chunk_len_s) {
  if (ready_offsets.empty()) return 0.0;
  // Ideal finish accumulates the same way play does, so a never-late
  // timeline yields exactly zero.
  double play = std::max(startup_delay_s, ready_offsets[0]);
  double ideal = startup_delay_s;
  for (std::size_t k = 1; k < ready_offsets.size(); ++k) {
    play = std::max(play + chunk_len_s, ready_offsets[k]);
    ideal += chunk_len_s;
  }
  return play - ideal;
}

double stall_duration(const DownloadTimeline& timeline, double startup_delay_s,
                      double chunk_len_s) {
  std::vector<double> offsets(timeline.ready.size());
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    offsets[k] = timeline.ready[k] - timeline.request_time;
  }
  return stall_duration(std::span<const double>(offsets), startup_delay_s, chunk_len_s);
}

}  // namespace glrusim
