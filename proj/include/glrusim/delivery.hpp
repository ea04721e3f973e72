#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace glrusim {

// Service-side parameters of the VoD experiments. A chunk carries chunk_len_s
// seconds of video at video_MB_per_s megabytes per video-second, so the chunk
// service rate is processing_rate_MBps / (video_MB_per_s * chunk_len_s).
struct ServiceConfig {
  double chunk_len_s = 2.0;
  double processing_rate_MBps = 10.0;
  double video_MB_per_s = 3.13;
  double startup_delay_s = 3.0;

  double service_rate_chunks_per_s() const;
  void validate() const;
};

// Single-server FIFO chunk queue with exponential service. State is the time
// the server frees up; requests append their uncached chunks atomically.
class FifoQueue {
 public:
  explicit FifoQueue(double service_rate_chunks_per_s);

  // Appends one chunk per service draw at request_time; completions come back
  // in chunk order. Chunk k starts at max(request_time, previous completion).
  void enqueue(double request_time, std::span<const double> service_draws,
               std::vector<double>& completions_out);

  double server_free_time() const { return free_time_; }
  double service_rate() const { return rate_; }

 private:
  double rate_;
  double free_time_ = 0.0;
};

// Deterministic per-(request, chunk) exponential service draws. Keyed by
// indices rather than draw order so LRU/gLRU runs over one trace see the same
// service time for the same chunk regardless of which chunks were cached.
class ServiceSampler {
 public:
  ServiceSampler(std::uint64_t seed, double service_rate_chunks_per_s);

  double draw(std::uint64_t request_index, std::uint32_t chunk_index) const;

 private:
  std::uint64_t seed_;
  double rate_;
};

// Per-request download schedule. Chunks below cached_prefix were served from
// the cache and are ready at request_time; the rest carry FIFO completions.
struct DownloadTimeline {
  double request_time = 0.0;
  std::vector<double> ready;      // absolute availability time per chunk
  std::uint32_t cached_prefix = 0;

  bool from_cache(std::uint32_t chunk) const { return chunk < cached_prefix; }
};

double download_time(const DownloadTimeline& timeline);

// Playback recursion: play(1) = max(d_s, ready(1)), play(k) =
// max(play(k-1) + L, ready(k)); stall is play(s) minus the ideal finish
// d_s + (s-1) L. Offsets are measured from the request time.
double stall_duration(std::span<const double> ready_offsets, double startup_delay_s,
                      double chunk_len_s);
double stall_duration(const DownloadTimeline& timeline, double startup_delay_s,
                      double chunk_len_s);

}  // namespace glrusim
