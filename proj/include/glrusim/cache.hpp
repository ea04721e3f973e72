#pragma once

#include <cstdint>
#include <list>
#include <utility>
#include <vector>

#include "glrusim/catalog.hpp"

namespace glrusim {

enum class PolicyKind { LRU, GLRU };

// LRU tail handling: ChunkWise removes single chunks from the tail entry so
// occupancy stays exactly at capacity; WholeFile drops the entire tail entry
// and may leave slack.
enum class EvictionMode { ChunkWise, WholeFile };

struct RequestOutcome {
  std::uint32_t chunks_hit = 0;  // chunks of the requested file cached before the update
  std::vector<std::pair<FileId, std::uint32_t>> evicted;  // (file, chunks removed), tail order
};

// Recency-ordered chunk cache driving both replacement policies. Entries hold
// (file, cached chunk count); capacity is counted in unit-size chunks.
class ChunkCache {
 public:
  struct Entry {
    FileId file;
    std::uint32_t cached;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  ChunkCache(std::uint64_t capacity_chunks, std::vector<std::uint32_t> file_chunks,
             EvictionMode eviction = EvictionMode::ChunkWise);

  // Rebuilds a cache around a known entry sequence (head first). Used by the
  // stationary-distribution oracle and by tests.
  static ChunkCache from_entries(std::uint64_t capacity_chunks,
                                 std::vector<std::uint32_t> file_chunks,
                                 const std::vector<Entry>& head_to_tail,
                                 EvictionMode eviction = EvictionMode::ChunkWise);

  ChunkCache(const ChunkCache&) = delete;
  ChunkCache& operator=(const ChunkCache&) = delete;
  ChunkCache(ChunkCache&&) = default;
  ChunkCache& operator=(ChunkCache&&) = default;

  // Cached chunks of `file`, 0 if absent. Does not touch recency order.
  std::uint32_t lookup(FileId file) const;

  RequestOutcome request(FileId file, PolicyKind policy);

  // Resident entries, head (most recent) to tail.
  std::vector<Entry> snapshot_counts() const;

  std::uint64_t capacity() const { return capacity_; }
  std::uint64_t occupancy() const { return occupancy_; }
  // Total chunks ever added; reaching capacity marks the end of cache warm-up.
  std::uint64_t cumulative_insertions() const { return inserted_; }
  std::size_t n_files() const { return file_chunks_.size(); }
  std::uint32_t file_chunks(FileId file) const;

  // Throws std::logic_error if the internal structures disagree.
  void check_invariants() const;

 private:
  using EntryList = std::list<Entry>;

  std::uint64_t capacity_;
  EvictionMode eviction_;
  std::vector<std::uint32_t> file_chunks_;
  EntryList entries_;                         // head = most recently used
  std::vector<EntryList::iterator> index_;    // valid only where present_
  std::vector<char> present_;
  std::uint64_t occupancy_ = 0;
  std::uint64_t inserted_ = 0;
};

}  // namespace glrusim
