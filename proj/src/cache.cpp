#include "glrusim/cache.hpp"

#include <algorithm>
#include <stdexcept>

namespace glrusim {

ChunkCache::ChunkCache(std::uint64_t capacity_chunks, std::vector<std::uint32_t> file_chunks,
                       EvictionMode eviction)
    : capacity_(capacity_chunks),
      eviction_(eviction),
      file_chunks_(std::move(file_chunks)),
      index_(file_chunks_.size()),
      present_(file_chunks_.size(), 0) {
  if (capacity_ == 0) throw std::invalid_argument("cache: capacity must be >= 1");
}

ChunkCache ChunkCache::from_entries(std::uint64_t capacity_chunks,
                                    std::vector<std::uint32_t> file_chunks,
                                    const std::vector<Entry>& head_to_tail,
                                    EvictionMode eviction) {
  ChunkCache cache(capacity_chunks, std::move(file_chunks), eviction);
  for (const Entry& e : head_to_tail) {
    if (e.file >= cache.file_chunks_.size())
      throw std::out_of_range("cache: unknown file id in entry list");
    if (e.cached == 0 || e.cached > cache.file_chunks_[e.file])
      throw std::invalid_argument("cache: entry chunk count out of range");
    if (cache.present_[e.file])
      throw std::invalid_argument("cache: duplicate file in entry list");
    cache.entries_.push_back(e);
    cache.index_[e.file] = std::prev(cache.entries_.end());
    cache.present_[e.file] = 1;
    cache.occupancy_ += e.cached;
  }
  if (cache.occupancy_ > cache.capacity_)
    throw std::invalid_argument("cache: entries exceed capacity");
  cache.inserted_ = cache.occupancy_;
  return cache;
}

std::uint32_t ChunkCache::lookup(FileId file) const {
  if (file >= file_chunks_.size()) throw std::out_of_range("cache: unknown file id");
  return present_[file] ? index_[file]->cached : 0;
}

std::uint32_t ChunkCache::file_chunks(FileId file) const {
  if (file >= file_chunks_.size()) throw std::out_of_range("cache: unknown file id");
  return file_chunks_[file];
}

RequestOutcome ChunkCache::request(FileId file, PolicyKind policy) {
  if (file >= file_chunks_.size()) throw std::out_of_range("cache: unknown file id");
  const std::uint32_t size = file_chunks_[file];
  if (size == 0) throw std::invalid_argument("cache: file has zero chunks");

  RequestOutcome out;
  std::uint32_t prev = 0;
  if (present_[file]) {
    auto it = index_[file];
    prev = it->cached;
    entries_.splice(entries_.begin(), entries_, it);
  } else {
    entries_.push_front(Entry{file, 0});
    index_[file] = entries_.begin();
    present_[file] = 1;
  }
  out.chunks_hit = prev;

  const std::uint32_t target =
      policy == PolicyKind::LRU ? size : std::min<std::uint32_t>(prev + 1, size);
  entries_.front().cached = target;
  occupancy_ += target - prev;
  inserted_ += target - prev;

  while (occupancy_ > capacity_) {
    auto tail = std::prev(entries_.end());
    const std::uint64_t need = occupancy_ - capacity_;
    const std::uint32_t take =
        eviction_ == EvictionMode::WholeFile
            ? tail->cached
            : static_cast<std::uint32_t>(std::min<std::uint64_t>(need, tail->cached));
    tail->cached -= take;
    occupancy_ -= take;
    out.evicted.emplace_back(tail->file, take);
    if (tail->cached == 0) {
      present_[tail->file] = 0;
      entries_.erase(tail);
    }
  }
  return out;
}

std::vector<ChunkCache::Entry> ChunkCache::snapshot_counts() const {
  return {entries_.begin(), entries_.end()};
}

void ChunkCache::check_invariants() const {
  std::uint64_t total = 0;
  std::vector<char> seen(file_chunks_.size(), 0);
  for (auto it = entries_.begin(); it != entries_.end(); ++it) {
    if (it->cached == 0) throw std::logic_error("cache: zero-chunk entry");
    if (it->cached > file_chunks_[it->file])
      throw std::logic_error("cache: entry larger than file");
    if (seen[it->file]) throw std::logic_error("cache: duplicate entry");
    seen[it->file] = 1;
    if (!present_[it->file] || index_[it->file] != it)
      throw std::logic_error("cache: index out of sync");
    total += it->cached;
  }
  for (std::size_t f = 0; f < present_.size(); ++f) {
    if (present_[f] && !seen[f]) throw std::logic_error("cache: stale index entry");
  }
  if (total != occupancy_) throw std::logic_error("cache: occupancy out of sync");
  if (occupancy_ > capacity_) throw std::logic_error("cache: over capacity");
}

}  // namespace glrusim
