#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cutlattice/errors.hpp"

namespace cutlattice {

using Count = std::uint32_t;
using Rank = std::uint32_t;

/// Opaque event identifier, unique within one computation.
struct EventId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(EventId, EventId) = default;
};

/// A vector of per-chain counts. Position `i` holds the entry for chain
/// `i + 1`, so chain 1 (the lowest chain) sits at position 0. Rendering
/// prints the highest chain first: `[c_n,...,c_1]`.
///
/// The tag parameter keeps vector clocks and cuts from mixing silently.
template <class Tag>
class ChainVector {
 public:
  ChainVector() = default;
  explicit ChainVector(std::size_t chains) : counts_(chains, 0) {}
  explicit ChainVector(std::vector<Count> counts) : counts_(std::move(counts)) {}

  /// Builds from display order (highest chain first).
  static ChainVector from_display(std::initializer_list<Count> display) {
    return ChainVector(std::vector<Count>(std::rbegin(display), std::rend(display)));
  }

  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  Count& operator[](std::size_t pos) { return counts_[pos]; }
  Count operator[](std::size_t pos) const { return counts_[pos]; }

  std::span<const Count> span() const { return counts_; }
  std::span<Count> span() { return counts_; }
  const std::vector<Count>& values() const { return counts_; }

  friend bool operator==(const ChainVector&, const ChainVector&) = default;

 private:
  std::vector<Count> counts_;
};

struct ClockTag {};
struct CutTag {};

/// Per-event vector clock over the chains of a partition.
using VectorClock = ChainVector<ClockTag>;

/// A (possibly inconsistent) global state: entry `i` is the number of
/// events included from chain `i + 1`.
using Cut = ChainVector<CutTag>;

bool happened_before(std::span<const Count> a, std::span<const Count> b);
inline bool happened_before(const VectorClock& a, const VectorClock& b) {
  return happened_before(a.span(), b.span());
}

/// True iff neither clock happened before the other. Identical clocks of
/// distinct events cannot occur, so callers must not pass an event's
/// clock against itself.
bool concurrent(std::span<const Count> a, std::span<const Count> b);
inline bool concurrent(const VectorClock& a, const VectorClock& b) {
  return concurrent(a.span(), b.span());
}

Rank rank(const Cut& cut);

/// Lexical order: the highest-numbered chain is the most significant.
std::strong_ordering lexical_compare(const Cut& g, const Cut& h);

struct LexicalLess {
  bool operator()(const Cut& g, const Cut& h) const { return lexical_compare(g, h) < 0; }
};

std::string to_string(std::span<const Count> counts);
template <class Tag>
std::string to_string(const ChainVector<Tag>& v) {
  return to_string(v.span());
}
template <class Tag>
std::ostream& operator<<(std::ostream& os, const ChainVector<Tag>& v) {
  return os << to_string(v);
}

struct Event {
  EventId id;
  std::uint32_t process = 0;           // 1-based chain in the original partition
  std::uint32_t index_on_process = 0;  // 1-based
  std::vector<EventId> deps;           // direct predecessors as recorded
  VectorClock vc;
};

/// One event as it appears in a trace, before clocks are known.
struct EventRecord {
  EventId id;
  std::uint32_t process = 0;
  std::vector<EventId> deps;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

/// A finite computation on `n` processes with vector clocks computed.
///
/// Events are addressed internally by slot, their position in the record
/// list handed to `from_records`. The order of records sharing a process
/// fixes program order on that process.
class Computation {
 public:
  Computation() = default;

  /// Validates the records and computes vector clocks in topological order.
  /// Throws InputError on out-of-range processes, duplicate or unknown ids,
  /// and dependency cycles.
  static Computation from_records(std::uint32_t processes, std::vector<EventRecord> records);

  std::uint32_t process_count() const { return processes_; }
  std::size_t size() const { return events_.size(); }

  std::size_t chain_count() const { return processes_; }
  Count chain_length(std::size_t pos) const { return static_cast<Count>(chains_[pos].size()); }
  std::span<const std::uint32_t> chain(std::size_t pos) const { return chains_[pos]; }

  const Event& at(std::size_t slot) const { return events_[slot]; }
  const std::vector<Event>& events() const { return events_; }
  std::size_t slot_of(EventId id) const;
  bool contains(EventId id) const { return slot_by_id_.count(id.value) != 0; }
  const Event& event(EventId id) const { return events_[slot_of(id)]; }

  /// The `index`-th (1-based) event on chain position `pos`.
  const Event& event_on(std::size_t pos, Count index) const {
    return events_[chains_[pos][index - 1]];
  }
  std::span<const Count> clock(std::size_t pos, Count index) const {
    return event_on(pos, index).vc.span();
  }

  /// Slots of the direct predecessors of `slot`, including the implicit
  /// previous event on the same process.
  std::span<const std::uint32_t> predecessors(std::size_t slot) const {
    return {pred_.data() + pred_offset_[slot], pred_.data() + pred_offset_[slot + 1]};
  }

  std::span<const std::uint32_t> topo_order() const { return topo_order_; }

  std::vector<EventRecord> records() const;
  Cut full_cut() const;

 private:
  std::uint32_t processes_ = 0;
  std::vector<Event> events_;
  std::vector<std::vector<std::uint32_t>> chains_;
  std::unordered_map<std::uint32_t, std::uint32_t> slot_by_id_;
  std::vector<std::uint32_t> pred_;
  std::vector<std::size_t> pred_offset_{0};
  std::vector<std::uint32_t> topo_order_;
};

/// Anything that exposes chains of events with clocks over those chains.
template <class P>
concept ChainPartition = requires(const P& p, std::size_t pos, Count k) {
  { p.chain_count() } -> std::convertible_to<std::size_t>;
  { p.chain_length(pos) } -> std::convertible_to<Count>;
  { p.clock(pos, k) } -> std::convertible_to<std::span<const Count>>;
};

/// A cut is consistent iff the clock of its last event on every chain is
/// componentwise bounded by the cut.
template <ChainPartition P>
bool is_consistent(const Cut& cut, const P& partition) {
  const std::size_t chains = partition.chain_count();
  if (cut.size() != chains) {
    throw UsageError("cut has " + std::to_string(cut.size()) + " entries, partition has " +
                     std::to_string(chains) + " chains");
  }
  for (std::size_t pos = 0; pos < chains; ++pos) {
    if (cut[pos] > partition.chain_length(pos)) {
      throw UsageError("cut " + to_string(cut) + " exceeds the length of chain " +
                       std::to_string(pos + 1));
    }
  }
  for (std::size_t pos = 0; pos < chains; ++pos) {
    if (cut[pos] == 0) continue;
    const auto vc = partition.clock(pos, cut[pos]);
    for (std::size_t j = 0; j < chains; ++j) {
      if (vc[j] > cut[j]) return false;
    }
  }
  return true;
}

}  // namespace cutlattice

template <>
struct std::hash<cutlattice::EventId> {
  std::size_t operator()(cutlattice::EventId id) const noexcept { return id.value; }
};

template <>
struct std::hash<cutlattice::Cut> {
  std::size_t operator()(const cutlattice::Cut& cut) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < cut.size(); ++i) {
      h = (h ^ cut[i]) * 1099511628211ull;
    }
    return h;
  }
};
