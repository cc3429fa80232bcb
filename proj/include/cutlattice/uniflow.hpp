#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "cutlattice/model.hpp"

namespace cutlattice {

/// Where an event lives in the original process partition.
struct OriginalPosition {
  std::uint32_t chain = 0;  // 1-based process
  Count index = 0;          // 1-based position on that process

  friend bool operator==(OriginalPosition, OriginalPosition) = default;
};

/// A repartition of a computation's events into chains. When the chains
/// satisfy the uniflow property (every causal edge between chains points
/// from a lower chain to a higher one) the traversal module can enumerate
/// its consistent cuts in polynomial space.
///
/// The partition keeps a non-owning reference to its source computation,
/// which must outlive it. Uniflow clocks are filled by
/// `regenerate_vector_clocks`; until then `has_clocks()` is false.
class UniflowPartition {
 public:
  /// Uses the given chains verbatim (bottom chain first, each listed in
  /// chain order). Throws UsageError unless the chains cover every event
  /// exactly once and each chain is totally ordered by happened-before.
  /// The uniflow property itself is not checked; see `verify_uniflow`.
  static UniflowPartition from_chains(const Computation& comp,
                                      const std::vector<std::vector<EventId>>& chains);

  /// The process partition of `comp`, one chain per process.
  static UniflowPartition original(const Computation& comp);

  const Computation& source() const { return *source_; }

  std::size_t chain_count() const { return chains_.size(); }
  Count chain_length(std::size_t pos) const { return static_cast<Count>(chains_[pos].size()); }
  std::size_t event_count() const { return chain_of_.size(); }

  /// Source slots on chain position `pos`, in chain order.
  std::span<const std::uint32_t> chain(std::size_t pos) const { return chains_[pos]; }

  /// 1-based uniflow chain of an event.
  std::uint32_t chain_of(EventId id) const { return chain_of_[source_->slot_of(id)] + 1; }
  /// 1-based position of an event on its uniflow chain.
  Count position_of(EventId id) const { return position_[source_->slot_of(id)]; }

  /// Original (process, index) of the `index`-th event on chain `pos`.
  OriginalPosition back_map(std::size_t pos, Count index) const { return back_[pos][index - 1]; }

  bool has_clocks() const { return clocks_.size() == chains_.size(); }

  /// Uniflow vector clock of the `index`-th (1-based) event on chain `pos`.
  /// Requires `has_clocks()`.
  std::span<const Count> clock(std::size_t pos, Count index) const {
    const std::size_t width = chains_.size();
    return {clocks_[pos].data() + (index - 1) * width, width};
  }
  VectorClock uvc(EventId id) const;

  Cut full_cut() const;

 private:
  friend UniflowPartition build_uniflow_partition(const Computation& comp);
  friend UniflowPartition regenerate_vector_clocks(UniflowPartition p);
  friend UniflowPartition trivial_partition(const Computation& comp);

  static UniflowPartition assemble(const Computation& comp,
                                   std::vector<std::vector<std::uint32_t>> chains);

  const Computation* source_ = nullptr;
  std::vector<std::vector<std::uint32_t>> chains_;
  std::vector<std::uint32_t> chain_of_;  // by slot, 0-based chain position
  std::vector<Count> position_;          // by slot, 1-based
  std::vector<std::vector<OriginalPosition>> back_;
  std::vector<std::vector<Count>> clocks_;  // per chain, row-major events x chains
};

/// Online partitioner bookkeeping. Chain ids may be sparse while
/// partitioning; `build_uniflow_partition` compacts them.
class PartitionerState {
 public:
  explicit PartitionerState(const Computation& comp);

  /// Highest chain id handed out so far.
  std::uint32_t maxid() const { return maxid_; }
  /// Chain id an event was placed on, or 0 if not yet placed.
  std::uint32_t placed_chain(EventId id) const { return chain_of_[comp_->slot_of(id)]; }
  std::size_t nonempty_chains() const { return chains_.size(); }
  const std::unordered_map<std::uint32_t, std::vector<std::uint32_t>>& chains() const {
    return chains_;
  }

 private:
  friend std::uint32_t find_uniflow_chain(const Event& e, PartitionerState& state);
  friend UniflowPartition build_uniflow_partition(const Computation& comp);

  const Computation* comp_;
  std::uint32_t maxid_ = 0;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> chains_;  // id -> slots
  std::vector<std::uint32_t> chain_of_;                                    // by slot
};

/// Places one event on a uniflow chain and returns the chain id. Events must
/// arrive in an order consistent with happened-before; an event whose
/// predecessor is unplaced raises OrderingError.
std::uint32_t find_uniflow_chain(const Event& e, PartitionerState& state);

/// Feeds the computation's topological order through the online
/// partitioner. Clocks are not filled.
UniflowPartition build_uniflow_partition(const Computation& comp);

/// Fills per-event vector clocks over the partition's chains.
UniflowPartition regenerate_vector_clocks(UniflowPartition p);

/// True iff every chain is a chain and no event depends on an event of a
/// higher chain.
bool verify_uniflow(const UniflowPartition& p);

/// One event per chain, ordered by lexically sorting original clocks.
UniflowPartition trivial_partition(const Computation& comp);

/// Keeps chains above `k` from `g` and fills chains 1..k completely.
/// `k == 0` returns `g`. Throws UsageError if `g` is inconsistent.
Cut uniflow_fill(const Cut& g, std::uint32_t k, const UniflowPartition& p);

}  // namespace cutlattice
