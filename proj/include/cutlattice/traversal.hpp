#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cutlattice/model.hpp"
#include "cutlattice/uniflow.hpp"

namespace cutlattice {

/// Row `i` holds the combined causal projection of a cut's events on
/// chains `i..n_u`. Entries at or below the row's own chain carry the
/// accumulated clock maximum; entries above it equal the cut itself.
struct ProjectionMatrix {
  std::size_t chains = 0;
  std::vector<Count> entries;  // row-major

  std::span<const Count> row(std::size_t pos) const {
    return {entries.data() + pos * chains, chains};
  }
};

ProjectionMatrix compute_projections(const Cut& g, const UniflowPartition& p);

/// Lexically smallest consistent cut of rank `r` that is at least `g`.
/// Throws UsageError when `r` is below rank(g) or above the event count.
Cut get_min_cut(Cut g, Rank r, const UniflowPartition& p);

/// Lexical successor of `g` among consistent cuts of rank `r`, or nullopt
/// when `g` is the largest. Recomputes the dependency closure per chain.
std::optional<Cut> get_successor(const Cut& g, Rank r, const UniflowPartition& p);

/// Same contract as `get_successor`, closing dependencies through the
/// projection matrix: O(n_u^2) instead of O(n_u^3).
std::optional<Cut> get_successor_optimized(const Cut& g, Rank r, const UniflowPartition& p);

/// Maps a consistent uniflow cut to the cut over the original processes
/// holding the same events. Throws UsageError if `gu` is inconsistent.
Cut remap(const Cut& gu, const UniflowPartition& p);

/// Counts live cut buffers and auxiliary numeric entries held by a
/// traversal, keeping the peak of each.
class SpaceMeter {
 public:
  void acquire_cut() { peak_cuts_ = std::max(peak_cuts_, ++cuts_); }
  void release_cut() { --cuts_; }
  void acquire_numeric(std::size_t n) { peak_numeric_ = std::max(peak_numeric_, numeric_ += n); }
  void release_numeric(std::size_t n) { numeric_ -= n; }

  std::size_t peak_cuts() const { return peak_cuts_; }
  std::size_t peak_numeric() const { return peak_numeric_; }

 private:
  std::size_t cuts_ = 0;
  std::size_t peak_cuts_ = 0;
  std::size_t numeric_ = 0;
  std::size_t peak_numeric_ = 0;
};

/// Reusable uniflow-to-original mapping with preallocated buffers.
class Remapper {
 public:
  Remapper(const UniflowPartition& p, SpaceMeter* meter = nullptr);
  ~Remapper();
  Remapper(const Remapper&) = delete;
  Remapper& operator=(const Remapper&) = delete;

  /// Result stays valid until the next call. No consistency check.
  const Cut& apply(const Cut& gu);

 private:
  const UniflowPartition* partition_;
  SpaceMeter* meter_;
  std::vector<Count> indicator_;
  Cut result_;
};

/// What a visitor sees for each enumerated cut.
class CutVisit {
 public:
  CutVisit(const Cut& cut, Rank rank, Remapper* remapper)
      : cut_(&cut), rank_(rank), remapper_(remapper) {}

  /// The cut in the enumerator's own chain numbering.
  const Cut& cut() const { return *cut_; }
  Rank rank() const { return rank_; }
  /// The same cut over the original processes, computed on first request.
  const Cut& original() const {
    if (remapper_ == nullptr) return *cut_;
    if (original_ == nullptr) original_ = &remapper_->apply(*cut_);
    return *original_;
  }

 private:
  const Cut* cut_;
  Rank rank_;
  Remapper* remapper_;
  mutable const Cut* original_ = nullptr;
};

enum class VisitAction { Continue, Stop };

using TraversalVisitor = std::function<VisitAction(const CutVisit&)>;

struct TraversalOptions {
  /// Recompute every projection row on each successor call instead of only
  /// the rows at or below the chain that produced the previous successor.
  bool full_projection_recompute = false;
  /// Use the cubic closure of `get_successor` instead of projections.
  bool plain_successor = false;
};

struct TraversalStats {
  std::uint64_t cuts_visited = 0;
  Rank first_rank = 0;
  std::vector<std::uint64_t> cuts_per_rank;  // index = rank - first_rank
  bool stopped_early = false;
  std::uint64_t min_cut_calls = 0;
  std::uint64_t successor_calls = 0;
  /// Min-cut or successor calls whose rank argument fell outside the
  /// requested range.
  std::uint64_t calls_outside_range = 0;
  /// Elementary vector-entry operations spent inside successor searches,
  /// projection refreshes and min-cut fills.
  std::uint64_t successor_ops = 0;
  std::size_t peak_retained_cuts = 0;
  std::size_t peak_aux_numeric = 0;
};

/// Walks the consistent cuts of one rank at a time in lexical order over a
/// uniflow partition with regenerated clocks, holding two cut buffers and
/// a projection matrix.
class LexicalCursor {
 public:
  LexicalCursor(const UniflowPartition& p, TraversalOptions options, SpaceMeter* meter = nullptr);
  ~LexicalCursor();
  LexicalCursor(const LexicalCursor&) = delete;
  LexicalCursor& operator=(const LexicalCursor&) = delete;

  /// Positions on the lexically smallest consistent cut of rank `r`.
  void seek(Rank r);
  /// Moves to the lexical successor at the current rank; false at the end.
  bool advance();

  const Cut& current() const { return current_; }
  Rank current_rank() const { return rank_; }

  std::uint64_t min_cut_calls() const { return min_cut_calls_; }
  std::uint64_t successor_calls() const { return successor_calls_; }
  std::uint64_t ops() const { return ops_; }

  /// Calls whose rank falls outside [lo, hi] are tallied separately.
  void expect_ranks(Rank lo, Rank hi) {
    expected_lo_ = lo;
    expected_hi_ = hi;
  }
  std::uint64_t calls_outside_range() const { return calls_outside_range_; }

 private:
  void note_rank(Rank r) {
    if (r < expected_lo_ || r > expected_hi_) ++calls_outside_range_;
  }

  const UniflowPartition* partition_;
  TraversalOptions options_;
  SpaceMeter* meter_;
  Cut current_;
  Cut candidate_;
  std::vector<Count> proj_;
  std::size_t stale_rows_ = 0;  // rows [0, stale_rows_) need recomputing
  Rank rank_ = 0;
  std::uint64_t min_cut_calls_ = 0;
  std::uint64_t successor_calls_ = 0;
  std::uint64_t ops_ = 0;
  Rank expected_lo_ = 0;
  Rank expected_hi_ = ~Rank{0};
  std::uint64_t calls_outside_range_ = 0;
};

/// Visits every consistent cut once: the empty cut, then each rank in
/// lexical order. A visitor returning Stop ends the whole traversal.
TraversalStats traverse_bfs(const UniflowPartition& p, const TraversalVisitor& visit,
                            const TraversalOptions& options = {});

/// Visits exactly the consistent cuts with rank in [r1, r2], starting
/// each rank from the empty cut.
TraversalStats traverse_rank_range(const UniflowPartition& p, Rank r1, Rank r2,
                                   const TraversalVisitor& visit,
                                   const TraversalOptions& options = {});

}  // namespace cutlattice
