#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cutlattice/model.hpp"
#include "cutlattice/traversal.hpp"

namespace cutlattice {

/// The distinct consistent cuts of one rank, ordered lexically.
using LevelSet = std::set<Cut, LexicalLess>;

/// 1-based processes whose next event can be added to `g` keeping it
/// consistent.
std::vector<std::uint32_t> enabled_events(const Cut& g, const Computation& comp);

struct LevelBfsOptions {
  /// Visit only ranks in [first, last]; expansion still starts at rank 0.
  Rank first_rank = 0;
  std::optional<Rank> last_rank;
  /// Cap on cuts held at once (current level plus the level being built).
  std::optional<std::size_t> max_stored_cuts;
};

struct LevelBfsStats {
  std::uint64_t cuts_visited = 0;
  Rank first_rank = 0;
  std::vector<std::uint64_t> cuts_per_rank;  // visited, index = rank - first_rank
  bool stopped_early = false;
  /// Widest level retained for expansion.
  std::size_t peak_stored_cuts = 0;
  /// Most cuts alive at once, including the level under construction.
  std::size_t peak_live_cuts = 0;
  /// Cuts expanded per rank, from rank 0 up to the last rank expanded.
  std::vector<std::uint64_t> expanded_per_rank;
  std::uint64_t expanded_cuts = 0;
  /// Successor cuts generated that were already in the next level.
  std::uint64_t duplicates_suppressed = 0;
};

/// Raised when the stored-cut cap is exceeded; carries the partial run.
class LevelBfsResourceError : public ResourceError {
 public:
  LevelBfsResourceError(const std::string& what, LevelBfsStats partial)
      : ResourceError(what), partial_(std::move(partial)) {}
  const LevelBfsStats& partial() const { return partial_; }

 private:
  LevelBfsStats partial_;
};

/// Level-by-level BFS over the original processes with set-based duplicate
/// suppression. Cuts within a rank are visited in lexical order.
LevelBfsStats traditional_bfs(const Computation& comp, const TraversalVisitor& visit,
                              const LevelBfsOptions& options = {});

/// Largest computation `brute_force_downsets` accepts.
inline constexpr std::size_t kBruteForceEventLimit = 25;

/// Every downset of the dependency order, grouped by rank and sorted
/// lexically. Extends sets event by event along a topological order, never
/// consulting vector clocks. Throws UsageError above the event limit.
std::vector<std::vector<Cut>> brute_force_downsets(const Computation& comp);

}  // namespace cutlattice
