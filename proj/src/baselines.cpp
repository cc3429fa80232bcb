#include "cutlattice/baselines.hpp"

#include <algorithm>

namespace cutlattice {

namespace {

// True if the next event of chain `pos` can join `g`.
bool is_enabled(const Cut& g, std::size_t pos, const Computation& comp) {
  if (g[pos] >= comp.chain_length(pos)) return false;
  const auto vc = comp.clock(pos, g[pos] + 1);
  for (std::size_t j = 0; j < vc.size(); ++j) {
    if (j != pos && vc[j] > g[j]) return false;
  }
  return true;
}

}  // namespace

std::vector<std::uint32_t> enabled_events(const Cut& g, const Computation& comp) {
  const std::size_t n = comp.process_count();
  if (g.size() != n) {
    throw UsageError("enabled_events: cut has " + std::to_string(g.size()) + " entries, expected " +
                     std::to_string(n));
  }
  std::vector<std::uint32_t> out;
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (is_enabled(g, pos, comp)) out.push_back(static_cast<std::uint32_t>(pos + 1));
  }
  return out;
}

LevelBfsStats traditional_bfs(const Computation& comp, const TraversalVisitor& visit,
                              const LevelBfsOptions& options) {
  const Rank total = static_cast<Rank>(comp.size());
  const Rank last = options.last_rank.value_or(total);
  if (options.first_rank > last || last > total) {
    throw UsageError("rank range " + std::to_string(options.first_rank) + ".." +
                     std::to_string(last) + " outside 0.." + std::to_string(total));
  }
  LevelBfsStats stats;
  stats.first_rank = options.first_rank;
  stats.cuts_per_rank.assign(last - options.first_rank + 1, 0);

  auto over_cap = [&](std::size_t live) {
    return options.max_stored_cuts && live > *options.max_stored_cuts;
  };

  LevelSet level;
  level.insert(Cut(comp.process_count()));
  stats.peak_stored_cuts = stats.peak_live_cuts = 1;

  for (Rank r = 0;; ++r) {
    if (r >= options.first_rank) {
      for (const Cut& cut : level) {
        ++stats.cuts_visited;
        ++stats.cuts_per_rank[r - options.first_rank];
        if (visit && visit(CutVisit(cut, r, nullptr)) == VisitAction::Stop) {
          stats.stopped_early = true;
          return stats;
        }
      }
    }
    if (r == last) break;

    LevelSet next;
    std::uint64_t expanded = 0;
    for (const Cut& cut : level) {
      ++expanded;
      for (std::size_t pos = 0; pos < cut.size(); ++pos) {
        if (!is_enabled(cut, pos, comp)) continue;
        Cut succ = cut;
        ++succ[pos];
        if (!next.insert(std::move(succ)).second) {
          ++stats.duplicates_suppressed;
          continue;
        }
        const std::size_t live = level.size() + next.size();
        stats.peak_live_cuts = std::max(stats.peak_live_cuts, live);
        if (over_cap(live)) {
          stats.expanded_per_rank.push_back(expanded);
          stats.expanded_cuts += expanded;
          throw LevelBfsResourceError("stored-cut cap of " + std::to_string(*options.max_stored_cuts) +
                                          " exceeded while building rank " + std::to_string(r + 1),
                                      stats);
        }
      }
    }
    stats.expanded_per_rank.push_back(expanded);
    stats.expanded_cuts += expanded;
    level = std::move(next);
    stats.peak_stored_cuts = std::max(stats.peak_stored_cuts, level.size());
  }
  return stats;
}

namespace {

struct DownsetWalk {
  const Computation& comp;
  std::span<const std::uint32_t> order;
  std::vector<bool> included;
  Cut counts;
  std::vector<std::vector<Cut>> by_rank;

  void extend(std::size_t depth, Rank size) {
    if (depth == order.size()) {
      by_rank[size].push_back(counts);
      return;
    }
    const std::uint32_t slot = order[depth];
    extend(depth + 1, size);
    for (std::uint32_t pred : comp.predecessors(slot)) {
      if (!included[pred]) return;
    }
    const std::size_t pos = comp.at(slot).process - 1;
    included[slot] = true;
    ++counts[pos];
    extend(depth + 1, size + 1);
    --counts[pos];
    included[slot] = false;
  }
};

}  // namespace

std::vector<std::vector<Cut>> brute_force_downsets(const Computation& comp) {
  if (comp.size() > kBruteForceEventLimit) {
    throw UsageError("brute force enumeration is limited to " +
                     std::to_string(kBruteForceEventLimit) + " events, computation has " +
                     std::to_string(comp.size()));
  }
  DownsetWalk walk{comp, comp.topo_order(), std::vector<bool>(comp.size(), false),
                   Cut(comp.process_count()), std::vector<std::vector<Cut>>(comp.size() + 1)};
  walk.extend(0, 0);
  for (auto& cuts : walk.by_rank) std::sort(cuts.begin(), cuts.end(), LexicalLess{});
  return std::move(walk.by_rank);
}

}  // namespace cutlattice
