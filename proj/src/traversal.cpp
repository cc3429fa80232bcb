#include "cutlattice/traversal.hpp"

namespace cutlattice {

namespace {

void require_width(const Cut& g, const UniflowPartition& p, const char* what) {
  if (g.size() != p.chain_count()) {
    throw UsageError(std::string(what) + ": cut has " + std::to_string(g.size()) +
                     " entries, partition has " + std::to_string(p.chain_count()) + " chains");
  }
}

void require_clocks(const UniflowPartition& p, const char* what) {
  if (!p.has_clocks()) {
    throw UsageError(std::string(what) + ": uniflow clocks have not been regenerated");
  }
}

// Adds `d` events bottom-up, taking whole chains while they fit.
void fill_min(std::span<Count> g, Rank d, const UniflowPartition& p, std::uint64_t& ops) {
  for (std::size_t pos = 0; d > 0 && pos < g.size(); ++pos) {
    ++ops;
    const Count take = std::min<Rank>(d, p.chain_length(pos) - g[pos]);
    g[pos] += take;
    d -= take;
  }
}

// Recomputes rows [0, rows) top-down; row `rows` must already be valid.
// Only entries 0..pos of row pos are touched.
void refresh_rows(std::span<Count> proj, std::span<const Count> g, std::size_t rows,
                  const UniflowPartition& p, std::uint64_t& ops) {
  const std::size_t n = g.size();
  for (std::size_t pos = rows; pos-- > 0;) {
    Count* row = proj.data() + pos * n;
    const Count* above = pos + 1 < n ? proj.data() + (pos + 1) * n : nullptr;
    if (g[pos] == 0) {
      for (std::size_t k = 0; k <= pos; ++k) row[k] = above != nullptr ? above[k] : 0;
    } else {
      const auto vc = p.clock(pos, g[pos]);
      for (std::size_t k = 0; k <= pos; ++k) {
        row[k] = above != nullptr ? std::max(vc[k], above[k]) : vc[k];
      }
    }
    ops += pos + 1;
  }
}

Rank sum(std::span<const Count> g, std::uint64_t& ops) {
  Rank total = 0;
  for (Count c : g) total += c;
  ops += g.size();
  return total;
}

// Commits candidate K (entries below `pos`, plus the increment at `pos`) and
// fills it up to rank r.
void commit(std::span<Count> g, std::span<const Count> cand, std::size_t pos, Rank cand_rank,
            Rank r, const UniflowPartition& p, std::uint64_t& ops) {
  std::copy(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(pos), g.begin());
  g[pos] += 1;
  ops += pos;
  fill_min(g, r - cand_rank, p, ops);
}

// Successor search using projections. Returns the chain position that was
// incremented, or nullopt if `g` is the lexically largest cut of rank r.
std::optional<std::size_t> optimized_step(std::span<Count> g, Rank r, std::span<const Count> proj,
                                          std::span<Count> cand, const UniflowPartition& p,
                                          std::uint64_t& ops) {
  const std::size_t n = g.size();
  const Rank total = sum(g, ops);
  Rank below = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (pos >= 1 && g[pos] < p.chain_length(pos)) {
      const auto vc = p.clock(pos, g[pos] + 1);
      const Count* prow = proj.data() + pos * n;
      Rank cand_rank = total - below + 1;
      for (std::size_t k = 0; k < pos; ++k) {
        cand[k] = std::max(vc[k], prow[k]);
        cand_rank += cand[k];
      }
      ops += pos;
      if (cand_rank <= r) {
        commit(g, cand, pos, cand_rank, r, p, ops);
        return pos;
      }
    }
    below += g[pos];
  }
  return std::nullopt;
}

// Successor search recomputing the closure from every frontier event at or
// above the incremented chain.
std::optional<std::size_t> plain_step(std::span<Count> g, Rank r, std::span<Count> cand,
                                      const UniflowPartition& p, std::uint64_t& ops) {
  const std::size_t n = g.size();
  const Rank total = sum(g, ops);
  Rank below = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (pos >= 1 && g[pos] < p.chain_length(pos)) {
      std::fill(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(pos), 0);
      for (std::size_t j = pos; j < n; ++j) {
        const Count index = j == pos ? g[pos] + 1 : g[j];
        if (index == 0) continue;
        const auto vc = p.clock(j, index);
        for (std::size_t k = 0; k < pos; ++k) cand[k] = std::max(cand[k], vc[k]);
        ops += pos;
      }
      Rank cand_rank = total - below + 1;
      for (std::size_t k = 0; k < pos; ++k) cand_rank += cand[k];
      if (cand_rank <= r) {
        commit(g, cand, pos, cand_rank, r, p, ops);
        return pos;
      }
    }
    below += g[pos];
  }
  return std::nullopt;
}

}  // namespace

ProjectionMatrix compute_projections(const Cut& g, const UniflowPartition& p) {
  require_width(g, p, "compute_projections");
  require_clocks(p, "compute_projections");
  const std::size_t n = g.size();
  ProjectionMatrix m{n, std::vector<Count>(n * n, 0)};
  std::uint64_t ops = 0;
  refresh_rows(m.entries, g.span(), n, p, ops);
  for (std::size_t pos = 0; pos < n; ++pos) {
    for (std::size_t k = pos + 1; k < n; ++k) m.entries[pos * n + k] = g[k];
  }
  return m;
}

Cut get_min_cut(Cut g, Rank r, const UniflowPartition& p) {
  require_width(g, p, "get_min_cut");
  const Rank current = rank(g);
  if (r < current || r > p.event_count()) {
    throw UsageError("get_min_cut: rank " + std::to_string(r) + " outside [" +
                     std::to_string(current) + ", " + std::to_string(p.event_count()) + "]");
  }
  std::uint64_t ops = 0;
  fill_min(g.span(), r - current, p, ops);
  return g;
}

std::optional<Cut> get_successor(const Cut& g, Rank r, const UniflowPartition& p) {
  require_width(g, p, "get_successor");
  require_clocks(p, "get_successor");
  Cut k = g;
  Cut cand(g.size());
  std::uint64_t ops = 0;
  if (!plain_step(k.span(), r, cand.span(), p, ops)) return std::nullopt;
  return k;
}

std::optional<Cut> get_successor_optimized(const Cut& g, Rank r, const UniflowPartition& p) {
  require_width(g, p, "get_successor_optimized");
  require_clocks(p, "get_successor_optimized");
  const std::size_t n = g.size();
  std::vector<Count> proj(n * n, 0);
  std::uint64_t ops = 0;
  refresh_rows(proj, g.span(), n, p, ops);
  Cut k = g;
  Cut cand(n);
  if (!optimized_step(k.span(), r, proj, cand.span(), p, ops)) return std::nullopt;
  return k;
}

Remapper::Remapper(const UniflowPartition& p, SpaceMeter* meter)
    : partition_(&p),
      meter_(meter),
      indicator_(p.source().process_count(), 0),
      result_(p.source().process_count()) {
  if (meter_ != nullptr) {
    meter_->acquire_cut();
    meter_->acquire_numeric(indicator_.size());
  }
}

Remapper::~Remapper() {
  if (meter_ != nullptr) {
    meter_->release_cut();
    meter_->release_numeric(indicator_.size());
  }
}

const Cut& Remapper::apply(const Cut& gu) {
  const UniflowPartition& p = *partition_;
  const Computation& comp = p.source();
  std::fill(indicator_.begin(), indicator_.end(), 0);
  for (std::size_t pos = 0; pos < gu.size(); ++pos) {
    if (gu[pos] == 0) continue;
    const OriginalPosition orig = p.back_map(pos, gu[pos]);
    indicator_[orig.chain - 1] = std::max(indicator_[orig.chain - 1], orig.index);
  }
  const std::size_t n = indicator_.size();
  for (std::size_t k = 0; k < n; ++k) result_[k] = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (indicator_[j] == 0) continue;
    const auto vce = comp.clock(j, indicator_[j]);
    for (std::size_t k = 0; k < n; ++k) result_[k] = std::max(result_[k], vce[k]);
  }
  return result_;
}

Cut remap(const Cut& gu, const UniflowPartition& p) {
  require_clocks(p, "remap");
  if (!is_consistent(gu, p)) throw UsageError("remap needs a consistent cut, got " + to_string(gu));
  Remapper remapper(p);
  return remapper.apply(gu);
}

LexicalCursor::LexicalCursor(const UniflowPartition& p, TraversalOptions options, SpaceMeter* meter)
    : partition_(&p),
      options_(options),
      meter_(meter),
      current_(p.chain_count()),
      candidate_(p.chain_count()),
      proj_(p.chain_count() * p.chain_count(), 0) {
  require_clocks(p, "LexicalCursor");
  if (meter_ != nullptr) {
    meter_->acquire_cut();
    meter_->acquire_cut();
    meter_->acquire_numeric(proj_.size());
  }
}

LexicalCursor::~LexicalCursor() {
  if (meter_ != nullptr) {
    meter_->release_cut();
    meter_->release_cut();
    meter_->release_numeric(proj_.size());
  }
}

void LexicalCursor::seek(Rank r) {
  if (r > partition_->event_count()) {
    throw UsageError("rank " + std::to_string(r) + " exceeds event count " +
                     std::to_string(partition_->event_count()));
  }
  note_rank(r);
  ++min_cut_calls_;
  for (std::size_t pos = 0; pos < current_.size(); ++pos) current_[pos] = 0;
  fill_min(current_.span(), r, *partition_, ops_);
  rank_ = r;
  stale_rows_ = current_.size();
}

bool LexicalCursor::advance() {
  note_rank(rank_);
  ++successor_calls_;
  std::optional<std::size_t> changed;
  if (options_.plain_successor) {
    changed = plain_step(current_.span(), rank_, candidate_.span(), *partition_, ops_);
  } else {
    const std::size_t rows = options_.full_projection_recompute ? current_.size() : stale_rows_;
    refresh_rows(proj_, current_.span(), rows, *partition_, ops_);
    stale_rows_ = 0;
    changed = optimized_step(current_.span(), rank_, proj_, candidate_.span(), *partition_, ops_);
  }
  if (!changed) return false;
  // Rows above the incremented chain still describe the new cut.
  stale_rows_ = *changed + 1;
  return true;
}

TraversalStats traverse_rank_range(const UniflowPartition& p, Rank r1, Rank r2,
                                   const TraversalVisitor& visit, const TraversalOptions& options) {
  require_clocks(p, "traverse_rank_range");
  if (r1 > r2 || r2 > p.event_count()) {
    throw UsageError("rank range " + std::to_string(r1) + ".." + std::to_string(r2) +
                     " outside 0.." + std::to_string(p.event_count()));
  }
  TraversalStats stats;
  stats.first_rank = r1;
  stats.cuts_per_rank.assign(r2 - r1 + 1, 0);

  SpaceMeter meter;
  {
    LexicalCursor cursor(p, options, &meter);
    Remapper remapper(p, &meter);
    cursor.expect_ranks(r1, r2);
    for (Rank r = r1; r <= r2 && !stats.stopped_early; ++r) {
      cursor.seek(r);
      do {
        ++stats.cuts_visited;
        ++stats.cuts_per_rank[r - r1];
        const CutVisit v(cursor.current(), r, &remapper);
        if (visit && visit(v) == VisitAction::Stop) {
          stats.stopped_early = true;
          break;
        }
      } while (cursor.advance());
    }
    stats.min_cut_calls = cursor.min_cut_calls();
    stats.successor_calls = cursor.successor_calls();
    stats.calls_outside_range = cursor.calls_outside_range();
    stats.successor_ops = cursor.ops();
  }
  stats.peak_retained_cuts = meter.peak_cuts();
  stats.peak_aux_numeric = meter.peak_numeric();
  return stats;
}

TraversalStats traverse_bfs(const UniflowPartition& p, const TraversalVisitor& visit,
                            const TraversalOptions& options) {
  return traverse_rank_range(p, 0, static_cast<Rank>(p.event_count()), visit, options);
}

}  // namespace cutlattice
