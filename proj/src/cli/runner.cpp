#include "cutlattice/cli/runner.hpp"

#include <algorithm>
#include <chrono>

namespace cutlattice::cli {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Tracks the rank-minimal, then lexically minimal, matching cut. Returns
// Stop once a later rank begins after a match.
struct MatchTracker {
  const PredicateSpec* predicate;
  std::optional<Cut> best;
  Rank best_rank = 0;

  VisitAction offer(const Cut& original, Rank r, bool& matched) {
    matched = false;
    if (best && r > best_rank) return VisitAction::Stop;
    if (!predicate->matches(original, r)) return VisitAction::Continue;
    matched = true;
    if (!best || LexicalLess{}(original, *best)) {
      best = original;
      best_rank = r;
    }
    return VisitAction::Continue;
  }
};

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "uniflow") return Algorithm::Uniflow;
  if (name == "traditional") return Algorithm::Traditional;
  if (name == "brute") return Algorithm::Brute;
  throw UsageError("unknown algorithm '" + std::string(name) + "' (uniflow, traditional, brute)");
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Uniflow:
      return "uniflow";
    case Algorithm::Traditional:
      return "traditional";
    case Algorithm::Brute:
      return "brute";
  }
  return "?";
}

OutputMode parse_output_mode(std::string_view name) {
  if (name == "count") return OutputMode::Count;
  if (name == "list") return OutputMode::List;
  if (name == "first-match") return OutputMode::FirstMatch;
  throw UsageError("unknown output mode '" + std::string(name) + "' (count, list, first-match)");
}

TimedPartition partition_timed(const Computation& comp) {
  const auto start = Clock::now();
  UniflowPartition p = regenerate_vector_clocks(build_uniflow_partition(comp));
  return {std::move(p), since(start)};
}

bool is_resource_failure(const RunReport& r) { return r.status.rfind("resource:", 0) == 0; }

RunReport run_traversal(const Computation& comp, const TimedPartition* partition,
                        const std::string& trace_name, const RunRequest& request) {
  if (request.ranks.lo > request.ranks.hi || request.ranks.hi > comp.size()) {
    throw UsageError("rank range " + std::to_string(request.ranks.lo) + ".." +
                     std::to_string(request.ranks.hi) + " outside 0.." + std::to_string(comp.size()));
  }
  if (request.mode == OutputMode::FirstMatch && !request.predicate) {
    throw UsageError("first-match needs a predicate");
  }
  if (request.algorithm == Algorithm::Uniflow && partition == nullptr) {
    throw UsageError("the uniflow enumerator needs a partition");
  }

  RunReport report;
  report.algorithm = std::string(algorithm_name(request.algorithm));
  report.trace = trace_name;
  report.processes = comp.process_count();
  report.events = comp.size();
  report.chains = request.algorithm == Algorithm::Uniflow ? partition->partition.chain_count()
                                                          : comp.process_count();
  report.rank_lo = request.ranks.lo;
  report.rank_hi = request.ranks.hi;
  if (request.algorithm == Algorithm::Uniflow) report.partition_s = partition->seconds;

  MatchTracker tracker{request.predicate ? &*request.predicate : nullptr, std::nullopt, 0};
  const bool first_match = request.mode == OutputMode::FirstMatch;
  std::uint64_t counted = 0;
  const auto visit = [&](const Cut& original, Rank r) {
    if (first_match) {
      bool matched = false;
      return tracker.offer(original, r, matched);
    }
    if (request.predicate && !request.predicate->matches(original, r)) return VisitAction::Continue;
    ++counted;
    if (request.mode == OutputMode::List && request.on_cut) request.on_cut(original, r);
    return VisitAction::Continue;
  };
  const auto finish_match = [&] {
    if (first_match && tracker.best) {
      report.match = to_string(*tracker.best);
      report.match_rank = tracker.best_rank;
      counted = 1;
      if (request.on_cut) request.on_cut(*tracker.best, tracker.best_rank);
    }
    report.cuts = counted;
  };

  const auto start = Clock::now();
  switch (request.algorithm) {
    case Algorithm::Uniflow: {
      const auto stats = traverse_rank_range(
          partition->partition, request.ranks.lo, request.ranks.hi,
          [&](const CutVisit& v) { return visit(v.original(), v.rank()); }, request.traversal);
      report.peak_stored_cuts = stats.peak_retained_cuts;
      report.calls_outside_range = stats.calls_outside_range;
      break;
    }
    case Algorithm::Traditional: {
      LevelBfsOptions options;
      options.first_rank = request.ranks.lo;
      options.last_rank = request.ranks.hi;
      options.max_stored_cuts = request.max_stored_cuts;
      try {
        const auto stats = traditional_bfs(
            comp, [&](const CutVisit& v) { return visit(v.cut(), v.rank()); }, options);
        report.peak_stored_cuts = stats.peak_stored_cuts;
        report.expanded_cuts = stats.expanded_cuts;
      } catch (const LevelBfsResourceError& e) {
        report.peak_stored_cuts = e.partial().peak_stored_cuts;
        report.expanded_cuts = e.partial().expanded_cuts;
        report.status = std::string("resource: ") + e.what();
      }
      break;
    }
    case Algorithm::Brute: {
      if (comp.size() > kBruteForceEventLimit) {
        report.status = "resource: brute force is limited to " +
                        std::to_string(kBruteForceEventLimit) + " events";
        break;
      }
      const auto by_rank = brute_force_downsets(comp);
      std::uint64_t stored = 0;
      for (const auto& level : by_rank) stored += level.size();
      report.peak_stored_cuts = stored;
      bool stop = false;
      for (Rank r = request.ranks.lo; r <= request.ranks.hi && !stop; ++r) {
        for (const Cut& cut : by_rank[r]) {
          if (visit(cut, r) == VisitAction::Stop) {
            stop = true;
            break;
          }
        }
      }
      break;
    }
  }
  report.traversal_s = since(start);
  finish_match();
  return report;
}

RankedCuts collect_uniflow(const UniflowPartition& p, Rank max_rank) {
  RankedCuts out(max_rank + 1);
  traverse_rank_range(p, 0, max_rank, [&](const CutVisit& v) {
    out[v.rank()].push_back(v.original());
    return VisitAction::Continue;
  });
  for (auto& level : out) std::sort(level.begin(), level.end(), LexicalLess{});
  return out;
}

RankedCuts collect_traditional(const Computation& comp, Rank max_rank) {
  RankedCuts out(max_rank + 1);
  LevelBfsOptions options;
  options.last_rank = max_rank;
  traditional_bfs(
      comp,
      [&](const CutVisit& v) {
        out[v.rank()].push_back(v.cut());
        return VisitAction::Continue;
      },
      options);
  return out;
}

RankedCuts collect_brute(const Computation& comp, Rank max_rank) {
  auto all = brute_force_downsets(comp);
  all.resize(max_rank + 1);
  return all;
}

VerifyOutcome verify_enumerators(const Computation& comp, Rank max_rank,
                                 std::optional<Rank> inject_fault) {
  if (max_rank > comp.size()) {
    throw UsageError("max rank " + std::to_string(max_rank) + " exceeds event count " +
                     std::to_string(comp.size()));
  }
  if (inject_fault && *inject_fault > max_rank) {
    throw UsageError("fault rank " + std::to_string(*inject_fault) + " is outside 0.." +
                     std::to_string(max_rank));
  }
  const UniflowPartition p = regenerate_vector_clocks(build_uniflow_partition(comp));
  RankedCuts uniflow = collect_uniflow(p, max_rank);
  if (inject_fault && !uniflow[*inject_fault].empty()) uniflow[*inject_fault].pop_back();
  const RankedCuts traditional = collect_traditional(comp, max_rank);

  VerifyOutcome outcome;
  std::optional<RankedCuts> brute;
  if (comp.size() <= kBruteForceEventLimit) {
    brute = collect_brute(comp, max_rank);
    outcome.brute_checked = true;
  }

  for (Rank r = 0; r <= max_rank; ++r) {
    const bool counts_equal = uniflow[r].size() == traditional[r].size() &&
                              (!brute || (*brute)[r].size() == uniflow[r].size());
    const bool sets_equal = uniflow[r] == traditional[r] && (!brute || (*brute)[r] == uniflow[r]);
    std::string line = "rank " + std::to_string(r) + ": uniflow=" + std::to_string(uniflow[r].size()) +
                       " traditional=" + std::to_string(traditional[r].size());
    if (brute) line += " brute=" + std::to_string((*brute)[r].size());
    line += counts_equal ? " counts=equal" : " counts=DIFFER";
    line += sets_equal ? " sets=equal" : " sets=DIFFER";
    outcome.lines.push_back(std::move(line));
    if (!sets_equal && outcome.passed) {
      outcome.passed = false;
      outcome.first_divergent_rank = r;
    }
  }
  return outcome;
}

}  // namespace cutlattice::cli
