#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutlattice/baselines.hpp"
#include "cutlattice/cli/predicate.hpp"
#include "cutlattice/cli/report.hpp"
#include "cutlattice/traversal.hpp"
#include "cutlattice/uniflow.hpp"

namespace cutlattice::cli {

enum class Algorithm { Uniflow, Traditional, Brute };

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm a);

enum class OutputMode { Count, List, FirstMatch };

OutputMode parse_output_mode(std::string_view name);

/// Uniflow partition with clocks, plus the time it took to build.
struct TimedPartition {
  UniflowPartition partition;
  double seconds = 0.0;
};

TimedPartition partition_timed(const Computation& comp);

struct RunRequest {
  Algorithm algorithm = Algorithm::Uniflow;
  RankRange ranks;
  OutputMode mode = OutputMode::Count;
  /// Required for FirstMatch; in the other modes only matching cuts are
  /// counted and listed.
  std::optional<PredicateSpec> predicate;
  /// Cap for the level BFS.
  std::optional<std::size_t> max_stored_cuts;
  TraversalOptions traversal;
  /// Receives each listed cut over the original processes.
  std::function<void(const Cut&, Rank)> on_cut;
};

/// Runs one enumerator. `partition` is needed for the uniflow enumerator
/// only and may be null otherwise. Exceeding the stored-cut cap or the
/// brute-force event limit does not throw: the partial report comes back
/// with a status starting with "resource:".
RunReport run_traversal(const Computation& comp, const TimedPartition* partition,
                        const std::string& trace_name, const RunRequest& request);

bool is_resource_failure(const RunReport& r);

/// Cuts of each rank in [0, max_rank], over the original processes and
/// sorted lexically.
using RankedCuts = std::vector<std::vector<Cut>>;

RankedCuts collect_uniflow(const UniflowPartition& p, Rank max_rank);
RankedCuts collect_traditional(const Computation& comp, Rank max_rank);
RankedCuts collect_brute(const Computation& comp, Rank max_rank);

struct VerifyOutcome {
  bool passed = true;
  bool brute_checked = false;
  std::optional<Rank> first_divergent_rank;
  /// One human-readable line per rank.
  std::vector<std::string> lines;
};

/// Compares per-rank counts and cut sets of all enumerators for ranks up
/// to `max_rank`. The brute-force oracle joins when the computation is
/// within its event limit. `inject_fault` drops one uniflow cut at that
/// rank before comparing, to exercise the failure path.
VerifyOutcome verify_enumerators(const Computation& comp, Rank max_rank,
                                 std::optional<Rank> inject_fault = std::nullopt);

}  // namespace cutlattice::cli
