#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutlattice/model.hpp"

namespace cutlattice::cli {

/// Inclusive rank interval.
struct RankRange {
  Rank lo = 0;
  Rank hi = 0;

  friend bool operator==(const RankRange&, const RankRange&) = default;
};

/// Parses `all`, `r`, or `r1..r2` against a computation of `total_events`
/// events. An endpoint is either an integer or a multiple of the event count
/// written `E`, `E/d` or `aE/d` (rounded down), so one spec can be reused
/// across traces of different sizes. Throws UsageError on bad syntax or an
/// endpoint above `total_events`.
RankRange parse_rank_spec(std::string_view text, std::size_t total_events);

/// Checks the syntax of a rank spec without resolving it.
void validate_rank_spec(std::string_view text);

enum class Comparator { Equal, AtMost, AtLeast };

struct ProcessBound {
  std::uint32_t process = 1;  // 1-based
  Comparator cmp = Comparator::Equal;
  Count count = 0;

  friend bool operator==(const ProcessBound&, const ProcessBound&) = default;
};

/// Conjunction of per-process event-count bounds and rank bounds, written
/// as terms joined by `&`:
///
///     p2>=2 & p1<=1 & rank>=3
///
/// Comparators are `=`, `<=` and `>=`.
struct PredicateSpec {
  std::vector<ProcessBound> bounds;
  std::optional<Rank> min_rank;
  std::optional<Rank> max_rank;

  /// Evaluates against a cut over the original processes.
  bool matches(const Cut& original, Rank r) const;

  friend bool operator==(const PredicateSpec&, const PredicateSpec&) = default;
};

/// Throws UsageError on bad syntax, a process outside 1..n, or a count
/// above that process's length.
PredicateSpec parse_predicate(std::string_view text, const Computation& comp);

}  // namespace cutlattice::cli
