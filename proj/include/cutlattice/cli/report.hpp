#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutlattice/model.hpp"

namespace cutlattice::cli {

/// One traversal run, as printed by `traverse` and collected by `bench`.
struct RunReport {
  std::string algorithm;
  std::string trace;
  std::uint32_t processes = 0;
  std::uint64_t events = 0;
  /// Chains the enumerator walked: n_u for uniflow, n otherwise.
  std::uint64_t chains = 0;
  Rank rank_lo = 0;
  Rank rank_hi = 0;
  std::uint64_t cuts = 0;
  /// First matching cut over the original processes, in display order.
  std::optional<std::string> match;
  std::optional<Rank> match_rank;
  double partition_s = 0.0;
  double traversal_s = 0.0;
  std::uint64_t peak_stored_cuts = 0;
  /// Cuts expanded by the level BFS; 0 for the other enumerators.
  std::uint64_t expanded_cuts = 0;
  /// Min-cut or successor calls at ranks outside [rank_lo, rank_hi].
  std::uint64_t calls_outside_range = 0;
  /// `ok`, or the failure that ended the run.
  std::string status = "ok";

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Column names, in order.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string to_csv_row(const RunReport& r);
/// Inverse of `to_csv_row`. Throws InputError on a malformed row.
RunReport parse_csv_row(std::string_view row);

/// Header plus one row per report, each line LF-terminated.
std::string to_csv(const std::vector<RunReport>& reports);
/// Inverse of `to_csv`; the header must match `csv_header()`.
std::vector<RunReport> parse_csv(std::string_view text);

/// Fixed-width table for terminals.
void print_table(std::ostream& out, const std::vector<RunReport>& reports);
/// `key: value` lines for a single run.
void print_report(std::ostream& out, const RunReport& r);

}  // namespace cutlattice::cli
