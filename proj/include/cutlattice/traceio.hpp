#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutlattice/model.hpp"

namespace cutlattice {

/// Trace text format, version 1 (UTF-8, LF line endings):
///
///     # comment lines start with '#'
///     version=1
///     n=<process count>
///     name=<free text>          (optional)
///     seed=<unsigned 64-bit>    (optional)
///     <id> <process> [dep,dep,...]
///
/// Header lines come before the first event line. Events are listed in a
/// topological order: every dependency names an earlier event. Program
/// order on a process is the order of its event lines and is implicit.
inline constexpr std::uint32_t kTraceVersion = 1;

struct TraceDocument {
  std::uint32_t version = kTraceVersion;
  std::uint32_t processes = 0;
  std::vector<EventRecord> events;
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const TraceDocument&, const TraceDocument&) = default;
};

/// Parse failure with the 1-based line it was detected on.
class TraceParseError : public InputError {
 public:
  TraceParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

TraceDocument parse_trace_document(std::string_view text);
Computation to_computation(const TraceDocument& doc);

/// Parses and validates a trace, then computes vector clocks.
Computation parse_trace(std::string_view text);

std::string serialize_document(const TraceDocument& doc);
TraceDocument to_document(const Computation& comp);
std::string serialize_trace(const Computation& comp);

/// Random distributed computation. Events are dealt round-robin to
/// processes 1..n and numbered 1..total_events. After each event one draw
/// from std::mt19937_64 (seeded with `seed`) decides whether it sends a
/// message: the sample's top 53 bits scaled to [0,1) are compared against
/// `message_probability`. A sender then draws again and picks receiver
/// `draw % (n-1)` among the other processes in increasing order; the
/// receiver's next event depends on the sender's event. Messages with no
/// later receiving event are dropped.
struct GenSpec {
  std::uint32_t processes = 1;
  std::uint32_t total_events = 0;
  double message_probability = 0.0;
  std::uint64_t seed = 0;
};

TraceDocument generate_random_document(const GenSpec& spec);
Computation generate_random(const GenSpec& spec);

}  // namespace cutlattice
