#include "cutlattice/traceio.hpp"

#include <charconv>
#include <random>
#include <sstream>
#include <unordered_map>

namespace cutlattice {

namespace {

template <class T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace

TraceDocument parse_trace_document(std::string_view text) {
  TraceDocument doc;
  bool have_n = false;
  bool in_events = false;
  std::unordered_map<std::uint32_t, std::size_t> seen_ids;  // id -> line

  std::size_t line_no = 0;
  std::size_t cursor = 0;
  while (cursor < text.size()) {
    std::size_t eol = text.find('\n', cursor);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(cursor, eol - cursor);
    cursor = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;

    const auto eq = line.find('=');
    if (eq != std::string_view::npos && fields.size() == 1) {
      if (in_events) throw TraceParseError(line_no, "header line after the first event");
      const std::string_view key = fields.front().substr(0, fields.front().find('='));
      const std::string_view value = fields.front().substr(key.size() + 1);
      if (key == "version") {
        auto v = parse_number<std::uint32_t>(value);
        if (!v || *v != kTraceVersion) {
          throw TraceParseError(line_no, "unsupported version '" + std::string(value) + "'");
        }
        doc.version = *v;
      } else if (key == "n") {
        auto v = parse_number<std::uint32_t>(value);
        if (!v) throw TraceParseError(line_no, "bad process count '" + std::string(value) + "'");
        doc.processes = *v;
        have_n = true;
      } else if (key == "seed") {
        auto v = parse_number<std::uint64_t>(value);
        if (!v) throw TraceParseError(line_no, "bad seed '" + std::string(value) + "'");
        doc.seed = *v;
      } else if (key == "name") {
        doc.name = std::string(value);
      } else {
        throw TraceParseError(line_no, "unknown header key '" + std::string(key) + "'");
      }
      continue;
    }
    if (eq != std::string_view::npos && line.substr(0, eq).find_first_of(" \t") == std::string_view::npos &&
        line.substr(0, eq) == "name") {
      // Names may contain spaces.
      if (in_events) throw TraceParseError(line_no, "header line after the first event");
      doc.name = std::string(line.substr(eq + 1));
      continue;
    }

    if (!have_n) throw TraceParseError(line_no, "event line before the 'n=' header");
    in_events = true;
    if (fields.size() < 2 || fields.size() > 3) {
      throw TraceParseError(line_no, "expected '<id> <process> [deps]'");
    }
    auto id = parse_number<std::uint32_t>(fields[0]);
    if (!id) throw TraceParseError(line_no, "bad event id '" + std::string(fields[0]) + "'");
    auto process = parse_number<std::uint32_t>(fields[1]);
    if (!process) throw TraceParseError(line_no, "bad process '" + std::string(fields[1]) + "'");
    if (*process < 1 || *process > doc.processes) {
      throw TraceParseError(line_no, "process " + std::to_string(*process) + " outside 1.." +
                                         std::to_string(doc.processes));
    }
    if (auto it = seen_ids.find(*id); it != seen_ids.end()) {
      throw TraceParseError(line_no, "duplicate event id " + std::to_string(*id) +
                                         " (first on line " + std::to_string(it->second) + ")");
    }

    EventRecord rec{EventId{*id}, *process, {}};
    if (fields.size() == 3) {
      std::string_view deps = fields[2];
      std::size_t start = 0;
      while (start <= deps.size()) {
        std::size_t comma = deps.find(',', start);
        if (comma == std::string_view::npos) comma = deps.size();
        auto dep = parse_number<std::uint32_t>(deps.substr(start, comma - start));
        if (!dep) throw TraceParseError(line_no, "bad dependency list '" + std::string(deps) + "'");
        if (seen_ids.count(*dep) == 0) {
          throw TraceParseError(line_no, "dependency " + std::to_string(*dep) +
                                             " is not an earlier event (forward reference)");
        }
        rec.deps.push_back(EventId{*dep});
        start = comma + 1;
      }
    }
    seen_ids.emplace(*id, line_no);
    doc.events.push_back(std::move(rec));
  }
  if (!have_n) throw TraceParseError(line_no == 0 ? 1 : line_no, "missing 'n=' header");
  return doc;
}

Computation to_computation(const TraceDocument& doc) {
  return Computation::from_records(doc.processes, doc.events);
}

Computation parse_trace(std::string_view text) { return to_computation(parse_trace_document(text)); }

std::string serialize_document(const TraceDocument& doc) {
  std::ostringstream out;
  out << "version=" << doc.version << '\n';
  out << "n=" << doc.processes << '\n';
  if (doc.name) out << "name=" << *doc.name << '\n';
  if (doc.seed) out << "seed=" << *doc.seed << '\n';
  for (const EventRecord& rec : doc.events) {
    out << rec.id.value << ' ' << rec.process;
    for (std::size_t i = 0; i < rec.deps.size(); ++i) {
      out << (i == 0 ? ' ' : ',') << rec.deps[i].value;
    }
    out << '\n';
  }
  return out.str();
}

TraceDocument to_document(const Computation& comp) {
  TraceDocument doc;
  doc.processes = comp.process_count();
  doc.events.reserve(comp.size());
  // Records are emitted in topological order so the output always parses.
  for (std::uint32_t slot : comp.topo_order()) {
    const Event& ev = comp.at(slot);
    doc.events.push_back({ev.id, ev.process, ev.deps});
  }
  return doc;
}

std::string serialize_trace(const Computation& comp) { return serialize_document(to_document(comp)); }

TraceDocument generate_random_document(const GenSpec& spec) {
  if (spec.processes == 0 && spec.total_events > 0) {
    throw UsageError("cannot generate events on zero processes");
  }
  if (!(spec.message_probability >= 0.0 && spec.message_probability <= 1.0)) {
    throw UsageError("message probability must lie in [0, 1]");
  }
  TraceDocument doc;
  doc.processes = spec.processes;
  doc.seed = spec.seed;
  doc.events.reserve(spec.total_events);

  std::mt19937_64 rng(spec.seed);
  std::vector<std::vector<EventId>> pending(spec.processes);
  for (std::uint32_t t = 0; t < spec.total_events; ++t) {
    const std::uint32_t pos = t % spec.processes;
    const EventId id{t + 1};
    doc.events.push_back({id, pos + 1, std::move(pending[pos])});
    pending[pos].clear();
    if (spec.processes < 2) continue;
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < spec.message_probability) {
      std::uint32_t target = static_cast<std::uint32_t>(rng() % (spec.processes - 1));
      if (target >= pos) ++target;
      pending[target].push_back(id);
    }
  }
  return doc;
}

Computation generate_random(const GenSpec& spec) { return to_computation(generate_random_document(spec)); }

}  // namespace cutlattice
