#include "cutlattice/cli/report.hpp"

#include <charconv>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace cutlattice::cli {

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_row(std::string_view row) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"' && i + 1 < row.size() && row[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw InputError("unterminated quote in CSV row");
  return fields;
}

template <class T>
T number(const std::string& field, const char* column) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError(std::string("bad value '") + field + "' in column " + column);
  }
  return value;
}

std::string seconds(double s) {
  std::ostringstream out;
  out << std::setprecision(17) << s;
  return out.str();
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "algorithm",   "trace",      "n",           "events",           "chains",
      "rank_lo",     "rank_hi",    "cuts",        "match",            "match_rank",
      "partition_s", "traversal_s", "peak_stored_cuts", "expanded_cuts", "calls_outside_range",
      "status"};
  return columns;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string to_csv_row(const RunReport& r) {
  const std::vector<std::string> fields = {
      quote(r.algorithm),
      quote(r.trace),
      std::to_string(r.processes),
      std::to_string(r.events),
      std::to_string(r.chains),
      std::to_string(r.rank_lo),
      std::to_string(r.rank_hi),
      std::to_string(r.cuts),
      quote(r.match.value_or("")),
      r.match_rank ? std::to_string(*r.match_rank) : "",
      seconds(r.partition_s),
      seconds(r.traversal_s),
      std::to_string(r.peak_stored_cuts),
      std::to_string(r.expanded_cuts),
      std::to_string(r.calls_outside_range),
      quote(r.status)};
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i == 0 ? "" : ",") + fields[i];
  return out;
}

RunReport parse_csv_row(std::string_view row) {
  const auto f = split_row(row);
  if (f.size() != csv_columns().size()) {
    throw InputError("CSV row has " + std::to_string(f.size()) + " fields, expected " +
                     std::to_string(csv_columns().size()));
  }
  RunReport r;
  r.algorithm = f[0];
  r.trace = f[1];
  r.processes = number<std::uint32_t>(f[2], "n");
  r.events = number<std::uint64_t>(f[3], "events");
  r.chains = number<std::uint64_t>(f[4], "chains");
  r.rank_lo = number<Rank>(f[5], "rank_lo");
  r.rank_hi = number<Rank>(f[6], "rank_hi");
  r.cuts = number<std::uint64_t>(f[7], "cuts");
  if (!f[8].empty()) r.match = f[8];
  if (!f[9].empty()) r.match_rank = number<Rank>(f[9], "match_rank");
  r.partition_s = number<double>(f[10], "partition_s");
  r.traversal_s = number<double>(f[11], "traversal_s");
  r.peak_stored_cuts = number<std::uint64_t>(f[12], "peak_stored_cuts");
  r.expanded_cuts = number<std::uint64_t>(f[13], "expanded_cuts");
  r.calls_outside_range = number<std::uint64_t>(f[14], "calls_outside_range");
  r.status = f[15];
  return r;
}

std::string to_csv(const std::vector<RunReport>& reports) {
  std::string out = csv_header() + '\n';
  for (const auto& r : reports) out += to_csv_row(r) + '\n';
  return out;
}

std::vector<RunReport> parse_csv(std::string_view text) {
  std::vector<RunReport> reports;
  bool header = true;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t eol = text.find('\n', start);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(start, eol - start);
    start = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != csv_header()) throw InputError("unexpected CSV header '" + std::string(line) + "'");
      header = false;
      continue;
    }
    reports.push_back(parse_csv_row(line));
  }
  if (header) throw InputError("missing CSV header");
  return reports;
}

void print_table(std::ostream& out, const std::vector<RunReport>& reports) {
  const std::vector<std::string> titles = {"algorithm", "trace", "n",       "|E|",      "chains",
                                           "ranks",     "cuts",  "T_part",  "T_trav",   "peak",
                                           "expanded",  "status"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    std::ostringstream tp, tt;
    tp << std::fixed << std::setprecision(4) << r.partition_s;
    tt << std::fixed << std::setprecision(4) << r.traversal_s;
    rows.push_back({r.algorithm, r.trace, std::to_string(r.processes), std::to_string(r.events),
                    std::to_string(r.chains),
                    std::to_string(r.rank_lo) + ".." + std::to_string(r.rank_hi),
                    std::to_string(r.cuts), tp.str(), tt.str(), std::to_string(r.peak_stored_cuts),
                    std::to_string(r.expanded_cuts), r.status});
  }
  std::vector<std::size_t> width(titles.size());
  for (std::size_t c = 0; c < titles.size(); ++c) {
    width[c] = titles[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  const auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c == 0 ? "" : "  ") << std::left << std::setw(static_cast<int>(width[c])) << row[c];
    }
    out << '\n';
  };
  emit(titles);
  for (const auto& row : rows) emit(row);
}

void print_report(std::ostream& out, const RunReport& r) {
  out << "algorithm: " << r.algorithm << '\n'
      << "trace: " << r.trace << '\n'
      << "n: " << r.processes << '\n'
      << "events: " << r.events << '\n'
      << "chains: " << r.chains << '\n'
      << "ranks: " << r.rank_lo << ".." << r.rank_hi << '\n'
      << "cuts: " << r.cuts << '\n';
  if (r.match) {
    out << "first match: " << *r.match << " at rank " << *r.match_rank << '\n';
  }
  out << "partition_s: " << r.partition_s << '\n'
      << "traversal_s: " << r.traversal_s << '\n'
      << "peak stored cuts: " << r.peak_stored_cuts << '\n'
      << "expanded cuts: " << r.expanded_cuts << '\n'
      << "calls outside range: " << r.calls_outside_range << '\n'
      << "status: " << r.status << '\n';
}

}  // namespace cutlattice::cli
