#include "cutlattice/cli/predicate.hpp"

#include <charconv>

namespace cutlattice::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Integer, `E`, `E/d`, or `aE/d`.
std::uint64_t parse_endpoint(std::string_view s, std::size_t total, std::string_view whole) {
  s = trim(s);
  const auto bad = [&] { return UsageError("bad rank spec '" + std::string(whole) + "'"); };
  const auto e = s.find('E');
  if (e == std::string_view::npos) {
    auto v = parse_uint(s);
    if (!v) throw bad();
    return *v;
  }
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  if (e > 0) {
    auto v = parse_uint(s.substr(0, e));
    if (!v) throw bad();
    num = *v;
  }
  std::string_view rest = s.substr(e + 1);
  if (!rest.empty()) {
    if (rest.front() != '/') throw bad();
    auto v = parse_uint(rest.substr(1));
    if (!v || *v == 0) throw bad();
    den = *v;
  }
  return num * total / den;
}

}  // namespace

RankRange parse_rank_spec(std::string_view text, std::size_t total_events) {
  const std::string_view spec = trim(text);
  const auto check = [&](std::uint64_t r) {
    if (r > total_events) {
      throw UsageError("rank " + std::to_string(r) + " in '" + std::string(spec) +
                       "' exceeds event count " + std::to_string(total_events));
    }
    return static_cast<Rank>(r);
  };
  if (spec == "all") return {0, static_cast<Rank>(total_events)};
  const auto dots = spec.find("..");
  if (dots == std::string_view::npos) {
    const Rank r = check(parse_endpoint(spec, total_events, spec));
    return {r, r};
  }
  const Rank lo = check(parse_endpoint(spec.substr(0, dots), total_events, spec));
  const Rank hi = check(parse_endpoint(spec.substr(dots + 2), total_events, spec));
  if (lo > hi) throw UsageError("empty rank range '" + std::string(spec) + "'");
  return {lo, hi};
}

void validate_rank_spec(std::string_view text) {
  // Resolving against a huge event count exercises the syntax only.
  constexpr std::size_t kAny = std::size_t{1} << 30;
  const std::string_view spec = trim(text);
  if (spec == "all") return;
  const auto dots = spec.find("..");
  if (dots == std::string_view::npos) {
    parse_endpoint(spec, kAny, spec);
    return;
  }
  const auto lo = parse_endpoint(spec.substr(0, dots), kAny, spec);
  const auto hi = parse_endpoint(spec.substr(dots + 2), kAny, spec);
  const bool fractional = spec.find('E') != std::string_view::npos;
  if (!fractional && lo > hi) throw UsageError("empty rank range '" + std::string(spec) + "'");
}

bool PredicateSpec::matches(const Cut& original, Rank r) const {
  if (min_rank && r < *min_rank) return false;
  if (max_rank && r > *max_rank) return false;
  for (const ProcessBound& b : bounds) {
    const Count c = original[b.process - 1];
    switch (b.cmp) {
      case Comparator::Equal:
        if (c != b.count) return false;
        break;
      case Comparator::AtMost:
        if (c > b.count) return false;
        break;
      case Comparator::AtLeast:
        if (c < b.count) return false;
        break;
    }
  }
  return true;
}

PredicateSpec parse_predicate(std::string_view text, const Computation& comp) {
  PredicateSpec spec;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t amp = text.find('&', start);
    if (amp == std::string_view::npos) amp = text.size();
    const std::string_view term = trim(text.substr(start, amp - start));
    start = amp + 1;
    const auto bad = [&](const std::string& why) {
      return UsageError("bad predicate term '" + std::string(term) + "': " + why);
    };
    if (term.empty()) throw bad("empty term");

    const auto op = term.find_first_of("<>=");
    if (op == std::string_view::npos) throw bad("missing comparator");
    const std::string_view lhs = trim(term.substr(0, op));
    Comparator cmp;
    std::size_t op_len = 1;
    if (term.substr(op, 2) == "<=") {
      cmp = Comparator::AtMost;
      op_len = 2;
    } else if (term.substr(op, 2) == ">=") {
      cmp = Comparator::AtLeast;
      op_len = 2;
    } else if (term[op] == '=') {
      cmp = Comparator::Equal;
    } else {
      throw bad("comparators are =, <= and >=");
    }
    const auto value = parse_uint(trim(term.substr(op + op_len)));
    if (!value) throw bad("expected a non-negative integer");

    if (lhs == "rank") {
      if (*value > comp.size()) throw bad("rank exceeds event count " + std::to_string(comp.size()));
      const Rank r = static_cast<Rank>(*value);
      if (cmp != Comparator::AtMost) spec.min_rank = std::max(spec.min_rank.value_or(0), r);
      if (cmp != Comparator::AtLeast) spec.max_rank = std::min(spec.max_rank.value_or(r), r);
      continue;
    }
    if (lhs.size() < 2 || lhs.front() != 'p') throw bad("expected p<index> or rank");
    const auto process = parse_uint(lhs.substr(1));
    if (!process || *process < 1 || *process > comp.process_count()) {
      throw bad("process must lie in 1.." + std::to_string(comp.process_count()));
    }
    const Count length = comp.chain_length(*process - 1);
    if (*value > length) {
      throw bad("process " + std::to_string(*process) + " has only " + std::to_string(length) +
                " events");
    }
    spec.bounds.push_back({static_cast<std::uint32_t>(*process), cmp, static_cast<Count>(*value)});
  }
  return spec;
}

}  // namespace cutlattice::cli
