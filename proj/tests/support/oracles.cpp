#include "oracles.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace cutlattice::testing {

Reachability::Reachability(std::uint32_t processes, const std::vector<EventRecord>& records)
    : processes_(processes) {
  const std::size_t n = records.size();
  std::unordered_map<std::uint32_t, std::size_t> at;
  for (std::size_t i = 0; i < n; ++i) {
    ids_.push_back(records[i].id);
    process_.push_back(records[i].process);
    at[records[i].id.value] = i;
  }
  // Direct edges: program order and recorded dependencies.
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::optional<std::size_t>> last(processes + 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto& prev = last[records[i].process];
    if (prev) succ[*prev].push_back(i);
    prev = i;
    for (EventId d : records[i].deps) succ[at.at(d.value)].push_back(i);
  }
  reach_.assign(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack = succ[s];
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (reach_[s][v]) continue;
      reach_[s][v] = true;
      for (std::size_t w : succ[v]) stack.push_back(w);
    }
  }
}

std::size_t Reachability::index(EventId id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) return i;
  }
  throw std::out_of_range("unknown event " + std::to_string(id.value));
}

bool Reachability::before(EventId a, EventId b) const { return reach_[index(a)][index(b)]; }

std::vector<Count> Reachability::clock_of(EventId e) const {
  std::vector<Count> vc(processes_, 0);
  const std::size_t ie = index(e);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i == ie || reach_[i][ie]) ++vc[process_[i] - 1];
  }
  return vc;
}

std::vector<std::vector<Cut>> powerset_downsets(std::uint32_t processes,
                                                const std::vector<EventRecord>& records) {
  const std::size_t n = records.size();
  if (n > kPowersetLimit) throw std::invalid_argument("powerset oracle is for small traces");
  const Reachability reach(processes, records);
  std::vector<std::vector<Cut>> by_rank(n + 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool closed = true;
    for (std::size_t b = 0; b < n && closed; ++b) {
      if (!(mask >> b & 1)) continue;
      for (std::size_t a = 0; a < n && closed; ++a) {
        if (!(mask >> a & 1) && reach.before(records[a].id, records[b].id)) closed = false;
      }
    }
    if (!closed) continue;
    Cut g(processes);
    Rank r = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (mask >> b & 1) {
        ++g[records[b].process - 1];
        ++r;
      }
    }
    by_rank[r].push_back(g);
  }
  for (auto& level : by_rank) std::sort(level.begin(), level.end(), LexicalLess{});
  return by_rank;
}

bool closure_uniflow(const UniflowPartition& p, const Reachability& reach) {
  for (EventId a : reach.ids()) {
    for (EventId b : reach.ids()) {
      if (reach.before(a, b) && p.chain_of(a) > p.chain_of(b)) return false;
    }
  }
  return true;
}

std::set<EventId> cut_events(const Cut& g, const UniflowPartition& p) {
  std::set<EventId> out;
  for (std::size_t pos = 0; pos < g.size(); ++pos) {
    for (Count k = 0; k < g[pos]; ++k) out.insert(p.source().at(p.chain(pos)[k]).id);
  }
  return out;
}

bool is_downset(const std::set<EventId>& events, const Reachability& reach) {
  for (EventId b : events) {
    for (EventId a : reach.ids()) {
      if (reach.before(a, b) && events.count(a) == 0) return false;
    }
  }
  return true;
}

std::vector<EventRecord> random_records(std::mt19937_64& rng, std::uint32_t processes,
                                        std::uint32_t events, double p) {
  std::vector<EventRecord> out;
  std::uniform_int_distribution<std::uint32_t> pick_process(1, processes);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::uint32_t t = 0; t < events; ++t) {
    EventRecord rec{EventId{t + 1}, pick_process(rng), {}};
    std::vector<EventId> others;
    for (const auto& prev : out) {
      if (prev.process != rec.process) others.push_back(prev.id);
    }
    for (int attempt = 0; attempt < 2 && !others.empty(); ++attempt) {
      if (coin(rng) >= p) continue;
      const EventId dep = others[std::uniform_int_distribution<std::size_t>(0, others.size() - 1)(rng)];
      if (std::find(rec.deps.begin(), rec.deps.end(), dep) == rec.deps.end()) rec.deps.push_back(dep);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<CorpusEntry> random_corpus(std::size_t count, std::uint32_t max_events,
                                       std::uint64_t seed) {
  static constexpr double kProbabilities[] = {0.0, 0.3, 0.7};
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> corpus;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(i % 5);
    const double p = kProbabilities[(i / 5) % 3];
    const auto events = std::uniform_int_distribution<std::uint32_t>(0, max_events)(rng);
    CorpusEntry entry{n, {}, p};
    if (i % 2 == 0) {
      entry.records = generate_random_document({n, events, p, rng()}).events;
    } else {
      entry.records = random_records(rng, n, events, p);
    }
    corpus.push_back(std::move(entry));
  }
  return corpus;
}

std::vector<std::vector<Cut>> scan_consistent_cuts(const UniflowPartition& p,
                                                   const Reachability& reach) {
  const std::size_t n = p.chain_count();
  std::vector<std::vector<Cut>> by_rank(p.event_count() + 1);
  Cut g(n);
  while (true) {
    if (is_downset(cut_events(g, p), reach)) by_rank[rank(g)].push_back(g);
    std::size_t pos = 0;
    while (pos < n && g[pos] == p.chain_length(pos)) g[pos++] = 0;
    if (pos == n) break;
    ++g[pos];
  }
  for (auto& level : by_rank) std::sort(level.begin(), level.end(), LexicalLess{});
  return by_rank;
}

namespace {

EventRecord rec(std::uint32_t id, std::uint32_t process, std::vector<std::uint32_t> deps = {}) {
  EventRecord r{EventId{id}, process, {}};
  for (auto d : deps) r.deps.push_back(EventId{d});
  return r;
}

}  // namespace

std::vector<EventRecord> fig1_records() {
  return {rec(1, 1), rec(2, 1), rec(3, 1), rec(4, 2), rec(5, 2, {2}), rec(6, 2)};
}

Computation fig1() { return Computation::from_records(2, fig1_records()); }

Computation fig5a() {
  return Computation::from_records(2, {rec(1, 1), rec(2, 2), rec(3, 2, {1}), rec(4, 1, {2})});
}

Computation fig6() {
  return Computation::from_records(3, {rec(1, 1), rec(2, 1), rec(3, 1), rec(4, 2), rec(5, 2),
                                       rec(6, 2, {1}), rec(7, 3, {5}), rec(8, 3), rec(9, 3, {2})});
}

Computation fig7() {
  return Computation::from_records(3, {rec(1, 1), rec(2, 1), rec(3, 1), rec(4, 2), rec(5, 2),
                                       rec(6, 2, {1}), rec(7, 3), rec(8, 3, {5}), rec(9, 3, {2})});
}

Computation fig2a() {
  return Computation::from_records(
      2, {rec(1, 1), rec(2, 1), rec(3, 1), rec(4, 2), rec(5, 2, {2}), rec(6, 2)});
}

Computation fig3c() {
  return Computation::from_records(
      2, {rec(1, 1), rec(2, 1), rec(4, 2), rec(5, 2, {2}), rec(6, 2), rec(3, 1, {6})});
}

}  // namespace cutlattice::testing
