#include "cutlattice/model.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace cutlattice {

namespace {

void require_same_length(std::span<const Count> a, std::span<const Count> b, const char* what) {
  if (a.size() != b.size()) {
    throw UsageError(std::string(what) + ": length mismatch (" + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()) + ")");
  }
}

std::string describe(std::size_t position, EventId id) {
  return "record " + std::to_string(position + 1) + " (id " + std::to_string(id.value) + ")";
}

}  // namespace

bool happened_before(std::span<const Count> a, std::span<const Count> b) {
  require_same_length(a, b, "happened_before");
  bool strictly_less = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_less = true;
  }
  return strictly_less;
}

bool concurrent(std::span<const Count> a, std::span<const Count> b) {
  require_same_length(a, b, "concurrent");
  return !happened_before(a, b) && !happened_before(b, a);
}

Rank rank(const Cut& cut) {
  Rank total = 0;
  for (std::size_t i = 0; i < cut.size(); ++i) total += cut[i];
  return total;
}

std::strong_ordering lexical_compare(const Cut& g, const Cut& h) {
  require_same_length(g.span(), h.span(), "lexical_compare");
  for (std::size_t i = g.size(); i-- > 0;) {
    if (g[i] != h[i]) return g[i] <=> h[i];
  }
  return std::strong_ordering::equal;
}

std::string to_string(std::span<const Count> counts) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = counts.size(); i-- > 0;) {
    out << counts[i];
    if (i != 0) out << ',';
  }
  out << ']';
  return out.str();
}

Computation Computation::from_records(std::uint32_t processes, std::vector<EventRecord> records) {
  Computation comp;
  comp.processes_ = processes;
  comp.chains_.resize(processes);
  comp.events_.reserve(records.size());

  for (std::size_t i = 0; i < records.size(); ++i) {
    EventRecord& rec = records[i];
    if (rec.process < 1 || rec.process > processes) {
      throw InputError(describe(i, rec.id) + ": process " + std::to_string(rec.process) +
                       " outside 1.." + std::to_string(processes));
    }
    if (!comp.slot_by_id_.emplace(rec.id.value, static_cast<std::uint32_t>(i)).second) {
      throw InputError(describe(i, rec.id) + ": duplicate event id");
    }
    auto& chain = comp.chains_[rec.process - 1];
    chain.push_back(static_cast<std::uint32_t>(i));

    Event ev;
    ev.id = rec.id;
    ev.process = rec.process;
    ev.index_on_process = static_cast<std::uint32_t>(chain.size());
    ev.deps = std::move(rec.deps);
    comp.events_.push_back(std::move(ev));
  }

  // Direct predecessors: explicit deps plus program order.
  const std::size_t total = comp.events_.size();
  std::vector<std::vector<std::uint32_t>> preds(total);
  for (std::size_t pos = 0; pos < processes; ++pos) {
    const auto& chain = comp.chains_[pos];
    for (std::size_t k = 1; k < chain.size(); ++k) preds[chain[k]].push_back(chain[k - 1]);
  }
  for (std::size_t slot = 0; slot < total; ++slot) {
    const Event& ev = comp.events_[slot];
    for (EventId dep : ev.deps) {
      auto it = comp.slot_by_id_.find(dep.value);
      if (it == comp.slot_by_id_.end()) {
        throw InputError(describe(slot, ev.id) + ": unknown dependency " +
                         std::to_string(dep.value));
      }
      if (it->second == slot) {
        throw InputError(describe(slot, ev.id) + ": event depends on itself");
      }
      preds[slot].push_back(it->second);
    }
    auto& p = preds[slot];
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }

  comp.pred_offset_.assign(1, 0);
  for (const auto& p : preds) {
    comp.pred_.insert(comp.pred_.end(), p.begin(), p.end());
    comp.pred_offset_.push_back(comp.pred_.size());
  }

  // Kahn's algorithm, preferring record order so already-sorted input keeps
  // its order.
  std::vector<std::vector<std::uint32_t>> succs(total);
  std::vector<std::size_t> indegree(total, 0);
  for (std::size_t slot = 0; slot < total; ++slot) {
    indegree[slot] = preds[slot].size();
    for (std::uint32_t p : preds[slot]) succs[p].push_back(static_cast<std::uint32_t>(slot));
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::size_t slot = 0; slot < total; ++slot) {
    if (indegree[slot] == 0) ready.push(static_cast<std::uint32_t>(slot));
  }
  comp.topo_order_.reserve(total);
  while (!ready.empty()) {
    const std::uint32_t slot = ready.top();
    ready.pop();
    comp.topo_order_.push_back(slot);
    for (std::uint32_t s : succs[slot]) {
      if (--indegree[s] == 0) ready.push(s);
    }
  }
  if (comp.topo_order_.size() != total) {
    for (std::size_t slot = 0; slot < total; ++slot) {
      if (indegree[slot] != 0) {
        throw InputError(describe(slot, comp.events_[slot].id) + ": dependency cycle");
      }
    }
  }

  for (std::uint32_t slot : comp.topo_order_) {
    Event& ev = comp.events_[slot];
    ev.vc = VectorClock(processes);
    for (std::uint32_t p : comp.predecessors(slot)) {
      const VectorClock& pv = comp.events_[p].vc;
      for (std::size_t j = 0; j < processes; ++j) ev.vc[j] = std::max(ev.vc[j], pv[j]);
    }
    ev.vc[ev.process - 1] = ev.index_on_process;
  }
  return comp;
}

std::size_t Computation::slot_of(EventId id) const {
  auto it = slot_by_id_.find(id.value);
  if (it == slot_by_id_.end()) {
    throw UsageError("unknown event id " + std::to_string(id.value));
  }
  return it->second;
}

std::vector<EventRecord> Computation::records() const {
  std::vector<EventRecord> out;
  out.reserve(events_.size());
  for (const Event& ev : events_) out.push_back({ev.id, ev.process, ev.deps});
  return out;
}

Cut Computation::full_cut() const {
  Cut cut(processes_);
  for (std::size_t pos = 0; pos < processes_; ++pos) cut[pos] = chain_length(pos);
  return cut;
}

}  // namespace cutlattice
