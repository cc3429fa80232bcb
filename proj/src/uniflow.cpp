#include "cutlattice/uniflow.hpp"

#include <algorithm>
#include <numeric>

namespace cutlattice {

UniflowPartition UniflowPartition::assemble(const Computation& comp,
                                            std::vector<std::vector<std::uint32_t>> chains) {
  UniflowPartition p;
  p.source_ = &comp;
  p.chains_ = std::move(chains);
  p.chain_of_.assign(comp.size(), 0);
  p.position_.assign(comp.size(), 0);
  p.back_.resize(p.chains_.size());
  for (std::size_t pos = 0; pos < p.chains_.size(); ++pos) {
    const auto& chain = p.chains_[pos];
    p.back_[pos].reserve(chain.size());
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const Event& ev = comp.at(chain[k]);
      p.chain_of_[chain[k]] = static_cast<std::uint32_t>(pos);
      p.position_[chain[k]] = static_cast<Count>(k + 1);
      p.back_[pos].push_back({ev.process, ev.index_on_process});
    }
  }
  return p;
}

UniflowPartition UniflowPartition::from_chains(const Computation& comp,
                                               const std::vector<std::vector<EventId>>& chains) {
  std::vector<std::vector<std::uint32_t>> slots(chains.size());
  std::vector<bool> seen(comp.size(), false);
  std::size_t covered = 0;
  for (std::size_t pos = 0; pos < chains.size(); ++pos) {
    if (chains[pos].empty()) {
      throw UsageError("chain " + std::to_string(pos + 1) + " is empty");
    }
    for (EventId id : chains[pos]) {
      if (!comp.contains(id)) {
        throw UsageError("chain " + std::to_string(pos + 1) + " names unknown event " +
                         std::to_string(id.value));
      }
      const std::size_t slot = comp.slot_of(id);
      if (seen[slot]) {
        throw UsageError("event " + std::to_string(id.value) + " appears on more than one chain");
      }
      seen[slot] = true;
      ++covered;
      if (!slots[pos].empty()) {
        const Event& prev = comp.at(slots[pos].back());
        if (!happened_before(prev.vc, comp.at(slot).vc)) {
          throw UsageError("chain " + std::to_string(pos + 1) + " is not totally ordered at event " +
                           std::to_string(id.value));
        }
      }
      slots[pos].push_back(static_cast<std::uint32_t>(slot));
    }
  }
  if (covered != comp.size()) {
    throw UsageError("chains cover " + std::to_string(covered) + " of " +
                     std::to_string(comp.size()) + " events");
  }
  return assemble(comp, std::move(slots));
}

UniflowPartition UniflowPartition::original(const Computation& comp) {
  std::vector<std::vector<std::uint32_t>> chains;
  for (std::size_t pos = 0; pos < comp.chain_count(); ++pos) {
    const auto chain = comp.chain(pos);
    if (!chain.empty()) chains.emplace_back(chain.begin(), chain.end());
  }
  return assemble(comp, std::move(chains));
}

VectorClock UniflowPartition::uvc(EventId id) const {
  if (!has_clocks()) throw UsageError("uniflow clocks have not been regenerated");
  const std::size_t slot = source_->slot_of(id);
  const auto span = clock(chain_of_[slot], position_[slot]);
  return VectorClock(std::vector<Count>(span.begin(), span.end()));
}

Cut UniflowPartition::full_cut() const {
  Cut cut(chains_.size());
  for (std::size_t pos = 0; pos < chains_.size(); ++pos) cut[pos] = chain_length(pos);
  return cut;
}

PartitionerState::PartitionerState(const Computation& comp)
    : comp_(&comp), chain_of_(comp.size(), 0) {}

std::uint32_t find_uniflow_chain(const Event& e, PartitionerState& state) {
  const Computation& comp = *state.comp_;
  const std::size_t slot = comp.slot_of(e.id);
  if (state.chain_of_[slot] != 0) {
    throw OrderingError("event " + std::to_string(e.id.value) + " was already placed");
  }

  // Start from the executing process, then rise above every dependency.
  std::uint32_t uid = e.process;
  for (std::uint32_t dep : comp.predecessors(slot)) {
    const std::uint32_t dep_chain = state.chain_of_[dep];
    if (dep_chain == 0) {
      throw OrderingError("event " + std::to_string(e.id.value) + " delivered before dependency " +
                          std::to_string(comp.at(dep).id.value));
    }
    uid = std::max(uid, dep_chain);
  }

  auto it = state.chains_.find(uid);
  if (it != state.chains_.end()) {
    const Event& last = comp.at(it->second.back());
    if (concurrent(e.vc, last.vc)) {
      uid = ++state.maxid_;
      state.chains_[uid].push_back(static_cast<std::uint32_t>(slot));
    } else {
      it->second.push_back(static_cast<std::uint32_t>(slot));
    }
  } else {
    state.chains_[uid].push_back(static_cast<std::uint32_t>(slot));
    state.maxid_ = std::max(state.maxid_, uid);
  }
  state.chain_of_[slot] = uid;
  return uid;
}

UniflowPartition build_uniflow_partition(const Computation& comp) {
  PartitionerState state(comp);
  for (std::uint32_t slot : comp.topo_order()) find_uniflow_chain(comp.at(slot), state);

  std::vector<std::uint32_t> ids;
  ids.reserve(state.chains_.size());
  for (const auto& [id, _] : state.chains_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());

  std::vector<std::vector<std::uint32_t>> chains;
  chains.reserve(ids.size());
  for (std::uint32_t id : ids) chains.push_back(std::move(state.chains_[id]));
  return UniflowPartition::assemble(comp, std::move(chains));
}

UniflowPartition regenerate_vector_clocks(UniflowPartition p) {
  const Computation& comp = *p.source_;
  const std::size_t width = p.chains_.size();
  p.clocks_.assign(width, {});
  for (std::size_t pos = 0; pos < width; ++pos) p.clocks_[pos].assign(p.chains_[pos].size() * width, 0);

  auto row = [&](std::uint32_t slot) {
    return p.clocks_[p.chain_of_[slot]].data() + (p.position_[slot] - 1) * width;
  };

  for (std::uint32_t slot : comp.topo_order()) {
    Count* vc = row(slot);
    const std::uint32_t pos = p.chain_of_[slot];
    const Count position = p.position_[slot];
    if (position > 1) {
      const Count* prev = p.clocks_[pos].data() + (position - 2) * width;
      std::copy(prev, prev + width, vc);
    }
    for (std::uint32_t dep : comp.predecessors(slot)) {
      const Count* dv = row(dep);
      for (std::size_t j = 0; j < width; ++j) vc[j] = std::max(vc[j], dv[j]);
    }
    vc[pos] = position;
  }
  return p;
}

bool verify_uniflow(const UniflowPartition& p) {
  const Computation& comp = p.source();
  for (std::size_t pos = 0; pos < p.chain_count(); ++pos) {
    const auto chain = p.chain(pos);
    for (std::size_t k = 1; k < chain.size(); ++k) {
      if (!happened_before(comp.at(chain[k - 1]).vc, comp.at(chain[k]).vc)) return false;
    }
  }
  if (p.has_clocks()) {
    // A nonzero entry above an event's own chain means a dependency there.
    for (std::size_t pos = 0; pos < p.chain_count(); ++pos) {
      for (Count k = 1; k <= p.chain_length(pos); ++k) {
        const auto vc = p.clock(pos, k);
        for (std::size_t j = pos + 1; j < vc.size(); ++j) {
          if (vc[j] != 0) return false;
        }
      }
    }
    return true;
  }
  // Without clocks: every direct edge must stay on or rise above its source
  // chain; paths then cannot descend either.
  for (std::size_t slot = 0; slot < comp.size(); ++slot) {
    const Event& ev = comp.at(slot);
    const std::uint32_t chain = p.chain_of(ev.id);
    for (std::uint32_t dep : comp.predecessors(slot)) {
      if (p.chain_of(comp.at(dep).id) > chain) return false;
    }
  }
  return true;
}

UniflowPartition trivial_partition(const Computation& comp) {
  std::vector<std::uint32_t> order(comp.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const Event& ea = comp.at(a);
    const Event& eb = comp.at(b);
    const auto cmp = lexical_compare(Cut(ea.vc.values()), Cut(eb.vc.values()));
    if (cmp != 0) return cmp < 0;
    return ea.process < eb.process;
  });
  std::vector<std::vector<std::uint32_t>> chains;
  chains.reserve(order.size());
  for (std::uint32_t slot : order) chains.push_back({slot});
  return UniflowPartition::assemble(comp, std::move(chains));
}

Cut uniflow_fill(const Cut& g, std::uint32_t k, const UniflowPartition& p) {
  if (k > p.chain_count()) {
    throw UsageError("fill level " + std::to_string(k) + " exceeds chain count " +
                     std::to_string(p.chain_count()));
  }
  if (!p.has_clocks()) throw UsageError("uniflow clocks have not been regenerated");
  if (!is_consistent(g, p)) throw UsageError("uniflow_fill needs a consistent cut, got " + to_string(g));
  Cut h = g;
  for (std::size_t pos = 0; pos < k; ++pos) h[pos] = p.chain_length(pos);
  return h;
}

}  // namespace cutlattice
