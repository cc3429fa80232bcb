#include "doctest.h"

#include "cutlattice/baselines.hpp"
#include "cutlattice/traversal.hpp"
#include "support/oracles.hpp"

using namespace cutlattice;
namespace t = cutlattice::testing;

namespace {

Cut cut(std::initializer_list<Count> display) { return Cut::from_display(display); }

UniflowPartition uniflow_of(const Computation& c) {
  return regenerate_vector_clocks(build_uniflow_partition(c));
}

UniflowPartition identity_of(const Computation& c) {
  return regenerate_vector_clocks(UniflowPartition::original(c));
}

std::vector<Cut> sequence(const UniflowPartition& p, TraversalOptions options = {}) {
  std::vector<Cut> out;
  traverse_bfs(
      p,
      [&](const CutVisit& v) {
        out.push_back(v.cut());
        return VisitAction::Continue;
      },
      options);
  return out;
}

}  // namespace

TEST_SUITE("traversal") {

TEST_CASE("get_min_cut") {
  const Computation c = t::fig6();
  const auto p = identity_of(c);
  CHECK(get_min_cut(cut({0, 0, 0}), 4, p) == cut({0, 1, 3}));
  CHECK(get_min_cut(cut({0, 0, 2}), 5, p) == cut({0, 2, 3}));
  CHECK(get_min_cut(cut({0, 0, 0}), 0, p) == cut({0, 0, 0}));
  CHECK(get_min_cut(cut({0, 0, 0}), 9, p) == cut({3, 3, 3}));
  CHECK_THROWS_AS(get_min_cut(cut({0, 1, 3}), 3, p), UsageError);
  CHECK_THROWS_AS(get_min_cut(cut({0, 0, 0}), 10, p), UsageError);
  CHECK_THROWS_AS(get_min_cut(Cut(2), 1, p), UsageError);
}

TEST_CASE("get_successor in both variants") {
  const Computation c = t::fig6();
  const auto p = identity_of(c);
  for (auto succ : {get_successor, get_successor_optimized}) {
    CHECK(succ(cut({0, 0, 3}), 3, p) == cut({0, 1, 2}));
    CHECK(succ(cut({1, 2, 3}), 6, p) == cut({1, 3, 2}));
    CHECK_FALSE(succ(cut({3, 3, 3}), 9, p).has_value());
    CHECK_FALSE(succ(cut({0, 0, 0}), 0, p).has_value());
  }
  CHECK_THROWS_AS(get_successor(Cut(2), 1, p), UsageError);
  const auto bare = UniflowPartition::original(c);
  CHECK_THROWS_AS(get_successor(cut({0, 0, 3}), 3, bare), UsageError);
  CHECK_THROWS_AS(get_successor_optimized(cut({0, 0, 3}), 3, bare), UsageError);
}

TEST_CASE("projection rows") {
  const Computation c = t::fig7();
  const auto p = identity_of(c);
  const ProjectionMatrix m = compute_projections(cut({1, 3, 2}), p);
  CHECK(Cut(std::vector<Count>(m.row(2).begin(), m.row(2).end())) == cut({1, 0, 0}));
  CHECK(Cut(std::vector<Count>(m.row(1).begin(), m.row(1).end())) == cut({1, 3, 1}));
  CHECK(Cut(std::vector<Count>(m.row(0).begin(), m.row(0).end())) == cut({1, 3, 2}));
  CHECK_THROWS_AS(compute_projections(Cut(2), p), UsageError);
}

TEST_CASE("lexical sequence over three uniflow chains") {
  const Computation c = t::fig5a();
  const auto p = uniflow_of(c);
  const std::vector<Cut> expected = {cut({0, 0, 0}), cut({0, 0, 1}), cut({0, 1, 0}),
                                     cut({0, 1, 1}), cut({0, 2, 1}), cut({1, 1, 1}),
                                     cut({1, 2, 1})};
  CHECK(sequence(p) == expected);
  CHECK(remap(cut({1, 2, 1}), p) == cut({2, 2}));
  CHECK(remap(cut({0, 0, 1}), p) == cut({0, 1}));
  CHECK(remap(cut({0, 1, 0}), p) == cut({1, 0}));
  CHECK_THROWS_AS(remap(cut({1, 0, 0}), p), UsageError);
}

TEST_CASE("remap is a rank-preserving bijection onto the original cuts") {
  const Computation c = t::fig5a();
  const auto p = uniflow_of(c);
  std::vector<Cut> originals;
  traverse_bfs(p, [&](const CutVisit& v) {
    CHECK(rank(v.original()) == v.rank());
    originals.push_back(v.original());
    return VisitAction::Continue;
  });
  const std::vector<Cut> expected = {cut({0, 0}), cut({0, 1}), cut({1, 0}), cut({1, 1}),
                                     cut({1, 2}), cut({2, 1}), cut({2, 2})};
  std::vector<Cut> sorted = originals;
  std::sort(sorted.begin(), sorted.end(), [](const Cut& a, const Cut& b) {
    return rank(a) != rank(b) ? rank(a) < rank(b) : LexicalLess{}(a, b);
  });
  CHECK(sorted == expected);
}

TEST_CASE("six-event example") {
  const Computation c = t::fig1();
  const auto p = uniflow_of(c);
  std::vector<std::vector<Cut>> by_rank(7);
  const auto stats = traverse_bfs(p, [&](const CutVisit& v) {
    by_rank[v.rank()].push_back(v.original());
    return VisitAction::Continue;
  });
  CHECK(stats.cuts_visited == 12);
  CHECK(stats.cuts_per_rank == std::vector<std::uint64_t>{1, 2, 2, 2, 2, 2, 1});
  CHECK(by_rank[3] == std::vector<Cut>{cut({0, 3}), cut({1, 2})});
  CHECK(stats.min_cut_calls == 7);
  CHECK(stats.peak_retained_cuts == 3);
  CHECK(stats.peak_aux_numeric == 2 * 2 + 2);
}

TEST_CASE("rank range and early stop") {
  const Computation c = t::fig1();
  const auto p = uniflow_of(c);
  std::vector<Rank> ranks;
  const auto stats = traverse_rank_range(p, 2, 3, [&](const CutVisit& v) {
    ranks.push_back(v.rank());
    return VisitAction::Continue;
  });
  CHECK(ranks == std::vector<Rank>{2, 2, 3, 3});
  CHECK(stats.calls_outside_range == 0);
  CHECK(stats.first_rank == 2);

  std::size_t seen = 0;
  const auto stopped = traverse_bfs(p, [&](const CutVisit&) {
    return ++seen == 3 ? VisitAction::Stop : VisitAction::Continue;
  });
  CHECK(stopped.stopped_early);
  CHECK(stopped.cuts_visited == 3);

  CHECK_THROWS_AS(traverse_rank_range(p, 3, 2, {}), UsageError);
  CHECK_THROWS_AS(traverse_rank_range(p, 0, 7, {}), UsageError);
  CHECK_THROWS_AS(traverse_bfs(build_uniflow_partition(c), {}), UsageError);
}

TEST_CASE("empty computation yields the empty cut only") {
  const auto c = Computation::from_records(2, {});
  const auto p = uniflow_of(c);
  const auto stats = traverse_bfs(p, [&](const CutVisit& v) {
    CHECK(v.original() == Cut(2));
    return VisitAction::Continue;
  });
  CHECK(stats.cuts_visited == 1);
}

TEST_CASE("cursor seeks and advances") {
  const Computation c = t::fig6();
  const auto p = identity_of(c);
  LexicalCursor cursor(p, {});
  cursor.seek(3);
  CHECK(cursor.current() == cut({0, 0, 3}));
  REQUIRE(cursor.advance());
  CHECK(cursor.current() == cut({0, 1, 2}));
  CHECK(cursor.current_rank() == 3);
  CHECK_THROWS_AS(cursor.seek(10), UsageError);
}

TEST_CASE("enumeration matches the downset oracle") {
  for (const auto& entry : t::random_corpus(120, 12, 31)) {
    const auto c = Computation::from_records(entry.processes, entry.records);
    const auto expected = t::powerset_downsets(entry.processes, entry.records);
    for (const auto& p : {uniflow_of(c), regenerate_vector_clocks(trivial_partition(c))}) {
      std::vector<std::vector<Cut>> got(c.size() + 1);
      const auto stats = traverse_bfs(p, [&](const CutVisit& v) {
        got[v.rank()].push_back(v.original());
        return VisitAction::Continue;
      });
      for (auto& level : got) std::sort(level.begin(), level.end(), LexicalLess{});
      CHECK(got == expected);
      CHECK(stats.peak_retained_cuts <= 3);
      CHECK(stats.peak_aux_numeric == p.chain_count() * p.chain_count() + c.process_count());

      // Each rank comes out in strictly increasing lexical order.
      const auto seq = sequence(p);
      for (std::size_t i = 1; i < seq.size(); ++i) {
        if (rank(seq[i]) == rank(seq[i - 1])) CHECK(LexicalLess{}(seq[i - 1], seq[i]));
      }
      CHECK(sequence(p, {true, false}) == seq);
      CHECK(sequence(p, {false, true}) == seq);
    }
  }
}

TEST_CASE("successor variants agree on every consistent cut") {
  for (const auto& entry : t::random_corpus(120, 12, 41)) {
    const auto c = Computation::from_records(entry.processes, entry.records);
    const t::Reachability reach(entry.processes, entry.records);
    const auto p = uniflow_of(c);
    const auto cuts = t::scan_consistent_cuts(p, reach);
    for (Rank r = 0; r < cuts.size(); ++r) {
      const auto& level = cuts[r];
      REQUIRE_FALSE(level.empty());
      CHECK(get_min_cut(Cut(p.chain_count()), r, p) == level.front());
      for (std::size_t i = 0; i < level.size(); ++i) {
        const auto plain = get_successor(level[i], r, p);
        const auto fast = get_successor_optimized(level[i], r, p);
        CHECK(plain == fast);
        if (i + 1 < level.size()) {
          CHECK(fast == level[i + 1]);
        } else {
          CHECK_FALSE(fast.has_value());
        }
      }
    }
  }
}

TEST_CASE("rank slices visit only their ranks") {
  const auto c = generate_random({4, 16, 0.3, 5});
  const auto p = uniflow_of(c);
  const auto all = traverse_bfs(p, {});
  for (Rank r = 0; r <= c.size(); ++r) {
    const auto slice = traverse_rank_range(p, r, r, {});
    CHECK(slice.calls_outside_range == 0);
    CHECK(slice.min_cut_calls == 1);
    CHECK(slice.cuts_visited == all.cuts_per_rank[r]);
  }
}

}  // TEST_SUITE
