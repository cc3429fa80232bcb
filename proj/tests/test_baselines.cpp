#include "doctest.h"

#include "cutlattice/baselines.hpp"
#include "support/oracles.hpp"

using namespace cutlattice;
namespace t = cutlattice::testing;

namespace {

Cut cut(std::initializer_list<Count> display) { return Cut::from_display(display); }

std::vector<std::vector<Cut>> levels(const Computation& c, LevelBfsOptions options = {}) {
  std::vector<std::vector<Cut>> out(c.size() + 1);
  traditional_bfs(
      c,
      [&](const CutVisit& v) {
        out[v.rank()].push_back(v.cut());
        return VisitAction::Continue;
      },
      options);
  return out;
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("enabled events") {
  const Computation c = t::fig1();
  CHECK(enabled_events(Cut(2), c) == std::vector<std::uint32_t>{1, 2});
  CHECK(enabled_events(cut({1, 1}), c) == std::vector<std::uint32_t>{1});
  CHECK(enabled_events(c.full_cut(), c).empty());
  CHECK_THROWS_AS(enabled_events(Cut(3), c), UsageError);
}

TEST_CASE("level BFS on the six-event example") {
  const Computation c = t::fig1();
  std::vector<std::vector<Cut>> got(7);
  const auto stats = traditional_bfs(c, [&](const CutVisit& v) {
    CHECK(&v.original() == &v.cut());
    got[v.rank()].push_back(v.cut());
    return VisitAction::Continue;
  });
  CHECK(stats.cuts_visited == 12);
  CHECK(stats.cuts_per_rank == std::vector<std::uint64_t>{1, 2, 2, 2, 2, 2, 1});
  CHECK(got[3] == std::vector<Cut>{cut({0, 3}), cut({1, 2})});
  CHECK(stats.peak_stored_cuts == 2);
  CHECK(stats.peak_live_cuts == 4);
  CHECK(stats.expanded_per_rank == std::vector<std::uint64_t>{1, 2, 2, 2, 2, 2});
  CHECK(stats.expanded_cuts == 11);
  CHECK(stats.duplicates_suppressed == 5);
}

TEST_CASE("rank window still expands from the bottom") {
  const Computation c = t::fig1();
  LevelBfsOptions options;
  options.first_rank = 3;
  options.last_rank = 3;
  const auto stats = traditional_bfs(c, {}, options);
  CHECK(stats.cuts_per_rank == std::vector<std::uint64_t>{2});
  CHECK(stats.expanded_per_rank == std::vector<std::uint64_t>{1, 2, 2});
  CHECK(stats.cuts_visited == 2);

  options.first_rank = 4;
  CHECK_THROWS_AS(traditional_bfs(c, {}, options), UsageError);
  options.first_rank = 0;
  options.last_rank = 7;
  CHECK_THROWS_AS(traditional_bfs(c, {}, options), UsageError);
}

TEST_CASE("stored-cut cap") {
  const Computation c = t::fig1();
  LevelBfsOptions options;
  options.max_stored_cuts = 3;
  try {
    traditional_bfs(c, {}, options);
    FAIL("expected the cap to trip");
  } catch (const LevelBfsResourceError& e) {
    CHECK(e.partial().cuts_visited >= 1);
    CHECK(e.partial().peak_live_cuts == 4);
  }
  options.max_stored_cuts = 4;
  CHECK(traditional_bfs(c, {}, options).cuts_visited == 12);
}

TEST_CASE("visitor can stop") {
  const Computation c = t::fig1();
  const auto stats = traditional_bfs(c, [](const CutVisit& v) {
    return v.rank() == 2 ? VisitAction::Stop : VisitAction::Continue;
  });
  CHECK(stats.stopped_early);
  CHECK(stats.cuts_visited == 4);
}

TEST_CASE("brute force") {
  const Computation c = t::fig1();
  const auto by_rank = brute_force_downsets(c);
  std::size_t total = 0;
  for (const auto& level : by_rank) total += level.size();
  CHECK(total == 12);
  CHECK(by_rank[3] == std::vector<Cut>{cut({0, 3}), cut({1, 2})});

  std::vector<EventRecord> many;
  for (std::uint32_t i = 1; i <= kBruteForceEventLimit + 1; ++i) many.push_back({EventId{i}, 1, {}});
  CHECK_THROWS_AS(brute_force_downsets(Computation::from_records(1, many)), UsageError);

  const auto empty = brute_force_downsets(Computation::from_records(2, {}));
  CHECK(empty == std::vector<std::vector<Cut>>{{Cut(2)}});
}

TEST_CASE("baselines match the powerset oracle") {
  for (const auto& entry : t::random_corpus(120, 12, 51)) {
    const auto c = Computation::from_records(entry.processes, entry.records);
    const auto expected = t::powerset_downsets(entry.processes, entry.records);
    CHECK(brute_force_downsets(c) == expected);
    CHECK(levels(c) == expected);
    std::size_t widest = 0;
    for (const auto& level : expected) widest = std::max(widest, level.size());
    CHECK(traditional_bfs(c, {}).peak_stored_cuts == widest);
  }
}

}  // TEST_SUITE
