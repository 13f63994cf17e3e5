#include <gtest/gtest.h>

#include "local_rules.hpp"
#include "mec/io.hpp"
#include "mec/oracle.hpp"

namespace mec {
namespace {

void expect_matches_recompute(const CompletedPdag& c, std::size_t n) {
  const auto want = perfect_operator_set(c, n, SetStrategy::Recompute);
  const detail::LocalContext ctx(c);
  const auto got = ctx.collect(n);
  EXPECT_EQ(got, want) << inline_edges(c.graph());
  EXPECT_EQ(ctx.count(n), want.out_degree());
  for (const auto& op : candidate_operators(c.graph(), n)) {
    EXPECT_EQ(ctx.member(op), want.contains(op)) << inline_edges(c.graph()) << " " << to_string(op);
  }
}

TEST(LocalRules, AllClassesAtFiveVertices) {
  const auto cat = enumerate_classes(5, 10);
  ASSERT_EQ(cat.size(), 8782u);
  for (std::size_t i = 0; i < cat.size(); i += 3) expect_matches_recompute(cat.classes[i], 10);
}

TEST(LocalRules, TightEdgeBound) {
  for (const auto& c : enumerate_classes(4, 4).classes) expect_matches_recompute(c, 4);
}

class ChainStates : public ::testing::TestWithParam<std::pair<int, std::size_t>> {};

TEST_P(ChainStates, MatchRecompute) {
  const auto [p, n] = GetParam();
  ChainConfig cfg;
  cfg.p = p;
  cfg.max_edges = n;
  cfg.steps = 1;
  cfg.seed = static_cast<std::uint64_t>(p) * 31 + n;
  auto state = initial_state(cfg);
  const int snapshots = p >= 50 ? 6 : 25;
  const int spacing = p >= 50 ? 400 : 60;
  for (int s = 0; s < snapshots; ++s) {
    for (int t = 0; t < spacing; ++t) step(state, cfg);
    expect_matches_recompute(state.current, n);
    EXPECT_EQ(state.operators, perfect_operator_set(state.current, n, SetStrategy::Recompute));
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, ChainStates,
                         ::testing::Values(std::pair<int, std::size_t>{8, 28},
                                           std::pair<int, std::size_t>{8, 10},
                                           std::pair<int, std::size_t>{12, 30},
                                           std::pair<int, std::size_t>{20, 40},
                                           std::pair<int, std::size_t>{40, 60},
                                           std::pair<int, std::size_t>{100, 150}));

}  // namespace
}  // namespace mec
