#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <thread>

#include "mec/io.hpp"
#include "mec/oracle.hpp"
#include "mec/sampler.hpp"

namespace mec {
namespace {

ChainConfig small(ChainMode mode, std::uint64_t steps, std::uint64_t seed = 1) {
  ChainConfig c;
  c.p = 3;
  c.max_edges = 3;
  c.steps = steps;
  c.seed = seed;
  c.mode = mode;
  return c;
}

bool same(const std::vector<SampleRecord>& a, const std::vector<SampleRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (trace_record_line(a[i]) != trace_record_line(b[i])) return false;
  }
  return true;
}

TEST(ChainConfig, RejectsBadSettings) {
  auto c = small(ChainMode::Metropolis, 10);
  EXPECT_NO_THROW(c.validate());
  c.burn_in = 20;
  EXPECT_THROW(c.validate(), Error);
  c = small(ChainMode::Metropolis, 10);
  c.thin = 0;
  EXPECT_THROW(c.validate(), Error);
  c = small(ChainMode::Metropolis, 10);
  c.laziness = 1.0;
  EXPECT_THROW(c.validate(), Error);
  c = small(ChainMode::Metropolis, 10);
  MixedGraph full(3);
  full.add_undirected(0, 1);
  full.add_undirected(1, 2);
  full.add_undirected(0, 2);
  c.start = full;
  c.max_edges = 2;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Run, DeterministicUnderSeed) {
  auto c = small(ChainMode::Metropolis, 5000, 42);
  c.p = 6;
  c.max_edges = 9;
  EXPECT_TRUE(same(run(c).records, run(c).records));
  auto other = c;
  other.seed = 43;
  EXPECT_FALSE(same(run(c).records, run(other).records));
}

TEST(Run, IndependentOfConcurrentChains) {
  auto c = small(ChainMode::Raw, 3000, 5);
  c.p = 7;
  c.max_edges = 10;
  const auto alone = run(c).records;
  std::vector<ChainTrace> traces(4);
  std::vector<std::thread> workers;
  for (int k = 0; k < 4; ++k) {
    workers.emplace_back([&, k] {
      auto ck = c;
      ck.seed = c.seed + static_cast<std::uint64_t>(k);
      traces[static_cast<std::size_t>(k)] = run(ck);
    });
  }
  for (auto& w : workers) w.join();
  EXPECT_TRUE(same(traces[0].records, alone));
}

TEST(Run, BurnInAndThinning) {
  auto c = small(ChainMode::Metropolis, 1000);
  c.burn_in = 100;
  c.thin = 9;
  const auto t = run(c);
  ASSERT_EQ(t.records.size(), 100u);
  EXPECT_EQ(t.records.front().step, 109u);
  EXPECT_EQ(t.records.back().step, 1000u);
}

TEST(Step, VisitedStatesStayInTheStateSpace) {
  for (auto mode : {ChainMode::Raw, ChainMode::Metropolis}) {
    ChainConfig c;
    c.p = 9;
    c.max_edges = 12;
    c.steps = 1;
    c.mode = mode;
    c.laziness = 0.1;
    auto state = initial_state(c);
    for (int t = 0; t < 3000; ++t) {
      step(state, c);
      ASSERT_LE(state.current.num_edges(), 12u);
      if (t % 50 == 0) {
        EXPECT_NO_THROW(certify(state.current.graph()));
        EXPECT_EQ(state.operators, perfect_operator_set(state.current, 12));
      }
    }
  }
}

TEST(Step, FirstRawMoveIsUniformOverInsertions) {
  std::map<std::string, int> hits;
  const int trials = 30000;
  for (int s = 0; s < trials; ++s) {
    auto c = small(ChainMode::Raw, 1, static_cast<std::uint64_t>(s) + 1);
    auto state = initial_state(c);
    step(state, c);
    ++hits[inline_edges(state.current.graph())];
  }
  ASSERT_EQ(hits.size(), 3u);
  for (const auto& [key, k] : hits) EXPECT_NEAR(k / double(trials), 1.0 / 3, 0.015) << key;
}

TEST(Step, AcceptanceFromOneEdgeBackToEmpty) {
  const auto cat = enumerate_classes(3, 3);
  MixedGraph one(3);
  one.add_undirected(0, 1);
  const auto i = *cat.find(one);
  const auto e = *cat.find(MixedGraph(3));
  const double d_one = static_cast<double>(perfect_out_degree(cat.classes[i], 3));
  const double d_empty = static_cast<double>(perfect_out_degree(cat.classes[e], 3));
  EXPECT_EQ(d_empty, 3.0);
  const auto P = transition_matrix(cat, ChainMode::Metropolis);
  EXPECT_NEAR(P[i][e], (1.0 / d_one) * std::min(1.0, d_one / d_empty), 1e-15);
  const auto R = transition_matrix(cat, ChainMode::Raw);
  EXPECT_NEAR(R[i][e], 1.0 / d_one, 1e-15);
}

TEST(Step, LazinessHoldsState) {
  auto c = small(ChainMode::Raw, 1);
  c.laziness = 0.5;
  auto state = initial_state(c);
  int held = 0;
  for (int t = 0; t < 20000; ++t) {
    const auto before = state.current;
    step(state, c);
    if (state.current == before) ++held;
  }
  // From every p=3 class the raw chain moves unless it holds.
  EXPECT_NEAR(held / 20000.0, 0.5, 0.02);
}

TEST(EstimateUniform, ConstantStatisticIsExact) {
  const auto t = run(small(ChainMode::Raw, 2000));
  EXPECT_DOUBLE_EQ(estimate_uniform(t, [](const SampleRecord&) { return 2.5; }).estimate, 2.5);
  ChainTrace empty;
  EXPECT_THROW(estimate_uniform(empty, [](const SampleRecord&) { return 0.0; }), Error);
}

// Batch-means standard error of the weighted mean.
double batch_se(const ChainTrace& t, const std::function<double(const SampleRecord&)>& f) {
  const std::size_t batches = 50, size = t.records.size() / batches;
  std::vector<double> means;
  for (std::size_t b = 0; b < batches; ++b) {
    ChainTrace part;
    part.mode = t.mode;
    part.records.assign(t.records.begin() + b * size, t.records.begin() + (b + 1) * size);
    means.push_back(estimate_uniform(part, f).estimate);
  }
  double m = 0.0, v = 0.0;
  for (double x : means) m += x / batches;
  for (double x : means) v += (x - m) * (x - m) / (batches - 1);
  return std::sqrt(v / batches);
}

TEST(EstimateUniform, ReweightedRawChainMatchesExactMean) {
  const auto cat = enumerate_classes(3, 3);
  double exact = 0.0;
  for (const auto& c : cat.classes) exact += static_cast<double>(c.num_edges()) / cat.size();

  auto edges = [](const SampleRecord& r) { return static_cast<double>(r.edges); };
  const auto raw = run(small(ChainMode::Raw, 400000, 17));
  const auto est = estimate_uniform(raw, edges);
  const double se_raw = batch_se(raw, edges);
  EXPECT_NEAR(est.estimate, exact, 3 * se_raw);
  EXPECT_GT(est.effective_sample_size, 0.5 * raw.records.size());

  const auto met = run(small(ChainMode::Metropolis, 400000, 18));
  const double se_met = batch_se(met, edges);
  EXPECT_NEAR(estimate_uniform(met, edges).estimate, est.estimate,
              3 * std::hypot(se_raw, se_met));
}

TEST(Run, StartsFromSuppliedGraph) {
  auto c = small(ChainMode::Metropolis, 1);
  MixedGraph g(3);
  g.add_directed(0, 2);
  g.add_directed(1, 2);
  c.start = g;
  const auto s = initial_state(c);
  EXPECT_EQ(s.current.graph(), g);
  EXPECT_EQ(summarize(s).vstructs, 1u);
}

TEST(ChainMode, ParsesNames) {
  EXPECT_EQ(parse_chain_mode("raw"), ChainMode::Raw);
  EXPECT_EQ(parse_chain_mode("metropolis"), ChainMode::Metropolis);
  EXPECT_THROW(parse_chain_mode("gibbs"), Error);
}

}  // namespace
}  // namespace mec
