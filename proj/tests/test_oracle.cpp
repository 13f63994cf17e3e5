#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "mec/oracle.hpp"

namespace mec {
namespace {

using namespace fixtures;

TEST(EnumerateDags, Counts) {
  EXPECT_EQ(enumerate_dags(2).size(), 3u);
  EXPECT_EQ(enumerate_dags(3).size(), 25u);
  EXPECT_EQ(enumerate_dags(4).size(), 543u);
  EXPECT_THROW(enumerate_dags(6), Error);
}

TEST(EnumerateClasses, CountsAndPartition) {
  EXPECT_EQ(enumerate_classes(2, 1).size(), 2u);
  const auto c3 = enumerate_classes(3, 3);
  const auto c4 = enumerate_classes(4, 6);
  EXPECT_EQ(c3.size(), 11u);
  EXPECT_EQ(c4.size(), 185u);
  EXPECT_EQ(std::accumulate(c3.dag_counts.begin(), c3.dag_counts.end(), std::size_t{0}), 25u);
  EXPECT_EQ(std::accumulate(c4.dag_counts.begin(), c4.dag_counts.end(), std::size_t{0}), 543u);
  for (std::size_t i = 0; i < c4.size(); ++i) {
    EXPECT_EQ(c4.find(c4.classes[i].graph()), i);
  }
}

TEST(EnumerateClasses, EdgeBoundFilters) {
  const auto cat = enumerate_classes(4, 2);
  for (const auto& c : cat.classes) EXPECT_LE(c.num_edges(), 2u);
  // Empty, six single edges, three disjoint pairs, and a chain or a
  // v-structure on each of the twelve two-edge paths.
  EXPECT_EQ(cat.size(), 1u + 6u + 3u + 2u * 12u);
}

TEST(ReversibilityOracle, ExampleOperators) {
  const auto c = certify(c_ex());
  EXPECT_FALSE(reversibility_oracle(c, Operator::insert_u(Z, U)));
  EXPECT_FALSE(reversibility_oracle(c, Operator::delete_d(Z, V)));
  EXPECT_TRUE(reversibility_oracle(c, Operator::remove_v(Z, V, U)));
  const auto back = resulting_cpdag(certify(c1()), Operator::make_v(Z, V, U));
  EXPECT_EQ(back, c);
}

TEST(VerifyPerfectness, SmallStateSpaces) {
  for (auto [p, n] : {std::pair{3, 3}, std::pair{4, 6}, std::pair{4, 3}}) {
    const auto r = verify_perfectness(p, static_cast<std::size_t>(n));
    EXPECT_TRUE(r.all_pass()) << p << " " << n;
    EXPECT_GT(r.operators, 0u);
    EXPECT_TRUE(r.irreducibility.counterexamples.empty());
  }
  EXPECT_THROW(verify_perfectness(6, 15), Error);
}

TEST(VerifyPerfectness, AllStrategiesPassAtFourVertices) {
  for (auto s : {SetStrategy::Recompute, SetStrategy::FastChecks, SetStrategy::Local}) {
    EXPECT_TRUE(verify_perfectness(4, 6, s).all_pass());
  }
}

TEST(VerifyPerfectness, CorruptedSetIsCaught) {
  const auto c = certify(c_ex());
  auto set = perfect_operator_set(c, 10);
  set.insert(Operator::insert_u(Z, U));
  const auto builder = [](const CompletedPdag& g) { return perfect_operator_set(g, 10); };
  const auto bad = reversibility_counterexamples(c, set, builder);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_NE(bad[0].find("InsertU 2-3"), std::string::npos) << bad[0];
  EXPECT_TRUE(reversibility_counterexamples(c, perfect_operator_set(c, 10), builder).empty());
}

TEST(ExactStationary, MetropolisIsUniform) {
  const auto pi = exact_stationary(3, 3, ChainMode::Metropolis);
  ASSERT_EQ(pi.size(), 11u);
  for (double x : pi) EXPECT_NEAR(x, 1.0 / 11, 1e-12);
  const auto two = exact_stationary(2, 1, ChainMode::Metropolis);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(two[0], 0.5, 1e-12);
  EXPECT_NEAR(two[1], 0.5, 1e-12);
  EXPECT_THROW(exact_stationary(5, 10, ChainMode::Raw), Error);
}

TEST(ExactStationary, RawIsProportionalToOutDegree) {
  const auto cat = enumerate_classes(3, 3);
  const auto pi = exact_stationary(3, 3, ChainMode::Raw);
  double total = 0.0;
  for (const auto& c : cat.classes) total += static_cast<double>(perfect_out_degree(c, 3));
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_NEAR(pi[i], perfect_out_degree(cat.classes[i], 3) / total, 1e-12);
  }
}

TEST(ExactStationary, LazyChainKeepsTheLaw) {
  const auto cat = enumerate_classes(4, 6);
  const auto pi = stationary_distribution(transition_matrix(cat, ChainMode::Metropolis, 0.3));
  for (double x : pi) EXPECT_NEAR(x, 1.0 / 185, 1e-12);
}

TEST(DetailedBalance, ExactAtSmallSizes) {
  for (int p : {3, 4}) {
    const auto cat = enumerate_classes(p, fixtures::full_bound(p));
    EXPECT_TRUE(detailed_balance_exact(cat, ChainMode::Raw));
    EXPECT_TRUE(detailed_balance_exact(cat, ChainMode::Metropolis));
  }
}

TEST(TransitionMatrix, RowsAreStochastic) {
  const auto cat = enumerate_classes(4, 6);
  for (auto mode : {ChainMode::Raw, ChainMode::Metropolis}) {
    for (const auto& row : transition_matrix(cat, mode)) {
      double s = 0.0;
      for (double x : row) {
        EXPECT_GE(x, 0.0);
        s += x;
      }
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace mec
