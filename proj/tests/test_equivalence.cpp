#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mec/equivalence.hpp"
#include "mec/oracle.hpp"

namespace mec {
namespace {

using namespace fixtures;
using Config = ProtectionWitness::Config;

TEST(StronglyProtected, ExampleEdges) {
  const auto w = strongly_protected(c_ex(), Z, V);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->config, Config::B);
  EXPECT_EQ(w->w, U);
  EXPECT_FALSE(strongly_protected(p4(), Y, V));
  EXPECT_THROW(strongly_protected(c_ex(), X, Y), Error);

  MixedGraph chain(3);
  chain.add_directed(0, 1);
  chain.add_directed(1, 2);
  const auto a = strongly_protected(chain, 1, 2);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->config, Config::A);
  EXPECT_EQ(a->w, 0);
}

TEST(ConsistentExtension, OrientsModifiedExample) {
  EXPECT_EQ(consistent_extension(p6()), d6());
  EXPECT_EQ(consistent_extension(d6()), d6());
}

TEST(ConsistentExtension, ChordlessCycleIsNotExtendable) {
  MixedGraph g(4);
  g.add_undirected(0, 1);
  g.add_undirected(1, 2);
  g.add_undirected(2, 3);
  g.add_undirected(3, 0);
  try {
    consistent_extension(g);
    FAIL() << "expected NotExtendable";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotExtendable);
  }
}

TEST(ConsistentExtension, ChordlessCycleHasNoValidOrientation) {
  // Brute force over all 16 orientations of the 4-cycle.
  const Edge cycle[4] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  for (int mask = 0; mask < 16; ++mask) {
    MixedGraph d(4);
    for (int i = 0; i < 4; ++i) {
      auto [a, b] = cycle[i];
      if (mask >> i & 1) d.add_directed(a, b); else d.add_directed(b, a);
    }
    EXPECT_TRUE(has_directed_cycle(d) || !v_structures(d).empty());
  }
}

TEST(DagToCpdag, LabelsExampleExtension) {
  EXPECT_EQ(dag_to_cpdag(d6()).graph(), c1());

  MixedGraph edge(2);
  edge.add_directed(0, 1);
  EXPECT_TRUE(dag_to_cpdag(edge).graph().has_undirected(0, 1));

  MixedGraph collider(3);
  collider.add_directed(0, 2);
  collider.add_directed(1, 2);
  EXPECT_EQ(dag_to_cpdag(collider).graph(), collider);
}

TEST(PdagToCpdag, ExamplesAndIdempotence) {
  EXPECT_EQ(pdag_to_cpdag(p6()).graph(), c1());
  EXPECT_EQ(pdag_to_cpdag(c_ex()).graph(), c_ex());
  MixedGraph edge(2);
  edge.add_undirected(0, 1);
  EXPECT_EQ(pdag_to_cpdag(edge).graph(), edge);
}

TEST(Certify, AcceptsCompletedAndRejectsOthers) {
  EXPECT_NO_THROW(certify(c_ex()));
  EXPECT_NO_THROW(certify(MixedGraph(4)));
  try {
    certify(p4());
    FAIL() << "expected NotCompleted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCompleted);
  }
}

TEST(Chordal, ExampleComponents) {
  EXPECT_TRUE(is_chordal(c1()));
  MixedGraph g(4);
  g.add_undirected(0, 1);
  g.add_undirected(1, 2);
  g.add_undirected(2, 3);
  g.add_undirected(3, 0);
  EXPECT_FALSE(is_chordal(g));
  g.add_undirected(0, 2);
  EXPECT_TRUE(is_chordal(g));
}

// Every labeled DAG on four vertices.
class AllDags4 : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { dags_ = new std::vector<MixedGraph>(enumerate_dags(4)); }
  static void TearDownTestSuite() { delete dags_; }
  static std::vector<MixedGraph>* dags_;
};
std::vector<MixedGraph>* AllDags4::dags_ = nullptr;

MixedGraph skeleton(const MixedGraph& g) {
  MixedGraph s(g.num_vertices());
  for (auto [a, b] : g.undirected_edges()) s.add_undirected(a, b);
  for (auto [a, b] : g.directed_edges()) s.add_undirected(std::min(a, b), std::max(a, b));
  return s;
}

TEST_F(AllDags4, RoundTripPreservesClass) {
  ASSERT_EQ(dags_->size(), 543u);
  for (const auto& d : *dags_) {
    const auto c = dag_to_cpdag(d);
    EXPECT_EQ(skeleton(c.graph()), skeleton(d));
    EXPECT_EQ(v_structures(c.graph()), v_structures(d));
    const auto ext = consistent_extension(c.graph());
    EXPECT_TRUE(markov_equivalent(ext, d));
    EXPECT_EQ(v_structures(ext), v_structures(c.graph()));
  }
}

TEST_F(AllDags4, CompletedPdagsAreCharacterized) {
  for (const auto& d : *dags_) {
    const auto c = dag_to_cpdag(d);
    const auto& g = c.graph();
    for (auto [a, b] : g.directed_edges()) EXPECT_TRUE(is_strongly_protected(g, a, b));
    for (const auto& comp : chain_components(g)) EXPECT_TRUE(is_chordal(g, comp));
    EXPECT_EQ(pdag_to_cpdag(g), c);
    EXPECT_NO_THROW(certify(g));
  }
}

TEST_F(AllDags4, TriangleWithTwoUndirectedEdgesIsUndirected) {
  for (const auto& d : *dags_) {
    const auto g = dag_to_cpdag(d).graph();
    for (VertexId a = 0; a < 4; ++a) {
      for (VertexId b = 0; b < 4; ++b) {
        for (VertexId c = 0; c < 4; ++c) {
          if (a == b || b == c || a == c) continue;
          if (g.has_undirected(a, b) && g.has_undirected(b, c) && g.adjacent(a, c)) {
            EXPECT_TRUE(g.has_undirected(a, c));
          }
        }
      }
    }
  }
}

TEST(PdagToCpdag, IdempotentOnPartialOrientations) {
  // Orient every other undirected edge of each class consistently
  // with an extension; the pipeline output must then be stable.
  for (const auto& d : enumerate_dags(4)) {
    const auto c = dag_to_cpdag(d);
    MixedGraph partial = c.graph();
    const auto ext = consistent_extension(partial);
    int k = 0;
    for (auto [a, b] : c.graph().undirected_edges()) {
      if (k++ % 2 == 0) {
        if (ext.has_directed(a, b)) partial.orient(a, b); else partial.orient(b, a);
      }
    }
    const auto once = pdag_to_cpdag(partial).graph();
    EXPECT_EQ(once, c.graph());
    EXPECT_EQ(pdag_to_cpdag(once).graph(), once);
  }
}

}  // namespace
}  // namespace mec
