#pragma once

#include <optional>

#include "mec/graph.hpp"

namespace mec {

/// A mixed graph certified to be the completed PDAG (essential graph) of a
/// Markov equivalence class. Only produced by dag_to_cpdag / pdag_to_cpdag /
/// certify, so holding one is proof of the round-trip fixed point.
class CompletedPdag {
 public:
  CompletedPdag() = default;

  const MixedGraph& graph() const { return graph_; }
  int num_vertices() const { return graph_.num_vertices(); }
  std::size_t num_edges() const { return graph_.num_edges(); }

  friend bool operator==(const CompletedPdag& a, const CompletedPdag& b) {
    return a.graph_ == b.graph_;
  }

 private:
  explicit CompletedPdag(MixedGraph g) : graph_(std::move(g)) {}
  friend CompletedPdag dag_to_cpdag(const MixedGraph& dag);
  friend CompletedPdag pdag_to_cpdag(const MixedGraph& g);

  MixedGraph graph_;
};

/// Which of the four protecting configurations matched for v -> u:
///   A: w -> v, w and u nonadjacent
///   B: w -> u, w and v nonadjacent (a v-structure at u)
///   C: v -> w -> u
///   D: w - v - w1, w -> u, w1 -> u, w and w1 nonadjacent
struct ProtectionWitness {
  enum class Config : char { A = 'a', B = 'b', C = 'c', D = 'd' };
  Config config;
  VertexId w;
  VertexId w1 = -1;
  friend bool operator==(const ProtectionWitness&, const ProtectionWitness&) = default;
};

/// Searches Delta_v and Delta_u for a configuration protecting v -> u.
/// Throws EdgeNotDirected if v -> u is not an edge of g.
std::optional<ProtectionWitness> strongly_protected(const MixedGraph& g, VertexId v, VertexId u);

/// Same test without the precondition check; hot-path helper.
bool is_strongly_protected(const MixedGraph& g, VertexId v, VertexId u);

/// Orients every undirected edge of a PDAG without adding v-structures or
/// directed cycles, picking the lowest-index admissible sink at each round.
/// Throws NotExtendable when no consistent extension exists.
MixedGraph consistent_extension(const MixedGraph& g);

/// Labels each edge of a DAG compelled or reversible and undirects the
/// reversible ones. Throws CycleDetected on a cyclic input.
CompletedPdag dag_to_cpdag(const MixedGraph& dag);

/// dag_to_cpdag(consistent_extension(g)).
CompletedPdag pdag_to_cpdag(const MixedGraph& g);

/// Succeeds iff g is already its own completed PDAG. Throws NotCompleted
/// naming the first edge where g and pdag_to_cpdag(g) disagree.
CompletedPdag certify(const MixedGraph& g);

/// True iff the undirected-edge subgraph is chordal (maximum cardinality
/// search, then a perfect-elimination check).
bool is_chordal(const MixedGraph& g);

/// True iff the undirected subgraph induced on `vertices` is chordal.
bool is_chordal(const MixedGraph& g, std::span<const VertexId> vertices);

/// Same skeleton and same v-structures.
bool markov_equivalent(const MixedGraph& a, const MixedGraph& b);

}  // namespace mec
