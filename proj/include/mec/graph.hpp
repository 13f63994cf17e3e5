#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mec/error.hpp"

namespace mec {

using VertexId = std::int32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Relation of an ordered vertex pair (a, b).
enum class Link : std::uint8_t {
  None,
  Undirected,  // a - b
  Out,         // a -> b
  In,          // a <- b
};

/// Mixed graph on vertices [0, p): a set of undirected edges and a set of
/// directed edges, with at most one edge per vertex pair and no self-loops.
///
/// Adjacency is stored twice: a dense pair-indexed link table for O(1)
/// membership tests, and per-vertex sorted neighbor/parent/child lists for
/// O(degree) local queries. The lists share one flat buffer so that copies
/// cost a few allocations regardless of p. Mutators keep both in sync. The
/// type has value semantics; copies are independent.
class MixedGraph {
 public:
  MixedGraph() = default;
  explicit MixedGraph(int p);

  int num_vertices() const { return p_; }
  std::size_t num_undirected() const { return num_undirected_; }
  std::size_t num_directed() const { return num_directed_; }
  std::size_t num_edges() const { return num_undirected_ + num_directed_; }

  Link link(VertexId a, VertexId b) const { return links_[index(a, b)]; }
  bool adjacent(VertexId a, VertexId b) const { return link(a, b) != Link::None; }
  bool has_undirected(VertexId a, VertexId b) const { return link(a, b) == Link::Undirected; }
  bool has_directed(VertexId from, VertexId to) const { return link(from, to) == Link::Out; }

  /// Undirected neighbors, ascending.
  std::span<const VertexId> neighbors(VertexId x) const { return list(seg(x, kNeighbors)); }
  std::span<const VertexId> parents(VertexId x) const { return list(seg(x, kParents)); }
  std::span<const VertexId> children(VertexId x) const { return list(seg(x, kChildren)); }
  std::size_t degree(VertexId x) const { return start_[seg(x, 0) + 3] - start_[seg(x, 0)]; }

  void add_undirected(VertexId a, VertexId b);
  void add_directed(VertexId from, VertexId to);
  /// Removes whatever edge joins a and b; NotApplicable if none.
  void remove_edge(VertexId a, VertexId b);
  /// a - b becomes a -> b.
  void orient(VertexId from, VertexId to);
  /// a -> b (either direction) becomes a - b.
  void unorient(VertexId a, VertexId b);

  /// Sorted (a < b) undirected pairs.
  std::vector<Edge> undirected_edges() const;
  /// Sorted (tail, head) directed pairs.
  std::vector<Edge> directed_edges() const;

  friend bool operator==(const MixedGraph& a, const MixedGraph& b) {
    return a.p_ == b.p_ && a.links_ == b.links_;
  }

 private:
  std::size_t index(VertexId a, VertexId b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(p_) + static_cast<std::size_t>(b);
  }
  static constexpr std::size_t kNeighbors = 0, kParents = 1, kChildren = 2;
  static std::size_t seg(VertexId x, std::size_t kind) {
    return 3 * static_cast<std::size_t>(x) + kind;
  }
  std::span<const VertexId> list(std::size_t s) const {
    return {lists_.data() + start_[s], start_[s + 1] - start_[s]};
  }
  void list_insert(std::size_t seg, VertexId x);
  void list_erase(std::size_t seg, VertexId x);
  void check_pair(VertexId a, VertexId b) const;
  void set_link(VertexId a, VertexId b, Link ab);

  int p_ = 0;
  std::vector<Link> links_;
  // Segment 3v + kind of lists_ is [start_[3v + kind], start_[3v + kind + 1]).
  std::vector<VertexId> lists_;
  std::vector<std::size_t> start_ = {0};
  std::size_t num_undirected_ = 0;
  std::size_t num_directed_ = 0;
};

struct LocalSets {
  std::vector<VertexId> neighbors;  // N_x
  std::vector<VertexId> parents;    // Pi_x
  std::vector<VertexId> children;
  std::vector<VertexId> adjacent;   // Delta_x
};

struct CommonSets {
  std::vector<VertexId> neighbors;         // N_x ∩ N_y
  std::vector<VertexId> parents_neighbors;  // Pi_x ∩ N_y
  std::vector<VertexId> children;          // children_x ∩ children_y
};

/// A v-structure a -> center <- b with a, b nonadjacent; stored with a < b.
struct VStructure {
  VertexId a;
  VertexId center;
  VertexId b;
  friend auto operator<=>(const VStructure&, const VStructure&) = default;
};

LocalSets local_sets(const MixedGraph& g, VertexId x);
CommonSets common_sets(const MixedGraph& g, VertexId x, VertexId y);

/// Vertices adjacent to x, ascending.
std::vector<VertexId> adjacent_vertices(const MixedGraph& g, VertexId x);

/// Connected components of the undirected-edge subgraph, each sorted, listed
/// in order of their smallest vertex. Singletons included.
std::vector<std::vector<VertexId>> chain_components(const MixedGraph& g);

/// Component label per vertex, consistent with chain_components ordering.
std::vector<int> chain_component_labels(const MixedGraph& g);

/// All v-structures, sorted.
std::vector<VStructure> v_structures(const MixedGraph& g);
std::size_t count_v_structures(const MixedGraph& g);

/// Topological order of the directed edges (undirected edges ignored), ties
/// broken by smallest vertex index. Throws CycleDetected.
std::vector<VertexId> topological_sort(const MixedGraph& g);

bool has_directed_cycle(const MixedGraph& g);

bool graphs_equal(const MixedGraph& a, const MixedGraph& b);

/// Applies a vertex relabeling: vertex i of g becomes perm[i].
MixedGraph relabel(const MixedGraph& g, std::span<const VertexId> perm);

/// Canonical byte key: sorted undirected pairs then sorted directed pairs.
std::string canonical_key(const MixedGraph& g);

}  // namespace mec
