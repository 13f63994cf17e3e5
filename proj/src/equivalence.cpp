#include "mec/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace mec {

namespace {

std::optional<ProtectionWitness> find_protection(const MixedGraph& g, VertexId v, VertexId u) {
  using C = ProtectionWitness::Config;
  for (VertexId w : g.parents(v)) {
    if (!g.adjacent(w, u)) return ProtectionWitness{C::A, w};
  }
  for (VertexId w : g.parents(u)) {
    if (w != v && !g.adjacent(w, v)) return ProtectionWitness{C::B, w};
  }
  for (VertexId w : g.children(v)) {
    if (g.has_directed(w, u)) return ProtectionWitness{C::C, w};
  }
  // Configuration D: two nonadjacent undirected neighbors of v, both parents of u.
  const auto nv = g.neighbors(v);
  for (std::size_t i = 0; i < nv.size(); ++i) {
    if (!g.has_directed(nv[i], u)) continue;
    for (std::size_t j = i + 1; j < nv.size(); ++j) {
      if (g.has_directed(nv[j], u) && !g.adjacent(nv[i], nv[j])) {
        return ProtectionWitness{C::D, nv[i], nv[j]};
      }
    }
  }
  return std::nullopt;
}

enum class EdgeLabel : std::uint8_t { Unknown, Compelled, Reversible };

}  // namespace

std::optional<ProtectionWitness> strongly_protected(const MixedGraph& g, VertexId v, VertexId u) {
  if (v < 0 || u < 0 || v >= g.num_vertices() || u >= g.num_vertices() || !g.has_directed(v, u)) {
    throw Error(ErrorCode::EdgeNotDirected,
                "no directed edge " + std::to_string(v) + " -> " + std::to_string(u));
  }
  return find_protection(g, v, u);
}

bool is_strongly_protected(const MixedGraph& g, VertexId v, VertexId u) {
  return find_protection(g, v, u).has_value();
}

namespace {

// Dor-Tarsi elimination: repeatedly remove the lowest-indexed vertex with no
// children whose undirected neighbors are adjacent to each other and to its
// parents. Returns the vertices in removal order.
std::vector<VertexId> sink_order(const MixedGraph& g) {
  const int p = g.num_vertices();
  std::vector<char> alive(p, 1);
  std::vector<int> live_children(p);
  for (VertexId x = 0; x < p; ++x) live_children[x] = static_cast<int>(g.children(x).size());

  auto is_sink = [&](VertexId x) {
    if (live_children[x] != 0) return false;
    const auto nx = g.neighbors(x);
    const auto px = g.parents(x);
    for (VertexId n : nx) {
      if (!alive[n]) continue;
      for (VertexId m : nx) {
        if (m != n && alive[m] && !g.adjacent(n, m)) return false;
      }
      for (VertexId m : px) {
        if (alive[m] && !g.adjacent(n, m)) return false;
      }
    }
    return true;
  };

  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (VertexId x = 0; x < p; ++x) {
    if (is_sink(x)) ready.push(x);
  }

  std::vector<VertexId> order;
  order.reserve(p);
  while (static_cast<int>(order.size()) < p) {
    VertexId x = -1;
    while (!ready.empty()) {
      const VertexId cand = ready.top();
      ready.pop();
      if (alive[cand] && is_sink(cand)) {
        x = cand;
        break;
      }
    }
    if (x < 0) {
      throw Error(ErrorCode::NotExtendable,
                  "no admissible sink among " + std::to_string(p - order.size()) +
                      " remaining vertices");
    }
    alive[x] = 0;
    order.push_back(x);
    for (VertexId w : g.parents(x)) --live_children[w];
    for (auto part : {g.neighbors(x), g.parents(x)}) {
      for (VertexId n : part) {
        if (alive[n] && is_sink(n)) ready.push(n);
      }
    }
  }
  return order;
}

// Chickering's labeling of the DAG obtained by orienting every undirected
// edge of g along `topo`; reversible edges come out undirected.
MixedGraph label_edges(const MixedGraph& g, const std::vector<VertexId>& topo) {
  const int p = g.num_vertices();
  std::vector<int> pos(p);
  for (int i = 0; i < p; ++i) pos[topo[i]] = i;

  auto directed = [&](VertexId a, VertexId b) {
    const Link l = g.link(a, b);
    return l == Link::Out || (l == Link::Undirected && pos[a] < pos[b]);
  };
  // Parents in the extension, highest-ordered tail first.
  std::vector<std::size_t> start(p + 1, 0);
  std::vector<VertexId> flat;
  flat.reserve(g.num_edges());
  for (VertexId y = 0; y < p; ++y) {
    const auto py = g.parents(y);
    flat.insert(flat.end(), py.begin(), py.end());
    for (VertexId n : g.neighbors(y)) {
      if (pos[n] < pos[y]) flat.push_back(n);
    }
    std::sort(flat.begin() + static_cast<std::ptrdiff_t>(start[y]), flat.end(),
              [&](VertexId a, VertexId b) { return pos[a] > pos[b]; });
    start[y + 1] = flat.size();
  }
  auto parents = [&](VertexId y) {
    return std::span<const VertexId>(flat.data() + start[y], start[y + 1] - start[y]);
  };

  std::vector<EdgeLabel> label(static_cast<std::size_t>(p) * p, EdgeLabel::Unknown);
  auto at = [&](VertexId a, VertexId b) -> EdgeLabel& {
    return label[static_cast<std::size_t>(a) * p + b];
  };

  for (VertexId y : topo) {
    for (VertexId x : parents(y)) {
      if (at(x, y) != EdgeLabel::Unknown) continue;

      bool all_compelled = false;
      for (VertexId w : parents(x)) {
        if (at(w, x) != EdgeLabel::Compelled) continue;
        if (!directed(w, y)) {
          all_compelled = true;
          break;
        }
        at(w, y) = EdgeLabel::Compelled;
      }
      if (all_compelled) {
        for (VertexId z : parents(y)) at(z, y) = EdgeLabel::Compelled;
        continue;
      }

      bool forced = false;
      for (VertexId z : parents(y)) {
        if (z != x && !directed(z, x)) {
          forced = true;
          break;
        }
      }
      const EdgeLabel fill = forced ? EdgeLabel::Compelled : EdgeLabel::Reversible;
      at(x, y) = fill;
      for (VertexId z : parents(y)) {
        if (at(z, y) == EdgeLabel::Unknown) at(z, y) = fill;
      }
    }
  }

  MixedGraph out = g;
  for (VertexId y = 0; y < p; ++y) {
    for (VertexId x : parents(y)) {
      const bool undirected = g.has_undirected(x, y);
      if (at(x, y) == EdgeLabel::Reversible) {
        if (!undirected) out.unorient(x, y);
      } else if (undirected) {
        out.orient(x, y);
      }
    }
  }
  return out;
}

}  // namespace

MixedGraph consistent_extension(const MixedGraph& g) {
  const auto order = sink_order(g);
  std::vector<int> removed(g.num_vertices());
  for (std::size_t i = 0; i < order.size(); ++i) removed[order[i]] = static_cast<int>(i);
  MixedGraph dag = g;
  for (auto [a, b] : g.undirected_edges()) {
    if (removed[a] < removed[b]) {
      dag.orient(b, a);
    } else {
      dag.orient(a, b);
    }
  }
  return dag;
}

CompletedPdag dag_to_cpdag(const MixedGraph& dag) {
  if (dag.num_undirected() != 0) {
    throw Error(ErrorCode::NotApplicable, "dag_to_cpdag input has undirected edges");
  }
  return CompletedPdag(label_edges(dag, topological_sort(dag)));
}

CompletedPdag pdag_to_cpdag(const MixedGraph& g) {
  auto order = sink_order(g);
  std::reverse(order.begin(), order.end());
  return CompletedPdag(label_edges(g, order));
}

CompletedPdag certify(const MixedGraph& g) {
  CompletedPdag c;
  try {
    c = pdag_to_cpdag(g);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotCompleted, std::string("graph is not extendable (") + e.what() + ")");
  }
  if (c.graph() == g) return c;

  const MixedGraph& h = c.graph();
  for (VertexId a = 0; a < g.num_vertices(); ++a) {
    for (VertexId b = 0; b < g.num_vertices(); ++b) {
      if (a == b || g.link(a, b) == h.link(a, b)) continue;
      const Link l = g.link(a, b);
      if (l == Link::In) continue;  // report each pair from its tail side
      std::string edge = std::to_string(a) + (l == Link::Out ? " -> " : l == Link::Undirected ? " -- " : " .. ") +
                         std::to_string(b);
      throw Error(ErrorCode::NotCompleted, "edge " + edge + " differs from the completed PDAG");
    }
  }
  throw Error(ErrorCode::NotCompleted, "graph differs from its completed PDAG");
}

bool is_chordal(const MixedGraph& g, std::span<const VertexId> vertices) {
  const std::size_t n = vertices.size();
  if (n < 4) return true;
  std::vector<VertexId> verts(vertices.begin(), vertices.end());
  std::sort(verts.begin(), verts.end());
  auto local = [&](VertexId v) -> std::ptrdiff_t {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    return (it != verts.end() && *it == v) ? it - verts.begin() : -1;
  };

  std::vector<int> weight(n, 0);
  std::vector<int> visit_rank(n, -1);
  std::vector<VertexId> visited;
  visited.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::ptrdiff_t best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (visit_rank[i] < 0 && (best < 0 || weight[i] > weight[best])) best = static_cast<std::ptrdiff_t>(i);
    }
    visit_rank[best] = static_cast<int>(step);
    const VertexId v = verts[best];
    // Earlier-visited neighbors of v must form a clique.
    std::vector<VertexId> earlier;
    for (VertexId w : g.neighbors(v)) {
      const auto li = local(w);
      if (li < 0) continue;
      if (visit_rank[li] >= 0 && visit_rank[li] < static_cast<int>(step)) {
        earlier.push_back(w);
      } else if (visit_rank[li] < 0) {
        ++weight[li];
      }
    }
    for (std::size_t i = 0; i < earlier.size(); ++i) {
      for (std::size_t j = i + 1; j < earlier.size(); ++j) {
        if (!g.has_undirected(earlier[i], earlier[j])) return false;
      }
    }
  }
  return true;
}

bool is_chordal(const MixedGraph& g) {
  for (const auto& comp : chain_components(g)) {
    if (!is_chordal(g, comp)) return false;
  }
  return true;
}

bool markov_equivalent(const MixedGraph& a, const MixedGraph& b) {
  if (a.num_vertices() != b.num_vertices()) return false;
  for (VertexId x = 0; x < a.num_vertices(); ++x) {
    for (VertexId y = x + 1; y < a.num_vertices(); ++y) {
      if (a.adjacent(x, y) != b.adjacent(x, y)) return false;
    }
  }
  return v_structures(a) == v_structures(b);
}

}  // namespace mec
