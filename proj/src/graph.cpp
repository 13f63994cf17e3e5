#include "mec/graph.hpp"

#include <algorithm>
#include <queue>

namespace mec {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::NotExtendable: return "NotExtendable";
    case ErrorCode::NotCompleted: return "NotCompleted";
    case ErrorCode::EdgeNotDirected: return "EdgeNotDirected";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyOperatorSet: return "EmptyOperatorSet";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

namespace {

std::vector<VertexId> intersect(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Link reverse(Link l) {
  switch (l) {
    case Link::Out: return Link::In;
    case Link::In: return Link::Out;
    default: return l;
  }
}

}  // namespace

MixedGraph::MixedGraph(int p)
    : p_(p),
      links_(static_cast<std::size_t>(std::max(p, 0)) * static_cast<std::size_t>(std::max(p, 0)),
             Link::None),
      start_(3 * static_cast<std::size_t>(std::max(p, 0)) + 1, 0) {
  if (p < 0) throw Error(ErrorCode::InvalidConfig, "negative vertex count");
}

void MixedGraph::list_insert(std::size_t seg, VertexId x) {
  const auto first = lists_.begin() + start_[seg];
  const auto last = lists_.begin() + start_[seg + 1];
  lists_.insert(std::lower_bound(first, last, x), x);
  for (std::size_t k = seg + 1; k < start_.size(); ++k) ++start_[k];
}

void MixedGraph::list_erase(std::size_t seg, VertexId x) {
  const auto first = lists_.begin() + start_[seg];
  const auto last = lists_.begin() + start_[seg + 1];
  const auto it = std::lower_bound(first, last, x);
  if (it == last || *it != x) return;
  lists_.erase(it);
  for (std::size_t k = seg + 1; k < start_.size(); ++k) --start_[k];
}

void MixedGraph::check_pair(VertexId a, VertexId b) const {
  if (a < 0 || b < 0 || a >= p_ || b >= p_) {
    throw Error(ErrorCode::NotApplicable,
                "vertex out of range (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  if (a == b) throw Error(ErrorCode::NotApplicable, "self-loop on " + std::to_string(a));
}

void MixedGraph::set_link(VertexId a, VertexId b, Link ab) {
  const Link old = links_[index(a, b)];
  switch (old) {
    case Link::None: break;
    case Link::Undirected:
      list_erase(seg(a, kNeighbors), b);
      list_erase(seg(b, kNeighbors), a);
      --num_undirected_;
      break;
    case Link::Out:
      list_erase(seg(a, kChildren), b);
      list_erase(seg(b, kParents), a);
      --num_directed_;
      break;
    case Link::In:
      list_erase(seg(b, kChildren), a);
      list_erase(seg(a, kParents), b);
      --num_directed_;
      break;
  }
  switch (ab) {
    case Link::None: break;
    case Link::Undirected:
      list_insert(seg(a, kNeighbors), b);
      list_insert(seg(b, kNeighbors), a);
      ++num_undirected_;
      break;
    case Link::Out:
      list_insert(seg(a, kChildren), b);
      list_insert(seg(b, kParents), a);
      ++num_directed_;
      break;
    case Link::In:
      list_insert(seg(b, kChildren), a);
      list_insert(seg(a, kParents), b);
      ++num_directed_;
      break;
  }
  links_[index(a, b)] = ab;
  links_[index(b, a)] = reverse(ab);
}

void MixedGraph::add_undirected(VertexId a, VertexId b) {
  check_pair(a, b);
  if (adjacent(a, b)) {
    throw Error(ErrorCode::NotApplicable,
                "pair already adjacent (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  set_link(a, b, Link::Undirected);
}

void MixedGraph::add_directed(VertexId from, VertexId to) {
  check_pair(from, to);
  if (adjacent(from, to)) {
    throw Error(ErrorCode::NotApplicable, "pair already adjacent (" + std::to_string(from) +
                                              ", " + std::to_string(to) + ")");
  }
  set_link(from, to, Link::Out);
}

void MixedGraph::remove_edge(VertexId a, VertexId b) {
  check_pair(a, b);
  if (!adjacent(a, b)) {
    throw Error(ErrorCode::NotApplicable,
                "no edge between " + std::to_string(a) + " and " + std::to_string(b));
  }
  set_link(a, b, Link::None);
}

void MixedGraph::orient(VertexId from, VertexId to) {
  check_pair(from, to);
  if (!has_undirected(from, to)) {
    throw Error(ErrorCode::NotApplicable, "no undirected edge " + std::to_string(from) + " - " +
                                              std::to_string(to));
  }
  set_link(from, to, Link::Out);
}

void MixedGraph::unorient(VertexId a, VertexId b) {
  check_pair(a, b);
  const Link l = link(a, b);
  if (l != Link::Out && l != Link::In) {
    throw Error(ErrorCode::EdgeNotDirected,
                "no directed edge between " + std::to_string(a) + " and " + std::to_string(b));
  }
  set_link(a, b, Link::Undirected);
}

std::vector<Edge> MixedGraph::undirected_edges() const {
  std::vector<Edge> out;
  out.reserve(num_undirected_);
  for (VertexId a = 0; a < p_; ++a) {
    for (VertexId b : neighbors(a)) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<Edge> MixedGraph::directed_edges() const {
  std::vector<Edge> out;
  out.reserve(num_directed_);
  for (VertexId a = 0; a < p_; ++a) {
    for (VertexId b : children(a)) out.emplace_back(a, b);
  }
  return out;
}

LocalSets local_sets(const MixedGraph& g, VertexId x) {
  LocalSets s;
  s.neighbors.assign(g.neighbors(x).begin(), g.neighbors(x).end());
  s.parents.assign(g.parents(x).begin(), g.parents(x).end());
  s.children.assign(g.children(x).begin(), g.children(x).end());
  s.adjacent = adjacent_vertices(g, x);
  return s;
}

CommonSets common_sets(const MixedGraph& g, VertexId x, VertexId y) {
  if (x == y) throw Error(ErrorCode::NotApplicable, "common_sets requires distinct vertices");
  CommonSets s;
  s.neighbors = intersect(g.neighbors(x), g.neighbors(y));
  s.parents_neighbors = intersect(g.parents(x), g.neighbors(y));
  s.children = intersect(g.children(x), g.children(y));
  return s;
}

std::vector<VertexId> adjacent_vertices(const MixedGraph& g, VertexId x) {
  std::vector<VertexId> out;
  out.reserve(g.degree(x));
  out.insert(out.end(), g.neighbors(x).begin(), g.neighbors(x).end());
  out.insert(out.end(), g.parents(x).begin(), g.parents(x).end());
  out.insert(out.end(), g.children(x).begin(), g.children(x).end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> chain_component_labels(const MixedGraph& g) {
  const int p = g.num_vertices();
  std::vector<int> label(p, -1);
  std::vector<VertexId> stack;
  int next = 0;
  for (VertexId s = 0; s < p; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(v)) {
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<std::vector<VertexId>> chain_components(const MixedGraph& g) {
  const auto label = chain_component_labels(g);
  int count = 0;
  for (int l : label) count = std::max(count, l + 1);
  std::vector<std::vector<VertexId>> comps(count);
  for (VertexId v = 0; v < g.num_vertices(); ++v) comps[label[v]].push_back(v);
  return comps;
}

std::vector<VStructure> v_structures(const MixedGraph& g) {
  std::vector<VStructure> out;
  for (VertexId c = 0; c < g.num_vertices(); ++c) {
    const auto pa = g.parents(c);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!g.adjacent(pa[i], pa[j])) out.push_back({pa[i], c, pa[j]});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_v_structures(const MixedGraph& g) {
  std::size_t n = 0;
  for (VertexId c = 0; c < g.num_vertices(); ++c) {
    const auto pa = g.parents(c);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!g.adjacent(pa[i], pa[j])) ++n;
      }
    }
  }
  return n;
}

std::vector<VertexId> topological_sort(const MixedGraph& g) {
  const int p = g.num_vertices();
  std::vector<std::size_t> indegree(p);
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (VertexId v = 0; v < p; ++v) {
    indegree[v] = g.parents(v).size();
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<VertexId> order;
  order.reserve(p);
  while (!ready.empty()) {
    const VertexId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (VertexId c : g.children(v)) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (static_cast<int>(order.size()) != p) {
    throw Error(ErrorCode::CycleDetected, "directed edges contain a cycle");
  }
  return order;
}

bool has_directed_cycle(const MixedGraph& g) {
  try {
    topological_sort(g);
    return false;
  } catch (const Error&) {
    return true;
  }
}

bool graphs_equal(const MixedGraph& a, const MixedGraph& b) { return a == b; }

MixedGraph relabel(const MixedGraph& g, std::span<const VertexId> perm) {
  MixedGraph out(g.num_vertices());
  for (auto [a, b] : g.undirected_edges()) out.add_undirected(perm[a], perm[b]);
  for (auto [a, b] : g.directed_edges()) out.add_directed(perm[a], perm[b]);
  return out;
}

std::string canonical_key(const MixedGraph& g) {
  std::string key = std::to_string(g.num_vertices()) + "|";
  for (auto [a, b] : g.undirected_edges()) {
    key += std::to_string(a) + "-" + std::to_string(b) + ",";
  }
  key += "|";
  for (auto [a, b] : g.directed_edges()) {
    key += std::to_string(a) + ">" + std::to_string(b) + ",";
  }
  return key;
}

}  // namespace mec
