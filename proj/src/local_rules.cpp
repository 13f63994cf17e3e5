#include "local_rules.hpp"

#include <algorithm>
#include <bit>

namespace mec::detail {

namespace {

bool has(const std::vector<VertexId>& sorted, VertexId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

// One round of the compelled/reversible labeling for the edges into a head
// with sorted parent set `parents` and latest parent t. Either every edge
// into the head comes out compelled, or exactly those from the compelled
// parents of t do.
bool all_compelled(const std::vector<VertexId>& parents, VertexId t,
                   std::span<const VertexId> compelled_into_t,
                   std::span<const VertexId> parents_of_t) {
  for (VertexId w : compelled_into_t) {
    if (!has(parents, w)) return true;
  }
  for (VertexId z : parents) {
    if (z != t && !std::binary_search(parents_of_t.begin(), parents_of_t.end(), z)) return true;
  }
  return false;
}

// Maximum cardinality search over a small vertex list, then a check that
// every vertex's earlier neighbors form a clique.
template <class Linked>
bool chordal_local(const std::vector<VertexId>& verts, const Linked& linked) {
  const std::size_t n = verts.size();
  std::vector<int> weight(n, 0);
  std::vector<char> placed(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!placed[i] && (best == n || weight[i] > weight[best])) best = i;
    }
    placed[best] = 1;
    order.push_back(best);
    for (std::size_t i = 0; i < n; ++i) {
      if (!placed[i] && linked(verts[best], verts[i])) ++weight[i];
    }
  }
  std::vector<VertexId> earlier;
  for (std::size_t k = 0; k < n; ++k) {
    earlier.clear();
    for (std::size_t j = 0; j < k; ++j) {
      if (linked(verts[order[k]], verts[order[j]])) earlier.push_back(verts[order[j]]);
    }
    for (std::size_t a = 0; a < earlier.size(); ++a) {
      for (std::size_t b = a + 1; b < earlier.size(); ++b) {
        if (!linked(earlier[a], earlier[b])) return false;
      }
    }
  }
  return true;
}

struct CountSink {
  std::size_t n = 0;
  void add(const Operator&) { ++n; }
  void insert_d(VertexId, const std::vector<std::uint64_t>& bulk,
                const std::vector<VertexId>& single) {
    for (auto w : bulk) n += static_cast<std::size_t>(std::popcount(w));
    n += single.size();
  }
};

struct SetSink {
  OperatorSet set;
  void add(const Operator& op) { set[op.kind].push_back(op); }
  void insert_d(VertexId x, const std::vector<std::uint64_t>& words,
                const std::vector<VertexId>& single) {
    auto& out = set[OpKind::InsertD];
    auto it = single.begin();
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (auto w = words[i]; w != 0; w &= w - 1) {
        const auto y = static_cast<VertexId>(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        for (; it != single.end() && *it < y; ++it) out.push_back(Operator::insert_d(x, *it));
        out.push_back(Operator::insert_d(x, y));
      }
    }
    for (; it != single.end(); ++it) out.push_back(Operator::insert_d(x, *it));
  }
};

}  // namespace

LocalContext::LocalContext(const CompletedPdag& c)
    : c_(c),
      g_(c.graph()),
      p_(g_.num_vertices()),
      comp_(chain_component_labels(g_)),
      rank_(p_, 0),
      pos_(p_, 0),
      adj_(p_),
      reach_(p_),
      reached_(p_),
      mark_(p_, 0) {
  int ncomp = 0;
  for (int l : comp_) ncomp = std::max(ncomp, l + 1);
  comp_start_.assign(ncomp + 1, 0);
  for (VertexId v = 0; v < p_; ++v) ++comp_start_[comp_[v] + 1];
  for (int k = 0; k < ncomp; ++k) comp_start_[k + 1] += comp_start_[k];
  members_.resize(p_);
  {
    auto fill = comp_start_;
    for (VertexId v = 0; v < p_; ++v) members_[fill[comp_[v]]++] = v;
  }

  // Orienting each component along a maximum cardinality search, together
  // with the arrows of the graph, gives a consistent extension.
  std::vector<int> weight(p_, 0);
  for (int k = 0; k < ncomp; ++k) {
    const auto m = members(k);
    for (std::size_t step = 0; step < m.size(); ++step) {
      VertexId best = -1;
      for (VertexId v : m) {
        if (weight[v] >= 0 && (best < 0 || weight[v] > weight[best])) best = v;
      }
      rank_[best] = static_cast<int>(step);
      weight[best] = -1;
      for (VertexId n : g_.neighbors(best)) {
        if (weight[n] >= 0) ++weight[n];
      }
    }
  }
  std::vector<char> state(p_, 0);
  int next = p_;
  const std::function<void(VertexId)> finish = [&](VertexId v) {
    state[v] = 1;
    auto descend = [&](VertexId w) {
      if (!state[w]) finish(w);
    };
    for (VertexId w : g_.children(v)) descend(w);
    for (VertexId w : g_.neighbors(v)) {
      if (rank_[w] > rank_[v]) descend(w);
    }
    pos_[v] = --next;
  };
  for (VertexId v = 0; v < p_; ++v) {
    if (!state[v]) finish(v);
  }

  for (VertexId v = 0; v < p_; ++v) {
    for (auto part : {g_.neighbors(v), g_.parents(v), g_.children(v)}) {
      for (VertexId w : part) adj_.set(v, w);
    }
  }

  // Semi-directed reachability is constant on chain components: a vertex
  // reaches its own component and whatever its component's children reach.
  const std::size_t words = adj_.words();
  auto close = [&](bool forward, BitTable& out) {
    BitTable by_comp(std::max(ncomp, p_));
    std::vector<char> done(ncomp, 0);
    const std::function<void(int)> fill = [&](int k) {
      done[k] = 1;
      auto* bits = by_comp.row(k);
      for (VertexId v : members(k)) {
        bits[v / 64] |= std::uint64_t{1} << (v % 64);
        for (VertexId d : forward ? g_.children(v) : g_.parents(v)) {
          if (!done[comp_[d]]) fill(comp_[d]);
          const auto* sub = by_comp.row(comp_[d]);
          for (std::size_t i = 0; i < words; ++i) bits[i] |= sub[i];
        }
      }
    };
    for (int k = 0; k < ncomp; ++k) {
      if (!done[k]) fill(k);
    }
    for (VertexId v = 0; v < p_; ++v) {
      std::copy_n(by_comp.row(comp_[v]), words, out.row(v));
    }
  };
  close(true, reach_);
  close(false, reached_);

  ext_start_.assign(p_ + 1, 0);
  ext_list_.clear();
  for (VertexId t = 0; t < p_; ++t) {
    const auto pa = g_.parents(t);
    ext_list_.insert(ext_list_.end(), pa.begin(), pa.end());
    for (VertexId n : g_.neighbors(t)) {
      if (rank_[n] < rank_[t]) ext_list_.push_back(n);
    }
    std::sort(ext_list_.begin() + static_cast<std::ptrdiff_t>(ext_start_[t]), ext_list_.end());
    ext_start_[t + 1] = ext_list_.size();
  }

  // Vertices grouped by parent set, groups in order of first member.
  by_parents_.resize(p_);
  for (VertexId v = 0; v < p_; ++v) by_parents_[v] = v;
  auto parent_less = [&](VertexId a, VertexId b) {
    const auto pa = g_.parents(a);
    const auto pb = g_.parents(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::stable_sort(by_parents_.begin(), by_parents_.end(), parent_less);
  parent_class_.assign(p_, 0);
  class_start_.clear();
  for (std::size_t i = 0; i < by_parents_.size(); ++i) {
    if (i == 0 || parent_less(by_parents_[i - 1], by_parents_[i])) class_start_.push_back(i);
    parent_class_[by_parents_[i]] = static_cast<int>(class_start_.size()) - 1;
  }
  class_start_.push_back(by_parents_.size());
}

bool LocalContext::clique(const std::vector<VertexId>& s) const {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!adj_.test(s[i], s[j])) return false;
    }
  }
  return true;
}

void LocalContext::new_epoch() const {
  if (++epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    epoch_ = 1;
  }
}

bool LocalContext::search_unmarked(VertexId from, VertexId to, bool follow_arrows) const {
  stack_.assign(1, from);
  mark_[from] = epoch_;
  auto push = [&](std::span<const VertexId> next) {
    for (VertexId n : next) {
      if (mark_[n] != epoch_) {
        mark_[n] = epoch_;
        stack_.push_back(n);
      }
    }
  };
  while (!stack_.empty()) {
    const VertexId v = stack_.back();
    stack_.pop_back();
    if (v == to) return true;
    push(g_.neighbors(v));
    if (follow_arrows) push(g_.children(v));
  }
  return false;
}

bool LocalContext::reaches_avoiding(VertexId from, VertexId to,
                                    const std::vector<VertexId>& blocked,
                                    bool follow_arrows) const {
  new_epoch();
  for (VertexId b : blocked) mark_[b] = epoch_;
  return search_unmarked(from, to, follow_arrows);
}

// Whether the common undirected neighbors of z and u (plus `extra_block`)
// separate z from u along undirected edges.
bool LocalContext::separated(VertexId z, VertexId u, VertexId extra_block) const {
  if (comp_[z] != comp_[u]) return true;
  new_epoch();
  bool blocked = false;
  if (extra_block >= 0) {
    mark_[extra_block] = epoch_;
    blocked = true;
  }
  for (VertexId n : g_.neighbors(z)) {
    if (g_.has_undirected(n, u)) {
      mark_[n] = epoch_;
      blocked = true;
    }
  }
  return blocked && !search_unmarked(z, u, false);
}

// Strong protection of v -> u in the graph plus an undirected edge x - y.
bool LocalContext::protected_with(VertexId v, VertexId u, VertexId x, VertexId y) const {
  auto adj = [&](VertexId a, VertexId b) {
    return g_.adjacent(a, b) || (a == x && b == y) || (a == y && b == x);
  };
  for (VertexId w : g_.parents(v)) {
    if (!adj(w, u)) return true;
  }
  for (VertexId w : g_.parents(u)) {
    if (w != v && !adj(w, v)) return true;
  }
  for (VertexId w : g_.children(v)) {
    if (g_.has_directed(w, u)) return true;
  }
  auto& into_u = scratch_[0];
  into_u.clear();
  for (VertexId w : g_.neighbors(v)) {
    if (g_.has_directed(w, u)) into_u.push_back(w);
  }
  const VertexId extra = v == x ? y : v == y ? x : -1;
  if (extra >= 0 && g_.has_directed(extra, u)) into_u.push_back(extra);
  for (std::size_t i = 0; i < into_u.size(); ++i) {
    for (std::size_t j = i + 1; j < into_u.size(); ++j) {
      if (!adj(into_u[i], into_u[j])) return true;
    }
  }
  return false;
}

// Everything but the arrows into common children is settled; read those off
// the recomputed class.
bool LocalContext::children_stay_compelled(VertexId x, VertexId y) const {
  ++fallbacks_;
  const auto next = resulting_cpdag(c_, Operator::insert_d(x, y));
  for (VertexId c : g_.children(y)) {
    if (g_.has_directed(x, c) && !next.graph().has_directed(y, c)) return false;
  }
  return true;
}

bool LocalContext::member(const Operator& op) const {
  if (!structurally_applicable(g_, op)) return false;
  switch (op.kind) {
    case OpKind::InsertU: return insert_u(op.a, op.b);
    case OpKind::DeleteU: return delete_u(op.a, op.b);
    case OpKind::InsertD: return insert_d(op.a, op.b);
    case OpKind::DeleteD: return delete_d(op.a, op.b);
    case OpKind::MakeV: return make_v(op.a, op.c);
    case OpKind::RemoveV: return remove_v(op.a, op.b, op.c);
  }
  return false;
}

// x - y can join iff the result is itself a completed PDAG. With equal
// parent sets the only arrows that can lose protection point into common
// children of x and y.
bool LocalContext::insert_u(VertexId x, VertexId y) const {
  return same_parents(x, y) && chord_ok(x, y);
}

bool LocalContext::chord_ok(VertexId x, VertexId y) const {
  // A chord x - y keeps the component chordal iff the common neighbors
  // separate x from y.
  if (comp_[x] == comp_[y] && !separated(x, y, -1)) return false;
  for (VertexId u : g_.children(x)) {
    if (!g_.has_directed(y, u)) continue;
    if (!protected_with(x, u, x, y) || !protected_with(y, u, x, y)) return false;
    for (VertexId v : g_.neighbors(x)) {
      if (g_.has_undirected(v, y) && g_.has_directed(v, u) && !protected_with(v, u, x, y)) {
        return false;
      }
    }
  }
  return true;
}

// Removing x - y keeps a completed PDAG iff the component stays chordal.
bool LocalContext::delete_u(VertexId x, VertexId y) const {
  auto& common = scratch_[0];
  common.clear();
  for (VertexId v : g_.neighbors(x)) {
    if (g_.has_undirected(v, y)) common.push_back(v);
  }
  return clique(common);
}

bool LocalContext::insert_d(VertexId x, VertexId y) const {
  if (comp_[x] == comp_[y] || same_parents(x, y)) return false;

  auto& na = scratch_[0];
  na.clear();
  for (VertexId n : g_.neighbors(y)) {
    if (adj_.test(n, x)) na.push_back(n);
  }
  if (!clique(na)) return false;
  if (na.empty() ? reaches(y, x) : reaches_avoiding(y, x, na, true)) return false;

  // Parents of y after the insertion, in an extension with na -> y.
  const auto py = g_.parents(y);
  auto& parents = scratch_[1];
  parents.assign(py.begin(), py.end());
  parents.insert(parents.end(), na.begin(), na.end());
  parents.push_back(x);
  std::sort(parents.begin(), parents.end());

  // na lies below Pa(y) and above x, so x is latest unless na is empty.
  VertexId t = x;
  if (na.empty()) {
    for (VertexId a : py) {
      if (pos_[a] > pos_[t]) t = a;
    }
  }
  const auto into_t = g_.parents(t);
  const bool all = all_compelled(parents, t, into_t, extension_parents(t));
  if (!all) {
    // x must keep its arrow, and the reverse deletion needs the undirected
    // neighbors of y to be a clique.
    if (!std::binary_search(into_t.begin(), into_t.end(), x)) return false;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      if (std::binary_search(into_t.begin(), into_t.end(), parents[i])) continue;
      for (std::size_t j = i + 1; j < parents.size(); ++j) {
        if (!std::binary_search(into_t.begin(), into_t.end(), parents[j]) &&
            !adj_.test(parents[i], parents[j])) {
          return false;
        }
      }
    }
  }
  const std::span<const VertexId> compelled =
      all ? std::span<const VertexId>(parents) : into_t;

  // Arrows y -> c into common children must stay compelled.
  for (VertexId c : g_.children(y)) {
    if (!g_.has_directed(x, c)) continue;
    bool kept = false;
    for (VertexId w : g_.parents(c)) {
      if (w != x && w != y && !adj_.test(w, y)) kept = true;
    }
    if (kept) continue;
    // Labeling at c with y as its latest parent; exact when no other parent
    // of c can sit below y.
    const auto pc = extension_parents(c);
    for (VertexId w : pc) {
      if (w != y && reaches(y, w)) return children_stay_compelled(x, y);
    }
    for (VertexId w : compelled) {
      if (!std::binary_search(pc.begin(), pc.end(), w)) kept = true;
    }
    for (VertexId w : pc) {
      if (w != y && !has(parents, w)) kept = true;
    }
    if (!kept) return false;
  }
  return true;
}

// Valid iff the undirected neighbors of y form a clique. The reverse
// insertion restores the class iff every parent of y not adjacent to x keeps
// its arrow, which one labeling step at y decides.
bool LocalContext::delete_d(VertexId x, VertexId y) const {
  const auto ny = g_.neighbors(y);
  for (std::size_t i = 0; i < ny.size(); ++i) {
    for (std::size_t j = i + 1; j < ny.size(); ++j) {
      if (!adj_.test(ny[i], ny[j])) return false;
    }
  }
  if (!ny.empty()) return true;

  auto& parents = scratch_[1];
  parents.clear();
  for (VertexId a : g_.parents(y)) {
    if (a != x) parents.push_back(a);
  }
  if (parents.empty()) return true;
  VertexId t = parents.front();
  for (VertexId a : parents) {
    if (pos_[a] > pos_[t]) t = a;
  }
  const auto into_t = g_.parents(t);
  if (all_compelled(parents, t, into_t, extension_parents(t))) return true;
  for (VertexId a : parents) {
    if (!adj_.test(a, x) && !std::binary_search(into_t.begin(), into_t.end(), a)) return false;
  }
  return true;
}

// Valid iff the common neighbors of z and u separate them inside the chain
// component; every valid v-structure insertion is reversible.
bool LocalContext::make_v(VertexId z, VertexId u) const { return separated(z, u, -1); }

bool LocalContext::remove_v(VertexId z, VertexId v, VertexId u) const {
  if (!same_parents(z, u)) return false;
  for (VertexId a : g_.parents(z)) {
    if (!g_.has_directed(a, v)) return false;
  }
  // Every other parent of v is a common parent or a common undirected
  // neighbor of z and u; the latter join the merged component.
  std::vector<VertexId> attach{z, u};
  for (VertexId w : g_.parents(v)) {
    if (w == z || w == u || g_.has_directed(w, z)) continue;
    if (!g_.has_undirected(w, z) || !g_.has_undirected(w, u)) return false;
    attach.push_back(w);
  }
  if (comp_[z] != comp_[u]) return true;

  // v joins the component of z and u next to `attach`; that component must
  // stay chordal and still admit the reverse v-structure insertion.
  std::sort(attach.begin(), attach.end());
  const auto linked = [&](VertexId a, VertexId b) {
    if (a == v) return has(attach, b);
    if (b == v) return has(attach, a);
    return g_.has_undirected(a, b);
  };
  const auto m = members(comp_[z]);
  std::vector<VertexId> verts(m.begin(), m.end());
  verts.push_back(v);
  if (!chordal_local(verts, linked)) return false;

  return separated(z, u, v);
}

template <class Sink>
void LocalContext::visit(std::size_t max_edges, Sink& sink) const {
  const bool room = g_.num_edges() < max_edges;

  if (room) {
    for (VertexId x = 0; x < p_; ++x) {
      const int k = parent_class_[x];
      for (std::size_t i = class_start_[k]; i < class_start_[k + 1]; ++i) {
        const VertexId y = by_parents_[i];
        if (y > x && !adj_.test(x, y) && chord_ok(x, y)) sink.add(Operator::insert_u(x, y));
      }
    }
  }

  for (auto [a, b] : g_.undirected_edges()) {
    if (delete_u(a, b)) sink.add(Operator::delete_u(a, b));
  }

  // Pairs without a common adjacent vertex are members iff no semi-directed
  // path runs from the head to the tail and not both ends are roots.
  if (room) {
    const std::size_t words = adj_.words();
    std::vector<std::uint64_t> nonroot(words, 0), near(words), bulk(words);
    for (VertexId v = 0; v < p_; ++v) {
      if (!g_.parents(v).empty()) nonroot[v / 64] |= std::uint64_t{1} << (v % 64);
    }
    std::vector<VertexId> single;
    for (VertexId x = 0; x < p_; ++x) {
      std::copy_n(adj_.row(x), words, near.begin());
      near[x / 64] |= std::uint64_t{1} << (x % 64);
      for (auto part : {g_.neighbors(x), g_.parents(x), g_.children(x)}) {
        for (VertexId n : part) {
          for (std::size_t i = 0; i < words; ++i) near[i] |= adj_.row(n)[i];
        }
      }
      const bool root = g_.parents(x).empty();
      for (std::size_t i = 0; i < words; ++i) {
        bulk[i] = ~reached_.row(x)[i] & ~near[i];
        if (root) bulk[i] &= nonroot[i];
      }
      if (p_ % 64 != 0) bulk.back() &= (std::uint64_t{1} << (p_ % 64)) - 1;

      single.clear();
      for (std::size_t i = 0; i < words; ++i) {
        for (auto w = near[i] & ~adj_.row(x)[i]; w != 0; w &= w - 1) {
          const auto y = static_cast<VertexId>(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
          if (y != x && insert_d(x, y)) single.push_back(y);
        }
      }
      sink.insert_d(x, bulk, single);
    }
  }

  for (auto [a, b] : g_.directed_edges()) {
    if (delete_d(a, b)) sink.add(Operator::delete_d(a, b));
  }

  std::vector<Operator> vs;
  for (VertexId y = 0; y < p_; ++y) {
    const auto ny = g_.neighbors(y);
    for (std::size_t i = 0; i < ny.size(); ++i) {
      for (std::size_t j = i + 1; j < ny.size(); ++j) {
        if (!g_.adjacent(ny[i], ny[j]) && make_v(ny[i], ny[j])) {
          vs.push_back(Operator::make_v(ny[i], y, ny[j]));
        }
      }
    }
  }
  std::sort(vs.begin(), vs.end());
  for (const auto& op : vs) sink.add(op);

  vs.clear();
  for (VertexId v = 0; v < p_; ++v) {
    const auto pv = g_.parents(v);
    for (std::size_t i = 0; i < pv.size(); ++i) {
      for (std::size_t j = i + 1; j < pv.size(); ++j) {
        if (!g_.adjacent(pv[i], pv[j]) && remove_v(pv[i], v, pv[j])) {
          vs.push_back(Operator::remove_v(pv[i], v, pv[j]));
        }
      }
    }
  }
  std::sort(vs.begin(), vs.end());
  for (const auto& op : vs) sink.add(op);
}

OperatorSet LocalContext::collect(std::size_t max_edges) const {
  SetSink sink;
  visit(max_edges, sink);
  return std::move(sink.set);
}

std::size_t LocalContext::count(std::size_t max_edges) const {
  CountSink sink;
  visit(max_edges, sink);
  return sink.n;
}

}  // namespace mec::detail
