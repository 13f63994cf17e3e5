#include "mec/operators.hpp"

#include <algorithm>

#include "local_rules.hpp"

namespace mec {

const char* to_string(OpKind kind) {
  switch (kind) {
    case OpKind::InsertU: return "InsertU";
    case OpKind::DeleteU: return "DeleteU";
    case OpKind::InsertD: return "InsertD";
    case OpKind::DeleteD: return "DeleteD";
    case OpKind::MakeV: return "MakeV";
    case OpKind::RemoveV: return "RemoveV";
  }
  return "?";
}

Operator Operator::insert_u(VertexId x, VertexId y) {
  return {OpKind::InsertU, std::min(x, y), std::max(x, y), -1};
}
Operator Operator::delete_u(VertexId x, VertexId y) {
  return {OpKind::DeleteU, std::min(x, y), std::max(x, y), -1};
}
Operator Operator::insert_d(VertexId from, VertexId to) { return {OpKind::InsertD, from, to, -1}; }
Operator Operator::delete_d(VertexId from, VertexId to) { return {OpKind::DeleteD, from, to, -1}; }
Operator Operator::make_v(VertexId z, VertexId center, VertexId u) {
  return {OpKind::MakeV, std::min(z, u), center, std::max(z, u)};
}
Operator Operator::remove_v(VertexId z, VertexId center, VertexId u) {
  return {OpKind::RemoveV, std::min(z, u), center, std::max(z, u)};
}

namespace {

std::string name_of(VertexId v, const std::vector<std::string>& names) {
  if (v >= 0 && static_cast<std::size_t>(v) < names.size()) return names[v];
  return std::to_string(v);
}

std::string body(const Operator& op, const std::vector<std::string>& names) {
  const auto a = name_of(op.a, names);
  const auto b = name_of(op.b, names);
  switch (op.kind) {
    case OpKind::InsertU:
    case OpKind::DeleteU: return a + "-" + b;
    case OpKind::InsertD:
    case OpKind::DeleteD: return a + "->" + b;
    case OpKind::MakeV:
    case OpKind::RemoveV: return a + "->" + b + "<-" + name_of(op.c, names);
  }
  return {};
}

}  // namespace

std::string to_string(const Operator& op, const std::vector<std::string>& names) {
  return std::string(to_string(op.kind)) + " " + body(op, names);
}

Operator reverse_operator(const Operator& op) {
  Operator r = op;
  switch (op.kind) {
    case OpKind::InsertU: r.kind = OpKind::DeleteU; break;
    case OpKind::DeleteU: r.kind = OpKind::InsertU; break;
    case OpKind::InsertD: r.kind = OpKind::DeleteD; break;
    case OpKind::DeleteD: r.kind = OpKind::InsertD; break;
    case OpKind::MakeV: r.kind = OpKind::RemoveV; break;
    case OpKind::RemoveV: r.kind = OpKind::MakeV; break;
  }
  return r;
}

std::size_t OperatorSet::out_degree() const {
  std::size_t n = 0;
  for (const auto& v : by_kind) n += v.size();
  return n;
}

const Operator& OperatorSet::at(std::size_t i) const {
  for (const auto& v : by_kind) {
    if (i < v.size()) return v[i];
    i -= v.size();
  }
  throw Error(ErrorCode::EmptyOperatorSet, "operator index out of range");
}

bool OperatorSet::contains(const Operator& op) const {
  const auto& v = (*this)[op.kind];
  return std::binary_search(v.begin(), v.end(), op);
}

void OperatorSet::insert(const Operator& op) {
  auto& v = (*this)[op.kind];
  auto it = std::lower_bound(v.begin(), v.end(), op);
  if (it == v.end() || *it != op) v.insert(it, op);
}

std::vector<Operator> OperatorSet::flatten() const {
  std::vector<Operator> out;
  out.reserve(out_degree());
  for (const auto& v : by_kind) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::string to_string(const OperatorSet& set, const std::vector<std::string>& names) {
  std::string out;
  for (OpKind k : kAllOpKinds) {
    out += to_string(k);
    out += ":";
    bool first = true;
    for (const auto& op : set[k]) {
      out += first ? " " : ", ";
      out += body(op, names);
      first = false;
    }
    out += "\n";
  }
  return out;
}

bool structurally_applicable(const MixedGraph& g, const Operator& op) {
  const int p = g.num_vertices();
  auto in_range = [p](VertexId v) { return v >= 0 && v < p; };
  if (!in_range(op.a) || !in_range(op.b) || op.a == op.b) return false;
  switch (op.kind) {
    case OpKind::InsertU:
    case OpKind::InsertD: return !g.adjacent(op.a, op.b);
    case OpKind::DeleteU: return g.has_undirected(op.a, op.b);
    case OpKind::DeleteD: return g.has_directed(op.a, op.b);
    case OpKind::MakeV:
      return in_range(op.c) && op.c != op.a && op.c != op.b && g.has_undirected(op.a, op.b) &&
             g.has_undirected(op.c, op.b) && !g.adjacent(op.a, op.c);
    case OpKind::RemoveV:
      return in_range(op.c) && op.c != op.a && op.c != op.b && g.has_directed(op.a, op.b) &&
             g.has_directed(op.c, op.b) && !g.adjacent(op.a, op.c);
  }
  return false;
}

MixedGraph modified_graph(const MixedGraph& g, const Operator& op) {
  if (!structurally_applicable(g, op)) {
    throw Error(ErrorCode::NotApplicable, to_string(op) + " does not apply to this graph");
  }
  MixedGraph m = g;
  switch (op.kind) {
    case OpKind::InsertU: m.add_undirected(op.a, op.b); break;
    case OpKind::DeleteU:
    case OpKind::DeleteD: m.remove_edge(op.a, op.b); break;
    case OpKind::InsertD: m.add_directed(op.a, op.b); break;
    case OpKind::MakeV:
      m.orient(op.a, op.b);
      m.orient(op.c, op.b);
      break;
    case OpKind::RemoveV:
      m.unorient(op.a, op.b);
      m.unorient(op.c, op.b);
      break;
  }
  return m;
}

MixedGraph modified_graph(const CompletedPdag& c, const Operator& op) {
  return modified_graph(c.graph(), op);
}

CompletedPdag resulting_cpdag(const CompletedPdag& c, const Operator& op) {
  return pdag_to_cpdag(modified_graph(c, op));
}

bool realizes(const CompletedPdag& result, const Operator& op) {
  const MixedGraph& g = result.graph();
  switch (op.kind) {
    case OpKind::InsertU: return g.has_undirected(op.a, op.b);
    case OpKind::DeleteU:
    case OpKind::DeleteD: return !g.adjacent(op.a, op.b);
    case OpKind::InsertD: return g.has_directed(op.a, op.b);
    case OpKind::MakeV:
      return g.has_directed(op.a, op.b) && g.has_directed(op.c, op.b) && !g.adjacent(op.a, op.c);
    case OpKind::RemoveV: return g.has_undirected(op.a, op.b) && g.has_undirected(op.c, op.b);
  }
  return false;
}

namespace {

bool same_parents(const MixedGraph& g, VertexId x, VertexId y) {
  const auto px = g.parents(x);
  const auto py = g.parents(y);
  return std::equal(px.begin(), px.end(), py.begin(), py.end());
}

std::optional<CompletedPdag> try_result(const CompletedPdag& c, const Operator& op) {
  try {
    return resulting_cpdag(c, op);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotExtendable) return std::nullopt;
    throw;
  }
}

}  // namespace

bool is_valid(const CompletedPdag& c, const Operator& op) {
  if (!structurally_applicable(c.graph(), op)) return false;
  if (op.kind == OpKind::InsertU && !same_parents(c.graph(), op.a, op.b)) return false;
  const auto result = try_result(c, op);
  return result && realizes(*result, op);
}

bool reversible_by_recompute(const CompletedPdag& c, const Operator& op) {
  const auto result = try_result(c, op);
  if (!result || !realizes(*result, op)) return false;
  const Operator back = reverse_operator(op);
  if (!is_valid(*result, back)) return false;
  return resulting_cpdag(*result, back) == c;
}

bool check_iu3(const CompletedPdag& c, const Operator& op) {
  MixedGraph p = modified_graph(c, op);
  const auto common = common_sets(p, op.a, op.b).children;
  for (VertexId u : common) {
    if (!is_strongly_protected(p, op.a, u) || !is_strongly_protected(p, op.b, u)) return false;
  }
  return true;
}

bool check_id3(const CompletedPdag& c, const Operator& op) {
  const VertexId x = op.a;
  const VertexId y = op.b;
  MixedGraph p = modified_graph(c, op);

  std::vector<VertexId> to_orient;
  for (VertexId u : p.neighbors(y)) {
    if (!p.adjacent(u, x)) to_orient.push_back(u);
  }
  for (VertexId u : to_orient) p.orient(y, u);

  // One pass in ascending parent order; later checks see earlier demotions.
  const std::vector<VertexId> parents(p.parents(y).begin(), p.parents(y).end());
  for (VertexId v : parents) {
    if (!is_strongly_protected(p, v, y)) p.unorient(v, y);
  }

  for (VertexId u : common_sets(p, x, y).children) {
    if (!is_strongly_protected(p, y, u)) return false;
  }
  return true;
}

bool check_dd2(const CompletedPdag& c, const Operator& op) {
  const MixedGraph p = modified_graph(c, op);
  for (VertexId v : p.parents(op.b)) {
    if (!is_strongly_protected(p, v, op.b)) return false;
  }
  return true;
}

std::vector<Operator> candidate_operators(const MixedGraph& g, std::size_t max_edges) {
  const int p = g.num_vertices();
  std::vector<Operator> out;
  const bool room = g.num_edges() < max_edges;

  if (room) {
    for (VertexId x = 0; x < p; ++x) {
      for (VertexId y = x + 1; y < p; ++y) {
        if (!g.adjacent(x, y)) out.push_back(Operator::insert_u(x, y));
      }
    }
  }
  for (auto [a, b] : g.undirected_edges()) out.push_back(Operator::delete_u(a, b));
  if (room) {
    for (VertexId x = 0; x < p; ++x) {
      for (VertexId y = 0; y < p; ++y) {
        if (x != y && !g.adjacent(x, y)) out.push_back(Operator::insert_d(x, y));
      }
    }
  }
  for (auto [a, b] : g.directed_edges()) out.push_back(Operator::delete_d(a, b));

  const std::size_t mv_begin = out.size();
  for (VertexId y = 0; y < p; ++y) {
    const auto ny = g.neighbors(y);
    for (std::size_t i = 0; i < ny.size(); ++i) {
      for (std::size_t j = i + 1; j < ny.size(); ++j) {
        if (!g.adjacent(ny[i], ny[j])) out.push_back(Operator::make_v(ny[i], y, ny[j]));
      }
    }
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(mv_begin), out.end());
  for (const auto& vs : v_structures(g)) out.push_back(Operator::remove_v(vs.a, vs.center, vs.b));
  return out;
}

bool in_perfect_set(const CompletedPdag& c, const Operator& op, SetStrategy strategy) {
  switch (strategy) {
    case SetStrategy::Recompute:
      return is_valid(c, op) && reversible_by_recompute(c, op);
    case SetStrategy::FastChecks:
      if (!is_valid(c, op)) return false;
      switch (op.kind) {
        case OpKind::InsertU:
          if (check_iu3(c, op)) return true;
          break;
        case OpKind::InsertD:
          if (check_id3(c, op)) return true;
          break;
        case OpKind::DeleteD:
          if (check_dd2(c, op)) return true;
          break;
        default: break;
      }
      return reversible_by_recompute(c, op);
    case SetStrategy::Local: {
      detail::LocalContext ctx(c);
      return ctx.member(op);
    }
  }
  return false;
}

OperatorSet perfect_operator_set(const CompletedPdag& c, std::size_t max_edges,
                                 SetStrategy strategy) {
  if (strategy == SetStrategy::Local) return detail::LocalContext(c).collect(max_edges);
  OperatorSet set;
  for (const auto& op : candidate_operators(c.graph(), max_edges)) {
    if (in_perfect_set(c, op, strategy)) set[op.kind].push_back(op);
  }
  return set;
}

std::size_t perfect_out_degree(const CompletedPdag& c, std::size_t max_edges) {
  return detail::LocalContext(c).count(max_edges);
}

}  // namespace mec
