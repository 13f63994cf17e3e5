#include "mec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include "mec/io.hpp"

namespace mec {

std::optional<std::size_t> ClassCatalog::find(const MixedGraph& g) const {
  const auto it = index.find(canonical_key(g));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<MixedGraph> enumerate_dags(int p) {
  if (p < 0 || p > kMaxOracleVertices) {
    throw Error(ErrorCode::TooLarge, "enumeration supports p <= " +
                                         std::to_string(kMaxOracleVertices) + ", got " +
                                         std::to_string(p));
  }
  std::vector<Edge> pairs;
  for (VertexId a = 0; a < p; ++a) {
    for (VertexId b = a + 1; b < p; ++b) pairs.emplace_back(a, b);
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;

  std::vector<MixedGraph> out;
  for (std::size_t code = 0; code < total; ++code) {
    MixedGraph g(p);
    std::size_t rest = code;
    for (auto [a, b] : pairs) {
      switch (rest % 3) {
        case 1: g.add_directed(a, b); break;
        case 2: g.add_directed(b, a); break;
        default: break;
      }
      rest /= 3;
    }
    if (!has_directed_cycle(g)) out.push_back(std::move(g));
  }
  return out;
}

ClassCatalog enumerate_classes(int p, std::size_t max_edges) {
  ClassCatalog cat;
  cat.p = p;
  cat.max_edges = max_edges;
  for (const auto& d : enumerate_dags(p)) {
    if (d.num_edges() > max_edges) continue;
    auto c = dag_to_cpdag(d);
    auto [it, fresh] = cat.index.emplace(canonical_key(c.graph()), cat.classes.size());
    if (fresh) {
      cat.classes.push_back(std::move(c));
      cat.dag_counts.push_back(0);
    }
    ++cat.dag_counts[it->second];
  }
  return cat;
}

bool reversibility_oracle(const CompletedPdag& c, const Operator& op) {
  return reversible_by_recompute(c, op);
}

void PropertyResult::fail(std::string what) {
  pass = false;
  if (counterexamples.size() < 20) counterexamples.push_back(std::move(what));
}

namespace {

std::string describe(const CompletedPdag& c, const Operator& op) {
  return "C = {" + inline_edges(c.graph()) + "}, " + to_string(op);
}

std::vector<OperatorSet> build_all(const ClassCatalog& cat, const SetBuilder& build) {
  std::vector<OperatorSet> sets;
  sets.reserve(cat.size());
  for (const auto& c : cat.classes) sets.push_back(build(c));
  return sets;
}

// Target class index for every operator of every class; nullopt marks an
// operator that is invalid or leaves the catalog.
using Targets = std::vector<std::vector<std::optional<std::size_t>>>;

Targets targets_of(const ClassCatalog& cat, const std::vector<OperatorSet>& sets) {
  Targets t(cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    for (const auto& op : sets[i].flatten()) {
      std::optional<std::size_t> j;
      if (is_valid(cat.classes[i], op)) j = cat.find(resulting_cpdag(cat.classes[i], op).graph());
      t[i].push_back(j);
    }
  }
  return t;
}

SetBuilder builder_for(std::size_t max_edges, SetStrategy strategy) {
  return [=](const CompletedPdag& c) { return perfect_operator_set(c, max_edges, strategy); };
}

}  // namespace

PerfectnessReport verify_perfectness(int p, std::size_t max_edges, SetStrategy strategy) {
  return verify_perfectness(enumerate_classes(p, max_edges), builder_for(max_edges, strategy));
}

PerfectnessReport verify_perfectness(const ClassCatalog& cat, const SetBuilder& build) {
  PerfectnessReport rep;
  rep.classes = cat.size();
  const auto sets = build_all(cat, build);
  const auto targets = targets_of(cat, sets);

  for (std::size_t i = 0; i < cat.size(); ++i) {
    const auto& c = cat.classes[i];
    const auto ops = sets[i].flatten();
    rep.operators += ops.size();
    std::map<std::size_t, Operator> seen;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const auto& op = ops[k];
      ++rep.validity.checked;
      const auto j = targets[i][k];
      if (!j) {
        rep.validity.fail(describe(c, op) + ": invalid or outside the state space");
        continue;
      }

      ++rep.distinguishability.checked;
      auto [it, fresh] = seen.emplace(*j, op);
      if (!fresh) {
        rep.distinguishability.fail(describe(c, op) + ": same result as " +
                                    to_string(it->second));
      }

      ++rep.reversibility.checked;
      const Operator back = reverse_operator(op);
      const auto& there = cat.classes[*j];
      if (!sets[*j].contains(back)) {
        rep.reversibility.fail(describe(c, op) + ": " + to_string(back) + " missing from O of {" +
                               inline_edges(there.graph()) + "}");
      } else if (!is_valid(there, back) || !(resulting_cpdag(there, back) == c)) {
        rep.reversibility.fail(describe(c, op) + ": " + to_string(back) +
                               " does not return to C");
      }
    }
  }

  // Connectivity of the transition graph, edges taken in both directions.
  std::vector<std::vector<std::size_t>> adj(cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    for (const auto& j : targets[i]) {
      if (!j) continue;
      adj[i].push_back(*j);
      adj[*j].push_back(i);
    }
  }
  std::vector<bool> reached(cat.size(), false);
  std::queue<std::size_t> q;
  if (!cat.classes.empty()) {
    reached[0] = true;
    q.push(0);
  }
  while (!q.empty()) {
    const auto i = q.front();
    q.pop();
    for (auto j : adj[i]) {
      if (!reached[j]) {
        reached[j] = true;
        q.push(j);
      }
    }
  }
  rep.irreducibility.checked = cat.size();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (!reached[i]) {
      rep.irreducibility.fail("unreachable from {" + inline_edges(cat.classes[0].graph()) +
                              "}: {" + inline_edges(cat.classes[i].graph()) + "}");
    }
  }
  return rep;
}

std::vector<std::string> reversibility_counterexamples(const CompletedPdag& c,
                                                       const OperatorSet& ops,
                                                       const SetBuilder& build) {
  std::vector<std::string> out;
  for (const auto& op : ops.flatten()) {
    if (!is_valid(c, op)) {
      out.push_back(describe(c, op) + ": invalid");
      continue;
    }
    const auto there = resulting_cpdag(c, op);
    const Operator back = reverse_operator(op);
    if (!build(there).contains(back) || !is_valid(there, back)) {
      out.push_back(describe(c, op) + ": " + to_string(back) + " not available at {" +
                    inline_edges(there.graph()) + "}");
    } else if (!(resulting_cpdag(there, back) == c)) {
      out.push_back(describe(c, op) + ": " + to_string(back) + " leads to {" +
                    inline_edges(resulting_cpdag(there, back).graph()) + "}");
    }
  }
  return out;
}

namespace {

struct CountMatrix {
  std::vector<std::size_t> degree;
  // counts[i][j]: operators of class i leading to class j.
  std::vector<std::map<std::size_t, std::size_t>> counts;
};

CountMatrix count_matrix(const ClassCatalog& cat, SetStrategy strategy) {
  const auto sets = build_all(cat, builder_for(cat.max_edges, strategy));
  const auto targets = targets_of(cat, sets);
  CountMatrix m;
  m.degree.resize(cat.size());
  m.counts.resize(cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    m.degree[i] = sets[i].out_degree();
    for (const auto& j : targets[i]) {
      if (!j) throw Error(ErrorCode::NotApplicable, "operator leaves the catalog");
      ++m.counts[i][*j];
    }
  }
  return m;
}

}  // namespace

std::vector<std::vector<double>> transition_matrix(const ClassCatalog& cat, ChainMode mode,
                                                   double laziness, SetStrategy strategy) {
  const auto m = count_matrix(cat, strategy);
  const std::size_t n = cat.size();
  std::vector<std::vector<double>> P(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double di = static_cast<double>(m.degree[i]);
    double out = 0.0;
    for (const auto& [j, k] : m.counts[i]) {
      double pij = static_cast<double>(k) / di;
      if (mode == ChainMode::Metropolis) {
        pij *= std::min(1.0, di / static_cast<double>(m.degree[j]));
      }
      pij *= 1.0 - laziness;
      P[i][j] += pij;
      out += pij;
    }
    P[i][i] += std::max(0.0, 1.0 - out);
  }
  return P;
}

std::vector<double> stationary_distribution(const std::vector<std::vector<double>>& P) {
  const std::size_t n = P.size();
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (int iter = 0; iter < 10'000'000; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] += 0.5 * pi[i];
      for (std::size_t j = 0; j < n; ++j) next[j] += 0.5 * pi[i] * P[i][j];
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      change += std::abs(next[i] - pi[i]);
    }
    pi.swap(next);
    if (change < 1e-13) break;
  }
  return pi;
}

std::vector<double> exact_stationary(int p, std::size_t max_edges, ChainMode mode,
                                     double laziness) {
  if (p > 4) throw Error(ErrorCode::TooLarge, "exact stationary law supports p <= 4");
  return stationary_distribution(
      transition_matrix(enumerate_classes(p, max_edges), mode, laziness));
}

bool detailed_balance_exact(const ClassCatalog& cat, ChainMode mode) {
  const auto m = count_matrix(cat, SetStrategy::Local);
  // P_ij = num/den exactly; pi_i = weight_i / Z.
  auto entry = [&](std::size_t i, std::size_t j) -> std::pair<std::uint64_t, std::uint64_t> {
    const auto it = m.counts[i].find(j);
    const std::uint64_t k = it == m.counts[i].end() ? 0 : it->second;
    const std::uint64_t di = m.degree[i];
    const std::uint64_t dj = m.degree[j];
    if (mode == ChainMode::Raw) return {k, di};
    return {k, std::max(di, dj)};  // (k / di) * min(1, di / dj)
  };
  auto weight = [&](std::size_t i) -> std::uint64_t {
    return mode == ChainMode::Raw ? m.degree[i] : 1;
  };
  for (std::size_t i = 0; i < cat.size(); ++i) {
    for (std::size_t j = i + 1; j < cat.size(); ++j) {
      const auto [nij, dij] = entry(i, j);
      const auto [nji, dji] = entry(j, i);
      if (weight(i) * nij * dji != weight(j) * nji * dij) return false;
    }
  }
  return true;
}

}  // namespace mec
