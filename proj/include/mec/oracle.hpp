#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mec/operators.hpp"
#include "mec/sampler.hpp"

namespace mec {

/// Largest vertex count the brute-force enumerators accept.
inline constexpr int kMaxOracleVertices = 5;

/// Every completed PDAG on p labeled vertices with at most max_edges edges,
/// deduplicated by canonical_key, in order of first discovery.
struct ClassCatalog {
  int p = 0;
  std::size_t max_edges = 0;
  std::vector<CompletedPdag> classes;
  /// Number of labeled DAGs whose completed PDAG is classes[i].
  std::vector<std::size_t> dag_counts;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t size() const { return classes.size(); }
  std::optional<std::size_t> find(const MixedGraph& g) const;
};

/// All labeled DAGs on p vertices, from the 3^(p choose 2) pair assignments.
/// Throws TooLarge for p > kMaxOracleVertices.
std::vector<MixedGraph> enumerate_dags(int p);

ClassCatalog enumerate_classes(int p, std::size_t max_edges);

/// True iff reverse_operator(op) is valid on C' = resulting_cpdag(c, op) and
/// maps C' back to c.
bool reversibility_oracle(const CompletedPdag& c, const Operator& op);

struct PropertyResult {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<std::string> counterexamples;

  void fail(std::string what);
};

struct PerfectnessReport {
  std::size_t classes = 0;
  std::size_t operators = 0;
  PropertyResult validity;
  PropertyResult distinguishability;
  PropertyResult reversibility;
  PropertyResult irreducibility;

  bool all_pass() const {
    return validity.pass && distinguishability.pass && reversibility.pass && irreducibility.pass;
  }
};

using SetBuilder = std::function<OperatorSet(const CompletedPdag&)>;

PerfectnessReport verify_perfectness(int p, std::size_t max_edges,
                                     SetStrategy strategy = SetStrategy::Local);
PerfectnessReport verify_perfectness(const ClassCatalog& catalog, const SetBuilder& build);

/// Reversibility of one class's operator set, given a builder for the sets
/// of neighboring classes. One message per failing operator.
std::vector<std::string> reversibility_counterexamples(const CompletedPdag& c,
                                                       const OperatorSet& ops,
                                                       const SetBuilder& build);

/// Row-stochastic transition matrix of the chain over the catalog.
std::vector<std::vector<double>> transition_matrix(const ClassCatalog& catalog, ChainMode mode,
                                                   double laziness = 0.0,
                                                   SetStrategy strategy = SetStrategy::Local);

/// Stationary vector by power iteration on (I + P) / 2, stopping when the
/// L1 change falls below 1e-13.
std::vector<double> stationary_distribution(const std::vector<std::vector<double>>& matrix);

/// Stationary law of the exact chain over S_p^n. Throws TooLarge for p > 4.
std::vector<double> exact_stationary(int p, std::size_t max_edges, ChainMode mode,
                                     double laziness = 0.0);

/// Exact detailed-balance check in integer arithmetic: raw chain against
/// pi(e) ∝ |O_e|, metropolis chain against the uniform law.
bool detailed_balance_exact(const ClassCatalog& catalog, ChainMode mode);

}  // namespace mec
