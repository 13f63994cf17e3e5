#pragma once

#include <array>
#include <string>
#include <vector>

#include "mec/equivalence.hpp"

namespace mec {

enum class OpKind : std::uint8_t { InsertU, DeleteU, InsertD, DeleteD, MakeV, RemoveV };

inline constexpr std::array<OpKind, 6> kAllOpKinds = {OpKind::InsertU, OpKind::DeleteU,
                                                      OpKind::InsertD, OpKind::DeleteD,
                                                      OpKind::MakeV,   OpKind::RemoveV};

const char* to_string(OpKind kind);

/// One of the six local edits of a completed PDAG.
///
/// Argument roles: InsertU/DeleteU (a - b), stored with a < b;
/// InsertD/DeleteD (a -> b); MakeV/RemoveV (a -> b <- c), stored with a < c.
/// Construct through the named factories, which normalize argument order.
struct Operator {
  OpKind kind = OpKind::InsertU;
  VertexId a = -1;
  VertexId b = -1;
  VertexId c = -1;

  static Operator insert_u(VertexId x, VertexId y);
  static Operator delete_u(VertexId x, VertexId y);
  static Operator insert_d(VertexId from, VertexId to);
  static Operator delete_d(VertexId from, VertexId to);
  static Operator make_v(VertexId z, VertexId center, VertexId u);
  static Operator remove_v(VertexId z, VertexId center, VertexId u);

  bool is_insertion() const { return kind == OpKind::InsertU || kind == OpKind::InsertD; }

  friend auto operator<=>(const Operator&, const Operator&) = default;
};

/// Table notation, e.g. "InsertU x-z", "DeleteD y->v", "MakeV z->y<-u".
/// Vertex names default to decimal indices.
std::string to_string(const Operator& op, const std::vector<std::string>& names = {});

/// The operator that undoes `op`: InsertU<->DeleteU, InsertD<->DeleteD,
/// MakeV<->RemoveV, same arguments.
Operator reverse_operator(const Operator& op);

/// Per-kind operator collections of one completed PDAG; each list is sorted.
struct OperatorSet {
  std::array<std::vector<Operator>, 6> by_kind;

  std::vector<Operator>& operator[](OpKind k) { return by_kind[static_cast<std::size_t>(k)]; }
  const std::vector<Operator>& operator[](OpKind k) const {
    return by_kind[static_cast<std::size_t>(k)];
  }

  std::size_t out_degree() const;
  /// i-th operator in canonical (kind, then argument) order.
  const Operator& at(std::size_t i) const;
  bool contains(const Operator& op) const;
  void insert(const Operator& op);
  std::vector<Operator> flatten() const;

  friend bool operator==(const OperatorSet&, const OperatorSet&) = default;
};

/// Six labeled sections in canonical order, one line per section:
/// "InsertU: x-z, x-u".
std::string to_string(const OperatorSet& set, const std::vector<std::string>& names = {});

/// True iff the edges the kind requires are present (or absent).
bool structurally_applicable(const MixedGraph& g, const Operator& op);

/// The raw graph after the edit; may fail to be a completed PDAG or even a
/// PDAG. Throws NotApplicable when the edit does not fit the graph.
MixedGraph modified_graph(const CompletedPdag& c, const Operator& op);
MixedGraph modified_graph(const MixedGraph& g, const Operator& op);

/// pdag_to_cpdag(modified_graph(c, op)); throws NotExtendable.
CompletedPdag resulting_cpdag(const CompletedPdag& c, const Operator& op);

/// Whether the resulting completed PDAG exists and realizes the edit.
bool is_valid(const CompletedPdag& c, const Operator& op);

/// Same, given an already computed result of resulting_cpdag(c, op).
bool realizes(const CompletedPdag& result, const Operator& op);

/// True iff reverse_operator(op) is valid on the result and maps it back to c.
bool reversible_by_recompute(const CompletedPdag& c, const Operator& op);

/// Fast condition checks. Each assumes `op` is a valid operator of `c` of
/// the matching kind and only inspects a few edges of the modified graph.
bool check_iu3(const CompletedPdag& c, const Operator& op);
bool check_id3(const CompletedPdag& c, const Operator& op);
bool check_dd2(const CompletedPdag& c, const Operator& op);

/// How perfect_operator_set decides membership.
enum class SetStrategy {
  /// validity + reversibility recompute for every candidate (baseline).
  Recompute,
  /// validity, then check_iu3 / check_id3 / check_dd2 as a shortcut for
  /// those kinds. The checks are sufficient but not necessary for
  /// reversibility, so a failed check falls back to the recompute; the
  /// resulting set equals the Recompute set.
  FastChecks,
  /// local rules on the current graph, with no extension or relabeling per
  /// candidate except in one rare InsertD configuration. Same set again.
  Local,
};

/// Structural candidates in canonical order. Insertions are omitted once
/// the graph holds max_edges edges.
std::vector<Operator> candidate_operators(const MixedGraph& g, std::size_t max_edges);

/// The perfect operator set O_C restricted to the edge bound.
OperatorSet perfect_operator_set(const CompletedPdag& c, std::size_t max_edges,
                                 SetStrategy strategy = SetStrategy::Local);

/// |O_C| without materializing the set (Local rules).
std::size_t perfect_out_degree(const CompletedPdag& c, std::size_t max_edges);

/// Membership of a single candidate under a strategy.
bool in_perfect_set(const CompletedPdag& c, const Operator& op, SetStrategy strategy);

}  // namespace mec
