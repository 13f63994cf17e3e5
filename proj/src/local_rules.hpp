#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mec/operators.hpp"

namespace mec::detail {

/// p x p bit matrix; row v is a vertex set.
class BitTable {
 public:
  BitTable() = default;
  explicit BitTable(int p)
      : words_((static_cast<std::size_t>(p) + 63) / 64),
        bits_(words_ * static_cast<std::size_t>(p), 0) {}

  std::size_t words() const { return words_; }
  std::uint64_t* row(VertexId v) { return bits_.data() + words_ * static_cast<std::size_t>(v); }
  const std::uint64_t* row(VertexId v) const {
    return bits_.data() + words_ * static_cast<std::size_t>(v);
  }
  void set(VertexId v, VertexId w) { row(v)[w / 64] |= std::uint64_t{1} << (w % 64); }
  bool test(VertexId v, VertexId w) const { return (row(v)[w / 64] >> (w % 64)) & 1U; }

 private:
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Decides perfect-set membership from local structure of the current
/// graph: parent sets, chain components, semi-directed reachability, and one
/// step of the compelled-edge labeling at the head of the edited edge,
/// evaluated on a consistent extension that differs from a fixed one inside
/// a single chain component. The one configuration the rules do not settle
/// (an insertion whose common child has a second parent below the head)
/// is decided by recomputation.
class LocalContext {
 public:
  explicit LocalContext(const CompletedPdag& c);

  bool member(const Operator& op) const;

  /// O_C in canonical order.
  OperatorSet collect(std::size_t max_edges) const;
  /// |O_C| without building the set.
  std::size_t count(std::size_t max_edges) const;

  /// Number of decisions that needed a full recomputation.
  std::size_t fallbacks() const { return fallbacks_; }

 private:
  template <class Sink>
  void visit(std::size_t max_edges, Sink& sink) const;

  bool insert_u(VertexId x, VertexId y) const;
  bool delete_u(VertexId x, VertexId y) const;
  bool insert_d(VertexId x, VertexId y) const;
  bool delete_d(VertexId x, VertexId y) const;
  bool make_v(VertexId z, VertexId u) const;
  bool remove_v(VertexId z, VertexId v, VertexId u) const;
  bool children_stay_compelled(VertexId x, VertexId y) const;

  bool same_parents(VertexId x, VertexId y) const {
    return parent_class_[x] == parent_class_[y];
  }
  /// insert_u once the parent sets are known to agree.
  bool chord_ok(VertexId x, VertexId y) const;
  bool clique(const std::vector<VertexId>& s) const;
  bool reaches(VertexId from, VertexId to) const { return reach_.test(from, to); }
  bool reaches_avoiding(VertexId from, VertexId to, const std::vector<VertexId>& blocked,
                        bool follow_arrows) const;
  void new_epoch() const;
  bool search_unmarked(VertexId from, VertexId to, bool follow_arrows) const;
  bool separated(VertexId z, VertexId u, VertexId extra_block) const;
  bool protected_with(VertexId v, VertexId u, VertexId x, VertexId y) const;
  /// Parents of t in the fixed consistent extension, sorted.
  std::span<const VertexId> extension_parents(VertexId t) const {
    return {ext_list_.data() + ext_start_[t], ext_start_[t + 1] - ext_start_[t]};
  }

  const CompletedPdag& c_;
  const MixedGraph& g_;
  int p_;
  std::vector<int> comp_;
  std::vector<VertexId> members_;  // grouped by component
  std::vector<std::size_t> comp_start_;
  std::span<const VertexId> members(int k) const {
    return {members_.data() + comp_start_[k], comp_start_[k + 1] - comp_start_[k]};
  }
  std::vector<int> rank_;  // search order inside the chain component
  std::vector<int> pos_;   // topological position in the extension
  std::vector<std::size_t> ext_start_;
  std::vector<VertexId> ext_list_;
  std::vector<int> parent_class_;
  std::vector<VertexId> by_parents_;     // grouped by parent_class_
  std::vector<std::size_t> class_start_;  // group k is [start[k], start[k+1])
  BitTable adj_;
  BitTable reach_;    // semi-directed paths from v
  BitTable reached_;  // semi-directed paths into v
  mutable std::size_t fallbacks_ = 0;
  mutable std::vector<std::uint32_t> mark_;
  mutable std::uint32_t epoch_ = 0;
  mutable std::vector<VertexId> stack_;
  mutable std::array<std::vector<VertexId>, 2> scratch_;
};

}  // namespace mec::detail
