#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eqrank/types.hpp"

namespace eqrank {

// Total labeling of the vertex set [0, n) into clusters.
//
// Cluster ids are dense, 0..cluster_count()-1, and every cluster is
// non-empty. A canonical partition numbers clusters in order of their
// smallest member.
class Partition {
 public:
  Partition() = default;
  // Throws std::invalid_argument when ids are not dense or a label is empty.
  explicit Partition(std::vector<ClusterId> labels);

  // Renumbers arbitrary labels into canonical form.
  static Partition canonical(std::span<const ClusterId> labels);
  static Partition singletons(std::size_t n);
  static Partition from_clusters(std::size_t n,
                                 const std::vector<std::vector<VertexId>>& clusters);

  std::size_t size() const { return labels_.size(); }
  std::size_t cluster_count() const { return cluster_count_; }
  ClusterId label(VertexId v) const { return labels_[v]; }
  std::span<const ClusterId> labels() const { return labels_; }

  std::vector<std::size_t> cluster_sizes() const;
  // Members of every cluster, each sorted ascending.
  std::vector<std::vector<VertexId>> clusters() const;

  bool is_canonical() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<ClusterId> labels_;
  std::size_t cluster_count_ = 0;
};

// True when every block of `coarse` is a union of blocks of `fine`.
bool is_coarsening(const Partition& coarse, const Partition& fine);

}  // namespace eqrank
