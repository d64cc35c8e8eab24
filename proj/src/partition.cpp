#include "eqrank/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace eqrank {

Partition::Partition(std::vector<ClusterId> labels) : labels_(std::move(labels)) {
  ClusterId max_id = 0;
  for (ClusterId c : labels_) {
    if (c == kNoCluster) throw std::invalid_argument("unlabeled vertex in partition");
    max_id = std::max(max_id, c);
  }
  cluster_count_ = labels_.empty() ? 0 : static_cast<std::size_t>(max_id) + 1;
  std::vector<bool> seen(cluster_count_, false);
  for (ClusterId c : labels_) seen[c] = true;
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("partition cluster ids are not dense");
  }
}

Partition Partition::canonical(std::span<const ClusterId> labels) {
  std::vector<ClusterId> remap;
  std::vector<ClusterId> out(labels.size());
  ClusterId next = 0;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    ClusterId c = labels[v];
    if (c == kNoCluster) throw std::invalid_argument("unlabeled vertex in partition");
    if (c >= remap.size()) remap.resize(static_cast<std::size_t>(c) + 1, kNoCluster);
    if (remap[c] == kNoCluster) remap[c] = next++;
    out[v] = remap[c];
  }
  return Partition(std::move(out));
}

Partition Partition::singletons(std::size_t n) {
  std::vector<ClusterId> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = static_cast<ClusterId>(v);
  return Partition(std::move(labels));
}

Partition Partition::from_clusters(std::size_t n,
                                   const std::vector<std::vector<VertexId>>& clusters) {
  std::vector<ClusterId> labels(n, kNoCluster);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (VertexId v : clusters[c]) {
      if (v >= n) throw std::invalid_argument("cluster member out of range");
      if (labels[v] != kNoCluster) throw std::invalid_argument("clusters overlap");
      labels[v] = static_cast<ClusterId>(c);
    }
  }
  return Partition(std::move(labels));
}

std::vector<std::size_t> Partition::cluster_sizes() const {
  std::vector<std::size_t> sizes(cluster_count_, 0);
  for (ClusterId c : labels_) ++sizes[c];
  return sizes;
}

std::vector<std::vector<VertexId>> Partition::clusters() const {
  std::vector<std::vector<VertexId>> out(cluster_count_);
  for (VertexId v = 0; v < labels_.size(); ++v) out[labels_[v]].push_back(v);
  return out;
}

bool Partition::is_canonical() const {
  ClusterId next = 0;
  for (ClusterId c : labels_) {
    if (c > next) return false;
    if (c == next) ++next;
  }
  return true;
}

bool is_coarsening(const Partition& coarse, const Partition& fine) {
  if (coarse.size() != fine.size()) return false;
  std::vector<ClusterId> block_of(fine.cluster_count(), kNoCluster);
  for (VertexId v = 0; v < fine.size(); ++v) {
    ClusterId& b = block_of[fine.label(v)];
    if (b == kNoCluster) {
      b = coarse.label(v);
    } else if (b != coarse.label(v)) {
      return false;
    }
  }
  return true;
}

}  // namespace eqrank
