#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eqrank/partition.hpp"
#include "eqrank/types.hpp"
#include "eqrank/weights.hpp"

namespace eqrank {

struct ReindexConfig {
  std::size_t max_iterations = 50;
  // Fraction of vertices that must be settled for the trace to report that
  // the target was reached. Does not stop the iteration.
  double target_converged_fraction = 0.99;
  // Consecutive unchanged transitions required for a vertex to count as
  // converged when the run ends without a global fixed point.
  std::size_t stall_window = 1;

  void validate() const;  // throws std::invalid_argument
};

struct ReindexStep {
  Partition partition;
  // Previous cluster id -> new cluster id, kNoCluster for emptied clusters.
  std::vector<ClusterId> id_map;
  std::vector<VertexId> moved;  // sorted
};

struct ReindexResult {
  Partition partition;                 // lim(T), canonical numbering
  std::vector<VertexId> converged;     // V_max, sorted
  std::vector<std::size_t> reassigned; // per iteration
  std::size_t iterations = 0;
  bool fixed_point = false;            // last iteration reassigned nobody
  // First iteration whose reassigned fraction fell to 1 - target or below.
  std::optional<std::size_t> target_iteration;

  double converged_fraction() const {
    return partition.size() == 0 ? 1.0
                                 : static_cast<double>(converged.size()) / partition.size();
  }
};

// D(x, T) = sum of w(x, y) over y in T.
double closeness(VertexId x, std::span<const VertexId> cluster, const SimilarityGraph& w);

// Synchronous relabeling: every vertex takes the cluster of `p` it is closest
// to. Ties keep the current cluster when it is among the maximizers, else go
// to the smallest id; vertices with no neighbors keep their label. Emptied
// clusters are dropped and survivors renumbered in their previous order.
ReindexStep reindex_step(const Partition& p, const SimilarityGraph& w);

ReindexResult reindex_to_limit(const Partition& initial, const SimilarityGraph& w,
                               const ReindexConfig& cfg = {});

// Vertices whose own cluster does not attain the maximum of D(x, .).
std::vector<VertexId> proper_coalition_violations(const Partition& p,
                                                  const SimilarityGraph& w);

}  // namespace eqrank
