#include "eqrank/reindex.hpp"

#include <algorithm>
#include <stdexcept>

namespace eqrank {

void ReindexConfig::validate() const {
  if (max_iterations == 0) throw std::invalid_argument("max_iterations must be positive");
  if (!(target_converged_fraction > 0.0 && target_converged_fraction <= 1.0)) {
    throw std::invalid_argument("target_converged_fraction must lie in (0, 1]");
  }
  if (stall_window == 0) throw std::invalid_argument("stall_window must be positive");
}

double closeness(VertexId x, std::span<const VertexId> cluster, const SimilarityGraph& w) {
  double total = 0.0;
  for (VertexId y : cluster) {
    if (y != x) total += w.weight(x, y);
  }
  return total;
}

namespace {

// Per-vertex closeness to every neighboring cluster, reusing one dense
// accumulator across calls.
class ClosenessTable {
 public:
  explicit ClosenessTable(std::size_t clusters) : sum_(clusters, 0.0) {}

  void fill(VertexId x, const Partition& p, const SimilarityGraph& w) {
    for (ClusterId c : touched_) sum_[c] = 0.0;
    touched_.clear();
    auto nb = w.neighbors(x);
    auto ws = w.weights(x);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      ClusterId c = p.label(nb[k]);
      if (sum_[c] == 0.0) touched_.push_back(c);
      sum_[c] += ws[k];
    }
  }

  // Best cluster under the tie policy; `own` wins any tie it is part of.
  ClusterId best(ClusterId own) const {
    if (touched_.empty()) return own;
    double top = sum_[own];
    ClusterId arg = own;
    for (ClusterId c : touched_) {
      double d = sum_[c];
      if (d > top || (d == top && arg != own && c < arg)) {
        top = d;
        arg = c;
      }
    }
    return arg;
  }

  double of(ClusterId c) const { return sum_[c]; }

 private:
  std::vector<double> sum_;
  std::vector<ClusterId> touched_;
};

}  // namespace

ReindexStep reindex_step(const Partition& p, const SimilarityGraph& w) {
  if (p.size() != w.vertex_count()) {
    throw std::invalid_argument("partition and similarity graph sizes differ");
  }
  const std::size_t n = p.size();
  ClosenessTable table(p.cluster_count());
  std::vector<ClusterId> next(n);
  ReindexStep out;
  for (VertexId x = 0; x < n; ++x) {
    table.fill(x, p, w);
    next[x] = table.best(p.label(x));
    if (next[x] != p.label(x)) out.moved.push_back(x);
  }
  out.id_map.assign(p.cluster_count(), kNoCluster);
  for (ClusterId c : next) out.id_map[c] = 0;
  ClusterId id = 0;
  for (ClusterId& m : out.id_map) {
    if (m != kNoCluster) m = id++;
  }
  for (ClusterId& c : next) c = out.id_map[c];
  out.partition = Partition(std::move(next));
  return out;
}

ReindexResult reindex_to_limit(const Partition& initial, const SimilarityGraph& w,
                               const ReindexConfig& cfg) {
  cfg.validate();
  const std::size_t n = initial.size();
  ReindexResult result;
  std::vector<std::size_t> unchanged_run(n, 0);
  auto record = [&](const ReindexStep& step) {
    for (std::size_t& r : unchanged_run) ++r;
    for (VertexId v : step.moved) unchanged_run[v] = 0;
  };

  Partition current = initial;
  const double allowed_fraction = 1.0 - cfg.target_converged_fraction;
  while (result.iterations < cfg.max_iterations) {
    ReindexStep step = reindex_step(current, w);
    ++result.iterations;
    result.reassigned.push_back(step.moved.size());
    record(step);
    current = std::move(step.partition);
    double fraction = n == 0 ? 0.0 : static_cast<double>(step.moved.size()) / n;
    if (!result.target_iteration && fraction <= allowed_fraction) {
      result.target_iteration = result.iterations;
    }
    if (step.moved.empty()) {
      result.fixed_point = true;
      break;
    }
  }

  if (result.fixed_point) {
    result.converged.resize(n);
    for (VertexId v = 0; v < n; ++v) result.converged[v] = v;
  } else {
    // One probe step decides which vertices would also keep their label next
    // time; it is not counted as an iteration.
    record(reindex_step(current, w));
    for (VertexId v = 0; v < n; ++v) {
      if (unchanged_run[v] >= cfg.stall_window) result.converged.push_back(v);
    }
  }
  result.partition = Partition::canonical(current.labels());
  return result;
}

std::vector<VertexId> proper_coalition_violations(const Partition& p,
                                                  const SimilarityGraph& w) {
  if (p.size() != w.vertex_count()) {
    throw std::invalid_argument("partition and similarity graph sizes differ");
  }
  ClosenessTable table(p.cluster_count());
  std::vector<VertexId> out;
  for (VertexId x = 0; x < p.size(); ++x) {
    table.fill(x, p, w);
    ClusterId own = p.label(x);
    if (table.of(table.best(own)) > table.of(own)) out.push_back(x);
  }
  return out;
}

}  // namespace eqrank
