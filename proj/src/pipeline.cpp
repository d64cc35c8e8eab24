#include "eqrank/pipeline.hpp"

#include "eqrank/eqrank_core.hpp"

namespace eqrank {

namespace {

std::optional<double> modularity_or_none(const SimilarityGraph& g, const Partition& p) {
  if (g.edge_count() == 0) return std::nullopt;
  return modularity(g, p).q;
}

}  // namespace

SnapshotResult cluster_snapshot(const CorpusStore& store, YearMonth cutoff,
                                const PipelineConfig& cfg) {
  SnapshotResult out;
  out.snapshot = snapshot(store, cutoff);
  SimilarityGraph w = similarity_graph(out.snapshot, cfg.mixing);
  out.similarity_pairs = w.edge_count();
  out.base = eqrank_partition(w);
  if (cfg.reindex) {
    out.refined = reindex_to_limit(out.base, w, cfg.reindex_config);
  } else {
    out.refined.partition = out.base;
    out.refined.converged.resize(out.base.size());
    for (VertexId v = 0; v < out.base.size(); ++v) out.refined.converged[v] = v;
    out.refined.fixed_point = true;
  }
  out.modularity_weighted = modularity_or_none(w, out.partition());
  out.modularity_unweighted =
      modularity_or_none(symmetrized_citations(out.snapshot), out.partition());
  if (cfg.keep_weights) out.weights = std::move(w);
  return out;
}

PairResult compare_snapshots(const SnapshotResult& earlier, const SnapshotResult& later,
                             const std::vector<std::uint32_t>& cuts) {
  PairResult out;
  const Partition& p1 = earlier.partition();
  const Partition& p2 = later.partition();
  out.dynamics = analyze_pair(p1, p2);
  out.tmc = tmc(p1, p2, out.dynamics.maps, out.dynamics.report);
  auto citations = citation_indices(later.snapshot);
  for (auto cut : cuts) {
    try {
      out.tmc_cut[cut] = tmc(p1, p2, out.dynamics.maps, out.dynamics.report, citations, cut);
    } catch (const NoEligiblePapersError&) {
      out.tmc_cut[cut] = std::nullopt;
    }
  }
  return out;
}

}  // namespace eqrank
