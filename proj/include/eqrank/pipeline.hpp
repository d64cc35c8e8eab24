#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "eqrank/corpus.hpp"
#include "eqrank/dynamics.hpp"
#include "eqrank/partition.hpp"
#include "eqrank/quality.hpp"
#include "eqrank/reindex.hpp"
#include "eqrank/weights.hpp"

namespace eqrank {

struct PipelineConfig {
  double mixing = kDefaultMixing;
  bool reindex = true;
  ReindexConfig reindex_config;
  bool keep_weights = false;
};

// Everything computed for one cutoff.
struct SnapshotResult {
  Snapshot snapshot;
  std::size_t similarity_pairs = 0;
  Partition base;          // plain EqRank
  ReindexResult refined;   // reindexing run started from `base`
  // Modularity of the reported partition over W and over the symmetrized
  // citation graph. nullopt when the graph has no links.
  std::optional<double> modularity_weighted;
  std::optional<double> modularity_unweighted;
  std::optional<SimilarityGraph> weights;  // only with keep_weights

  // The partition handed to downstream analysis.
  const Partition& partition() const { return refined.partition; }
};

// corpus -> weights -> EqRank -> reindexing for one cutoff. With reindexing
// disabled the base partition is reported unchanged.
SnapshotResult cluster_snapshot(const CorpusStore& store, YearMonth cutoff,
                                const PipelineConfig& cfg = {});

struct PairResult {
  PairDynamics dynamics;
  TmcResult tmc;  // without a cut
  // Per requested cut; nullopt when no paper exceeds it.
  std::map<std::uint32_t, std::optional<TmcResult>> tmc_cut;
};

PairResult compare_snapshots(const SnapshotResult& earlier, const SnapshotResult& later,
                             const std::vector<std::uint32_t>& cuts);

}  // namespace eqrank
