#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eqrank/partition.hpp"
#include "eqrank/types.hpp"

namespace eqrank {

// Comparisons between an earlier partition P1 over [0, n1) and a later
// partition P2 over [0, n2), n1 <= n2. The old vertices are the shared
// prefix [0, n1); every intersection below is counted over it.

// Restriction of `later` to `vertices` (sorted, unique, all < later.size()).
// Vertex i of the result is vertices[i]; ids are canonical.
Partition induce(const Partition& later, std::span<const VertexId> vertices);
// Restriction to the prefix [0, n).
Partition induce_prefix(const Partition& later, std::size_t n);

struct ThemeMaps {
  // Map1: P1 cluster -> P2 cluster with maximal intersection.
  std::vector<ClusterId> forward;
  std::vector<std::size_t> forward_overlap;
  // Map2: P2 cluster -> P1 cluster; nullopt for clusters with no old vertex.
  std::vector<std::optional<ClusterId>> backward;
  std::vector<std::size_t> backward_overlap;
  // Old-vertex count of every P2 cluster.
  std::vector<std::size_t> later_old_sizes;
};

// Ties on intersection size go to the larger target (counted over old
// vertices), then to the smaller id. Throws std::invalid_argument when P2
// does not cover P1's vertex set.
ThemeMaps build_maps(const Partition& earlier, const Partition& later);

struct DynamicsReport {
  std::size_t old_vertex_count = 0;
  std::size_t earlier_cluster_count = 0;
  std::size_t later_cluster_count = 0;

  std::vector<ClusterId> stable;    // ST1, ascending P1 ids
  std::vector<ClusterId> absorbed;  // AT1, ascending P1 ids
  std::vector<ClusterId> fresh;     // NT, ascending P2 ids

  std::vector<bool> is_stable;  // by P1 id
  std::vector<bool> is_new;     // by P2 id
  // P2 id -> stable parent, only for new themes that broke away.
  std::vector<std::optional<ClusterId>> broke_from;
  // P1 id -> absorbing P2 cluster, only for absorbed themes.
  std::vector<std::optional<ClusterId>> absorbed_by;

  double csc1 = 0.0;
  double csc2 = 0.0;
};

// Throws std::invalid_argument when P1 is empty.
DynamicsReport classify_themes(const ThemeMaps& maps, const Partition& earlier,
                               const Partition& later);

struct StabilityCoefficients {
  double csc1;
  double csc2;
};
StabilityCoefficients csc(const DynamicsReport& report);

struct TmcResult {
  double value = 0.0;
  std::size_t eligible = 0;
  std::vector<VertexId> violators;  // sorted
};

// Fraction of eligible old papers breaking an indexing-consistency rule.
// With a cut, only old papers whose citation index in the later snapshot
// exceeds it are eligible; `later_citations` must cover the old vertices.
// Throws NoEligiblePapersError when nothing is eligible.
TmcResult tmc(const Partition& earlier, const Partition& later, const ThemeMaps& maps,
              const DynamicsReport& report);
TmcResult tmc(const Partition& earlier, const Partition& later, const ThemeMaps& maps,
              const DynamicsReport& report, std::span<const std::uint32_t> later_citations,
              std::uint32_t cut);

// Whether old paper x obeys the indexing-consistency rules.
bool violates_indexing(VertexId x, const Partition& earlier, const Partition& later,
                       const ThemeMaps& maps, const DynamicsReport& report);

struct PairDynamics {
  ThemeMaps maps;
  DynamicsReport report;
};
PairDynamics analyze_pair(const Partition& earlier, const Partition& later);

// Backward trace of one theme of the last partition of a series.
struct Lineage {
  ClusterId theme = 0;
  // chain[k] is the theme's id in partition k, for the snapshots the trace
  // covers; kNoCluster before the birth snapshot.
  std::vector<ClusterId> chain;
  // Snapshot where the theme appeared as new, or 0 when the trace reaches
  // the first snapshot.
  std::size_t birth = 0;
  // Earliest snapshot k where the chained theme is in ST of pair (k, k+1).
  std::optional<std::size_t> first_stable;
  // Later snapshot of that pair, the first year the theme shows up as the
  // continuation of a stable theme.
  std::optional<std::size_t> stable_confirmed;
};

// `series` in time order with nested prefix vertex sets; `pairs[k]` compares
// series[k] with series[k+1]. Throws std::invalid_argument on a malformed
// series.
std::vector<Lineage> lineage(std::span<const Partition> series,
                             std::span<const PairDynamics> pairs);
std::vector<Lineage> lineage(std::span<const Partition> series);

}  // namespace eqrank
