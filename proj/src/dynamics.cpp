#include "eqrank/dynamics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace eqrank {

Partition induce(const Partition& later, std::span<const VertexId> vertices) {
  std::vector<ClusterId> raw;
  raw.reserve(vertices.size());
  VertexId prev = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    VertexId v = vertices[i];
    if (v >= later.size()) {
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " is outside the later partition");
    }
    if (i > 0 && v <= prev) throw std::invalid_argument("induce expects sorted unique vertices");
    prev = v;
    raw.push_back(later.label(v));
  }
  return Partition::canonical(raw);
}

Partition induce_prefix(const Partition& later, std::size_t n) {
  if (n > later.size()) throw std::invalid_argument("prefix longer than the later partition");
  return Partition::canonical(later.labels().subspan(0, n));
}

namespace {

// Sparse intersection counts over old vertices, keyed (P1 id, P2 id).
std::map<std::pair<ClusterId, ClusterId>, std::size_t> intersections(const Partition& earlier,
                                                                     const Partition& later) {
  std::map<std::pair<ClusterId, ClusterId>, std::size_t> counts;
  for (VertexId v = 0; v < earlier.size(); ++v) {
    ++counts[{earlier.label(v), later.label(v)}];
  }
  return counts;
}

// Larger overlap, then larger target, then smaller id.
bool better(std::size_t overlap, std::size_t size, ClusterId id, std::size_t best_overlap,
            std::size_t best_size, ClusterId best_id) {
  if (overlap != best_overlap) return overlap > best_overlap;
  if (size != best_size) return size > best_size;
  return id < best_id;
}

}  // namespace

ThemeMaps build_maps(const Partition& earlier, const Partition& later) {
  if (later.size() < earlier.size()) {
    throw std::invalid_argument("later partition does not cover the earlier vertex set");
  }
  const std::size_t k1 = earlier.cluster_count();
  const std::size_t k2 = later.cluster_count();
  auto earlier_sizes = earlier.cluster_sizes();

  ThemeMaps maps;
  maps.later_old_sizes.assign(k2, 0);
  for (VertexId v = 0; v < earlier.size(); ++v) ++maps.later_old_sizes[later.label(v)];

  maps.forward.assign(k1, kNoCluster);
  maps.forward_overlap.assign(k1, 0);
  maps.backward.assign(k2, std::nullopt);
  maps.backward_overlap.assign(k2, 0);

  for (const auto& [key, overlap] : intersections(earlier, later)) {
    auto [c1, c2] = key;
    if (maps.forward[c1] == kNoCluster ||
        better(overlap, maps.later_old_sizes[c2], c2, maps.forward_overlap[c1],
               maps.later_old_sizes[maps.forward[c1]], maps.forward[c1])) {
      maps.forward[c1] = c2;
      maps.forward_overlap[c1] = overlap;
    }
    auto& back = maps.backward[c2];
    if (!back || better(overlap, earlier_sizes[c1], c1, maps.backward_overlap[c2],
                        earlier_sizes[*back], *back)) {
      back = c1;
      maps.backward_overlap[c2] = overlap;
    }
  }
  return maps;
}

DynamicsReport classify_themes(const ThemeMaps& maps, const Partition& earlier,
                               const Partition& later) {
  if (earlier.cluster_count() == 0) {
    throw std::invalid_argument("earlier partition has no themes");
  }
  const std::size_t k1 = earlier.cluster_count();
  const std::size_t k2 = later.cluster_count();
  if (maps.forward.size() != k1 || maps.backward.size() != k2) {
    throw std::invalid_argument("theme maps do not match the partitions");
  }
  DynamicsReport r;
  r.old_vertex_count = earlier.size();
  r.earlier_cluster_count = k1;
  r.later_cluster_count = k2;
  r.is_stable.assign(k1, false);
  r.is_new.assign(k2, true);
  r.broke_from.assign(k2, std::nullopt);
  r.absorbed_by.assign(k1, std::nullopt);

  for (ClusterId c1 = 0; c1 < k1; ++c1) {
    ClusterId image = maps.forward[c1];
    if (maps.backward[image] == c1) {
      r.is_stable[c1] = true;
      r.stable.push_back(c1);
      r.is_new[image] = false;
    } else {
      r.absorbed.push_back(c1);
      r.absorbed_by[c1] = image;
    }
  }
  for (ClusterId c2 = 0; c2 < k2; ++c2) {
    if (!r.is_new[c2]) continue;
    r.fresh.push_back(c2);
    const auto& parent = maps.backward[c2];
    if (parent && r.is_stable[*parent]) r.broke_from[c2] = parent;
  }

  auto sizes = earlier.cluster_sizes();
  std::size_t stable_papers = 0;
  for (ClusterId c1 : r.stable) stable_papers += sizes[c1];
  r.csc1 = static_cast<double>(r.stable.size()) / static_cast<double>(k1);
  r.csc2 = earlier.size() == 0
               ? 0.0
               : static_cast<double>(stable_papers) / static_cast<double>(earlier.size());
  return r;
}

StabilityCoefficients csc(const DynamicsReport& report) {
  if (report.earlier_cluster_count == 0) {
    throw std::invalid_argument("earlier partition has no themes");
  }
  return {report.csc1, report.csc2};
}

bool violates_indexing(VertexId x, const Partition& earlier, const Partition& later,
                       const ThemeMaps& maps, const DynamicsReport& report) {
  ClusterId t1 = earlier.label(x);
  ClusterId t2 = later.label(x);
  if (report.is_stable[t1]) {
    bool stays = t2 == maps.forward[t1];
    bool chipped = report.is_new[t2] && report.broke_from[t2] == t1;
    if (!stays && !chipped) return true;
  }
  if (report.is_new[t2]) {
    const auto& parent = maps.backward[t2];
    if (!parent || t1 != *parent || !report.is_stable[*parent]) return true;
  }
  if (!report.is_stable[t1] && t2 != *report.absorbed_by[t1]) return true;
  return false;
}

namespace {

template <typename Eligible>
TmcResult tmc_over(const Partition& earlier, const Partition& later, const ThemeMaps& maps,
                   const DynamicsReport& report, Eligible eligible) {
  if (later.size() < earlier.size()) {
    throw std::invalid_argument("later partition does not cover the earlier vertex set");
  }
  TmcResult out;
  for (VertexId x = 0; x < earlier.size(); ++x) {
    if (!eligible(x)) continue;
    ++out.eligible;
    if (violates_indexing(x, earlier, later, maps, report)) out.violators.push_back(x);
  }
  if (out.eligible == 0) throw NoEligiblePapersError("no old paper is eligible for TMC");
  out.value = static_cast<double>(out.violators.size()) / static_cast<double>(out.eligible);
  return out;
}

}  // namespace

TmcResult tmc(const Partition& earlier, const Partition& later, const ThemeMaps& maps,
              const DynamicsReport& report) {
  return tmc_over(earlier, later, maps, report, [](VertexId) { return true; });
}

TmcResult tmc(const Partition& earlier, const Partition& later, const ThemeMaps& maps,
              const DynamicsReport& report, std::span<const std::uint32_t> later_citations,
              std::uint32_t cut) {
  if (later_citations.size() < earlier.size()) {
    throw std::invalid_argument("citation indices do not cover the old papers");
  }
  try {
    return tmc_over(earlier, later, maps, report,
                    [&](VertexId x) { return later_citations[x] > cut; });
  } catch (const NoEligiblePapersError&) {
    throw NoEligiblePapersError("no old paper has citation index above " +
                                std::to_string(cut));
  }
}

PairDynamics analyze_pair(const Partition& earlier, const Partition& later) {
  PairDynamics out;
  out.maps = build_maps(earlier, later);
  out.report = classify_themes(out.maps, earlier, later);
  return out;
}

std::vector<Lineage> lineage(std::span<const Partition> series,
                             std::span<const PairDynamics> pairs) {
  if (series.size() < 2) throw std::invalid_argument("lineage needs at least two snapshots");
  if (pairs.size() + 1 != series.size()) {
    throw std::invalid_argument("lineage needs one pair report per consecutive snapshot pair");
  }
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    if (series[k].size() > series[k + 1].size()) {
      throw std::invalid_argument("snapshot vertex sets are not nested");
    }
    const auto& r = pairs[k].report;
    if (r.earlier_cluster_count != series[k].cluster_count() ||
        r.later_cluster_count != series[k + 1].cluster_count() ||
        r.old_vertex_count != series[k].size()) {
      throw std::invalid_argument("pair report does not match the series");
    }
  }
  const std::size_t last = series.size() - 1;
  std::vector<Lineage> out;
  out.reserve(series[last].cluster_count());
  for (ClusterId theme = 0; theme < series[last].cluster_count(); ++theme) {
    Lineage l;
    l.theme = theme;
    l.chain.assign(series.size(), kNoCluster);
    l.chain[last] = theme;
    ClusterId cur = theme;
    std::size_t k = last;
    l.birth = 0;
    while (k > 0) {
      const PairDynamics& pd = pairs[k - 1];
      if (pd.report.is_new[cur]) {
        l.birth = k;
        break;
      }
      // Not new, so it is Map1 of a stable theme, which Map2 recovers.
      cur = *pd.maps.backward[cur];
      --k;
      l.chain[k] = cur;
      l.first_stable = k;
      l.stable_confirmed = k + 1;
    }
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<Lineage> lineage(std::span<const Partition> series) {
  std::vector<PairDynamics> pairs;
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    pairs.push_back(analyze_pair(series[k], series[k + 1]));
  }
  return lineage(series, pairs);
}

}  // namespace eqrank
