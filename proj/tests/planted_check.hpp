// Scores a pipeline run over a planted series against its ground truth.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "eqrank/pipeline.hpp"
#include "eqrank/planted.hpp"

namespace eqrank::testing {

struct PlantedOutcome {
  bool ok = true;
  std::string reason;  // first failed expectation

  void fail(std::string why) {
    if (ok) reason = std::move(why);
    ok = false;
  }
};

struct PlantedRun {
  CorpusStore store;
  std::vector<SnapshotResult> snapshots;
  std::vector<PairResult> pairs;
};

inline PlantedRun run_planted(const PlantedSeries& series, const PipelineConfig& cfg = {}) {
  PlantedRun run{series.store(), {}, {}};
  for (YearMonth cutoff : series.spec.snapshots) {
    run.snapshots.push_back(cluster_snapshot(run.store, cutoff, cfg));
  }
  for (std::size_t k = 0; k + 1 < run.snapshots.size(); ++k) {
    run.pairs.push_back(compare_snapshots(run.snapshots[k], run.snapshots[k + 1], {}));
  }
  return run;
}

// Every planted event must show up as exactly the reported new theme (with
// the parent's cluster as broke_from) or absorbed theme (with the
// absorber's cluster as absorbed_by), and nothing else is new or absorbed.
inline PlantedOutcome score_planted(const PlantedSeries& series, const PlantedRun& run) {
  PlantedOutcome out;
  const auto& spec = series.spec;
  auto match = [&](std::size_t s, std::size_t community) {
    return matching_cluster(run.snapshots[s].partition(), series.truth_by_vertex(run.store, s),
                            static_cast<int>(community));
  };
  for (std::size_t k = 0; k < run.pairs.size(); ++k) {
    const auto& rep = run.pairs[k].dynamics.report;
    std::vector<ClusterId> want_new, want_absorbed;
    for (const auto& e : series.events) {
      if (e.snapshot != k + 1) continue;
      const std::string& name = spec.communities[e.community].name;
      if (e.kind == PlantedEvent::Kind::kChipOff) {
        auto child = match(k + 1, e.community);
        auto parent = match(k, e.related);
        if (!child || !parent) {
          out.fail("chip-off " + name + " has no matching cluster");
          continue;
        }
        want_new.push_back(*child);
        if (!rep.is_new[*child]) out.fail("chip-off " + name + " not reported as new");
        else if (rep.broke_from[*child] != *parent) out.fail("chip-off " + name + " wrong parent");
      } else {
        auto gone = match(k, e.community);
        auto absorber = match(k + 1, e.related);
        if (!gone || !absorber) {
          out.fail("absorption of " + name + " has no matching cluster");
          continue;
        }
        want_absorbed.push_back(*gone);
        if (rep.is_stable[*gone]) out.fail("absorbed " + name + " reported stable");
        else if (rep.absorbed_by[*gone] != *absorber) out.fail("absorbed " + name + " wrong absorber");
      }
    }
    std::sort(want_new.begin(), want_new.end());
    std::sort(want_absorbed.begin(), want_absorbed.end());
    if (rep.fresh != want_new) out.fail("unexpected new themes in pair " + std::to_string(k));
    if (rep.absorbed != want_absorbed) {
      out.fail("unexpected absorbed themes in pair " + std::to_string(k));
    }
  }
  return out;
}

}  // namespace eqrank::testing
