#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqrank/corpus.hpp"
#include "eqrank/partition.hpp"
#include "eqrank/types.hpp"

namespace eqrank {

// One planted theme. sizes[k] is the number of papers it gains in the
// interval ending at snapshot k.
struct PlantedCommunity {
  std::string name;
  std::vector<std::size_t> sizes;
  // Chip-off: the theme appears at snapshot `born`, taking the `seeds` most
  // recent papers of `parent` with it.
  std::optional<std::size_t> born;
  std::string parent;
  std::size_t seeds = 0;
  // Absorption: from snapshot `absorbed_at` on, its papers belong to
  // `absorber` and it gains no papers of its own.
  std::optional<std::size_t> absorbed_at;
  std::string absorber;
};

struct PlantedSpec {
  std::vector<YearMonth> snapshots;
  double p_intra = 0.25;
  double p_inter = 0.005;
  std::vector<PlantedCommunity> communities;

  // Throws std::invalid_argument describing the first infeasibility.
  void validate() const;
  std::size_t community_index(const std::string& name) const;

  static PlantedSpec from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;

  // Two snapshots with one chip-off and one absorption at the second.
  static PlantedSpec chip_off_and_absorption();
};

struct PlantedEvent {
  enum class Kind { kChipOff, kAbsorption };
  Kind kind;
  std::size_t snapshot;
  std::size_t community;  // the new or the absorbed theme
  std::size_t related;    // parent or absorber
};

struct PlantedSeries {
  PlantedSpec spec;
  std::string edges_tsv;
  std::string papers_tsv;
  std::vector<PlantedEvent> events;
  // truth[s][i]: community of generated paper i at snapshot s, -1 when the
  // paper does not exist yet. Generated paper i has id paper_ids[i].
  std::vector<std::string> paper_ids;
  std::vector<std::vector<int>> truth;

  CorpusStore store() const;
  // Truth of snapshot s over that snapshot's vertex prefix.
  std::vector<int> truth_by_vertex(const CorpusStore& store, std::size_t s) const;
};

// Deterministic for a given spec and seed. Each new paper cites every earlier
// paper of its current theme with probability p_intra and every other earlier
// paper with probability p_inter.
PlantedSeries generate_planted_series(const PlantedSpec& spec, std::uint64_t seed);

// Cluster of `p` holding a strict majority of community `community` and made
// up of a strict majority of it; nullopt when no cluster qualifies.
std::optional<ClusterId> matching_cluster(const Partition& p, const std::vector<int>& truth,
                                          int community);

}  // namespace eqrank
