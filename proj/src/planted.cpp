#include "eqrank/planted.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace eqrank {

namespace {

[[noreturn]] void infeasible(const std::string& what) {
  throw std::invalid_argument("infeasible planted spec: " + what);
}

}  // namespace

std::size_t PlantedSpec::community_index(const std::string& name) const {
  for (std::size_t i = 0; i < communities.size(); ++i) {
    if (communities[i].name == name) return i;
  }
  infeasible("unknown community '" + name + "'");
}

void PlantedSpec::validate() const {
  const std::size_t s = snapshots.size();
  if (s == 0) infeasible("no snapshots");
  for (std::size_t k = 1; k < s; ++k) {
    if (!(snapshots[k - 1] < snapshots[k])) infeasible("snapshots must be strictly increasing");
  }
  if (!(p_intra >= 0.0 && p_intra <= 1.0) || !(p_inter >= 0.0 && p_inter <= 1.0)) {
    infeasible("probabilities must lie in [0, 1]");
  }
  if (!(p_intra > p_inter)) infeasible("p_intra must exceed p_inter");
  if (communities.empty()) infeasible("no communities");

  // Snapshot from which each community stops existing on its own.
  auto end_of = [&](const PlantedCommunity& c) { return c.absorbed_at.value_or(s); };
  auto start_of = [&](const PlantedCommunity& c) { return c.born.value_or(0); };

  for (std::size_t i = 0; i < communities.size(); ++i) {
    const auto& c = communities[i];
    if (c.name.empty()) infeasible("community without a name");
    for (std::size_t j = 0; j < i; ++j) {
      if (communities[j].name == c.name) infeasible("duplicate community '" + c.name + "'");
    }
    if (c.sizes.size() != s) infeasible("'" + c.name + "' needs one size per snapshot");
    std::size_t total = c.seeds;
    for (std::size_t k = 0; k < s; ++k) {
      bool alive = k >= start_of(c) && k < end_of(c);
      if (!alive && c.sizes[k] != 0) {
        infeasible("'" + c.name + "' gains papers while it does not exist");
      }
      total += c.sizes[k];
    }
    if (total == 0) infeasible("'" + c.name + "' never has papers");
    if (c.born) {
      if (*c.born == 0 || *c.born >= s) infeasible("'" + c.name + "' born outside the series");
      if (c.parent.empty()) infeasible("'" + c.name + "' is born without a parent");
      const auto& parent = communities[community_index(c.parent)];
      if (&parent == &c) infeasible("'" + c.name + "' is its own parent");
      if (*c.born <= start_of(parent) || *c.born >= end_of(parent)) {
        infeasible("parent of '" + c.name + "' is not alive when it chips off");
      }
      std::size_t before = 0;
      for (std::size_t k = 0; k < *c.born; ++k) before += parent.sizes[k];
      if (c.seeds >= before) infeasible("parent of '" + c.name + "' has too few papers to seed it");
    } else if (c.seeds != 0) {
      infeasible("'" + c.name + "' has seeds but is not born from a parent");
    }
    if (c.absorbed_at) {
      if (*c.absorbed_at == 0 || *c.absorbed_at >= s) {
        infeasible("'" + c.name + "' absorbed outside the series");
      }
      if (*c.absorbed_at <= start_of(c)) infeasible("'" + c.name + "' absorbed before it exists");
      if (c.absorber.empty()) infeasible("'" + c.name + "' absorbed without an absorber");
      const auto& absorber = communities[community_index(c.absorber)];
      if (&absorber == &c) infeasible("'" + c.name + "' absorbs itself");
      if (*c.absorbed_at <= start_of(absorber) || *c.absorbed_at >= end_of(absorber)) {
        infeasible("absorber of '" + c.name + "' is not alive at the absorption");
      }
    }
  }
  // A theme cannot lose seeds and be absorbed at the same moment, nor be
  // absorbed while receiving an absorption or spawning a chip-off.
  for (const auto& c : communities) {
    if (c.born) {
      const auto& parent = communities[community_index(c.parent)];
      if (parent.absorbed_at && *parent.absorbed_at <= *c.born) {
        infeasible("'" + c.parent + "' is absorbed while '" + c.name + "' chips off");
      }
    }
    if (c.absorbed_at) {
      const auto& absorber = communities[community_index(c.absorber)];
      if (absorber.absorbed_at && *absorber.absorbed_at <= *c.absorbed_at) {
        infeasible("absorber '" + c.absorber + "' is itself absorbed");
      }
    }
  }
}

PlantedSpec PlantedSpec::from_json(const nlohmann::json& j) {
  PlantedSpec spec;
  try {
    for (const auto& t : j.at("snapshots")) {
      auto ym = YearMonth::parse(t.get<std::string>());
      if (!ym) infeasible("bad snapshot date " + t.dump());
      spec.snapshots.push_back(*ym);
    }
    spec.p_intra = j.value("p_intra", spec.p_intra);
    spec.p_inter = j.value("p_inter", spec.p_inter);
    for (const auto& c : j.at("communities")) {
      PlantedCommunity pc;
      pc.name = c.at("name").get<std::string>();
      pc.sizes = c.at("sizes").get<std::vector<std::size_t>>();
      if (c.contains("born")) pc.born = c.at("born").get<std::size_t>();
      pc.parent = c.value("parent", "");
      pc.seeds = c.value("seeds", std::size_t{0});
      if (c.contains("absorbed_at")) pc.absorbed_at = c.at("absorbed_at").get<std::size_t>();
      pc.absorber = c.value("absorber", "");
      spec.communities.push_back(std::move(pc));
    }
  } catch (const nlohmann::json::exception& e) {
    infeasible(e.what());
  }
  return spec;
}

nlohmann::ordered_json PlantedSpec::to_json() const {
  nlohmann::ordered_json j;
  auto& snaps = j["snapshots"] = nlohmann::ordered_json::array();
  for (auto s : snapshots) snaps.push_back(s.to_string());
  j["p_intra"] = p_intra;
  j["p_inter"] = p_inter;
  auto& cs = j["communities"] = nlohmann::ordered_json::array();
  for (const auto& c : communities) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["sizes"] = c.sizes;
    if (c.born) {
      cj["born"] = *c.born;
      cj["parent"] = c.parent;
      cj["seeds"] = c.seeds;
    }
    if (c.absorbed_at) {
      cj["absorbed_at"] = *c.absorbed_at;
      cj["absorber"] = c.absorber;
    }
    cs.push_back(std::move(cj));
  }
  return j;
}

PlantedSpec PlantedSpec::chip_off_and_absorption() {
  PlantedSpec spec;
  spec.snapshots = {YearMonth{1993, 12}, YearMonth{1995, 12}};
  spec.p_intra = 0.25;
  spec.p_inter = 0.005;
  spec.communities = {
      {"P", {120, 60}, std::nullopt, "", 0, std::nullopt, ""},
      {"A", {120, 80}, std::nullopt, "", 0, std::nullopt, ""},
      {"C", {100, 50}, std::nullopt, "", 0, std::nullopt, ""},
      {"B", {90, 0}, std::nullopt, "", 0, 1, "A"},
      {"N", {0, 80}, 1, "P", 6, std::nullopt, ""},
  };
  return spec;
}

PlantedSeries generate_planted_series(const PlantedSpec& spec, std::uint64_t seed) {
  spec.validate();
  const std::size_t snaps = spec.snapshots.size();
  const std::size_t ncomm = spec.communities.size();
  std::mt19937_64 rng(seed);

  PlantedSeries out;
  out.spec = spec;
  for (std::size_t i = 0; i < ncomm; ++i) {
    const auto& c = spec.communities[i];
    if (c.born) {
      out.events.push_back({PlantedEvent::Kind::kChipOff, *c.born, i,
                            spec.community_index(c.parent)});
    }
    if (c.absorbed_at) {
      out.events.push_back({PlantedEvent::Kind::kAbsorption, *c.absorbed_at, i,
                            spec.community_index(c.absorber)});
    }
  }

  std::vector<int> label;  // current theme of every generated paper
  std::vector<YearMonth> dates;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> citations;

  // Samples each index of [0, n) independently with probability p.
  auto bernoulli_positions = [&rng](std::size_t n, double p, auto&& take) {
    if (p <= 0.0 || n == 0) return;
    if (p >= 1.0) {
      for (std::size_t i = 0; i < n; ++i) take(i);
      return;
    }
    std::geometric_distribution<std::size_t> gap(p);
    for (std::size_t i = gap(rng); i < n; i += 1 + gap(rng)) take(i);
  };

  for (std::size_t k = 0; k < snaps; ++k) {
    // Events take effect at the start of the interval ending at snapshot k.
    for (std::size_t i = 0; i < ncomm; ++i) {
      const auto& c = spec.communities[i];
      if (c.born == k) {
        int parent = static_cast<int>(spec.community_index(c.parent));
        std::size_t moved = 0;
        for (std::size_t p = label.size(); p-- > 0 && moved < c.seeds;) {
          if (label[p] == parent) {
            label[p] = static_cast<int>(i);
            ++moved;
          }
        }
      }
      if (c.absorbed_at == k) {
        int absorber = static_cast<int>(spec.community_index(c.absorber));
        for (int& l : label) {
          if (l == static_cast<int>(i)) l = absorber;
        }
      }
    }

    std::vector<int> arrivals;
    for (std::size_t i = 0; i < ncomm; ++i) {
      arrivals.insert(arrivals.end(), spec.communities[i].sizes[k], static_cast<int>(i));
    }
    std::shuffle(arrivals.begin(), arrivals.end(), rng);

    const int last = spec.snapshots[k].ordinal();
    const int first = k == 0 ? last - 11 : spec.snapshots[k - 1].ordinal() + 1;
    const int months = last - first + 1;

    std::vector<std::vector<std::uint32_t>> members(ncomm);
    for (std::uint32_t p = 0; p < label.size(); ++p) members[label[p]].push_back(p);

    for (std::size_t a = 0; a < arrivals.size(); ++a) {
      const int c = arrivals[a];
      const auto self = static_cast<std::uint32_t>(label.size());
      const std::size_t earlier = label.size();
      bernoulli_positions(members[c].size(), spec.p_intra,
                          [&](std::size_t i) { citations.emplace_back(self, members[c][i]); });
      bernoulli_positions(earlier, spec.p_inter, [&](std::size_t i) {
        if (label[i] != c) citations.emplace_back(self, static_cast<std::uint32_t>(i));
      });
      int month = first + static_cast<int>(a * static_cast<std::size_t>(months) / arrivals.size());
      label.push_back(c);
      dates.push_back(YearMonth::from_ordinal(month));
      members[c].push_back(self);
    }
    out.truth.push_back(label);
  }
  for (auto& t : out.truth) t.resize(label.size(), -1);

  char buf[32];
  out.paper_ids.reserve(label.size());
  std::ostringstream papers;
  papers << "# planted series, seed " << seed << '\n';
  for (std::size_t p = 0; p < label.size(); ++p) {
    std::snprintf(buf, sizeof buf, "p%07zu", p);
    out.paper_ids.emplace_back(buf);
    papers << buf << '\t' << dates[p].to_string() << "\ttheme-"
           << spec.communities[out.truth.back()[p]].name << " planted paper\n";
  }
  std::ostringstream edges;
  edges << "# planted series, seed " << seed << '\n';
  for (const auto& [from, to] : citations) {
    edges << out.paper_ids[from] << '\t' << out.paper_ids[to] << '\n';
  }
  out.papers_tsv = papers.str();
  out.edges_tsv = edges.str();
  return out;
}

CorpusStore PlantedSeries::store() const {
  std::istringstream edges(edges_tsv);
  std::istringstream papers(papers_tsv);
  return CorpusStore::ingest(edges, papers, "planted-edges", "planted-papers");
}

std::vector<int> PlantedSeries::truth_by_vertex(const CorpusStore& store, std::size_t s) const {
  std::vector<int> out(store.count_through(spec.snapshots.at(s)), -1);
  for (std::size_t p = 0; p < paper_ids.size(); ++p) {
    auto v = store.index_of(paper_ids[p]);
    if (v && *v < out.size()) out[*v] = truth.at(s)[p];
  }
  return out;
}

std::optional<ClusterId> matching_cluster(const Partition& p, const std::vector<int>& truth,
                                          int community) {
  std::map<ClusterId, std::size_t> overlap;
  std::size_t community_size = 0;
  for (VertexId v = 0; v < p.size(); ++v) {
    if (truth[v] != community) continue;
    ++community_size;
    ++overlap[p.label(v)];
  }
  auto sizes = p.cluster_sizes();
  for (const auto& [c, n] : overlap) {
    if (2 * n > community_size && 2 * n > sizes[c]) return c;
  }
  return std::nullopt;
}

}  // namespace eqrank
