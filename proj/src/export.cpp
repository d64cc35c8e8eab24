#include "eqrank/export.hpp"

#include <charconv>
#include <cstdio>

namespace eqrank {

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_partition_tsv(std::ostream& out, const Partition& p, const CorpusStore& store) {
  for (VertexId v = 0; v < p.size(); ++v) {
    out << store.paper(v).id << '\t' << p.label(v) << '\n';
  }
}

Partition read_partition_tsv(std::istream& in, const CorpusStore& store,
                             const std::string& name) {
  std::vector<ClusterId> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(name, line_no, "expected 'paper_id<TAB>cluster_id'");
    auto v = store.index_of(line.substr(0, tab));
    if (!v) throw ParseError(name, line_no, "unknown paper '" + line.substr(0, tab) + "'");
    ClusterId c = 0;
    auto text = std::string_view(line).substr(tab + 1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), c);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ParseError(name, line_no, "bad cluster id");
    }
    if (*v >= labels.size()) labels.resize(static_cast<std::size_t>(*v) + 1, kNoCluster);
    if (labels[*v] != kNoCluster) throw ParseError(name, line_no, "paper listed twice");
    labels[*v] = c;
  }
  for (ClusterId c : labels) {
    if (c == kNoCluster) throw ParseError(name, 0, "partition does not cover a vertex prefix");
  }
  try {
    return Partition::canonical(labels);
  } catch (const std::invalid_argument& e) {
    throw ParseError(name, 0, e.what());
  }
}

namespace {

Json optional_real(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json partition_summary(const SnapshotResult& r) {
  Json j;
  j["cutoff"] = r.snapshot.cutoff().to_string();
  j["vertices"] = r.snapshot.vertex_count();
  j["links"] = r.snapshot.edge_count();
  j["similarity_pairs"] = r.similarity_pairs;
  j["base_cluster_count"] = r.base.cluster_count();
  j["cluster_count"] = r.partition().cluster_count();
  j["cluster_sizes"] = r.partition().cluster_sizes();
  Json re;
  re["iterations"] = r.refined.iterations;
  re["fixed_point"] = r.refined.fixed_point;
  re["converged_vertices"] = r.refined.converged.size();
  re["converged_fraction"] = r.refined.converged_fraction();
  re["target_iteration"] =
      r.refined.target_iteration ? Json(*r.refined.target_iteration) : Json(nullptr);
  j["reindex"] = re;
  j["modularity"] = {{"weighted", optional_real(r.modularity_weighted)},
                     {"unweighted_citations", optional_real(r.modularity_unweighted)}};
  return j;
}

void write_trace_csv(std::ostream& out, const ReindexResult& r) {
  out << "iteration,reassigned_count,reassigned_fraction\n";
  const double n = static_cast<double>(r.partition.size());
  for (std::size_t i = 0; i < r.reassigned.size(); ++i) {
    double f = n == 0 ? 0.0 : static_cast<double>(r.reassigned[i]) / n;
    out << (i + 1) << ',' << r.reassigned[i] << ',' << format_real(f) << '\n';
  }
}

Json pair_report(const SnapshotResult& earlier, const SnapshotResult& later,
                 const PairResult& pair, const CorpusStore& store) {
  const auto& maps = pair.dynamics.maps;
  const auto& rep = pair.dynamics.report;
  auto s1 = earlier.partition().cluster_sizes();
  auto s2 = later.partition().cluster_sizes();

  Json j;
  j["earlier"] = earlier.snapshot.cutoff().to_string();
  j["later"] = later.snapshot.cutoff().to_string();
  j["old_papers"] = rep.old_vertex_count;
  j["earlier_themes"] = rep.earlier_cluster_count;
  j["later_themes"] = rep.later_cluster_count;

  Json stable = Json::array();
  for (ClusterId c : rep.stable) {
    stable.push_back({{"id", c}, {"size", s1[c]}, {"continues_as", maps.forward[c]}});
  }
  Json fresh = Json::array();
  for (ClusterId c : rep.fresh) {
    fresh.push_back({{"id", c},
                     {"size", s2[c]},
                     {"old_papers", maps.later_old_sizes[c]},
                     {"broke_from", rep.broke_from[c] ? Json(*rep.broke_from[c]) : Json(nullptr)}});
  }
  Json absorbed = Json::array();
  for (ClusterId c : rep.absorbed) {
    absorbed.push_back({{"id", c}, {"size", s1[c]}, {"absorbed_by", *rep.absorbed_by[c]}});
  }
  j["stable_themes"] = std::move(stable);
  j["new_themes"] = std::move(fresh);
  j["absorbed_themes"] = std::move(absorbed);

  Json map1 = Json::array();
  for (ClusterId c = 0; c < maps.forward.size(); ++c) {
    map1.push_back({{"from", c}, {"to", maps.forward[c]}, {"overlap", maps.forward_overlap[c]}});
  }
  Json map2 = Json::array();
  for (ClusterId c = 0; c < maps.backward.size(); ++c) {
    map2.push_back({{"from", c},
                    {"to", maps.backward[c] ? Json(*maps.backward[c]) : Json(nullptr)},
                    {"overlap", maps.backward_overlap[c]}});
  }
  j["map1"] = std::move(map1);
  j["map2"] = std::move(map2);

  Json coef;
  coef["CSC1"] = rep.csc1;
  coef["CSC2"] = rep.csc2;
  coef["TMC"] = pair.tmc.value;
  Json cuts = Json::object();
  Json eligible = Json::object();
  for (const auto& [cut, res] : pair.tmc_cut) {
    cuts[std::to_string(cut)] = res ? Json(res->value) : Json(nullptr);
    eligible[std::to_string(cut)] = res ? res->eligible : 0;
  }
  coef["TMC_cut"] = std::move(cuts);
  j["coefficients"] = std::move(coef);
  j["tmc_eligible"] = {{"all", pair.tmc.eligible}, {"cut", std::move(eligible)}};
  j["citation_index_measured_at"] = later.snapshot.cutoff().to_string();

  Json violators = Json::array();
  for (VertexId v : pair.tmc.violators) violators.push_back(store.paper(v).id);
  j["violators"] = std::move(violators);
  return j;
}

void write_series_csv(std::ostream& out, std::span<const SnapshotResult> snapshots,
                      std::span<const PairResult> pairs, const std::vector<std::uint32_t>& cuts) {
  out << "pair,CSC1,CSC2,TMC";
  for (auto cut : cuts) out << ",TMC_cut_" << cut;
  out << '\n';
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& rep = pairs[k].dynamics.report;
    out << snapshots[k].snapshot.cutoff().to_string() << '/'
        << snapshots[k + 1].snapshot.cutoff().to_string() << ',' << format_real(rep.csc1) << ','
        << format_real(rep.csc2) << ',' << format_real(pairs[k].tmc.value);
    for (auto cut : cuts) {
      out << ',';
      auto it = pairs[k].tmc_cut.find(cut);
      if (it != pairs[k].tmc_cut.end() && it->second) out << format_real(it->second->value);
    }
    out << '\n';
  }
}

Json theme_summaries_json(std::span<const ThemeSummary> themes, const CorpusStore& store,
                          std::span<const SnapshotResult> series) {
  auto label = [&](std::optional<std::size_t> k) -> Json {
    if (!k || *k >= series.size()) return nullptr;
    return series[*k].snapshot.cutoff().to_string();
  };
  Json arr = Json::array();
  for (const auto& t : themes) {
    Json j;
    j["cluster_id"] = t.cluster;
    j["size"] = t.size;
    Json kw = Json::array();
    for (const auto& k : t.keywords) kw.push_back({{"pair", k.phrase}, {"count", k.count}});
    j["keywords"] = std::move(kw);
    Json auth = Json::array();
    for (const auto& a : t.authorities) {
      const auto& rec = store.paper(a.paper);
      auth.push_back({{"id", rec.id}, {"title", rec.title}, {"citations", a.citations}});
    }
    j["authority_papers"] = std::move(auth);
    if (t.lineage) {
      j["years"] = {{"appeared_as_new", label(t.lineage->birth)},
                    {"first_stable", label(t.lineage->first_stable)},
                    {"stable_confirmed", label(t.lineage->stable_confirmed)}};
    } else {
      j["years"] = nullptr;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace eqrank
