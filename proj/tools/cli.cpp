// eqrank command-line front end.
//
//   eqrank ingest    --edges E --papers P [--out DIR]
//   eqrank cluster   (--edges E --papers P | --store S) --cutoffs C1,C2 --out DIR
//   eqrank evolve    ... --cutoffs C1,C2[,...] [--tmc-cuts 0,40] --out DIR
//   eqrank summarize ... --cutoffs C1[,...] --out DIR
//   eqrank synth     [--spec FILE] --seed N --out DIR
//
// Exit codes: 0 ok, 1 bad input or arguments, 2 empty snapshot, 3 a TMC cut
// with no eligible paper.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqrank/corpus.hpp"
#include "eqrank/dynamics.hpp"
#include "eqrank/export.hpp"
#include "eqrank/pipeline.hpp"
#include "eqrank/planted.hpp"
#include "eqrank/quality.hpp"
#include "eqrank/weights.hpp"

namespace fs = std::filesystem;
using namespace eqrank;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string edges;
  std::string papers;
  std::string store;
  std::string out = ".";
  std::string cutoffs;
  double a = kDefaultMixing;
  std::string tmc_cuts = "0,40";
  std::size_t max_iter = 50;
  std::size_t stall_window = 1;
  bool no_reindex = false;
  bool export_weights = false;
  std::size_t authorities = 3;
  std::size_t keywords = 4;
  std::string stopwords;
  std::uint64_t seed = 1;
  std::string spec;
  std::string ingest_out;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<YearMonth> parse_cutoffs(const std::string& text) {
  std::vector<YearMonth> out;
  for (const auto& item : split_list(text)) {
    auto ym = YearMonth::parse(item);
    if (!ym) throw UsageError("bad cutoff '" + item + "', expected YYYY-MM");
    if (!out.empty() && !(out.back() < *ym)) {
      throw UsageError("cutoffs must be strictly increasing");
    }
    out.push_back(*ym);
  }
  if (out.empty()) throw UsageError("at least one cutoff is required (--cutoffs)");
  return out;
}

std::vector<std::uint32_t> parse_cuts(const std::string& text) {
  std::vector<std::uint32_t> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad TMC cut '" + item + "'");
    }
  }
  return out;
}

CorpusStore load_corpus(const Options& o) {
  if (!o.store.empty()) {
    std::ifstream in(o.store);
    if (!in) throw ParseError(o.store, 0, "cannot open file");
    return CorpusStore::load(in, o.store);
  }
  if (o.edges.empty() || o.papers.empty()) {
    throw UsageError("either --store or both --edges and --papers are required");
  }
  return CorpusStore::ingest_files(o.edges, o.papers);
}

PipelineConfig pipeline_config(const Options& o) {
  PipelineConfig cfg;
  if (!(o.a >= 0.0 && o.a <= 1.0)) throw UsageError("--a must lie in [0, 1]");
  cfg.mixing = o.a;
  cfg.reindex = !o.no_reindex;
  cfg.reindex_config.max_iterations = o.max_iter;
  cfg.reindex_config.stall_window = o.stall_window;
  try {
    cfg.reindex_config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const Json& j) { open_out(path) << j.dump(2) << '\n'; }

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

std::vector<SnapshotResult> cluster_all(const Options& o, const CorpusStore& store,
                                        const std::vector<YearMonth>& cutoffs,
                                        const fs::path& out) {
  PipelineConfig cfg = pipeline_config(o);
  cfg.keep_weights = o.export_weights;
  std::vector<SnapshotResult> results;
  for (auto cutoff : cutoffs) {
    SnapshotResult r = cluster_snapshot(store, cutoff, cfg);
    const std::string tag = cutoff.to_string();
    {
      auto f = open_out(out / ("partition_" + tag + ".tsv"));
      write_partition_tsv(f, r.partition(), store);
    }
    write_json(out / ("partition_" + tag + ".json"), partition_summary(r));
    {
      auto f = open_out(out / ("reindex_trace_" + tag + ".csv"));
      write_trace_csv(f, r.refined);
    }
    if (r.weights) {
      auto f = open_out(out / ("weights_" + tag + ".tsv"));
      write_weighted_edges(f, *r.weights, store);
      r.weights.reset();
    }
    std::cerr << "cluster " << tag << ": " << r.snapshot.vertex_count() << " papers, "
              << r.partition().cluster_count() << " themes\n";
    results.push_back(std::move(r));
  }
  return results;
}

Stopwords load_stopwords(const Options& o) {
  if (o.stopwords.empty()) return Stopwords::english();
  std::ifstream in(o.stopwords);
  if (!in) throw ParseError(o.stopwords, 0, "cannot open file");
  return Stopwords::read(in);
}

void write_theme_summary(const Options& o, const CorpusStore& store,
                         const std::vector<SnapshotResult>& results,
                         const std::vector<PairResult>* pairs, const fs::path& out) {
  std::vector<Lineage> lines;
  if (pairs && !pairs->empty()) {
    std::vector<Partition> series;
    std::vector<PairDynamics> dyn;
    for (const auto& r : results) series.push_back(r.partition());
    for (const auto& p : *pairs) dyn.push_back(p.dynamics);
    lines = lineage(series, dyn);
  }
  const auto& last = results.back();
  auto themes = summarize_themes(last.partition(), last.snapshot, store,
                                 lines.empty() ? nullptr : &lines, o.authorities, o.keywords,
                                 load_stopwords(o));
  write_json(out / "themes.json", theme_summaries_json(themes, store, results));
}

int cmd_ingest(const Options& o) {
  if (o.edges.empty() || o.papers.empty()) throw UsageError("--edges and --papers are required");
  CorpusStore store = CorpusStore::ingest_files(o.edges, o.papers);
  const auto& s = store.stats();
  Json j;
  j["papers"] = store.paper_count();
  j["dated_papers"] = store.dated_paper_count();
  j["edges"] = store.edges().size();
  j["edge_lines"] = s.edge_lines;
  j["self_citations_dropped"] = s.self_citations_dropped;
  j["duplicate_edges_collapsed"] = s.duplicate_edges_collapsed;
  j["unknown_paper_edges_dropped"] = s.unknown_paper_edges_dropped;
  j["undated_endpoint_edges"] = s.undated_endpoint_edges;
  j["min_date"] = store.min_date() ? Json(store.min_date()->to_string()) : Json(nullptr);
  j["max_date"] = store.max_date() ? Json(store.max_date()->to_string()) : Json(nullptr);
  std::cout << j.dump(2) << '\n';
  if (!o.ingest_out.empty()) {
    fs::path out = prepare_out(o.ingest_out);
    auto f = open_out(out / "corpus.store.json");
    store.save(f);
  }
  return 0;
}

int cmd_cluster(const Options& o) {
  auto cutoffs = parse_cutoffs(o.cutoffs);
  CorpusStore store = load_corpus(o);
  fs::path out = prepare_out(o.out);
  cluster_all(o, store, cutoffs, out);
  return 0;
}

int cmd_summarize(const Options& o) {
  auto cutoffs = parse_cutoffs(o.cutoffs);
  CorpusStore store = load_corpus(o);
  fs::path out = prepare_out(o.out);
  auto results = cluster_all(o, store, cutoffs, out);
  std::vector<PairResult> pairs;
  for (std::size_t k = 0; k + 1 < results.size(); ++k) {
    pairs.push_back(compare_snapshots(results[k], results[k + 1], {}));
  }
  write_theme_summary(o, store, results, &pairs, out);
  return 0;
}

int cmd_evolve(const Options& o) {
  auto cutoffs = parse_cutoffs(o.cutoffs);
  if (cutoffs.size() < 2) throw UsageError("evolve needs at least two cutoffs");
  auto cuts = parse_cuts(o.tmc_cuts);
  CorpusStore store = load_corpus(o);
  fs::path out = prepare_out(o.out);
  auto results = cluster_all(o, store, cutoffs, out);

  std::vector<PairResult> pairs;
  bool missing_cut = false;
  for (std::size_t k = 0; k + 1 < results.size(); ++k) {
    PairResult pr;
    try {
      pr = compare_snapshots(results[k], results[k + 1], cuts);
    } catch (const NoEligiblePapersError& e) {
      throw UsageError(e.what());
    }
    for (const auto& [cut, res] : pr.tmc_cut) {
      if (!res) {
        missing_cut = true;
        std::cerr << "pair " << cutoffs[k].to_string() << "/" << cutoffs[k + 1].to_string()
                  << ": no old paper has citation index above " << cut << "\n";
      }
    }
    write_json(out / ("dynamics_" + cutoffs[k].to_string() + "_" +
                      cutoffs[k + 1].to_string() + ".json"),
               pair_report(results[k], results[k + 1], pr, store));
    pairs.push_back(std::move(pr));
  }

  {
    auto f = open_out(out / "series.csv");
    write_series_csv(f, results, pairs, cuts);
  }
  {
    auto f = open_out(out / "theme_counts.csv");
    f << "cutoff,base_themes,themes\n";
    for (const auto& r : results) {
      f << r.snapshot.cutoff().to_string() << ',' << r.base.cluster_count() << ','
        << r.partition().cluster_count() << '\n';
    }
  }
  {
    auto f = open_out(out / "modularity.csv");
    f << "cutoff,modularity_weighted,modularity_unweighted\n";
    for (const auto& r : results) {
      f << r.snapshot.cutoff().to_string() << ','
        << (r.modularity_weighted ? format_real(*r.modularity_weighted) : "") << ','
        << (r.modularity_unweighted ? format_real(*r.modularity_unweighted) : "") << '\n';
    }
  }
  {
    auto f = open_out(out / "growth.csv");
    f << "cutoff,nodes,links\n";
    for (const auto& r : results) {
      f << r.snapshot.cutoff().to_string() << ',' << r.snapshot.vertex_count() << ','
        << r.snapshot.edge_count() << '\n';
    }
  }
  {
    auto f = open_out(out / "tmc_growth.csv");
    f << "pair,node_growth,TMC";
    for (auto cut : cuts) f << ",TMC_cut_" << cut;
    f << '\n';
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      double n1 = static_cast<double>(results[k].snapshot.vertex_count());
      double n2 = static_cast<double>(results[k + 1].snapshot.vertex_count());
      f << cutoffs[k].to_string() << '/' << cutoffs[k + 1].to_string() << ','
        << format_real((n2 - n1) / n1) << ',' << format_real(pairs[k].tmc.value);
      for (auto cut : cuts) {
        f << ',';
        const auto& res = pairs[k].tmc_cut.at(cut);
        if (res) f << format_real(res->value);
      }
      f << '\n';
    }
  }
  write_theme_summary(o, store, results, &pairs, out);
  return missing_cut ? 3 : 0;
}

int cmd_synth(const Options& o) {
  PlantedSpec spec = PlantedSpec::chip_off_and_absorption();
  if (!o.spec.empty()) {
    std::ifstream in(o.spec);
    if (!in) throw ParseError(o.spec, 0, "cannot open file");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(o.spec, 0, e.what());
    }
    spec = PlantedSpec::from_json(j);
  }
  PlantedSeries series = generate_planted_series(spec, o.seed);
  fs::path out = prepare_out(o.out);
  open_out(out / "edges.tsv") << series.edges_tsv;
  open_out(out / "papers.tsv") << series.papers_tsv;
  {
    auto f = open_out(out / "truth.tsv");
    f << "paper_id";
    for (auto s : spec.snapshots) f << '\t' << s.to_string();
    f << '\n';
    for (std::size_t p = 0; p < series.paper_ids.size(); ++p) {
      f << series.paper_ids[p];
      for (const auto& t : series.truth) {
        f << '\t' << (t[p] < 0 ? std::string("-") : spec.communities[t[p]].name);
      }
      f << '\n';
    }
  }
  Json j;
  j["seed"] = o.seed;
  j["spec"] = spec.to_json();
  Json events = Json::array();
  for (const auto& e : series.events) {
    events.push_back({{"kind", e.kind == PlantedEvent::Kind::kChipOff ? "chip_off" : "absorption"},
                      {"snapshot", spec.snapshots[e.snapshot].to_string()},
                      {"theme", spec.communities[e.community].name},
                      {e.kind == PlantedEvent::Kind::kChipOff ? "parent" : "absorber",
                       spec.communities[e.related].name}});
  }
  j["events"] = std::move(events);
  write_json(out / "truth.json", j);
  return 0;
}

void add_corpus_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--edges", o.edges, "Citation edge list (citing<TAB>cited)");
  cmd->add_option("--papers", o.papers, "Paper list (id<TAB>YYYY-MM<TAB>title)");
  cmd->add_option("--store", o.store, "Corpus store written by 'ingest'");
  cmd->add_option("--cutoffs", o.cutoffs, "Snapshot cutoffs, e.g. 1993-12,1995-12");
  cmd->add_option("--a", o.a, "Co-citation share of the similarity weight")->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "Reindexing iteration limit")->capture_default_str();
  cmd->add_option("--stall-window", o.stall_window,
                  "Unchanged iterations required for per-vertex convergence")
      ->capture_default_str();
  cmd->add_flag("--no-reindex", o.no_reindex, "Report the plain EqRank partition");
  cmd->add_flag("--export-weights", o.export_weights, "Also write the weighted similarity graph");
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EqRank clustering and theme dynamics for citation graphs"};
  app.require_subcommand(1);
  Options o;

  auto* ingest = app.add_subcommand("ingest", "Parse and validate a corpus");
  ingest->add_option("--edges", o.edges, "Citation edge list")->required();
  ingest->add_option("--papers", o.papers, "Paper list")->required();
  ingest->add_option("--out", o.ingest_out, "Directory for corpus.store.json");

  auto* cluster = app.add_subcommand("cluster", "Partition each snapshot");
  add_corpus_options(cluster, o);

  auto* evolve = app.add_subcommand("evolve", "Compare consecutive snapshot partitions");
  add_corpus_options(evolve, o);
  evolve->add_option("--tmc-cuts", o.tmc_cuts, "Citation-index cuts for TMC(cut)")
      ->capture_default_str();
  evolve->add_option("--authorities", o.authorities, "Authority papers per theme");
  evolve->add_option("--keywords", o.keywords, "Keyword pairs per theme");
  evolve->add_option("--stopwords", o.stopwords, "Stopword file replacing the built-in list");

  auto* summarize = app.add_subcommand("summarize", "Theme summaries for the last cutoff");
  add_corpus_options(summarize, o);
  summarize->add_option("--authorities", o.authorities, "Authority papers per theme");
  summarize->add_option("--keywords", o.keywords, "Keyword pairs per theme");
  summarize->add_option("--stopwords", o.stopwords, "Stopword file replacing the built-in list");

  auto* synth = app.add_subcommand("synth", "Generate a planted evolving corpus");
  synth->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  synth->add_option("--spec", o.spec, "Planted-series JSON description");
  synth->add_option("--out", o.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*ingest) return cmd_ingest(o);
    if (*cluster) return cmd_cluster(o);
    if (*evolve) return cmd_evolve(o);
    if (*summarize) return cmd_summarize(o);
    if (*synth) return cmd_synth(o);
  } catch (const EmptySnapshotError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
