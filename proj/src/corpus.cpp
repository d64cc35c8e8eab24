#include "eqrank/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>

#include <json.hpp>

namespace eqrank {

std::optional<YearMonth> YearMonth::parse(std::string_view text) {
  if (text.size() != 7 || text[4] != '-') return std::nullopt;
  YearMonth ym;
  auto year_end = text.data() + 4;
  auto [p1, e1] = std::from_chars(text.data(), year_end, ym.year);
  if (e1 != std::errc{} || p1 != year_end) return std::nullopt;
  auto month_end = text.data() + 7;
  auto [p2, e2] = std::from_chars(text.data() + 5, month_end, ym.month);
  if (e2 != std::errc{} || p2 != month_end) return std::nullopt;
  if (ym.month < 1 || ym.month > 12) return std::nullopt;
  return ym;
}

std::string YearMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

YearMonth YearMonth::from_ordinal(int ordinal) {
  return YearMonth{ordinal / 12, ordinal % 12 + 1};
}

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool skippable(const std::string& line) {
  return line.empty() || line.front() == '#';
}

struct RawPaper {
  std::optional<YearMonth> date;
  std::string title;
};

std::map<std::string, RawPaper> read_papers(std::istream& in,
                                            const std::string& name) {
  std::map<std::string, RawPaper> papers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (skippable(line)) continue;
    auto tab1 = line.find('\t');
    std::string id = line.substr(0, tab1);
    if (id.empty()) throw ParseError(name, line_no, "empty paper id");
    RawPaper rec;
    if (tab1 != std::string::npos) {
      auto tab2 = line.find('\t', tab1 + 1);
      std::string date_text = line.substr(
          tab1 + 1, tab2 == std::string::npos ? std::string::npos : tab2 - tab1 - 1);
      if (!date_text.empty()) {
        rec.date = YearMonth::parse(date_text);
        if (!rec.date) {
          throw ParseError(name, line_no, "bad date '" + date_text + "', expected YYYY-MM");
        }
      }
      if (tab2 != std::string::npos) rec.title = line.substr(tab2 + 1);
    }
    auto [it, inserted] = papers.emplace(id, rec);
    if (!inserted) {
      RawPaper& prev = it->second;
      if (prev.date && rec.date && *prev.date != *rec.date) {
        throw ParseError(name, line_no, "paper '" + id + "' listed with conflicting dates");
      }
      if (!prev.date) prev.date = rec.date;
      if (prev.title.empty()) prev.title = rec.title;
    }
  }
  return papers;
}

}  // namespace

CorpusStore::CorpusStore(std::vector<PaperRecord> papers,
                         std::vector<CitationEdge> edges, IngestStats stats)
    : papers_(std::move(papers)), edges_(std::move(edges)), stats_(stats) {
  index_.reserve(papers_.size());
  for (VertexId v = 0; v < papers_.size(); ++v) {
    index_.emplace(papers_[v].id, v);
    if (papers_[v].date) ++dated_count_;
  }
}

CorpusStore CorpusStore::ingest(std::istream& edges, std::istream& papers,
                                const std::string& edges_name,
                                const std::string& papers_name) {
  auto raw = read_papers(papers, papers_name);

  std::vector<PaperRecord> records;
  records.reserve(raw.size());
  for (auto& [id, rec] : raw) {
    records.push_back(PaperRecord{id, rec.date, std::move(rec.title)});
  }
  // Dated papers first, by (date, id); then undated by id.
  std::stable_sort(records.begin(), records.end(),
                   [](const PaperRecord& a, const PaperRecord& b) {
                     if (a.date.has_value() != b.date.has_value()) return a.date.has_value();
                     if (a.date && *a.date != *b.date) return *a.date < *b.date;
                     return a.id < b.id;
                   });

  std::unordered_map<std::string, VertexId> index;
  index.reserve(records.size());
  for (VertexId v = 0; v < records.size(); ++v) index.emplace(records[v].id, v);

  IngestStats stats;
  for (const auto& r : records) {
    if (!r.date) ++stats.undated_papers;
  }

  std::vector<CitationEdge> list;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(edges, line)) {
    ++line_no;
    strip_cr(line);
    if (skippable(line)) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(edges_name, line_no, "expected 'citing<TAB>cited'");
    }
    ++stats.edge_lines;
    std::string citing = line.substr(0, tab);
    std::string cited = line.substr(tab + 1);
    if (citing == cited) {
      ++stats.self_citations_dropped;
      continue;
    }
    auto ci = index.find(citing);
    auto cd = index.find(cited);
    if (ci == index.end() || cd == index.end()) {
      ++stats.unknown_paper_edges_dropped;
      continue;
    }
    list.push_back(CitationEdge{ci->second, cd->second});
  }
  std::sort(list.begin(), list.end());
  auto last = std::unique(list.begin(), list.end());
  stats.duplicate_edges_collapsed = static_cast<std::size_t>(list.end() - last);
  list.erase(last, list.end());
  for (const auto& e : list) {
    if (!records[e.citing].date || !records[e.cited].date) ++stats.undated_endpoint_edges;
  }
  return CorpusStore(std::move(records), std::move(list), stats);
}

CorpusStore CorpusStore::ingest_files(const std::string& edges_path,
                                      const std::string& papers_path) {
  std::ifstream edges(edges_path);
  if (!edges) throw ParseError(edges_path, 0, "cannot open file");
  std::ifstream papers(papers_path);
  if (!papers) throw ParseError(papers_path, 0, "cannot open file");
  return ingest(edges, papers, edges_path, papers_path);
}

void CorpusStore::save(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["format"] = "eqrank-corpus";
  j["version"] = kFormatVersion;
  auto& papers = j["papers"] = nlohmann::ordered_json::array();
  for (const auto& p : papers_) {
    papers.push_back({p.id, p.date ? p.date->to_string() : std::string(), p.title});
  }
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : edges_) edges.push_back({e.citing, e.cited});
  const auto& s = stats_;
  j["stats"] = {{"edge_lines", s.edge_lines},
                {"self_citations_dropped", s.self_citations_dropped},
                {"duplicate_edges_collapsed", s.duplicate_edges_collapsed},
                {"unknown_paper_edges_dropped", s.unknown_paper_edges_dropped},
                {"undated_endpoint_edges", s.undated_endpoint_edges},
                {"undated_papers", s.undated_papers}};
  out << j.dump() << '\n';
}

CorpusStore CorpusStore::load(std::istream& in, const std::string& name) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(name, 0, e.what());
  }
  if (j.value("format", "") != "eqrank-corpus") {
    throw ParseError(name, 0, "not an eqrank corpus store");
  }
  if (j.value("version", -1) != kFormatVersion) {
    throw ParseError(name, 0, "unsupported store version");
  }
  try {
    std::vector<PaperRecord> papers;
    for (const auto& p : j.at("papers")) {
      PaperRecord rec{p.at(0).get<std::string>(), std::nullopt, p.at(2).get<std::string>()};
      auto date_text = p.at(1).get<std::string>();
      if (!date_text.empty()) {
        rec.date = YearMonth::parse(date_text);
        if (!rec.date) throw ParseError(name, 0, "bad date in store");
      }
      papers.push_back(std::move(rec));
    }
    std::vector<CitationEdge> edges;
    for (const auto& e : j.at("edges")) {
      CitationEdge edge{e.at(0).get<VertexId>(), e.at(1).get<VertexId>()};
      if (edge.citing >= papers.size() || edge.cited >= papers.size()) {
        throw ParseError(name, 0, "edge endpoint out of range");
      }
      edges.push_back(edge);
    }
    IngestStats stats;
    const auto& s = j.at("stats");
    stats.edge_lines = s.at("edge_lines");
    stats.self_citations_dropped = s.at("self_citations_dropped");
    stats.duplicate_edges_collapsed = s.at("duplicate_edges_collapsed");
    stats.unknown_paper_edges_dropped = s.at("unknown_paper_edges_dropped");
    stats.undated_endpoint_edges = s.at("undated_endpoint_edges");
    stats.undated_papers = s.at("undated_papers");
    return CorpusStore(std::move(papers), std::move(edges), stats);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(name, 0, e.what());
  }
}

std::optional<VertexId> CorpusStore::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<YearMonth> CorpusStore::min_date() const {
  if (dated_count_ == 0) return std::nullopt;
  return papers_.front().date;
}

std::optional<YearMonth> CorpusStore::max_date() const {
  if (dated_count_ == 0) return std::nullopt;
  return papers_[dated_count_ - 1].date;
}

std::size_t CorpusStore::count_through(YearMonth cutoff) const {
  auto end = papers_.begin() + static_cast<std::ptrdiff_t>(dated_count_);
  auto it = std::upper_bound(papers_.begin(), end, cutoff,
                             [](YearMonth c, const PaperRecord& p) { return c < *p.date; });
  return static_cast<std::size_t>(it - papers_.begin());
}

Snapshot::Snapshot(YearMonth cutoff, std::size_t vertex_count,
                   std::span<const CitationEdge> edges)
    : cutoff_(cutoff), vertex_count_(vertex_count) {
  out_offsets_.assign(vertex_count + 1, 0);
  in_offsets_.assign(vertex_count + 1, 0);
  std::size_t kept = 0;
  for (const auto& e : edges) {
    if (e.citing >= vertex_count || e.cited >= vertex_count) continue;
    ++out_offsets_[e.citing + 1];
    ++in_offsets_[e.cited + 1];
    ++kept;
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    out_offsets_[v + 1] += out_offsets_[v];
    in_offsets_[v + 1] += in_offsets_[v];
  }
  out_targets_.resize(kept);
  in_sources_.resize(kept);
  std::vector<std::size_t> out_pos(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::size_t> in_pos(in_offsets_.begin(), in_offsets_.end() - 1);
  // Edges arrive sorted by (citing, cited), so both adjacency lists end up
  // sorted without a second pass.
  for (const auto& e : edges) {
    if (e.citing >= vertex_count || e.cited >= vertex_count) continue;
    out_targets_[out_pos[e.citing]++] = e.cited;
    in_sources_[in_pos[e.cited]++] = e.citing;
  }
}

std::span<const VertexId> Snapshot::references(VertexId v) const {
  return std::span<const VertexId>(out_targets_).subspan(
      out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]);
}

std::span<const VertexId> Snapshot::citations(VertexId v) const {
  return std::span<const VertexId>(in_sources_).subspan(
      in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]);
}

Snapshot snapshot(const CorpusStore& store, YearMonth cutoff) {
  std::size_t n = store.count_through(cutoff);
  if (n == 0) {
    throw EmptySnapshotError("no papers dated on or before " + cutoff.to_string());
  }
  return Snapshot(cutoff, n, store.edges());
}

std::size_t citation_index(const Snapshot& snap, VertexId paper) {
  if (paper >= snap.vertex_count()) {
    throw std::out_of_range("paper " + std::to_string(paper) + " is not in the snapshot");
  }
  return snap.in_degree(paper);
}

std::size_t citation_index(const Snapshot& snap, const CorpusStore& store,
                           const std::string& paper_id) {
  auto v = store.index_of(paper_id);
  if (!v) throw std::out_of_range("unknown paper '" + paper_id + "'");
  return citation_index(snap, *v);
}

std::vector<std::uint32_t> citation_indices(const Snapshot& snap) {
  std::vector<std::uint32_t> out(snap.vertex_count());
  for (VertexId v = 0; v < out.size(); ++v) {
    out[v] = static_cast<std::uint32_t>(snap.in_degree(v));
  }
  return out;
}

}  // namespace eqrank
