#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eqrank/types.hpp"

namespace eqrank {

struct PaperRecord {
  std::string id;
  std::optional<YearMonth> date;
  std::string title;
};

struct CitationEdge {
  VertexId citing = 0;
  VertexId cited = 0;

  auto operator<=>(const CitationEdge&) const = default;
};

struct IngestStats {
  std::size_t edge_lines = 0;
  std::size_t self_citations_dropped = 0;
  std::size_t duplicate_edges_collapsed = 0;
  // Edges naming an id that never appears in the papers file.
  std::size_t unknown_paper_edges_dropped = 0;
  // Edges kept in the store whose endpoint has no date; such edges never
  // enter a snapshot.
  std::size_t undated_endpoint_edges = 0;
  std::size_t undated_papers = 0;
};

// Immutable, deduplicated citation corpus.
//
// Papers are indexed by sorting on (date, id) with undated papers last, so the
// vertex set of every snapshot is a prefix [0, n) of the index space. This is
// what makes partitions of different snapshots comparable by index.
class CorpusStore {
 public:
  static constexpr int kFormatVersion = 1;

  // Reads both streams in the tab-separated formats documented in README.md.
  // `edges_name` and `papers_name` only label error messages.
  static CorpusStore ingest(std::istream& edges, std::istream& papers,
                            const std::string& edges_name = "edges",
                            const std::string& papers_name = "papers");
  static CorpusStore ingest_files(const std::string& edges_path,
                                  const std::string& papers_path);

  // Versioned cache format. load() rejects unknown versions.
  void save(std::ostream& out) const;
  static CorpusStore load(std::istream& in, const std::string& name = "store");

  std::size_t paper_count() const { return papers_.size(); }
  std::size_t dated_paper_count() const { return dated_count_; }
  const PaperRecord& paper(VertexId v) const { return papers_.at(v); }
  std::span<const PaperRecord> papers() const { return papers_; }
  std::optional<VertexId> index_of(const std::string& id) const;

  // Sorted by (citing, cited).
  std::span<const CitationEdge> edges() const { return edges_; }
  const IngestStats& stats() const { return stats_; }

  std::optional<YearMonth> min_date() const;
  std::optional<YearMonth> max_date() const;

  // Number of papers dated on or before `cutoff`.
  std::size_t count_through(YearMonth cutoff) const;

 private:
  CorpusStore(std::vector<PaperRecord> papers, std::vector<CitationEdge> edges,
              IngestStats stats);

  std::vector<PaperRecord> papers_;
  std::vector<CitationEdge> edges_;
  std::unordered_map<std::string, VertexId> index_;
  std::size_t dated_count_ = 0;
  IngestStats stats_;
};

// Directed citation graph G(t) restricted to papers dated <= cutoff.
// Vertex v of a snapshot is vertex v of its corpus.
class Snapshot {
 public:
  Snapshot() = default;
  Snapshot(YearMonth cutoff, std::size_t vertex_count,
           std::span<const CitationEdge> edges);

  YearMonth cutoff() const { return cutoff_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return out_targets_.size(); }

  // Papers cited by v (sorted).
  std::span<const VertexId> references(VertexId v) const;
  // Papers citing v (sorted).
  std::span<const VertexId> citations(VertexId v) const;

  std::size_t in_degree(VertexId v) const {
    return in_offsets_[v + 1] - in_offsets_[v];
  }
  std::size_t out_degree(VertexId v) const {
    return out_offsets_[v + 1] - out_offsets_[v];
  }

  bool operator==(const Snapshot&) const = default;

 private:
  YearMonth cutoff_;
  std::size_t vertex_count_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<VertexId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<VertexId> in_sources_;
};

// Throws EmptySnapshotError when no paper is dated on or before the cutoff.
Snapshot snapshot(const CorpusStore& store, YearMonth cutoff);

// In-degree within the snapshot. Throws std::out_of_range for unknown papers.
std::size_t citation_index(const Snapshot& snap, VertexId paper);
std::size_t citation_index(const Snapshot& snap, const CorpusStore& store,
                           const std::string& paper_id);

// Citation index of every snapshot vertex.
std::vector<std::uint32_t> citation_indices(const Snapshot& snap);

}  // namespace eqrank
