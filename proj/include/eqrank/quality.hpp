#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "eqrank/corpus.hpp"
#include "eqrank/dynamics.hpp"
#include "eqrank/partition.hpp"
#include "eqrank/weights.hpp"

namespace eqrank {

struct ModularityScore {
  double q = 0.0;
  std::vector<double> within;  // e_ii
  std::vector<double> ends;    // a_i
};

// Newman-Girvan modularity Q = sum_i (e_ii - a_i^2) over the weighted graph.
// Throws std::invalid_argument when the graph carries no weight.
ModularityScore modularity(const SimilarityGraph& w, const Partition& p);

struct AuthorityPaper {
  VertexId paper;
  std::size_t citations;
};

// Top-k members by citation index in the snapshot; ties by paper id.
std::vector<AuthorityPaper> authority_papers(std::span<const VertexId> theme,
                                             const Snapshot& snap, const CorpusStore& store,
                                             std::size_t k);

struct KeywordPair {
  std::string phrase;
  std::size_t count;
};

class Stopwords {
 public:
  // Small built-in English list.
  static Stopwords english();
  // One word per line; '#' comments and blank lines skipped.
  static Stopwords read(std::istream& in);

  bool contains(const std::string& word) const { return words_.count(word) > 0; }

 private:
  std::set<std::string> words_;
};

// Lowercased words; characters other than letters, digits and inner hyphens
// split words.
std::vector<std::string> title_words(const std::string& title);

// Frequency-ranked adjacent word pairs over member titles, dropping pairs
// that contain a stopword; ties broken lexicographically. Throws
// std::invalid_argument when no member has a title.
std::vector<KeywordPair> theme_keywords(std::span<const VertexId> theme,
                                        const CorpusStore& store, std::size_t k,
                                        const Stopwords& stopwords = Stopwords::english());

struct ThemeSummary {
  ClusterId cluster = 0;
  std::size_t size = 0;
  std::vector<AuthorityPaper> authorities;
  std::vector<KeywordPair> keywords;  // empty when no member is titled
  std::optional<Lineage> lineage;
};

// One summary per cluster, largest first (ties by cluster id).
std::vector<ThemeSummary> summarize_themes(const Partition& p, const Snapshot& snap,
                                           const CorpusStore& store,
                                           const std::vector<Lineage>* lineages,
                                           std::size_t authority_count,
                                           std::size_t keyword_count,
                                           const Stopwords& stopwords = Stopwords::english());

}  // namespace eqrank
