#include "eqrank/quality.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace eqrank {

ModularityScore modularity(const SimilarityGraph& w, const Partition& p) {
  if (p.size() != w.vertex_count()) {
    throw std::invalid_argument("partition and similarity graph sizes differ");
  }
  const std::size_t k = p.cluster_count();
  ModularityScore out;
  out.within.assign(k, 0.0);
  out.ends.assign(k, 0.0);
  double twice_total = 0.0;
  for (VertexId x = 0; x < w.vertex_count(); ++x) {
    auto nb = w.neighbors(x);
    auto ws = w.weights(x);
    ClusterId cx = p.label(x);
    for (std::size_t j = 0; j < nb.size(); ++j) {
      twice_total += ws[j];
      out.ends[cx] += ws[j];
      if (p.label(nb[j]) == cx) out.within[cx] += ws[j];
    }
  }
  if (!(twice_total > 0.0)) throw std::invalid_argument("modularity of a weightless graph");
  // Every undirected edge was visited from both ends.
  for (std::size_t c = 0; c < k; ++c) {
    out.within[c] /= twice_total;
    out.ends[c] /= twice_total;
    out.q += out.within[c] - out.ends[c] * out.ends[c];
  }
  return out;
}

std::vector<AuthorityPaper> authority_papers(std::span<const VertexId> theme,
                                             const Snapshot& snap, const CorpusStore& store,
                                             std::size_t k) {
  std::vector<AuthorityPaper> ranked;
  ranked.reserve(theme.size());
  for (VertexId v : theme) ranked.push_back({v, citation_index(snap, v)});
  auto order = [&](const AuthorityPaper& a, const AuthorityPaper& b) {
    if (a.citations != b.citations) return a.citations > b.citations;
    return store.paper(a.paper).id < store.paper(b.paper).id;
  };
  k = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                    ranked.end(), order);
  ranked.resize(k);
  return ranked;
}

Stopwords Stopwords::english() {
  Stopwords s;
  for (const char* w :
       {"a",    "an",   "and",  "are",   "as",    "at",    "be",   "by",   "for",  "from",
        "has",  "have", "how",  "in",    "into",  "is",    "it",   "its",
        "not",  "of",   "on",   "or",    "some",  "than",  "that", "the",  "their", "there",
        "these", "this", "to",  "toward", "towards", "via", "was",  "what", "when", "which",
        "with", "within", "without"}) {
    s.words_.insert(w);
  }
  return s;
}

Stopwords Stopwords::read(std::istream& in) {
  Stopwords s;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    for (auto& ch : line) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    s.words_.insert(line);
  }
  return s;
}

std::vector<std::string> title_words(const std::string& title) {
  std::vector<std::string> words;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && cur.back() == '-') cur.pop_back();
    if (!cur.empty()) words.push_back(cur);
    cur.clear();
  };
  for (char raw : title) {
    auto ch = static_cast<unsigned char>(raw);
    if (std::isalnum(ch) || ch >= 0x80) {
      cur.push_back(static_cast<char>(std::tolower(ch)));
    } else if (raw == '-' && !cur.empty()) {
      cur.push_back('-');
    } else {
      flush();
    }
  }
  flush();
  return words;
}

std::vector<KeywordPair> theme_keywords(std::span<const VertexId> theme,
                                        const CorpusStore& store, std::size_t k,
                                        const Stopwords& stopwords) {
  std::map<std::string, std::size_t> counts;
  bool titled = false;
  for (VertexId v : theme) {
    const std::string& title = store.paper(v).title;
    if (title.empty()) continue;
    titled = true;
    auto words = title_words(title);
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
      if (stopwords.contains(words[i]) || stopwords.contains(words[i + 1])) continue;
      ++counts[words[i] + " " + words[i + 1]];
    }
  }
  if (!titled) throw std::invalid_argument("no member of the theme has a title");
  std::vector<KeywordPair> ranked;
  ranked.reserve(counts.size());
  for (auto& [phrase, count] : counts) ranked.push_back({phrase, count});
  // std::map iteration is already lexicographic; stable sort keeps it for ties.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const KeywordPair& a, const KeywordPair& b) { return a.count > b.count; });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

std::vector<ThemeSummary> summarize_themes(const Partition& p, const Snapshot& snap,
                                           const CorpusStore& store,
                                           const std::vector<Lineage>* lineages,
                                           std::size_t authority_count,
                                           std::size_t keyword_count,
                                           const Stopwords& stopwords) {
  if (lineages && lineages->size() != p.cluster_count()) {
    throw std::invalid_argument("one lineage per cluster expected");
  }
  auto clusters = p.clusters();
  std::vector<ThemeSummary> out;
  out.reserve(clusters.size());
  for (ClusterId c = 0; c < clusters.size(); ++c) {
    ThemeSummary s;
    s.cluster = c;
    s.size = clusters[c].size();
    s.authorities = authority_papers(clusters[c], snap, store, authority_count);
    bool titled = std::any_of(clusters[c].begin(), clusters[c].end(),
                              [&](VertexId v) { return !store.paper(v).title.empty(); });
    if (titled) s.keywords = theme_keywords(clusters[c], store, keyword_count, stopwords);
    if (lineages) s.lineage = (*lineages)[c];
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ThemeSummary& a, const ThemeSummary& b) { return a.size > b.size; });
  return out;
}

}  // namespace eqrank
