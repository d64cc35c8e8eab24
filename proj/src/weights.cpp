#include "eqrank/weights.hpp"

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <stdexcept>
#include <string>
#include <tuple>

namespace eqrank {

std::uint32_t SparseCounts::at(VertexId x, VertexId y) const {
  auto r = row(x);
  auto it = std::lower_bound(r.begin(), r.end(), y);
  if (it == r.end() || *it != y) return 0;
  return values[offsets[x] + static_cast<std::size_t>(it - r.begin())];
}

SimilarityGraph::SimilarityGraph(std::vector<std::size_t> offsets,
                                 std::vector<VertexId> neighbors,
                                 std::vector<double> weights, double mixing)
    : offsets_(std::move(offsets)),
      neighbors_(std::move(neighbors)),
      weights_(std::move(weights)),
      mixing_(mixing) {
  if (offsets_.empty() || offsets_.back() != neighbors_.size() ||
      neighbors_.size() != weights_.size()) {
    throw std::invalid_argument("inconsistent CSR arrays");
  }
}

SimilarityGraph SimilarityGraph::from_pairs(std::size_t vertex_count,
                                            std::span<const WeightedPair> pairs) {
  std::vector<std::tuple<VertexId, VertexId, double>> entries;
  entries.reserve(pairs.size() * 2);
  for (const auto& p : pairs) {
    if (p.x >= vertex_count || p.y >= vertex_count) {
      throw std::invalid_argument("pair endpoint out of range");
    }
    if (p.x == p.y) throw std::invalid_argument("self-pair in similarity graph");
    if (!(p.w > 0.0)) throw std::invalid_argument("non-positive similarity weight");
    entries.emplace_back(p.x, p.y, p.w);
    entries.emplace_back(p.y, p.x, p.w);
  }
  std::stable_sort(entries.begin(), entries.end(), [](const auto& l, const auto& r) {
    return std::tie(std::get<0>(l), std::get<1>(l)) < std::tie(std::get<0>(r), std::get<1>(r));
  });
  std::vector<std::size_t> offsets(vertex_count + 1, 0);
  std::vector<VertexId> nbrs;
  std::vector<double> ws;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& [x, y, w] = entries[k];
    if (k > 0 && std::get<0>(entries[k - 1]) == x && std::get<1>(entries[k - 1]) == y) {
      ws.back() += w;
      continue;
    }
    nbrs.push_back(y);
    ws.push_back(w);
    ++offsets[x + 1];
  }
  for (std::size_t v = 0; v < vertex_count; ++v) offsets[v + 1] += offsets[v];
  return SimilarityGraph(std::move(offsets), std::move(nbrs), std::move(ws));
}

double SimilarityGraph::weight(VertexId x, VertexId y) const {
  auto r = neighbors(x);
  auto it = std::lower_bound(r.begin(), r.end(), y);
  if (it == r.end() || *it != y) return 0.0;
  return weights_[offsets_[x] + static_cast<std::size_t>(it - r.begin())];
}

double SimilarityGraph::strength(VertexId x) const {
  double s = 0.0;
  for (double w : weights(x)) s += w;
  return s;
}

namespace {

// Two-hop accumulation: row x counts, for each y != x, how many z satisfy
// first(x) ∋ z and second(z) ∋ y. Rows are computed independently, which
// keeps the result symmetric by construction.
template <typename First, typename Second>
SparseCounts two_hop_counts(std::size_t n, First first, Second second) {
  SparseCounts out;
  out.offsets.assign(n + 1, 0);
  std::vector<std::uint32_t> acc(n, 0);
  std::vector<VertexId> touched;
  for (VertexId x = 0; x < n; ++x) {
    touched.clear();
    for (VertexId z : first(x)) {
      for (VertexId y : second(z)) {
        if (y == x) continue;
        if (acc[y]++ == 0) touched.push_back(y);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (VertexId y : touched) {
      out.columns.push_back(y);
      out.values.push_back(acc[y]);
      acc[y] = 0;
    }
    out.offsets[x + 1] = out.columns.size();
  }
  return out;
}

}  // namespace

SparseCounts cocitation(const Snapshot& snap) {
  return two_hop_counts(
      snap.vertex_count(), [&](VertexId x) { return snap.citations(x); },
      [&](VertexId z) { return snap.references(z); });
}

SparseCounts bibcoupling(const Snapshot& snap) {
  return two_hop_counts(
      snap.vertex_count(), [&](VertexId x) { return snap.references(x); },
      [&](VertexId z) { return snap.citations(z); });
}

SimilarityGraph combine(const SparseCounts& c, const SparseCounts& b, double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument("mixing parameter a must lie in [0, 1], got " +
                                std::to_string(a));
  }
  if (c.vertex_count() != b.vertex_count()) {
    throw std::invalid_argument("co-citation and coupling counts cover different vertex sets");
  }
  const std::size_t n = c.vertex_count();
  const double ca = a;
  const double cb = 1.0 - a;
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<VertexId> nbrs;
  std::vector<double> ws;
  nbrs.reserve(std::max(c.columns.size(), b.columns.size()));
  ws.reserve(nbrs.capacity());
  auto emit = [&](VertexId y, std::uint32_t cc, std::uint32_t bb) {
    double w = ca * cc + cb * bb;
    if (w > 0.0) {
      nbrs.push_back(y);
      ws.push_back(w);
    }
  };
  for (VertexId x = 0; x < n; ++x) {
    auto cr = c.row(x);
    auto cv = c.row_values(x);
    auto br = b.row(x);
    auto bv = b.row_values(x);
    std::size_t i = 0, j = 0;
    while (i < cr.size() || j < br.size()) {
      if (j == br.size() || (i < cr.size() && cr[i] < br[j])) {
        emit(cr[i], cv[i], 0);
        ++i;
      } else if (i == cr.size() || br[j] < cr[i]) {
        emit(br[j], 0, bv[j]);
        ++j;
      } else {
        emit(cr[i], cv[i], bv[j]);
        ++i;
        ++j;
      }
    }
    offsets[x + 1] = nbrs.size();
  }
  return SimilarityGraph(std::move(offsets), std::move(nbrs), std::move(ws), a);
}

SimilarityGraph symmetrized_citations(const Snapshot& snap) {
  const std::size_t n = snap.vertex_count();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<VertexId> nbrs;
  std::vector<double> ws;
  std::vector<VertexId> row;
  for (VertexId x = 0; x < n; ++x) {
    auto out = snap.references(x);
    auto in = snap.citations(x);
    row.clear();
    std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(row));
    nbrs.insert(nbrs.end(), row.begin(), row.end());
    ws.insert(ws.end(), row.size(), 1.0);
    offsets[x + 1] = nbrs.size();
  }
  return SimilarityGraph(std::move(offsets), std::move(nbrs), std::move(ws));
}

void write_weighted_edges(std::ostream& out, const SimilarityGraph& w,
                          const CorpusStore& store) {
  std::vector<std::tuple<const std::string*, const std::string*, double>> rows;
  rows.reserve(w.edge_count());
  for (VertexId x = 0; x < w.vertex_count(); ++x) {
    auto nb = w.neighbors(x);
    auto ws = w.weights(x);
    const std::string& xid = store.paper(x).id;
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const std::string& yid = store.paper(nb[k]).id;
      if (xid < yid) rows.emplace_back(&xid, &yid, ws[k]);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& l, const auto& r) {
    if (*std::get<0>(l) != *std::get<0>(r)) return *std::get<0>(l) < *std::get<0>(r);
    return *std::get<1>(l) < *std::get<1>(r);
  });
  char buf[64];
  for (const auto& [x, y, weight] : rows) {
    std::snprintf(buf, sizeof buf, "%.12g", weight);
    out << *x << '\t' << *y << '\t' << buf << '\n';
  }
}

}  // namespace eqrank
