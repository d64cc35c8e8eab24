#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "eqrank/corpus.hpp"
#include "eqrank/types.hpp"

namespace eqrank {

// Symmetric sparse integer matrix with the diagonal omitted. Row x lists the
// y != x with a nonzero count, sorted by y.
struct SparseCounts {
  std::vector<std::size_t> offsets{0};
  std::vector<VertexId> columns;
  std::vector<std::uint32_t> values;

  std::size_t vertex_count() const { return offsets.size() - 1; }
  std::span<const VertexId> row(VertexId x) const {
    return std::span<const VertexId>(columns).subspan(offsets[x], offsets[x + 1] - offsets[x]);
  }
  std::span<const std::uint32_t> row_values(VertexId x) const {
    return std::span<const std::uint32_t>(values).subspan(offsets[x], offsets[x + 1] - offsets[x]);
  }
  // 0 when absent.
  std::uint32_t at(VertexId x, VertexId y) const;
};

// Weighted undirected graph in CSR form: zero diagonal, strictly positive
// stored weights, and every pair stored in both rows with identical value.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;
  // Rows must be sorted, symmetric, and free of self-pairs and zeros.
  SimilarityGraph(std::vector<std::size_t> offsets, std::vector<VertexId> neighbors,
                  std::vector<double> weights, double mixing = 1.0);

  // Builds from an undirected edge list; duplicate pairs are summed.
  struct WeightedPair {
    VertexId x;
    VertexId y;
    double w;
  };
  static SimilarityGraph from_pairs(std::size_t vertex_count,
                                    std::span<const WeightedPair> pairs);

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  // Number of undirected pairs.
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  double mixing() const { return mixing_; }

  std::span<const VertexId> neighbors(VertexId x) const {
    return std::span<const VertexId>(neighbors_).subspan(offsets_[x], degree(x));
  }
  std::span<const double> weights(VertexId x) const {
    return std::span<const double>(weights_).subspan(offsets_[x], degree(x));
  }
  std::size_t degree(VertexId x) const { return offsets_[x + 1] - offsets_[x]; }
  // 0 when absent.
  double weight(VertexId x, VertexId y) const;
  // Sum of incident weights.
  double strength(VertexId x) const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> neighbors_;
  std::vector<double> weights_;
  double mixing_ = 1.0;
};

// Off-diagonal of A^T A: number of papers citing both x and y.
SparseCounts cocitation(const Snapshot& snap);
// Off-diagonal of A A^T: number of references shared by x and y.
SparseCounts bibcoupling(const Snapshot& snap);

// w(x,y) = a*c(x,y) + (1-a)*b(x,y); pairs with zero weight are not stored.
// Throws std::invalid_argument unless 0 <= a <= 1 and both inputs share a
// vertex set.
SimilarityGraph combine(const SparseCounts& c, const SparseCounts& b, double a);

inline constexpr double kDefaultMixing = 0.9;

inline SimilarityGraph similarity_graph(const Snapshot& snap, double a = kDefaultMixing) {
  return combine(cocitation(snap), bibcoupling(snap), a);
}

// Undirected unit-weight version of the citation graph itself.
SimilarityGraph symmetrized_citations(const Snapshot& snap);

// `x<TAB>y<TAB>w` with x < y by paper id, 12 significant digits.
void write_weighted_edges(std::ostream& out, const SimilarityGraph& w,
                          const CorpusStore& store);

}  // namespace eqrank
