#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eqrank/partition.hpp"
#include "eqrank/types.hpp"
#include "eqrank/weights.hpp"

namespace eqrank {

// Out-degree <= 1 digraph keeping, for each vertex, only its link of maximal
// weight. Vertices with no positive-weight neighbor have no out-edge.
struct MaximalGraph {
  std::vector<VertexId> target;  // kNoVertex when isolated

  std::size_t vertex_count() const { return target.size(); }
  bool has_edge(VertexId v) const { return target[v] != kNoVertex; }
};

// Strongly connected components of a MaximalGraph contracted to an acyclic
// factor graph. Components are numbered in reverse topological order, so a
// factor edge always points from a larger to a smaller component id.
struct Condensation {
  std::vector<std::size_t> component;        // vertex -> component
  std::vector<std::size_t> successor;        // component -> component, or kNone
  std::vector<std::vector<VertexId>> members;  // sorted ascending

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t component_count() const { return successor.size(); }
  bool is_final(std::size_t c) const { return successor[c] == kNone; }
};

// Ties for the maximum go to the smallest neighbor index.
MaximalGraph maximal_subgraph(const SimilarityGraph& w);

Condensation condense(const MaximalGraph& m);

// One cluster per final vertex: everything that reaches it. Clusters are
// numbered by smallest member. Throws std::logic_error if some component
// does not reach exactly one final vertex.
Partition base_partition(const Condensation& c);

// maximal_subgraph -> condense -> base_partition.
Partition eqrank_partition(const SimilarityGraph& w);

// Weak components of the maximal graph, computed by union-find. Used to
// cross-check the SCC route.
Partition cluster_oracle(const SimilarityGraph& w);

}  // namespace eqrank
