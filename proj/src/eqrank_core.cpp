#include "eqrank/eqrank_core.hpp"

#include <numeric>
#include <algorithm>
#include <stdexcept>
#include <string>

namespace eqrank {

MaximalGraph maximal_subgraph(const SimilarityGraph& w) {
  MaximalGraph m;
  m.target.assign(w.vertex_count(), kNoVertex);
  for (VertexId x = 0; x < w.vertex_count(); ++x) {
    auto nb = w.neighbors(x);
    auto ws = w.weights(x);
    double best = 0.0;
    // Rows are sorted, so a strict comparison keeps the smallest index on ties.
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (ws[k] > best) {
        best = ws[k];
        m.target[x] = nb[k];
      }
    }
  }
  return m;
}

Condensation condense(const MaximalGraph& m) {
  // Iterative Tarjan. With out-degree <= 1 each vertex has at most one child,
  // so the DFS stack is a simple path.
  const std::size_t n = m.vertex_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> scc_stack;
  std::vector<VertexId> dfs;
  Condensation out;
  out.component.assign(n, Condensation::kNone);
  std::size_t counter = 0;

  auto visit = [&](VertexId v) {
    index[v] = low[v] = counter++;
    scc_stack.push_back(v);
    on_stack[v] = true;
    dfs.push_back(v);
  };

  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    visit(root);
    while (!dfs.empty()) {
      VertexId v = dfs.back();
      VertexId t = m.target[v];
      if (t != kNoVertex && index[t] == kUnvisited) {
        visit(t);
        continue;
      }
      if (t != kNoVertex && on_stack[t]) low[v] = std::min(low[v], index[t]);
      dfs.pop_back();
      if (!dfs.empty()) {
        VertexId parent = dfs.back();
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == index[v]) {
        std::size_t c = out.members.size();
        out.members.emplace_back();
        VertexId u;
        do {
          u = scc_stack.back();
          scc_stack.pop_back();
          on_stack[u] = false;
          out.component[u] = c;
          out.members[c].push_back(u);
        } while (u != v);
        std::sort(out.members[c].begin(), out.members[c].end());
      }
    }
  }

  out.successor.assign(out.members.size(), Condensation::kNone);
  for (VertexId v = 0; v < n; ++v) {
    VertexId t = m.target[v];
    if (t == kNoVertex) continue;
    std::size_t cv = out.component[v];
    std::size_t ct = out.component[t];
    if (cv == ct) continue;
    if (out.successor[cv] != Condensation::kNone && out.successor[cv] != ct) {
      throw std::logic_error("factor vertex with two successors");
    }
    out.successor[cv] = ct;
  }
  return out;
}

Partition base_partition(const Condensation& c) {
  const std::size_t k = c.component_count();
  std::vector<std::size_t> sink(k, Condensation::kNone);
  // Reverse topological numbering: successors are resolved first.
  for (std::size_t comp = 0; comp < k; ++comp) {
    std::size_t next = c.successor[comp];
    if (next == Condensation::kNone) {
      sink[comp] = comp;
    } else {
      if (next >= comp || sink[next] == Condensation::kNone) {
        throw std::logic_error("condensation is not in reverse topological order");
      }
      sink[comp] = sink[next];
    }
  }
  std::vector<ClusterId> raw(c.component.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    std::size_t comp = c.component[v];
    if (comp == Condensation::kNone || sink[comp] == Condensation::kNone) {
      throw std::logic_error("vertex " + std::to_string(v) + " reaches no final vertex");
    }
    raw[v] = static_cast<ClusterId>(sink[comp]);
  }
  return Partition::canonical(raw);
}

Partition eqrank_partition(const SimilarityGraph& w) {
  return base_partition(condense(maximal_subgraph(w)));
}

Partition cluster_oracle(const SimilarityGraph& w) {
  MaximalGraph m = maximal_subgraph(w);
  std::vector<VertexId> parent(m.vertex_count());
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto find = [&](VertexId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (VertexId v = 0; v < m.vertex_count(); ++v) {
    if (!m.has_edge(v)) continue;
    VertexId a = find(v);
    VertexId b = find(m.target[v]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<ClusterId> raw(m.vertex_count());
  for (VertexId v = 0; v < raw.size(); ++v) raw[v] = find(v);
  return Partition::canonical(raw);
}

}  // namespace eqrank
