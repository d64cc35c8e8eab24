#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "eqrank/weights.hpp"
#include "oracles.hpp"

using namespace eqrank;
using namespace eqrank::testing;

namespace {

Snapshot full_snapshot(const CorpusStore& store) { return snapshot(store, YearMonth{2000, 1}); }

Adjacency empty_adjacency(int n) { return Adjacency(n, std::vector<int>(n, 0)); }

}  // namespace

TEST_CASE("co-citation counts common citers") {
  auto a = empty_adjacency(3);
  a[0][1] = a[0][2] = 1;  // 0 cites both 1 and 2
  auto snap = full_snapshot(store_from_adjacency(a));
  auto c = cocitation(snap);
  CHECK(c.at(1, 2) == 1);
  CHECK(c.at(2, 1) == 1);
  CHECK(c.at(0, 1) == 0);
  CHECK(c.columns.size() == 2);

  auto chain = empty_adjacency(3);
  chain[0][1] = chain[1][2] = 1;
  CHECK(cocitation(full_snapshot(store_from_adjacency(chain))).columns.empty());
}

TEST_CASE("bibliographic coupling counts shared references") {
  auto a = empty_adjacency(3);
  a[0][2] = a[1][2] = 1;
  auto b = bibcoupling(full_snapshot(store_from_adjacency(a)));
  CHECK(b.at(0, 1) == 1);
  CHECK(b.columns.size() == 2);

  auto disjoint = empty_adjacency(4);
  disjoint[0][2] = disjoint[1][3] = 1;
  CHECK(bibcoupling(full_snapshot(store_from_adjacency(disjoint))).columns.empty());
}

TEST_CASE("mixed weights follow the linear formula") {
  SUBCASE("coupling only") {
    auto a = empty_adjacency(3);
    a[0][2] = a[1][2] = 1;  // b(0,1) = 1, c(0,1) = 0
    auto w = similarity_graph(full_snapshot(store_from_adjacency(a)), 0.9);
    CHECK(w.weight(0, 1) == doctest::Approx(0.1).epsilon(1e-15));
  }
  SUBCASE("both kinds") {
    // c(0,1) = 2 via papers 2 and 3; b(0,1) = 3 via papers 4, 5, 6.
    auto a = empty_adjacency(7);
    a[2][0] = a[2][1] = a[3][0] = a[3][1] = 1;
    for (int r : {4, 5, 6}) a[0][r] = a[1][r] = 1;
    auto w = similarity_graph(full_snapshot(store_from_adjacency(a)), 0.9);
    CHECK(w.weight(0, 1) == doctest::Approx(2.1).epsilon(1e-15));
    CHECK(w.weight(1, 0) == w.weight(0, 1));
  }
}

TEST_CASE("a = 1 reproduces co-citation exactly") {
  std::mt19937_64 rng(11);
  auto a = random_digraph(rng, 15, 0.2);
  auto snap = full_snapshot(store_from_adjacency(a));
  auto c = cocitation(snap);
  auto w = similarity_graph(snap, 1.0);
  for (VertexId x = 0; x < 15; ++x)
    for (VertexId y = 0; y < 15; ++y)
      CHECK(w.weight(x, y) == static_cast<double>(c.at(x, y)));
}

TEST_CASE("sparse counts and weights match dense triple loops") {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    auto a = random_digraph(rng, n, 0.05 + 0.3 * (trial % 4) / 3.0);
    auto snap = full_snapshot(store_from_adjacency(a));
    auto c = cocitation(snap);
    auto b = bibcoupling(snap);
    const double mix = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto w = combine(c, b, mix);
    auto dense = dense_similarity(a, mix);
    auto dc = dense_similarity(a, 1.0);
    auto db = dense_similarity(a, 0.0);
    for (VertexId x = 0; x < static_cast<VertexId>(n); ++x) {
      CHECK(w.weight(x, x) == 0.0);
      for (VertexId y = 0; y < static_cast<VertexId>(n); ++y) {
        CHECK(static_cast<double>(c.at(x, y)) == dc[x][y]);
        CHECK(static_cast<double>(b.at(x, y)) == db[x][y]);
        CHECK(std::abs(w.weight(x, y) - dense[x][y]) <= 1e-12);
        CHECK(w.weight(x, y) == w.weight(y, x));
      }
    }
  }
}

TEST_CASE("adding a citation never lowers a weight") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 10;
    auto a = random_digraph(rng, n, 0.15);
    auto before = similarity_graph(full_snapshot(store_from_adjacency(a)));
    int x = static_cast<int>(rng() % n), y = static_cast<int>((rng() % (n - 1) + x + 1) % n);
    a[x][y] = 1;
    auto after = similarity_graph(full_snapshot(store_from_adjacency(a)));
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v) CHECK(after.weight(u, v) >= before.weight(u, v));
  }
}

TEST_CASE("combine rejects bad mixing and mismatched inputs") {
  auto a = empty_adjacency(3);
  a[0][1] = a[0][2] = 1;
  auto snap = full_snapshot(store_from_adjacency(a));
  auto c = cocitation(snap);
  auto b = bibcoupling(snap);
  CHECK_THROWS_AS(combine(c, b, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(combine(c, b, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(combine(c, b, std::nan("")), std::invalid_argument);
  SparseCounts other;
  other.offsets = {0, 0};
  CHECK_THROWS_AS(combine(c, other, 0.5), std::invalid_argument);
}

TEST_CASE("from_pairs sums duplicates symmetrically") {
  std::vector<SimilarityGraph::WeightedPair> pairs{{0, 1, 1.0}, {1, 0, 0.5}, {2, 1, 2.0}};
  auto w = SimilarityGraph::from_pairs(3, pairs);
  CHECK(w.weight(0, 1) == 1.5);
  CHECK(w.weight(1, 0) == 1.5);
  CHECK(w.weight(1, 2) == 2.0);
  CHECK(w.edge_count() == 2);
  CHECK(w.strength(1) == 3.5);
}

TEST_CASE("symmetrized citations use unit weights") {
  auto a = empty_adjacency(3);
  a[0][1] = a[1][0] = a[2][1] = 1;
  auto g = symmetrized_citations(full_snapshot(store_from_adjacency(a)));
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(1, 2) == 1.0);
  CHECK(g.weight(0, 2) == 0.0);
}

TEST_CASE("weighted edge export is ordered by paper id") {
  std::istringstream edges("z\tb\nz\ta\n"), papers("a\t1990-01\nb\t1990-01\nz\t1991-01\n");
  auto store = CorpusStore::ingest(edges, papers);
  auto w = similarity_graph(snapshot(store, YearMonth{1991, 1}), 0.9);
  std::ostringstream out;
  write_weighted_edges(out, w, store);
  CHECK(out.str() == "a\tb\t0.9\n");
}
