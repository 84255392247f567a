#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "plk/trees.hpp"

using namespace plk;

namespace {

const double kPi = std::numbers::pi;

// independent count of planar rooted trees with n leaves and all interior
// valences >= 3 (super-Catalan recurrence), used as an enumeration oracle
long super_catalan(int n) {
  std::vector<long> a = {0, 1, 1};
  for (int k = 3; k <= n; ++k) {
    long val = ((6L * k - 9) * a[k - 1] - (k - 3) * a[k - 2]) / k;
    a.push_back(val);
  }
  return a[n];
}

// the two-vertex d1 + d2 - 1 leafed tree: root vertex carries the first
// d1 - 1 leaves and an interior edge to a vertex carrying the rest
LeafedTree two_vertex_tree(int d1, int d2) {
  LeafedTree t;
  t.children.emplace_back();
  for (int i = 0; i < d1 - 1; ++i) t.children[0].push_back(-1);
  t.children[0].push_back(1);
  t.children.push_back(std::vector<int>(d2, -1));
  return t;
}

}  // namespace

TEST_CASE("corolla basics") {
  LeafedTree c = corolla(4);
  CHECK(c.num_vertices() == 1);
  CHECK(c.num_leaves() == 4);
  CHECK(c.valence(0) == 5);
  CHECK(c.stable());
  CHECK(c.encode() == "(oooo)");
  CHECK_THROWS_AS(corolla(1), std::invalid_argument);
}

TEST_CASE("enumeration counts match the recurrence oracle") {
  std::vector<int> expected = {1, 3, 11, 45, 197};  // d = 2..6
  for (int d = 2; d <= 7; ++d) {
    auto trees = enumerate_stable(d);
    CHECK(trees.size() == (size_t)super_catalan(d));
    if (d <= 6) CHECK(trees.size() == (size_t)expected[d - 2]);
  }
  CHECK_THROWS_AS(enumerate_stable(1), std::invalid_argument);
}

TEST_CASE("enumeration is duplicate-free, stable, and sorted") {
  for (int d = 2; d <= 6; ++d) {
    auto trees = enumerate_stable(d);
    std::set<std::string> codes;
    for (const auto& t : trees) {
      CHECK(t.stable());
      CHECK(t.num_leaves() == d);
      CHECK(codes.insert(t.encode()).second);
    }
    for (size_t i = 0; i + 1 < trees.size(); ++i) CHECK(trees[i] < trees[i + 1]);
    // the corolla is always present
    CHECK(codes.count(corolla(d).encode()) == 1);
  }
  // the three 3-leafed trees explicitly
  auto t3 = enumerate_stable(3);
  std::set<std::string> got;
  for (const auto& t : t3) got.insert(t.encode());
  CHECK((got == std::set<std::string>{"(ooo)", "((oo)o)", "(o(oo))"}));
}

TEST_CASE("collapse identities and errors") {
  LeafedTree t = two_vertex_tree(2, 3);  // 4 leaves, one interior edge
  CHECK(collapse(t, {}) == t);
  CHECK(collapse(t, {1}) == corolla(4));
  CHECK_THROWS_AS(collapse(t, {0}), std::invalid_argument);
  CHECK_THROWS_AS(collapse(t, {2}), std::invalid_argument);
  // collapsing everything always gives the corolla
  for (const auto& s : enumerate_stable(5)) {
    std::vector<int> es = interior_edges(s);
    std::set<int> all(es.begin(), es.end());
    CHECK(collapse(s, all) == corolla(5));
  }
  // nested collapse: three-vertex chain, middle edge first
  LeafedTree chain;
  chain.children = {{-1, 1}, {-1, 2}, {-1, -1}};
  CHECK(collapse(chain, {1}).encode() == "(oo(oo))");
  CHECK(collapse(chain, {2}).encode() == "(o(ooo))");
  CHECK(collapse(chain, {1, 2}) == corolla(4));
}

TEST_CASE("exactly five 4-leafed trees with one interior edge") {
  int n = 0;
  for (const auto& t : enumerate_stable(4))
    if (interior_edges(t).size() == 1) ++n;
  CHECK(n == 5);
}

TEST_CASE("collapse order is a partial order with the corolla on top") {
  auto trees = enumerate_stable(4);
  for (const auto& t : trees) {
    CHECK(leq(t, t));
    CHECK(leq(t, corolla(4)));
    // monotone: any collapse moves up
    auto es = interior_edges(t);
    for (int e : es) CHECK(leq(t, collapse(t, {e})));
  }
  // antisymmetry and transitivity over all pairs/triples
  for (const auto& a : trees)
    for (const auto& b : trees) {
      if (leq(a, b) && leq(b, a)) CHECK(a == b);
      for (const auto& c : trees)
        if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
    }
}

TEST_CASE("flags and adjacent plane regions") {
  LeafedTree c = corolla(3);
  auto fl = flags(c);
  REQUIRE(fl.size() == 4);  // valence 4 at the single vertex
  CHECK((fl[0] == Flag{0, 0}));
  CHECK((edge_regions(c, 0) == std::pair<int, int>{0, 3}));  // root edge
  CHECK((edge_regions(c, 2) == std::pair<int, int>{1, 2}));  // leaf 2

  LeafedTree t = two_vertex_tree(2, 3);  // leaves 2..4 above the edge
  CHECK(flags(t).size() == (size_t)(t.valence(0) + t.valence(1)));
  CHECK((edge_regions(t, 4 + 1) == std::pair<int, int>{1, 4}));
  CHECK_THROWS_AS(edge_regions(t, 9), std::invalid_argument);
}

TEST_CASE("star and chain trees validate") {
  CHECK(validate_ribbon(star_tree(5)).ok());
  CHECK(validate_ribbon(chain_tree({3, 4}, {1.5})).ok());
  CHECK(validate_ribbon(chain_tree({3, 1, 2, 4}, {1.0, 2.0, 3.0})).ok());
  CHECK_THROWS_AS(chain_tree({1, 1}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(chain_tree({3, 4}, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(chain_tree({3, 2, 2}, {2.0, 1.0}), std::invalid_argument);

  MetricRibbonTree bad = star_tree(3);
  bad.edges[0].len = 0.0;
  CHECK_FALSE(validate_ribbon(bad).ok());
  MetricRibbonTree path;  // boundary vertex in the middle of a path
  path.boundary = 3;
  path.interior = 0;
  path.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
  CHECK_FALSE(validate_ribbon(path).ok());
}

TEST_CASE("distance embedding of the three-legged star") {
  std::vector<double> v = metric_embed(star_tree(3));
  REQUIRE(v.size() == 3);
  for (double x : v) CHECK(x == doctest::Approx(kPi));
}

TEST_CASE("epsilon-closeness") {
  MetricRibbonTree s = star_tree(4);
  CHECK(eps_close(s, s, 1e-12));
  MetricRibbonTree s2 = s;
  s2.edges[0].len += 0.01;
  CHECK_FALSE(eps_close(s, s2, 1e-3));
  CHECK(eps_close(s, s2, 1.0));
  CHECK_THROWS_AS(eps_close(s, star_tree(5), 1.0), std::invalid_argument);
}

TEST_CASE("widths against the one-vertex star are all one") {
  for (int d = 2; d <= 5; ++d) {
    auto w = boundary_widths(corolla(d), star_tree(d + 1));
    CHECK(w.size() == (size_t)(d + 1));
    for (auto& [f, width] : w) CHECK(width == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(boundary_widths(corolla(3), star_tree(3)),
                  std::invalid_argument);
}

TEST_CASE("widths of the two-vertex tree: separating flags pick up R") {
  int d1 = 3, d2 = 4;
  double R = 2.5;
  LeafedTree t = two_vertex_tree(d1, d2);  // d = 6 leaves
  MetricRibbonTree m = chain_tree({d1, d2}, {R});
  auto w = boundary_widths(t, m);
  for (auto& [f, width] : w) {
    auto [j, k] = edge_regions(t, f.edge);
    bool separating = (j < d1) != (k < d1);  // regions 0..d1-1 sit on v1
    double expect = separating ? (R + kPi) / kPi : 1.0;
    CHECK_MESSAGE(width == doctest::Approx(expect),
                  "edge " << f.edge << " regions " << j << "," << k);
  }
  // both flags of the interior edge agree and separate the groups
  CHECK((w.at(Flag{0, 6 + 1})) == doctest::Approx((R + kPi) / kPi));
  CHECK((w.at(Flag{1, 6 + 1})) == doctest::Approx((R + kPi) / kPi));
}

TEST_CASE("zero separation degenerates the chain to the star") {
  MetricRibbonTree m = chain_tree({3, 4}, {0.0});
  CHECK(m.interior == 1);
  CHECK(eps_close(m, star_tree(7), 1e-12));
  auto w = boundary_widths(two_vertex_tree(3, 4), m);
  for (auto& [f, width] : w) CHECK(width == doctest::Approx(1.0));
}

TEST_CASE("general chain tree distances") {
  std::vector<double> R = {1.0, 2.0, 3.5};
  MetricRibbonTree m = chain_tree({3, 1, 2, 4}, R);
  CHECK(m.boundary == 10);
  CHECK(m.interior == 4);
  // first leg to last leg: pi/2 + R3 + pi/2
  CHECK(tree_distance(m, 0, 9) == doctest::Approx(kPi + R[2]));
  // within the first group
  CHECK(tree_distance(m, 0, 2) == doctest::Approx(kPi));
  // group 2 (single leg, boundary 3) to group 3 (boundary 4)
  CHECK(tree_distance(m, 3, 4) == doctest::Approx(kPi + (R[1] - R[0])));
  // partial collision: equal separations merge interior vertices
  MetricRibbonTree mm = chain_tree({2, 2, 3}, {1.0, 1.0});
  CHECK(mm.interior == 2);
  CHECK(validate_ribbon(mm).ok());
}

TEST_CASE("subtree over one group of the chain is the star") {
  MetricRibbonTree m = chain_tree({3, 4}, {2.0});
  MetricRibbonTree sub = subtree(m, {0, 1, 2});
  CHECK(sub.boundary == 3);
  CHECK(validate_ribbon(sub).ok());
  CHECK(eps_close(sub, star_tree(3), 1e-12));
  // two-point subtree is a single edge of the right length
  MetricRibbonTree seg = subtree(m, {0, 5});
  CHECK(seg.boundary == 2);
  CHECK(seg.edges.size() == 1);
  CHECK(seg.edges[0].len == doctest::Approx(kPi + 2.0));
  CHECK_THROWS_AS(subtree(m, {0}), std::invalid_argument);
  CHECK_THROWS_AS(subtree(m, {0, 99}), std::invalid_argument);
}

TEST_CASE("subtree is functorial") {
  MetricRibbonTree m = chain_tree({3, 1, 2, 4}, {1.0, 2.0, 3.0});
  std::vector<int> A = {0, 2, 3, 5, 8};  // sorted
  std::set<int> As(A.begin(), A.end());
  MetricRibbonTree inner = subtree(m, As);
  CHECK(validate_ribbon(inner).ok());
  std::set<int> B = {0, 3, 8};
  // positions of B within A are the labels inside the inner tree
  std::set<int> Bi;
  for (size_t i = 0; i < A.size(); ++i)
    if (B.count(A[i])) Bi.insert((int)i);
  CHECK(eps_close(subtree(inner, Bi), subtree(m, B), 1e-9));
}

TEST_CASE("four-point condition holds on constructed trees") {
  for (const MetricRibbonTree& m :
       {star_tree(5), chain_tree({3, 4}, {1.7}),
        chain_tree({2, 2, 3}, {0.5, 2.0})}) {
    CHECK(validate_ribbon(m).ok());
    // and directly on the embedding
    std::vector<double> v = metric_embed(m);
    int b = m.boundary;
    auto dist = [&](int j, int k) {
      if (j > k) std::swap(j, k);
      return v[(size_t)(j * (2 * b - j - 1) / 2 + (k - j - 1))];
    };
    for (int i = 0; i < b; ++i)
      for (int j = i + 1; j < b; ++j)
        for (int k = j + 1; k < b; ++k)
          for (int l = k + 1; l < b; ++l) {
            double s1 = dist(i, j) + dist(k, l);
            double s2 = dist(i, k) + dist(j, l);
            double s3 = dist(i, l) + dist(j, k);
            double mx = std::max({s1, s2, s3});
            int ties = (mx - s1 < 1e-9) + (mx - s2 < 1e-9) + (mx - s3 < 1e-9);
            CHECK(ties >= 2);
          }
  }
}
