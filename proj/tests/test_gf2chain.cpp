#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "plk/chain.hpp"
#include "plk/gf2.hpp"

using namespace plk;

TEST_CASE("rank and kernel basics") {
  // identity
  auto id = GF2Matrix::identity(2);
  CHECK(id.rank() == 2);
  CHECK(id.kernel_basis().empty());

  // zero 3x4
  GF2Matrix z(3, 4);
  CHECK(z.rank() == 0);
  CHECK(z.kernel_basis().size() == 4);

  // [[1,1],[1,1]] -> rank 1, kernel spanned by (1,1)
  GF2Matrix m(2, 2);
  m.set(0, 0);
  m.set(0, 1);
  m.set(1, 0);
  m.set(1, 1);
  CHECK(m.rank() == 1);
  auto k = m.kernel_basis();
  REQUIRE(k.size() == 1);
  CHECK(k[0].get(0));
  CHECK(k[0].get(1));
}

TEST_CASE("rank_kernel determinism and rank-nullity") {
  std::mt19937 rng(0);
  for (int trial = 0; trial < 50; ++trial) {
    int r = 1 + (int)(rng() % 8), c = 1 + (int)(rng() % 8);
    GF2Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (rng() & 1) m.set(i, j);
    auto k1 = m.kernel_basis();
    auto k2 = m.kernel_basis();
    CHECK(k1.size() == k2.size());
    for (size_t i = 0; i < k1.size(); ++i) CHECK(k1[i] == k2[i]);
    CHECK(m.rank() + (int)k1.size() == c);
    for (auto& v : k1) CHECK(m.apply(v).is_zero());
  }
}

TEST_CASE("solve") {
  GF2Matrix m(3, 3);
  m.set(0, 0);
  m.set(1, 1);
  m.set(2, 0);
  m.set(2, 1);
  GF2Vec b(3);
  b.set(0);
  b.set(2);
  GF2Vec x;
  REQUIRE(m.solve(b, x));
  CHECK(m.apply(x) == b);
  GF2Vec bad(3);
  bad.set(2);
  CHECK_FALSE(m.solve(bad, x));  // row2 = row0 + row1 forces inconsistency
}

TEST_CASE("subspace arithmetic") {
  // U = span{e0, e1}, W = span{e1, e2} in F2^3
  GF2Vec e0(3), e1(3), e2(3);
  e0.set(0);
  e1.set(1);
  e2.set(2);
  auto U = Subspace::span(3, {e0, e1});
  auto W = Subspace::span(3, {e1, e2});
  CHECK(U.intersect(W).dim() == 1);
  CHECK(U.sum(W).dim() == 3);
  CHECK(U.contains(e1));
  CHECK_FALSE(U.contains(e2));

  // preimage of span{e1} under projection onto coords (1,2)
  GF2Matrix A(2, 3);
  A.set(0, 1);
  A.set(1, 2);
  GF2Vec f1(2);
  f1.set(0);
  auto P = Subspace::preimage(A, Subspace::span(2, {f1}));
  CHECK(P.dim() == 2);  // {x : x2 = 0}
  GF2Vec v(3);
  v.set(0);
  v.set(1);
  CHECK(P.contains(v));
}

static ChainComplex two_term(int deg, int rank) {
  // K^2 -> K^2 in degrees deg, deg+1 with differential of the given rank
  ChainComplex c;
  c.space.labels[deg] = {"a0", "a1"};
  c.space.labels[deg + 1] = {"b0", "b1"};
  GF2Matrix d(2, 2);
  for (int i = 0; i < rank; ++i) d.set(i, i);
  c.diff[deg] = d;
  return c;
}

TEST_CASE("cohomology") {
  // zero differential
  ChainComplex c0;
  c0.space.labels[0] = {"x", "y"};
  CHECK(c0.square_zero());
  CHECK(c0.cohomology_dims() == std::map<int, int>{{0, 2}});

  // identity differential: acyclic
  auto c1 = two_term(0, 2);
  CHECK(c1.square_zero());
  CHECK(c1.cohomology_dims().empty());

  // rank-1 differential K^2 -> K^2: one class in each degree
  auto c2 = two_term(3, 1);
  CHECK(c2.cohomology_dims() == std::map<int, int>{{3, 1}, {4, 1}});
}

TEST_CASE("square_zero rejection") {
  ChainComplex c;
  c.space.labels[0] = {"a"};
  c.space.labels[1] = {"b"};
  c.space.labels[2] = {"c"};
  GF2Matrix d0(1, 1), d1(1, 1);
  d0.set(0, 0);
  d1.set(0, 0);
  c.diff[0] = d0;
  c.diff[1] = d1;
  CHECK_FALSE(c.square_zero());
  CHECK_THROWS(spectral_sequence(FilteredComplex{c, {}}));
}

TEST_CASE("spectral sequence: trivial filtration = cohomology") {
  auto c = two_term(0, 1);
  FilteredComplex f = FilteredComplex::from_label_steps(c, {{}});
  auto pages = spectral_sequence(f);
  CHECK(pages.einf_total_by_degree() == c.cohomology_dims());
}

TEST_CASE("spectral sequence: two-step filtration of an acyclic complex") {
  // 0 -> K -> K -> 0 with identity d, second step keeps only the target.
  ChainComplex c;
  c.space.labels[0] = {"a"};
  c.space.labels[1] = {"b"};
  GF2Matrix d(1, 1);
  d.set(0, 0);
  c.diff[0] = d;
  FilteredComplex f = FilteredComplex::from_label_steps(c, {{"b"}, {}});
  auto pages = spectral_sequence(f);
  REQUIRE(!pages.pages.empty());
  const auto& e1 = pages.pages[0];
  // two 1-dimensional classes on page 1, killed by d_1
  int total_e1 = 0;
  for (auto& [k, v] : e1.dims) total_e1 += v;
  CHECK(total_e1 == 2);
  int total_rank = 0;
  for (auto& [k, v] : e1.d_rank) total_rank += v;
  CHECK(total_rank == 1);
  CHECK(pages.einf.empty());
}

TEST_CASE("spectral sequence: direct-sum filtration collapses on page 1") {
  // two disjoint two-term complexes; filtration keeps one summand
  ChainComplex c;
  c.space.labels[0] = {"a", "x"};
  c.space.labels[1] = {"b", "y"};
  GF2Matrix d(2, 2);
  d.set(0, 0);  // a -> b only; x, y survive
  c.diff[0] = d;
  FilteredComplex f = FilteredComplex::from_label_steps(c, {{"x", "y"}, {}});
  auto pages = spectral_sequence(f);
  CHECK(pages.stable_index == 1);
  CHECK(pages.einf_total_by_degree() == c.cohomology_dims());
}

static FilteredComplex random_filtered(std::mt19937& rng) {
  // random complex on degrees 0..2 with dims <= 3, then a random closed filtration
  ChainComplex c;
  std::uniform_int_distribution<int> dimd(0, 3);
  for (int deg = 0; deg <= 2; ++deg) {
    int n = dimd(rng);
    std::vector<std::string> labs;
    for (int i = 0; i < n; ++i)
      labs.push_back("g" + std::to_string(deg) + "_" + std::to_string(i));
    if (n) c.space.labels[deg] = labs;
  }
  // build a random strictly upper-triangular differential on the degree ladder,
  // forcing d o d = 0 by zeroing the composite obstruction: pick d0 random, then
  // d1 with d1*d0 = 0 (choose d1 supported on a complement of im d0).
  int n0 = c.space.dim(0), n1 = c.space.dim(1), n2 = c.space.dim(2);
  GF2Matrix d0(n1, n0), d1(n2, n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n0; ++j)
      if (rng() & 1) d0.set(i, j);
  // rows of d1 must annihilate im(d0): sample from the left-kernel of d0.
  auto lk = d0.transpose().kernel_basis();
  for (int i = 0; i < n2; ++i)
    for (auto& v : lk)
      if (rng() & 1) d1.row[i].xor_with(v);
  c.diff[0] = d0;
  c.diff[1] = d1;

  // filtration: greedily grow closed label subsets (decreasing)
  std::vector<std::string> all;
  for (auto& [deg, labs] : c.space.labels)
    for (auto& l : labs) all.push_back(l);
  std::vector<std::vector<std::string>> stepsets;
  std::vector<std::string> cur = all;
  int nsteps = 1 + (int)(rng() % 3);
  for (int s = 0; s < nsteps; ++s) {
    // drop labels whose differential stays inside the remainder
    std::vector<std::string> next;
    for (auto& l : cur)
      if (rng() & 1) next.push_back(l);
    // closure: keep adding labels hit by d of kept generators
    bool grew = true;
    while (grew) {
      grew = false;
      std::set<std::string> nset(next.begin(), next.end());
      for (auto& [deg, labs] : c.space.labels) {
        const GF2Matrix& d = c.d(deg);
        for (size_t j = 0; j < labs.size(); ++j) {
          if (!nset.count(labs[j])) continue;
          auto it = c.space.labels.find(deg + 1);
          if (it == c.space.labels.end()) continue;
          for (size_t i = 0; i < it->second.size(); ++i)
            if (d.get((int)i, (int)j) && !nset.count(it->second[i])) {
              next.push_back(it->second[i]);
              nset.insert(it->second[i]);
              grew = true;
            }
        }
      }
    }
    stepsets.push_back(next);
    cur = next;
  }
  stepsets.push_back({});
  return FilteredComplex::from_label_steps(c, stepsets);
}

TEST_CASE("spectral sequence converges to ambient cohomology (random)") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    FilteredComplex f = random_filtered(rng);
    REQUIRE(f.validate());
    auto pages = spectral_sequence(f);
    CHECK(pages.einf_total_by_degree() == f.ambient.cohomology_dims());
  }
}
