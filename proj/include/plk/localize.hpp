// Reduced bar quotient of a dg category by a full subcategory, orthogonality
// tests, and the inversion certificate for closed degree-0 morphisms.
//
// Conventions:
//  - A DgCat stores an explicit basis of every hom space, including one
//    identity generator per object (units are honest basis vectors here,
//    unlike in Category where they stay symbolic).
//  - Quotient hom spaces are spanned by reduced bar chains: tensor chains of
//    generators, stored bottom-up, whose intermediate objects lie in the
//    quotiented subcategory; identity generators are excluded from interior
//    slots (they may appear in the two end slots). Chains with a unit in an
//    interior slot span a subcomplex over F2, so dropping them is exact.
//  - Degree of a chain = sum of generator degrees - (length - 1).
//  - Chains of length <= cap form a subcomplex (the differential never
//    increases length); cohomology is reported together with a stability
//    flag comparing against cap + 1.
#pragma once

#include <climits>

#include "plk/amod.hpp"

namespace plk {

struct DgGen {
  int src = 0, dst = 0, deg = 0;
  std::string label;
};

// dg category with explicit hom bases and composition tables over F2.
struct DgCat {
  std::vector<std::string> objects;
  std::vector<DgGen> gens;
  std::vector<int> unit_of;  // per object: index of the identity generator
  std::map<int, std::set<int>> d1;  // differential on generators
  // composition: key (f applied first, g applied second) -> combination g.f
  std::map<std::pair<int, int>, std::set<int>> m2;

  int num_objects() const { return (int)objects.size(); }
  bool is_unit(int g) const;
  std::set<int> diff(const std::set<int>& v) const;
  std::set<int> compose(const std::set<int>& second,
                        const std::set<int>& first) const;
  std::vector<int> hom_gens(int x, int y) const;
  ChainComplex hom_cx(int x, int y) const;
};

// Structural checks: shapes, unit laws, d^2 = 0, Leibniz rule, associativity.
Report validate_dg(const DgCat& c);

// View a category with operations of arity <= 2 as a DgCat (appends one
// identity generator per object). Throws if higher operations are present.
DgCat dg_from_category(const Category& c);

// The dg category of pre-module homomorphisms between finitely many right
// modules over a common base, with the identity made an explicit generator.
struct DgModel {
  DgCat cat;
  std::vector<Module> mods;
  std::vector<PreHom> gen_ph;  // generator -> representing pre-hom

  // Expand a pre-hom between mods[i] and mods[j] in the generator basis.
  std::set<int> express(int i, int j, const PreHom& t) const;

  // internal: per ordered pair, the hom complex data used by express()
  struct PairData {
    HomBasis basis;
    GradedSpace space;
    std::vector<int> entry_gen;  // basis entry -> generator
    int pivot = -1;              // endo pairs: entry replaced by the unit
    std::set<int> unit_entries;  // endo pairs: expansion of the identity
  };
  std::map<std::pair<int, int>, PairData> pairs;
};
DgModel dg_from_modules(const std::vector<Module>& mods);

using BarChain = std::vector<int>;  // generator indices, bottom-up
using BarSum = std::set<BarChain>;

struct QuotientCat {
  DgCat b;
  std::set<int> sub;  // object indices of the quotiented subcategory
  int cap = 0;        // maximal chain length (tensor factor count)
  // per pair: capped cohomology agrees with cap + 1 over the capped window
  bool stable = true;

  std::set<int> objects_of(const BarChain& c) const;  // (src, dst)
  int chain_deg(const BarChain& c) const;
  BarSum d1(const BarSum& v) const;
  // mu^2 by contracting the end points; throws if the result exceeds the cap
  BarSum m2(const BarSum& second, const BarSum& first) const;
  BarSum pi1(const std::set<int>& gens) const;  // length-1 chains
  // Basis chains restricted to degrees [dmin, dmax] (enumeration prunes by
  // reachable degree, so narrow windows stay cheap on large categories).
  std::vector<BarChain> hom_basis(int y0, int y1, int len_cap,
                                  int dmin = INT_MIN, int dmax = INT_MAX) const;
  // Cohomology read at a degree d is exact whenever [d - 1, d + 1] lies
  // inside the window.
  ChainComplex hom_cx(int y0, int y1, int len_cap,
                      std::map<BarChain, std::pair<int, int>>* pos = nullptr,
                      int dmin = INT_MIN, int dmax = INT_MAX) const;
  // does the capped cohomology at this pair and degree survive one more step?
  bool stable_at(int y0, int y1, int deg) const;
};

// Reduced quotient with length cap (default: #objects + 2). When verify is
// set, checks that the capped differential squares to zero on every pair;
// when check_stability is set, the stability flag additionally compares
// every pair's cohomology against cap + 1. Both scans materialize full hom
// complexes, so they are meant for small categories.
QuotientCat dg_quotient(const DgCat& b, const std::set<int>& sub, int cap = -1,
                        bool check_stability = true, bool verify = true);

struct Orthogonality {
  bool left = false, right = false;
};
// right: hom(X, y) acyclic for every X in sub; left: hom(y, X) acyclic.
Orthogonality orthogonality(const DgCat& b, int y, const std::set<int>& sub);

// Inversion certificate for a closed degree-0 morphism t: Y0 -> Y1 of a
// finite directed category: in the quotient of {Yoneda(Y0), Yoneda(Y1),
// Cone(t)} by the cone, the chain a = proj0 (x) incl1 satisfies exact F2
// identities making [a] a two-sided inverse of [t] whenever the identities
// remain nonexact. Throws on a non-closed or wrongly graded t.
//
// The certificate identities involve bar chains of length <= 2 only; the
// cap (default 3) controls how many longer chains feed the exactness tests
// for the units. Exactness at any cap implies exactness in the full
// quotient; the stable flag reports whether cap + 1 changes the verdict.
struct InversionCertificate {
  bool ok = false;       // all certificate identities hold and units survive
  bool stable = true;    // degree-0 cohomology stable under cap + 1
  std::string why;
  QuotientCat q;         // objects: 0 = Yoneda(Y0), 1 = Yoneda(Y1), 2 = cone
  BarSum a;              // candidate inverse in hom(Y1, Y0)
};
InversionCertificate invert_quasi_unit(const Category& e, int t_mor,
                                       int cap = 3);

}  // namespace plk
