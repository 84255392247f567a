// Right/left modules and bimodules over finite directed A-infinity
// categories, hom complexes of pre-module homomorphisms, mapping cones,
// Yoneda embedding and duality.
//
// Conventions:
//  - A right module element sits at the end of a morphism path: the action
//    key is (element x at dst(chain.back()), chain bottom-up); the output
//    lives at src(chain.front()). An empty chain encodes the internal
//    differential mu^1.
//  - A left module element sits at the start: x at src(chain.front()),
//    output at dst(chain.back()).
//  - Degree law: output degree = deg(x) + sum deg(chain) + 1 - |chain|.
//  - Pre-module homomorphisms are supported for right modules; component
//    keys have the same (element, chain) shape, with the output shifted by
//    the degree of the homomorphism.
#pragma once

#include <tuple>

#include "plk/ainfty.hpp"
#include "plk/chain.hpp"

namespace plk {

struct ModElem {
  int obj = 0, deg = 0;
  std::string label;
};

using ActKey = std::pair<int, Chain>;  // (module element, morphism chain)

struct Module {
  bool left = false;
  Category base;
  std::vector<ModElem> elems;
  std::map<ActKey, std::set<int>> action;

  std::vector<int> elems_at(int obj) const;
  std::set<int> act(int elem, const Chain& c) const;
  // (value at obj, mu^1) as a complex.
  ChainComplex value_complex(int obj) const;
  bool is_zero() const { return elems.empty(); }
};

Report validate_module(const Module& m);

// All action keys (x, chain) with chains of composable non-identity
// morphisms compatible with the module side (empty chains included).
std::vector<ActKey> prehom_domain(const Module& m);

struct PreHom {
  int deg = 0;
  std::map<ActKey, std::set<int>> comp;

  std::set<int> operator()(int elem, const Chain& c) const;
  bool is_zero() const;
  void add(const PreHom& o);  // F2 sum; degrees must agree
};

PreHom identity_prehom(const Module& m);
// Differential mu^1 on hom(m0, m1) applied to t (degree |t| + 1).
PreHom q_diff(const Module& m0, const Module& m1, const PreHom& t);
// Composition mu^2(t2, t1): hom(m1, m2) x hom(m0, m1) -> hom(m0, m2).
PreHom q_compose(const Module& m1, const PreHom& t2, const PreHom& t1);

// Basis of the hom complex: entries (domain key, output element).
struct HomBasis {
  std::vector<std::tuple<int, Chain, int>> entries;  // (x, chain, z)
  std::map<std::tuple<int, Chain, int>, int> index;
  std::vector<int> degree;  // degree of each basis pre-hom

  int find(int x, const Chain& c, int z) const;
  PreHom basis_prehom(size_t i) const;
  // Expand a pre-hom in this basis; throws if it does not lie in it.
  std::map<int, GF2Vec> to_vectors(const PreHom& t,
                                   const GradedSpace& space) const;
};

// Complex of pre-module homomorphisms between right modules over the same
// base (compared by object/morphism labels).
ChainComplex hom_complex(const Module& m0, const Module& m1, HomBasis* basis = nullptr);

// Mapping cone of a closed degree-0 pre-hom t: m0 -> m1, with the four
// structural maps. Throws if t is not closed of degree 0.
struct ConeData {
  Module cone;
  PreHom incl0, incl1, proj0, proj1;  // m0 -> C, m1 -> C, C -> m0, C -> m1
};
ConeData cone_of(const Module& m0, const Module& m1, const PreHom& t);

Module yoneda(const Category& c, int x);
// x-th elements of m(X) as pre-homs yoneda(X) -> m; returns the per-degree
// matrices of the map m(X) -> hom(yoneda(X), m) and verifies it is a chain
// map; quasi-iso status via is_quasi_iso on demand.
struct YonedaMap {
  ChainComplex source;  // m(X)
  ChainComplex target;  // hom complex
  std::map<int, GF2Matrix> mat;
};
YonedaMap yoneda_map(const Module& m, int x);

// Linear dual with degree reflection deg -> -deg + shift_n; flips side.
Module dualize(const Module& m, int shift_n);

struct BimElem {
  int yobj = 0;  // object of the right category B (module variable)
  int xobj = 0;  // object of the left category A
  int deg = 0;
  std::string label;
};

struct Bimodule {
  Category acat;  // left
  Category bcat;  // right
  std::vector<BimElem> elems;
  // key: (A-chain r top, element, B-chain s bottom); arities r+1+s.
  std::map<std::tuple<Chain, int, Chain>, std::set<int>> action;
};

// Directed category on Ob(B) then Ob(A) with hom(Y, X) = N(Y, X).
Category extend_category(const Bimodule& n);
Report validate_bimodule(const Bimodule& n);
// Right B-module N(-, X).
Module bimodule_module(const Bimodule& n, int x);
// First-order component of the module-valued functor: the pre-hom
// N(-, src a) -> N(-, dst a) induced by an A-morphism chain.
PreHom functor_component(const Bimodule& n, const Chain& achain);
// Functor equations for the module-valued functor of n.
Report check_module_functor(const Bimodule& n);
Bimodule dualize_bimodule(const Bimodule& n, int shift_n);

// For t closed of degree 0 with invertible cohomology class, find closed s
// of degree 0 with [s t] = [id] and verify [t s] = [id]; returns false if
// no such s exists.
bool quasi_inverse(const Module& m0, const Module& m1, const PreHom& t, PreHom& s);

}  // namespace plk
