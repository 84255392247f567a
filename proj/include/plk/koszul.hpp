// Simple (dual) modules over a directed category, Koszul pair verification,
// truncation/twist ladders, and the spectral sequence of the induced
// filtration on hom complexes.
//
// Object bookkeeping: for a base category with objects listed in the
// directedness order, truncation step k zeroes the last k objects of the
// list; the simple module at list index i pairs with list index
// (#objects - 1 - i) of the Koszul partner.
#pragma once

#include "plk/amod.hpp"

namespace plk {

// Rank-one module concentrated at one object in degree 0, zero action.
Module simple_module(const Category& b, int obj);
// All simples, indexed by object list position.
std::vector<Module> simple_modules(const Category& b);

struct KoszulWitness {
  Report report;  // empty iff the inputs form a Koszul pair
  // cohomology dims of hom(S_p, S_q) per object pair of the left category
  std::map<std::pair<int, int>, std::map<int, int>> pair_h;
};

// Checks the rank-one diagonal dimension law of the bimodule and that the
// first-order component of its module-valued functor is a quasi-isomorphism
// hom(X_p, X_q) -> hom(Delta(-, X_p), Delta(-, X_q)) for every pair.
KoszulWitness koszul_verify(const Bimodule& delta);

// Same check for the dualized bimodule over the swapped pair.
Report dual_koszul_check(const Bimodule& delta, int shift_n);

// Truncation: zero out the last k objects (in list order) of the values.
Module truncate(const Module& m, int k);
// Closed degree-0 inclusion truncate(m, k) -> m.
PreHom truncation_counit(const Module& m, int k);
// When n vanishes cohomologically on the zeroed objects, hom(n, truncate(m,k))
// and hom(n, m) have equal cohomology dims.
bool adjunction_check(const Module& n, const Module& m, int k,
                      std::string* why = nullptr);

struct TwistData {
  Module twisted;  // L_k m
  PreHom nu;       // composite ladder map m -> L_k m, closed of degree 0
};
// Iterated cone over the evaluation maps at the last k objects in list
// order (step j twists along list index #objects - j).
TwistData twist(const Module& m, int k);

// Decreasing filtration of hom(m, n) by output object and its spectral
// sequence. Asserts the first-page dims against the tensor-product formula
// H(hom(m, simple)) (x) H(n(value)) degreewise (throws on mismatch).
SpectralPages algebraic_ss(const Module& m, const Module& n,
                           FilteredComplex* filt_out = nullptr);

}  // namespace plk
