// Finite strictly-unital A-infinity categories over F2, validation of the
// associativity relations, functors, and the cohomological category.
//
// Conventions (fixed project-wide):
//  - Morphism chains are stored bottom-up: chain[0] = a_1 is the first map
//    applied, chain.back() = a_d the last; composable means
//    mors[chain[i]].dst == mors[chain[i+1]].src.
//  - Identity morphisms are never stored; strict unitality is applied
//    symbolically (mu^1(e) = 0, mu^2 with a unit = identity, mu^d with a
//    unit = 0 for d >= 3).
//  - F2 coefficients: a combination of basis morphisms is a set of indices.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "plk/chain.hpp"

namespace plk {

// F2 accumulation: toggle membership.
template <class T>
inline void f2_toggle(std::set<T>& acc, const T& x) {
  auto it = acc.find(x);
  if (it == acc.end())
    acc.insert(x);
  else
    acc.erase(it);
}
template <class T>
inline void f2_add(std::set<T>& acc, const std::set<T>& more) {
  for (const auto& x : more) f2_toggle(acc, x);
}

struct Mor {
  int src = 0, dst = 0, deg = 0;
  std::string label;
};

using Chain = std::vector<int>;  // morphism indices, bottom-up

struct Category {
  std::vector<std::string> objects;  // order = the directedness order
  std::vector<Mor> mors;             // basis of all non-identity hom spaces
  // ops[d]: basis chain of length d -> F2 combination of basis morphisms.
  std::map<int, std::map<Chain, std::set<int>>> ops;
  int shift_n = 1;  // duality shift parameter used by rotation / duals

  int num_objects() const { return (int)objects.size(); }
  bool composable(const Chain& c) const;
  // Apply mu^{|c|} to a composable chain of non-identity morphisms.
  std::set<int> mu(const Chain& c) const;
  // Largest arity with a stored operation.
  int max_arity() const { return ops.empty() ? 0 : ops.rbegin()->first; }
  // Indices of basis morphisms from object x to object y.
  std::vector<int> hom_basis(int x, int y) const;
  // All composable chains of non-identity morphisms, lengths 1..maxlen.
  std::vector<Chain> all_chains(int maxlen) const;
};

struct Violation {
  int d = 0;
  std::string what;  // human-readable instance description
};

struct Report {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// Checks well-formedness (labels, shapes, degree law 2-d, directedness:
// src strictly before dst unless allow_endos) and all associativity
// relation instances over non-identity chains.
Report validate_category(const Category& c, bool allow_endos = false);

// Evaluate the associativity relation residual on one chain (F2 sum over
// all (m, n) insertions); empty set means the instance holds.
std::set<int> relation_residual(const Category& c, const Chain& chain);

struct Functor {
  const Category* src = nullptr;
  const Category* dst = nullptr;
  std::vector<int> obj_map;  // source object index -> target object index
  // comp[d]: source chain of length d -> F2 combination of target morphisms,
  // degree shift 1-d. F^1 of an identity is the identity (symbolic).
  std::map<int, std::map<Chain, std::set<int>>> comp;

  std::set<int> apply(const Chain& c) const;  // F^{|c|}
};

Functor identity_functor(const Category& c);
Report check_functor(const Functor& f);

// Cohomological category: homs replaced by cohomology of mu^1, composition
// induced by mu^2 on chosen cocycle representatives.
struct HCategory {
  std::vector<std::string> objects;
  // class basis: per (src,dst), list of (degree, representative = F2 set of
  // morphism indices of the underlying category).
  struct HClass {
    int src, dst, deg;
    std::set<int> rep;
  };
  std::vector<HClass> classes;
  // composition [b][a] -> F2 set of class indices; key (idx_a, idx_b) with
  // a applied first.
  std::map<std::pair<int, int>, std::set<int>> compose;

  std::map<int, int> hom_dims(int x, int y) const;  // degree -> dim
};

// Requires a valid category; verifies associativity of the induced
// composition on all composable triples (throws std::logic_error if it
// fails, which cannot happen for valid input).
HCategory cohomological_category(const Category& c);

// (hom(x, y), mu^1) as a chain complex, labeled by morphism labels.
ChainComplex hom_chain_complex(const Category& c, int x, int y);

// Move the first object to the last position, replacing homs into it by
// duals of homs out of it with degree shift (degree k becomes n - k).
// Declared here, implemented with the module machinery.
Category cyclic_rotate(const Category& c, int shift_n);

}  // namespace plk
