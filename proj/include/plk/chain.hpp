// Graded F2 vector spaces, chain complexes (degree +1 differential),
// filtered complexes and the spectral sequence of a finite filtration.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "plk/gf2.hpp"

namespace plk {

// Finitely supported Z-graded space with opaque basis labels per degree.
struct GradedSpace {
  std::map<int, std::vector<std::string>> labels;

  int dim(int deg) const {
    auto it = labels.find(deg);
    return it == labels.end() ? 0 : (int)it->second.size();
  }
  int total_dim() const {
    int t = 0;
    for (auto& [d, v] : labels) t += (int)v.size();
    return t;
  }
  int min_deg() const { return labels.empty() ? 0 : labels.begin()->first; }
  int max_deg() const { return labels.empty() ? 0 : labels.rbegin()->first; }
  std::map<int, int> dims() const {
    std::map<int, int> out;
    for (auto& [d, v] : labels)
      if (!v.empty()) out[d] = (int)v.size();
    return out;
  }
  // Degrees are compared by dimension profile, not by labels.
  bool same_dims(const GradedSpace& o) const { return dims() == o.dims(); }
};

// Cochain complex: differential raises degree by one; d[k] has shape
// dim(k+1) x dim(k) (column-vector convention).
struct ChainComplex {
  GradedSpace space;
  std::map<int, GF2Matrix> diff;

  const GF2Matrix& d(int deg) const;  // materializes zero matrices on demand
  GF2Matrix d_copy(int deg) const;
  bool square_zero(std::string* why = nullptr) const;
  GradedSpace cohomology() const;
  std::map<int, int> cohomology_dims() const;

 private:
  mutable std::map<int, GF2Matrix> zero_cache_;
};

// Decreasing filtration by subcomplexes: steps[0] = full, steps.back() = 0.
// Each step holds one subspace per degree.
struct FilteredComplex {
  ChainComplex ambient;
  std::vector<std::map<int, Subspace>> steps;

  int num_steps() const { return (int)steps.size(); }  // = m + 1 with F_0..F_m
  Subspace step(int p, int deg) const;                 // clamped outside range
  // Validity: each step closed under d, steps nested decreasing.
  bool validate(std::string* why = nullptr) const;

  // Build from basis-label subsets (coordinate subspaces), decreasing.
  // keep[p] lists the ambient labels spanning F_p (F_0 implicit = all).
  static FilteredComplex from_label_steps(
      const ChainComplex& ambient,
      const std::vector<std::vector<std::string>>& keep_decreasing);
};

struct SpectralPage {
  int r = 1;
  // (filtration index p, complementary degree j), total degree = p + j.
  std::map<std::pair<int, int>, int> dims;
  std::map<std::pair<int, int>, int> d_rank;
};

struct SpectralPages {
  std::vector<SpectralPage> pages;
  int stable_index = 1;  // first r with E_r = E_infinity
  std::map<std::pair<int, int>, int> einf;
  // Per total degree n: sum over p of dim E_inf^{p, n-p}.
  std::map<int, int> einf_total_by_degree() const;
};

SpectralPages spectral_sequence(const FilteredComplex& f);

// f maps degree k of A to degree k of B (missing degrees = zero map).
bool is_chain_map(const ChainComplex& A, const ChainComplex& B,
                  const std::map<int, GF2Matrix>& f, std::string* why = nullptr);
// Chain map inducing an isomorphism on cohomology in every degree.
bool is_quasi_iso(const ChainComplex& A, const ChainComplex& B,
                  const std::map<int, GF2Matrix>& f, std::string* why = nullptr);

}  // namespace plk
