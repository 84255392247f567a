#include "plk/chain.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace plk {

const GF2Matrix& ChainComplex::d(int deg) const {
  auto it = diff.find(deg);
  if (it != diff.end()) return it->second;
  auto& z = zero_cache_[deg];
  z = GF2Matrix(space.dim(deg + 1), space.dim(deg));
  return z;
}

GF2Matrix ChainComplex::d_copy(int deg) const { return d(deg); }

bool ChainComplex::square_zero(std::string* why) const {
  if (space.labels.empty()) return true;
  int lo = space.min_deg() - 1, hi = space.max_deg();
  for (int k = lo; k <= hi; ++k) {
    const GF2Matrix& dk = d(k);
    if (dk.rows != space.dim(k + 1) || dk.cols != space.dim(k)) {
      if (why) *why = "differential shape mismatch at degree " + std::to_string(k);
      return false;
    }
    GF2Matrix comp = d(k + 1) * dk;
    if (!comp.is_zero()) {
      if (why) *why = "d o d != 0 at degree " + std::to_string(k);
      return false;
    }
  }
  return true;
}

GradedSpace ChainComplex::cohomology() const {
  GradedSpace out;
  for (auto dims = cohomology_dims(); auto& [deg, n] : dims) {
    std::vector<std::string> labs;
    for (int i = 0; i < n; ++i)
      labs.push_back("h" + std::to_string(deg) + "_" + std::to_string(i));
    out.labels[deg] = labs;
  }
  return out;
}

std::map<int, int> ChainComplex::cohomology_dims() const {
  std::map<int, int> out;
  if (space.labels.empty()) return out;
  for (int k = space.min_deg(); k <= space.max_deg(); ++k) {
    int nk = space.dim(k);
    if (nk == 0) continue;
    int ker = nk - d(k).rank();
    int im = d(k - 1).rank();
    int h = ker - im;
    if (h) out[k] = h;
  }
  return out;
}

Subspace FilteredComplex::step(int p, int deg) const {
  int n = ambient.space.dim(deg);
  if (p <= 0) return Subspace::full(n);
  if (p >= num_steps()) return Subspace(n);
  auto it = steps[p].find(deg);
  if (it == steps[p].end()) return Subspace(n);
  return it->second;
}

bool FilteredComplex::validate(std::string* why) const {
  std::string w;
  if (!ambient.square_zero(&w)) {
    if (why) *why = "ambient: " + w;
    return false;
  }
  int lo = ambient.space.min_deg(), hi = ambient.space.max_deg();
  for (int p = 0; p < num_steps(); ++p) {
    for (int deg = lo; deg <= hi; ++deg) {
      Subspace fp = step(p, deg);
      if (p > 0 && !step(p - 1, deg).contains_subspace(fp)) {
        if (why) *why = "filtration not nested at step " + std::to_string(p);
        return false;
      }
      Subspace img = fp.image_under(ambient.d(deg));
      if (!step(p, deg + 1).contains_subspace(img)) {
        if (why)
          *why = "step " + std::to_string(p) + " not closed under d at degree " +
                 std::to_string(deg);
        return false;
      }
    }
  }
  return true;
}

FilteredComplex FilteredComplex::from_label_steps(
    const ChainComplex& ambient,
    const std::vector<std::vector<std::string>>& keep_decreasing) {
  FilteredComplex f;
  f.ambient = ambient;
  f.steps.resize(keep_decreasing.size() + 1);
  // steps[0] = full (left empty; step() clamps).
  for (size_t p = 0; p < keep_decreasing.size(); ++p) {
    std::set<std::string> keep(keep_decreasing[p].begin(), keep_decreasing[p].end());
    for (auto& [deg, labs] : ambient.space.labels) {
      Subspace s((int)labs.size());
      for (size_t i = 0; i < labs.size(); ++i) {
        if (keep.count(labs[i])) {
          GF2Vec v((int)labs.size());
          v.set((int)i);
          s.insert(v);
        }
      }
      f.steps[p + 1][deg] = s;
    }
  }
  return f;
}

std::map<int, int> SpectralPages::einf_total_by_degree() const {
  std::map<int, int> out;
  for (auto& [pj, d] : einf) out[pj.first + pj.second] += d;
  return out;
}

SpectralPages spectral_sequence(const FilteredComplex& f) {
  std::string why;
  if (!f.validate(&why)) throw std::invalid_argument("spectral_sequence: " + why);

  const ChainComplex& C = f.ambient;
  int m = f.num_steps() - 1;  // F_0 .. F_m (F_m may or may not be 0; clamp below)
  if (m < 0) m = 0;
  int lo = C.space.labels.empty() ? 0 : C.space.min_deg();
  int hi = C.space.labels.empty() ? 0 : C.space.max_deg();

  auto Z = [&](int r, int p, int n) -> Subspace {
    // F_p(n) cap d^{-1} F_{p+r}(n+1); step() clamps indices outside [0, m].
    Subspace fp = f.step(p, n);
    Subspace pre = Subspace::preimage(C.d(n), f.step(p + r, n + 1));
    return fp.intersect(pre);
  };
  auto boundary_part = [&](int r, int p, int n) -> Subspace {
    // Z_{r-1}(p+1, n) + d Z_{r-1}(p-r+1, n-1)
    Subspace out = Z(r - 1, p + 1, n);
    Subspace zprev = Z(r - 1, p - r + 1, n - 1);
    return out.sum(zprev.image_under(C.d(n - 1)));
  };

  SpectralPages out;
  // d_r shifts filtration index by r, so d_r = 0 once r > m and the pages
  // are constant from r = m + 1 on. Compute pages 1 .. m + 1.
  const int rmax = m + 1;
  for (int r = 1; r <= rmax; ++r) {
    SpectralPage page;
    page.r = r;
    for (int p = 0; p <= m; ++p) {
      for (int n = lo; n <= hi; ++n) {
        Subspace zr = Z(r, p, n);
        Subspace dr_denom = boundary_part(r, p, n);
        // dr_denom is contained in zr; dimension of the quotient:
        int dim = zr.dim() - dr_denom.dim();
        if (dim > 0) page.dims[{p, n - p}] = dim;
        // rank of induced d_r : E_r(p,n) -> E_r(p+r, n+1)
        Subspace img = zr.image_under(C.d(n));
        Subspace denom_t = boundary_part(r, p + r, n + 1);
        int rank = dim_mod(img, denom_t);
        if (rank > 0) page.d_rank[{p, n - p}] = rank;
      }
    }
    out.pages.push_back(page);
  }
  if (!out.pages.back().d_rank.empty())
    throw std::logic_error("spectral_sequence: nonzero differential on final page");
  out.einf = out.pages.back().dims;
  out.stable_index = rmax;
  // Earliest page already equal to E_infinity with no differentials after it.
  for (int r = rmax - 1; r >= 1; --r) {
    const auto& page = out.pages[r - 1];
    if (page.dims == out.einf && page.d_rank.empty())
      out.stable_index = r;
    else
      break;
  }

  // Internal consistency: page r+1 dims match cohomology of page r.
  for (size_t i = 0; i + 1 < out.pages.size(); ++i) {
    const auto& cur = out.pages[i];
    const auto& nxt = out.pages[i + 1];
    int rr = cur.r;
    for (auto& [pj, dim] : cur.dims) {
      int p = pj.first, n = pj.first + pj.second;
      auto rk = [&](std::pair<int, int> key) {
        auto it = cur.d_rank.find(key);
        return it == cur.d_rank.end() ? 0 : it->second;
      };
      int expect = dim - rk({p, n - p}) - rk({p - rr, n - 1 - (p - rr)});
      auto it = nxt.dims.find({p, n - p});
      int got = it == nxt.dims.end() ? 0 : it->second;
      if (expect != got)
        throw std::logic_error("spectral_sequence: page recursion inconsistency");
    }
  }
  return out;
}

namespace {
GF2Matrix fmat(const std::map<int, GF2Matrix>& f, int k, int rows, int cols) {
  auto it = f.find(k);
  if (it == f.end()) return GF2Matrix(rows, cols);
  if (it->second.rows != rows || it->second.cols != cols)
    throw std::invalid_argument("chain map component has wrong shape");
  return it->second;
}
}  // namespace

bool is_chain_map(const ChainComplex& A, const ChainComplex& B,
                  const std::map<int, GF2Matrix>& f, std::string* why) {
  int lo = std::min(A.space.min_deg(), B.space.min_deg()) - 1;
  int hi = std::max(A.space.max_deg(), B.space.max_deg());
  for (int k = lo; k <= hi; ++k) {
    GF2Matrix fk = fmat(f, k, B.space.dim(k), A.space.dim(k));
    GF2Matrix fk1 = fmat(f, k + 1, B.space.dim(k + 1), A.space.dim(k + 1));
    GF2Matrix lhs = B.d(k) * fk;
    GF2Matrix rhs = fk1 * A.d(k);
    if (!(lhs + rhs).is_zero()) {
      if (why) *why = "fails to commute with d at degree " + std::to_string(k);
      return false;
    }
  }
  return true;
}

bool is_quasi_iso(const ChainComplex& A, const ChainComplex& B,
                  const std::map<int, GF2Matrix>& f, std::string* why) {
  if (!is_chain_map(A, B, f, why)) return false;
  auto ha = A.cohomology_dims(), hb = B.cohomology_dims();
  if (ha != hb) {
    if (why) *why = "cohomology dimensions differ";
    return false;
  }
  int lo = std::min(A.space.min_deg(), B.space.min_deg());
  int hi = std::max(A.space.max_deg(), B.space.max_deg());
  for (int k = lo; k <= hi; ++k) {
    int h = ha.count(k) ? ha[k] : 0;
    if (h == 0) continue;
    GF2Matrix fk = fmat(f, k, B.space.dim(k), A.space.dim(k));
    Subspace za = Subspace::span(A.space.dim(k), A.d(k).kernel_basis());
    Subspace bb = Subspace::span(B.space.dim(k), B.d(k - 1).image_basis());
    int rank = dim_mod(za.image_under(fk), bb);
    if (rank != h) {
      if (why)
        *why = "induced map on cohomology has rank " + std::to_string(rank) +
               " != " + std::to_string(h) + " at degree " + std::to_string(k);
      return false;
    }
  }
  return true;
}

}  // namespace plk
