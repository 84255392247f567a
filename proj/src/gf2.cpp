#include "plk/gf2.hpp"

#include <bit>
#include <algorithm>

namespace plk {

int GF2Vec::leading() const {
  for (size_t k = 0; k < w.size(); ++k)
    if (w[k]) return (int)(k * 64) + std::countr_zero(w[k]);
  return -1;
}

GF2Matrix GF2Matrix::identity(int n) {
  GF2Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i);
  return m;
}

GF2Matrix GF2Matrix::operator*(const GF2Matrix& o) const {
  if (cols != o.rows) throw std::invalid_argument("GF2Matrix: shape mismatch in *");
  GF2Matrix out(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k)
      if (row[i].get(k)) out.row[i].xor_with(o.row[k]);
  return out;
}

GF2Matrix GF2Matrix::operator+(const GF2Matrix& o) const {
  if (rows != o.rows || cols != o.cols) throw std::invalid_argument("GF2Matrix: shape mismatch in +");
  GF2Matrix out = *this;
  for (int i = 0; i < rows; ++i) out.row[i].xor_with(o.row[i]);
  return out;
}

GF2Matrix GF2Matrix::transpose() const {
  GF2Matrix out(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (get(i, j)) out.set(j, i);
  return out;
}

GF2Vec GF2Matrix::apply(const GF2Vec& x) const {
  if (x.n != cols) throw std::invalid_argument("GF2Matrix: apply size mismatch");
  GF2Vec out(rows);
  for (int i = 0; i < rows; ++i) {
    std::uint64_t acc = 0;
    for (size_t k = 0; k < x.w.size(); ++k) acc ^= row[i].w[k] & x.w[k];
    out.set(i, std::popcount(acc) & 1);
  }
  return out;
}

bool GF2Matrix::is_zero() const {
  for (auto& r : row) if (!r.is_zero()) return false;
  return true;
}

namespace {
// Row-reduce a copy; returns pivot column list. If `reduced`, back-substitute
// to reduced echelon form.
std::vector<int> echelonize(std::vector<GF2Vec>& rows, bool reduced) {
  std::vector<int> pivots;
  size_t r = 0;
  int ncols = rows.empty() ? 0 : rows[0].n;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (size_t i = reduced ? 0 : r + 1; i < rows.size(); ++i)
      if (i != r && rows[i].get(c)) rows[i].xor_with(rows[r]);
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}
}  // namespace

int GF2Matrix::rank() const {
  auto rs = row;
  return (int)echelonize(rs, false).size();
}

std::vector<GF2Vec> GF2Matrix::kernel_basis() const {
  auto rs = row;
  auto pivots = echelonize(rs, true);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<GF2Vec> out;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    GF2Vec v(cols);
    v.set(f);
    for (size_t i = 0; i < pivots.size(); ++i)
      if (rs[i].get(f)) v.set(pivots[i]);
    out.push_back(v);
  }
  return out;
}

std::vector<GF2Vec> GF2Matrix::image_basis() const {
  // Echelonize the columns (rows of the transpose).
  auto t = transpose();
  auto rs = t.row;
  echelonize(rs, true);
  return rs;
}

bool GF2Matrix::solve(const GF2Vec& b, GF2Vec& x) const {
  // Augmented elimination.
  std::vector<GF2Vec> aug(rows, GF2Vec(cols + 1));
  for (int i = 0; i < rows; ++i) {
    for (size_t k = 0; k < row[i].w.size(); ++k) aug[i].w[k] = row[i].w[k];
    if (b.get(i)) aug[i].set(cols);
  }
  std::vector<int> pivots;
  size_t r = 0;
  for (int c = 0; c < cols && r < aug.size(); ++c) {
    size_t p = r;
    while (p < aug.size() && !aug[p].get(c)) ++p;
    if (p == aug.size()) continue;
    std::swap(aug[r], aug[p]);
    for (size_t i = 0; i < aug.size(); ++i)
      if (i != r && aug[i].get(c)) aug[i].xor_with(aug[r]);
    pivots.push_back(c);
    ++r;
  }
  for (size_t i = r; i < aug.size(); ++i)
    if (aug[i].get(cols)) return false;  // 0 = 1 row
  x = GF2Vec(cols);
  for (size_t i = 0; i < pivots.size(); ++i)
    if (aug[i].get(cols)) x.set(pivots[i]);
  return true;
}

Subspace Subspace::full(int ambient) {
  Subspace s(ambient);
  for (int i = 0; i < ambient; ++i) {
    GF2Vec v(ambient);
    v.set(i);
    s.basis_.push_back(v);
  }
  return s;
}

Subspace Subspace::span(int ambient, const std::vector<GF2Vec>& gens) {
  Subspace s(ambient);
  for (auto& g : gens) s.insert(g);
  return s;
}

void Subspace::insert(const GF2Vec& v0) {
  GF2Vec v = reduce(v0);
  if (v.is_zero()) return;
  int lead = v.leading();
  // Keep reduced form: clear this pivot from existing rows.
  for (auto& b : basis_)
    if (b.get(lead)) b.xor_with(v);
  auto it = basis_.begin();
  while (it != basis_.end() && it->leading() < lead) ++it;
  basis_.insert(it, v);
}

GF2Vec Subspace::reduce(GF2Vec v) const {
  for (auto& b : basis_) {
    int lead = b.leading();
    if (v.get(lead)) v.xor_with(b);
  }
  return v;
}

bool Subspace::contains(const GF2Vec& v) const { return reduce(v).is_zero(); }

Subspace Subspace::sum(const Subspace& o) const {
  Subspace s = *this;
  for (auto& b : o.basis_) s.insert(b);
  return s;
}

Subspace Subspace::intersect(const Subspace& o) const {
  // Kernel method: columns [A | B], kernel vectors (x, y) give A x = B y.
  int da = dim(), db = o.dim();
  GF2Matrix m(n_, da + db);
  for (int j = 0; j < da; ++j)
    for (int i = 0; i < n_; ++i)
      if (basis_[j].get(i)) m.set(i, j);
  for (int j = 0; j < db; ++j)
    for (int i = 0; i < n_; ++i)
      if (o.basis_[j].get(i)) m.set(i, da + j);
  Subspace out(n_);
  for (auto& k : m.kernel_basis()) {
    GF2Vec v(n_);
    for (int j = 0; j < da; ++j)
      if (k.get(j)) v.xor_with(basis_[j]);
    out.insert(v);
  }
  return out;
}

Subspace Subspace::preimage(const GF2Matrix& A, const Subspace& T) {
  // Annihilator rows N of T (kernel of T^t as column space), then ker(N A).
  int m = A.rows;
  GF2Matrix tb(m, T.dim());
  for (int j = 0; j < T.dim(); ++j)
    for (int i = 0; i < m; ++i)
      if (T.basis()[j].get(i)) tb.set(i, j);
  auto ann = tb.transpose().kernel_basis();  // rows y with y^t T = 0
  GF2Matrix N((int)ann.size(), m);
  for (size_t i = 0; i < ann.size(); ++i) N.row[i] = ann[i];
  GF2Matrix NA = N * A;
  Subspace out(A.cols);
  for (auto& k : NA.kernel_basis()) out.insert(k);
  return out;
}

Subspace Subspace::image_under(const GF2Matrix& A) const {
  Subspace out(A.rows);
  for (auto& b : basis_) out.insert(A.apply(b));
  return out;
}

bool Subspace::contains_subspace(const Subspace& o) const {
  for (auto& b : o.basis_)
    if (!contains(b)) return false;
  return true;
}

int dim_mod(const Subspace& U, const Subspace& W) {
  Subspace acc = W;
  int d = 0;
  for (auto& b : U.basis()) {
    if (!acc.contains(b)) {
      acc.insert(b);
      ++d;
    }
  }
  return d;
}

}  // namespace plk
