// Exact linear algebra over the two-element field.
// Bit-packed dense rows; everything is deterministic (reduced echelon forms).
#pragma once

#include <cstdint>
#include <vector>
#include <string>
#include <stdexcept>

namespace plk {

// A vector over F2 of fixed length n, bit-packed.
struct GF2Vec {
  int n = 0;
  std::vector<std::uint64_t> w;

  GF2Vec() = default;
  explicit GF2Vec(int n_) : n(n_), w((n_ + 63) / 64, 0) {}

  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool v = true) {
    if (v) w[i >> 6] |= (std::uint64_t(1) << (i & 63));
    else   w[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  }
  void flip(int i) { w[i >> 6] ^= (std::uint64_t(1) << (i & 63)); }
  void xor_with(const GF2Vec& o) {
    for (size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
  }
  bool is_zero() const {
    for (auto x : w) if (x) return false;
    return true;
  }
  // Lowest set bit position, or -1.
  int leading() const;
  bool operator==(const GF2Vec& o) const { return n == o.n && w == o.w; }
};

// Matrix over F2, row-major bit-packed.
struct GF2Matrix {
  int rows = 0, cols = 0;
  std::vector<GF2Vec> row;

  GF2Matrix() = default;
  GF2Matrix(int r, int c) : rows(r), cols(c), row(r, GF2Vec(c)) {}

  static GF2Matrix identity(int n);

  bool get(int r, int c) const { return row[r].get(c); }
  void set(int r, int c, bool v = true) { row[r].set(c, v); }

  GF2Matrix operator*(const GF2Matrix& o) const;
  GF2Matrix operator+(const GF2Matrix& o) const;
  GF2Matrix transpose() const;
  GF2Vec apply(const GF2Vec& x) const;  // column-vector convention: (rows x cols) * (cols)

  bool is_zero() const;
  int rank() const;
  // Kernel basis in reduced echelon form (deterministic): one vector per free
  // column, unit at the free column, entries at pivot positions.
  std::vector<GF2Vec> kernel_basis() const;
  // Column space basis (echelonized columns).
  std::vector<GF2Vec> image_basis() const;
  // Solve A x = b; returns false if inconsistent.
  bool solve(const GF2Vec& b, GF2Vec& x) const;
};

// A subspace of F2^n kept as a reduced echelon basis (sorted by pivot).
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : n_(ambient) {}
  static Subspace full(int ambient);
  static Subspace span(int ambient, const std::vector<GF2Vec>& gens);

  int ambient() const { return n_; }
  int dim() const { return (int)basis_.size(); }
  const std::vector<GF2Vec>& basis() const { return basis_; }

  // Insert a vector (no-op if already contained). Keeps reduced echelon form.
  void insert(const GF2Vec& v);
  bool contains(const GF2Vec& v) const;
  // Reduce v modulo this subspace (canonical coset representative).
  GF2Vec reduce(GF2Vec v) const;

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  // {x : A x in T}, where A maps F2^n -> F2^m and T is a subspace of F2^m.
  static Subspace preimage(const GF2Matrix& A, const Subspace& T);
  Subspace image_under(const GF2Matrix& A) const;
  bool contains_subspace(const Subspace& o) const;

 private:
  int n_ = 0;
  std::vector<GF2Vec> basis_;  // reduced echelon, ascending pivots
};

// dim((U + W) / W) for W <= ambient, U arbitrary: rank of U modulo W.
int dim_mod(const Subspace& U, const Subspace& W);

}  // namespace plk
