#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hallbridge {

using Elem = std::uint8_t;

/// The prime field F_p, p < 256.
class Field {
 public:
  explicit Field(int p);

  int p() const { return p_; }
  Elem add(Elem x, Elem y) const { return static_cast<Elem>((x + y) % p_); }
  Elem sub(Elem x, Elem y) const { return static_cast<Elem>((x + p_ - y) % p_); }
  Elem mul(Elem x, Elem y) const { return static_cast<Elem>((x * y) % p_); }
  Elem neg(Elem x) const { return static_cast<Elem>((p_ - x) % p_); }
  Elem inv(Elem x) const;
  Elem reduce(long long x) const { return static_cast<Elem>(((x % p_) + p_) % p_); }

 private:
  int p_;
  std::vector<Elem> inverses_;
};

bool is_prime(long long n);

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols), 0) {}

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(int r, int c) const { return data_[static_cast<size_t>(r * cols_ + c)]; }
  Elem& operator()(int r, int c) { return data_[static_cast<size_t>(r * cols_ + c)]; }

  std::span<const Elem> row(int r) const { return {data_.data() + r * cols_, static_cast<size_t>(cols_)}; }
  std::span<Elem> row(int r) { return {data_.data() + r * cols_, static_cast<size_t>(cols_)}; }
  const std::vector<Elem>& data() const { return data_; }

  bool is_zero() const;
  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix& x, const Matrix& y) {
    if (auto c = x.rows_ <=> y.rows_; c != 0) return c;
    if (auto c = x.cols_ <=> y.cols_; c != 0) return c;
    return x.data_ <=> y.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Elem> data_;
};

Matrix multiply(const Field& f, const Matrix& x, const Matrix& y);
Matrix add(const Field& f, const Matrix& x, const Matrix& y);
Matrix subtract(const Field& f, const Matrix& x, const Matrix& y);
Matrix scale(const Field& f, Elem s, const Matrix& x);
Matrix negate(const Field& f, const Matrix& x);

/// Block matrix [[a, b], [c, d]]; absent blocks are zero and shapes are inferred.
Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);
Matrix direct_sum(const Matrix& x, const Matrix& y);
Matrix hstack(const Matrix& x, const Matrix& y);
Matrix vstack(const Matrix& x, const Matrix& y);

struct Echelon {
  Matrix reduced;           // reduced row echelon form
  std::vector<int> pivots;  // pivot column of each nonzero row
  int rank() const { return static_cast<int>(pivots.size()); }
};

Echelon rref(const Field& f, Matrix m);
int rank(const Field& f, const Matrix& m);

/// Basis of {x : m x = 0} as the columns of the result (cols() == nullity).
Matrix nullspace(const Field& f, const Matrix& m);

/// A subspace of F^n stored as a reduced row echelon basis (rows).
/// Equal subspaces have equal representations.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : basis_(0, ambient) {}
  Subspace(const Field& f, const Matrix& spanning_rows);

  static Subspace column_span(const Field& f, const Matrix& m) { return Subspace(f, m.transpose()); }

  int ambient() const { return basis_.cols(); }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  /// Reduces vec modulo the subspace in place; the result vanishes at every pivot.
  void reduce(const Field& f, std::span<Elem> vec) const;
  bool contains(const Field& f, std::span<const Elem> vec) const;
  /// Coordinates of a vector of the subspace in the echelon basis.
  std::vector<Elem> coordinates(std::span<const Elem> vec) const;
  /// Non-pivot positions; the matching unit vectors span a complement.
  std::vector<int> complement_positions() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  Matrix basis_;
  std::vector<int> pivots_;
};

/// Calls fn for every k-dimensional subspace of F^n, in a fixed order.
void for_each_subspace(const Field& f, int n, int k, const std::function<void(const Subspace&)>& fn);

/// Number of k-dimensional subspaces of F_q^n.
long long gaussian_binomial(int n, int k, int q);

/// Calls fn for every coefficient vector of F_p^k, in lexicographic order.
void for_each_vector(const Field& f, int k, const std::function<void(const std::vector<Elem>&)>& fn);

/// The invertible n x n matrices, enumerated once per (n, p) and cached.
const std::vector<Matrix>& general_linear_group(const Field& f, int n);

/// Exact |GL(n, q)|, saturating at the int64 range.
long long gl_order(int n, int q);

bool is_invertible(const Field& f, const Matrix& m);
Matrix inverse(const Field& f, const Matrix& m);

}  // namespace hallbridge
