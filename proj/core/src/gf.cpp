#include "hallbridge/gf.hpp"

#include <map>
#include <mutex>

#include "hallbridge/error.hpp"

namespace hallbridge {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(int p) : p_(p), inverses_(static_cast<size_t>(p), 0) {
  if (p >= 256 || !is_prime(p)) throw ContractViolation("field characteristic must be a prime below 256");
  for (int x = 1; x < p; ++x)
    for (int y = 1; y < p; ++y)
      if ((x * y) % p == 1) inverses_[static_cast<size_t>(x)] = static_cast<Elem>(y);
}

Elem Field::inv(Elem x) const {
  if (x == 0) throw ZeroDivisor();
  return inverses_[x];
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  for (Elem e : data_)
    if (e != 0) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix multiply(const Field& f, const Matrix& x, const Matrix& y) {
  if (x.cols() != y.rows()) throw ContractViolation("matrix shape mismatch in multiply");
  Matrix z(x.rows(), y.cols());
  const int p = f.p();
  for (int r = 0; r < x.rows(); ++r) {
    for (int k = 0; k < x.cols(); ++k) {
      int xv = x(r, k);
      if (xv == 0) continue;
      for (int c = 0; c < y.cols(); ++c) z(r, c) = static_cast<Elem>((z(r, c) + xv * y(k, c)) % p);
    }
  }
  return z;
}

Matrix add(const Field& f, const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw ContractViolation("matrix shape mismatch in add");
  Matrix z(x.rows(), x.cols());
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < x.cols(); ++c) z(r, c) = f.add(x(r, c), y(r, c));
  return z;
}

Matrix subtract(const Field& f, const Matrix& x, const Matrix& y) { return add(f, x, negate(f, y)); }

Matrix scale(const Field& f, Elem s, const Matrix& x) {
  Matrix z(x.rows(), x.cols());
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < x.cols(); ++c) z(r, c) = f.mul(s, x(r, c));
  return z;
}

Matrix negate(const Field& f, const Matrix& x) { return scale(f, f.neg(1), x); }

Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  int top = std::max(a.rows(), b.rows());
  int bottom = std::max(c.rows(), d.rows());
  int left = std::max(a.cols(), c.cols());
  int right = std::max(b.cols(), d.cols());
  Matrix m(top + bottom, left + right);
  auto put = [&m](const Matrix& blk, int r0, int c0) {
    for (int r = 0; r < blk.rows(); ++r)
      for (int c = 0; c < blk.cols(); ++c) m(r0 + r, c0 + c) = blk(r, c);
  };
  put(a, 0, 0);
  put(b, 0, left);
  put(c, top, 0);
  put(d, top, left);
  return m;
}

Matrix direct_sum(const Matrix& x, const Matrix& y) { return block2x2(x, Matrix(x.rows(), y.cols()), Matrix(y.rows(), x.cols()), y); }

Matrix hstack(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows()) throw ContractViolation("hstack row mismatch");
  Matrix m(x.rows(), x.cols() + y.cols());
  for (int r = 0; r < x.rows(); ++r) {
    for (int c = 0; c < x.cols(); ++c) m(r, c) = x(r, c);
    for (int c = 0; c < y.cols(); ++c) m(r, x.cols() + c) = y(r, c);
  }
  return m;
}

Matrix vstack(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.cols()) throw ContractViolation("vstack column mismatch");
  Matrix m(x.rows() + y.rows(), x.cols());
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < x.cols(); ++c) m(r, c) = x(r, c);
  for (int r = 0; r < y.rows(); ++r)
    for (int c = 0; c < y.cols(); ++c) m(x.rows() + r, c) = y(r, c);
  return m;
}

Echelon rref(const Field& f, Matrix m) {
  Echelon e;
  int lead = 0;
  for (int c = 0; c < m.cols() && lead < m.rows(); ++c) {
    int pivot = -1;
    for (int r = lead; r < m.rows(); ++r)
      if (m(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != lead)
      for (int k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(lead, k));
    Elem s = f.inv(m(lead, c));
    for (int k = 0; k < m.cols(); ++k) m(lead, k) = f.mul(s, m(lead, k));
    for (int r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, c) == 0) continue;
      Elem factor = m(r, c);
      for (int k = 0; k < m.cols(); ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(lead, k)));
    }
    e.pivots.push_back(c);
    ++lead;
  }
  e.reduced = std::move(m);
  return e;
}

int rank(const Field& f, const Matrix& m) { return rref(f, m).rank(); }

Matrix nullspace(const Field& f, const Matrix& m) {
  Echelon e = rref(f, m);
  const int n = m.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int c : e.pivots) is_pivot[static_cast<size_t>(c)] = true;
  Matrix basis(n, n - e.rank());
  int col = 0;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    basis(free, col) = 1;
    for (int r = 0; r < e.rank(); ++r) basis(e.pivots[static_cast<size_t>(r)], col) = f.neg(e.reduced(r, free));
    ++col;
  }
  return basis;
}

Subspace::Subspace(const Field& f, const Matrix& spanning_rows) {
  Echelon e = rref(f, spanning_rows);
  basis_ = Matrix(e.rank(), spanning_rows.cols());
  for (int r = 0; r < e.rank(); ++r)
    for (int c = 0; c < spanning_rows.cols(); ++c) basis_(r, c) = e.reduced(r, c);
  pivots_ = std::move(e.pivots);
}

void Subspace::reduce(const Field& f, std::span<Elem> vec) const {
  for (int r = 0; r < dim(); ++r) {
    Elem s = vec[static_cast<size_t>(pivots_[static_cast<size_t>(r)])];
    if (s == 0) continue;
    auto row = basis_.row(r);
    for (int c = 0; c < ambient(); ++c) vec[static_cast<size_t>(c)] = f.sub(vec[static_cast<size_t>(c)], f.mul(s, row[static_cast<size_t>(c)]));
  }
}

bool Subspace::contains(const Field& f, std::span<const Elem> vec) const {
  std::vector<Elem> tmp(vec.begin(), vec.end());
  reduce(f, tmp);
  for (Elem e : tmp)
    if (e != 0) return false;
  return true;
}

std::vector<Elem> Subspace::coordinates(std::span<const Elem> vec) const {
  std::vector<Elem> out(static_cast<size_t>(dim()));
  for (int r = 0; r < dim(); ++r) out[static_cast<size_t>(r)] = vec[static_cast<size_t>(pivots_[static_cast<size_t>(r)])];
  return out;
}

std::vector<int> Subspace::complement_positions() const {
  std::vector<bool> is_pivot(static_cast<size_t>(ambient()), false);
  for (int c : pivots_) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<int> out;
  for (int c = 0; c < ambient(); ++c)
    if (!is_pivot[static_cast<size_t>(c)]) out.push_back(c);
  return out;
}

namespace {

void choose_pivots(int n, int k, int start, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(cur.size()) == k) {
    fn(cur);
    return;
  }
  for (int c = start; c <= n - (k - static_cast<int>(cur.size())); ++c) {
    cur.push_back(c);
    choose_pivots(n, k, c + 1, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

void for_each_subspace(const Field& f, int n, int k, const std::function<void(const Subspace&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> cur;
  choose_pivots(n, k, 0, cur, [&](const std::vector<int>& pivots) {
    // Free entries sit right of each pivot in columns that are not pivots.
    std::vector<std::pair<int, int>> free;
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    for (int r = 0; r < k; ++r)
      for (int c = pivots[static_cast<size_t>(r)] + 1; c < n; ++c)
        if (!is_pivot[static_cast<size_t>(c)]) free.emplace_back(r, c);
    Matrix m(k, n);
    for (int r = 0; r < k; ++r) m(r, pivots[static_cast<size_t>(r)]) = 1;
    for_each_vector(f, static_cast<int>(free.size()), [&](const std::vector<Elem>& vals) {
      for (size_t i = 0; i < free.size(); ++i) m(free[i].first, free[i].second) = vals[i];
      fn(Subspace(f, m));
    });
  });
}

long long gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  long long num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    long long a = 1, b = 1;
    for (int j = 0; j < n - i; ++j) a *= q;
    for (int j = 0; j < i + 1; ++j) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

void for_each_vector(const Field& f, int k, const std::function<void(const std::vector<Elem>&)>& fn) {
  std::vector<Elem> v(static_cast<size_t>(k), 0);
  while (true) {
    fn(v);
    int i = k - 1;
    while (i >= 0) {
      if (++v[static_cast<size_t>(i)] < f.p()) break;
      v[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) return;
  }
}

bool is_invertible(const Field& f, const Matrix& m) { return m.rows() == m.cols() && rank(f, m) == m.rows(); }

Matrix inverse(const Field& f, const Matrix& m) {
  if (m.rows() != m.cols()) throw ContractViolation("inverse of a non-square matrix");
  const int n = m.rows();
  Echelon e = rref(f, hstack(m, Matrix::identity(n)));
  if (e.rank() < n || (n > 0 && e.pivots[static_cast<size_t>(n - 1)] >= n)) throw ZeroDivisor();
  Matrix inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

long long gl_order(int n, int q) {
  long long qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  long long order = 1;
  long long qi = 1;
  for (int i = 0; i < n; ++i) {
    long long term = qn - qi;
    if (order > (1LL << 62) / std::max(term, 1LL)) return 1LL << 62;
    order *= term;
    qi *= q;
  }
  return order;
}

const std::vector<Matrix>& general_linear_group(const Field& f, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<Matrix>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(f.p(), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (gl_order(n, f.p()) > 2'000'000) throw ResourceError("GL(" + std::to_string(n) + ") too large to enumerate");
  std::vector<Matrix> group;
  Matrix m(n, n);
  for_each_vector(f, n * n, [&](const std::vector<Elem>& vals) {
    for (int i = 0; i < n * n; ++i) m(i / std::max(n, 1), i % std::max(n, 1)) = vals[static_cast<size_t>(i)];
    if (is_invertible(f, m)) group.push_back(m);
  });
  return cache.emplace(key, std::move(group)).first->second;
}

}  // namespace hallbridge
