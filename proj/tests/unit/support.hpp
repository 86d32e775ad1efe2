#pragma once

// Shared fixtures and brute-force oracles. The oracles use only matrix
// arithmetic and exhaustive enumeration, never the engine's own routines.

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "hallbridge/dh.hpp"
#include "hallbridge/double.hpp"
#include "hallbridge/hall.hpp"

namespace hb_test {

using namespace hallbridge;

inline Quiver a1() { return Quiver::validate({{"1"}, {}}); }
inline Quiver a2() { return Quiver::validate({{"1", "2"}, {{"1", "2", "a"}}}); }
inline Quiver a3() { return Quiver::validate({{"1", "2", "3"}, {{"1", "2", "a"}, {"2", "3", "b"}}}); }
inline Quiver kronecker() { return Quiver::validate({{"1", "2"}, {{"1", "2", "a"}, {"1", "2", "b"}}}); }

/// Everything built on one quiver and q, default conventions.
struct Lab {
  RepEngine e;
  HallAlgebra h;
  ComplexSpace cs;
  DrinfeldDouble dd;
  BridgelandAlgebra dh;

  Lab(Quiver quiver, int q, Conventions c = {}) : e(std::move(quiver), q), h(e, c), cs(e), dd(h), dh(cs, h) {}

  // Names for A2: 1 -> 2.
  ClassId zero() { return e.zero_class(); }
  ClassId s1() { return e.classify(e.space().simple(0)); }
  ClassId s2() { return e.classify(e.space().simple(1)); }
  ClassId p1() { return e.classify(e.space().projective(0)); }
  ClassId sum(ClassId x, ClassId y) { return e.classify(e.space().direct_sum(e.rep(x), e.rep(y))); }
  Weight w(std::initializer_list<int> xs) const { return Weight(xs); }
  Scalar v(long long n) const { return Scalar::v_pow(e.q(), n); }
};

/// A2 representation k^d1 -> k^d2 whose matrix has rank r in normal form.
inline Rep a2_rep(const RepEngine& e, int d1, int d2, int r) {
  Matrix m(d2, d1);
  for (int i = 0; i < r; ++i) m(i, i) = 1;
  return e.space().make_rep({d1, d2}, {m});
}

/// Calls fn for every matrix of the given shape over F_q.
inline void for_each_matrix(int q, int rows, int cols, const std::function<void(const Matrix&)>& fn) {
  Matrix m(rows, cols);
  const int n = rows * cols;
  std::vector<int> c(static_cast<size_t>(n), 0);
  while (true) {
    for (int k = 0; k < n; ++k) m(k / cols, k % cols) = static_cast<Elem>(c[static_cast<size_t>(k)]);
    fn(m);
    int k = 0;
    while (k < n && ++c[static_cast<size_t>(k)] == q) c[static_cast<size_t>(k++)] = 0;
    if (k == n) return;
  }
}

inline Matrix naive_multiply(int q, const Matrix& x, const Matrix& y) {
  Matrix out(x.rows(), y.cols());
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < y.cols(); ++c) {
      int s = 0;
      for (int k = 0; k < x.cols(); ++k) s += x(r, k) * y(k, c);
      out(r, c) = static_cast<Elem>(s % q);
    }
  return out;
}

/// Square matrix invertible by brute force: some matrix multiplies it to 1.
inline bool naive_invertible(int q, const Matrix& x) {
  if (x.rows() != x.cols()) return false;
  if (x.rows() == 0) return true;
  bool found = false;
  for_each_matrix(q, x.rows(), x.cols(), [&](const Matrix& y) {
    if (!found && naive_multiply(q, x, y) == Matrix::identity(x.rows())) found = true;
  });
  return found;
}

/// Calls fn for every vertex tuple of matrices f_i : M_i -> N_i.
inline void for_each_tuple(int q, const Weight& dm, const Weight& dn, const std::function<void(const std::vector<Matrix>&)>& fn) {
  std::vector<Matrix> cur(dm.size());
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == dm.size()) {
      fn(cur);
      return;
    }
    for_each_matrix(q, dn[i], dm[i], [&](const Matrix& f) {
      cur[i] = f;
      rec(i + 1);
    });
  };
  rec(0);
}

inline bool natural(int q, const Quiver& quiver, const Rep& m, const Rep& n, const std::vector<Matrix>& f) {
  for (int a = 0; a < quiver.num_arrows(); ++a) {
    const auto& arr = quiver.arrows()[static_cast<size_t>(a)];
    if (naive_multiply(q, f[static_cast<size_t>(arr.target)], m.maps[static_cast<size_t>(a)]) !=
        naive_multiply(q, n.maps[static_cast<size_t>(a)], f[static_cast<size_t>(arr.source)]))
      return false;
  }
  return true;
}

/// |Hom(M, N)| by enumeration of all vertex tuples.
inline long long brute_hom_count(int q, const Quiver& quiver, const Rep& m, const Rep& n) {
  long long count = 0;
  for_each_tuple(q, m.dim, n.dim, [&](const std::vector<Matrix>& f) {
    if (natural(q, quiver, m, n, f)) ++count;
  });
  return count;
}

/// |Iso(M, N)| by enumeration.
inline long long brute_iso_count(int q, const Quiver& quiver, const Rep& m, const Rep& n) {
  if (m.dim != n.dim) return 0;
  long long count = 0;
  for_each_tuple(q, m.dim, n.dim, [&](const std::vector<Matrix>& f) {
    if (!natural(q, quiver, m, n, f)) return;
    for (const auto& x : f)
      if (!naive_invertible(q, x)) return;
    ++count;
  });
  return count;
}

/// Number of isoclasses of dimension d: orbits of all matrix tuples under
/// base change, counted with a union-find over the tuple space.
inline int brute_orbit_count(int q, const Quiver& quiver, const Weight& d) {
  std::vector<std::vector<Matrix>> tuples{{}};
  for (const auto& arr : quiver.arrows()) {
    std::vector<std::vector<Matrix>> next;
    for (const auto& t : tuples)
      for_each_matrix(q, d[static_cast<size_t>(arr.target)], d[static_cast<size_t>(arr.source)], [&](const Matrix& m) {
        auto u = t;
        u.push_back(m);
        next.push_back(std::move(u));
      });
    tuples = std::move(next);
  }
  std::map<std::vector<Matrix>, size_t> index;
  for (size_t i = 0; i < tuples.size(); ++i) index.emplace(tuples[i], i);
  std::vector<size_t> parent(tuples.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };

  std::vector<std::vector<Matrix>> groups(d.size());
  for (size_t i = 0; i < d.size(); ++i)
    for_each_matrix(q, d[i], d[i], [&](const Matrix& g) {
      if (naive_invertible(q, g)) groups[i].push_back(g);
    });
  std::vector<std::vector<Matrix>> inverses(d.size());
  for (size_t i = 0; i < d.size(); ++i)
    for (const auto& g : groups[i])
      for (const auto& h : groups[i])
        if (naive_multiply(q, g, h) == Matrix::identity(d[i])) inverses[i].push_back(h);

  std::vector<size_t> pick(d.size(), 0);
  while (true) {
    for (size_t t = 0; t < tuples.size(); ++t) {
      std::vector<Matrix> moved;
      for (int a = 0; a < quiver.num_arrows(); ++a) {
        const auto& arr = quiver.arrows()[static_cast<size_t>(a)];
        auto s = static_cast<size_t>(arr.source), tg = static_cast<size_t>(arr.target);
        moved.push_back(naive_multiply(q, naive_multiply(q, groups[tg][pick[tg]], tuples[t][static_cast<size_t>(a)]),
                                       inverses[s][pick[s]]));
      }
      parent[find(t)] = find(index.at(moved));
    }
    size_t v = 0;
    while (v < d.size() && ++pick[v] == groups[v].size()) pick[v++] = 0;
    if (v == d.size()) break;
  }
  std::set<size_t> roots;
  for (size_t i = 0; i < tuples.size(); ++i) roots.insert(find(i));
  return static_cast<int>(roots.size());
}

/// Every vector of F_q^n.
inline std::vector<std::vector<int>> all_vectors(int q, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<size_t>(n), 0);
  while (true) {
    out.push_back(v);
    int k = 0;
    while (k < n && ++v[static_cast<size_t>(k)] == q) v[static_cast<size_t>(k++)] = 0;
    if (k == n) return out;
  }
}

/// All subspaces of F_q^n, as vector sets.
inline std::vector<std::set<std::vector<int>>> brute_subspaces(int q, int n) {
  const auto vecs = all_vectors(q, n);
  // Spans of all subsets of size <= n suffice to reach every subspace.
  std::set<std::set<std::vector<int>>> seen;
  std::function<void(size_t, std::vector<std::vector<int>>&)> rec = [&](size_t start, std::vector<std::vector<int>>& gens) {
    std::set<std::vector<int>> span{std::vector<int>(static_cast<size_t>(n), 0)};
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto x : std::vector<std::vector<int>>(span.begin(), span.end()))
        for (const auto& g : gens)
          for (int c = 1; c < q; ++c) {
            auto y = x;
            for (int i = 0; i < n; ++i) y[static_cast<size_t>(i)] = (y[static_cast<size_t>(i)] + c * g[static_cast<size_t>(i)]) % q;
            if (span.insert(y).second) grew = true;
          }
    }
    seen.insert(span);
    if (static_cast<int>(gens.size()) == n) return;
    for (size_t i = start; i < vecs.size(); ++i) {
      gens.push_back(vecs[i]);
      rec(i + 1, gens);
      gens.pop_back();
    }
  };
  std::vector<std::vector<int>> gens;
  rec(0, gens);
  return {seen.begin(), seen.end()};
}

/// Rank of an A2 arrow restricted/induced on a sub or quotient, computed by
/// counting the image vectors. Only used for A2 reps.
inline int image_dim(int q, int count) {
  int d = 0;
  for (int c = count; c > 1; c /= q) ++d;
  return d;
}

/// Hall numbers of an A2 representation by brute force: invariant subspace
/// pairs (U1, U2) with M(U1) in U2, keyed by ((d1, d2, rank) of the
/// quotient, (d1, d2, rank) of the sub). Over A2 an isoclass is its
/// dimension vector plus the rank of its one map.
using A2Type = std::tuple<int, int, int>;
inline std::map<std::pair<A2Type, A2Type>, long long> brute_a2_hall(int q, const Rep& l) {
  const Matrix& a = l.maps[0];
  auto apply = [&](const std::vector<int>& x) {
    std::vector<int> y(static_cast<size_t>(a.rows()), 0);
    for (int r = 0; r < a.rows(); ++r) {
      int s = 0;
      for (int c = 0; c < a.cols(); ++c) s += a(r, c) * x[static_cast<size_t>(c)];
      y[static_cast<size_t>(r)] = s % q;
    }
    return y;
  };
  std::map<std::pair<A2Type, A2Type>, long long> out;
  for (const auto& u1 : brute_subspaces(q, l.dim[0]))
    for (const auto& u2 : brute_subspaces(q, l.dim[1])) {
      std::set<std::vector<int>> img_sub;
      bool invariant = true;
      for (const auto& x : u1) {
        auto y = apply(x);
        if (!u2.count(y)) invariant = false;
        img_sub.insert(y);
      }
      if (!invariant) continue;
      // Quotient rank: dim(A(V1) + U2) - dim U2, via cosets.
      std::set<std::vector<int>> sum;
      for (const auto& x : all_vectors(q, l.dim[0])) {
        auto y = apply(x);
        for (const auto& z : u2) {
          auto s = y;
          for (size_t i = 0; i < s.size(); ++i) s[i] = (s[i] + z[i]) % q;
          sum.insert(s);
        }
      }
      const int du1 = image_dim(q, static_cast<int>(u1.size())), du2 = image_dim(q, static_cast<int>(u2.size()));
      const int sub_rank = image_dim(q, static_cast<int>(img_sub.size()));
      const int quot_rank = image_dim(q, static_cast<int>(sum.size())) - du2;
      ++out[{{l.dim[0] - du1, l.dim[1] - du2, quot_rank}, {du1, du2, sub_rank}}];
    }
  return out;
}

inline A2Type a2_type(const RepEngine& e, ClassId id) {
  const Rep& r = e.rep(id);
  return {r.dim[0], r.dim[1], rank(e.field(), r.maps[0])};
}

}  // namespace hb_test
