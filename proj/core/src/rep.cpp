#include "hallbridge/rep.hpp"

#include <algorithm>

#include "hallbridge/error.hpp"

namespace hallbridge {

namespace {

size_t idx(int i) { return static_cast<size_t>(i); }

}  // namespace

Rep RepSpace::zero_rep() const { return make_rep(quiver_.zero(), {}); }

Rep RepSpace::make_rep(const Weight& dim, std::vector<Matrix> maps) const {
  Rep m{dim, std::move(maps)};
  if (m.maps.empty())
    for (const auto& a : quiver_.arrows()) m.maps.emplace_back(dim[idx(a.target)], dim[idx(a.source)]);
  check(m);
  return m;
}

void RepSpace::check(const Rep& m) const {
  if (static_cast<int>(m.dim.size()) != quiver_.num_vertices() || !is_nonnegative(m.dim))
    throw ContractViolation("representation has a bad dimension vector");
  if (static_cast<int>(m.maps.size()) != quiver_.num_arrows()) throw ContractViolation("representation needs one matrix per arrow");
  for (int a = 0; a < quiver_.num_arrows(); ++a) {
    const auto& arr = quiver_.arrows()[idx(a)];
    const Matrix& mat = m.maps[idx(a)];
    if (mat.rows() != m.dim[idx(arr.target)] || mat.cols() != m.dim[idx(arr.source)])
      throw ContractViolation("matrix of arrow " + arr.label + " has the wrong shape");
    for (Elem e : mat.data())
      if (e >= field_.p()) throw ContractViolation("matrix entry not reduced mod q");
  }
}

Rep RepSpace::direct_sum(const Rep& x, const Rep& y) const {
  Rep s;
  s.dim = x.dim + y.dim;
  for (int a = 0; a < quiver_.num_arrows(); ++a) s.maps.push_back(hallbridge::direct_sum(x.maps[idx(a)], y.maps[idx(a)]));
  return s;
}

Rep RepSpace::projective(int i) const {
  Rep p;
  p.dim = quiver_.projective_dim(i);
  for (int a = 0; a < quiver_.num_arrows(); ++a) {
    const auto& arr = quiver_.arrows()[idx(a)];
    const auto& from = quiver_.paths(i, arr.source);
    const auto& to = quiver_.paths(i, arr.target);
    Matrix mat(static_cast<int>(to.size()), static_cast<int>(from.size()));
    for (size_t c = 0; c < from.size(); ++c) {
      auto ext = from[c];
      ext.push_back(a);
      auto it = std::find(to.begin(), to.end(), ext);
      mat(static_cast<int>(it - to.begin()), static_cast<int>(c)) = 1;
    }
    p.maps.push_back(std::move(mat));
  }
  return p;
}

Rep RepSpace::projective_sum(const Weight& mult) const {
  if (!is_nonnegative(mult)) throw ContractViolation("projective multiplicities must be nonnegative");
  Rep p = zero_rep();
  for (int i = 0; i < quiver_.num_vertices(); ++i)
    for (int k = 0; k < mult[idx(i)]; ++k) p = direct_sum(p, projective(i));
  return p;
}

Rep RepSpace::simple(int i) const { return make_rep(quiver_.unit(i), {}); }

Morphism RepSpace::zero_morphism(const Rep& from, const Rep& to) const {
  Morphism f;
  for (int i = 0; i < quiver_.num_vertices(); ++i) f.comps.emplace_back(to.dim[idx(i)], from.dim[idx(i)]);
  return f;
}

Morphism RepSpace::identity(const Rep& m) const {
  Morphism f;
  for (int i = 0; i < quiver_.num_vertices(); ++i) f.comps.push_back(Matrix::identity(m.dim[idx(i)]));
  return f;
}

Morphism RepSpace::compose(const Morphism& g, const Morphism& f) const {
  Morphism h;
  for (size_t i = 0; i < f.comps.size(); ++i) h.comps.push_back(multiply(field_, g.comps[i], f.comps[i]));
  return h;
}

Morphism RepSpace::add(const Morphism& f, const Morphism& g) const {
  Morphism h;
  for (size_t i = 0; i < f.comps.size(); ++i) h.comps.push_back(hallbridge::add(field_, f.comps[i], g.comps[i]));
  return h;
}

Morphism RepSpace::scale(Elem s, const Morphism& f) const {
  Morphism h;
  for (const auto& c : f.comps) h.comps.push_back(hallbridge::scale(field_, s, c));
  return h;
}

Morphism RepSpace::direct_sum(const Morphism& f, const Morphism& g) const {
  Morphism h;
  for (size_t i = 0; i < f.comps.size(); ++i) h.comps.push_back(hallbridge::direct_sum(f.comps[i], g.comps[i]));
  return h;
}

bool RepSpace::is_morphism(const Rep& from, const Rep& to, const Morphism& f) const {
  if (static_cast<int>(f.comps.size()) != quiver_.num_vertices()) return false;
  for (int i = 0; i < quiver_.num_vertices(); ++i)
    if (f.comps[idx(i)].rows() != to.dim[idx(i)] || f.comps[idx(i)].cols() != from.dim[idx(i)]) return false;
  for (int a = 0; a < quiver_.num_arrows(); ++a) {
    const auto& arr = quiver_.arrows()[idx(a)];
    if (multiply(field_, f.comps[idx(arr.target)], from.maps[idx(a)]) != multiply(field_, to.maps[idx(a)], f.comps[idx(arr.source)]))
      return false;
  }
  return true;
}

bool RepSpace::is_zero(const Morphism& f) const {
  return std::all_of(f.comps.begin(), f.comps.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool RepSpace::is_isomorphism(const Morphism& f) const {
  return std::all_of(f.comps.begin(), f.comps.end(), [this](const Matrix& m) { return is_invertible(field_, m); });
}

std::vector<Morphism> RepSpace::hom_basis(const Rep& m, const Rep& n) const {
  const int nv = quiver_.num_vertices();
  std::vector<int> offset(idx(nv) + 1, 0);
  for (int i = 0; i < nv; ++i) offset[idx(i + 1)] = offset[idx(i)] + n.dim[idx(i)] * m.dim[idx(i)];
  const int unknowns = offset[idx(nv)];
  auto var = [&](int vertex, int r, int c) { return offset[idx(vertex)] + r * m.dim[idx(vertex)] + c; };

  int eqs = 0;
  for (const auto& arr : quiver_.arrows()) eqs += n.dim[idx(arr.target)] * m.dim[idx(arr.source)];
  Matrix system(eqs, unknowns);
  int row = 0;
  for (int a = 0; a < quiver_.num_arrows(); ++a) {
    const auto& arr = quiver_.arrows()[idx(a)];
    const int s = arr.source, t = arr.target;
    const Matrix& ma = m.maps[idx(a)];
    const Matrix& na = n.maps[idx(a)];
    // (f_t M_a - N_a f_s)(r, c) = 0
    for (int r = 0; r < n.dim[idx(t)]; ++r) {
      for (int c = 0; c < m.dim[idx(s)]; ++c, ++row) {
        for (int k = 0; k < m.dim[idx(t)]; ++k)
          system(row, var(t, r, k)) = field_.add(system(row, var(t, r, k)), ma(k, c));
        for (int k = 0; k < n.dim[idx(s)]; ++k)
          system(row, var(s, k, c)) = field_.sub(system(row, var(s, k, c)), na(r, k));
      }
    }
  }
  Matrix null = nullspace(field_, system);
  std::vector<Morphism> basis;
  for (int b = 0; b < null.cols(); ++b) {
    Morphism f = zero_morphism(m, n);
    for (int i = 0; i < nv; ++i)
      for (int r = 0; r < n.dim[idx(i)]; ++r)
        for (int c = 0; c < m.dim[idx(i)]; ++c) f.comps[idx(i)](r, c) = null(var(i, r, c), b);
    basis.push_back(std::move(f));
  }
  return basis;
}

Morphism RepSpace::combine(const std::vector<Morphism>& basis, const std::vector<Elem>& coeffs, const Morphism& zero) const {
  Morphism f = zero;
  for (size_t b = 0; b < basis.size(); ++b) {
    if (coeffs[b] == 0) continue;
    for (size_t i = 0; i < f.comps.size(); ++i) {
      Matrix& dst = f.comps[i];
      const Matrix& src = basis[b].comps[i];
      for (int r = 0; r < dst.rows(); ++r)
        for (int c = 0; c < dst.cols(); ++c) dst(r, c) = field_.add(dst(r, c), field_.mul(coeffs[b], src(r, c)));
    }
  }
  return f;
}

void RepSpace::for_each_in_span(const std::vector<Morphism>& basis, const Morphism& zero,
                                const std::function<void(const Morphism&)>& fn) const {
  for_each_vector(field_, static_cast<int>(basis.size()),
                  [&](const std::vector<Elem>& coeffs) { fn(combine(basis, coeffs, zero)); });
}

bool RepSpace::is_invariant(const Rep& m, const SubspaceTuple& sub) const {
  std::vector<Elem> img;
  for (int a = 0; a < quiver_.num_arrows(); ++a) {
    const auto& arr = quiver_.arrows()[idx(a)];
    const Subspace& src = sub[idx(arr.source)];
    const Subspace& dst = sub[idx(arr.target)];
    const Matrix& mat = m.maps[idx(a)];
    for (int r = 0; r < src.dim(); ++r) {
      img.assign(idx(mat.rows()), 0);
      for (int k = 0; k < mat.rows(); ++k)
        for (int c = 0; c < mat.cols(); ++c) img[idx(k)] = field_.add(img[idx(k)], field_.mul(mat(k, c), src.basis()(r, c)));
      if (!dst.contains(field_, img)) return false;
    }
  }
  return true;
}

Rep RepSpace::subrep(const Rep& m, const SubspaceTuple& sub) const {
  Rep s;
  for (const auto& u : sub) s.dim.push_back(u.dim());
  std::vector<Elem> img;
  for (int a = 0; a < quiver_.num_arrows(); ++a) {
    const auto& arr = quiver_.arrows()[idx(a)];
    const Subspace& src = sub[idx(arr.source)];
    const Subspace& dst = sub[idx(arr.target)];
    const Matrix& mat = m.maps[idx(a)];
    Matrix out(dst.dim(), src.dim());
    for (int r = 0; r < src.dim(); ++r) {
      img.assign(idx(mat.rows()), 0);
      for (int k = 0; k < mat.rows(); ++k)
        for (int c = 0; c < mat.cols(); ++c) img[idx(k)] = field_.add(img[idx(k)], field_.mul(mat(k, c), src.basis()(r, c)));
      auto coords = dst.coordinates(img);
      for (int k = 0; k < dst.dim(); ++k) out(k, r) = coords[idx(k)];
    }
    s.maps.push_back(std::move(out));
  }
  return s;
}

Rep RepSpace::quotient(const Rep& m, const SubspaceTuple& sub) const {
  Rep qr;
  std::vector<std::vector<int>> comp;
  for (const auto& u : sub) {
    comp.push_back(u.complement_positions());
    qr.dim.push_back(static_cast<int>(comp.back().size()));
  }
  std::vector<Elem> img;
  for (int a = 0; a < quiver_.num_arrows(); ++a) {
    const auto& arr = quiver_.arrows()[idx(a)];
    const auto& src = comp[idx(arr.source)];
    const auto& dst = comp[idx(arr.target)];
    const Matrix& mat = m.maps[idx(a)];
    Matrix out(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (size_t c = 0; c < src.size(); ++c) {
      img.resize(idx(mat.rows()));
      for (int k = 0; k < mat.rows(); ++k) img[idx(k)] = mat(k, src[c]);
      sub[idx(arr.target)].reduce(field_, img);
      for (size_t k = 0; k < dst.size(); ++k) out(static_cast<int>(k), static_cast<int>(c)) = img[idx(dst[k])];
    }
    qr.maps.push_back(std::move(out));
  }
  return qr;
}

Morphism RepSpace::inclusion(const Rep& m, const SubspaceTuple& sub) const {
  (void)m;
  Morphism f;
  for (const auto& u : sub) f.comps.push_back(u.basis().transpose());
  return f;
}

SubspaceTuple RepSpace::kernel(const Rep& from, const Morphism& f) const {
  (void)from;
  SubspaceTuple k;
  for (const auto& c : f.comps) k.push_back(Subspace::column_span(field_, nullspace(field_, c)));
  return k;
}

SubspaceTuple RepSpace::image(const Rep& to, const Morphism& f) const {
  (void)to;
  SubspaceTuple im;
  for (const auto& c : f.comps) im.push_back(Subspace::column_span(field_, c));
  return im;
}

void RepSpace::for_each_subrep(const Rep& m, const Weight& dim, const std::function<void(const SubspaceTuple&)>& fn) const {
  const int nv = quiver_.num_vertices();
  if (!dominated_by(dim, m.dim) || !is_nonnegative(dim)) return;
  SubspaceTuple cur(idx(nv));
  std::vector<Elem> img;
  // Arrows whose later endpoint is vertex i get checked once i is chosen.
  std::vector<std::vector<int>> check_at(idx(nv));
  for (int a = 0; a < quiver_.num_arrows(); ++a) {
    const auto& arr = quiver_.arrows()[idx(a)];
    check_at[idx(std::max(arr.source, arr.target))].push_back(a);
  }
  std::function<void(int)> rec = [&](int i) {
    if (i == nv) {
      fn(cur);
      return;
    }
    for_each_subspace(field_, m.dim[idx(i)], dim[idx(i)], [&](const Subspace& u) {
      cur[idx(i)] = u;
      for (int a : check_at[idx(i)]) {
        const auto& arr = quiver_.arrows()[idx(a)];
        const Subspace& src = cur[idx(arr.source)];
        const Subspace& dst = cur[idx(arr.target)];
        const Matrix& mat = m.maps[idx(a)];
        for (int r = 0; r < src.dim(); ++r) {
          img.assign(idx(mat.rows()), 0);
          for (int k = 0; k < mat.rows(); ++k)
            for (int c = 0; c < mat.cols(); ++c) img[idx(k)] = field_.add(img[idx(k)], field_.mul(mat(k, c), src.basis()(r, c)));
          if (!dst.contains(field_, img)) return;
        }
      }
      rec(i + 1);
    });
  };
  rec(0);
}

void RepSpace::for_each_subrep(const Rep& m, const std::function<void(const SubspaceTuple&)>& fn) const {
  const int nv = quiver_.num_vertices();
  Weight dim = quiver_.zero();
  std::function<void(int)> rec = [&](int i) {
    if (i == nv) {
      for_each_subrep(m, dim, fn);
      return;
    }
    for (int d = 0; d <= m.dim[idx(i)]; ++d) {
      dim[idx(i)] = d;
      rec(i + 1);
    }
  };
  rec(0);
}

SubspaceTuple RepSpace::radical(const Rep& m) const {
  const int nv = quiver_.num_vertices();
  std::vector<Matrix> spans(idx(nv));
  for (int i = 0; i < nv; ++i) spans[idx(i)] = Matrix(0, m.dim[idx(i)]);
  for (int a = 0; a < quiver_.num_arrows(); ++a) {
    const auto& arr = quiver_.arrows()[idx(a)];
    spans[idx(arr.target)] = vstack(spans[idx(arr.target)], m.maps[idx(a)].transpose());
  }
  SubspaceTuple rad;
  for (int i = 0; i < nv; ++i) rad.emplace_back(field_, spans[idx(i)]);
  return rad;
}

Weight RepSpace::top_dim(const Rep& m) const {
  auto rad = radical(m);
  Weight t = m.dim;
  for (size_t i = 0; i < t.size(); ++i) t[i] -= rad[i].dim();
  return t;
}

Weight RepSpace::socle_dim(const Rep& m) const {
  const int nv = quiver_.num_vertices();
  std::vector<Matrix> stacked(idx(nv));
  for (int i = 0; i < nv; ++i) stacked[idx(i)] = Matrix(0, m.dim[idx(i)]);
  for (int a = 0; a < quiver_.num_arrows(); ++a) {
    const auto& arr = quiver_.arrows()[idx(a)];
    stacked[idx(arr.source)] = vstack(stacked[idx(arr.source)], m.maps[idx(a)]);
  }
  Weight s = m.dim;
  for (int i = 0; i < nv; ++i) s[idx(i)] -= rank(field_, stacked[idx(i)]);
  return s;
}

Weight RepSpace::projective_class(const Weight& mult) const {
  Weight w = quiver_.zero();
  for (int i = 0; i < quiver_.num_vertices(); ++i) w += mult[idx(i)] * quiver_.projective_dim(i);
  return w;
}

bool RepSpace::is_projective(const Rep& m) const { return projective_class(top_dim(m)) == m.dim; }

}  // namespace hallbridge
