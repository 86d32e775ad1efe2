#include "hallbridge/complex2.hpp"

#include <algorithm>
#include <set>

#include "hallbridge/error.hpp"

namespace hallbridge {

namespace {

size_t idx(int i) { return static_cast<size_t>(i); }

// Linear conditions on tuples of unknown vertex matrices ("slots"). Each slot
// holds one morphism between two representations.
class SlotSystem {
 public:
  struct Term {
    Elem coeff;
    Matrix left;
    int slot;
    int vertex;
    Matrix right;
  };

  SlotSystem(const Field& f, int nv) : f_(f), nv_(nv) {}

  int add_slot(const Weight& from, const Weight& to) {
    Slot s{from, to, {}};
    for (int v = 0; v < nv_; ++v) {
      s.offset.push_back(unknowns_);
      unknowns_ += to[idx(v)] * from[idx(v)];
    }
    slots_.push_back(std::move(s));
    return static_cast<int>(slots_.size()) - 1;
  }

  int unknowns() const { return unknowns_; }

  // sum_k coeff_k * left_k * S_k * right_k = 0, all products rows x cols.
  void add_equation(int rows, int cols, const std::vector<Term>& terms) {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        std::vector<Elem> row(idx(unknowns_), 0);
        for (const auto& t : terms) {
          const Slot& s = slots_[idx(t.slot)];
          const int sr = s.to[idx(t.vertex)], sc = s.from[idx(t.vertex)];
          for (int k = 0; k < sr; ++k) {
            Elem l = f_.mul(t.coeff, t.left(i, k));
            if (!l) continue;
            for (int c = 0; c < sc; ++c) {
              Elem r = t.right(c, j);
              if (!r) continue;
              auto& e = row[idx(s.offset[idx(t.vertex)] + k * sc + c)];
              e = f_.add(e, f_.mul(l, r));
            }
          }
        }
        rows_.push_back(std::move(row));
      }
  }

  // The slot must hold a morphism of representations x -> y.
  void add_morphism_conditions(int slot, const Quiver& quiver, const Rep& x, const Rep& y) {
    for (int a = 0; a < quiver.num_arrows(); ++a) {
      const auto& arr = quiver.arrows()[idx(a)];
      add_equation(y.dim[idx(arr.target)], x.dim[idx(arr.source)],
                   {{1, Matrix::identity(y.dim[idx(arr.target)]), slot, arr.target, x.maps[idx(a)]},
                    {f_.neg(1), y.maps[idx(a)], slot, arr.source, Matrix::identity(x.dim[idx(arr.source)])}});
    }
  }

  // Basis of the solution space, one vector per solution.
  std::vector<std::vector<Elem>> solutions() const {
    Matrix m(static_cast<int>(rows_.size()), unknowns_);
    for (size_t r = 0; r < rows_.size(); ++r)
      for (int c = 0; c < unknowns_; ++c) m(static_cast<int>(r), c) = rows_[r][idx(c)];
    Matrix null = nullspace(f_, m);
    std::vector<std::vector<Elem>> out;
    for (int b = 0; b < null.cols(); ++b) {
      std::vector<Elem> v(idx(unknowns_));
      for (int r = 0; r < unknowns_; ++r) v[idx(r)] = null(r, b);
      out.push_back(std::move(v));
    }
    return out;
  }

  bool satisfies(const std::vector<Elem>& v) const {
    for (const auto& row : rows_) {
      Elem s = 0;
      for (int c = 0; c < unknowns_; ++c) s = f_.add(s, f_.mul(row[idx(c)], v[idx(c)]));
      if (s) return false;
    }
    return true;
  }

  Morphism unflatten(int slot, const std::vector<Elem>& v) const {
    const Slot& s = slots_[idx(slot)];
    Morphism m;
    for (int vert = 0; vert < nv_; ++vert) {
      Matrix mat(s.to[idx(vert)], s.from[idx(vert)]);
      for (int r = 0; r < mat.rows(); ++r)
        for (int c = 0; c < mat.cols(); ++c) mat(r, c) = v[idx(s.offset[idx(vert)] + r * mat.cols() + c)];
      m.comps.push_back(std::move(mat));
    }
    return m;
  }

  void flatten(int slot, const Morphism& m, std::vector<Elem>& v) const {
    const Slot& s = slots_[idx(slot)];
    for (int vert = 0; vert < nv_; ++vert) {
      const Matrix& mat = m.comps[idx(vert)];
      for (int r = 0; r < mat.rows(); ++r)
        for (int c = 0; c < mat.cols(); ++c) v[idx(s.offset[idx(vert)] + r * mat.cols() + c)] = mat(r, c);
    }
  }

 private:
  struct Slot {
    Weight from;
    Weight to;
    std::vector<int> offset;
  };

  const Field& f_;
  int nv_;
  int unknowns_ = 0;
  std::vector<Slot> slots_;
  std::vector<std::vector<Elem>> rows_;
};

// [[a, b], [0, d]] with a : X -> X', b : Y -> X', d : Y -> Y'.
Matrix upper_block(const Matrix& a, const Matrix& b, const Matrix& d) {
  Matrix m(a.rows() + d.rows(), a.cols() + d.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (int c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  for (int r = 0; r < d.rows(); ++r)
    for (int c = 0; c < d.cols(); ++c) m(a.rows() + r, a.cols() + c) = d(r, c);
  return m;
}

Morphism negate_morphism(const Field& f, const Morphism& m) {
  Morphism out;
  for (const auto& c : m.comps) out.comps.push_back(negate(f, c));
  return out;
}

long long checked_pow(long long base, long long e, long long cap) {
  long long r = 1;
  for (long long k = 0; k < e; ++k) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

constexpr long long kMaxEnumeration = 4'000'000;

}  // namespace

ComplexSpace::ComplexSpace(RepEngine& engine) : engine_(engine) {}

Complex2 ComplexSpace::zero() const {
  const RepSpace& s = engine_.space();
  Rep z = s.zero_rep();
  return {{z, z}, {s.zero_morphism(z, z), s.zero_morphism(z, z)}};
}

Complex2 ComplexSpace::cone(ClassId m) {
  const Resolution& r = engine_.resolution(m);
  const RepSpace& s = engine_.space();
  Complex2 x;
  x.c[0] = r.cover;
  x.c[1] = r.syzygy;
  x.d[1] = r.inclusion;
  x.d[0] = s.zero_morphism(r.cover, r.syzygy);
  return x;
}

Complex2 ComplexSpace::cone_star(ClassId n) { return shift(cone(n)); }

Complex2 ComplexSpace::acyclic(const Rep& p) const {
  const RepSpace& s = engine_.space();
  if (!s.is_projective(p)) throw ContractViolation("K_P needs a projective P");
  return {{p, p}, {s.zero_morphism(p, p), s.identity(p)}};
}

Complex2 ComplexSpace::acyclic_star(const Rep& p) const {
  const RepSpace& s = engine_.space();
  if (!s.is_projective(p)) throw ContractViolation("K*_P needs a projective P");
  return {{p, p}, {s.identity(p), s.zero_morphism(p, p)}};
}

Complex2 ComplexSpace::shift(const Complex2& x) const {
  const Field& f = engine_.field();
  return {{x.c[1], x.c[0]}, {negate_morphism(f, x.d[1]), negate_morphism(f, x.d[0])}};
}

Complex2 ComplexSpace::direct_sum(const Complex2& x, const Complex2& y) const {
  const RepSpace& s = engine_.space();
  Complex2 z;
  for (int i = 0; i < 2; ++i) {
    z.c[idx(i)] = s.direct_sum(x.c[idx(i)], y.c[idx(i)]);
    z.d[idx(i)] = s.direct_sum(x.d[idx(i)], y.d[idx(i)]);
  }
  return z;
}

Complex2 ComplexSpace::assemble(const C2Class& cls) {
  const RepSpace& s = engine_.space();
  Complex2 x = direct_sum(cone(cls.m), cone_star(cls.n));
  x = direct_sum(x, acyclic(s.projective_sum(cls.p)));
  return direct_sum(x, acyclic_star(s.projective_sum(cls.q)));
}

Weight ComplexSpace::class_of(const Complex2& x) const { return x.c[0].dim - x.c[1].dim; }

Weight ComplexSpace::class_of(const C2Class& cls) const { return engine_.dim(cls.m) - engine_.dim(cls.n); }

std::pair<Weight, Weight> ComplexSpace::component_dims(const C2Class& cls) {
  const RepSpace& s = engine_.space();
  const Resolution& rm = engine_.resolution(cls.m);
  const Resolution& rn = engine_.resolution(cls.n);
  Weight acyc = s.projective_class(cls.p) + s.projective_class(cls.q);
  return {rm.cover.dim + rn.syzygy.dim + acyc, rm.syzygy.dim + rn.cover.dim + acyc};
}

void ComplexSpace::check(const Complex2& x) const {
  const RepSpace& s = engine_.space();
  for (int i = 0; i < 2; ++i) {
    s.check(x.c[idx(i)]);
    if (!s.is_projective(x.c[idx(i)])) throw ContractViolation("complex component is not projective");
    if (!s.is_morphism(x.c[idx(i)], x.c[idx(1 - i)], x.d[idx(i)])) throw ContractViolation("differential is not a morphism");
  }
  if (!s.is_zero(s.compose(x.d[1], x.d[0])) || !s.is_zero(s.compose(x.d[0], x.d[1])))
    throw ContractViolation("differentials do not compose to zero");
}

namespace {

// ker(out) / im(in) at a component with incoming in and outgoing out.
Rep homology_at(const RepSpace& s, const Rep& c, const Morphism& in, const Morphism& out) {
  const Field& f = s.field();
  SubspaceTuple ker = s.kernel(c, out);
  SubspaceTuple im = s.image(c, in);
  Rep k = s.subrep(c, ker);
  SubspaceTuple inner;
  for (size_t v = 0; v < ker.size(); ++v) {
    Matrix rows(im[v].dim(), ker[v].dim());
    for (int r = 0; r < im[v].dim(); ++r) {
      auto coords = ker[v].coordinates(im[v].basis().row(r));
      for (int j = 0; j < ker[v].dim(); ++j) rows(r, j) = coords[idx(j)];
    }
    inner.emplace_back(f, rows);
  }
  return s.quotient(k, inner);
}

}  // namespace

std::pair<ClassId, ClassId> ComplexSpace::homology(const Complex2& x) {
  const RepSpace& s = engine_.space();
  return {engine_.classify(homology_at(s, x.c[0], x.d[1], x.d[0])), engine_.classify(homology_at(s, x.c[1], x.d[0], x.d[1]))};
}

C2Class ComplexSpace::decompose(const Complex2& x, bool verify) {
  const RepSpace& s = engine_.space();
  auto [m, n] = homology(x);
  Weight top0 = s.top_dim(s.subrep(x.c[0], s.kernel(x.c[0], x.d[0])));
  Weight top1 = s.top_dim(s.subrep(x.c[1], s.kernel(x.c[1], x.d[1])));
  C2Class cls{m, n, top0 - engine_.resolution(m).cover_mult, top1 - engine_.resolution(n).cover_mult};
  if (!is_nonnegative(cls.p) || !is_nonnegative(cls.q))
    throw InternalInconsistency("kernel of a differential does not contain the projective cover of the homology");
  auto [d0, d1] = component_dims(cls);
  if (d0 != x.c[0].dim || d1 != x.c[1].dim) throw InternalInconsistency("decomposition does not match component dimensions");
  if (verify && !isomorphic(x, assemble(cls))) throw InternalInconsistency("reassembled complex is not isomorphic to the input");
  return cls;
}

namespace {

// Chain maps x -> y as a slot system with slots 0 (x0 -> y0) and 1 (x1 -> y1).
SlotSystem chain_map_system(const RepSpace& s, const Complex2& x, const Complex2& y) {
  const Quiver& q = s.quiver();
  const Field& f = s.field();
  SlotSystem sys(f, q.num_vertices());
  for (int i = 0; i < 2; ++i) sys.add_slot(x.c[idx(i)].dim, y.c[idx(i)].dim);
  for (int i = 0; i < 2; ++i) sys.add_morphism_conditions(i, q, x.c[idx(i)], y.c[idx(i)]);
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    // s_j dx_i = dy_i s_i
    for (int v = 0; v < q.num_vertices(); ++v) {
      const int rows = y.c[idx(j)].dim[idx(v)], cols = x.c[idx(i)].dim[idx(v)];
      sys.add_equation(rows, cols,
                       {{1, Matrix::identity(rows), j, v, x.d[idx(i)].comps[idx(v)]},
                        {f.neg(1), y.d[idx(i)].comps[idx(v)], i, v, Matrix::identity(cols)}});
    }
  }
  return sys;
}

}  // namespace

int ComplexSpace::hom_dim(const Complex2& x, const Complex2& y) const {
  return static_cast<int>(chain_map_system(engine_.space(), x, y).solutions().size());
}

bool ComplexSpace::isomorphic(const Complex2& x, const Complex2& y) const {
  if (x.c[0].dim != y.c[0].dim || x.c[1].dim != y.c[1].dim) return false;
  const Field& f = engine_.field();
  SlotSystem sys = chain_map_system(engine_.space(), x, y);
  auto basis = sys.solutions();
  if (checked_pow(f.p(), static_cast<long long>(basis.size()), kMaxEnumeration) > kMaxEnumeration)
    throw ResourceError("chain map space too large for an isomorphism search");
  bool found = false;
  std::vector<Elem> v(idx(sys.unknowns()));
  for_each_vector(f, static_cast<int>(basis.size()), [&](const std::vector<Elem>& coeffs) {
    if (found) return;
    std::fill(v.begin(), v.end(), 0);
    for (size_t b = 0; b < basis.size(); ++b)
      if (coeffs[b])
        for (size_t k = 0; k < v.size(); ++k) v[k] = f.add(v[k], f.mul(coeffs[b], basis[b][k]));
    for (int slot = 0; slot < 2; ++slot)
      for (const auto& c : sys.unflatten(slot, v).comps)
        if (!is_invertible(f, c)) return;
    found = true;
  });
  return found;
}

ExtensionCount ComplexSpace::extensions(const Complex2& m, const Complex2& n) {
  const RepSpace& s = engine_.space();
  const Quiver& q = s.quiver();
  const Field& f = s.field();
  const int nv = q.num_vertices();

  // f_i : m_i -> n_{i+1}; the middle term has d_i = [[dn_i, f_i], [0, dm_i]].
  SlotSystem sys(f, nv);
  sys.add_slot(m.c[0].dim, n.c[1].dim);
  sys.add_slot(m.c[1].dim, n.c[0].dim);
  sys.add_morphism_conditions(0, q, m.c[0], n.c[1]);
  sys.add_morphism_conditions(1, q, m.c[1], n.c[0]);
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    // dn_j f_i + f_j dm_i = 0 : m_i -> n_i
    for (int v = 0; v < nv; ++v) {
      const int rows = n.c[idx(i)].dim[idx(v)], cols = m.c[idx(i)].dim[idx(v)];
      sys.add_equation(rows, cols,
                       {{1, n.d[idx(j)].comps[idx(v)], i, v, Matrix::identity(cols)},
                        {1, Matrix::identity(rows), j, v, m.d[idx(i)].comps[idx(v)]}});
    }
  }
  auto cocycles = sys.solutions();

  // Coboundaries dn_i h_i - h_{i+1} dm_i for h_i : m_i -> n_i.
  Matrix bounds(0, sys.unknowns());
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    for (const Morphism& h : s.hom_basis(m.c[idx(i)], n.c[idx(i)])) {
      std::vector<Elem> v(idx(sys.unknowns()), 0);
      sys.flatten(i, s.compose(n.d[idx(i)], h), v);
      sys.flatten(j, negate_morphism(f, s.compose(h, m.d[idx(j)])), v);
      if (!sys.satisfies(v)) throw InternalInconsistency("coboundary is not a cocycle");
      Matrix row(1, sys.unknowns());
      for (int k = 0; k < sys.unknowns(); ++k) row(0, k) = v[idx(k)];
      bounds = vstack(bounds, row);
    }
  }
  Subspace span(f, bounds);
  std::vector<std::vector<Elem>> reps;
  for (const auto& z : cocycles) {
    if (span.contains(f, z)) continue;
    reps.push_back(z);
    Matrix row(1, sys.unknowns());
    for (int k = 0; k < sys.unknowns(); ++k) row(0, k) = z[idx(k)];
    span = Subspace(f, vstack(span.basis(), row));
  }
  if (checked_pow(f.p(), static_cast<long long>(reps.size()), kMaxEnumeration) > kMaxEnumeration)
    throw ResourceError("extension group too large to enumerate");

  ExtensionCount out;
  out.hom_dim = hom_dim(m, n);
  std::vector<Elem> v(idx(sys.unknowns()));
  for_each_vector(f, static_cast<int>(reps.size()), [&](const std::vector<Elem>& coeffs) {
    std::fill(v.begin(), v.end(), 0);
    for (size_t b = 0; b < reps.size(); ++b)
      if (coeffs[b])
        for (size_t k = 0; k < v.size(); ++k) v[k] = f.add(v[k], f.mul(coeffs[b], reps[b][k]));
    Morphism f0 = sys.unflatten(0, v), f1 = sys.unflatten(1, v);
    const Morphism* fs[2] = {&f0, &f1};
    Complex2 mid;
    for (int i = 0; i < 2; ++i) {
      const int j = 1 - i;
      mid.c[idx(i)] = s.direct_sum(n.c[idx(i)], m.c[idx(i)]);
      Morphism d;
      for (int vert = 0; vert < nv; ++vert)
        d.comps.push_back(upper_block(n.d[idx(i)].comps[idx(vert)], fs[i]->comps[idx(vert)], m.d[idx(i)].comps[idx(vert)]));
      mid.d[idx(i)] = std::move(d);
      (void)j;
    }
    ++out.by_middle[decompose(mid)];
    ++out.total;
  });
  return out;
}

ExtensionCount ComplexSpace::extensions(const C2Class& m, const C2Class& n) { return extensions(assemble(m), assemble(n)); }

const std::vector<std::pair<C2Class, Scalar>>& ComplexSpace::twisted_product(const C2Class& x, const C2Class& y) {
  return products_.get_or_compute({x, y}, [&] {
    Complex2 cx = assemble(x), cy = assemble(y);
    ExtensionCount ext = extensions(cx, cy);
    const Quiver& q = engine_.quiver();
    int e = q.euler(cx.c[0].dim, cy.c[0].dim) + q.euler(cx.c[1].dim, cy.c[1].dim);
    mpz_class hom;
    mpz_ui_pow_ui(hom.get_mpz_t(), static_cast<unsigned long>(engine_.q()), static_cast<unsigned long>(ext.hom_dim));
    Scalar twist = Scalar::v_pow(engine_.q(), e);
    std::vector<std::pair<C2Class, Scalar>> out;
    for (const auto& [cls, count] : ext.by_middle) {
      mpq_class c(mpz_class(static_cast<long>(count)), hom);
      c.canonicalize();
      out.emplace_back(cls, twist * Scalar(c));
    }
    return out;
  });
}

void ComplexSpace::for_each_complex(const Weight& bound, const std::function<void(const Complex2&)>& fn) {
  const RepSpace& s = engine_.space();
  const Field& f = s.field();
  const int nv = engine_.quiver().num_vertices();
  std::vector<Weight> mults;
  Weight m = engine_.quiver().zero();
  const int cap = total(bound);
  while (true) {
    if (dominated_by(s.projective_class(m), bound)) mults.push_back(m);
    int v = 0;
    while (v < nv && ++m[idx(v)] > cap) m[idx(v++)] = 0;
    if (v == nv) break;
  }
  for (const auto& m0 : mults)
    for (const auto& m1 : mults) {
      Rep p0 = s.projective_sum(m0), p1 = s.projective_sum(m1);
      auto b1 = s.hom_basis(p1, p0);
      auto b0 = s.hom_basis(p0, p1);
      if (checked_pow(f.p(), static_cast<long long>(b1.size() + b0.size()), kMaxEnumeration) > kMaxEnumeration)
        throw ResourceError("too many complexes to enumerate");
      Morphism z10 = s.zero_morphism(p1, p0), z01 = s.zero_morphism(p0, p1);
      s.for_each_in_span(b1, z10, [&](const Morphism& d1) {
        s.for_each_in_span(b0, z01, [&](const Morphism& d0) {
          if (!s.is_zero(s.compose(d0, d1)) || !s.is_zero(s.compose(d1, d0))) return;
          fn(Complex2{{p0, p1}, {d0, d1}});
        });
      });
    }
}

std::vector<C2Class> ComplexSpace::enumerate_classes(const Weight& bound) {
  const RepSpace& s = engine_.space();
  const int nv = engine_.quiver().num_vertices();
  std::vector<Weight> mults;
  Weight m = engine_.quiver().zero();
  const int cap = total(bound);
  while (true) {
    if (dominated_by(s.projective_class(m), bound)) mults.push_back(m);
    int v = 0;
    while (v < nv && ++m[idx(v)] > cap) m[idx(v++)] = 0;
    if (v == nv) break;
  }
  auto objects = engine_.enumerate_isoclasses(bound);
  std::vector<C2Class> out;
  for (ClassId x : objects)
    for (ClassId y : objects)
      for (const auto& p : mults)
        for (const auto& q : mults) {
          C2Class cls{x, y, p, q};
          auto [d0, d1] = component_dims(cls);
          if (dominated_by(d0, bound) && dominated_by(d1, bound)) out.push_back(cls);
        }
  return out;
}

}  // namespace hallbridge
