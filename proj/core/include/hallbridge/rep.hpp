#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hallbridge/gf.hpp"
#include "hallbridge/quiver.hpp"

namespace hallbridge {

/// A finite-dimensional representation: one matrix per arrow, shaped
/// dim(target) x dim(source).
struct Rep {
  Weight dim;
  std::vector<Matrix> maps;

  friend bool operator==(const Rep&, const Rep&) = default;
};

/// A morphism of representations: one matrix per vertex, shaped
/// dim_N(i) x dim_M(i).
struct Morphism {
  std::vector<Matrix> comps;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// A subrepresentation given by one subspace per vertex.
using SubspaceTuple = std::vector<Subspace>;

/// Linear algebra of representations of a fixed quiver over a fixed field.
class RepSpace {
 public:
  RepSpace(Quiver quiver, int q) : quiver_(std::move(quiver)), field_(q) {}

  const Quiver& quiver() const { return quiver_; }
  const Field& field() const { return field_; }
  int q() const { return field_.p(); }

  Rep zero_rep() const;
  Rep make_rep(const Weight& dim, std::vector<Matrix> maps) const;
  void check(const Rep& m) const;

  Rep direct_sum(const Rep& x, const Rep& y) const;
  /// The indecomposable projective P_i with basis the paths out of i.
  Rep projective(int i) const;
  /// P = sum_i P_i^{mult_i}.
  Rep projective_sum(const Weight& mult) const;
  /// The simple S_i.
  Rep simple(int i) const;

  Morphism zero_morphism(const Rep& from, const Rep& to) const;
  Morphism identity(const Rep& m) const;
  Morphism compose(const Morphism& g, const Morphism& f) const;  // g after f
  Morphism add(const Morphism& f, const Morphism& g) const;
  Morphism scale(Elem s, const Morphism& f) const;
  Morphism direct_sum(const Morphism& f, const Morphism& g) const;
  bool is_morphism(const Rep& from, const Rep& to, const Morphism& f) const;
  bool is_zero(const Morphism& f) const;
  bool is_isomorphism(const Morphism& f) const;

  /// Basis of Hom(M, N): all vertex tuples with f_t M_a = N_a f_s.
  std::vector<Morphism> hom_basis(const Rep& m, const Rep& n) const;
  int hom_dim(const Rep& m, const Rep& n) const { return static_cast<int>(hom_basis(m, n).size()); }
  /// Calls fn on every element of the span of basis.
  void for_each_in_span(const std::vector<Morphism>& basis, const Morphism& zero,
                        const std::function<void(const Morphism&)>& fn) const;
  Morphism combine(const std::vector<Morphism>& basis, const std::vector<Elem>& coeffs, const Morphism& zero) const;

  bool is_invariant(const Rep& m, const SubspaceTuple& sub) const;
  Rep subrep(const Rep& m, const SubspaceTuple& sub) const;
  Rep quotient(const Rep& m, const SubspaceTuple& sub) const;
  /// Inclusion of subrep(m, sub) into m.
  Morphism inclusion(const Rep& m, const SubspaceTuple& sub) const;

  SubspaceTuple kernel(const Rep& from, const Morphism& f) const;
  SubspaceTuple image(const Rep& to, const Morphism& f) const;

  /// Calls fn for every subrepresentation of m with the given dimension vector.
  void for_each_subrep(const Rep& m, const Weight& dim, const std::function<void(const SubspaceTuple&)>& fn) const;
  /// Calls fn for every subrepresentation of m.
  void for_each_subrep(const Rep& m, const std::function<void(const SubspaceTuple&)>& fn) const;

  /// Radical: sum of arrow images at each vertex.
  SubspaceTuple radical(const Rep& m) const;
  /// dim top(M) = dim M - dim rad M.
  Weight top_dim(const Rep& m) const;
  /// dim soc(M): common kernel of outgoing arrows.
  Weight socle_dim(const Rep& m) const;
  /// A representation is projective iff it has the dimension of its projective cover.
  bool is_projective(const Rep& m) const;
  /// K0 class of sum_i P_i^{mult_i}.
  Weight projective_class(const Weight& mult) const;

 private:
  Quiver quiver_;
  Field field_;
};

}  // namespace hallbridge
