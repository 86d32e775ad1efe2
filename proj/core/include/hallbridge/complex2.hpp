#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "hallbridge/engine.hpp"
#include "hallbridge/scalar.hpp"

namespace hallbridge {

/// A 2-cyclic complex c[1] <-> c[0] with d[i] : c[i] -> c[i+1 mod 2].
struct Complex2 {
  std::array<Rep, 2> c;
  std::array<Morphism, 2> d;
};

/// Isoclass of a complex of projectives: C_M + C*_N + K_P + K*_Q, with P and
/// Q given by their multiplicities of indecomposable projectives.
struct C2Class {
  ClassId m = 0;
  ClassId n = 0;
  Weight p;
  Weight q;

  friend bool operator==(const C2Class&, const C2Class&) = default;
  friend auto operator<=>(const C2Class&, const C2Class&) = default;
};

struct ExtensionCount {
  std::map<C2Class, std::int64_t> by_middle;  // |Ext^1(M, N)_L|
  std::int64_t total = 0;                     // |Ext^1(M, N)|
  int hom_dim = 0;                            // dim Hom(M, N) over F_q
};

/// Complexes of projectives over one RepEngine.
class ComplexSpace {
 public:
  explicit ComplexSpace(RepEngine& engine);

  RepEngine& engine() const { return engine_; }

  Complex2 zero() const;
  /// C_M = (Omega_M -> P_M by delta_M, zero back).
  Complex2 cone(ClassId m);
  /// C*_N, the shift of C_N.
  Complex2 cone_star(ClassId n);
  /// K_P = (P -> P by 1, zero back); P must be projective.
  Complex2 acyclic(const Rep& p) const;
  /// K*_P = (P -> P by 0, 1 back); P must be projective.
  Complex2 acyclic_star(const Rep& p) const;
  Complex2 shift(const Complex2& x) const;
  Complex2 direct_sum(const Complex2& x, const Complex2& y) const;
  Complex2 assemble(const C2Class& cls);

  /// dim c[0] - dim c[1].
  Weight class_of(const Complex2& x) const;
  Weight class_of(const C2Class& cls) const;
  /// Dimension vectors of c[0] and c[1].
  std::pair<Weight, Weight> component_dims(const C2Class& cls);

  /// Throws ContractViolation unless x is a complex of projectives.
  void check(const Complex2& x) const;

  /// (H0, H1) = (ker d0 / im d1, ker d1 / im d0).
  std::pair<ClassId, ClassId> homology(const Complex2& x);
  /// The decomposition of x; with verify, also confirms by a chain
  /// isomorphism search that the reassembled complex is isomorphic to x.
  C2Class decompose(const Complex2& x, bool verify = false);

  /// Chain maps x -> y.
  int hom_dim(const Complex2& x, const Complex2& y) const;
  /// Brute-force search for a chain isomorphism.
  bool isomorphic(const Complex2& x, const Complex2& y) const;

  /// Ext^1(m, n) in the category of 2-cyclic complexes, classified by middle
  /// term: extensions 0 -> n -> L -> m -> 0.
  ExtensionCount extensions(const Complex2& m, const Complex2& n);
  ExtensionCount extensions(const C2Class& m, const C2Class& n);

  /// [x] * [y] in the twisted Hall algebra of complexes, as (middle, coefficient).
  const std::vector<std::pair<C2Class, Scalar>>& twisted_product(const C2Class& x, const C2Class& y);

  /// Calls fn for every complex of projectives whose components have
  /// dimension at most bound.
  void for_each_complex(const Weight& bound, const std::function<void(const Complex2&)>& fn);
  /// Every class whose components have dimension at most bound.
  std::vector<C2Class> enumerate_classes(const Weight& bound);

  C2Class plain(ClassId x, ClassId y) const { return {x, y, engine_.quiver().zero(), engine_.quiver().zero()}; }

 private:
  RepEngine& engine_;
  Memo<std::pair<C2Class, C2Class>, std::vector<std::pair<C2Class, Scalar>>> products_;
};

}  // namespace hallbridge
