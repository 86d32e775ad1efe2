#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hallbridge/combination.hpp"
#include "hallbridge/engine.hpp"

namespace hallbridge {

/// [M] K_alpha. A plain Hall basis element has alpha = 0.
struct HallBasis {
  ClassId m = 0;
  Weight alpha;

  friend bool operator==(const HallBasis&, const HallBasis&) = default;
  friend auto operator<=>(const HallBasis&, const HallBasis&) = default;
};

using HallElement = Combination<HallBasis>;
using TensorBasis = std::pair<HallBasis, HallBasis>;
using TensorElement = Combination<TensorBasis>;

/// The bilinear form used at each place where the printed formulas are
/// ambiguous between the Euler form and its symmetrization.
struct Conventions {
  Bracket kcommute = Bracket::kSymmetric;  // K_alpha [M] = v^{b(alpha, M)} [M] K_alpha
  Bracket pairing = Bracket::kSymmetric;   // phi(K_alpha, K_beta) = v^{b(alpha, beta)}
  Bracket tensor = Bracket::kSymmetric;    // twist of the product on H (x) H

  friend bool operator==(const Conventions&, const Conventions&) = default;
};

std::string to_string(Bracket b);
Bracket parse_bracket(const std::string& text);
/// "kcommute=symmetric,pairing=angle,tensor=symmetric".
std::string to_string(const Conventions& c);
/// Applies "site=form,..." overrides on top of base.
Conventions parse_conventions(const std::string& text, Conventions base = {});

/// The extended Ringel-Hall algebra of one RepEngine, with its coproduct,
/// counit and Hopf pairing.
class HallAlgebra {
 public:
  HallAlgebra(RepEngine& engine, Conventions conventions = {});

  RepEngine& engine() const { return engine_; }
  const Conventions& conventions() const { return conv_; }
  Scalar v_pow(long long n) const { return Scalar::v_pow(engine_.q(), n); }
  int bracket(Bracket b, const Weight& x, const Weight& y) const { return engine_.quiver().bracket(b, x, y); }

  HallBasis basis(ClassId m) const { return {m, engine_.quiver().zero()}; }
  HallBasis basis(ClassId m, Weight alpha) const { return {m, std::move(alpha)}; }
  HallElement k_element(const Weight& alpha) { return HallElement(basis(engine_.zero_class(), alpha)); }
  HallElement one() { return k_element(engine_.quiver().zero()); }

  /// Untwisted product; every term must have alpha = 0.
  HallElement diamond(const HallElement& x, const HallElement& y);
  /// Twisted product with K-commutation.
  HallElement multiply(const HallElement& x, const HallElement& y);

  TensorElement coproduct(const HallBasis& b);
  TensorElement coproduct(const HallElement& x);
  Scalar counit(const HallElement& x);
  Scalar pairing(const HallBasis& x, const HallBasis& y);
  Scalar pairing(const HallElement& x, const HallElement& y);

  /// Green's coproduct on the Ringel-Hall algebra without K's:
  /// [L] -> sum v^{<M,N>} g^L_{MN} [M] (x) [N].
  TensorElement reduced_coproduct(const HallElement& x);

  /// (u1 (x) u2)(w1 (x) w2) = v^{c(u2, w1)} (u1 w1) (x) (u2 w2), where c is the
  /// tensor convention on the classes of the [M] parts. With twisted = false the
  /// product is the ordinary one on the tensor square of the extended algebra.
  TensorElement tensor_multiply(const TensorElement& x, const TensorElement& y, bool twisted);
  /// sum phi(x1, y1) phi(x2, y2).
  Scalar tensor_pairing(const TensorElement& x, const TensorElement& y);
  using Triple = std::tuple<HallBasis, HallBasis, HallBasis>;
  /// (Delta (x) id) Delta and (id (x) Delta) Delta as triple tensors.
  Combination<Triple> coassoc_left(const HallBasis& l);
  Combination<Triple> coassoc_right(const HallBasis& l);

  /// [M] <> [N] on classes, as (L, |Ext^1(M,N)_L| / |Hom(M,N)|).
  const std::vector<std::pair<ClassId, mpq_class>>& class_product(ClassId m, ClassId n);

 private:
  RepEngine& engine_;
  Conventions conv_;
  Memo<std::pair<ClassId, ClassId>, std::vector<std::pair<ClassId, mpq_class>>> products_;
};

}  // namespace hallbridge
