#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hallbridge/complex2.hpp"
#include "hallbridge/double.hpp"
#include "hallbridge/hall.hpp"

namespace hallbridge {

/// K_alpha K*_beta [C_X + C*_Y].
struct NormalMonomial {
  Weight alpha;
  Weight beta;
  ClassId x = 0;
  ClassId y = 0;

  friend bool operator==(const NormalMonomial&, const NormalMonomial&) = default;
  friend auto operator<=>(const NormalMonomial&, const NormalMonomial&) = default;
};

using DHElement = Combination<NormalMonomial>;

enum class Sign { kPlus, kMinus };

struct MainCheck {
  DHElement lhs;
  DHElement rhs;
  /// Closed-form quadruple sums; only evaluated for plain a and b.
  std::optional<DHElement> lhs_closed;
  std::optional<DHElement> rhs_closed;
  bool equal = false;
};

/// The localized Hall algebra of 2-cyclic complexes of projectives, in the
/// normal-form basis K_alpha K*_beta [C_X + C*_Y].
class BridgelandAlgebra {
 public:
  /// K-commutation uses hall.conventions().kcommute.
  BridgelandAlgebra(ComplexSpace& complexes, HallAlgebra& hall);

  RepEngine& engine() const { return complexes_.engine(); }
  ComplexSpace& complexes() const { return complexes_; }
  HallAlgebra& hall() const { return hall_; }

  NormalMonomial monomial(Weight alpha, Weight beta, ClassId x, ClassId y) const {
    return {std::move(alpha), std::move(beta), x, y};
  }
  DHElement one();

  /// [C_X + C*_Y + K_T + K*_W] = v^{<W - T, X - Y>} K_T K*_W [C_X + C*_Y].
  std::pair<Scalar, NormalMonomial> normalize(const C2Class& cls);

  DHElement multiply(const DHElement& x, const DHElement& y);
  DHElement multiply(const NormalMonomial& x, const NormalMonomial& y);

  /// E_M = v^{<Omega_M, M>} K_{-Omega_M} [C_M].
  DHElement e(ClassId m);
  /// F_M = E_M^*.
  DHElement f(ClassId m);
  /// K_alpha, or K*_alpha when starred.
  DHElement kclass(const Weight& alpha, bool starred);
  /// The shift involution (alpha, beta, X, Y) -> (beta, alpha, Y, X).
  DHElement involution(const DHElement& x) const;

  /// [M]K_alpha -> E_M K_alpha (plus) or F_M K*_alpha (minus).
  DHElement embed(const HallBasis& a, Sign sign);
  DHElement embed(const HallElement& a, Sign sign);
  /// embed(a, +) * embed(b, -).
  DHElement m_expand(const HallBasis& a, const HallBasis& b);
  /// Image of a double-algebra element under a+ b- -> m_expand(a, b).
  DHElement from_double(const DoubleElement& x);

  /// (c0, c1) dimension vectors of the complexes behind a monomial; both are
  /// additive under multiplication, so m_expand images are homogeneous.
  std::pair<Weight, Weight> grade(const NormalMonomial& m);
  /// Rank over Q(v) of the m_expand matrix on all pairs from basis.
  int m_expand_rank(const std::vector<HallBasis>& basis);

  /// Closed form of [C_A][C*_B] (part 1) or [C*_B][C_A] (part 2).
  DHElement lemma32(int part, ClassId a, ClassId b);

  /// Both sides of the commutator relation for a, b, from first principles,
  /// and for plain a, b also the closed-form quadruple sums.
  MainCheck main_relation_check(const HallBasis& a, const HallBasis& b);

 private:
  Scalar v_pow(long long n) const { return Scalar::v_pow(engine().q(), n); }
  int euler(const Weight& x, const Weight& y) const { return engine().euler_form(x, y); }
  const Weight& omega(ClassId m);
  const Weight& cover(ClassId m);
  const Weight& dim(ClassId m) const { return engine().dim(m); }

  ComplexSpace& complexes_;
  HallAlgebra& hall_;
};

}  // namespace hallbridge
