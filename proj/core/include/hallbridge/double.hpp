#pragma once

#include <tuple>
#include <vector>

#include "hallbridge/hall.hpp"

namespace hallbridge {

/// ([A]K_alpha)^+ ([B]K_beta)^-, positive factor on the left.
struct DoubleMonomial {
  HallBasis pos;
  HallBasis neg;

  friend bool operator==(const DoubleMonomial&, const DoubleMonomial&) = default;
  friend auto operator<=>(const DoubleMonomial&, const DoubleMonomial&) = default;
};

using DoubleElement = Combination<DoubleMonomial>;

/// One reversed-order term c * b^- a^+ of the commutator relation.
struct ReversedTerm {
  Scalar coeff;
  HallBasis neg;
  HallBasis pos;
};

struct CrossRelation {
  DoubleElement lhs;
  std::vector<ReversedTerm> rhs_raw;
};

/// The Drinfeld double as a normal-form algebra: monomials a^+ b^-, with
/// reversed products b^- a^+ rewritten through the commutator relation.
class DrinfeldDouble {
 public:
  explicit DrinfeldDouble(HallAlgebra& hall) : hall_(hall) {}

  HallAlgebra& hall() const { return hall_; }

  DoubleMonomial monomial(const HallBasis& pos, const HallBasis& neg) const { return {pos, neg}; }
  DoubleElement one() const;
  DoubleElement positive(const HallBasis& a) const;
  DoubleElement negative(const HallBasis& b) const;

  /// Both sides of the commutator relation for a, b, expanded from the
  /// coproduct and the pairing, before any rewriting.
  CrossRelation cross_relation_sides(const HallBasis& a, const HallBasis& b);

  /// b^- a^+ in normal form.
  const DoubleElement& normal_order(const HallBasis& b, const HallBasis& a);

  DoubleElement multiply(const DoubleElement& x, const DoubleElement& y);

  /// sum of c * normal_order over rhs_raw.
  DoubleElement ordered_rhs(const CrossRelation& rel);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  const DoubleElement& normal_order_rec(const HallBasis& b, const HallBasis& a, int depth, int limit);

  HallAlgebra& hall_;
  Memo<std::pair<HallBasis, HallBasis>, DoubleElement> memo_;
};

}  // namespace hallbridge
