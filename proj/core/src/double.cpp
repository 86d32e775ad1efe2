#include "hallbridge/double.hpp"

#include "hallbridge/error.hpp"

namespace hallbridge {

DoubleElement DrinfeldDouble::one() const {
  HallBasis u = hall_.basis(hall_.engine().zero_class());
  return DoubleElement({u, u});
}

DoubleElement DrinfeldDouble::positive(const HallBasis& a) const {
  return DoubleElement({a, hall_.basis(hall_.engine().zero_class())});
}

DoubleElement DrinfeldDouble::negative(const HallBasis& b) const {
  return DoubleElement({hall_.basis(hall_.engine().zero_class()), b});
}

CrossRelation DrinfeldDouble::cross_relation_sides(const HallBasis& a, const HallBasis& b) {
  CrossRelation rel;
  TensorElement da = hall_.coproduct(a);
  TensorElement db = hall_.coproduct(b);
  for (const auto& [ta, ca] : da)
    for (const auto& [tb, cb] : db) {
      // phi(a2, b1) a1^+ b2^-
      if (ta.second.m == tb.first.m) rel.lhs.add({ta.first, tb.second}, ca * cb * hall_.pairing(ta.second, tb.first));
      // phi(a1, b2) b1^- a2^+
      if (ta.first.m == tb.second.m) rel.rhs_raw.push_back({ca * cb * hall_.pairing(ta.first, tb.second), tb.first, ta.second});
    }
  return rel;
}

DoubleElement DrinfeldDouble::ordered_rhs(const CrossRelation& rel) {
  DoubleElement out;
  for (const auto& t : rel.rhs_raw) out += t.coeff * normal_order(t.neg, t.pos);
  return out;
}

const DoubleElement& DrinfeldDouble::normal_order(const HallBasis& b, const HallBasis& a) {
  const RepEngine& e = hall_.engine();
  int limit = total(e.dim(a.m)) + total(e.dim(b.m)) + 1;
  return normal_order_rec(b, a, 0, limit);
}

const DoubleElement& DrinfeldDouble::normal_order_rec(const HallBasis& b, const HallBasis& a, int depth, int limit) {
  if (depth > limit) throw InternalInconsistency("normal ordering did not terminate");
  return memo_.get_or_compute({b, a}, [&] {
    CrossRelation rel = cross_relation_sides(a, b);
    // The term with a1 = 0 and b2 = 0 is the product being solved for; every
    // other reversed term has strictly smaller Hall degrees.
    Scalar lead;
    DoubleElement out = rel.lhs;
    for (const auto& t : rel.rhs_raw) {
      if (t.neg == b && t.pos == a) {
        lead += t.coeff;
        continue;
      }
      out -= t.coeff * normal_order_rec(t.neg, t.pos, depth + 1, limit);
    }
    if (lead.is_zero()) throw InternalInconsistency("commutator relation has no leading term");
    out *= lead.inverse();
    return out;
  });
}

DoubleElement DrinfeldDouble::multiply(const DoubleElement& x, const DoubleElement& y) {
  DoubleElement out;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) {
      const DoubleElement& mid = normal_order(mx.neg, my.pos);
      for (const auto& [mm, cm] : mid) {
        HallElement pos = hall_.multiply(HallElement(mx.pos), HallElement(mm.pos));
        HallElement neg = hall_.multiply(HallElement(mm.neg), HallElement(my.neg));
        Scalar c = cx * cy * cm;
        for (const auto& [p, cp] : pos)
          for (const auto& [n, cn] : neg) out.add({p, n}, c * cp * cn);
      }
    }
  return out;
}

}  // namespace hallbridge
