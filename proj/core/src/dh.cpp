#include "hallbridge/dh.hpp"

#include <map>
#include <tuple>

#include "hallbridge/error.hpp"

namespace hallbridge {

namespace {

using TripleCounts = std::map<std::tuple<ClassId, ClassId, ClassId>, std::int64_t>;

// g^L_{XYZ} = sum_M g^M_{XY} g^L_{MZ}, keyed by (X, Y, Z).
TripleCounts triple_table(RepEngine& e, ClassId l) {
  TripleCounts out;
  for (const auto& [mz, g] : e.hall_table(l).counts)
    for (const auto& [xy, h] : e.hall_table(mz.first).counts) out[{xy.first, xy.second, mz.second}] += g * h;
  return out;
}

}  // namespace

BridgelandAlgebra::BridgelandAlgebra(ComplexSpace& complexes, HallAlgebra& hall) : complexes_(complexes), hall_(hall) {
  if (&complexes.engine() != &hall.engine()) throw ContractViolation("complexes and Hall algebra must share one engine");
}

const Weight& BridgelandAlgebra::omega(ClassId m) { return engine().resolution(m).syzygy.dim; }

const Weight& BridgelandAlgebra::cover(ClassId m) { return engine().resolution(m).cover.dim; }

DHElement BridgelandAlgebra::one() {
  const Weight z = engine().quiver().zero();
  ClassId o = engine().zero_class();
  return DHElement(monomial(z, z, o, o));
}

std::pair<Scalar, NormalMonomial> BridgelandAlgebra::normalize(const C2Class& cls) {
  const RepSpace& s = engine().space();
  Weight t = s.projective_class(cls.p), w = s.projective_class(cls.q);
  Scalar c = v_pow(euler(w - t, dim(cls.m) - dim(cls.n)));
  return {c, monomial(std::move(t), std::move(w), cls.m, cls.n)};
}

DHElement BridgelandAlgebra::multiply(const NormalMonomial& x, const NormalMonomial& y) {
  const Bracket b = hall_.conventions().kcommute;
  const Quiver& q = engine().quiver();
  // [C] K_a K*_b = v^{-b(a, C) + b(b, C)} K_a K*_b [C]
  const Weight cx = dim(x.x) - dim(x.y);
  Scalar pre = v_pow(-q.bracket(b, y.alpha, cx) + q.bracket(b, y.beta, cx));
  const Weight alpha = x.alpha + y.alpha, beta = x.beta + y.beta;
  DHElement out;
  for (const auto& [mid, c] : complexes_.twisted_product(complexes_.plain(x.x, x.y), complexes_.plain(y.x, y.y))) {
    auto [s, m] = normalize(mid);
    out.add(monomial(alpha + m.alpha, beta + m.beta, m.x, m.y), pre * c * s);
  }
  return out;
}

DHElement BridgelandAlgebra::multiply(const DHElement& x, const DHElement& y) {
  DHElement out;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) out += (cx * cy) * multiply(mx, my);
  return out;
}

DHElement BridgelandAlgebra::e(ClassId m) {
  const Weight& om = omega(m);
  DHElement out;
  out.add(monomial(-om, engine().quiver().zero(), m, engine().zero_class()), v_pow(euler(om, dim(m))));
  return out;
}

DHElement BridgelandAlgebra::f(ClassId m) { return involution(e(m)); }

DHElement BridgelandAlgebra::kclass(const Weight& alpha, bool starred) {
  const Weight z = engine().quiver().zero();
  ClassId o = engine().zero_class();
  return DHElement(starred ? monomial(z, alpha, o, o) : monomial(alpha, z, o, o));
}

DHElement BridgelandAlgebra::involution(const DHElement& x) const {
  DHElement out;
  for (const auto& [m, c] : x) out.add(monomial(m.beta, m.alpha, m.y, m.x), c);
  return out;
}

DHElement BridgelandAlgebra::embed(const HallBasis& a, Sign sign) {
  if (sign == Sign::kPlus) return multiply(e(a.m), kclass(a.alpha, false));
  return multiply(f(a.m), kclass(a.alpha, true));
}

DHElement BridgelandAlgebra::embed(const HallElement& a, Sign sign) {
  DHElement out;
  for (const auto& [b, c] : a) out += c * embed(b, sign);
  return out;
}

DHElement BridgelandAlgebra::m_expand(const HallBasis& a, const HallBasis& b) {
  return multiply(embed(a, Sign::kPlus), embed(b, Sign::kMinus));
}

DHElement BridgelandAlgebra::from_double(const DoubleElement& x) {
  DHElement out;
  for (const auto& [m, c] : x) out += c * m_expand(m.pos, m.neg);
  return out;
}

std::pair<Weight, Weight> BridgelandAlgebra::grade(const NormalMonomial& m) {
  const Weight k = m.alpha + m.beta;
  return {cover(m.x) + omega(m.y) + k, omega(m.x) + cover(m.y) + k};
}

int BridgelandAlgebra::m_expand_rank(const std::vector<HallBasis>& basis) {
  std::map<std::pair<Weight, Weight>, std::vector<DHElement>> blocks;
  for (const auto& a : basis)
    for (const auto& b : basis) {
      DHElement img = m_expand(a, b);
      if (img.empty()) continue;
      auto g = grade(img.begin()->first);
      for (const auto& [m, c] : img)
        if (grade(m) != g) throw InternalInconsistency("m_expand image is not homogeneous");
      blocks[g].push_back(std::move(img));
    }
  int total_rank = 0;
  for (const auto& [g, cols] : blocks) {
    std::map<NormalMonomial, size_t> index;
    for (const auto& col : cols)
      for (const auto& [m, c] : col) index.emplace(m, index.size());
    std::vector<std::vector<Scalar>> rows;
    for (const auto& col : cols) {
      std::vector<Scalar> row(index.size());
      for (const auto& [m, c] : col) row[index.at(m)] = c;
      rows.push_back(std::move(row));
    }
    total_rank += rank(std::move(rows));
  }
  return total_rank;
}

DHElement BridgelandAlgebra::lemma32(int part, ClassId a, ClassId b) {
  RepEngine& eng = engine();
  DHElement out;
  if (part == 1) {
    // [C_A][C*_B]: sum a_L g^A_{LX} g^B_{YL} over 0 -> X -> A -> B -> Y -> 0
    const int base = euler(cover(a), omega(b)) - euler(omega(a), cover(b));
    for (const auto& [lx, ga] : eng.hall_table(a).counts)
      for (const auto& [yl, gb] : eng.hall_table(b).counts) {
        if (yl.second != lx.first) continue;
        const ClassId l = lx.first, x = lx.second, y = yl.first;
        Weight t = omega(a) - omega(x), w = cover(b) - cover(y);
        int ex = base + euler(cover(b) + omega(x) - omega(a) - cover(y), dim(x) - dim(y));
        out.add(monomial(std::move(t), std::move(w), x, y), Scalar(static_cast<long>(eng.aut_count(l) * ga * gb)) * v_pow(ex));
      }
    return out;
  }
  if (part == 2) {
    // [C*_B][C_A]: sum a_L g^B_{LY} g^A_{XL}
    const int base = euler(cover(b), omega(a)) - euler(omega(b), cover(a));
    for (const auto& [ly, gb] : eng.hall_table(b).counts)
      for (const auto& [xl, ga] : eng.hall_table(a).counts) {
        if (xl.second != ly.first) continue;
        const ClassId l = ly.first, y = ly.second, x = xl.first;
        Weight t = cover(a) - cover(x), w = omega(b) - omega(y);
        int ex = base + euler(cover(x) + omega(b) - cover(a) - omega(y), dim(x) - dim(y));
        out.add(monomial(std::move(t), std::move(w), x, y), Scalar(static_cast<long>(eng.aut_count(l) * ga * gb)) * v_pow(ex));
      }
    return out;
  }
  throw ContractViolation("lemma 3.2 has parts 1 and 2 only");
}

MainCheck BridgelandAlgebra::main_relation_check(const HallBasis& a, const HallBasis& b) {
  RepEngine& eng = engine();
  MainCheck out;
  std::map<HallBasis, DHElement> plus, minus;
  auto emb = [&](const HallBasis& x, Sign s) -> const DHElement& {
    auto& cache = s == Sign::kPlus ? plus : minus;
    auto it = cache.find(x);
    if (it == cache.end()) it = cache.emplace(x, embed(x, s)).first;
    return it->second;
  };
  TensorElement da = hall_.coproduct(a), db = hall_.coproduct(b);
  for (const auto& [ta, ca] : da)
    for (const auto& [tb, cb] : db) {
      if (ta.second.m == tb.first.m)
        out.lhs += (ca * cb * hall_.pairing(ta.second, tb.first)) * multiply(emb(ta.first, Sign::kPlus), emb(tb.second, Sign::kMinus));
      if (ta.first.m == tb.second.m)
        out.rhs += (ca * cb * hall_.pairing(ta.first, tb.second)) * multiply(emb(tb.first, Sign::kMinus), emb(ta.second, Sign::kPlus));
    }
  out.equal = out.lhs == out.rhs;
  if (!is_zero(a.alpha) || !is_zero(b.alpha)) return out;

  const TripleCounts ta = triple_table(eng, a.m), tb = triple_table(eng, b.m);
  // LHS: sum g^A_{L X A2} g^B_{A2 Y L} a_{A2} a_L v^{<L + Om_X - Om_Y - A2, X - Y>} K_{A2 - Om_X} K*_{L - Om_Y}
  DHElement lhs;
  for (const auto& [kx, ga] : ta)
    for (const auto& [ky, gb] : tb) {
      auto [l, x, a2] = kx;
      auto [a2b, y, lb] = ky;
      if (a2 != a2b || l != lb) continue;
      int ex = euler(dim(l) + omega(x) - omega(y) - dim(a2), dim(x) - dim(y));
      Scalar c(static_cast<long>(ga * gb * eng.aut_count(a2) * eng.aut_count(l)));
      lhs.add(monomial(dim(a2) - omega(x), dim(l) - omega(y), x, y), c * v_pow(ex));
    }
  // RHS: sum g^A_{A1 X L} g^B_{L Y A1} a_L a_{A1} v^{<A1 + Om_X - Om_Y - L, X - Y>} K_{L - Om_X} K*_{A1 - Om_Y}
  DHElement rhs;
  for (const auto& [kx, ga] : ta)
    for (const auto& [ky, gb] : tb) {
      auto [a1, x, l] = kx;
      auto [lb, y, a1b] = ky;
      if (a1 != a1b || l != lb) continue;
      int ex = euler(dim(a1) + omega(x) - omega(y) - dim(l), dim(x) - dim(y));
      Scalar c(static_cast<long>(ga * gb * eng.aut_count(a1) * eng.aut_count(l)));
      rhs.add(monomial(dim(l) - omega(x), dim(a1) - omega(y), x, y), c * v_pow(ex));
    }
  out.equal = out.equal && lhs == out.lhs && rhs == out.rhs;
  out.lhs_closed = std::move(lhs);
  out.rhs_closed = std::move(rhs);
  return out;
}

}  // namespace hallbridge
