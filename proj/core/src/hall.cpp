#include "hallbridge/hall.hpp"

#include <sstream>

#include "hallbridge/error.hpp"

namespace hallbridge {

std::string to_string(Bracket b) { return b == Bracket::kAngle ? "angle" : "symmetric"; }

Bracket parse_bracket(const std::string& text) {
  if (text == "angle") return Bracket::kAngle;
  if (text == "symmetric") return Bracket::kSymmetric;
  throw ContractViolation("unknown bracket form '" + text + "' (expected angle or symmetric)");
}

std::string to_string(const Conventions& c) {
  return "kcommute=" + to_string(c.kcommute) + ",pairing=" + to_string(c.pairing) + ",tensor=" + to_string(c.tensor);
}

Conventions parse_conventions(const std::string& text, Conventions base) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ContractViolation("convention override must be site=form: " + item);
    std::string site = item.substr(0, eq);
    Bracket b = parse_bracket(item.substr(eq + 1));
    if (site == "kcommute")
      base.kcommute = b;
    else if (site == "pairing")
      base.pairing = b;
    else if (site == "tensor")
      base.tensor = b;
    else
      throw ContractViolation("unknown convention site '" + site + "' (expected kcommute, pairing or tensor)");
  }
  return base;
}

HallAlgebra::HallAlgebra(RepEngine& engine, Conventions conventions) : engine_(engine), conv_(conventions) {}

const std::vector<std::pair<ClassId, mpq_class>>& HallAlgebra::class_product(ClassId m, ClassId n) {
  return products_.get_or_compute({m, n}, [&] {
    std::vector<std::pair<ClassId, mpq_class>> out;
    const mpz_class am = engine_.aut_count(m), an = engine_.aut_count(n);
    for (ClassId l : engine_.classes_of_dim(engine_.dim(m) + engine_.dim(n))) {
      std::int64_t g = engine_.hall_number(l, m, n);
      if (g == 0) continue;
      // |Ext^1(M,N)_L| / |Hom(M,N)| = g a_M a_N / a_L
      mpq_class c(mpz_class(static_cast<long>(g)) * am * an, mpz_class(static_cast<long>(engine_.aut_count(l))));
      c.canonicalize();
      out.emplace_back(l, c);
    }
    return out;
  });
}

HallElement HallAlgebra::diamond(const HallElement& x, const HallElement& y) {
  HallElement out;
  for (const auto& [bx, cx] : x)
    for (const auto& [by, cy] : y) {
      if (!is_zero(bx.alpha) || !is_zero(by.alpha)) throw ContractViolation("diamond product is defined on plain Hall elements only");
      for (const auto& [l, c] : class_product(bx.m, by.m)) out.add(basis(l), cx * cy * Scalar(c));
    }
  return out;
}

HallElement HallAlgebra::multiply(const HallElement& x, const HallElement& y) {
  HallElement out;
  for (const auto& [bx, cx] : x)
    for (const auto& [by, cy] : y) {
      const Weight& dm = engine_.dim(bx.m);
      const Weight& dn = engine_.dim(by.m);
      // [M]K_a [N]K_b = v^{b(a, N)} [M]*[N] K_{a+b}
      Scalar pre = cx * cy * v_pow(bracket(conv_.kcommute, bx.alpha, dn) + engine_.euler_form(dm, dn));
      Weight k = bx.alpha + by.alpha;
      for (const auto& [l, c] : class_product(bx.m, by.m)) out.add({l, k}, pre * Scalar(c));
    }
  return out;
}

TensorElement HallAlgebra::coproduct(const HallBasis& b) {
  TensorElement out;
  for (const auto& [mn, g] : engine_.hall_table(b.m).counts) {
    const Weight& dn = engine_.dim(mn.second);
    Scalar c = Scalar(static_cast<long>(g)) * v_pow(engine_.euler_form(engine_.dim(mn.first), dn));
    out.add({{mn.first, b.alpha + dn}, {mn.second, b.alpha}}, c);
  }
  return out;
}

TensorElement HallAlgebra::coproduct(const HallElement& x) {
  TensorElement out;
  for (const auto& [b, c] : x) out += c * coproduct(b);
  return out;
}

TensorElement HallAlgebra::reduced_coproduct(const HallElement& x) {
  TensorElement out;
  const Weight zero = engine_.quiver().zero();
  for (const auto& [b, c] : x) {
    if (!is_zero(b.alpha)) throw ContractViolation("reduced coproduct is defined on plain Hall elements only");
    for (const auto& [mn, g] : engine_.hall_table(b.m).counts) {
      Scalar s = c * Scalar(static_cast<long>(g)) * v_pow(engine_.euler_form(engine_.dim(mn.first), engine_.dim(mn.second)));
      out.add({{mn.first, zero}, {mn.second, zero}}, s);
    }
  }
  return out;
}

Scalar HallAlgebra::counit(const HallElement& x) {
  Scalar s;
  ClassId z = engine_.zero_class();
  for (const auto& [b, c] : x)
    if (b.m == z) s += c;
  return s;
}

Scalar HallAlgebra::pairing(const HallBasis& x, const HallBasis& y) {
  if (x.m != y.m) return Scalar(0);
  return Scalar(static_cast<long>(engine_.aut_count(x.m))) * v_pow(bracket(conv_.pairing, x.alpha, y.alpha));
}

Scalar HallAlgebra::pairing(const HallElement& x, const HallElement& y) {
  Scalar s;
  for (const auto& [bx, cx] : x)
    for (const auto& [by, cy] : y)
      if (bx.m == by.m) s += cx * cy * pairing(bx, by);
  return s;
}

TensorElement HallAlgebra::tensor_multiply(const TensorElement& x, const TensorElement& y, bool twisted) {
  TensorElement out;
  for (const auto& [bx, cx] : x)
    for (const auto& [by, cy] : y) {
      Scalar c = cx * cy;
      if (twisted) c *= v_pow(bracket(conv_.tensor, engine_.dim(bx.second.m), engine_.dim(by.first.m)));
      HallElement left = multiply(HallElement(bx.first), HallElement(by.first));
      HallElement right = multiply(HallElement(bx.second), HallElement(by.second));
      for (const auto& [l, cl] : left)
        for (const auto& [r, cr] : right) out.add({l, r}, c * cl * cr);
    }
  return out;
}

Scalar HallAlgebra::tensor_pairing(const TensorElement& x, const TensorElement& y) {
  Scalar s;
  for (const auto& [bx, cx] : x)
    for (const auto& [by, cy] : y) {
      if (bx.first.m != by.first.m || bx.second.m != by.second.m) continue;
      s += cx * cy * pairing(bx.first, by.first) * pairing(bx.second, by.second);
    }
  return s;
}

Combination<HallAlgebra::Triple> HallAlgebra::coassoc_left(const HallBasis& l) {
  Combination<Triple> out;
  for (const auto& [t, c] : coproduct(l))
    for (const auto& [t1, c1] : coproduct(t.first)) out.add({t1.first, t1.second, t.second}, c * c1);
  return out;
}

Combination<HallAlgebra::Triple> HallAlgebra::coassoc_right(const HallBasis& l) {
  Combination<Triple> out;
  for (const auto& [t, c] : coproduct(l))
    for (const auto& [t2, c2] : coproduct(t.second)) out.add({t.first, t2.first, t2.second}, c * c2);
  return out;
}

}  // namespace hallbridge
