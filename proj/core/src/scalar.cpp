#include "hallbridge/scalar.hpp"

#include <cmath>
#include <ostream>

#include "hallbridge/error.hpp"

namespace hallbridge {

namespace {

// Returns r with r*r == q, or -1.
std::int64_t exact_sqrt(std::int64_t q) {
  if (q < 0) return -1;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(q))));
  for (std::int64_t c = std::max<std::int64_t>(0, r - 1); c <= r + 1; ++c)
    if (c * c == q) return c;
  return -1;
}

mpq_class pow_q(std::int64_t q, std::int64_t k) {
  mpz_class base(static_cast<long>(q));
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
  mpq_class r(p);
  if (k < 0) r = 1 / r;
  return r;
}

}  // namespace

Scalar::Scalar(mpq_class a, mpq_class b, std::int64_t q)
    : a_(std::move(a)), b_(std::move(b)), q_(q) {
  if (q < 0) throw ContractViolation("Scalar: q must be nonnegative");
  a_.canonicalize();
  b_.canonicalize();
  normalize();
}

Scalar Scalar::v_pow(std::int64_t q, std::int64_t n) {
  if (q <= 0) throw ContractViolation("v_pow: q must be positive");
  // n = 2k + r with r in {0, 1}
  std::int64_t r = ((n % 2) + 2) % 2;
  std::int64_t k = (n - r) / 2;
  if (r == 0) return Scalar(pow_q(q, k), 0, q);
  return Scalar(0, pow_q(q, k), q);
}

void Scalar::normalize() {
  if (q_ == 0 || sgn(b_) == 0) return;
  std::int64_t r = exact_sqrt(q_);
  if (r >= 0) {
    a_ += b_ * static_cast<long>(r);
    b_ = 0;
  }
}

void Scalar::adopt_q(std::int64_t other_q) {
  if (other_q == 0 || other_q == q_) return;
  if (q_ != 0) throw ContractViolation("Scalar: mixing different q values");
  q_ = other_q;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  adopt_q(other.q_);
  a_ += other.a_;
  b_ += other.b_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  adopt_q(other.q_);
  a_ -= other.a_;
  b_ -= other.b_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  adopt_q(other.q_);
  if (sgn(b_) == 0 && sgn(other.b_) == 0) {
    a_ *= other.a_;
    return *this;
  }
  mpq_class a = a_ * other.a_ + b_ * other.b_ * static_cast<long>(q_);
  mpq_class b = a_ * other.b_ + b_ * other.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ZeroDivisor();
  if (sgn(b_) == 0) return Scalar(1 / a_, 0, q_);
  // (a + bv)^-1 = (a - bv) / (a^2 - q b^2); the norm vanishes only when q is
  // a square, which normalize() has already folded away.
  mpq_class norm = a_ * a_ - b_ * b_ * static_cast<long>(q_);
  if (sgn(norm) == 0) throw ZeroDivisor();
  return Scalar(a_ / norm, -b_ / norm, q_);
}

bool operator==(const Scalar& x, const Scalar& y) {
  if (x.a_ != y.a_ || x.b_ != y.b_) return false;
  if (sgn(x.b_) != 0 && x.q_ != y.q_) return false;
  return true;
}

std::string Scalar::to_string() const { return a_.get_str() + " + " + b_.get_str() + "*v"; }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar parse_scalar(const std::string& text, std::int64_t q) {
  auto plus = text.find(" + ");
  auto star = text.rfind("*v");
  if (plus == std::string::npos || star == std::string::npos || star < plus)
    throw FormatError("bad scalar literal: " + text);
  try {
    mpq_class a(text.substr(0, plus));
    mpq_class b(text.substr(plus + 3, star - plus - 3));
    return Scalar(a, b, sgn(b) == 0 ? 0 : q);
  } catch (const std::invalid_argument&) {
    throw FormatError("bad scalar literal: " + text);
  }
}

int rank(std::vector<std::vector<Scalar>> rows) {
  if (rows.empty()) return 0;
  const size_t cols = rows.front().size();
  int r = 0;
  for (size_t c = 0; c < cols && static_cast<size_t>(r) < rows.size(); ++c) {
    size_t piv = static_cast<size_t>(r);
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<size_t>(r)]);
    const auto& pr = rows[static_cast<size_t>(r)];
    Scalar inv = pr[c].inverse();
    for (size_t k = static_cast<size_t>(r) + 1; k < rows.size(); ++k) {
      if (rows[k][c].is_zero()) continue;
      Scalar factor = rows[k][c] * inv;
      for (size_t j = c; j < cols; ++j)
        if (!pr[j].is_zero()) rows[k][j] -= factor * pr[j];
    }
    ++r;
  }
  return r;
}

}  // namespace hallbridge
