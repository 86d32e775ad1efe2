#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hallbridge {

/// Exact element a + b*v of Q(v) with v*v = q.
///
/// A scalar built from a plain rational carries q = 0 and mixes freely with
/// scalars of any q. Two scalars that both depend on v must agree on q.
/// When q is a perfect square the v-part is folded into the rational part.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class a) : a_(std::move(a)) { a_.canonicalize(); }
  Scalar(mpq_class a, mpq_class b, std::int64_t q);

  /// v^n for any integer n.
  static Scalar v_pow(std::int64_t q, std::int64_t n);

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& v_part() const { return b_; }
  std::int64_t q() const { return q_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other) { return *this *= other.inverse(); }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& x, const Scalar& y);
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  /// Reduced "a + b*v", e.g. "3/2 + 1*v" or "-1 + 0*v".
  std::string to_string() const;

 private:
  void adopt_q(std::int64_t other_q);
  void normalize();

  mpq_class a_{0};
  mpq_class b_{0};
  std::int64_t q_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses the to_string() format back; q must be supplied by the caller.
Scalar parse_scalar(const std::string& text, std::int64_t q);

/// Rank over Q(v) of a matrix given by rows of equal length.
int rank(std::vector<std::vector<Scalar>> rows);

}  // namespace hallbridge
