#include <gtest/gtest.h>

#include <random>

#include "hallbridge/error.hpp"
#include "hallbridge/scalar.hpp"

using namespace hallbridge;

namespace {

Scalar random_scalar(std::mt19937& rng, std::int64_t q) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  return Scalar(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)), q);
}

}  // namespace

TEST(Scalar, VPowBasics) {
  for (int q : {2, 3, 5}) {
    EXPECT_EQ(Scalar::v_pow(q, 0), Scalar(1));
    EXPECT_EQ(Scalar::v_pow(q, 2), Scalar(q));
    EXPECT_EQ(Scalar::v_pow(q, -1), Scalar(mpq_class(0), mpq_class(1, q), q));
    EXPECT_EQ(Scalar::v_pow(q, 1) * Scalar::v_pow(q, -1), Scalar(1));
  }
}

TEST(Scalar, VPowIsAHomomorphism) {
  for (int q : {2, 3})
    for (int m = -20; m <= 20; ++m)
      for (int n = -20; n <= 20; ++n) EXPECT_EQ(Scalar::v_pow(q, m) * Scalar::v_pow(q, n), Scalar::v_pow(q, m + n));
}

TEST(Scalar, FieldAxiomsOnSamples) {
  std::mt19937 rng(7);
  for (int q : {2, 3}) {
    for (int i = 0; i < 200; ++i) {
      Scalar x = random_scalar(rng, q), y = random_scalar(rng, q), z = random_scalar(rng, q);
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ((x + y) + z, x + (y + z));
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ(x * y, y * x);
      if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), Scalar(1));
    }
  }
}

TEST(Scalar, InverseOfZeroThrows) { EXPECT_THROW(Scalar(0).inverse(), ZeroDivisor); }

TEST(Scalar, SerializationRoundTrip) {
  Scalar s(mpq_class(3, 2), mpq_class(1), 2);
  EXPECT_EQ(s.to_string(), "3/2 + 1*v");
  EXPECT_EQ(Scalar(-1).to_string(), "-1 + 0*v");
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    Scalar x = random_scalar(rng, 3);
    EXPECT_EQ(parse_scalar(x.to_string(), 3), x);
  }
}

TEST(Scalar, RationalsMixWithAnyQ) {
  Scalar half(mpq_class(1, 2));
  EXPECT_EQ(half * Scalar::v_pow(2, 2), Scalar(1));
  EXPECT_EQ(half * Scalar::v_pow(3, 2), Scalar(mpq_class(3, 2)));
}

TEST(Scalar, PerfectSquareQFolds) {
  // v = 2 when q = 4
  EXPECT_TRUE(Scalar::v_pow(4, 1).is_rational());
  EXPECT_EQ(Scalar::v_pow(4, 1), Scalar(2));
}

TEST(Scalar, RankOverQv) {
  const Scalar v = Scalar::v_pow(2, 1);
  // Rows (1, v) and (v, 2) are dependent since v * v = 2.
  EXPECT_EQ(rank({{Scalar(1), v}, {v, Scalar(2)}}), 1);
  EXPECT_EQ(rank({{Scalar(1), v}, {v, Scalar(1)}}), 2);
  EXPECT_EQ(rank({}), 0);
  EXPECT_EQ(rank({{Scalar(0), Scalar(0)}}), 0);
}
