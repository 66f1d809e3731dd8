#include <doctest.h>

#include <random>

#include "redcard/errors.hpp"
#include "redcard/oracle.hpp"
#include "redcard/pauli.hpp"
#include "support/generators.hpp"

using namespace redcard;

namespace {

PauliString p(std::string_view text) { return parse_pauli(text); }

DenseOperator dense_with_phase(const PauliString& s) {
  return to_dense(s.canonical()) *
         std::pow(std::complex<double>(0, 1), s.phase());
}

}  // namespace

TEST_CASE("single-qubit products follow the multiplication table") {
  const PauliString xy = multiply(p("X"), p("Y"));
  CHECK(xy.to_string() == "Z");
  CHECK(xy.phase() == 1);  // X Y = i Z

  const PauliString yx = multiply(p("Y"), p("X"));
  CHECK(yx.to_string() == "Z");
  CHECK(yx.phase() == 3);

  const PauliString zz = multiply(p("Z"), p("Z"));
  CHECK(zz.is_identity());
  CHECK(zz.phase() == 0);
}

TEST_CASE("Z1 times Z1Z2 cancels the shared site") {
  const PauliString prod = multiply(p("ZI"), p("ZZ"));
  CHECK(prod.to_string() == "IZ");
  CHECK(prod.phase() == 0);
}

TEST_CASE("two-qubit phases accumulate per site") {
  // (X1 Y2)(Y1 X2) = (i Z1)(-i Z2) = Z1 Z2.
  const PauliString prod = multiply(p("XY"), p("YX"));
  CHECK(prod.to_string() == "ZZ");
  CHECK(prod.phase() == 0);
}

TEST_CASE("products at small n match dense matrix products") {
  std::mt19937_64 rng(11);
  for (std::uint32_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      const PauliString a = testing::random_pauli(rng, n, true);
      const PauliString b = testing::random_pauli(rng, n, true);
      const DenseOperator expected = to_dense(a) * to_dense(b);
      CHECK((expected - dense_with_phase(multiply(a, b))).norm() ==
            doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("commutation agrees with dense commutators") {
  std::mt19937_64 rng(12);
  for (std::uint32_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      const PauliString a = testing::random_pauli(rng, n);
      const PauliString b = testing::random_pauli(rng, n);
      const DenseOperator da = to_dense(a), db = to_dense(b);
      const bool dense_commutes = (da * db - db * da).norm() < 1e-12;
      CHECK(a.commutes_with(b) == dense_commutes);
    }
  }
}

TEST_CASE("commutation basics") {
  CHECK_FALSE(p("X").commutes_with(p("Z")));
  CHECK(p("ZI").commutes_with(p("IZ")));
  CHECK_FALSE(p("XY").commutes_with(p("XX")));
  CHECK(p("XY").commutes_with(p("XY")));

  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    const PauliString a = testing::random_pauli(rng, 4);
    const PauliString b = testing::random_pauli(rng, 4);
    CHECK(a.commutes_with(b) == b.commutes_with(a));
  }
}

TEST_CASE("commutator basis returns the anticommuting product") {
  const auto c1 = commutator_basis(p("XX"), p("ZI"));
  REQUIRE(c1.has_value());
  CHECK(c1->to_string() == "YX");
  CHECK(c1->phase() == 0);

  CHECK_FALSE(commutator_basis(p("ZI"), p("IZ")).has_value());

  const auto c2 = commutator_basis(p("XX"), p("IZ"));
  REQUIRE(c2.has_value());
  CHECK(c2->to_string() == "XY");
}

TEST_CASE("left multiplication is an involution up to phase") {
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 60; ++rep) {
    const PauliString a = testing::random_pauli(rng, 5);
    const PauliString b = testing::random_pauli(rng, 5);
    const PauliString twice = multiply(a, multiply(a, b));
    CHECK(twice.x_bits() == b.x_bits());
    CHECK(twice.z_bits() == b.z_bits());
  }
}

TEST_CASE("y parity counts Y sites mod 2") {
  CHECK(p("XZY").y_parity() == Parity::odd);
  CHECK(p("XX").y_parity() == Parity::even);
  CHECK(p("YZY").y_parity() == Parity::even);
}

TEST_CASE("mismatched widths are rejected") {
  CHECK_THROWS_AS(multiply(p("X"), p("XX")), DimensionError);
  CHECK_THROWS_AS(p("X").commutes_with(p("XX")), DimensionError);
  CHECK_THROWS_AS(PauliString(0), DimensionError);
  CHECK_THROWS_AS(PauliString(65), DimensionError);
}

TEST_CASE("text round trip in both forms") {
  CHECK(p("XZY").to_string() == "XZY");
  CHECK(p("XZY").sparse_string() == "X1 Z2 Y3");
  CHECK(parse_pauli("X1 Z2 Y3").to_string() == "XZY");
  CHECK(parse_pauli("X1 Y3", 4).to_string() == "XIYI");
  CHECK(parse_pauli("IIII").is_identity());
  CHECK(PauliString(3).sparse_string() == "I");

  std::mt19937_64 rng(15);
  for (int rep = 0; rep < 50; ++rep) {
    const PauliString a = testing::random_pauli(rng, 6, true);
    CHECK(parse_pauli(a.to_string()) == a);
    CHECK(parse_pauli(a.sparse_string(), 6) == a);
  }
}

TEST_CASE("parse rejects malformed text") {
  CHECK_THROWS_AS(parse_pauli("XQ"), PreconditionError);
  CHECK_THROWS_AS(parse_pauli("X0"), PreconditionError);
  CHECK_THROWS_AS(parse_pauli("X1 X1"), PreconditionError);
  CHECK_THROWS_AS(parse_pauli("X3", 2), DimensionError);
  CHECK_THROWS_AS(parse_pauli("XX", 3), DimensionError);
}

TEST_CASE("sum arithmetic folds phases and prunes dust") {
  PauliSum sum(2);
  sum.add(p("XX"), 1.0);
  sum.add(p("ZI"), 0.5);
  sum.add(p("XX"), -1.0 + 0.5e-12);  // cancels below tolerance
  CHECK(sum.size() == 1);
  CHECK(sum.coeff(p("ZI")) == doctest::Approx(0.5));

  // A phase-2 string is -1 times its canonical form.
  PauliSum folded(1);
  folded.add(PauliString(1, 1, 0, 2), 1.0);
  CHECK(folded.coeff(p("X")) == doctest::Approx(-1.0));

  // An odd power of i cannot carry a real coefficient.
  PauliSum bad(1);
  CHECK_THROWS_AS(bad.add(PauliString(1, 1, 0, 1), 1.0), ConsistencyError);
}

TEST_CASE("sum norm is the root sum of squares") {
  PauliSum sum(2);
  sum.add(p("XX"), 3.0);
  sum.add(p("ZI"), 4.0);
  CHECK(sum.norm() == doctest::Approx(5.0));
}
