#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "redcard/adjoint.hpp"
#include "redcard/cartan.hpp"
#include "redcard/errors.hpp"
#include "redcard/models.hpp"
#include "redcard/oracle.hpp"
#include "support/generators.hpp"

using namespace redcard;

namespace {

constexpr double kPi = std::numbers::pi;

/// Dense unitary of the operator an ansatz stands for.
DenseOperator dense_ansatz(const Ansatz& ansatz, std::uint32_t n) {
  const std::uint64_t dim = 1ULL << n;
  DenseOperator u = DenseOperator::Identity(dim, dim);
  for (std::size_t i = 0; i < ansatz.size(); ++i) {
    u = u * expm_i(to_dense(ansatz.factor(i)), -ansatz.angle(i));
  }
  return ansatz.direction() == Direction::forward
             ? u
             : DenseOperator(u.adjoint());
}

}  // namespace

TEST_CASE("a quarter turn about X maps Z to Y") {
  PauliSum z(1);
  z.add(parse_pauli("Z"), 1.0);
  const Ansatz quarter({parse_pauli("X")}, {kPi / 4});
  const PauliSum rotated = conjugate(quarter, z);
  CHECK(rotated.size() == 1);
  CHECK(rotated.coeff(parse_pauli("Y")) == doctest::Approx(1.0));
}

TEST_CASE("zero angles leave the operand unchanged") {
  std::mt19937_64 rng(41);
  const PauliSum operand = testing::random_sum(rng, 3, 5);
  Ansatz zero({parse_pauli("XII", 3), parse_pauli("IYI", 3)}, {0.0, 0.0});
  CHECK(conjugate(zero, operand) == operand);
}

TEST_CASE("conjugation matches the dense adjoint action") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 15; ++rep) {
    const PauliSum operand = testing::random_sum(rng, 3, 6);
    const Ansatz ansatz = testing::random_ansatz(rng, 3, 5);
    const DenseOperator u = dense_ansatz(ansatz, 3);
    const DenseOperator expected = u * to_dense(operand) * u.adjoint();
    CHECK((to_dense(conjugate(ansatz, operand)) - expected).norm() ==
          doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("the dagger direction inverts the forward one") {
  std::mt19937_64 rng(43);
  const PauliSum operand = testing::random_sum(rng, 4, 6);
  const Ansatz ansatz = testing::random_ansatz(rng, 4, 6);
  const PauliSum round_trip =
      conjugate(ansatz.dagger(), conjugate(ansatz, operand));
  for (const auto& [p, c] : operand.terms()) {
    CHECK(round_trip.coeff(p) == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("width mismatches are rejected") {
  PauliSum operand(3);
  operand.add(parse_pauli("ZII"), 1.0);
  const Ansatz narrow({parse_pauli("X")}, {0.4});
  CHECK_THROWS_AS(conjugate(narrow, operand), DimensionError);
  PauliSum other(2);
  other.add(parse_pauli("ZI"), 1.0);
  CHECK_THROWS_AS(inner(operand, other), DimensionError);
}

TEST_CASE("conjugation preserves the norm") {
  std::mt19937_64 rng(44);
  for (int rep = 0; rep < 10; ++rep) {
    const PauliSum operand = testing::random_sum(rng, 4, 8);
    const Ansatz ansatz = testing::random_ansatz(rng, 4, 7);
    CHECK(conjugate(ansatz, operand).norm() ==
          doctest::Approx(operand.norm()).epsilon(1e-10));
  }
}

TEST_CASE("k rotations keep m-supported sums inside m") {
  ModelSpec spec;
  spec.family = ModelFamily::heisenberg;
  spec.sites = 3;
  const PauliSum h = build_model(spec);
  const Dla dla = generate_dla(h);
  const auto [k, m] = split_km(dla, h);

  std::mt19937_64 rng(45);
  std::vector<PauliString> factors;
  std::vector<double> angles;
  for (int i = 0; i < 6; ++i) {
    factors.push_back(k[rng() % k.size()]);
    angles.push_back(0.3 + 0.1 * static_cast<double>(i));
  }
  const PauliSum rotated = conjugate(Ansatz(factors, angles), h);
  for (const auto& [p, _] : rotated.terms()) {
    CHECK(p.y_parity() == Parity::even);
  }
}

TEST_CASE("inner product is the normalized trace form") {
  PauliSum z1(2), x1(2);
  z1.add(parse_pauli("ZI"), 1.0);
  x1.add(parse_pauli("XI"), 1.0);
  CHECK(inner(z1, z1) == doctest::Approx(1.0));
  CHECK(inner(z1, x1) == doctest::Approx(0.0));

  std::mt19937_64 rng(46);
  for (int rep = 0; rep < 10; ++rep) {
    const PauliSum a = testing::random_sum(rng, 3, 6);
    const PauliSum b = testing::random_sum(rng, 3, 6);
    const double dense = ((to_dense(a) * to_dense(b)).trace() / 8.0).real();
    CHECK(inner(a, b) == doctest::Approx(dense).epsilon(1e-12));
  }
}

TEST_CASE("the form is invariant under simultaneous conjugation") {
  std::mt19937_64 rng(47);
  const PauliSum a = testing::random_sum(rng, 3, 5);
  const PauliSum b = testing::random_sum(rng, 3, 5);
  const Ansatz ansatz = testing::random_ansatz(rng, 3, 6);
  CHECK(inner(conjugate(ansatz, a), conjugate(ansatz, b)) ==
        doctest::Approx(inner(a, b)).epsilon(1e-10));
}

TEST_CASE("subproblem cost with the identity ansatz reads a coefficient") {
  ModelSpec spec;
  spec.family = ModelFamily::tfim;
  spec.sites = 2;
  spec.field = 0.5;
  const PauliSum h = build_model(spec);
  const PauliString b_r = parse_pauli("Z1", 2);
  const Ansatz identity({parse_pauli("XY")}, {0.0});
  CHECK(cost_fr(identity, b_r, h) == doctest::Approx(0.5));
}

TEST_CASE("subproblem cost is sinusoidal with period pi in each angle") {
  ModelSpec spec;
  spec.family = ModelFamily::tfim;
  spec.sites = 2;
  const PauliSum h = build_model(spec);
  Ansatz ansatz({parse_pauli("XY"), parse_pauli("YX")}, {0.4, 1.1});
  const PauliString b_r = parse_pauli("Z1", 2);

  for (std::size_t idx = 0; idx < 2; ++idx) {
    auto f = [&](double theta) {
      Ansatz copy = ansatz;
      copy.set_angle(idx, theta);
      return cost_fr(copy, b_r, h);
    };
    const double f0 = f(0.0), f1 = f(kPi / 4), f2 = f(kPi / 2);
    const double c = (f0 + f2) / 2, a = f0 - c, b = f1 - c;
    for (double theta : {0.3, 0.9, 1.7, 2.9}) {
      const double predicted =
          a * std::cos(2 * theta) + b * std::sin(2 * theta) + c;
      CHECK(f(theta) == doctest::Approx(predicted).epsilon(1e-10));
      CHECK(f(theta + kPi) == doctest::Approx(f(theta)).epsilon(1e-10));
    }
  }
}

TEST_CASE("subproblem cost matches the dense trace") {
  std::mt19937_64 rng(48);
  for (int rep = 0; rep < 10; ++rep) {
    const PauliSum h = testing::random_sum(rng, 3, 6);
    const PauliString b_r = testing::random_pauli(rng, 3);
    const Ansatz ansatz = testing::random_ansatz(rng, 3, 5);
    const DenseOperator u = dense_ansatz(ansatz, 3);
    const double dense =
        ((u * to_dense(b_r) * u.adjoint() * to_dense(h)).trace() / 8.0).real();
    CHECK(cost_fr(ansatz, b_r, h) == doctest::Approx(dense).epsilon(1e-10));
  }
}

TEST_CASE("staging violations are reported") {
  ModelSpec spec;
  spec.family = ModelFamily::tfim;
  spec.sites = 2;
  const PauliSum h = build_model(spec);
  const std::vector<PauliString> prior{parse_pauli("Z1", 2)};
  const Ansatz identity({parse_pauli("XY")}, {0.0});
  CHECK_THROWS_AS(cost_fr(identity, parse_pauli("Z2", 2), h, prior),
                  StagingError);
}

TEST_CASE("whole-problem cost reduces to the subproblem on one string") {
  ModelSpec spec;
  spec.family = ModelFamily::tfim;
  spec.sites = 2;
  const PauliSum h = build_model(spec);
  const Dla dla = generate_dla(h);
  const CartanStructure cs = build_cartan_structure(dla, h);

  std::mt19937_64 rng(49);
  Ansatz ansatz(cs.k_basis, {0.7, 1.9});

  // v on a single generator reproduces the subproblem cost.
  PauliSum v(2);
  v.add(cs.b_basis.front(), 1.0);
  CHECK(cost_full(ansatz, v, h, cs.h_basis) ==
        doctest::Approx(cost_fr(ansatz, cs.b_basis.front(), h)));

  // With the identity ansatz the cost is the weighted coefficient sum.
  Ansatz identity(cs.k_basis, {0.0, 0.0});
  PauliSum weighted(2);
  weighted.add(cs.h_basis[0], 0.25);
  weighted.add(cs.h_basis[1], 0.5);
  double expected = 0.0;
  for (const auto& [p, c] : weighted.terms()) expected += c * h.coeff(p);
  CHECK(cost_full(identity, weighted, h, cs.h_basis) ==
        doctest::Approx(expected));

  PauliSum off(2);
  off.add(parse_pauli("XX"), 1.0);
  CHECK_THROWS_AS(cost_full(ansatz, off, h, cs.h_basis), PreconditionError);
}

TEST_CASE("residual measures the weight off the subalgebra") {
  const std::vector<PauliString> h_basis{parse_pauli("ZI"), parse_pauli("IZ")};

  PauliSum inside(2);
  inside.add(parse_pauli("ZI"), 0.3);
  inside.add(parse_pauli("IZ"), -1.1);
  CHECK(residual(inside, h_basis) == doctest::Approx(0.0));

  PauliSum split(2);
  split.add(parse_pauli("ZI"), 1.0);
  split.add(parse_pauli("XX"), 1.0);
  CHECK(residual(split, h_basis) == doctest::Approx(1.0 / std::sqrt(2.0)));

  PauliSum zero(2);
  CHECK_THROWS_AS(residual(zero, h_basis), PreconditionError);
}
