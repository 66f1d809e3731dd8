#include <doctest.h>

#include <algorithm>
#include <set>

#include "redcard/algebra.hpp"
#include "redcard/errors.hpp"
#include "redcard/models.hpp"

using namespace redcard;

namespace {

PauliSum tfim(std::uint32_t sites) {
  ModelSpec spec;
  spec.family = ModelFamily::tfim;
  spec.sites = sites;
  spec.coupling_x = 1.0;
  spec.field = 0.5;
  return build_model(spec);
}

}  // namespace

TEST_CASE("two-site transverse-field chain closes at dimension six") {
  const Dla dla = generate_dla(tfim(2));
  CHECK(dla.dim() == 6);
  std::set<std::string> names;
  for (const auto& p : dla.basis) names.insert(p.to_string());
  CHECK(names == std::set<std::string>{"XX", "YX", "XY", "YY", "ZI", "IZ"});
  CHECK(dla.generator_indices.size() == 3);
  for (std::size_t idx : dla.generator_indices) CHECK(idx < dla.dim());
}

TEST_CASE("a single commuting generator is already closed") {
  PauliSum h(1);
  h.add(parse_pauli("Z"), 1.0);
  CHECK(generate_dla(h).dim() == 1);
}

TEST_CASE("transverse-field chains close at l(2l-1)") {
  for (std::uint32_t l = 2; l <= 6; ++l) {
    CHECK(generate_dla(tfim(l)).dim() == l * (2 * l - 1));
  }
}

TEST_CASE("closure is idempotent") {
  const Dla dla = generate_dla(tfim(4));
  PauliSum all(4);
  for (const auto& p : dla.basis) all.add(p, 1.0);
  const Dla again = generate_dla(all);
  CHECK(again.basis == dla.basis);
}

TEST_CASE("the dimension cap reports the partial size") {
  try {
    generate_dla(tfim(4), 10);
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(e.partial_dim() == 10);
  }
}

TEST_CASE("preconditions on closure inputs") {
  PauliSum empty(2);
  CHECK_THROWS_AS(generate_dla(empty), PreconditionError);
  CHECK_THROWS_AS(generate_dla(tfim(3), 2), PreconditionError);
  PauliSum with_identity(2);
  with_identity.add(PauliString(2), 1.0);
  CHECK_THROWS_AS(generate_dla(with_identity), PreconditionError);
}

TEST_CASE("frustration components label commuting islands") {
  const Dla connected = generate_dla(tfim(2));
  CHECK(frustration_components(connected).n_components == 1);

  PauliSum fields(2);
  fields.add(parse_pauli("ZI"), 1.0);
  fields.add(parse_pauli("IZ"), 1.0);
  const Dla island = generate_dla(fields);
  const FrustrationGraph graph = frustration_components(island);
  CHECK(graph.n_components == 2);
  for (std::size_t i = 0; i < island.dim(); ++i) {
    for (std::size_t j = 0; j < island.dim(); ++j) {
      CHECK(graph.edge(i, j) ==
            !island.basis[i].commutes_with(island.basis[j]));
    }
  }
}

TEST_CASE("the nearest-neighbour XY chain splits in two") {
  ModelSpec spec;
  spec.family = ModelFamily::xy;
  spec.sites = 4;
  const Dla dla = generate_dla(build_model(spec));
  CHECK(frustration_components(dla).n_components == 2);
}

TEST_CASE("distance-two witnesses exist inside a component") {
  const Dla dla = generate_dla(tfim(2));
  const PauliString z1 = parse_pauli("ZI");
  const PauliString z2 = parse_pauli("IZ");
  const auto witness = distance2_witness(dla, z1, z2);
  REQUIRE(witness.has_value());
  CHECK_FALSE(witness->commutes_with(z1));
  CHECK_FALSE(witness->commutes_with(z2));

  // The self-pair just asks for any neighbour.
  const auto self_witness = distance2_witness(dla, z1, z1);
  REQUIRE(self_witness.has_value());
  CHECK_FALSE(self_witness->commutes_with(z1));
}

TEST_CASE("witnesses fail cleanly off the happy path") {
  PauliSum fields(2);
  fields.add(parse_pauli("ZI"), 1.0);
  fields.add(parse_pauli("IZ"), 1.0);
  const Dla island = generate_dla(fields);
  CHECK_THROWS_AS(
      distance2_witness(island, parse_pauli("ZI"), parse_pauli("IZ")),
      ConsistencyError);

  const Dla dla = generate_dla(tfim(2));
  CHECK_THROWS_AS(distance2_witness(dla, parse_pauli("XX"), parse_pauli("ZI")),
                  PreconditionError);
  CHECK_THROWS_AS(distance2_witness(dla, parse_pauli("ZZ"), parse_pauli("ZI")),
                  PreconditionError);
}

TEST_CASE("every commuting pair in one component has a witness") {
  for (std::uint32_t l = 2; l <= 5; ++l) {
    const Dla dla = generate_dla(tfim(l));
    const FrustrationGraph graph = frustration_components(dla);
    for (std::size_t i = 0; i < dla.dim(); ++i) {
      for (std::size_t j = i; j < dla.dim(); ++j) {
        if (graph.component[i] != graph.component[j]) continue;
        if (!dla.basis[i].commutes_with(dla.basis[j])) continue;
        const auto witness =
            distance2_witness(dla, dla.basis[i], dla.basis[j]);
        REQUIRE(witness.has_value());
      }
    }
  }
}
