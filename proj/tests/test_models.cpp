#include <doctest.h>

#include "redcard/cartan.hpp"
#include "redcard/errors.hpp"
#include "redcard/models.hpp"

using namespace redcard;

TEST_CASE("the transverse-field chain at two sites") {
  ModelSpec spec;
  spec.family = ModelFamily::tfim;
  spec.sites = 2;
  spec.coupling_x = 1.0;
  spec.field = 0.5;
  const PauliSum h = build_model(spec);
  CHECK(h.size() == 3);
  CHECK(h.coeff(parse_pauli("XX")) == doctest::Approx(-1.0));
  CHECK(h.coeff(parse_pauli("ZI")) == doctest::Approx(0.5));
  CHECK(h.coeff(parse_pauli("IZ")) == doctest::Approx(0.5));
}

TEST_CASE("the xy chain carries positive couplings") {
  ModelSpec spec;
  spec.family = ModelFamily::xy;
  spec.sites = 2;
  spec.coupling_x = 0.7;
  spec.coupling_y = 1.3;
  const PauliSum h = build_model(spec);
  CHECK(h.size() == 2);
  CHECK(h.coeff(parse_pauli("XX")) == doctest::Approx(0.7));
  CHECK(h.coeff(parse_pauli("YY")) == doctest::Approx(1.3));
}

TEST_CASE("the Heisenberg chain has three couplings per bond") {
  ModelSpec spec;
  spec.family = ModelFamily::heisenberg;
  spec.sites = 3;
  const PauliSum h = build_model(spec);
  CHECK(h.size() == 6);
}

TEST_CASE("periodic chains add the wrap bond") {
  ModelSpec spec;
  spec.family = ModelFamily::xy;
  spec.sites = 3;
  spec.periodic = true;
  CHECK(build_model(spec).size() == 6);
  spec.periodic = false;
  CHECK(build_model(spec).size() == 4);
}

TEST_CASE("family names parse and print") {
  CHECK(parse_model_family("tfxy") == ModelFamily::tfxy);
  CHECK(to_string(ModelFamily::heisenberg) == "heisenberg");
  CHECK_THROWS_AS(parse_model_family("ising2d"), PreconditionError);
  ModelSpec tiny;
  tiny.sites = 1;
  CHECK_THROWS_AS(build_model(tiny), PreconditionError);
}

TEST_CASE("every family lands inside m under the default involution") {
  for (auto family : {ModelFamily::tfim, ModelFamily::tfxy, ModelFamily::xy,
                      ModelFamily::heisenberg}) {
    ModelSpec spec;
    spec.family = family;
    spec.sites = 4;
    const PauliSum h = build_model(spec);
    for (const auto& [p, _] : h.terms()) {
      CHECK(p.y_parity() == Parity::even);
    }
  }
}

TEST_CASE("fragment-size profiles distinguish the families") {
  auto structure_for = [](ModelFamily family, std::uint32_t sites) {
    ModelSpec spec;
    spec.family = family;
    spec.sites = sites;
    const PauliSum h = build_model(spec);
    const Dla dla = generate_dla(h);
    return build_cartan_structure(dla, h);
  };

  // Transverse-field chains: strictly linear with slope -2.
  for (auto family : {ModelFamily::tfim, ModelFamily::tfxy}) {
    for (std::uint32_t l = 3; l <= 6; ++l) {
      const auto sizes = structure_for(family, l).fragment_sizes();
      for (std::size_t r = 0; r + 1 < sizes.size(); ++r) {
        CHECK(sizes[r] == sizes[r + 1] + 2);
      }
    }
  }

  // The xy chain splits into two components with matching profiles.
  {
    ModelSpec spec;
    spec.family = ModelFamily::xy;
    spec.sites = 6;
    const PauliSum h = build_model(spec);
    const Dla dla = generate_dla(h);
    const CartanStructure cs = build_cartan_structure(dla, h);
    const FrustrationGraph graph = frustration_components(dla);
    CHECK(graph.n_components == 2);
    std::vector<std::vector<std::size_t>> per_component(2);
    for (std::size_t r = 0; r < cs.b_basis.size(); ++r) {
      const auto idx = dla.index_of(cs.b_basis[r]);
      per_component[graph.component[*idx]].push_back(cs.fragments[r].size());
    }
    CHECK(per_component[0] == per_component[1]);
  }

  // The Heisenberg chain is not linear: consecutive differences vary.
  {
    const auto sizes = structure_for(ModelFamily::heisenberg, 5).fragment_sizes();
    std::vector<long> diffs;
    for (std::size_t r = 0; r + 1 < sizes.size(); ++r) {
      if (sizes[r + 1] == 0) break;
      diffs.push_back(static_cast<long>(sizes[r]) -
                      static_cast<long>(sizes[r + 1]));
    }
    REQUIRE(diffs.size() >= 2);
    bool constant = true;
    for (std::size_t i = 1; i < diffs.size(); ++i) {
      constant = constant && diffs[i] == diffs[0];
    }
    CHECK_FALSE(constant);
  }
}
