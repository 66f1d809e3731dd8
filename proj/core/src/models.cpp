#include "redcard/models.hpp"

#include "redcard/errors.hpp"

namespace redcard {

ModelFamily parse_model_family(std::string_view name) {
  if (name == "tfim") return ModelFamily::tfim;
  if (name == "tfxy") return ModelFamily::tfxy;
  if (name == "xy") return ModelFamily::xy;
  if (name == "heisenberg") return ModelFamily::heisenberg;
  throw PreconditionError("unknown model family '" + std::string(name) + "'");
}

std::string to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::tfim:
      return "tfim";
    case ModelFamily::tfxy:
      return "tfxy";
    case ModelFamily::xy:
      return "xy";
    case ModelFamily::heisenberg:
      return "heisenberg";
  }
  return "?";
}

PauliSum build_model(const ModelSpec& spec) {
  if (spec.sites < 2) {
    throw PreconditionError("spin chains need at least 2 sites");
  }
  const std::uint32_t l = spec.sites;
  PauliSum h(l);

  auto bond = [&](char letter, double coeff) {
    if (coeff == 0.0) return;
    const std::uint32_t n_bonds = spec.periodic ? l : l - 1;
    for (std::uint32_t i = 0; i < n_bonds; ++i) {
      const std::uint32_t j = (i + 1) % l;
      h.add(PauliString::from_sites(l, {{i, letter}, {j, letter}}), coeff);
    }
  };
  auto field = [&](double coeff) {
    if (coeff == 0.0) return;
    for (std::uint32_t i = 0; i < l; ++i) {
      h.add(PauliString::from_sites(l, {{i, 'Z'}}), coeff);
    }
  };

  switch (spec.family) {
    case ModelFamily::tfim:
      bond('X', -spec.coupling_x);
      field(spec.field);
      break;
    case ModelFamily::tfxy:
      bond('X', -spec.coupling_x);
      bond('Y', -spec.coupling_y);
      field(spec.field);
      break;
    case ModelFamily::xy:
      bond('X', spec.coupling_x);
      bond('Y', spec.coupling_y);
      break;
    case ModelFamily::heisenberg:
      bond('X', spec.coupling_x);
      bond('Y', spec.coupling_y);
      bond('Z', spec.coupling_z);
      break;
  }
  return h;
}

}  // namespace redcard
