#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "redcard/pauli.hpp"

namespace redcard {

enum class ModelFamily { tfim, tfxy, xy, heisenberg };

ModelFamily parse_model_family(std::string_view name);
std::string to_string(ModelFamily family);

/// One-dimensional nearest-neighbour spin chain. Open boundaries by default
/// (l-1 bond terms); the periodic wrap bond is experimental.
struct ModelSpec {
  ModelFamily family = ModelFamily::tfim;
  std::uint32_t sites = 2;
  double coupling_x = 1.0;
  double coupling_y = 1.0;
  double coupling_z = 1.0;
  double field = 0.5;
  bool periodic = false;
};

/// Hamiltonians, with the signs fixed as:
///   tfim:        -Jx sum X_i X_{i+1} + g sum Z_i
///   tfxy:        -Jx sum X_i X_{i+1} - Jy sum Y_i Y_{i+1} + g sum Z_i
///   xy:           Jx sum X_i X_{i+1} + Jy sum Y_i Y_{i+1}
///   heisenberg:   Jx sum X_i X_{i+1} + Jy sum Y_i Y_{i+1} + Jz sum Z_i Z_{i+1}
PauliSum build_model(const ModelSpec& spec);

}  // namespace redcard
