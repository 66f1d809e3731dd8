#pragma once

#include "redcard/circuit.hpp"
#include "redcard/optimize.hpp"

namespace redcard {

/// The fixed-depth evolution circuit B_1 ... B_R exp(-i t h) B_R† ... B_1†,
/// where block B_r multiplies the exponentials of subproblem r's factors and
/// the center applies one rotation per h string. Gate count is independent
/// of t; only the center angles carry it. A non-converged result is rejected
/// unless force is set.
Circuit build_evolution_circuit(const SynthesisResult& result, double t,
                                bool force = false);

/// Same contract, but requires the result to have been optimized with the
/// compressed transverse-field XY ansatz of nearest-neighbour doublets; the
/// emitted blocks then contain only weight-2 nearest-neighbour rotations,
/// l(l-1)/2 doublets per side. Other structures raise UnsupportedAnsatzError.
Circuit build_compressed_tfxy_circuit(const SynthesisResult& result, double t,
                                      bool force = false);

}  // namespace redcard
