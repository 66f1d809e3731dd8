#include "redcard/emit.hpp"

#include "redcard/errors.hpp"

namespace redcard {

Circuit build_evolution_circuit(const SynthesisResult& result, double t,
                                bool force) {
  if (!result.converged && !force) {
    throw ConsistencyError(
        "refusing to emit from a non-converged result (pass force to "
        "override)");
  }
  for (const auto& frag : result.fragments) {
    if (frag.factors.size() != frag.angles.size()) {
      throw ConsistencyError("fragment factor/angle count mismatch");
    }
  }

  Circuit circuit;
  circuit.n_qubits = result.n_qubits;

  // The operator is B_1 ... B_R C B_R† ... B_1† with B_r = prod_j e^{i a_j P_j},
  // so time order runs B_1† first. In IR terms e^{i a P} is rotation(P, -2a)
  // and its inverse is rotation(P, +2a).
  for (const auto& frag : result.fragments) {
    for (std::size_t i = 0; i < frag.factors.size(); ++i) {
      circuit.push(Gate::rotation(frag.factors[i], 2 * frag.angles[i]));
    }
    if (!frag.factors.empty()) circuit.push(Gate::barrier());
  }
  for (const auto& h : result.h_basis) {
    circuit.push(Gate::rotation(h, 2 * t * result.h_final.coeff(h)));
  }
  if (!result.h_basis.empty()) circuit.push(Gate::barrier());
  for (auto frag = result.fragments.rbegin(); frag != result.fragments.rend();
       ++frag) {
    for (std::size_t i = frag->factors.size(); i-- > 0;) {
      circuit.push(Gate::rotation(frag->factors[i], -2 * frag->angles[i]));
    }
    if (!frag->factors.empty()) circuit.push(Gate::barrier());
  }
  return circuit;
}

Circuit build_compressed_tfxy_circuit(const SynthesisResult& result, double t,
                                      bool force) {
  const std::uint32_t l = result.n_qubits;
  if (result.b_basis.size() != l) {
    throw UnsupportedAnsatzError(
        "compressed emission needs one single-site Z generator per site");
  }
  for (std::uint32_t i = 0; i < l; ++i) {
    const PauliString expected = PauliString::from_sites(l, {{i, 'Z'}});
    if (result.b_basis[i].x_bits() != expected.x_bits() ||
        result.b_basis[i].z_bits() != expected.z_bits()) {
      throw UnsupportedAnsatzError(
          "compressed emission needs generators Z_1..Z_l in site order");
    }
  }
  if (result.fragments.size() != l) {
    throw UnsupportedAnsatzError("one subproblem per site expected");
  }
  for (std::uint32_t r = 0; r < l; ++r) {
    const auto& factors = result.fragments[r].factors;
    if (factors.size() != 2 * (l - 1 - r)) {
      throw UnsupportedAnsatzError(
          "fragment was not optimized with the compressed doublet chain");
    }
    std::size_t idx = 0;
    for (std::uint32_t j = l - 1; j > r; --j, idx += 2) {
      const PauliString xy =
          PauliString::from_sites(l, {{j - 1, 'X'}, {j, 'Y'}});
      const PauliString yx =
          PauliString::from_sites(l, {{j - 1, 'Y'}, {j, 'X'}});
      if (factors[idx].x_bits() != xy.x_bits() ||
          factors[idx].z_bits() != xy.z_bits() ||
          factors[idx + 1].x_bits() != yx.x_bits() ||
          factors[idx + 1].z_bits() != yx.z_bits()) {
        throw UnsupportedAnsatzError(
            "fragment was not optimized with the compressed doublet chain");
      }
    }
  }
  return build_evolution_circuit(result, t, force);
}

}  // namespace redcard
