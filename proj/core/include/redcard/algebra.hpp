#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "redcard/pauli.hpp"

namespace redcard {

/// Default cap on generated Lie-algebra dimensions; bounds memory when the
/// closure grows exponentially with system size.
inline constexpr std::size_t kDefaultMaxDlaDim = 1u << 16;

/// Basis of the dynamical Lie algebra generated by a Hamiltonian's Pauli
/// strings under commutator closure. The basis is canonically sorted and
/// closed: every pairwise commutator is either zero or lands in the basis.
struct Dla {
  std::vector<PauliString> basis;
  /// Positions of the Hamiltonian terms' strings within basis.
  std::vector<std::size_t> generator_indices;
  std::uint32_t n_qubits = 0;

  std::size_t dim() const { return basis.size(); }
  std::optional<std::size_t> index_of(const PauliString& p) const;
  bool contains(const PauliString& p) const { return index_of(p).has_value(); }
};

/// Graph on DLA basis indices with edges between anticommuting pairs,
/// plus connected-component labels.
struct FrustrationGraph {
  std::vector<std::vector<bool>> adjacency;
  std::vector<std::uint32_t> component;
  std::uint32_t n_components = 0;

  std::size_t n_vertices() const { return adjacency.size(); }
  bool edge(std::size_t i, std::size_t j) const { return adjacency[i][j]; }
};

/// Breadth-first commutator closure of the Hamiltonian's term strings.
/// Throws CapacityError (carrying the partial dimension) when the basis
/// would exceed max_dim.
Dla generate_dla(const PauliSum& hamiltonian,
                 std::size_t max_dim = kDefaultMaxDlaDim);

FrustrationGraph frustration_components(const Dla& dla);

/// For commuting b1, b2 in the same component, returns a basis string
/// anticommuting with both (such a witness always exists there). Raises
/// PreconditionError for non-commuting or out-of-basis inputs and
/// ConsistencyError when the strings sit in different components.
std::optional<PauliString> distance2_witness(const Dla& dla,
                                             const PauliString& b1,
                                             const PauliString& b2);

}  // namespace redcard
