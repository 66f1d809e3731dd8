#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "redcard/algebra.hpp"
#include "redcard/pauli.hpp"

namespace redcard {

/// The Cartan decomposition of a DLA plus the derived optimization layout:
/// g = k + m under the Y-parity involution, an ordered maximal Abelian
/// h inside m, its reduced multiplicative generating set b, and the
/// fragments of k keyed by the first b element each string anticommutes
/// with. fragments[r] holds the angle set of optimization subproblem r+1;
/// trailing fragments may be empty.
struct CartanStructure {
  std::vector<PauliString> k_basis;
  std::vector<PauliString> m_basis;
  std::vector<PauliString> h_basis;  // order defines the reduction sequence
  std::vector<PauliString> b_basis;  // subset of h_basis, order preserved
  std::vector<std::vector<PauliString>> fragments;  // one per b element

  std::vector<std::size_t> fragment_sizes() const;
};

/// Splits the basis by Y parity (odd -> k, even -> m) and validates the
/// three closure relations and that every Hamiltonian term lies in m.
std::pair<std::vector<PauliString>, std::vector<PauliString>> split_km(
    const Dla& dla, const PauliSum& hamiltonian);

/// Greedy maximal Abelian subset of m_basis. The scan starts from the seed
/// and then visits strings by ascending (weight, canonical) order, adding
/// each one that commutes with everything already chosen. The add order is
/// the returned order.
std::vector<PauliString> build_cartan_subalgebra(
    std::span<const PauliString> m_basis,
    std::optional<PauliString> seed = std::nullopt);

/// GF(2) elimination over the symplectic encodings: returns the subsequence
/// of h_basis that is multiplicatively independent; every h element is a
/// product of returned elements, and at most n survive.
std::vector<PauliString> reduce_generators(std::span<const PauliString> h_basis);

/// Assigns each k string to the fragment of the first b element it
/// anticommutes with. Strings commuting with all of b would form a residual
/// set, which must be empty when h is maximal Abelian; a nonempty residual
/// raises ConsistencyError.
std::vector<std::vector<PauliString>> fragment_k(
    std::span<const PauliString> k_basis, std::span<const PauliString> b_basis);

/// Basis strings commuting with b[0..r-1); r = 1 returns everything.
std::vector<PauliString> r_symmetric(std::span<const PauliString> basis,
                                     std::span<const PauliString> b_basis,
                                     std::size_t r);

struct ComponentOrdering {
  std::uint32_t component = 0;
  std::vector<std::size_t> b_positions;  // positions into b_basis
  std::vector<std::size_t> sizes;        // fragment sizes in sequence order
  bool nonempty_strictly_decreasing = false;
  bool empties_at_end = false;
  /// Linear size law, asserted only when b has no multiplicative structure
  /// inside m: sizes[r] == base + (n - 1 - r) * slope_unit.
  bool linear_law_applicable = false;
  bool linear_law_holds = false;
  std::size_t linear_base = 0;
  std::size_t linear_slope_unit = 0;
};

struct OrderingReport {
  std::vector<ComponentOrdering> components;
  bool ok = false;
};

/// Checks, per frustration-graph component, that nonempty fragment sizes
/// strictly decrease with empty sets at the end, and the linear size law
/// where it applies. A violated inequality indicates a bug and raises
/// ConsistencyError.
OrderingReport check_ordering(
    const std::vector<std::vector<PauliString>>& fragments,
    const FrustrationGraph& graph, const Dla& dla,
    std::span<const PauliString> b_basis,
    std::span<const PauliString> m_basis);

struct CartanOptions {
  std::optional<PauliString> h_seed;
  /// Optional permutation of the greedy h order (0-indexed positions).
  std::vector<std::size_t> h_order;
};

/// Runs the whole structural pipeline: split, subalgebra, reduction,
/// fragmentation. The default seed is the Hamiltonian term string that is
/// first in (weight, canonical) order.
CartanStructure build_cartan_structure(const Dla& dla,
                                       const PauliSum& hamiltonian,
                                       const CartanOptions& options = {});

}  // namespace redcard
