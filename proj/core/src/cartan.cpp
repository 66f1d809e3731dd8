#include "redcard/cartan.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "redcard/errors.hpp"

namespace redcard {

namespace {

bool in_sorted(const std::vector<PauliString>& sorted, const PauliString& p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p, CanonicalLess{});
  return it != sorted.end() && it->x_bits() == p.x_bits() &&
         it->z_bits() == p.z_bits();
}

void check_closure_relation(const std::vector<PauliString>& a,
                            const std::vector<PauliString>& b,
                            const std::vector<PauliString>& target,
                            const char* label) {
  for (const auto& p : a) {
    for (const auto& q : b) {
      auto c = commutator_basis(p, q);
      if (c.has_value() && !in_sorted(target, *c)) {
        throw ConsistencyError(std::string("closure relation ") + label +
                               " violated by [" + p.sparse_string() + ", " +
                               q.sparse_string() + "]");
      }
    }
  }
}

bool weight_canonical_less(const PauliString& a, const PauliString& b) {
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  return CanonicalLess{}(a, b);
}

/// True when some product of >= 2 distinct elements of b lies in m. The
/// exhaustive Gray-code walk is kept to 2^16 subsets; beyond that only pair
/// and triple products are scanned (triples are what empty the index sets).
bool has_multiplicative_structure(std::span<const PauliString> b,
                                  const std::vector<PauliString>& m_sorted) {
  if (b.size() < 2) return false;
  const std::size_t n = b.size();
  if (n <= 16) {
    PauliString prod(b[0].n_qubits());
    std::uint64_t state = 0;
    for (std::uint64_t counter = 1; counter < (1ULL << n); ++counter) {
      const std::uint64_t gray = counter ^ (counter >> 1);
      const std::uint64_t flipped = gray ^ state;
      const std::size_t idx = std::countr_zero(flipped);
      prod = multiply(prod, b[idx]).canonical();
      state = gray;
      if (std::popcount(state) >= 2 && in_sorted(m_sorted, prod)) return true;
    }
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const PauliString pair = multiply(b[i], b[j]).canonical();
      if (in_sorted(m_sorted, pair)) return true;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (in_sorted(m_sorted, multiply(pair, b[k]).canonical())) return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<std::size_t> CartanStructure::fragment_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(fragments.size());
  for (const auto& f : fragments) sizes.push_back(f.size());
  return sizes;
}

std::pair<std::vector<PauliString>, std::vector<PauliString>> split_km(
    const Dla& dla, const PauliSum& hamiltonian) {
  std::vector<PauliString> k_basis, m_basis;
  for (const auto& p : dla.basis) {
    (p.y_parity() == Parity::odd ? k_basis : m_basis).push_back(p);
  }
  for (const auto& [p, _] : hamiltonian.terms()) {
    if (p.y_parity() == Parity::odd) {
      throw InvolutionError("Hamiltonian term " + p.sparse_string() +
                            " has odd Y parity and lands outside m");
    }
  }
  check_closure_relation(k_basis, k_basis, k_basis, "[k,k] in k");
  check_closure_relation(m_basis, m_basis, k_basis, "[m,m] in k");
  check_closure_relation(k_basis, m_basis, m_basis, "[k,m] in m");
  return {std::move(k_basis), std::move(m_basis)};
}

std::vector<PauliString> build_cartan_subalgebra(
    std::span<const PauliString> m_basis, std::optional<PauliString> seed) {
  if (m_basis.empty()) {
    throw PreconditionError("cannot build a subalgebra from an empty m basis");
  }
  std::vector<PauliString> scan(m_basis.begin(), m_basis.end());
  std::sort(scan.begin(), scan.end(), weight_canonical_less);

  std::vector<PauliString> h;
  if (seed.has_value()) {
    const PauliString key = seed->canonical();
    auto it = std::find_if(scan.begin(), scan.end(), [&](const PauliString& p) {
      return p.x_bits() == key.x_bits() && p.z_bits() == key.z_bits();
    });
    if (it == scan.end()) {
      throw PreconditionError("seed " + key.sparse_string() +
                              " is not an m-basis string");
    }
    h.push_back(*it);
    scan.erase(it);
  }
  for (const auto& p : scan) {
    const bool commutes_all =
        std::all_of(h.begin(), h.end(),
                    [&](const PauliString& q) { return p.commutes_with(q); });
    if (commutes_all) h.push_back(p);
  }
  return h;
}

namespace {

/// (z | x) viewed as one 128-bit GF(2) row.
struct SymplecticRow {
  std::uint64_t x = 0, z = 0;

  bool zero() const { return x == 0 && z == 0; }
  int lead() const {
    return z != 0 ? 64 + (63 - std::countl_zero(z)) : 63 - std::countl_zero(x);
  }
  void operator^=(const SymplecticRow& other) {
    x ^= other.x;
    z ^= other.z;
  }
};

}  // namespace

std::vector<PauliString> reduce_generators(
    std::span<const PauliString> h_basis) {
  for (std::size_t i = 0; i < h_basis.size(); ++i) {
    for (std::size_t j = i + 1; j < h_basis.size(); ++j) {
      if (!h_basis[i].commutes_with(h_basis[j])) {
        throw PreconditionError("generator reduction needs a commuting set");
      }
    }
  }
  // Products of commuting strings XOR their symplectic masks, so a
  // multiplicatively independent subset is a GF(2) basis of the rows.
  std::map<int, SymplecticRow> pivots;  // keyed by leading bit
  std::vector<PauliString> b;
  for (const auto& p : h_basis) {
    SymplecticRow row{p.x_bits(), p.z_bits()};
    while (!row.zero()) {
      auto it = pivots.find(row.lead());
      if (it == pivots.end()) break;
      row ^= it->second;
    }
    if (row.zero()) continue;  // product of earlier generators
    pivots.emplace(row.lead(), row);
    b.push_back(p);
  }
  if (!b.empty() && b.size() > b.front().n_qubits()) {
    // An isotropic subspace of the symplectic space has rank at most n.
    throw ConsistencyError("commuting set with rank above the qubit count");
  }
  return b;
}

std::vector<std::vector<PauliString>> fragment_k(
    std::span<const PauliString> k_basis,
    std::span<const PauliString> b_basis) {
  std::vector<std::vector<PauliString>> fragments(b_basis.size());
  std::vector<PauliString> residual;
  for (const auto& k : k_basis) {
    bool assigned = false;
    for (std::size_t r = 0; r < b_basis.size(); ++r) {
      if (!k.commutes_with(b_basis[r])) {
        fragments[r].push_back(k);
        assigned = true;
        break;
      }
    }
    if (!assigned) residual.push_back(k);
  }
  if (!residual.empty()) {
    throw ConsistencyError(
        std::to_string(residual.size()) +
        " k strings commute with every generator; h is not maximal "
        "(first: " +
        residual.front().sparse_string() + ")");
  }
  return fragments;
}

std::vector<PauliString> r_symmetric(std::span<const PauliString> basis,
                                     std::span<const PauliString> b_basis,
                                     std::size_t r) {
  std::vector<PauliString> out;
  for (const auto& p : basis) {
    bool ok = true;
    for (std::size_t j = 0; j + 1 < r && j < b_basis.size(); ++j) {
      if (!p.commutes_with(b_basis[j])) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(p);
  }
  return out;
}

OrderingReport check_ordering(
    const std::vector<std::vector<PauliString>>& fragments,
    const FrustrationGraph& graph, const Dla& dla,
    std::span<const PauliString> b_basis,
    std::span<const PauliString> m_basis) {
  if (fragments.size() != b_basis.size()) {
    throw PreconditionError("one fragment per generator expected");
  }
  std::vector<PauliString> m_sorted(m_basis.begin(), m_basis.end());
  std::sort(m_sorted.begin(), m_sorted.end(), CanonicalLess{});

  // Group generator positions by frustration component.
  std::map<std::uint32_t, std::vector<std::size_t>> by_component;
  for (std::size_t r = 0; r < b_basis.size(); ++r) {
    const auto idx = dla.index_of(b_basis[r]);
    if (!idx) {
      throw PreconditionError("generator outside the algebra basis");
    }
    by_component[graph.component[*idx]].push_back(r);
  }

  OrderingReport report;
  report.ok = true;
  for (const auto& [component, positions] : by_component) {
    ComponentOrdering entry;
    entry.component = component;
    entry.b_positions = positions;
    for (std::size_t pos : positions) {
      entry.sizes.push_back(fragments[pos].size());
    }

    // Nonempty sizes must strictly decrease; empties may only trail.
    entry.nonempty_strictly_decreasing = true;
    entry.empties_at_end = true;
    std::size_t prev = 0;
    bool have_prev = false;
    bool seen_empty = false;
    for (std::size_t s : entry.sizes) {
      if (s == 0) {
        seen_empty = true;
        continue;
      }
      if (seen_empty) entry.empties_at_end = false;
      if (have_prev && s >= prev) entry.nonempty_strictly_decreasing = false;
      prev = s;
      have_prev = true;
    }
    if (!entry.nonempty_strictly_decreasing) {
      throw ConsistencyError("nonempty fragment sizes fail to decrease in "
                             "component " +
                             std::to_string(component));
    }

    // Linear law: with no multiplicative structure, sizes are an arithmetic
    // sequence fixed by the weight-one and weight-two anticommutation counts.
    std::vector<PauliString> b_comp;
    for (std::size_t pos : positions) b_comp.push_back(b_basis[pos]);
    if (b_comp.size() >= 2 &&
        !has_multiplicative_structure(b_comp, m_sorted)) {
      entry.linear_law_applicable = true;
      const std::size_t n = b_comp.size();
      auto count_pattern = [&](std::size_t anti_a, std::size_t anti_b,
                               bool pair) {
        std::size_t count = 0;
        for (const auto& frag : fragments) {
          for (const auto& k : frag) {
            bool match = !k.commutes_with(b_comp[anti_a]) &&
                         (!pair || !k.commutes_with(b_comp[anti_b]));
            if (!match) continue;
            for (std::size_t j = 0; j < n; ++j) {
              if (j == anti_a || (pair && j == anti_b)) continue;
              if (!k.commutes_with(b_comp[j])) {
                match = false;
                break;
              }
            }
            if (match) ++count;
          }
        }
        return count;
      };
      entry.linear_base = count_pattern(0, 0, false);
      entry.linear_slope_unit = count_pattern(0, 1, true);
      entry.linear_law_holds = true;
      for (std::size_t r = 0; r < entry.sizes.size(); ++r) {
        const std::size_t expected =
            entry.linear_base + (n - 1 - r) * entry.linear_slope_unit;
        if (entry.sizes[r] != expected) {
          entry.linear_law_holds = false;
          break;
        }
      }
      if (!entry.linear_law_holds) {
        throw ConsistencyError(
            "linear fragment-size law violated in component " +
            std::to_string(component));
      }
    }
    if (!entry.empties_at_end) report.ok = false;
    report.components.push_back(std::move(entry));
  }
  return report;
}

CartanStructure build_cartan_structure(const Dla& dla,
                                       const PauliSum& hamiltonian,
                                       const CartanOptions& options) {
  CartanStructure cs;
  std::tie(cs.k_basis, cs.m_basis) = split_km(dla, hamiltonian);

  std::optional<PauliString> seed = options.h_seed;
  if (!seed.has_value()) {
    // Default: the Hamiltonian term string first in (weight, canonical) order.
    for (const auto& [p, _] : hamiltonian.terms()) {
      if (!seed.has_value() || weight_canonical_less(p, *seed)) seed = p;
    }
  }
  cs.h_basis = build_cartan_subalgebra(cs.m_basis, seed);

  if (!options.h_order.empty()) {
    if (options.h_order.size() != cs.h_basis.size()) {
      throw PreconditionError("h permutation length mismatch");
    }
    std::vector<std::size_t> sorted = options.h_order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i) {
        throw PreconditionError("h permutation is not a permutation");
      }
    }
    std::vector<PauliString> permuted;
    permuted.reserve(cs.h_basis.size());
    for (std::size_t idx : options.h_order) permuted.push_back(cs.h_basis[idx]);
    cs.h_basis = std::move(permuted);
  }

  cs.b_basis = reduce_generators(cs.h_basis);
  cs.fragments = fragment_k(cs.k_basis, cs.b_basis);
  return cs;
}

}  // namespace redcard
