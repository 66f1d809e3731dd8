#include "redcard/algebra.hpp"

#include <algorithm>
#include <unordered_set>

#include "redcard/errors.hpp"

namespace redcard {

namespace {

struct MaskHash {
  std::size_t operator()(const PauliString& p) const {
    std::uint64_t h = p.z_bits() * 0x9e3779b97f4a7c15ULL;
    h ^= p.x_bits() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

struct MaskEq {
  bool operator()(const PauliString& a, const PauliString& b) const {
    return a.x_bits() == b.x_bits() && a.z_bits() == b.z_bits();
  }
};

}  // namespace

std::optional<std::size_t> Dla::index_of(const PauliString& p) const {
  const PauliString key = p.canonical();
  auto it = std::lower_bound(basis.begin(), basis.end(), key, CanonicalLess{});
  if (it == basis.end() || !MaskEq{}(*it, key)) return std::nullopt;
  return static_cast<std::size_t>(it - basis.begin());
}

Dla generate_dla(const PauliSum& hamiltonian, std::size_t max_dim) {
  if (hamiltonian.empty()) {
    throw PreconditionError("cannot generate a Lie algebra from an empty sum");
  }
  if (max_dim < hamiltonian.size()) {
    throw PreconditionError("max_dim is smaller than the number of terms");
  }

  std::vector<PauliString> basis;
  std::unordered_set<PauliString, MaskHash, MaskEq> seen;
  for (const auto& [p, _] : hamiltonian.terms()) {
    if (p.is_identity()) {
      throw PreconditionError(
          "identity terms are central and do not belong in the algebra");
    }
    if (seen.insert(p).second) basis.push_back(p);
  }

  // Every unordered pair is visited exactly once, when its later element is
  // processed; the basis grows while the loop runs.
  for (std::size_t i = 1; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      auto c = commutator_basis(basis[i], basis[j]);
      if (!c.has_value() || seen.contains(*c)) continue;
      if (basis.size() >= max_dim) {
        throw CapacityError(
            "Lie-algebra closure exceeded the dimension cap of " +
                std::to_string(max_dim),
            basis.size());
      }
      seen.insert(*c);
      basis.push_back(*c);
    }
  }

  std::sort(basis.begin(), basis.end(), CanonicalLess{});

  Dla dla;
  dla.n_qubits = hamiltonian.n_qubits();
  dla.basis = std::move(basis);
  for (const auto& [p, _] : hamiltonian.terms()) {
    auto idx = dla.index_of(p);
    dla.generator_indices.push_back(*idx);
  }
  return dla;
}

FrustrationGraph frustration_components(const Dla& dla) {
  const std::size_t n = dla.dim();
  FrustrationGraph graph;
  graph.adjacency.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!dla.basis[i].commutes_with(dla.basis[j])) {
        graph.adjacency[i][j] = true;
        graph.adjacency[j][i] = true;
      }
    }
  }

  graph.component.assign(n, 0);
  std::vector<bool> visited(n, false);
  std::uint32_t label = 0;
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (visited[root]) continue;
    stack.push_back(root);
    visited[root] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      graph.component[v] = label;
      for (std::size_t w = 0; w < n; ++w) {
        if (graph.adjacency[v][w] && !visited[w]) {
          visited[w] = true;
          stack.push_back(w);
        }
      }
    }
    ++label;
  }
  graph.n_components = label;
  return graph;
}

std::optional<PauliString> distance2_witness(const Dla& dla,
                                             const PauliString& b1,
                                             const PauliString& b2) {
  const auto i1 = dla.index_of(b1);
  const auto i2 = dla.index_of(b2);
  if (!i1 || !i2) {
    throw PreconditionError("witness endpoints must belong to the basis");
  }
  if (!b1.commutes_with(b2)) {
    throw PreconditionError("witness endpoints must commute");
  }
  const FrustrationGraph graph = frustration_components(dla);
  if (graph.component[*i1] != graph.component[*i2]) {
    throw ConsistencyError(
        "no witness is guaranteed across different components");
  }
  for (const auto& g : dla.basis) {
    if (!g.commutes_with(b1) && !g.commutes_with(b2)) return g;
  }
  // A self-pair on an isolated vertex has no neighbours at all.
  if (*i1 == *i2) return std::nullopt;
  // Connectivity guarantees a witness for distinct pairs; this is a bug.
  throw ConsistencyError("connected commuting pair without a witness");
}

}  // namespace redcard
