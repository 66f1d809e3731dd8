#include "redcard/pauli.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>

#include "redcard/errors.hpp"

namespace redcard {

namespace {

void check_width(std::uint32_t n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) {
    throw DimensionError("qubit count must be in [1, " +
                         std::to_string(kMaxQubits) + "], got " +
                         std::to_string(n_qubits));
  }
}

void check_same_width(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("qubit-count mismatch: " +
                         std::to_string(a.n_qubits()) + " vs " +
                         std::to_string(b.n_qubits()));
  }
}

std::uint64_t width_mask(std::uint32_t n_qubits) {
  return n_qubits == 64 ? ~0ULL : (1ULL << n_qubits) - 1;
}

}  // namespace

PauliString::PauliString(std::uint32_t n_qubits) : n_qubits_(n_qubits) {
  check_width(n_qubits);
}

PauliString::PauliString(std::uint32_t n_qubits, std::uint64_t x_bits,
                         std::uint64_t z_bits, std::uint8_t phase)
    : x_bits_(x_bits), z_bits_(z_bits), phase_(phase & 3), n_qubits_(n_qubits) {
  check_width(n_qubits);
  const std::uint64_t mask = width_mask(n_qubits);
  if ((x_bits & ~mask) != 0 || (z_bits & ~mask) != 0) {
    throw DimensionError("mask bits outside the declared qubit range");
  }
}

PauliString PauliString::from_sites(
    std::uint32_t n_qubits,
    std::initializer_list<std::pair<std::uint32_t, char>> sites) {
  std::uint64_t x = 0, z = 0;
  for (const auto& [q, letter] : sites) {
    if (q >= n_qubits) {
      throw DimensionError("site index out of range");
    }
    const std::uint64_t bit = 1ULL << q;
    switch (letter) {
      case 'X':
        x |= bit;
        break;
      case 'Y':
        x |= bit;
        z |= bit;
        break;
      case 'Z':
        z |= bit;
        break;
      case 'I':
        break;
      default:
        throw PreconditionError(std::string("unknown Pauli letter '") + letter +
                                "'");
    }
  }
  return PauliString(n_qubits, x, z);
}

char PauliString::site(std::uint32_t q) const {
  if (q >= n_qubits_) {
    throw DimensionError("site index out of range");
  }
  const bool x = (x_bits_ >> q) & 1;
  const bool z = (z_bits_ >> q) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::uint32_t PauliString::weight() const {
  return static_cast<std::uint32_t>(std::popcount(x_bits_ | z_bits_));
}

PauliString PauliString::canonical() const {
  return PauliString(n_qubits_, x_bits_, z_bits_, 0);
}

Parity PauliString::y_parity() const {
  return (std::popcount(x_bits_ & z_bits_) & 1) ? Parity::odd : Parity::even;
}

bool PauliString::commutes_with(const PauliString& other) const {
  check_same_width(*this, other);
  const int form = std::popcount(x_bits_ & other.z_bits_) +
                   std::popcount(z_bits_ & other.x_bits_);
  return (form & 1) == 0;
}

std::string PauliString::to_string() const {
  std::string out(n_qubits_, 'I');
  for (std::uint32_t q = 0; q < n_qubits_; ++q) {
    out[q] = site(q);
  }
  return out;
}

std::string PauliString::sparse_string() const {
  if (is_identity()) return "I";
  std::ostringstream out;
  bool first = true;
  for (std::uint32_t q = 0; q < n_qubits_; ++q) {
    const char c = site(q);
    if (c == 'I') continue;
    if (!first) out << ' ';
    out << c << (q + 1);
    first = false;
  }
  return out.str();
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  check_same_width(a, b);
  const std::uint64_t x = a.x_bits() ^ b.x_bits();
  const std::uint64_t z = a.z_bits() ^ b.z_bits();
  // Per-qubit convention P(x,z) = i^{xz} X^x Z^z; summing the per-qubit
  // exponents of i reduces to four popcounts.
  const int g = std::popcount(a.x_bits() & a.z_bits()) +
                std::popcount(b.x_bits() & b.z_bits()) +
                2 * std::popcount(a.z_bits() & b.x_bits()) -
                std::popcount(x & z);
  const int phase = ((a.phase() + b.phase() + g) % 4 + 4) % 4;
  return PauliString(a.n_qubits(), x, z, static_cast<std::uint8_t>(phase));
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

std::optional<PauliString> commutator_basis(const PauliString& a,
                                            const PauliString& b) {
  if (a.commutes_with(b)) return std::nullopt;
  return multiply(a, b).canonical();
}

PauliString parse_pauli(std::string_view text, std::uint32_t n_qubits) {
  // Sparse form iff a digit appears; otherwise dense.
  bool sparse = false;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      sparse = true;
      break;
    }
  }
  if (!sparse) {
    std::string dense;
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      dense.push_back(c);
    }
    if (n_qubits == 0) n_qubits = static_cast<std::uint32_t>(dense.size());
    if (dense.size() != n_qubits) {
      throw DimensionError("dense Pauli text length does not match qubit count");
    }
    std::uint64_t x = 0, z = 0;
    for (std::uint32_t q = 0; q < n_qubits; ++q) {
      const std::uint64_t bit = 1ULL << q;
      switch (dense[q]) {
        case 'I':
          break;
        case 'X':
          x |= bit;
          break;
        case 'Y':
          x |= bit;
          z |= bit;
          break;
        case 'Z':
          z |= bit;
          break;
        default:
          throw PreconditionError(std::string("unknown Pauli letter '") +
                                  dense[q] + "'");
      }
    }
    return PauliString(n_qubits, x, z);
  }

  // Sparse: whitespace-separated tokens like "X1" with 1-indexed sites.
  std::uint64_t x = 0, z = 0, seen = 0;
  std::uint32_t max_site = 0;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token.size() < 2) {
      throw PreconditionError("bad sparse Pauli token '" + token + "'");
    }
    const char letter = token[0];
    std::size_t pos = 0;
    unsigned long site1 = 0;
    try {
      site1 = std::stoul(token.substr(1), &pos);
    } catch (const std::exception&) {
      throw PreconditionError("bad site index in token '" + token + "'");
    }
    if (pos + 1 != token.size() || site1 == 0) {
      throw PreconditionError("bad sparse Pauli token '" + token + "'");
    }
    const std::uint32_t q = static_cast<std::uint32_t>(site1 - 1);
    if (q >= kMaxQubits || (n_qubits != 0 && q >= n_qubits)) {
      throw DimensionError("site index out of range in token '" + token + "'");
    }
    const std::uint64_t bit = 1ULL << q;
    if (seen & bit) {
      throw PreconditionError("duplicate site in sparse Pauli text");
    }
    seen |= bit;
    max_site = std::max(max_site, q + 1);
    switch (letter) {
      case 'X':
        x |= bit;
        break;
      case 'Y':
        x |= bit;
        z |= bit;
        break;
      case 'Z':
        z |= bit;
        break;
      default:
        throw PreconditionError(std::string("unknown Pauli letter '") + letter +
                                "'");
    }
  }
  if (n_qubits == 0) n_qubits = max_site;
  if (n_qubits == 0) {
    throw PreconditionError("cannot infer qubit count from empty Pauli text");
  }
  return PauliString(n_qubits, x, z);
}

PauliSum::PauliSum(std::uint32_t n_qubits) : n_qubits_(n_qubits) {
  check_width(n_qubits);
}

void PauliSum::add(const PauliString& s, double coeff) {
  if (s.n_qubits() != n_qubits_) {
    throw DimensionError("term width does not match sum width");
  }
  double folded = coeff;
  switch (s.phase()) {
    case 0:
      break;
    case 2:
      folded = -coeff;
      break;
    default:
      throw ConsistencyError(
          "odd i-power on a term would make the sum non-Hermitian");
  }
  const PauliString key = s.canonical();
  auto [it, inserted] = terms_.try_emplace(key, folded);
  if (!inserted) it->second += folded;
  if (std::abs(it->second) < kCoeffTol) terms_.erase(it);
}

double PauliSum::coeff(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? 0.0 : it->second;
}

bool PauliSum::contains(const PauliString& s) const {
  return terms_.contains(s);
}

double PauliSum::norm() const {
  double sq = 0.0;
  for (const auto& [_, c] : terms_) sq += c * c;
  return std::sqrt(sq);
}

}  // namespace redcard
