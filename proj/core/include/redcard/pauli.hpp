#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace redcard {

/// Masks are packed into single 64-bit words, so strings are capped here.
inline constexpr std::uint32_t kMaxQubits = 64;

/// Coefficients with magnitude below this are dropped from sum arithmetic,
/// so conjugation by exact multiples of pi/2 yields exact strings.
inline constexpr double kCoeffTol = 1e-12;

enum class Parity { even, odd };

/// An n-qubit Pauli string in binary symplectic form with a separate phase.
///
/// Qubit q (0-indexed) carries I, X, Z or Y for the bit pair
/// (x_bit, z_bit) = (0,0), (1,0), (0,1), (1,1). The phase field is the power
/// of i accumulated by products; canonical basis strings carry phase 0 and
/// real coefficients live in PauliSum.
class PauliString {
 public:
  /// Identity on n qubits.
  explicit PauliString(std::uint32_t n_qubits);
  PauliString(std::uint32_t n_qubits, std::uint64_t x_bits, std::uint64_t z_bits,
              std::uint8_t phase = 0);

  /// Builds from 0-indexed (site, letter) pairs, e.g. {{0,'X'},{1,'Y'}}.
  static PauliString from_sites(
      std::uint32_t n_qubits,
      std::initializer_list<std::pair<std::uint32_t, char>> sites);

  std::uint32_t n_qubits() const { return n_qubits_; }
  std::uint64_t x_bits() const { return x_bits_; }
  std::uint64_t z_bits() const { return z_bits_; }
  /// Power of i carried by this string, in {0,1,2,3}.
  int phase() const { return phase_; }

  /// Letter at 0-indexed qubit q: 'I', 'X', 'Y' or 'Z'.
  char site(std::uint32_t q) const;
  /// Number of non-identity sites.
  std::uint32_t weight() const;
  bool is_identity() const { return x_bits_ == 0 && z_bits_ == 0; }

  /// Same string with the phase reset to 0.
  PauliString canonical() const;

  /// Parity of the number of Y sites. The default involution assigns
  /// odd-parity strings to k and even-parity strings to m.
  Parity y_parity() const;

  /// True iff the symplectic form vanishes; Pauli strings either commute or
  /// anticommute.
  bool commutes_with(const PauliString& other) const;

  /// Dense text form, qubit 0 first: e.g. "XZY".
  std::string to_string() const;
  /// Sparse 1-indexed text form: e.g. "X1 Z2 Y3"; identity renders as "I".
  std::string sparse_string() const;

  friend PauliString operator*(const PauliString& a, const PauliString& b);
  auto operator<=>(const PauliString&) const = default;

 private:
  std::uint64_t x_bits_ = 0;
  std::uint64_t z_bits_ = 0;
  std::uint8_t phase_ = 0;
  std::uint32_t n_qubits_ = 0;
};

/// Product with accumulated phase mod 4.
PauliString multiply(const PauliString& a, const PauliString& b);

/// Canonical string proportional to [a, b], or empty when they commute.
std::optional<PauliString> commutator_basis(const PauliString& a,
                                            const PauliString& b);

/// Orders by (z_bits, x_bits); the phase and qubit count are ignored, so use
/// only over same-width canonical strings.
struct CanonicalLess {
  bool operator()(const PauliString& a, const PauliString& b) const {
    return a.z_bits() != b.z_bits() ? a.z_bits() < b.z_bits()
                                    : a.x_bits() < b.x_bits();
  }
};

/// Parses the dense form ("XZY") or the sparse 1-indexed form ("X1 Z2 Y3").
/// With n_qubits == 0 the width is inferred (dense: length; sparse: largest
/// site index).
PauliString parse_pauli(std::string_view text, std::uint32_t n_qubits = 0);

/// Coefficient map in canonical order, the working representation of sums.
using TermMap = std::map<PauliString, double, CanonicalLess>;

/// A Hermitian operator as a real-coefficient combination of canonical Pauli
/// strings. Terms below kCoeffTol are pruned on every update.
class PauliSum {
 public:
  explicit PauliSum(std::uint32_t n_qubits);

  /// Accumulates coeff * s. Phase is folded into the coefficient; an odd
  /// phase would make the sum non-Hermitian and raises ConsistencyError.
  void add(const PauliString& s, double coeff);

  /// Coefficient of the canonical form of s (0 when absent).
  double coeff(const PauliString& s) const;
  bool contains(const PauliString& s) const;

  std::uint32_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// sqrt(sum of squared coefficients): the Hilbert-Schmidt norm under the
  /// normalized trace form.
  double norm() const;

  const TermMap& terms() const { return terms_; }

  bool operator==(const PauliSum&) const = default;

 private:
  TermMap terms_;
  std::uint32_t n_qubits_;
};

}  // namespace redcard
