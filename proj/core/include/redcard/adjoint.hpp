#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "redcard/pauli.hpp"

namespace redcard {

enum class Direction { forward, dagger };

/// An ordered product of Pauli exponentials: K = prod_j exp(i angle_j P_j),
/// with factors listed in product order (factor 0 is leftmost). The dagger
/// direction makes the ansatz stand for K† instead.
class Ansatz {
 public:
  Ansatz() = default;
  Ansatz(std::vector<PauliString> factors, std::vector<double> angles,
         Direction direction = Direction::forward);

  std::size_t size() const { return factors_.size(); }
  const std::vector<PauliString>& factors() const { return factors_; }
  const std::vector<double>& angles() const { return angles_; }
  const PauliString& factor(std::size_t i) const { return factors_[i]; }
  double angle(std::size_t i) const { return angles_[i]; }
  void set_angle(std::size_t i, double angle) { angles_[i] = angle; }
  Direction direction() const { return direction_; }

  /// Same factors, opposite direction.
  Ansatz dagger() const;

 private:
  std::vector<PauliString> factors_;
  std::vector<double> angles_;
  Direction direction_ = Direction::forward;
};

/// In-place update of a term map under exp(i t P) (.) exp(-i t P): an
/// anticommuting term Q becomes cos(2t) Q + sin(2t) (i P Q) with the sign of
/// i P Q folded into the coefficient; commuting terms pass through.
void apply_rotation(TermMap& terms, const PauliString& p, double t);

/// K A K† for the operator the ansatz stands for, one apply_rotation per
/// factor, the innermost factor first. Costs O(factors * terms) products.
PauliSum conjugate(const Ansatz& ansatz, const PauliSum& operand);

/// Normalized trace form <A, B> = Tr(AB) / 2^n: the sum of coefficient
/// products over shared canonical strings.
double inner(const PauliSum& a, const PauliSum& b);

/// A stage operand whose relative weight anticommuting with an
/// already-processed generator exceeds this was never passed through that
/// subproblem; converged leftovers sit orders of magnitude below it.
inline constexpr double kStagingEntryTol = 0.25;

/// Relative Hilbert-Schmidt weight of h anticommuting with b.
double anticommuting_fraction(const PauliSum& h, const PauliString& b);

/// Subproblem cost <K b_r K†, H_r>. When prior_b is given, H_r must carry no
/// more than kStagingEntryTol of its weight anticommuting with any of them
/// (the staging property established by the previous subproblems); a
/// violation raises StagingError.
double cost_fr(const Ansatz& ansatz, const PauliString& b_r,
               const PauliSum& h_r, std::span<const PauliString> prior_b = {});

/// Whole-problem cost <K v K†, H> with v supported on h_basis; support
/// outside h_basis raises PreconditionError.
double cost_full(const Ansatz& ansatz, const PauliSum& v, const PauliSum& h,
                 std::span<const PauliString> h_basis);

/// Fraction of the Hilbert-Schmidt weight lying outside h_basis:
/// sqrt(sum of squared coefficients off h) / norm. The convergence metric.
double residual(const PauliSum& transformed,
                std::span<const PauliString> h_basis);

}  // namespace redcard
