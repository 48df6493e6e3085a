#pragma once

#include <limits>

#include "lorcomp/functions.hpp"
#include "lorcomp/measure.hpp"

namespace lorcomp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Relative tolerance for comparing two different closed forms.
inline constexpr double kCrossFormulaTol = 1e-9;
// Relative tolerance for paths that are algebraically identical.
inline constexpr double kIdentityTol = 1e-12;

// The (p, q) of L_{p,q}: 1 < p < inf and 1 <= q <= inf.
class LorentzExponents {
 public:
  // Throws DomainError outside the admissible range.
  LorentzExponents(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  bool weak() const noexcept { return q_ == kInfinity; }

  friend bool operator==(const LorentzExponents&, const LorentzExponents&) = default;

 private:
  double p_;
  double q_;
};

// ((q/p) int_0^inf (t^(1/p) f*(t))^q dt/t)^(1/q), evaluated exactly over the
// pieces of f*. Throws WrongOperationError when q = inf.
double norm_via_rearrangement(const SimpleFunction& f, const LorentzExponents& e);

// (q int_0^inf (lambda mu_f(lambda)^(1/p))^q dlambda/lambda)^(1/q), evaluated
// exactly over the pieces of mu_f. Throws WrongOperationError when q = inf.
double norm_via_distribution(const SimpleFunction& f, const LorentzExponents& e);

// sup_t t^(1/p) f*(t), cross-checked against sup_lambda lambda mu_f(lambda)^(1/p).
// On each piece the sup is the limit at the right end. Throws
// WrongOperationError when q < inf and ConsistencyError if the forms disagree.
double norm_sup(const SimpleFunction& f, const LorentzExponents& e);

// (mu(E))^(1/p), independent of q.
double indicator_norm(const MeasureSpace& space, const MSet& set, const LorentzExponents& e);

// Rearrangement route for q < inf, sup form for q = inf.
double lorentz_norm(const SimpleFunction& f, const LorentzExponents& e);

}  // namespace lorcomp
