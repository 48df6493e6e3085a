#include "lorcomp/lorentz_norm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lorcomp/errors.hpp"

namespace lorcomp {

LorentzExponents::LorentzExponents(double p, double q) : p_(p), q_(q) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("Lorentz exponent p must lie in (1, inf)");
  if (!(q >= 1.0)) throw DomainError("Lorentz exponent q must lie in [1, inf]");
}

namespace {

void require_finite_q(const LorentzExponents& e, const char* op) {
  if (e.weak()) {
    throw WrongOperationError(std::string(op) + " needs q < inf; use norm_sup for q = inf");
  }
}

}  // namespace

double norm_via_rearrangement(const SimpleFunction& f, const LorentzExponents& e) {
  require_finite_q(e, "norm_via_rearrangement");
  const double sum = power_tail_integral(rearrangement(f), e.q() / e.p(), e.q());
  return std::pow(sum, 1.0 / e.q());
}

double norm_via_distribution(const SimpleFunction& f, const LorentzExponents& e) {
  require_finite_q(e, "norm_via_distribution");
  const StepFunction mu = distribution(f);
  const double exponent = e.q() / e.p();
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < mu.pieces(); ++j) {
    const double d = mu.levels()[j];
    if (d == 0.0) continue;
    sum += std::pow(d, exponent) *
           (std::pow(mu.piece_end(j), e.q()) - std::pow(mu.piece_begin(j), e.q()));
  }
  return std::pow(sum, 1.0 / e.q());
}

double norm_sup(const SimpleFunction& f, const LorentzExponents& e) {
  if (!e.weak()) throw WrongOperationError("norm_sup needs q = inf");
  const double inv_p = 1.0 / e.p();

  double via_rearrangement = 0.0;
  const StepFunction star = rearrangement(f);
  for (std::size_t k = 0; k + 1 < star.pieces(); ++k) {
    via_rearrangement =
        std::max(via_rearrangement, std::pow(star.piece_end(k), inv_p) * star.levels()[k]);
  }

  double via_distribution = 0.0;
  const StepFunction mu = distribution(f);
  for (std::size_t j = 0; j + 1 < mu.pieces(); ++j) {
    via_distribution =
        std::max(via_distribution, mu.piece_end(j) * std::pow(mu.levels()[j], inv_p));
  }

  const double scale = std::max(via_rearrangement, via_distribution);
  if (std::fabs(via_rearrangement - via_distribution) > kCrossFormulaTol * scale) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "weak-type sup forms disagree: " << via_rearrangement << " vs " << via_distribution;
    throw ConsistencyError(msg.str());
  }
  return via_rearrangement;
}

double indicator_norm(const MeasureSpace& space, const MSet& set, const LorentzExponents& e) {
  return std::pow(measure(space, set), 1.0 / e.p());
}

double lorentz_norm(const SimpleFunction& f, const LorentzExponents& e) {
  return e.weak() ? norm_sup(f, e) : norm_via_rearrangement(f, e);
}

}  // namespace lorcomp
