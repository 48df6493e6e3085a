#include "lorcomp/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lorcomp/errors.hpp"
#include "lorcomp/lorentz_norm.hpp"

namespace lorcomp {

SimpleFunction::SimpleFunction(SpaceRef space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw StructuralError("function without a space");
  if (values_.size() != space_->size()) {
    throw StructuralError("function has " + std::to_string(values_.size()) +
                          " values for a space of " + std::to_string(space_->size()) + " atoms");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("value at atom '" + space_->id(i) + "' is not finite");
    }
  }
}

SimpleFunction SimpleFunction::from_ids(SpaceRef space,
                                        const std::map<std::string, double>& values) {
  std::vector<double> v(space->size(), 0.0);
  std::vector<bool> seen(space->size(), false);
  for (const auto& [id, value] : values) {
    const std::size_t i = space->index_of(id);
    v[i] = value;
    seen[i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw StructuralError("function has no value for atom '" + space->id(i) + "'");
  }
  return SimpleFunction(std::move(space), std::move(v));
}

SimpleFunction SimpleFunction::constant(SpaceRef space, double c) {
  const std::size_t n = space->size();
  return SimpleFunction(std::move(space), std::vector<double>(n, c));
}

SimpleFunction SimpleFunction::indicator(const MSet& set) {
  std::vector<double> v(set.space()->size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (set.contains(i)) v[i] = 1.0;
  return SimpleFunction(set.space(), std::move(v));
}

SimpleFunction SimpleFunction::operator+(const SimpleFunction& other) const {
  if (!same_space(space_, other.space_)) throw StructuralError("functions live on different spaces");
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + other.values_[i];
  return SimpleFunction(space_, std::move(v));
}

SimpleFunction SimpleFunction::operator*(double c) const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * values_[i];
  return SimpleFunction(space_, std::move(v));
}

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> levels) {
  if (levels.size() != breakpoints.size() + 1) {
    throw DomainError("step function needs exactly one more level than breakpoints");
  }
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    const double t = breakpoints[k];
    if (!std::isfinite(t) || t <= 0.0 || (k > 0 && t <= breakpoints[k - 1])) {
      throw DomainError("breakpoints must be positive, finite and strictly increasing");
    }
  }
  for (double v : levels)
    if (!std::isfinite(v)) throw DomainError("step function level is not finite");

  levels_.push_back(levels[0]);
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    if (levels[k + 1] == levels_.back()) continue;
    breakpoints_.push_back(breakpoints[k]);
    levels_.push_back(levels[k + 1]);
  }
}

double StepFunction::piece_begin(std::size_t k) const {
  return k == 0 ? 0.0 : breakpoints_.at(k - 1);
}

double StepFunction::piece_end(std::size_t k) const {
  return k < breakpoints_.size() ? breakpoints_[k] : kInfinity;
}

double StepFunction::operator()(double t) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return levels_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

bool StepFunction::is_nonincreasing() const noexcept {
  return std::is_sorted(levels_.rbegin(), levels_.rend());
}

bool StepFunction::is_nonnegative() const noexcept {
  return std::all_of(levels_.begin(), levels_.end(), [](double v) { return v >= 0.0; });
}

namespace {

// Atom indices sorted by |value| descending, ties in canonical order.
std::vector<std::size_t> order_by_modulus(const SimpleFunction& f) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(f[a]) > std::fabs(f[b]);
  });
  return order;
}

}  // namespace

StepFunction distribution(const SimpleFunction& f) {
  const MeasureSpace& space = *f.space();
  const auto order = order_by_modulus(f);

  // Walk distinct moduli from the top; after a group with modulus d the
  // running mass is mu{|f| >= d}, which is the level just below d.
  std::vector<double> moduli_desc;
  std::vector<double> mass_desc;
  double mass = 0.0;
  for (std::size_t k = 0; k < order.size();) {
    const double d = std::fabs(f[order[k]]);
    if (d == 0.0) break;
    while (k < order.size() && std::fabs(f[order[k]]) == d) mass += space.weight(order[k++]);
    moduli_desc.push_back(d);
    mass_desc.push_back(mass);
  }

  std::vector<double> breakpoints(moduli_desc.rbegin(), moduli_desc.rend());
  std::vector<double> levels(mass_desc.rbegin(), mass_desc.rend());
  levels.push_back(0.0);
  return StepFunction(std::move(breakpoints), std::move(levels));
}

StepFunction rearrangement(const SimpleFunction& f) {
  const MeasureSpace& space = *f.space();
  std::vector<double> breakpoints;
  std::vector<double> levels;
  double end = 0.0;
  for (std::size_t i : order_by_modulus(f)) {
    const double v = std::fabs(f[i]);
    if (v == 0.0) break;
    const double next = end + space.weight(i);
    if (next <= end) continue;  // null atom
    levels.push_back(v);
    breakpoints.push_back(next);
    end = next;
  }
  levels.push_back(0.0);
  return StepFunction(std::move(breakpoints), std::move(levels));
}

double power_tail_integral(const StepFunction& g, double alpha, double q) {
  if (!(alpha > 0.0) || !(q > 0.0)) throw DomainError("alpha and q must be positive");
  if (!g.is_nonnegative()) throw DomainError("power_tail_integral needs a nonnegative step function");
  if (!g.has_compact_support()) throw DomainError("power_tail_integral needs g = 0 near infinity");
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < g.pieces(); ++k) {
    const double v = g.levels()[k];
    if (v == 0.0) continue;
    total += std::pow(v, q) * (std::pow(g.piece_end(k), alpha) - std::pow(g.piece_begin(k), alpha));
  }
  return total;
}

}  // namespace lorcomp
