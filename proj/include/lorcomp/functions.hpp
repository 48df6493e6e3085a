#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lorcomp/measure.hpp"

namespace lorcomp {

// A real value on every atom of a space. Norm-related code only looks at |f|.
class SimpleFunction {
 public:
  // values[i] belongs to atom i. Throws StructuralError on a size mismatch,
  // DomainError on non-finite values.
  SimpleFunction(SpaceRef space, std::vector<double> values);

  // Every atom must be present and every key must name an atom.
  static SimpleFunction from_ids(SpaceRef space, const std::map<std::string, double>& values);
  static SimpleFunction constant(SpaceRef space, double c);
  static SimpleFunction indicator(const MSet& set);

  const SpaceRef& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_.at(i); }
  std::span<const double> values() const noexcept { return values_; }

  SimpleFunction operator+(const SimpleFunction& other) const;
  SimpleFunction operator*(double c) const;
  friend SimpleFunction operator*(double c, const SimpleFunction& f) { return f * c; }

  friend bool operator==(const SimpleFunction& a, const SimpleFunction& b) {
    return same_space(a.space_, b.space_) && a.values_ == b.values_;
  }

 private:
  SpaceRef space_;
  std::vector<double> values_;
};

// Right-continuous step function on [0, inf):
//   value = levels[k] on [breakpoints[k-1], breakpoints[k]),
// with breakpoints[-1] = 0 and breakpoints[m] = inf. Stored in canonical
// form: adjacent equal levels are merged, so equality is representational.
class StepFunction {
 public:
  StepFunction() : levels_{0.0} {}
  // Throws DomainError unless breakpoints are positive, finite and strictly
  // increasing, levels are finite, and levels.size() == breakpoints.size()+1.
  StepFunction(std::vector<double> breakpoints, std::vector<double> levels);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> levels() const noexcept { return levels_; }
  std::size_t pieces() const noexcept { return levels_.size(); }

  // Left end of piece k (0 for k = 0) and right end (inf for the last piece).
  double piece_begin(std::size_t k) const;
  double piece_end(std::size_t k) const;

  double operator()(double t) const;

  bool is_nonincreasing() const noexcept;
  bool is_nonnegative() const noexcept;
  // Last level is zero.
  bool has_compact_support() const noexcept { return levels_.back() == 0.0; }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
};

// lambda -> mu{ x : |f(x)| > lambda }.
StepFunction distribution(const SimpleFunction& f);

// t -> f*(t), built by sorting atoms by |value| descending (ties in canonical
// order) and stacking their weights as interval lengths.
StepFunction rearrangement(const SimpleFunction& f);

// Closed form of  int_0^inf alpha t^(alpha-1) g(t)^q dt
//   = sum_k levels[k]^q (end_k^alpha - begin_k^alpha).
// Throws DomainError if g has a negative level or does not vanish at infinity,
// or if alpha or q is not positive.
double power_tail_integral(const StepFunction& g, double alpha, double q);

}  // namespace lorcomp
