#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "lorcomp/composition.hpp"
#include "lorcomp/measure.hpp"
#include "lorcomp/pushforward.hpp"
#include "lorcomp/rng.hpp"

namespace lorcomp::testing {

inline SpaceRef space_of(std::initializer_list<std::pair<const char*, double>> atoms) {
  std::vector<Atom> v;
  for (const auto& [id, w] : atoms) v.push_back({id, w});
  return MeasureSpace::create(std::move(v));
}

// X = {x1:1, x2:2, x3:1}, Y = {y1:2, y2:1}, x1,x2 -> y1, x3 -> y2.
inline MeasurableMap worked_map() {
  return MeasurableMap(space_of({{"x1", 1}, {"x2", 2}, {"x3", 1}}), space_of({{"y1", 2}, {"y2", 1}}),
                       {0, 0, 1});
}

inline OperatorSpec worked_spec(double p, double q, double r, double s) {
  return OperatorSpec{worked_map(), LorentzExponents(r, s), LorentzExponents(p, q)};
}

inline bool rel_close(double a, double b, double tol) {
  if (a == b) return true;
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline SpaceRef random_space(Rng& rng, std::size_t n, const std::string& prefix,
                             double null_chance = 0.0) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = rng.chance(null_chance) ? 0.0 : rng.uniform(0.05, 3.0);
    atoms.push_back({prefix + std::to_string(i + 1), w});
  }
  return MeasureSpace::create(std::move(atoms));
}

// Random map satisfying N^{-1}: domain atoms over null codomain atoms are null.
inline MeasurableMap random_map(Rng& rng, std::size_t max_y, std::size_t max_x,
                                double null_chance = 0.1) {
  const std::size_t ny = rng.index(1, max_y);
  const std::size_t nx = rng.index(1, max_x);
  SpaceRef y = random_space(rng, ny, "y", null_chance);
  std::vector<std::size_t> assign(nx);
  std::vector<Atom> x_atoms;
  for (std::size_t i = 0; i < nx; ++i) {
    assign[i] = rng.index(0, ny - 1);
    double w = rng.chance(null_chance) ? 0.0 : rng.uniform(0.05, 3.0);
    if (y->weight(assign[i]) == 0.0) w = 0.0;
    x_atoms.push_back({"x" + std::to_string(i + 1), w});
  }
  return MeasurableMap(MeasureSpace::create(std::move(x_atoms)), y, std::move(assign));
}

inline double random_exponent(Rng& rng, double lo, double hi) { return rng.uniform(lo, hi); }

// Brute-force sharp constants straight from the definition: preimage,
// measure on X, measure on Y. Independent of the search kernel.
struct BruteForce {
  double upper = 0.0;
  double lower = INFINITY;
};

inline BruteForce brute_force_constants(const OperatorSpec& spec) {
  BruteForce out;
  const SpaceRef& y = spec.map.codomain();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << y->size()); ++mask) {
    const MSet b = MSet::from_mask(y, mask);
    const double mass = measure(preimage(spec.map, b));
    const double weight = measure(b);
    double ratio;
    if (weight == 0.0) {
      ratio = mass == 0.0 ? 0.0 : INFINITY;
    } else {
      ratio = std::pow(mass, 1.0 / spec.target.p()) / std::pow(weight, 1.0 / spec.source.p());
      out.lower = std::min(out.lower, ratio);
    }
    out.upper = std::max(out.upper, ratio);
  }
  return out;
}

}  // namespace lorcomp::testing
