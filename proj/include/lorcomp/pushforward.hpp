#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lorcomp/functions.hpp"
#include "lorcomp/measure.hpp"

namespace lorcomp {

// A total assignment of domain atoms to codomain atoms.
class MeasurableMap {
 public:
  // assign[i] is the codomain index of domain atom i.
  MeasurableMap(SpaceRef domain, SpaceRef codomain, std::vector<std::size_t> assign);

  static MeasurableMap from_ids(SpaceRef domain, SpaceRef codomain,
                                const std::map<std::string, std::string>& assign);

  const SpaceRef& domain() const noexcept { return domain_; }
  const SpaceRef& codomain() const noexcept { return codomain_; }
  std::size_t image(std::size_t x) const { return assign_.at(x); }
  const std::vector<std::size_t>& assignment() const noexcept { return assign_; }

 private:
  SpaceRef domain_;
  SpaceRef codomain_;
  std::vector<std::size_t> assign_;
};

MSet preimage(const MeasurableMap& m, const MSet& b);

struct LuzinReport {
  bool holds = true;
  // Null codomain atoms whose fibers carry positive mass, canonical order.
  std::vector<std::size_t> witnesses;
};

LuzinReport check_luzin_n_inverse(const MeasurableMap& m);

// Density of mu o phi^{-1} with respect to nu.
struct RNDerivative {
  SpaceRef codomain;
  std::vector<double> values;

  double operator[](std::size_t y) const { return values.at(y); }
};

// J(y) = mu(fiber of y) / nu(y) for nu(y) > 0, and 0 on null atoms.
// Throws NoDensityError if the Luzin N^{-1} property fails.
RNDerivative rn_derivative(const MeasurableMap& m);

// {y : J(y) = 0}. Throws ConsistencyError if its preimage is not null.
MSet zero_jacobian_set(const MeasurableMap& m);

// The sigma-algebra phi^{-1}(B) as the partition of X into fibers.
class FiberPartition {
 public:
  explicit FiberPartition(const MeasurableMap& m);

  const SpaceRef& domain() const noexcept { return domain_; }
  // Block of codomain atom y; possibly empty.
  const std::vector<std::size_t>& block(std::size_t y) const { return blocks_.at(y); }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }

  // A set is phi^{-1}(B)-measurable iff it is a union of blocks.
  bool is_measurable(const MSet& a) const;

 private:
  SpaceRef domain_;
  std::vector<std::vector<std::size_t>> blocks_;
};

FiberPartition fiber_partition(const MeasurableMap& m);

// Number of domain atoms mapped to y (a count, not a measure).
std::size_t banach_indicatrix(const MeasurableMap& m, std::string_view y);

}  // namespace lorcomp
