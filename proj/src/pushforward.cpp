#include "lorcomp/pushforward.hpp"

#include "lorcomp/errors.hpp"

namespace lorcomp {

MeasurableMap::MeasurableMap(SpaceRef domain, SpaceRef codomain, std::vector<std::size_t> assign)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), assign_(std::move(assign)) {
  if (!domain_ || !codomain_) throw StructuralError("map needs a domain and a codomain");
  if (assign_.size() != domain_->size()) {
    throw StructuralError("map must assign every domain atom");
  }
  for (std::size_t x = 0; x < assign_.size(); ++x) {
    if (assign_[x] >= codomain_->size()) {
      throw StructuralError("domain atom '" + domain_->id(x) + "' is mapped outside the codomain");
    }
  }
}

MeasurableMap MeasurableMap::from_ids(SpaceRef domain, SpaceRef codomain,
                                      const std::map<std::string, std::string>& assign) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> a(domain->size(), kUnset);
  for (const auto& [x, y] : assign) a[domain->index_of(x)] = codomain->index_of(y);
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] == kUnset) throw StructuralError("domain atom '" + domain->id(x) + "' is not mapped");
  }
  return MeasurableMap(std::move(domain), std::move(codomain), std::move(a));
}

MSet preimage(const MeasurableMap& m, const MSet& b) {
  if (!same_space(b.space(), m.codomain())) {
    throw StructuralError("preimage: set does not live on the codomain");
  }
  std::vector<bool> members(m.domain()->size());
  for (std::size_t x = 0; x < members.size(); ++x) members[x] = b.contains(m.image(x));
  return MSet(m.domain(), std::move(members));
}

namespace {

// mu(fiber of y) for every y, summed in domain order.
std::vector<double> fiber_masses(const MeasurableMap& m) {
  std::vector<double> mass(m.codomain()->size(), 0.0);
  for (std::size_t x = 0; x < m.domain()->size(); ++x) mass[m.image(x)] += m.domain()->weight(x);
  return mass;
}

}  // namespace

LuzinReport check_luzin_n_inverse(const MeasurableMap& m) {
  LuzinReport report;
  const auto mass = fiber_masses(m);
  for (std::size_t y = 0; y < mass.size(); ++y) {
    if (m.codomain()->weight(y) == 0.0 && mass[y] > 0.0) report.witnesses.push_back(y);
  }
  report.holds = report.witnesses.empty();
  return report;
}

RNDerivative rn_derivative(const MeasurableMap& m) {
  const LuzinReport luzin = check_luzin_n_inverse(m);
  if (!luzin.holds) {
    std::vector<std::string> ids;
    std::string list;
    for (std::size_t y : luzin.witnesses) {
      ids.push_back(m.codomain()->id(y));
      list += (list.empty() ? "" : ", ") + ids.back();
    }
    throw NoDensityError("N^{-1} property fails; null atoms with positive fibers: " + list,
                         std::move(ids));
  }
  const auto mass = fiber_masses(m);
  RNDerivative j{m.codomain(), std::vector<double>(mass.size(), 0.0)};
  for (std::size_t y = 0; y < mass.size(); ++y) {
    const double nu = m.codomain()->weight(y);
    if (nu > 0.0) j.values[y] = mass[y] / nu;
  }
  return j;
}

MSet zero_jacobian_set(const MeasurableMap& m) {
  const RNDerivative j = rn_derivative(m);
  std::vector<bool> members(j.values.size());
  for (std::size_t y = 0; y < members.size(); ++y) members[y] = j.values[y] == 0.0;
  MSet z(m.codomain(), std::move(members));
  if (!is_null(preimage(m, z))) throw ConsistencyError("preimage of {J = 0} is not null");
  return z;
}

FiberPartition::FiberPartition(const MeasurableMap& m)
    : domain_(m.domain()), blocks_(m.codomain()->size()) {
  for (std::size_t x = 0; x < m.domain()->size(); ++x) blocks_[m.image(x)].push_back(x);
}

bool FiberPartition::is_measurable(const MSet& a) const {
  if (!same_space(a.space(), domain_)) throw StructuralError("set does not live on the domain");
  for (const auto& block : blocks_) {
    if (block.empty()) continue;
    const bool first = a.contains(block.front());
    for (std::size_t x : block)
      if (a.contains(x) != first) return false;
  }
  return true;
}

FiberPartition fiber_partition(const MeasurableMap& m) { return FiberPartition(m); }

std::size_t banach_indicatrix(const MeasurableMap& m, std::string_view y) {
  const std::size_t target = m.codomain()->index_of(y);
  std::size_t count = 0;
  for (std::size_t x = 0; x < m.domain()->size(); ++x)
    if (m.image(x) == target) ++count;
  return count;
}

}  // namespace lorcomp
