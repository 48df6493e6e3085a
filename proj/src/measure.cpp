#include "lorcomp/measure.hpp"

#include <algorithm>
#include <cmath>

#include "lorcomp/errors.hpp"
#include "lorcomp/functions.hpp"

namespace lorcomp {

MeasureSpace::MeasureSpace(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  index_.reserve(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    index_.emplace(atoms_[i].id, i);
    total_ += atoms_[i].weight;
  }
}

SpaceRef MeasureSpace::create(std::vector<Atom> atoms) {
  if (atoms.empty()) throw StructuralError("measure space needs at least one atom");
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (a.id.empty()) throw StructuralError("atom " + std::to_string(i) + " has an empty id");
    if (!seen.emplace(a.id, i).second) throw StructuralError("duplicate atom id '" + a.id + "'");
    if (!std::isfinite(a.weight) || a.weight < 0.0) {
      throw DomainError("atom '" + a.id + "' has weight outside [0, inf)");
    }
  }
  return SpaceRef(new MeasureSpace(std::move(atoms)));
}

std::optional<std::size_t> MeasureSpace::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t MeasureSpace::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw StructuralError("unknown atom id '" + std::string(id) + "'");
}

bool same_space(const SpaceRef& a, const SpaceRef& b) {
  if (a == b) return true;
  return a && b && *a == *b;
}

MSet::MSet(SpaceRef space, std::vector<bool> members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (!space_) throw StructuralError("set without a space");
  if (members_.size() != space_->size()) {
    throw StructuralError("set membership vector does not match the space size");
  }
}

MSet MSet::empty(SpaceRef space) {
  const std::size_t n = space->size();
  return MSet(std::move(space), std::vector<bool>(n, false));
}

MSet MSet::full(SpaceRef space) {
  const std::size_t n = space->size();
  return MSet(std::move(space), std::vector<bool>(n, true));
}

MSet MSet::from_ids(SpaceRef space, std::span<const std::string> ids) {
  std::vector<bool> members(space->size(), false);
  for (const auto& id : ids) members[space->index_of(id)] = true;
  return MSet(std::move(space), std::move(members));
}

MSet MSet::from_indices(SpaceRef space, std::span<const std::size_t> indices) {
  std::vector<bool> members(space->size(), false);
  for (std::size_t i : indices) {
    if (i >= members.size()) throw StructuralError("atom index out of range");
    members[i] = true;
  }
  return MSet(std::move(space), std::move(members));
}

MSet MSet::from_mask(SpaceRef space, std::uint64_t mask) {
  const std::size_t n = space->size();
  if (n < 64 && (mask >> n) != 0) throw StructuralError("mask selects atoms outside the space");
  std::vector<bool> members(n, false);
  for (std::size_t i = 0; i < n && i < 64; ++i) members[i] = ((mask >> i) & 1U) != 0;
  return MSet(std::move(space), std::move(members));
}

std::size_t MSet::count() const noexcept {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

std::vector<std::size_t> MSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i]) out.push_back(i);
  return out;
}

std::vector<std::string> MSet::ids() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i]) out.push_back(space_->id(i));
  return out;
}

void MSet::require_same_space(const MSet& other) const {
  if (!same_space(space_, other.space_)) throw StructuralError("sets live on different spaces");
}

MSet MSet::unite(const MSet& other) const {
  require_same_space(other);
  std::vector<bool> m(members_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = members_[i] || other.members_[i];
  return MSet(space_, std::move(m));
}

MSet MSet::intersect(const MSet& other) const {
  require_same_space(other);
  std::vector<bool> m(members_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = members_[i] && other.members_[i];
  return MSet(space_, std::move(m));
}

MSet MSet::complement() const {
  std::vector<bool> m(members_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = !members_[i];
  return MSet(space_, std::move(m));
}

MSet MSet::minus(const MSet& other) const { return intersect(other.complement()); }

bool MSet::subset_of(const MSet& other) const {
  require_same_space(other);
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i] && !other.members_[i]) return false;
  return true;
}

bool MSet::lex_less(const MSet& other) const {
  require_same_space(other);
  const auto a = indices();
  const auto b = other.indices();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double measure(const MSet& s) {
  const MeasureSpace& space = *s.space();
  double total = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (s.contains(i)) total += space.weight(i);
  return total;
}

double measure(const MeasureSpace& space, const MSet& s) {
  if (s.space().get() != &space && !(*s.space() == space)) {
    throw StructuralError("set does not belong to the given space");
  }
  return measure(s);
}

bool is_null(const MSet& s) { return measure(s) == 0.0; }

bool is_null(const MeasureSpace& space, const MSet& s) { return measure(space, s) == 0.0; }

bool ae_equal(const SimpleFunction& f, const SimpleFunction& g) {
  if (!same_space(f.space(), g.space())) {
    throw StructuralError("functions live on different spaces");
  }
  const MeasureSpace& space = *f.space();
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (f[i] != g[i] && space.weight(i) != 0.0) return false;
  }
  return true;
}

}  // namespace lorcomp
