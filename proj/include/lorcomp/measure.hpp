#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lorcomp {

struct Atom {
  std::string id;
  double weight = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

class MeasureSpace;
using SpaceRef = std::shared_ptr<const MeasureSpace>;

// A finite list of weighted atoms. The sigma-algebra is the full power set.
// Construction order is canonical and is the tie-breaker everywhere.
class MeasureSpace {
 public:
  // Throws StructuralError on duplicate/empty ids or an empty atom list,
  // DomainError on negative or non-finite weights.
  static SpaceRef create(std::vector<Atom> atoms);

  std::size_t size() const noexcept { return atoms_.size(); }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  const Atom& atom(std::size_t i) const { return atoms_.at(i); }
  double weight(std::size_t i) const { return atoms_.at(i).weight; }
  const std::string& id(std::size_t i) const { return atoms_.at(i).id; }

  std::optional<std::size_t> find(std::string_view id) const;
  // Throws StructuralError naming the id.
  std::size_t index_of(std::string_view id) const;

  double total_measure() const noexcept { return total_; }

  friend bool operator==(const MeasureSpace& a, const MeasureSpace& b) {
    return a.atoms_ == b.atoms_;
  }

 private:
  explicit MeasureSpace(std::vector<Atom> atoms);

  std::vector<Atom> atoms_;
  std::unordered_map<std::string, std::size_t> index_;
  double total_ = 0.0;
};

// Same object, or structurally identical atom lists.
bool same_space(const SpaceRef& a, const SpaceRef& b);

// A subset of atoms of one space.
class MSet {
 public:
  MSet(SpaceRef space, std::vector<bool> members);

  static MSet empty(SpaceRef space);
  static MSet full(SpaceRef space);
  static MSet from_ids(SpaceRef space, std::span<const std::string> ids);
  static MSet from_indices(SpaceRef space, std::span<const std::size_t> indices);
  // Bit i of mask selects atom i; requires space->size() <= 64.
  static MSet from_mask(SpaceRef space, std::uint64_t mask);

  const SpaceRef& space() const noexcept { return space_; }
  bool contains(std::size_t i) const { return members_.at(i); }
  std::size_t count() const noexcept;
  bool is_empty() const noexcept { return count() == 0; }

  // Members in canonical order.
  std::vector<std::size_t> indices() const;
  std::vector<std::string> ids() const;

  MSet unite(const MSet& other) const;
  MSet intersect(const MSet& other) const;
  MSet complement() const;
  MSet minus(const MSet& other) const;
  bool subset_of(const MSet& other) const;

  // Lexicographic order on the sorted member-index sequences.
  bool lex_less(const MSet& other) const;

  friend bool operator==(const MSet& a, const MSet& b) {
    return same_space(a.space_, b.space_) && a.members_ == b.members_;
  }

 private:
  void require_same_space(const MSet& other) const;

  SpaceRef space_;
  std::vector<bool> members_;
};

// Sum of member weights in canonical order.
double measure(const MSet& s);
// As above, after checking that s lives on `space`.
double measure(const MeasureSpace& space, const MSet& s);

bool is_null(const MSet& s);
bool is_null(const MeasureSpace& space, const MSet& s);

class SimpleFunction;
// True iff {f != g} is a null set. Throws StructuralError on mismatched spaces.
bool ae_equal(const SimpleFunction& f, const SimpleFunction& g);

}  // namespace lorcomp
