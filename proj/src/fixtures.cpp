#include "lorcomp/fixtures.hpp"

#include <string>

#include "lorcomp/errors.hpp"
#include "lorcomp/rng.hpp"

namespace lorcomp::fixtures {

MeasurableMap uniform_refinement(std::size_t n) {
  if (n == 0) throw DomainError("uniform-refinement needs n >= 1");
  std::vector<Atom> atoms;
  for (std::size_t i = 1; i <= n; ++i) atoms.push_back({"u" + std::to_string(i), 1.0 / static_cast<double>(n)});
  SpaceRef space = MeasureSpace::create(std::move(atoms));
  std::vector<std::size_t> identity(n);
  for (std::size_t i = 0; i < n; ++i) identity[i] = i;
  return MeasurableMap(space, space, std::move(identity));
}

namespace {

std::string half(std::size_t k) {
  return k % 2 == 0 ? std::to_string(k / 2) : std::to_string(k) + "/2";
}

}  // namespace

MeasurableMap square_collapse(std::size_t n) {
  if (n == 0) throw DomainError("square-collapse needs n >= 1");
  std::vector<Atom> squares;
  std::vector<Atom> points;
  std::vector<std::size_t> assign;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      squares.push_back({"x[" + std::to_string(i) + "," + std::to_string(j) + "]", 1.0});
      points.push_back({"y[" + half(i) + "," + half(j) + "]", 1.0});
      assign.push_back(assign.size());
    }
  }
  return MeasurableMap(MeasureSpace::create(std::move(squares)),
                       MeasureSpace::create(std::move(points)), std::move(assign));
}

MeasurableMap random_map(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("random fixture needs n >= 1");
  Rng rng(seed);
  std::vector<Atom> y_atoms;
  for (std::size_t y = 1; y <= n; ++y) {
    const double w = rng.chance(0.1) ? 0.0 : static_cast<double>(rng.index(1, 128)) / 64.0;
    y_atoms.push_back({"y" + std::to_string(y), w});
  }
  const std::size_t x_count = rng.index(n, 2 * n);
  std::vector<Atom> x_atoms;
  std::vector<std::size_t> assign;
  for (std::size_t x = 1; x <= x_count; ++x) {
    const std::size_t y = rng.index(0, n - 1);
    double w = rng.chance(0.1) ? 0.0 : static_cast<double>(rng.index(1, 128)) / 64.0;
    if (y_atoms[y].weight == 0.0) w = 0.0;
    x_atoms.push_back({"x" + std::to_string(x), w});
    assign.push_back(y);
  }
  return MeasurableMap(MeasureSpace::create(std::move(x_atoms)),
                       MeasureSpace::create(std::move(y_atoms)), std::move(assign));
}

MeasurableMap generate(std::string_view kind, std::size_t n, std::uint64_t seed) {
  if (kind == "uniform-refinement") return uniform_refinement(n);
  if (kind == "square-collapse") return square_collapse(n);
  if (kind == "random") return random_map(n, seed);
  throw DomainError("unknown fixture kind '" + std::string(kind) + "'");
}

}  // namespace lorcomp::fixtures
