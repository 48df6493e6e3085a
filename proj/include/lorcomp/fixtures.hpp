#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "lorcomp/pushforward.hpp"

namespace lorcomp::fixtures {

// X = Y: n atoms "u1".."un" of weight 1/n, identity map, J = 1.
MeasurableMap uniform_refinement(std::size_t n);

// X: the n*n unit squares x[i,j] = (i-1,i) x (j-1,j) with Lebesgue weight 1.
// Y: the points y[i/2,j/2] with counting weight 1. Each square goes to the
// point (i/2, j/2), so J = 1.
MeasurableMap square_collapse(std::size_t n);

// Seeded random map with |Y| = n and n <= |X| <= 2n. Weights are multiples
// of 1/64 in (0, 2]; about one codomain atom in ten is null, and every
// domain atom over a null atom is null too, so N^{-1} holds.
MeasurableMap random_map(std::size_t n, std::uint64_t seed);

// Dispatch on "uniform-refinement", "square-collapse" or "random". Throws
// DomainError on an unknown kind or n = 0.
MeasurableMap generate(std::string_view kind, std::size_t n, std::uint64_t seed);

}  // namespace lorcomp::fixtures
