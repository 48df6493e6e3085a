#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lorcomp/functions.hpp"
#include "lorcomp/lorentz_norm.hpp"
#include "lorcomp/measure.hpp"
#include "lorcomp/pushforward.hpp"

namespace lorcomp {

// Relative tolerance for ratio comparisons and argmax/argmin ties.
inline constexpr double kRatioTol = 1e-9;
inline constexpr std::size_t kDefaultSizeLimit = 20;
// Hard cap: subsets are enumerated as 64-bit masks.
inline constexpr std::size_t kMaxExhaustiveAtoms = 40;

// C_phi : L_{r,s}(Y) -> L_{p,q}(X).
struct OperatorSpec {
  MeasurableMap map;
  LorentzExponents source;  // (r, s) on the codomain Y
  LorentzExponents target;  // (p, q) on the domain X

  // p / r, the exponent of nu(B) in the set condition.
  double alpha() const noexcept { return target.p() / source.p(); }
};

enum class ConstantKind { Upper, Lower };
enum class SearchMethod { Exhaustive, LevelSet, FractionalRelaxation, SingletonScan };

const char* to_string(ConstantKind kind) noexcept;
const char* to_string(SearchMethod method) noexcept;

// The sharp K (kind Upper) or k (kind Lower) of the set condition, together
// with the evidence for it.
struct ConstantCertificate {
  ConstantKind kind = ConstantKind::Upper;
  double value = 0.0;
  std::optional<MSet> extremal_set;
  // [lower bound, upper bound] on the sharp constant when exhaustive search
  // was not performed.
  std::optional<std::pair<double, double>> bracket;
  SearchMethod method = SearchMethod::Exhaustive;
  // s <= q for Upper, s >= q for Lower.
  bool regime_ok = false;
  std::string note;
};

struct SearchOptions {
  std::size_t size_limit = kDefaultSizeLimit;
  // 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

// kDefaultSizeLimit, or LORENTZ_SIZE_LIMIT when set to a positive integer.
std::size_t size_limit_from_env();

// x -> f(phi(x)). Throws StructuralError when f does not live on the codomain.
SimpleFunction compose(const MeasurableMap& m, const SimpleFunction& f);

// mu(phi^{-1} B)^(1/p) / nu(B)^(1/r), with 0/0 = 0 and c/0 = inf for c > 0.
// Throws DomainError on an empty B.
double set_ratio(const OperatorSpec& spec, const MSet& b);

// ||C_phi f||_{p,q} / ||f||_{r,s}; same conventions as set_ratio.
double composition_ratio(const OperatorSpec& spec, const SimpleFunction& f);

// --- upper constant K ---

// Max of set_ratio over every nonempty B; the lexicographically smallest
// maximizer is reported. Throws SizeLimitError above options.size_limit.
ConstantCertificate best_constant_exhaustive(const OperatorSpec& spec,
                                             const SearchOptions& options = {});

// Best of the super-level sets {J >= t}; a lower bound on K. Exact when p <= r.
// Throws NoDensityError without the N^{-1} property.
ConstantCertificate best_constant_levelset(const OperatorSpec& spec);

// Greedy fractional relaxation; an upper bound on K. Returns +inf when p > r.
ConstantCertificate best_constant_fractional_upper(const OperatorSpec& spec);

// Best single atom; a lower bound on K. Exact when p >= r.
ConstantCertificate best_constant_singletons(const OperatorSpec& spec);

// Exhaustive when |Y| fits the size limit, otherwise the exact structural
// route for the regime with its bracket.
ConstantCertificate best_constant(const OperatorSpec& spec, const SearchOptions& options = {});

// --- lower constant k (nu-positive sets only) ---

ConstantCertificate lower_constant_exhaustive(const OperatorSpec& spec,
                                              const SearchOptions& options = {});
// Best of the sub-level sets {J <= t}; an upper bound on k. Exact when p >= r.
ConstantCertificate lower_constant_levelset(const OperatorSpec& spec);
// Worst single atom; an upper bound on k. Exact when p <= r.
ConstantCertificate lower_constant_singletons(const OperatorSpec& spec);
// Fractional relaxation over weights >= the lightest positive atom; a lower
// bound on k.
ConstantCertificate lower_constant_fractional(const OperatorSpec& spec);
ConstantCertificate lower_constant(const OperatorSpec& spec, const SearchOptions& options = {});

// --- verdicts ---

enum class Verdict {
  Bounded,
  Unbounded,
  BoundedBelow,
  NotBoundedBelow,
  NecessaryConditionHolds,
  NecessaryConditionFails,
};

const char* to_string(Verdict v) noexcept;

struct BoundednessReport {
  LuzinReport luzin;
  ConstantCertificate constant;
  bool regime_ok = false;  // s <= q
  Verdict verdict = Verdict::Unbounded;
};

BoundednessReport check_bounded(const OperatorSpec& spec, const SearchOptions& options = {});

struct BoundedBelowReport {
  LuzinReport luzin;
  ConstantCertificate constant;
  bool regime_ok = false;  // s >= q
  Verdict verdict = Verdict::NotBoundedBelow;
};

BoundedBelowReport check_bounded_below(const OperatorSpec& spec,
                                       const SearchOptions& options = {});

struct ClosedRangeReport {
  LuzinReport luzin;
  ConstantCertificate lower;
  bool injective_closed_range = false;
};

// Requires s = q; throws RegimeError otherwise.
ClosedRangeReport check_injective_closed_range(const OperatorSpec& spec,
                                               const SearchOptions& options = {});

struct RangeReport {
  bool in_closure = false;
  // f on Y with compose(m, f) = g almost everywhere; 0 on fibers without
  // positive mass.
  std::optional<SimpleFunction> preimage_function;
  // Codomain atoms whose fiber carries two different values on positive atoms.
  std::vector<std::size_t> violating_blocks;
};

RangeReport is_in_range_closure(const MeasurableMap& m, const SimpleFunction& g);

struct IsomorphismReport {
  LuzinReport luzin;
  double ess_inf_j = 0.0;
  double ess_sup_j = 0.0;
  double k = 0.0;  // ess_inf_j^(1/p)
  double K = 0.0;  // ess_sup_j^(1/p)
  bool sigma_match = false;
  // Codomain atoms whose fiber holds more than one positive atom.
  std::vector<std::size_t> merged_blocks;
  bool isomorphism = false;
};

// Requires source == target exponents; throws RegimeError otherwise.
IsomorphismReport check_isomorphism(const OperatorSpec& spec);

struct SampleReport {
  double sup_ratio = 0.0;
  std::size_t evaluated = 0;
  std::optional<SimpleFunction> best;
};

// Empirical sup of composition_ratio over every single-atom indicator, the
// full indicator, and `trials` seeded random simple functions. Functions with
// zero source and target norm are skipped.
SampleReport operator_norm_sample(const OperatorSpec& spec, std::size_t trials,
                                  std::uint64_t seed);

// Random simple function on `space`, with repeated levels, zeros and signs.
// Shared by the sampler and the tests.
class Rng;
SimpleFunction random_simple_function(const SpaceRef& space, Rng& rng);

}  // namespace lorcomp
