#include "lorcomp/composition.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <thread>

#include "lorcomp/errors.hpp"
#include "lorcomp/rng.hpp"

namespace lorcomp {

const char* to_string(ConstantKind kind) noexcept {
  return kind == ConstantKind::Upper ? "upper" : "lower";
}

const char* to_string(SearchMethod method) noexcept {
  switch (method) {
    case SearchMethod::Exhaustive: return "exhaustive";
    case SearchMethod::LevelSet: return "level-set";
    case SearchMethod::FractionalRelaxation: return "fractional-relaxation";
    case SearchMethod::SingletonScan: return "singleton-scan";
  }
  return "unknown";
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Bounded: return "bounded";
    case Verdict::Unbounded: return "unbounded";
    case Verdict::BoundedBelow: return "bounded-below";
    case Verdict::NotBoundedBelow: return "not-bounded-below";
    case Verdict::NecessaryConditionHolds: return "necessary-condition-holds";
    case Verdict::NecessaryConditionFails: return "necessary-condition-fails";
  }
  return "unknown";
}

std::size_t size_limit_from_env() {
  const char* raw = std::getenv("LORENTZ_SIZE_LIMIT");
  if (raw == nullptr) return kDefaultSizeLimit;
  std::size_t value = 0;
  const char* end = raw + std::strlen(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value == 0) return kDefaultSizeLimit;
  return value;
}

SimpleFunction compose(const MeasurableMap& m, const SimpleFunction& f) {
  if (!same_space(f.space(), m.codomain())) {
    throw StructuralError("compose: function does not live on the codomain");
  }
  std::vector<double> values(m.domain()->size());
  for (std::size_t x = 0; x < values.size(); ++x) values[x] = f[m.image(x)];
  return SimpleFunction(m.domain(), std::move(values));
}

namespace {

// Fiber masses and codomain weights; every set ratio in this file is built
// from sums over these two vectors in canonical codomain order.
class RatioKernel {
 public:
  explicit RatioKernel(const OperatorSpec& spec)
      : fiber_(spec.map.codomain()->size(), 0.0),
        nu_(spec.map.codomain()->size()),
        inv_p_(1.0 / spec.target.p()),
        inv_r_(1.0 / spec.source.p()) {
    const MeasurableMap& m = spec.map;
    for (std::size_t x = 0; x < m.domain()->size(); ++x) fiber_[m.image(x)] += m.domain()->weight(x);
    for (std::size_t y = 0; y < nu_.size(); ++y) nu_[y] = m.codomain()->weight(y);
  }

  std::size_t size() const noexcept { return nu_.size(); }
  double fiber(std::size_t y) const { return fiber_[y]; }
  double nu(std::size_t y) const { return nu_[y]; }
  double jacobian(std::size_t y) const { return nu_[y] > 0.0 ? fiber_[y] / nu_[y] : 0.0; }

  double ratio(double mass, double weight) const {
    if (weight == 0.0) return mass == 0.0 ? 0.0 : kInfinity;
    return std::pow(mass, inv_p_) / std::pow(weight, inv_r_);
  }

  double ratio(const std::vector<bool>& members) const {
    double mass = 0.0;
    double weight = 0.0;
    for (std::size_t y = 0; y < members.size(); ++y) {
      if (!members[y]) continue;
      mass += fiber_[y];
      weight += nu_[y];
    }
    return ratio(mass, weight);
  }

 private:
  std::vector<double> fiber_;
  std::vector<double> nu_;
  double inv_p_;
  double inv_r_;
};

// A later candidate replaces the incumbent only if it improves by more than
// the ratio tolerance, so near-ties keep the earlier set.
bool improves(ConstantKind kind, double candidate, double incumbent) {
  if (kind == ConstantKind::Upper) return candidate > incumbent * (1.0 + kRatioTol);
  return candidate < incumbent * (1.0 - kRatioTol);
}

double extreme(ConstantKind kind, double a, double b) {
  return kind == ConstantKind::Upper ? std::max(a, b) : std::min(a, b);
}

bool regime_ok(const OperatorSpec& spec, ConstantKind kind) {
  return kind == ConstantKind::Upper ? spec.source.q() <= spec.target.q()
                                     : spec.source.q() >= spec.target.q();
}

ConstantCertificate make_certificate(const OperatorSpec& spec, ConstantKind kind,
                                     SearchMethod method) {
  ConstantCertificate cert;
  cert.kind = kind;
  cert.method = method;
  cert.regime_ok = regime_ok(spec, kind);
  cert.value = kind == ConstantKind::Upper ? 0.0 : kInfinity;
  return cert;
}

// Running best over candidates offered in a fixed order.
struct Incumbent {
  explicit Incumbent(ConstantKind k) : kind(k) {}

  ConstantKind kind;
  bool found = false;
  double extreme_value = 0.0;
  double winner_value = 0.0;
  std::vector<bool> winner;

  void offer(double value, const std::vector<bool>& members) {
    if (!found) {
      found = true;
      extreme_value = winner_value = value;
      winner = members;
      return;
    }
    extreme_value = extreme(kind, extreme_value, value);
    if (improves(kind, value, winner_value)) {
      winner_value = value;
      winner = members;
    }
  }

  void write(ConstantCertificate& cert, const SpaceRef& space) const {
    cert.value = extreme_value;
    cert.extremal_set = MSet(space, winner);
  }
};

// ---- exhaustive enumeration ----

bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const int d = std::countr_zero(a ^ b);
  if ((a >> d) & 1U) return (b >> d) != 0;
  return (a >> d) == 0;
}

struct TaskResult {
  bool found = false;
  double extreme_value = 0.0;
  double winner_value = 0.0;
  std::uint64_t winner = 0;
};

class SubsetScan {
 public:
  SubsetScan(const RatioKernel& kernel, ConstantKind kind) : kernel_(kernel), kind_(kind) {}

  // Every nonempty subset whose members below `prefix_bits` are exactly
  // `pattern`, visited in lexicographic order.
  TaskResult run(std::size_t prefix_bits, std::uint64_t pattern) const {
    TaskResult result;
    double mass = 0.0;
    double weight = 0.0;
    for (std::size_t y = 0; y < prefix_bits; ++y) {
      if ((pattern >> y) & 1U) {
        mass += kernel_.fiber(y);
        weight += kernel_.nu(y);
      }
    }
    if (pattern != 0) visit(result, pattern, mass, weight);
    descend(result, prefix_bits, pattern, mass, weight);
    return result;
  }

 private:
  void descend(TaskResult& result, std::size_t from, std::uint64_t mask, double mass,
               double weight) const {
    for (std::size_t y = from; y < kernel_.size(); ++y) {
      const std::uint64_t next = mask | (std::uint64_t{1} << y);
      const double m = mass + kernel_.fiber(y);
      const double w = weight + kernel_.nu(y);
      visit(result, next, m, w);
      descend(result, y + 1, next, m, w);
    }
  }

  void visit(TaskResult& result, std::uint64_t mask, double mass, double weight) const {
    if (kind_ == ConstantKind::Lower && weight == 0.0) return;
    const double value = kernel_.ratio(mass, weight);
    if (!result.found) {
      result = {true, value, value, mask};
      return;
    }
    result.extreme_value = extreme(kind_, result.extreme_value, value);
    if (improves(kind_, value, result.winner_value)) {
      result.winner_value = value;
      result.winner = mask;
    }
  }

  const RatioKernel& kernel_;
  ConstantKind kind_;
};

ConstantCertificate exhaustive(const OperatorSpec& spec, ConstantKind kind,
                               const SearchOptions& options) {
  const std::size_t n = spec.map.codomain()->size();
  const std::size_t limit = std::min(options.size_limit, kMaxExhaustiveAtoms);
  if (n > limit) {
    throw SizeLimitError("exhaustive search over " + std::to_string(n) +
                         " codomain atoms exceeds the limit of " + std::to_string(limit) +
                         "; use the bracket methods");
  }
  const RatioKernel kernel(spec);
  const SubsetScan scan(kernel, kind);

  // The task split depends on n only, so results do not depend on the
  // number of workers.
  const std::size_t prefix_bits = n > 12 ? 6 : 0;
  const std::size_t tasks = std::size_t{1} << prefix_bits;
  std::vector<TaskResult> results(tasks);

  unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, tasks));
  if (workers == 1) {
    for (std::size_t t = 0; t < tasks; ++t) results[t] = scan.run(prefix_bits, t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks; t = next++) results[t] = scan.run(prefix_bits, t);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<TaskResult> found;
  for (const auto& r : results)
    if (r.found) found.push_back(r);
  if (found.empty()) {
    throw DomainError("no admissible set: every codomain atom is null");
  }
  std::sort(found.begin(), found.end(),
            [](const TaskResult& a, const TaskResult& b) { return mask_lex_less(a.winner, b.winner); });

  TaskResult merged = found.front();
  for (std::size_t i = 1; i < found.size(); ++i) {
    merged.extreme_value = extreme(kind, merged.extreme_value, found[i].extreme_value);
    if (improves(kind, found[i].winner_value, merged.winner_value)) {
      merged.winner_value = found[i].winner_value;
      merged.winner = found[i].winner;
    }
  }

  ConstantCertificate cert = make_certificate(spec, kind, SearchMethod::Exhaustive);
  cert.value = merged.extreme_value;
  cert.extremal_set = MSet::from_mask(spec.map.codomain(), merged.winner);
  return cert;
}

// ---- level sets and singletons ----

// Prefix unions of the codomain atoms ordered by J (descending for Upper,
// ascending for Lower), one candidate per group of equal J. Lower skips
// null atoms.
ConstantCertificate level_sets(const OperatorSpec& spec, ConstantKind kind) {
  rn_derivative(spec.map);  // throws without N^{-1}
  const RatioKernel kernel(spec);
  std::vector<std::size_t> order;
  for (std::size_t y = 0; y < kernel.size(); ++y)
    if (kind == ConstantKind::Upper || kernel.nu(y) > 0.0) order.push_back(y);
  if (order.empty()) throw DomainError("no admissible set: every codomain atom is null");
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return kind == ConstantKind::Upper ? kernel.jacobian(a) > kernel.jacobian(b)
                                       : kernel.jacobian(a) < kernel.jacobian(b);
  });

  Incumbent best(kind);
  std::vector<bool> members(kernel.size(), false);
  for (std::size_t k = 0; k < order.size();) {
    const double level = kernel.jacobian(order[k]);
    while (k < order.size() && kernel.jacobian(order[k]) == level) members[order[k++]] = true;
    best.offer(kernel.ratio(members), members);
  }

  ConstantCertificate cert = make_certificate(spec, kind, SearchMethod::LevelSet);
  best.write(cert, spec.map.codomain());
  return cert;
}

ConstantCertificate singletons(const OperatorSpec& spec, ConstantKind kind) {
  const RatioKernel kernel(spec);
  Incumbent best(kind);
  std::vector<bool> members(kernel.size(), false);
  for (std::size_t y = 0; y < kernel.size(); ++y) {
    if (kind == ConstantKind::Lower && kernel.nu(y) == 0.0) continue;
    members[y] = true;
    best.offer(kernel.ratio(kernel.fiber(y), kernel.nu(y)), members);
    members[y] = false;
  }
  if (!best.found) throw DomainError("no admissible set: every codomain atom is null");
  ConstantCertificate cert = make_certificate(spec, kind, SearchMethod::SingletonScan);
  best.write(cert, spec.map.codomain());
  return cert;
}

// Positive atoms sorted by J for the greedy relaxation.
std::vector<std::size_t> positive_atoms_by_jacobian(const RatioKernel& kernel, bool descending) {
  std::vector<std::size_t> order;
  for (std::size_t y = 0; y < kernel.size(); ++y)
    if (kernel.nu(y) > 0.0) order.push_back(y);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? kernel.jacobian(a) > kernel.jacobian(b)
                      : kernel.jacobian(a) < kernel.jacobian(b);
  });
  return order;
}

// h(W) = (c + J W) / W^alpha on one linear piece of the greedy profile.
double piece_value(double intercept, double slope, double w, double alpha) {
  return (intercept + slope * w) / std::pow(w, alpha);
}

// Interior stationary point of h, if it lies strictly inside (lo, hi).
std::optional<double> stationary_point(double intercept, double slope, double alpha, double lo,
                                       double hi) {
  if (alpha == 1.0 || slope == 0.0 || intercept == 0.0) return std::nullopt;
  const double w = alpha * intercept / (slope * (1.0 - alpha));
  if (w > lo && w < hi) return w;
  return std::nullopt;
}

}  // namespace

double set_ratio(const OperatorSpec& spec, const MSet& b) {
  if (!same_space(b.space(), spec.map.codomain())) {
    throw StructuralError("set_ratio: set does not live on the codomain");
  }
  if (b.is_empty()) throw DomainError("set_ratio is undefined on the empty set");
  std::vector<bool> members(b.space()->size());
  for (std::size_t y = 0; y < members.size(); ++y) members[y] = b.contains(y);
  return RatioKernel(spec).ratio(members);
}

double composition_ratio(const OperatorSpec& spec, const SimpleFunction& f) {
  const double image = lorentz_norm(compose(spec.map, f), spec.target);
  const double source = lorentz_norm(f, spec.source);
  if (source == 0.0) return image == 0.0 ? 0.0 : kInfinity;
  return image / source;
}

ConstantCertificate best_constant_exhaustive(const OperatorSpec& spec,
                                             const SearchOptions& options) {
  return exhaustive(spec, ConstantKind::Upper, options);
}

ConstantCertificate best_constant_levelset(const OperatorSpec& spec) {
  ConstantCertificate cert = level_sets(spec, ConstantKind::Upper);
  cert.note = spec.alpha() <= 1.0 ? "super-level sets; exact since p <= r"
                                  : "super-level sets; lower bound only since p > r";
  return cert;
}

ConstantCertificate best_constant_fractional_upper(const OperatorSpec& spec) {
  ConstantCertificate cert =
      make_certificate(spec, ConstantKind::Upper, SearchMethod::FractionalRelaxation);
  const double alpha = spec.alpha();
  if (alpha > 1.0) {
    cert.value = kInfinity;
    cert.note = "p > r: the relaxation is unbounded near zero weight";
    return cert;
  }
  if (!check_luzin_n_inverse(spec.map).holds) {
    cert.value = kInfinity;
    cert.note = "N^{-1} fails: a null set has a fiber of positive mass";
    return cert;
  }
  const RatioKernel kernel(spec);
  double best = 0.0;
  double mass = 0.0;
  double weight = 0.0;
  for (std::size_t y : positive_atoms_by_jacobian(kernel, true)) {
    const double slope = kernel.jacobian(y);
    const double intercept = mass - slope * weight;
    const double lo = weight;
    mass += kernel.fiber(y);
    weight += kernel.nu(y);
    best = std::max(best, mass / std::pow(weight, alpha));
    if (auto w = stationary_point(intercept, slope, alpha, lo, weight)) {
      best = std::max(best, piece_value(intercept, slope, *w, alpha));
    }
  }
  cert.value = std::pow(best, 1.0 / spec.target.p());
  cert.note = "greedy fractional relaxation; upper bound on K";
  return cert;
}

ConstantCertificate best_constant_singletons(const OperatorSpec& spec) {
  ConstantCertificate cert = singletons(spec, ConstantKind::Upper);
  cert.note = spec.alpha() >= 1.0 ? "single atoms; exact since p >= r"
                                  : "single atoms; lower bound only since p < r";
  return cert;
}

ConstantCertificate best_constant(const OperatorSpec& spec, const SearchOptions& options) {
  const std::size_t n = spec.map.codomain()->size();
  if (n <= std::min(options.size_limit, kMaxExhaustiveAtoms)) {
    return best_constant_exhaustive(spec, options);
  }
  if (!check_luzin_n_inverse(spec.map).holds) {
    ConstantCertificate cert = best_constant_singletons(spec);
    cert.bracket = {{cert.value, cert.value}};
    cert.note = "N^{-1} fails: a null atom has a fiber of positive mass";
    return cert;
  }
  if (spec.alpha() <= 1.0) {
    // For p <= r every set ratio is bounded by the greedy relaxation, whose
    // maximum sits at a super-level set.
    ConstantCertificate cert = best_constant_levelset(spec);
    const double upper = best_constant_fractional_upper(spec).value;
    cert.bracket = {{cert.value, std::max(cert.value, upper)}};
    return cert;
  }
  // For p >= r, nu(B)^alpha >= sum nu(y)^alpha, so a set ratio never beats
  // its best atom.
  ConstantCertificate cert = best_constant_singletons(spec);
  cert.bracket = {{cert.value, cert.value}};
  return cert;
}

ConstantCertificate lower_constant_exhaustive(const OperatorSpec& spec,
                                              const SearchOptions& options) {
  return exhaustive(spec, ConstantKind::Lower, options);
}

ConstantCertificate lower_constant_levelset(const OperatorSpec& spec) {
  ConstantCertificate cert = level_sets(spec, ConstantKind::Lower);
  cert.note = spec.alpha() >= 1.0 ? "sub-level sets; exact since p >= r"
                                  : "sub-level sets; upper bound only since p < r";
  return cert;
}

ConstantCertificate lower_constant_singletons(const OperatorSpec& spec) {
  ConstantCertificate cert = singletons(spec, ConstantKind::Lower);
  cert.note = spec.alpha() <= 1.0 ? "single atoms; exact since p <= r"
                                  : "single atoms; upper bound only since p > r";
  return cert;
}

ConstantCertificate lower_constant_fractional(const OperatorSpec& spec) {
  ConstantCertificate cert =
      make_certificate(spec, ConstantKind::Lower, SearchMethod::FractionalRelaxation);
  const RatioKernel kernel(spec);
  const auto order = positive_atoms_by_jacobian(kernel, false);
  if (order.empty()) throw DomainError("no admissible set: every codomain atom is null");
  double lightest = kInfinity;
  for (std::size_t y : order) lightest = std::min(lightest, kernel.nu(y));

  const double alpha = spec.alpha();
  double best = kInfinity;
  double mass = 0.0;
  double weight = 0.0;
  for (std::size_t y : order) {
    const double slope = kernel.jacobian(y);
    const double intercept = mass - slope * weight;
    const double lo = std::max(weight, lightest);
    mass += kernel.fiber(y);
    weight += kernel.nu(y);
    if (lo > weight) continue;
    best = std::min(best, piece_value(intercept, slope, lo, alpha));
    best = std::min(best, mass / std::pow(weight, alpha));
    if (auto w = stationary_point(intercept, slope, alpha, lo, weight)) {
      best = std::min(best, piece_value(intercept, slope, *w, alpha));
    }
  }
  cert.value = std::pow(std::max(best, 0.0), 1.0 / spec.target.p());
  cert.note = "greedy fractional relaxation over weights >= lightest atom; lower bound on k";
  return cert;
}

ConstantCertificate lower_constant(const OperatorSpec& spec, const SearchOptions& options) {
  const std::size_t n = spec.map.codomain()->size();
  if (n <= std::min(options.size_limit, kMaxExhaustiveAtoms)) {
    return lower_constant_exhaustive(spec, options);
  }
  if (spec.alpha() <= 1.0) {
    // For p <= r, nu(B)^alpha <= sum nu(y)^alpha, so no set ratio falls below
    // its worst atom.
    ConstantCertificate cert = lower_constant_singletons(spec);
    cert.bracket = {{cert.value, cert.value}};
    return cert;
  }
  // For p > r the greedy relaxation is quasi-concave on each piece, so its
  // minimum sits at a sub-level set.
  ConstantCertificate cert = lower_constant_levelset(spec);
  const double lower = lower_constant_fractional(spec).value;
  cert.bracket = {{std::min(lower, cert.value), cert.value}};
  return cert;
}

BoundednessReport check_bounded(const OperatorSpec& spec, const SearchOptions& options) {
  BoundednessReport report;
  report.luzin = check_luzin_n_inverse(spec.map);
  report.constant = best_constant(spec, options);
  report.regime_ok = spec.source.q() <= spec.target.q();
  const bool finite = std::isfinite(report.constant.value) && report.luzin.holds;
  if (report.regime_ok) {
    report.verdict = finite ? Verdict::Bounded : Verdict::Unbounded;
  } else {
    report.verdict = finite ? Verdict::NecessaryConditionHolds : Verdict::NecessaryConditionFails;
  }
  return report;
}

BoundedBelowReport check_bounded_below(const OperatorSpec& spec, const SearchOptions& options) {
  BoundedBelowReport report;
  report.luzin = check_luzin_n_inverse(spec.map);
  report.constant = lower_constant(spec, options);
  report.regime_ok = spec.source.q() >= spec.target.q();
  const bool positive = report.constant.value > 0.0;
  if (report.regime_ok && report.luzin.holds) {
    report.verdict = positive ? Verdict::BoundedBelow : Verdict::NotBoundedBelow;
  } else {
    report.verdict = positive ? Verdict::NecessaryConditionHolds : Verdict::NecessaryConditionFails;
  }
  return report;
}

ClosedRangeReport check_injective_closed_range(const OperatorSpec& spec,
                                               const SearchOptions& options) {
  if (spec.source.q() != spec.target.q()) {
    throw RegimeError("injectivity/closed range is characterized only for s = q");
  }
  ClosedRangeReport report;
  report.luzin = check_luzin_n_inverse(spec.map);
  report.lower = lower_constant(spec, options);
  report.injective_closed_range = report.luzin.holds && report.lower.value > 0.0;
  return report;
}

RangeReport is_in_range_closure(const MeasurableMap& m, const SimpleFunction& g) {
  if (!same_space(g.space(), m.domain())) {
    throw StructuralError("range test: function does not live on the domain");
  }
  const FiberPartition partition(m);
  const MeasureSpace& x_space = *m.domain();
  std::vector<double> f(m.codomain()->size(), 0.0);
  RangeReport report;
  for (std::size_t y = 0; y < f.size(); ++y) {
    bool seen = false;
    for (std::size_t x : partition.block(y)) {
      if (x_space.weight(x) == 0.0) continue;
      if (!seen) {
        f[y] = g[x];
        seen = true;
      } else if (g[x] != f[y]) {
        report.violating_blocks.push_back(y);
        break;
      }
    }
  }
  report.in_closure = report.violating_blocks.empty();
  if (report.in_closure) report.preimage_function = SimpleFunction(m.codomain(), std::move(f));
  return report;
}

IsomorphismReport check_isomorphism(const OperatorSpec& spec) {
  if (!(spec.source == spec.target)) {
    throw RegimeError("isomorphism is characterized only for equal source and target exponents");
  }
  IsomorphismReport report;
  report.luzin = check_luzin_n_inverse(spec.map);
  const RatioKernel kernel(spec);
  report.ess_inf_j = kInfinity;
  report.ess_sup_j = 0.0;
  for (std::size_t y = 0; y < kernel.size(); ++y) {
    if (kernel.nu(y) == 0.0) continue;
    report.ess_inf_j = std::min(report.ess_inf_j, kernel.jacobian(y));
    report.ess_sup_j = std::max(report.ess_sup_j, kernel.jacobian(y));
  }
  if (!report.luzin.holds) report.ess_sup_j = kInfinity;
  const double inv_p = 1.0 / spec.target.p();
  report.k = std::pow(report.ess_inf_j, inv_p);
  report.K = std::pow(report.ess_sup_j, inv_p);

  const FiberPartition partition(spec.map);
  for (std::size_t y = 0; y < kernel.size(); ++y) {
    std::size_t positive = 0;
    for (std::size_t x : partition.block(y))
      if (spec.map.domain()->weight(x) > 0.0) ++positive;
    if (positive > 1) report.merged_blocks.push_back(y);
  }
  report.sigma_match = report.merged_blocks.empty();
  report.isomorphism = report.luzin.holds && report.ess_inf_j > 0.0 &&
                       std::isfinite(report.ess_sup_j) && report.sigma_match;
  return report;
}

SimpleFunction random_simple_function(const SpaceRef& space, Rng& rng) {
  std::vector<double> pool(rng.index(1, 4));
  for (double& v : pool) v = rng.uniform(0.1, 3.0);
  std::vector<double> values(space->size(), 0.0);
  for (double& v : values) {
    if (rng.chance(0.15)) continue;
    v = rng.chance(0.5) ? pool[rng.index(0, pool.size() - 1)] : rng.uniform(0.05, 4.0);
    if (rng.chance(0.3)) v = -v;
  }
  return SimpleFunction(space, std::move(values));
}

SampleReport operator_norm_sample(const OperatorSpec& spec, std::size_t trials,
                                  std::uint64_t seed) {
  if (trials == 0) throw DomainError("operator_norm_sample needs at least one trial");
  const SpaceRef& y_space = spec.map.codomain();
  SampleReport report;

  auto consider = [&](const SimpleFunction& f) {
    const double image = lorentz_norm(compose(spec.map, f), spec.target);
    const double source = lorentz_norm(f, spec.source);
    if (image == 0.0 && source == 0.0) return;
    const double ratio = source == 0.0 ? kInfinity : image / source;
    ++report.evaluated;
    if (!report.best || ratio > report.sup_ratio) {
      report.sup_ratio = ratio;
      report.best = f;
    }
  };

  for (std::size_t y = 0; y < y_space->size(); ++y) {
    std::vector<double> v(y_space->size(), 0.0);
    v[y] = 1.0;
    consider(SimpleFunction(y_space, std::move(v)));
  }
  consider(SimpleFunction::constant(y_space, 1.0));
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) consider(random_simple_function(y_space, rng));
  return report;
}

}  // namespace lorcomp
