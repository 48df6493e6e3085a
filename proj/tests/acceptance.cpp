// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lorcomp/composition.hpp"
#include "lorcomp/errors.hpp"
#include "lorcomp/fixtures.hpp"
#include "support.hpp"

using namespace lorcomp;
using lorcomp::testing::rel_close;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double exponent_q(Rng& rng, double lo, double hi, double inf_chance) {
  return rng.chance(inf_chance) ? kInfinity : rng.uniform(lo, hi);
}

// sup over pieces of f*, right-end limits.
double sup_over_rearrangement(const SimpleFunction& f, double p) {
  const StepFunction g = rearrangement(f);
  double best = 0.0;
  for (std::size_t k = 0; k + 1 < g.pieces(); ++k)
    best = std::max(best, g.levels()[k] * std::pow(g.piece_end(k), 1.0 / p));
  return best;
}

double sup_over_distribution(const SimpleFunction& f, double p) {
  const StepFunction mu = distribution(f);
  double best = 0.0;
  for (std::size_t k = 0; k + 1 < mu.pieces(); ++k)
    best = std::max(best, mu.piece_end(k) * std::pow(mu.levels()[k], 1.0 / p));
  return best;
}

// 1. Both norm routes agree.
Outcome norm_routes() {
  const auto start = Clock::now();
  Rng rng(1001);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const SpaceRef x = testing::random_space(rng, rng.index(1, 12), "a", 0.1);
    const SimpleFunction f = random_simple_function(x, rng);
    const double p = rng.uniform(1.0 + 1e-6, 8.0);
    const double q = exponent_q(rng, 1.0, 8.0, 0.15);
    const LorentzExponents e(p, q);
    double a;
    double b;
    if (e.weak()) {
      a = sup_over_rearrangement(f, p);
      b = sup_over_distribution(f, p);
      if (!rel_close(norm_sup(f, e), a, 1e-9)) return {false, "norm_sup disagrees with the piecewise sup"};
    } else {
      a = norm_via_rearrangement(f, e);
      b = norm_via_distribution(f, e);
    }
    worst = std::max(worst, std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)}));
  }
  const double t = seconds_since(start);
  return {worst <= 1e-9 && t < 10.0, fmt("max rel gap %.2e over 500 functions, %.3f s", worst, t)};
}

// 2. ||chi_E||_{p,q} = mu(E)^(1/p).
Outcome indicator_lemma() {
  Rng rng(1002);
  const SpaceRef x = testing::random_space(rng, 10, "a", 0.1);
  double worst = 0.0;
  for (int pair = 0; pair < 20; ++pair) {
    const LorentzExponents e(rng.uniform(1.05, 8.0), pair % 5 == 0 ? kInfinity : rng.uniform(1.0, 8.0));
    for (std::uint64_t mask = 0; mask < (1u << 10); ++mask) {
      const MSet set = MSet::from_mask(x, mask);
      const double expect = std::pow(measure(set), 1.0 / e.p());
      const double got = lorentz_norm(SimpleFunction::indicator(set), e);
      double gap = std::fabs(got - expect) / std::max(1.0, expect);
      if (!e.weak()) {
        const double other = norm_via_distribution(SimpleFunction::indicator(set), e);
        gap = std::max(gap, std::fabs(other - expect) / std::max(1.0, expect));
      }
      worst = std::max(worst, gap);
    }
  }
  return {worst <= 1e-12, fmt("max rel gap %.2e over 1024 subsets x 20 pairs", worst)};
}

// 3. ||f||_{p,q2} <= ||f||_{p,q1} for q1 <= q2.
Outcome q_monotone() {
  Rng rng(1003);
  int violations = 0;
  for (int i = 0; i < 500; ++i) {
    const SpaceRef x = testing::random_space(rng, rng.index(1, 12), "a", 0.1);
    const SimpleFunction f = random_simple_function(x, rng);
    const double p = rng.uniform(1.05, 8.0);
    const double q1 = rng.uniform(1.0, 8.0);
    const double q2 = i % 4 == 0 ? kInfinity : rng.uniform(q1, 10.0);
    const double big = lorentz_norm(f, LorentzExponents(p, q1));
    const double small = lorentz_norm(f, LorentzExponents(p, q2));
    if (small > big * (1 + 1e-9)) ++violations;
  }
  return {violations == 0, fmt("%.0f violations in 500 triples", violations)};
}

std::vector<MeasurableMap> map_corpus(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<MeasurableMap> maps;
  while (maps.size() < count) {
    MeasurableMap m = testing::random_map(rng, 12, 16);
    if (measure(MSet::full(m.codomain())) > 0.0) maps.push_back(std::move(m));
  }
  return maps;
}

// 4. mu(phi^{-1} E) = sum_E J nu.
Outcome rn_identity() {
  double worst = 0.0;
  for (const MeasurableMap& m : map_corpus(1004, 100)) {
    const RNDerivative j = rn_derivative(m);
    const SpaceRef& y = m.codomain();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << y->size()); ++mask) {
      const MSet e = MSet::from_mask(y, mask);
      double sum = 0.0;
      for (std::size_t k : e.indices()) sum += j[k] * y->weight(k);
      const double mass = measure(preimage(m, e));
      worst = std::max(worst, std::fabs(mass - sum) / std::max(1.0, mass));
    }
  }
  return {worst <= 1e-12, fmt("max rel gap %.2e over 100 maps, all subsets", worst)};
}

// Corpus for criteria 5, 6 and 12: p <= r, s <= q.
std::vector<OperatorSpec> upper_corpus() {
  Rng rng(1005);
  std::vector<OperatorSpec> specs;
  for (MeasurableMap& m : map_corpus(1015, 100)) {
    const double p = rng.uniform(1.05, 6.0);
    const double r = rng.uniform(p, 8.0);
    const double s = rng.uniform(1.0, 6.0);
    const double q = rng.chance(0.2) ? kInfinity : rng.uniform(s, 8.0);
    specs.push_back(OperatorSpec{std::move(m), LorentzExponents(r, s), LorentzExponents(p, q)});
  }
  return specs;
}

double sup_indicator_ratio(const OperatorSpec& spec) {
  const SpaceRef& y = spec.map.codomain();
  double best = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << y->size()); ++mask) {
    const SimpleFunction chi = SimpleFunction::indicator(MSet::from_mask(y, mask));
    const double den = lorentz_norm(chi, spec.source);
    const double num = lorentz_norm(compose(spec.map, chi), spec.target);
    if (den == 0.0) continue;  // N^{-1} holds, so num is 0 too
    best = std::max(best, num / den);
  }
  return best;
}

// 5. Boundedness inequality and sharpness over indicators.
Outcome lemma_equivalence(const std::vector<OperatorSpec>& specs) {
  Rng rng(1006);
  int violations = 0;
  double worst_sharp = 0.0;
  for (const OperatorSpec& spec : specs) {
    const double k = best_constant_exhaustive(spec).value;
    for (int i = 0; i < 200; ++i) {
      const SimpleFunction f = random_simple_function(spec.map.codomain(), rng);
      const double lhs = lorentz_norm(compose(spec.map, f), spec.target);
      const double rhs = k * lorentz_norm(f, spec.source);
      if (lhs > rhs * (1 + 1e-9)) ++violations;
    }
    const double sup = sup_indicator_ratio(spec);
    worst_sharp = std::max(worst_sharp, std::fabs(sup - k) / std::max(1.0, k));
  }
  return {violations == 0 && worst_sharp <= 1e-9,
          fmt("%.0f violations in 20000 samples; indicator sup vs K max rel gap %.2e", violations,
              worst_sharp)};
}

// 6. level-set <= exhaustive <= fractional.
Outcome sandwich(const std::vector<OperatorSpec>& specs) {
  int broken = 0;
  int equal = 0;
  for (const OperatorSpec& spec : specs) {
    const double lv = best_constant_levelset(spec).value;
    const double ex = best_constant_exhaustive(spec).value;
    const double fr = best_constant_fractional_upper(spec).value;
    if (lv > ex * (1 + kRatioTol) || ex > fr * (1 + kRatioTol)) ++broken;
    if (rel_close(lv, ex, kRatioTol)) ++equal;
  }
  return {broken == 0, fmt("%.0f sandwich breaks; level-set = exhaustive on %.0f of %.0f", broken, equal,
                           static_cast<double>(specs.size()))};
}

// 7. Lower bound for s >= q.
Outcome lower_bound() {
  Rng rng(1007);
  int violations = 0;
  int samples = 0;
  for (MeasurableMap& m : map_corpus(1017, 100)) {
    const double p = rng.uniform(1.05, 6.0);
    const double r = rng.uniform(1.05, 6.0);
    const double q = rng.uniform(1.0, 6.0);
    const double s = rng.chance(0.2) ? kInfinity : rng.uniform(q, 8.0);
    const OperatorSpec spec{std::move(m), LorentzExponents(r, s), LorentzExponents(p, q)};
    const double k = lower_constant_exhaustive(spec).value;
    for (int i = 0; i < 200; ++i) {
      const SimpleFunction f = random_simple_function(spec.map.codomain(), rng);
      const double lhs = lorentz_norm(compose(spec.map, f), spec.target);
      const double rhs = k * lorentz_norm(f, spec.source);
      ++samples;
      if (lhs < rhs * (1 - 1e-9)) ++violations;
    }
  }
  return {violations == 0, fmt("%.0f violations in %.0f samples", violations, samples)};
}

// 8. Uniform refinement, r = 2, p = 3: K = n^(1/6).
Outcome uniform_refinement() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::size_t n = 2; n <= 256; n *= 2) {
    const OperatorSpec spec{fixtures::uniform_refinement(n), LorentzExponents(2, 2), LorentzExponents(3, 2)};
    const double k = best_constant(spec).value;
    const double expect = std::pow(static_cast<double>(n), 0.5 - 1.0 / 3.0);
    worst = std::max(worst, std::fabs(k - expect) / expect);
  }
  const double t = seconds_since(start);
  return {worst <= 1e-9 && t < 5.0, fmt("max rel gap %.2e for n = 2..256, %.3f s", worst, t)};
}

// 9. Square collapse, r = 2, p = 3: K = 1 at a single atom.
Outcome square_collapse() {
  bool ok = true;
  std::string sizes;
  for (std::size_t n = 2; n <= 8; ++n) {
    const OperatorSpec spec{fixtures::square_collapse(n), LorentzExponents(2, 2), LorentzExponents(3, 2)};
    const ConstantCertificate c = best_constant(spec);
    ok = ok && c.value == 1.0 && c.extremal_set && c.extremal_set->count() == 1;
    sizes += " " + std::to_string(n * n) + ":" + to_string(c.method);
  }
  return {ok, "K = 1 on single atoms for |Y| =" + sizes};
}

// 10. Isomorphism for bijective fibers.
Outcome isomorphism() {
  Rng rng(1010);
  int wrong = 0;
  int unflipped = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.index(2, 12);
    std::vector<Atom> ys;
    std::vector<Atom> xs;
    std::vector<std::size_t> assign;
    double lo = kInfinity;
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = rng.uniform(0.1, 3.0);
      const double j = rng.uniform(0.5, 2.0);
      ys.push_back({"y" + std::to_string(i + 1), w});
      xs.push_back({"x" + std::to_string(i + 1), j * w});
      assign.push_back(i);
      const double jr = (j * w) / w;
      lo = std::min(lo, jr);
      hi = std::max(hi, jr);
    }
    const double p = rng.uniform(1.05, 6.0);
    const LorentzExponents e(p, p);
    const SpaceRef x = MeasureSpace::create(xs);
    const SpaceRef y = MeasureSpace::create(ys);
    const OperatorSpec spec{MeasurableMap(x, y, assign), e, e};
    const IsomorphismReport r = check_isomorphism(spec);
    if (!r.isomorphism || !rel_close(r.k, std::pow(lo, 1 / p), 1e-9) ||
        !rel_close(r.K, std::pow(hi, 1 / p), 1e-9) ||
        !rel_close(best_constant(spec).value, r.K, 1e-9) || !rel_close(lower_constant(spec).value, r.k, 1e-9))
      ++wrong;

    std::vector<std::size_t> merged = assign;
    const std::size_t a = rng.index(0, n - 1);
    std::size_t b = rng.index(0, n - 2);
    if (b >= a) ++b;
    merged[b] = merged[a];
    const IsomorphismReport m = check_isomorphism(OperatorSpec{MeasurableMap(x, y, merged), e, e});
    if (m.sigma_match) ++unflipped;
  }
  return {wrong == 0 && unflipped == 0,
          fmt("%.0f wrong constants, %.0f merges left sigma_match true, of 50", wrong, unflipped)};
}

// 11. Range closure on criterion 4's corpus.
Outcome range_closure() {
  Rng rng(1011);
  int accepted = 0;
  int rejected = 0;
  int failures = 0;
  for (const MeasurableMap& m : map_corpus(1004, 100)) {
    const SpaceRef& x = m.domain();
    for (int i = 0; i < 5; ++i) {
      std::vector<double> g(x->size());
      const SimpleFunction f = random_simple_function(m.codomain(), rng);
      for (std::size_t k = 0; k < g.size(); ++k)
        g[k] = x->weight(k) == 0.0 ? rng.uniform(-5, 5) : f[m.image(k)];
      const SimpleFunction gf(x, g);
      const RangeReport r = is_in_range_closure(m, gf);
      if (r.in_closure && r.preimage_function && ae_equal(compose(m, *r.preimage_function), gf))
        ++accepted;
      else
        ++failures;

      const FiberPartition partition = fiber_partition(m);
      for (const std::vector<std::size_t>& block : partition.blocks()) {
        std::vector<std::size_t> positive;
        for (std::size_t k : block)
          if (x->weight(k) > 0.0) positive.push_back(k);
        if (positive.size() < 2) continue;
        std::vector<double> bumped = g;
        bumped[positive[rng.index(0, positive.size() - 1)]] += rng.uniform(0.5, 2.0);
        if (is_in_range_closure(m, SimpleFunction(x, bumped)).in_closure)
          ++failures;
        else
          ++rejected;
      }
    }
  }
  return {failures == 0 && accepted == 500,
          fmt("%.0f block-constant accepted, %.0f perturbations rejected, %.0f failures", accepted, rejected,
              failures)};
}

// 12. p = r: K^p = max J over nu-positive atoms.
Outcome lp_specialization(const std::vector<OperatorSpec>& specs) {
  double worst = 0.0;
  for (const OperatorSpec& base : specs) {
    const double p = base.target.p();
    const OperatorSpec spec{base.map, LorentzExponents(p, base.source.q()), base.target};
    const RNDerivative j = rn_derivative(spec.map);
    double max_j = 0.0;
    for (std::size_t y = 0; y < spec.map.codomain()->size(); ++y)
      if (spec.map.codomain()->weight(y) > 0.0) max_j = std::max(max_j, j[y]);
    const double kp = std::pow(best_constant_exhaustive(spec).value, p);
    worst = std::max(worst, std::fabs(kp - max_j) / std::max(1.0, max_j));
  }
  return {worst <= 1e-9, fmt("max rel gap %.2e over 100 specs", worst)};
}

}  // namespace

int main() {
  const std::vector<OperatorSpec> specs = upper_corpus();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"norm formula equivalence", norm_routes},
      {"indicator norm", indicator_lemma},
      {"q-monotonicity", q_monotone},
      {"Radon-Nikodym identity", rn_identity},
      {"boundedness equivalence (s <= q)", [&] { return lemma_equivalence(specs); }},
      {"sharpness sandwich", [&] { return sandwich(specs); }},
      {"lower bound (s >= q)", lower_bound},
      {"uniform refinement K = n^(1/r-1/p)", uniform_refinement},
      {"square collapse K = 1", square_collapse},
      {"isomorphism for bijective fibers", isomorphism},
      {"range closure", range_closure},
      {"p = r specialization", [&] { return lp_specialization(specs); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
