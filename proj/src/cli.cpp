#include "lorcomp/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "lorcomp/composition.hpp"
#include "lorcomp/errors.hpp"
#include "lorcomp/fixtures.hpp"
#include "lorcomp/json_io.hpp"

namespace lorcomp::cli {

namespace {

using io::json;

const std::vector<std::string> kCommands = {
    "norm",          "rearrange",          "distribution",       "rn-derivative",
    "check-n-inverse", "best-constant",    "lower-constant",     "check-bounded",
    "check-bounded-below", "check-closed-range", "range-test",   "check-isomorphism",
    "sample-ratio",  "gen-fixture"};

struct Job {
  std::string command;
  std::optional<std::string> p, q, r, s;
  std::optional<std::string> map_path, space_path, fn_path, set_path, out_path;
  std::optional<std::size_t> size_limit;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  std::string kind;
  std::size_t n = 0;
};

double parse_exponent(const std::optional<std::string>& raw, const char* flag) {
  if (!raw) throw StructuralError(std::string("--") + flag + " is required for this command");
  if (*raw == "inf" || *raw == "infinity") return kInfinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(*raw, &used);
    if (used != raw->size()) throw std::invalid_argument(*raw);
    return v;
  } catch (const std::exception&) {
    throw StructuralError(std::string("--") + flag + ": expected a number or \"inf\", got '" + *raw + "'");
  }
}

const std::string& require(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw StructuralError(std::string("--") + flag + " is required for this command");
  return *v;
}

std::filesystem::path parent_of(const std::string& path) {
  return std::filesystem::path(path).parent_path();
}

class Runner {
 public:
  explicit Runner(const Job& job) : job_(job) {
    options_.size_limit = job.size_limit ? *job.size_limit : size_limit_from_env();
  }

  json run(std::ostream& err) {
    inputs_ = json::object();
    inputs_["command"] = job_.command;
    for (auto [flag, value] : {std::pair{"p", &job_.p}, {"q", &job_.q}, {"r", &job_.r}, {"s", &job_.s},
                               {"map", &job_.map_path}, {"space", &job_.space_path},
                               {"fn", &job_.fn_path}, {"set", &job_.set_path}}) {
      if (*value) inputs_[flag] = **value;
    }

    const std::string& c = job_.command;
    json result;
    if (c == "norm") result = norm(err);
    else if (c == "rearrange") result = step(err, true);
    else if (c == "distribution") result = step(err, false);
    else if (c == "rn-derivative") result = rn(err);
    else if (c == "check-n-inverse") result = luzin(err);
    else if (c == "best-constant") result = constant(err, ConstantKind::Upper);
    else if (c == "lower-constant") result = constant(err, ConstantKind::Lower);
    else if (c == "check-bounded") result = bounded(err);
    else if (c == "check-bounded-below") result = bounded_below(err);
    else if (c == "check-closed-range") result = closed_range(err);
    else if (c == "range-test") result = range(err);
    else if (c == "check-isomorphism") result = isomorphism(err);
    else if (c == "sample-ratio") result = sample(err);
    else throw StructuralError("unknown command '" + c + "'");

    return {{"command", c}, {"inputs", inputs_}, {"result", std::move(result)}, {"checks", checks_}};
  }

 private:
  void check(const std::string& name, bool passed, json detail = nullptr) {
    json entry = {{"name", name}, {"passed", passed}};
    if (!detail.is_null()) entry["detail"] = std::move(detail);
    checks_.push_back(std::move(entry));
  }

  LorentzExponents target() const {
    return LorentzExponents(parse_exponent(job_.p, "p"), parse_exponent(job_.q, "q"));
  }
  LorentzExponents source() const {
    return LorentzExponents(parse_exponent(job_.r, "r"), parse_exponent(job_.s, "s"));
  }

  MeasurableMap load_map() const {
    const std::string& path = require(job_.map_path, "map");
    return io::map_from_json(io::read_json_file(path), parent_of(path), path);
  }

  OperatorSpec load_spec() const {
    inputs_["size_limit"] = options_.size_limit;
    return OperatorSpec{load_map(), source(), target()};
  }

  SpaceRef load_space_flag() const {
    const std::string& path = require(job_.space_path, "space");
    return io::space_from_json(io::read_json_file(path), path);
  }

  // --fn, with the space inline under "space" or given by --space.
  SimpleFunction load_function() const {
    const std::string& path = require(job_.fn_path, "fn");
    const json doc = io::read_json_file(path);
    SpaceRef space = doc.is_object() && doc.contains("space")
                         ? io::space_from_json(doc["space"], path + ".space")
                         : load_space_flag();
    return io::function_from_json(doc, space, path);
  }

  json norm(std::ostream& err) {
    const LorentzExponents e = target();
    std::optional<MSet> set;
    SimpleFunction f = [&] {
      if (job_.set_path) {
        const json doc = io::read_json_file(*job_.set_path);
        SpaceRef space = doc.is_object() && doc.contains("space")
                             ? io::space_from_json(doc["space"], *job_.set_path + ".space")
                             : load_space_flag();
        set = io::set_from_json(doc, space, *job_.set_path);
        return SimpleFunction::indicator(*set);
      }
      return load_function();
    }();

    json result = {{"exponents", io::to_json(e)}};
    double value = 0.0;
    if (e.weak()) {
      value = norm_sup(f, e);
      check("sup forms over rearrangement and distribution agree", true);
    } else {
      value = norm_via_rearrangement(f, e);
      const double other = norm_via_distribution(f, e);
      result["via_distribution"] = other;
      check("rearrangement and distribution formulas agree",
            std::fabs(value - other) <= kCrossFormulaTol * (1.0 + value),
            {{"rearrangement", value}, {"distribution", other}});
    }
    result["norm"] = value;

    bool is_indicator = true;
    for (double v : f.values()) is_indicator = is_indicator && (v == 0.0 || v == 1.0);
    if (is_indicator) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] == 1.0) members.push_back(i);
      const MSet e_set = MSet::from_indices(f.space(), members);
      const double direct = indicator_norm(*f.space(), e_set, e);
      check("indicator norm equals measure^(1/p)",
            std::fabs(direct - value) <= kCrossFormulaTol * (1.0 + direct), {{"direct", direct}});
    }
    err << "norm: ||f||_{" << e.p() << "," << e.q() << "} = " << value << "\n";
    return result;
  }

  json step(std::ostream& err, bool rearranged) {
    const SimpleFunction f = load_function();
    const StepFunction g = rearranged ? rearrangement(f) : distribution(f);
    check("nonincreasing", g.is_nonincreasing());
    check("nonnegative and vanishing at infinity", g.is_nonnegative() && g.has_compact_support());
    // mu_f and f* are equimeasurable: the Lebesgue measure of {f* > lambda}
    // equals mu_f(lambda) at every level of either function.
    const StepFunction star = rearranged ? g : rearrangement(f);
    const StepFunction mu = rearranged ? distribution(f) : g;
    bool equimeasurable = true;
    for (double lambda : mu.breakpoints()) {
      double length = 0.0;
      for (std::size_t k = 0; k + 1 < star.pieces(); ++k)
        if (star.levels()[k] > lambda) length = star.piece_end(k);
      equimeasurable = equimeasurable && std::fabs(length - mu(lambda)) <= kIdentityTol * (1.0 + length);
    }
    check("equimeasurable with |f|", equimeasurable);
    err << job_.command << ": " << g.pieces() << " pieces\n";
    return io::to_json(g);
  }

  json rn(std::ostream& err) {
    const MeasurableMap m = load_map();
    const RNDerivative j = rn_derivative(m);
    const std::size_t n = m.codomain()->size();
    bool identity = true;
    auto check_set = [&](const MSet& e) {
      double integral = 0.0;
      for (std::size_t y = 0; y < n; ++y)
        if (e.contains(y)) integral += j[y] * m.codomain()->weight(y);
      const double mass = measure(preimage(m, e));
      identity = identity && std::fabs(mass - integral) <= kIdentityTol * std::max(1.0, mass);
    };
    if (n <= 12) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        check_set(MSet::from_mask(m.codomain(), mask));
    } else {
      for (std::size_t y = 0; y < n; ++y) check_set(MSet::from_indices(m.codomain(), std::vector{y}));
      check_set(MSet::full(m.codomain()));
    }
    check(n <= 12 ? "mu(phi^-1 E) = int_E J dnu on every subset"
                  : "mu(phi^-1 E) = int_E J dnu on atoms and the full space",
          identity);
    err << "rn-derivative: J computed on " << n << " atoms\n";
    return {{"J", io::to_json(j)}, {"zero_set", io::to_json(zero_jacobian_set(m))}};
  }

  json luzin(std::ostream& err) {
    const MeasurableMap m = load_map();
    const LuzinReport r = check_luzin_n_inverse(m);
    err << "check-n-inverse: " << (r.holds ? "holds" : "fails") << "\n";
    return io::to_json(r, *m.codomain());
  }

  void sandwich_checks(const OperatorSpec& spec, const ConstantCertificate& cert) {
    if (cert.method != SearchMethod::Exhaustive || !std::isfinite(cert.value)) return;
    if (cert.kind == ConstantKind::Upper) {
      const double level = best_constant_levelset(spec).value;
      const double upper = best_constant_fractional_upper(spec).value;
      check("level-set <= exhaustive <= fractional upper",
            level <= cert.value * (1.0 + kRatioTol) && cert.value <= upper * (1.0 + kRatioTol),
            {{"level_set", io::number(level)}, {"fractional_upper", io::number(upper)}});
    } else {
      const double lower = lower_constant_fractional(spec).value;
      const double level = lower_constant_levelset(spec).value;
      check("fractional lower <= exhaustive <= sub-level set",
            lower <= cert.value * (1.0 + kRatioTol) && cert.value <= level * (1.0 + kRatioTol),
            {{"fractional_lower", io::number(lower)}, {"level_set", io::number(level)}});
    }
  }

  json constant(std::ostream& err, ConstantKind kind) {
    const OperatorSpec spec = load_spec();
    const ConstantCertificate cert =
        kind == ConstantKind::Upper ? best_constant(spec, options_) : lower_constant(spec, options_);
    if (check_luzin_n_inverse(spec.map).holds) sandwich_checks(spec, cert);
    summary(err, cert);
    return io::to_json(cert);
  }

  void summary(std::ostream& err, const ConstantCertificate& cert) const {
    err << job_.command << ": " << (cert.kind == ConstantKind::Upper ? "K" : "k") << " = "
        << cert.value << " (" << to_string(cert.method) << ")";
    if (cert.extremal_set) {
      err << ", extremal {";
      const auto ids = cert.extremal_set->ids();
      for (std::size_t i = 0; i < ids.size(); ++i) err << (i ? "," : "") << ids[i];
      err << "}";
    }
    err << "\n";
  }

  json bounded(std::ostream& err) {
    const OperatorSpec spec = load_spec();
    const BoundednessReport r = check_bounded(spec, options_);
    err << "check-bounded: " << to_string(r.verdict) << "\n";
    summary(err, r.constant);
    return io::to_json(r, *spec.map.codomain());
  }

  json bounded_below(std::ostream& err) {
    const OperatorSpec spec = load_spec();
    const BoundedBelowReport r = check_bounded_below(spec, options_);
    err << "check-bounded-below: " << to_string(r.verdict) << "\n";
    summary(err, r.constant);
    return io::to_json(r, *spec.map.codomain());
  }

  json closed_range(std::ostream& err) {
    const OperatorSpec spec = load_spec();
    const ClosedRangeReport r = check_injective_closed_range(spec, options_);
    err << "check-closed-range: " << (r.injective_closed_range ? "injective with closed range" : "fails")
        << "\n";
    return io::to_json(r, *spec.map.codomain());
  }

  json range(std::ostream& err) {
    const MeasurableMap m = load_map();
    const std::string& path = require(job_.fn_path, "fn");
    const SimpleFunction g = io::function_from_json(io::read_json_file(path), m.domain(), path);
    const RangeReport r = is_in_range_closure(m, g);
    if (r.preimage_function) {
      check("compose(recovered f) = g almost everywhere",
            ae_equal(compose(m, *r.preimage_function), g));
    }
    err << "range-test: " << (r.in_closure ? "in the closure of the range" : "not in the range closure")
        << "\n";
    return io::to_json(r, *m.codomain());
  }

  json isomorphism(std::ostream& err) {
    const OperatorSpec spec = load_spec();
    const IsomorphismReport r = check_isomorphism(spec);
    if (r.isomorphism) {
      const double upper = best_constant(spec, options_).value;
      const double lower = lower_constant(spec, options_).value;
      check("sharp constants equal ess-sup/ess-inf of J to the 1/p",
            std::fabs(upper - r.K) <= kCrossFormulaTol * r.K &&
                std::fabs(lower - r.k) <= kCrossFormulaTol * r.k,
            {{"K_sharp", upper}, {"k_sharp", lower}});
    }
    err << "check-isomorphism: " << (r.isomorphism ? "isomorphism" : "not an isomorphism") << "\n";
    return io::to_json(r, *spec.map.codomain());
  }

  json sample(std::ostream& err) {
    const OperatorSpec spec = load_spec();
    inputs_["trials"] = job_.trials;
    inputs_["seed"] = job_.seed;
    const SampleReport r = operator_norm_sample(spec, job_.trials, job_.seed);
    json result = io::to_json(r);
    const ConstantCertificate cert = best_constant(spec, options_);
    result["K_sharp"] = io::number(cert.value);
    if (spec.source.q() <= spec.target.q() && std::isfinite(cert.value)) {
      check("sampled ratio <= sharp K", r.sup_ratio <= cert.value * (1.0 + kRatioTol));
    }
    err << "sample-ratio: sup = " << r.sup_ratio << " over " << r.evaluated << " functions\n";
    return result;
  }

  const Job& job_;
  SearchOptions options_;
  mutable json inputs_ = json::object();
  json checks_ = json::array();
};

void emit(const Job& job, const std::string& text, std::ostream& out) {
  if (job.out_path) {
    std::ofstream file(*job.out_path, std::ios::binary);
    if (!file) throw StructuralError(*job.out_path + ": cannot open for writing");
    file << text;
  } else {
    out << text;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Job job;
  CLI::App app{"Lorentz-space composition operators on finite atomic measure spaces"};
  app.add_option("command", job.command, "Job to run")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--p", job.p, "target exponent p");
  app.add_option("--q", job.q, "target exponent q (number or inf)");
  app.add_option("--r", job.r, "source exponent r");
  app.add_option("--s", job.s, "source exponent s (number or inf)");
  app.add_option("--map", job.map_path, "map JSON file");
  app.add_option("--space", job.space_path, "space JSON file");
  app.add_option("--fn", job.fn_path, "function JSON file");
  app.add_option("--set", job.set_path, "set JSON file");
  app.add_option("--trials", job.trials, "random functions for sample-ratio");
  app.add_option("--seed", job.seed, "random seed");
  app.add_option("--size-limit", job.size_limit, "exhaustive search cap (overrides LORENTZ_SIZE_LIMIT)");
  app.add_option("--out", job.out_path, "write the report here instead of stdout");
  app.add_option("--kind", job.kind, "gen-fixture kind: uniform-refinement, square-collapse, random");
  app.add_option("--n", job.n, "gen-fixture size");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kComputed : kInputError;
  }

  try {
    if (job.command == "gen-fixture") {
      if (job.kind.empty()) throw StructuralError("--kind is required for gen-fixture");
      const MeasurableMap m = fixtures::generate(job.kind, job.n, job.seed);
      emit(job, io::canonical_dump(io::to_json(m)), out);
      err << "gen-fixture: " << job.kind << " with " << m.domain()->size() << " -> "
          << m.codomain()->size() << " atoms\n";
      return kComputed;
    }
    Runner runner(job);
    const json report = runner.run(err);
    emit(job, io::canonical_dump(report), out);
    return kComputed;
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << "\n";
    return kRegimeError;
  } catch (const NoDensityError& e) {
    err << "regime error: " << e.what() << "\n";
    return kRegimeError;
  } catch (const ConsistencyError& e) {
    err << "internal consistency error: " << e.what() << "\n";
    return kInternalError;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const io::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace lorcomp::cli
