#include "lorcomp/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lorcomp/errors.hpp"

namespace lorcomp::io {

namespace {

std::string path_of(std::string_view field, std::string_view key) {
  return std::string(field) + "." + std::string(key);
}

[[noreturn]] void schema_error(std::string_view field, std::string_view expected) {
  throw StructuralError(std::string(field) + ": expected " + std::string(expected));
}

const json& member(const json& j, std::string_view field, const char* key) {
  if (!j.is_object()) schema_error(field, "an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path_of(field, key), "a value (field is missing)");
  return *it;
}

std::string string_value(const json& j, std::string_view field) {
  if (!j.is_string()) schema_error(field, "a string");
  return j.get<std::string>();
}

double finite_number(const json& j, std::string_view field) {
  if (!j.is_number()) schema_error(field, "a number");
  return j.get<double>();
}

json members_array(const MSet& s) {
  json ids = json::array();
  for (const auto& id : s.ids()) ids.push_back(id);
  return ids;
}

json ids_of(const std::vector<std::size_t>& atoms, const MeasureSpace& space) {
  json ids = json::array();
  for (std::size_t y : atoms) ids.push_back(space.id(y));
  return ids;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError(path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

json number(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

double parse_extended(const json& j, std::string_view field) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return kInfinity;
    schema_error(field, "a number or \"inf\"");
  }
  return finite_number(j, field);
}

json to_json(const MeasureSpace& space) {
  json atoms = json::array();
  for (const Atom& a : space.atoms()) atoms.push_back({{"id", a.id}, {"weight", a.weight}});
  return {{"atoms", std::move(atoms)}};
}

SpaceRef space_from_json(const json& j, std::string_view field) {
  const json& atoms = member(j, field, "atoms");
  const std::string atoms_field = path_of(field, "atoms");
  if (!atoms.is_array()) schema_error(atoms_field, "an array");
  std::vector<Atom> parsed;
  parsed.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string f = atoms_field + "[" + std::to_string(i) + "]";
    parsed.push_back({string_value(member(atoms[i], f, "id"), f + ".id"),
                      finite_number(member(atoms[i], f, "weight"), f + ".weight")});
  }
  try {
    return MeasureSpace::create(std::move(parsed));
  } catch (const Error& e) {
    throw StructuralError(std::string(field) + ": " + e.what());
  }
}

json to_json(const SimpleFunction& f) {
  json values = json::object();
  for (std::size_t i = 0; i < f.size(); ++i) values[f.space()->id(i)] = f[i];
  return {{"values", std::move(values)}};
}

SimpleFunction function_from_json(const json& j, const SpaceRef& space, std::string_view field) {
  const json& values = member(j, field, "values");
  const std::string values_field = path_of(field, "values");
  if (!values.is_object()) schema_error(values_field, "an object mapping atom ids to numbers");
  std::map<std::string, double> parsed;
  for (const auto& [id, v] : values.items()) parsed[id] = finite_number(v, values_field + "." + id);
  try {
    return SimpleFunction::from_ids(space, parsed);
  } catch (const Error& e) {
    throw StructuralError(values_field + ": " + e.what());
  }
}

json to_json(const StepFunction& g) {
  json bp = json::array();
  json lv = json::array();
  for (double t : g.breakpoints()) bp.push_back(t);
  for (double v : g.levels()) lv.push_back(v);
  return {{"breakpoints", std::move(bp)}, {"levels", std::move(lv)}};
}

StepFunction step_function_from_json(const json& j, std::string_view field) {
  auto numbers = [&](const char* key) {
    const json& arr = member(j, field, key);
    const std::string f = path_of(field, key);
    if (!arr.is_array()) schema_error(f, "an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
      out.push_back(finite_number(arr[i], f + "[" + std::to_string(i) + "]"));
    return out;
  };
  try {
    return StepFunction(numbers("breakpoints"), numbers("levels"));
  } catch (const DomainError& e) {
    throw StructuralError(std::string(field) + ": " + e.what());
  }
}

json to_json(const LorentzExponents& e) { return {{"p", e.p()}, {"q", number(e.q())}}; }

LorentzExponents exponents_from_json(const json& j, std::string_view field) {
  const double p = parse_extended(member(j, field, "p"), path_of(field, "p"));
  const double q = parse_extended(member(j, field, "q"), path_of(field, "q"));
  return LorentzExponents(p, q);
}

json to_json(const MSet& s) { return {{"members", members_array(s)}}; }

MSet set_from_json(const json& j, const SpaceRef& space, std::string_view field) {
  const json* arr = &j;
  std::string f(field);
  if (j.is_object()) {
    arr = &member(j, field, "members");
    f = path_of(field, "members");
  }
  if (!arr->is_array()) schema_error(f, "an array of atom ids");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < arr->size(); ++i)
    ids.push_back(string_value((*arr)[i], f + "[" + std::to_string(i) + "]"));
  try {
    return MSet::from_ids(space, ids);
  } catch (const Error& e) {
    throw StructuralError(f + ": " + e.what());
  }
}

json to_json(const MeasurableMap& m) {
  json assign = json::object();
  for (std::size_t x = 0; x < m.domain()->size(); ++x)
    assign[m.domain()->id(x)] = m.codomain()->id(m.image(x));
  return {{"assign", std::move(assign)},
          {"codomain", to_json(*m.codomain())},
          {"domain", to_json(*m.domain())}};
}

MeasurableMap map_from_json(const json& j, const std::filesystem::path& base_dir,
                            std::string_view field) {
  auto load_space = [&](const char* key) {
    const json& s = member(j, field, key);
    const std::string f = path_of(field, key);
    if (s.is_string()) {
      std::filesystem::path p = s.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      return space_from_json(read_json_file(p), p.string());
    }
    return space_from_json(s, f);
  };
  SpaceRef domain = load_space("domain");
  SpaceRef codomain = load_space("codomain");
  const json& assign = member(j, field, "assign");
  const std::string assign_field = path_of(field, "assign");
  if (!assign.is_object()) schema_error(assign_field, "an object mapping domain ids to codomain ids");
  std::map<std::string, std::string> parsed;
  for (const auto& [x, y] : assign.items()) parsed[x] = string_value(y, assign_field + "." + x);
  try {
    return MeasurableMap::from_ids(std::move(domain), std::move(codomain), parsed);
  } catch (const Error& e) {
    throw StructuralError(assign_field + ": " + e.what());
  }
}

json to_json(const ConstantCertificate& c) {
  json out = {{"kind", to_string(c.kind)},
              {"value", number(c.value)},
              {"method", to_string(c.method)},
              {"regime_ok", c.regime_ok}};
  out["extremal_set"] = c.extremal_set ? members_array(*c.extremal_set) : json(nullptr);
  if (c.bracket) out["bracket"] = json::array({number(c.bracket->first), number(c.bracket->second)});
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

json to_json(const RNDerivative& j) {
  json values = json::object();
  for (std::size_t y = 0; y < j.values.size(); ++y) values[j.codomain->id(y)] = j.values[y];
  return {{"values", std::move(values)}};
}

json to_json(const LuzinReport& r, const MeasureSpace& codomain) {
  return {{"holds", r.holds}, {"witnesses", ids_of(r.witnesses, codomain)}};
}

json to_json(const BoundednessReport& r, const MeasureSpace& codomain) {
  return {{"luzin_n_inverse", to_json(r.luzin, codomain)},
          {"constant", to_json(r.constant)},
          {"regime_ok", r.regime_ok},
          {"verdict", to_string(r.verdict)}};
}

json to_json(const BoundedBelowReport& r, const MeasureSpace& codomain) {
  return {{"luzin_n_inverse", to_json(r.luzin, codomain)},
          {"constant", to_json(r.constant)},
          {"regime_ok", r.regime_ok},
          {"verdict", to_string(r.verdict)}};
}

json to_json(const ClosedRangeReport& r, const MeasureSpace& codomain) {
  return {{"luzin_n_inverse", to_json(r.luzin, codomain)},
          {"lower_constant", to_json(r.lower)},
          {"injective_closed_range", r.injective_closed_range}};
}

json to_json(const RangeReport& r, const MeasureSpace& codomain) {
  json out = {{"in_closure", r.in_closure},
              {"violating_blocks", ids_of(r.violating_blocks, codomain)}};
  out["preimage_function"] = r.preimage_function ? to_json(*r.preimage_function) : json(nullptr);
  return out;
}

json to_json(const IsomorphismReport& r, const MeasureSpace& codomain) {
  return {{"luzin_n_inverse", to_json(r.luzin, codomain)},
          {"ess_inf_J", number(r.ess_inf_j)},
          {"ess_sup_J", number(r.ess_sup_j)},
          {"k", number(r.k)},
          {"K", number(r.K)},
          {"sigma_match", r.sigma_match},
          {"merged_blocks", ids_of(r.merged_blocks, codomain)},
          {"isomorphism", r.isomorphism}};
}

json to_json(const SampleReport& r) {
  json out = {{"sup_ratio", number(r.sup_ratio)}, {"evaluated", r.evaluated}};
  out["best"] = r.best ? to_json(*r.best) : json(nullptr);
  return out;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace lorcomp::io
