#include "mapvir/io.hpp"

#include <fstream>
#include <sstream>

#include "mapvir/errors.hpp"
#include "mapvir/parse.hpp"

namespace mapvir {

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw ValidationError(where + ": missing field \"" + name + "\"");
  return j.at(name);
}

long int_field(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
  return j.get<long>();
}

Window window_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ValidationError(where + ": expected [lo, hi]");
  Window w{int_field(j[0], where), int_field(j[1], where)};
  if (w.lo > w.hi) throw ValidationError(where + ": lo > hi");
  return w;
}

Json window_to_json(const Window& w) { return Json::array({w.lo, w.hi}); }

std::string kind_of(const Json& j, const char* key, const std::string& where) {
  const Json& k = field(j, key, where);
  if (!k.is_string()) throw ValidationError(where + "." + key + ": expected a string");
  return k.get<std::string>();
}

Coords label_map(const Json& j, const AlgebraPtr& a, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object keyed by basis labels");
  Coords out;
  for (const auto& [label, value] : j.items()) {
    auto key = a->key_for_label(label);
    if (!key) throw ValidationError(where + ": unknown basis label \"" + label + "\"");
    Scalar v = scalar_from_json(value, where + "." + label);
    if (!is_zero(v)) out[*key] = v;
  }
  return out;
}

std::vector<Scalar> scalar_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array");
  std::vector<Scalar> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(scalar_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Json coords_json(const Functional& phi, bool central) {
  Json out = Json::object();
  const Coords& c = central ? phi.c_values() : phi.d0_values();
  for (const auto& [k, v] : c) out[phi.algebra()->label(k)] = scalar_to_json(v);
  return out;
}

Json points_json(const std::vector<Scalar>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(scalar_to_json(p));
  return out;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Scalar scalar_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw ValidationError(where + ": expected a rational string \"p/q\"");
}

Json scalar_to_json(const Scalar& s) { return to_string(s); }

AlgebraPtr algebra_from_json(const Json& j) {
  const std::string where = "algebra";
  const std::string kind = kind_of(j, "kind", where);
  if (kind == "rationals") return Algebra::rationals();
  if (kind == "product_local") {
    const Json& fs = field(j, "factors", where);
    if (!fs.is_array() || fs.empty()) throw ValidationError("algebra.factors: expected a nonempty array");
    std::vector<LocalFactor> factors;
    for (size_t i = 0; i < fs.size(); ++i) {
      const std::string w = "algebra.factors[" + std::to_string(i) + "]";
      long order = int_field(field(fs[i], "order", w), w + ".order");
      if (order < 1) throw ValidationError(w + ".order: must be >= 1");
      factors.push_back({scalar_from_json(field(fs[i], "point", w), w + ".point"), static_cast<int>(order)});
    }
    return Algebra::product_local(std::move(factors));
  }
  if (kind == "structure_constants") {
    Vector unit = scalar_list(field(j, "unit", where), "algebra.unit");
    if (j.contains("dim") && int_field(j["dim"], "algebra.dim") != static_cast<long>(unit.size()))
      throw ValidationError("algebra.dim: does not match the unit length");
    const Json& t = field(j, "tensor", where);
    if (!t.is_array()) throw ValidationError("algebra.tensor: expected a d x d x d array");
    std::vector<Matrix> tensor;
    for (size_t a = 0; a < t.size(); ++a) {
      if (!t[a].is_array()) throw ValidationError("algebra.tensor[" + std::to_string(a) + "]: expected an array");
      Matrix slab;
      for (size_t b = 0; b < t[a].size(); ++b)
        slab.push_back(scalar_list(t[a][b], "algebra.tensor[" + std::to_string(a) + "][" + std::to_string(b) + "]"));
      tensor.push_back(std::move(slab));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      if (!j["labels"].is_array()) throw ValidationError("algebra.labels: expected an array of strings");
      for (const auto& l : j["labels"]) {
        if (!l.is_string()) throw ValidationError("algebra.labels: expected strings");
        labels.push_back(l.get<std::string>());
      }
    }
    return Algebra::from_structure_constants(std::move(unit), std::move(tensor), std::move(labels));
  }
  if (kind == "univariate_quotient") {
    const Json& m = field(j, "modulus", where);
    if (!m.is_string()) throw ValidationError("algebra.modulus: expected a polynomial string");
    return Algebra::univariate_quotient(parse_poly(m.get<std::string>()));
  }
  if (kind == "polynomial") return Algebra::polynomial(window_from_json(field(j, "window", where), "algebra.window"));
  if (kind == "laurent") return Algebra::laurent(window_from_json(field(j, "window", where), "algebra.window"));
  throw ValidationError("algebra.kind: unknown kind \"" + kind + "\"");
}

Json algebra_to_json(const Algebra& a) {
  Json out;
  switch (a.kind()) {
    case AlgebraKind::product_local: {
      out["kind"] = "product_local";
      Json fs = Json::array();
      for (const auto& f : a.factors()) fs.push_back({{"point", scalar_to_json(f.point)}, {"order", f.order}});
      out["factors"] = fs;
      return out;
    }
    case AlgebraKind::polynomial:
    case AlgebraKind::laurent:
      out["kind"] = to_string(a.kind());
      out["window"] = window_to_json(a.window());
      return out;
    case AlgebraKind::structure_constants: break;
  }
  if (a.univariate() && a.modulus()) {
    out["kind"] = "univariate_quotient";
    out["modulus"] = a.modulus()->to_string();
    return out;
  }
  out["kind"] = "structure_constants";
  out["dim"] = a.dim();
  Json unit = Json::array(), tensor = Json::array(), labels = Json::array();
  for (long k : a.keys()) {
    auto it = a.unit().find(k);
    unit.push_back(scalar_to_json(it == a.unit().end() ? Scalar(0) : it->second));
    labels.push_back(a.label(k));
    Json slab = Json::array();
    for (long l : a.keys()) {
      Json row = Json::array();
      Coords p = a.product(k, l);
      for (long m : a.keys()) {
        auto pit = p.find(m);
        row.push_back(scalar_to_json(pit == p.end() ? Scalar(0) : pit->second));
      }
      slab.push_back(row);
    }
    tensor.push_back(slab);
  }
  out["unit"] = unit;
  out["tensor"] = tensor;
  out["labels"] = labels;
  return out;
}

FunctionalPtr functional_from_json(const Json& j, const AlgebraPtr& algebra) {
  if (!j.is_object()) throw ValidationError("functional: expected an object");
  if (j.contains("d0_seq")) {
    std::vector<Scalar> d0 = scalar_list(j["d0_seq"], "functional.d0_seq");
    std::vector<Scalar> c = j.contains("c_seq") ? scalar_list(j["c_seq"], "functional.c_seq") : std::vector<Scalar>{};
    std::optional<Poly> exact;
    if (j.contains("exact_ideal") && !j["exact_ideal"].is_null()) {
      if (!j["exact_ideal"].is_string()) throw ValidationError("functional.exact_ideal: expected a polynomial string");
      exact = parse_poly(j["exact_ideal"].get<std::string>());
    }
    return std::make_shared<const Functional>(Functional::from_sequences(algebra, d0, c, exact));
  }
  Coords d0 = j.contains("d0") ? label_map(j["d0"], algebra, "functional.d0") : Coords{};
  Coords c = j.contains("c") ? label_map(j["c"], algebra, "functional.c") : Coords{};
  if (!j.contains("d0") && !j.contains("c")) throw ValidationError("functional: needs \"d0\"/\"c\" or \"d0_seq\"");
  return std::make_shared<const Functional>(algebra, std::move(d0), std::move(c));
}

Json functional_to_json(const Functional& phi) {
  Json out;
  out["d0"] = coords_json(phi, false);
  out["c"] = coords_json(phi, true);
  if (phi.exact_ideal()) out["exact_ideal"] = phi.exact_ideal()->to_string();
  return out;
}

ModuleHandlePtr module_from_json(const Json& j, const AlgebraPtr& algebra) {
  const std::string where = "module";
  const std::string v = kind_of(j, "variant", where);
  auto colors = [&]() -> std::optional<Window> {
    if (!j.contains("colors")) return std::nullopt;
    return window_from_json(j["colors"], "module.colors");
  };
  if (v == "verma") return ModuleHandle::verma(functional_from_json(field(j, "phi", where), algebra), colors());
  if (v == "irreducible" || v == "irreducible_quotient")
    return ModuleHandle::irreducible(functional_from_json(field(j, "phi", where), algebra), colors());
  if (v == "int_series_eval") {
    IntSeriesSpec spec{scalar_from_json(field(j, "a", where), "module.a"),
                       scalar_from_json(field(j, "b", where), "module.b"),
                       window_from_json(field(j, "window", where), "module.window")};
    return ModuleHandle::int_series_eval(algebra, spec, scalar_from_json(field(j, "point", where), "module.point"));
  }
  if (v == "generalized_eval") {
    Scalar point = scalar_from_json(field(j, "point", where), "module.point");
    long order = int_field(field(j, "order", where), "module.order");
    if (order < 1) throw ValidationError("module.order: must be >= 1");
    QuotientMap q = local_quotient(algebra, point, static_cast<int>(order));
    ModuleHandlePtr inner = module_from_json(field(j, "inner", where), q.target());
    return ModuleHandle::generalized_eval(algebra, point, static_cast<int>(order), inner);
  }
  if (v == "tensor") {
    const Json& fs = field(j, "factors", where);
    if (!fs.is_array()) throw ValidationError("module.factors: expected an array");
    std::vector<ModuleHandlePtr> factors;
    for (const auto& f : fs) factors.push_back(module_from_json(f, algebra));
    return ModuleHandle::tensor(std::move(factors));
  }
  throw ValidationError("module.variant: unknown variant \"" + v + "\"");
}

Json metadata(const Algebra& a) {
  Json out;
  out["algebra"] = a.describe();
  out["basis_order"] = a.basis_order();
  out["pbw_order"] = "deeper mode first; equal depth: earlier basis vector first";
  out["convention"] = "[d_m f, d_n g] = (n-m) d_{m+n} fg + delta_{m,-n} (m^3-m)/12 c fg";
  out["mode_max"] = mode_max();
  return out;
}

Json weight_table_to_json(const WeightTable& t) {
  Json out;
  out["base_weight"] = scalar_to_json(t.base_weight);
  Json rows = Json::array();
  for (const auto& [k, m] : t.multiplicities)
    rows.push_back({{"offset", k}, {"weight", scalar_to_json(t.base_weight + k)}, {"multiplicity", m}});
  out["multiplicities"] = rows;
  out["window_truncated"] = t.window_truncated;
  out["zero_weight_offset"] = t.zero_weight_offset ? Json(*t.zero_weight_offset) : Json(nullptr);
  out["trivial_submodule"] = t.trivial_submodule;
  out["trivial_quotient"] = t.trivial_quotient;
  return out;
}

Json annihilator_to_json(const AnnihilatorReport& r) {
  Json out;
  out["annihilator"] = r.annihilator.to_string();
  Json gens = Json::array();
  if (r.annihilator.is_principal_record()) {
    if (!r.annihilator.generator().is_zero()) gens.push_back(r.annihilator.generator().to_string());
  } else {
    for (const auto& e : r.annihilator.elements()) gens.push_back(e.to_string());
  }
  out["generators"] = gens;
  out["support"] = r.support ? points_json(*r.support) : Json(nullptr);
  out["closure_verified"] = r.closure_verified;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

Json classification_to_json(const ClassificationRecord& r, bool explain) {
  Json out;
  out["verdict"] = to_string(r.verdict);
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json cj;
    cj["point"] = scalar_to_json(c.point);
    cj["order"] = c.order;
    if (c.local_phi) cj["local_phi"] = functional_to_json(*c.local_phi);
    if (c.spec) {
      cj["a"] = scalar_to_json(c.spec->a);
      cj["b"] = scalar_to_json(c.spec->b);
    }
    if (explain) {
      if (c.global_phi) cj["global_phi"] = functional_to_json(*c.global_phi);
      if (c.idempotent) cj["idempotent"] = c.idempotent->to_string();
      if (c.vanishing) cj["vanishing_ideal"] = c.vanishing->to_string();
    }
    comps.push_back(cj);
  }
  out["components"] = comps;
  if (explain) {
    if (r.witness) out["witness"] = r.witness->to_string();
    if (r.presentation) out["presentation"] = r.presentation->describe();
  }
  Json notes = Json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  out["notes"] = notes;
  return out;
}

Json profile_to_json(const TrichotomyProfile& p) {
  Json out;
  out["shape"] = to_string(p.shape);
  out["bound"] = p.bound;
  out["window_truncated"] = p.window_truncated;
  Json samples = Json::array();
  for (const auto& [k, m] : p.samples) samples.push_back({{"offset", k}, {"multiplicity", m}});
  out["samples"] = samples;
  if (!p.note.empty()) out["note"] = p.note;
  return out;
}

}  // namespace mapvir
