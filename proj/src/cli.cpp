#include "mapvir/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "mapvir/errors.hpp"
#include "mapvir/io.hpp"
#include "mapvir/parse.hpp"
#include "mapvir/selftest.hpp"

namespace mapvir {

namespace {

struct Common {
  std::string algebra;
  std::string phi;
  std::string spec;
  std::string format = "auto";
  std::string colors;
};

// A spec argument is either a path or inline JSON.
Json read_spec(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') {
    try {
      return Json::parse(arg);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(std::string("inline JSON: ") + e.what());
    }
  }
  return load_json(arg);
}

AlgebraPtr load_algebra(const Common& c) {
  return c.algebra.empty() ? Algebra::rationals() : algebra_from_json(read_spec(c.algebra));
}

FunctionalPtr load_phi(const Common& c, const AlgebraPtr& a) {
  if (c.phi.empty()) throw ValidationError("--phi: a functional spec is required");
  return functional_from_json(read_spec(c.phi), a);
}

std::optional<Window> parse_window(const std::string& text, const std::string& flag) {
  if (text.empty()) return std::nullopt;
  static const std::regex re(R"(\s*(-?\d+)\s*:\s*(-?\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ValidationError(flag + ": expected lo:hi, got \"" + text + "\"");
  Window w{std::stol(m[1]), std::stol(m[2])};
  if (w.lo > w.hi) throw ValidationError(flag + ": lo > hi");
  return w;
}

std::string resolve_format(const Common& c, const char* fallback) {
  std::string f = c.format == "auto" ? fallback : c.format;
  if (f != "text" && f != "json" && f != "tsv") throw ValidationError("--format: expected text, json or tsv");
  return f;
}

void emit_json(std::ostream& out, Json body, const Algebra& a) {
  body["meta"] = metadata(a);
  out << body.dump(2) << "\n";
}

void emit_meta_tsv(std::ostream& out, const Algebra& a) {
  const Json meta = metadata(a);
  for (const auto& [k, v] : meta.items())
    out << "# " << k << "\t" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

std::string join(const std::vector<long>& xs, const char* sep) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + std::to_string(xs[i]);
  return s;
}

// Aligned columns, tab separated.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows)
    for (size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i + 1 < r.size())
        out << std::left << std::setw(static_cast<int>(width[i])) << r[i] << "\t";
      else
        out << r[i];
    }
    out << "\n";
  }
}

// "-phi" style flags become "--phi"; values of window flags may start with '-'.
std::vector<std::string> normalize_args(std::vector<std::string> args) {
  static const std::regex long_single_dash(R"(-[a-z][a-z-]+)");
  static const std::vector<std::string> window_flags{"--offsets", "--colors"};
  std::vector<std::string> out;
  if (!args.empty() && args.front() == "bracket") {
    // Expressions may start with '-', so they all go after "--".
    std::vector<std::string> exprs;
    out.push_back("bracket");
    for (size_t i = 1; i < args.size(); ++i) {
      const std::string& a = args[i];
      bool takes_value = a == "-A" || a == "--algebra" || a == "--format" || a == "-algebra" || a == "-format";
      if (takes_value && i + 1 < args.size()) {
        out.push_back(a.rfind("--", 0) == 0 || a == "-A" ? a : "-" + a);
        out.push_back(args[++i]);
      } else if (a == "-h" || a == "--help" || a.rfind("--algebra=", 0) == 0 || a.rfind("--format=", 0) == 0) {
        out.push_back(a);
      } else if (a != "--") {
        exprs.push_back(a);
      }
    }
    out.push_back("--");
    out.insert(out.end(), exprs.begin(), exprs.end());
    return out;
  }
  for (size_t i = 0; i < args.size(); ++i) {
    std::string a = args[i];
    if (std::regex_match(a, long_single_dash)) a = "-" + a;
    if (std::find(window_flags.begin(), window_flags.end(), a) != window_flags.end() && i + 1 < args.size()) {
      out.push_back(a + "=" + args[++i]);
      continue;
    }
    out.push_back(a);
  }
  return out;
}

void add_common(CLI::App* app, Common& c, bool phi, bool spec) {
  app->add_option("-A,--algebra", c.algebra, "algebra spec (JSON file or inline JSON); default Q");
  if (phi) app->add_option("--phi", c.phi, "functional spec (JSON file or inline JSON)");
  if (spec) app->add_option("--spec", c.spec, "module spec (JSON file or inline JSON)");
  app->add_option("--format", c.format, "text, json or tsv");
}

// ------------------------------------------------------------- subcommands

int cmd_bracket(const Common& c, const std::vector<std::string>& exprs, std::ostream& out) {
  if (exprs.size() < 2) throw ValidationError("bracket: needs at least two expressions");
  AlgebraPtr a = load_algebra(c);
  LieElement acc = parse_lie(exprs[0], a);
  for (size_t i = 1; i < exprs.size(); ++i) acc = bracket(acc, parse_lie(exprs[i], a));
  const std::string fmt = resolve_format(c, "text");
  if (fmt == "json") {
    Json body;
    body["expressions"] = exprs;
    body["result"] = acc.to_string();
    emit_json(out, body, *a);
  } else {
    if (fmt == "tsv") emit_meta_tsv(out, *a);
    out << acc.to_string() << "\n";
  }
  return 0;
}

struct PbwArgs {
  bool basis = false;
  long depth = -1;
  std::string straighten;
  std::string height;
};

int cmd_pbw(const Common& c, const PbwArgs& p, std::ostream& out) {
  AlgebraPtr a = load_algebra(c);
  const std::string fmt = resolve_format(c, "text");
  const int modes = int(p.basis) + int(!p.straighten.empty()) + int(!p.height.empty());
  if (modes != 1) throw ValidationError("pbw: choose exactly one of --basis, --straighten, --height");
  Json body;
  std::vector<std::string> lines;
  if (p.basis) {
    if (p.depth < 0) throw ValidationError("-n: depth is required and must be >= 0");
    auto basis = pbw_basis(p.depth, *a, parse_window(c.colors, "--colors"));
    Json list = Json::array();
    for (const auto& m : basis) {
      list.push_back(m.to_string(*a));
      lines.push_back(m.to_string(*a));
    }
    body["depth"] = p.depth;
    body["dim"] = basis.size();
    body["basis"] = list;
  } else {
    const std::string word_text = !p.straighten.empty() ? p.straighten : p.height;
    auto word = parse_word(word_text, a);
    EnvElement x = straighten(word);
    body["input"] = word_text;
    if (!p.straighten.empty()) {
      body["result"] = x.to_string();
      lines.push_back(x.to_string());
    } else {
      HeightHm h = height_hm(x);
      body["height"] = h.height;
      body["hm"] = h.hm.to_string();
      lines.push_back(std::to_string(h.height) + "\t" + h.hm.to_string());
    }
  }
  if (fmt == "json") {
    emit_json(out, body, *a);
  } else {
    if (fmt == "tsv") emit_meta_tsv(out, *a);
    for (const auto& l : lines) out << l << "\n";
  }
  return 0;
}

struct VermaArgs {
  bool dims = false;
  bool quotient = false;
  bool singular = false;
  long n = -1;
};

int cmd_verma(const Common& c, const VermaArgs& v, std::ostream& out) {
  AlgebraPtr a = load_algebra(c);
  const std::string fmt = resolve_format(c, "text");
  if (int(v.dims) + int(v.quotient) + int(v.singular) != 1)
    throw ValidationError("verma: choose exactly one of --dims, --quotient-dims, --singular");
  if (v.n < 0) throw ValidationError("-n: must be given and >= 0");
  auto colors = parse_window(c.colors, "--colors");
  Json body;
  std::vector<std::string> lines;
  if (v.dims || v.quotient) {
    auto dims = v.dims ? verma_dims(*a, v.n, colors) : quotient_dims(load_phi(c, a), v.n, colors);
    body[v.dims ? "verma_dims" : "quotient_dims"] = dims;
    lines.push_back(join(dims, " "));
  } else {
    auto vecs = singular_vectors(load_phi(c, a), v.n, colors);
    Json list = Json::array();
    for (const auto& s : vecs) {
      list.push_back(s.to_string());
      lines.push_back(s.to_string());
    }
    body["depth"] = v.n;
    body["dim"] = vecs.size();
    body["singular_vectors"] = list;
    if (vecs.empty()) lines.push_back("none");
  }
  if (colors) body["colors"] = Json::array({colors->lo, colors->hi});
  if (fmt == "json") {
    emit_json(out, body, *a);
  } else {
    if (fmt == "tsv") emit_meta_tsv(out, *a);
    for (const auto& l : lines) out << l << "\n";
  }
  return 0;
}

struct CheckArgs {
  bool quasifinite = false;
  bool reducible = false;
  long bound = 16;
  bool exact = false;
};

int cmd_check(const Common& c, const CheckArgs& k, std::ostream& out) {
  AlgebraPtr a = load_algebra(c);
  const std::string fmt = resolve_format(c, "json");
  if (int(k.quasifinite) + int(k.reducible) != 1)
    throw ValidationError("check: choose exactly one of --quasifinite, --reducible");
  FunctionalPtr phi = load_phi(c, a);
  Json body;
  if (k.quasifinite) {
    auto r = check_quasifinite(*phi, k.bound, k.exact);
    body["status"] = to_string(r.status);
    body["witness"] = r.witness ? Json(r.witness->to_string()) : Json(nullptr);
    if (r.recurrence) body["recurrence"] = r.recurrence->to_string();
    body["note"] = r.note;
  } else {
    auto r = check_verma_reducible(phi, k.bound, k.exact);
    body["status"] = to_string(r.status);
    body["witness"] = r.witness_ideal ? Json(r.witness_ideal->to_string()) : Json(nullptr);
    if (r.singular_vector) body["singular_vector"] = r.singular_vector->to_string();
    if (r.recurrence) body["recurrence"] = r.recurrence->to_string();
    body["note"] = r.note;
  }
  body["bound"] = k.bound;
  if (fmt == "json") {
    emit_json(out, body, *a);
  } else {
    if (fmt == "tsv") emit_meta_tsv(out, *a);
    out << body["status"].get<std::string>() << "\t"
        << (body["witness"].is_null() ? "-" : body["witness"].get<std::string>()) << "\n";
  }
  return 0;
}

int cmd_split(const Common& c, std::ostream& out) {
  AlgebraPtr a = load_algebra(c);
  const std::string fmt = resolve_format(c, "json");
  FunctionalPtr phi = load_phi(c, a);
  auto comps = local_decomposition(a);
  auto parts = split_phi(*phi);
  Json list = Json::array();
  std::vector<std::vector<std::string>> rows{{"point", "order", "idempotent", "phi(d0)", "phi(c)"}};
  for (size_t i = 0; i < comps.size(); ++i) {
    Json cj;
    cj["point"] = scalar_to_json(comps[i].point);
    cj["order"] = comps[i].order;
    cj["idempotent"] = comps[i].idempotent.to_string();
    cj["maximal_ideal"] = comps[i].maximal.to_string();
    cj["phi"] = functional_to_json(parts[i]);
    list.push_back(cj);
    rows.push_back({to_string(comps[i].point), std::to_string(comps[i].order), comps[i].idempotent.to_string(),
                    to_string(parts[i].highest_weight()), to_string(parts[i].c(AlgebraElement::unit(a)))});
  }
  if (fmt == "json") {
    Json body;
    body["components"] = list;
    emit_json(out, body, *a);
  } else {
    if (fmt == "tsv") emit_meta_tsv(out, *a);
    print_table(out, rows);
  }
  return 0;
}

struct ModuleArgs {
  bool weights = false;
  bool annihilator = false;
  bool profile = false;
  bool probe = false;
  std::string offsets;
  long depth = 2;
};

int cmd_module(const Common& c, const ModuleArgs& m, std::ostream& out) {
  AlgebraPtr a = load_algebra(c);
  const std::string fmt = resolve_format(c, "tsv");
  if (int(m.weights) + int(m.annihilator) + int(m.profile) != 1)
    throw ValidationError("module: choose exactly one of --weights, --annihilator, --profile");
  if (c.spec.empty()) throw ValidationError("--spec: a module spec is required");
  ModuleHandlePtr h = module_from_json(read_spec(c.spec), a);
  auto colors = parse_window(c.colors, "--colors");
  Json body;
  body["variant"] = h->kind_name();
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
  if (m.weights || m.profile) {
    auto offsets = parse_window(m.offsets, "--offsets");
    if (!offsets) throw MissingWindow("--offsets: an offset window lo:hi is required");
    if (m.weights) {
      WeightTable t = weight_multiplicities(*h, *offsets, colors);
      body["weights"] = weight_table_to_json(t);
      rows.push_back({"offset", "weight", "multiplicity"});
      for (const auto& [k, v] : t.multiplicities)
        rows.push_back({std::to_string(k), to_string(t.base_weight + k),
                        std::to_string(v) + (t.window_truncated ? "+" : "")});
      if (t.window_truncated) notes.push_back("window-truncated: '+' marks lower bounds");
      if (t.trivial_submodule) notes.push_back("trivial submodule present");
      if (t.trivial_quotient) notes.push_back("trivial quotient present");
    } else {
      TrichotomyProfile p = trichotomy_profile(*h, *offsets, colors, m.probe);
      body["profile"] = profile_to_json(p);
      rows.push_back({"offset", "multiplicity"});
      for (const auto& [k, v] : p.samples) rows.push_back({std::to_string(k), std::to_string(v)});
      notes.push_back("shape " + to_string(p.shape) +
                      (p.shape == ProfileShape::bounded ? "(" + std::to_string(p.bound) + ")" : ""));
      if (!p.note.empty()) notes.push_back(p.note);
    }
  } else {
    AnnihilatorReport r = annihilator_support(*h, m.depth);
    body["annihilator"] = annihilator_to_json(r);
    rows.push_back({"annihilator", r.annihilator.to_string()});
    std::string pts = "-";
    if (r.support) {
      pts.clear();
      for (const auto& p : *r.support) pts += (pts.empty() ? "" : ", ") + to_string(p);
      if (pts.empty()) pts = "{}";
    }
    rows.push_back({"support", pts});
    rows.push_back({"closure_verified", r.closure_verified ? "true" : "false"});
    if (!r.note.empty()) notes.push_back(r.note);
  }
  if (fmt == "json") {
    emit_json(out, body, *a);
  } else {
    if (fmt == "tsv") emit_meta_tsv(out, *a);
    print_table(out, rows);
    for (const auto& n : notes) out << "# " << n << "\n";
  }
  return 0;
}

struct ClassifyArgs {
  bool lowest = false;
  bool explain = false;
  long bound = 16;
  bool exact = false;
};

int cmd_classify(const Common& c, const ClassifyArgs& k, std::ostream& out) {
  AlgebraPtr a = load_algebra(c);
  const std::string fmt = resolve_format(c, "json");
  Descriptor d;
  if (!c.spec.empty()) {
    Json j = read_spec(c.spec);
    if (!j.is_object() || j.value("variant", "") != "int_series_eval")
      throw ValidationError("--spec: classify takes an int_series_eval module spec");
    ModuleHandlePtr h = module_from_json(j, a);
    const auto& is = std::get<ModuleHandle::IntSeriesEval>(h->variant());
    d = IntSeriesDescriptor{a, is.spec, is.point};
  } else {
    d = HighestWeightDescriptor{load_phi(c, a), k.lowest, k.bound, k.exact};
  }
  ClassificationRecord r = classify_module(d);
  Json body = classification_to_json(r, k.explain);
  if (fmt == "json") {
    emit_json(out, body, *a);
  } else {
    if (fmt == "tsv") emit_meta_tsv(out, *a);
    std::vector<std::vector<std::string>> rows{{"verdict", to_string(r.verdict)}};
    for (const auto& comp : r.components)
      rows.push_back({"component", "point " + to_string(comp.point) + ", order " + std::to_string(comp.order)});
    print_table(out, rows);
    for (const auto& n : r.notes) out << "# " << n << "\n";
  }
  return 0;
}

int cmd_selftest(const Common& c, std::uint64_t seed, const std::vector<std::string>& only, std::ostream& out) {
  const std::string fmt = resolve_format(c, "text");
  auto results = run_selftest(seed, only);
  bool all = true;
  Json list = Json::array();
  for (const auto& r : results) {
    all = all && r.passed();
    Json rj{{"suite", r.name}, {"cases", r.cases}, {"failures", r.failures}};
    if (!r.passed()) rj["first_failure"] = r.first_failure;
    list.push_back(rj);
  }
  if (fmt == "json") {
    Json body{{"seed", seed}, {"suites", list}, {"passed", all}};
    emit_json(out, body, *Algebra::rationals());
  } else {
    out << "# seed\t" << seed << "\n";
    for (const auto& r : results) {
      out << (r.passed() ? "PASS" : "FAIL") << "\t" << r.name << "\t" << r.cases << " cases";
      if (!r.passed()) out << "\t" << r.failures << " failures; first: " << r.first_failure;
      out << "\n";
    }
  }
  return all ? 0 : 2;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in map Virasoro algebras Vir (x) A", "mapvir"};
  app.require_subcommand(1);
  long mode_bound = 0;
  app.add_option("--mode-max", mode_bound, "override the |mode| bound (also MAPVIR_MODE_MAX)");

  Common common;
  std::vector<std::string> exprs;
  auto* bracket_cmd = app.add_subcommand("bracket", "bracket of Lie expressions, e.g. \"d[2]*1\" \"d[-2]*1\"");
  add_common(bracket_cmd, common, false, false);
  bracket_cmd->add_option("expressions", exprs, "Lie expressions; [[x, y], z] for three");

  PbwArgs pbw;
  auto* pbw_cmd = app.add_subcommand("pbw", "PBW basis, straightening and height");
  add_common(pbw_cmd, common, false, false);
  pbw_cmd->add_flag("--basis", pbw.basis, "list the PBW basis at depth -n");
  pbw_cmd->add_option("-n,--depth", pbw.depth, "depth");
  pbw_cmd->add_option("--straighten", pbw.straighten, "word \"d[-1]*1 . d[-2]*t\" to normal order");
  pbw_cmd->add_option("--height", pbw.height, "word whose height and highest term to report");
  pbw_cmd->add_option("--colors", common.colors, "key window lo:hi for polynomial/laurent algebras");

  VermaArgs verma;
  auto* verma_cmd = app.add_subcommand("verma", "Verma module dimensions and singular vectors");
  add_common(verma_cmd, common, true, false);
  verma_cmd->add_flag("--dims", verma.dims, "dims of M(phi) for depths 0..n");
  verma_cmd->add_flag("--quotient-dims", verma.quotient, "dims of V(phi) for depths 0..n");
  verma_cmd->add_flag("--singular", verma.singular, "singular vectors at depth n");
  verma_cmd->add_option("-n,--depth", verma.n, "depth");
  verma_cmd->add_option("--colors", common.colors, "key window lo:hi for polynomial/laurent algebras");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "quasifiniteness and Verma reducibility");
  add_common(check_cmd, common, true, false);
  check_cmd->add_flag("--quasifinite", check.quasifinite);
  check_cmd->add_flag("--reducible", check.reducible);
  check_cmd->add_option("--bound", check.bound, "recurrence search bound (windowed algebras)");
  check_cmd->add_flag("--exact", check.exact, "treat the sampled window as conclusive");

  auto* split_cmd = app.add_subcommand("split", "CRT factorization of phi over a product_local algebra");
  add_common(split_cmd, common, true, false);

  ModuleArgs module;
  auto* module_cmd = app.add_subcommand("module", "weight tables, annihilator and support, trichotomy profile");
  add_common(module_cmd, common, false, true);
  module_cmd->add_flag("--weights", module.weights);
  module_cmd->add_flag("--annihilator", module.annihilator);
  module_cmd->add_flag("--profile", module.profile);
  module_cmd->add_flag("--probe-growth", module.probe, "compare against halved intermediate-series windows");
  module_cmd->add_option("--offsets", module.offsets, "offset window lo:hi");
  module_cmd->add_option("--colors", common.colors, "key window lo:hi for polynomial/laurent algebras");
  module_cmd->add_option("--depth", module.depth, "Verma depth for annihilator checks");

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "classification record for V(phi) or an intermediate series");
  add_common(classify_cmd, common, true, true);
  classify_cmd->add_flag("--lowest", classify.lowest, "phi describes a lowest weight module");
  classify_cmd->add_flag("--explain", classify.explain, "include witness ideals and idempotents");
  classify_cmd->add_option("--bound", classify.bound, "recurrence search bound (windowed algebras)");
  classify_cmd->add_flag("--exact", classify.exact, "treat the sampled window as conclusive");

  std::uint64_t seed = 1;
  std::vector<std::string> suites;
  auto* selftest_cmd = app.add_subcommand("selftest", "randomized invariant suites");
  selftest_cmd->add_option("--format", common.format, "text or json");
  selftest_cmd->add_option("--seed", seed, "random seed");
  selftest_cmd->add_option("--suite", suites, "restrict to the named suites");

  std::vector<std::string> argv = normalize_args(std::move(args));
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  // In-process callers (tests, the Python module) keep their own bound.
  struct RestoreBound {
    long saved = mode_max();
    ~RestoreBound() { set_mode_max(saved); }
  } restore;
  try {
    if (mode_bound > 0) set_mode_max(mode_bound);
    if (*bracket_cmd) return cmd_bracket(common, exprs, out);
    if (*pbw_cmd) return cmd_pbw(common, pbw, out);
    if (*verma_cmd) return cmd_verma(common, verma, out);
    if (*check_cmd) return cmd_check(common, check, out);
    if (*split_cmd) return cmd_split(common, out);
    if (*module_cmd) return cmd_module(common, module, out);
    if (*classify_cmd) return cmd_classify(common, classify, out);
    if (*selftest_cmd) return cmd_selftest(common, seed, suites, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ComputationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace mapvir
