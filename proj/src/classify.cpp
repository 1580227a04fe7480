#include "mapvir/classify.hpp"

#include <algorithm>

#include "mapvir/errors.hpp"

namespace mapvir {

namespace {

// phi transported to another presentation sharing the monomial basis 1, ..., t^{N-1}.
Functional transport(const Functional& phi, const AlgebraPtr& target) {
  Coords d0, c;
  for (long k : target->keys()) {
    Scalar x = phi.d0_at(k), y = phi.c_at(k);
    if (!is_zero(x)) d0[k] = x;
    if (!is_zero(y)) c[k] = y;
  }
  return Functional(target, std::move(d0), std::move(c));
}

ClassificationRecord classify_product_local(const Functional& phi) {
  const AlgebraPtr& a = phi.algebra();
  ClassificationRecord out;
  out.verdict = ClassVerdict::hw_tensor_of_generalized_evals;
  out.presentation = a;
  out.witness = Ideal::zero(a);
  auto parts = split_phi(phi);
  auto comps = local_decomposition(a);
  for (size_t i = 0; i < comps.size(); ++i) {
    const Functional& phi_i = parts[i];
    if (phi_i.is_zero()) continue;
    Ideal j = vanishing_ideal(phi_i, true);
    int order = 1;
    while (!ideal_power(comps[i].maximal, order).subset_of(j)) ++order;
    QuotientMap q = local_quotient(a, comps[i].point, order);
    Coords d0, c;
    for (long k : q.target()->keys()) {
      AlgebraElement tk = AlgebraElement::t_power(a, k);
      Scalar x = phi_i.d0(tk), y = phi_i.c(tk);
      if (!is_zero(x)) d0[k] = x;
      if (!is_zero(y)) c[k] = y;
    }
    Component comp;
    comp.point = comps[i].point;
    comp.order = order;
    comp.global_phi = phi_i;
    comp.local_phi = Functional(q.target(), std::move(d0), std::move(c));
    comp.idempotent = comps[i].idempotent;
    comp.vanishing = j;
    out.components.push_back(std::move(comp));
  }
  if (out.components.empty()) out.notes.push_back("phi = 0: the trivial one-dimensional module");
  return out;
}

ClassificationRecord classify_highest(const Functional& phi, long bound, bool assume_exact) {
  const AlgebraPtr& a = phi.algebra();
  ClassificationRecord out;
  out.presentation = a;
  if (a->kind() == AlgebraKind::product_local) return classify_product_local(phi);

  if (a->is_finite() && !a->univariate()) {
    if (a->dim() != 1) throw UnsupportedKind("classification needs a univariate presentation, got " + a->describe());
    out.verdict = ClassVerdict::hw_tensor_of_generalized_evals;
    out.witness = Ideal::zero(a);
    if (!phi.is_zero()) {
      Component comp;
      comp.point = 0;
      comp.global_phi = phi;
      comp.local_phi = phi;
      out.components.push_back(std::move(comp));
    }
    out.notes.push_back("A = Q: the single point is reported as t = 0");
    return out;
  }

  Poly modulus;
  if (a->is_finite()) {
    modulus = *a->modulus();
  } else {
    auto q = check_quasifinite(phi, bound, assume_exact);
    if (q.status != QuasifiniteStatus::quasifinite_certified) {
      out.verdict = assume_exact && !q.recurrence ? ClassVerdict::not_quasifinite : ClassVerdict::undetermined_at_bound;
      out.notes.push_back(q.note);
      return out;
    }
    out.witness = q.witness;
    modulus = q.witness->generator();
    if (modulus.is_zero()) throw ComputationError("certified witness is the zero ideal");
    if (modulus.degree() == 0) {
      out.verdict = ClassVerdict::hw_tensor_of_generalized_evals;
      out.notes.push_back("phi = 0: the trivial one-dimensional module");
      return out;
    }
  }

  auto roots = rational_roots(modulus);
  if (!roots.fully_split) {
    out.verdict = ClassVerdict::undetermined_at_bound;
    out.notes.push_back("support ideal (" + modulus.to_string() + ") does not split over Q");
    return out;
  }
  std::vector<LocalFactor> factors;
  for (const auto& [p, m] : roots.roots) factors.push_back({p, static_cast<int>(m)});
  AlgebraPtr split = Algebra::product_local(factors);
  ClassificationRecord rec = classify_product_local(transport(phi, split));
  rec.notes.push_back(std::string(a->is_finite() ? "re-presented" : "pulled back") + " over " + split->describe());
  if (!a->is_finite()) {
    // Global functionals live on the windowed algebra.
    rec.witness = out.witness;
    for (auto& comp : rec.components) {
      Coords d0, c;
      for (long k : a->keys()) {
        AlgebraElement tk = AlgebraElement::t_power(split, k);
        Scalar x = comp.global_phi->d0(tk), y = comp.global_phi->c(tk);
        if (!is_zero(x)) d0[k] = x;
        if (!is_zero(y)) c[k] = y;
      }
      comp.global_phi = Functional(a, std::move(d0), std::move(c), modulus);
    }
  }
  return rec;
}

void mirror_components(ClassificationRecord& rec) {
  for (auto& comp : rec.components) {
    if (comp.global_phi) comp.global_phi = comp.global_phi->mirrored();
    if (comp.local_phi) comp.local_phi = comp.local_phi->mirrored();
  }
}

ModuleHandlePtr scale_windows(const ModuleHandlePtr& h) {
  return std::visit(
      [&](const auto& v) -> ModuleHandlePtr {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ModuleHandle::IntSeriesEval>) {
          IntSeriesSpec s = v.spec;
          s.window = {s.window.lo / 2, s.window.hi / 2};
          return ModuleHandle::int_series_eval(h->algebra(), s, v.point);
        } else if constexpr (std::is_same_v<T, ModuleHandle::GeneralizedEval>) {
          return ModuleHandle::generalized_eval(h->algebra(), v.point, v.order, scale_windows(v.inner));
        } else if constexpr (std::is_same_v<T, ModuleHandle::Tensor>) {
          std::vector<ModuleHandlePtr> fs;
          for (const auto& f : v.factors) fs.push_back(scale_windows(f));
          return ModuleHandle::tensor(std::move(fs));
        } else {
          return h;
        }
      },
      h->variant());
}

long max_mult(const std::map<long, long>& m) {
  long out = 0;
  for (const auto& [k, v] : m) out = std::max(out, v);
  return out;
}

}  // namespace

std::string to_string(ClassVerdict v) {
  switch (v) {
    case ClassVerdict::int_series_single_point: return "int_series_single_point";
    case ClassVerdict::hw_tensor_of_generalized_evals: return "hw_tensor_of_generalized_evals";
    case ClassVerdict::lw_tensor_of_generalized_evals: return "lw_tensor_of_generalized_evals";
    case ClassVerdict::not_quasifinite: return "not_quasifinite";
    case ClassVerdict::undetermined_at_bound: return "undetermined_at_bound";
  }
  return "?";
}

std::string to_string(ProfileShape s) {
  switch (s) {
    case ProfileShape::bounded: return "bounded";
    case ProfileShape::truncated_above: return "truncated_above";
    case ProfileShape::truncated_below: return "truncated_below";
    case ProfileShape::unbounded_both: return "unbounded_both";
  }
  return "?";
}

ClassificationRecord classify_module(const Descriptor& descriptor) {
  if (const auto* is = std::get_if<IntSeriesDescriptor>(&descriptor)) {
    auto handle = ModuleHandle::int_series_eval(is->algebra, is->spec, is->point);
    ClassificationRecord out;
    out.verdict = ClassVerdict::int_series_single_point;
    out.presentation = is->algebra;
    Component comp;
    comp.point = is->point;
    comp.spec = is->spec;
    out.components.push_back(std::move(comp));
    out.witness = annihilator_support(*handle).annihilator;
    return out;
  }
  const auto& hw = std::get<HighestWeightDescriptor>(descriptor);
  if (!hw.phi) throw ValidationError("classify: missing functional");
  if (!hw.lowest) return classify_highest(*hw.phi, hw.bound, hw.assume_exact);
  ClassificationRecord rec = classify_highest(hw.phi->mirrored(), hw.bound, hw.assume_exact);
  if (rec.verdict == ClassVerdict::hw_tensor_of_generalized_evals) rec.verdict = ClassVerdict::lw_tensor_of_generalized_evals;
  mirror_components(rec);
  rec.notes.push_back("lowest weight: classified through d_n -> -d_{-n}, c -> -c");
  return rec;
}

TrichotomyProfile trichotomy_profile(const ModuleHandle& handle, Window offsets, const std::optional<Window>& colors,
                                     bool probe_growth) {
  WeightTable t = weight_multiplicities(handle, offsets, colors);
  TrichotomyProfile out;
  out.samples = t.multiplicities;
  out.window_truncated = t.window_truncated;
  out.bound = max_mult(t.multiplicities);
  const bool top_zero = t.multiplicities.at(offsets.hi) == 0;
  const bool bottom_zero = t.multiplicities.at(offsets.lo) == 0;
  if (out.bound > 0 && top_zero && !bottom_zero) {
    out.shape = ProfileShape::truncated_above;
  } else if (out.bound > 0 && bottom_zero && !top_zero) {
    out.shape = ProfileShape::truncated_below;
  } else {
    out.shape = ProfileShape::bounded;
  }
  if (probe_growth && t.window_truncated && out.shape == ProfileShape::bounded) {
    // Only handles built here are rescaled; the caller's handle is shared read-only.
    auto self = std::make_shared<ModuleHandle>(handle);
    ModuleHandlePtr smaller = scale_windows(self);
    long half = max_mult(weight_multiplicities(*smaller, offsets, colors).multiplicities);
    if (half < out.bound) {
      out.shape = ProfileShape::unbounded_both;
      out.note = "max multiplicity grows with the factor windows: " + std::to_string(half) + " -> " +
                 std::to_string(out.bound);
    } else {
      out.note = "max multiplicity unchanged when factor windows are halved";
    }
  }
  if (out.window_truncated && out.note.empty()) out.note = "window-truncated: multiplicities are lower bounds";
  return out;
}

}  // namespace mapvir
