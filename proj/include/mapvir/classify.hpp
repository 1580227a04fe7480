#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mapvir/evalmod.hpp"

namespace mapvir {

enum class ClassVerdict {
  int_series_single_point,
  hw_tensor_of_generalized_evals,
  lw_tensor_of_generalized_evals,
  not_quasifinite,
  undetermined_at_bound,
};
std::string to_string(ClassVerdict v);

/// V(phi) (or its lowest weight counterpart when `lowest`).
struct HighestWeightDescriptor {
  FunctionalPtr phi;
  bool lowest = false;
  long bound = 16;  // recurrence search bound for polynomial/laurent algebras
  bool assume_exact = false;
};

struct IntSeriesDescriptor {
  AlgebraPtr algebra;
  IntSeriesSpec spec;
  Scalar point;
};

using Descriptor = std::variant<HighestWeightDescriptor, IntSeriesDescriptor>;

/// One tensor factor ev_{m^order} V(local_phi) supported at t = point.
struct Component {
  Scalar point;
  int order = 1;
  /// phi_i on the input algebra; the components' global functionals sum to phi.
  std::optional<Functional> global_phi;
  /// The same functional on A/m^order (basis 1, t, ..., t^{order-1}).
  std::optional<Functional> local_phi;
  std::optional<IntSeriesSpec> spec;
  // --explain material
  std::optional<AlgebraElement> idempotent;
  std::optional<Ideal> vanishing;
};

struct ClassificationRecord {
  ClassVerdict verdict = ClassVerdict::undetermined_at_bound;
  std::vector<Component> components;
  /// Algebra the components are presented over (a product_local pullback for
  /// windowed or non-split inputs).
  AlgebraPtr presentation;
  std::optional<Ideal> witness;
  std::vector<std::string> notes;
};

/// Quasifiniteness check, CRT split and per-point orders for highest/lowest
/// weight functionals; the single support point for intermediate series.
ClassificationRecord classify_module(const Descriptor& descriptor);

enum class ProfileShape { bounded, truncated_above, truncated_below, unbounded_both };
std::string to_string(ProfileShape s);

struct TrichotomyProfile {
  std::map<long, long> samples;
  ProfileShape shape = ProfileShape::bounded;
  long bound = 0;  // max sampled multiplicity
  bool window_truncated = false;
  std::string note;
};

/// Shape of the sampled weight table. With `probe_growth`, intermediate-series
/// factor windows are also halved and a growing maximum is reported as
/// unbounded_both; otherwise the table is only described (bounded(N) plus the
/// window-truncated flag).
TrichotomyProfile trichotomy_profile(const ModuleHandle& handle, Window offsets,
                                     const std::optional<Window>& colors = std::nullopt, bool probe_growth = false);

}  // namespace mapvir
