#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mapvir/verma.hpp"

namespace mapvir {

/// V(a, b) on the span of t^k, k in `window`. d_n t^k = (k + a(n+1) + b) t^{n+k}
/// and c acts by zero, so t^k has weight k + a + b.
struct IntSeriesSpec {
  Scalar a;
  Scalar b;
  Window window;

  Scalar base_weight() const { return a + b; }
};

struct IntSeriesAction {
  Scalar coefficient;
  long target = 0;
};

/// Throws WindowOverflow when k or mode + k leaves the window.
IntSeriesAction int_series_act(const IntSeriesSpec& spec, long mode, long k);

/// Checks d_m d_n - d_n d_m = (n - m) d_{m+n} on every t^k of `ks` for all
/// |m|, |n| <= mode_bound (skipping combinations that leave the window).
bool int_series_lie_consistent(const IntSeriesSpec& spec, long mode_bound, Window ks);

/// Exponent k of a vector t^k killed by every d_n, found by scanning the window.
std::optional<long> int_series_trivial_submodule(const IntSeriesSpec& spec);
/// Exponent k0 missing from the image of every d_n (a one-dimensional
/// quotient), found by scanning the window.
std::optional<long> int_series_trivial_quotient(const IntSeriesSpec& spec);

class ModuleHandle;
using ModuleHandlePtr = std::shared_ptr<const ModuleHandle>;

/// A computable weight module over Vir (x) A.
class ModuleHandle {
 public:
  struct Verma {
    FunctionalPtr phi;
    std::optional<Window> colors;
  };
  struct Irreducible {
    FunctionalPtr phi;
    std::optional<Window> colors;
  };
  /// ev_m V(a, b) at m = (t - point).
  struct IntSeriesEval {
    IntSeriesSpec spec;
    Scalar point;
    QuotientMap projection;
  };
  /// ev_{m^order} of `inner`, a module over A/m^order.
  struct GeneralizedEval {
    Scalar point;
    int order = 1;
    ModuleHandlePtr inner;
    QuotientMap projection;
  };
  struct Tensor {
    std::vector<ModuleHandlePtr> factors;
  };
  using Variant = std::variant<Verma, Irreducible, IntSeriesEval, GeneralizedEval, Tensor>;

  static ModuleHandlePtr verma(FunctionalPtr phi, std::optional<Window> colors = std::nullopt);
  static ModuleHandlePtr irreducible(FunctionalPtr phi, std::optional<Window> colors = std::nullopt);
  /// Runs the Lie-consistency self-check on the spec window before returning.
  static ModuleHandlePtr int_series_eval(const AlgebraPtr& algebra, IntSeriesSpec spec, const Scalar& point);
  /// `inner` must live over local_quotient(algebra, point, order).target().
  static ModuleHandlePtr generalized_eval(const AlgebraPtr& algebra, const Scalar& point, int order,
                                          ModuleHandlePtr inner);
  static ModuleHandlePtr tensor(std::vector<ModuleHandlePtr> factors);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Variant& variant() const { return variant_; }
  std::string kind_name() const;

 private:
  ModuleHandle(AlgebraPtr algebra, Variant v) : algebra_(std::move(algebra)), variant_(std::move(v)) {}

  AlgebraPtr algebra_;
  Variant variant_;
};

/// Vectors of the concrete modules: Laurent coefficients for intermediate
/// series, homogeneous pieces for highest weight modules.
using IntSeriesVector = std::map<long, Scalar>;
using ModuleVector = std::variant<IntSeriesVector, std::vector<VermaVector>>;

/// Image of a Lie algebra element under the map induced by a quotient of A.
LieElement push_forward(const LieElement& x, const QuotientMap& q);

/// x . v for evaluation-type and highest weight handles; tensor handles do
/// not materialize vectors (UnsupportedKind).
ModuleVector eval_act(const ModuleHandle& handle, const LieElement& x, const ModuleVector& v);

struct AnnihilatorReport {
  Ideal annihilator;
  /// Points t = a whose maximal ideal contains the annihilator; nullopt when
  /// the algebra has no presentation to enumerate points from.
  std::optional<std::vector<Scalar>> support;
  bool closure_verified = false;
  std::string note;
};

/// Ann_A V and Supp_A V, with the ideal closure of the result checked on the
/// window (Verma-type modules up to `depth`).
AnnihilatorReport annihilator_support(const ModuleHandle& handle, long depth = 2);

/// Whether d_n (x) f kills the module on the tested window (|n| <= 2, Verma
/// depths <= `depth`, every intermediate-series vector in its window).
bool annihilates_on_window(const ModuleHandle& handle, const AlgebraElement& f, long depth = 2);

struct WeightTable {
  Scalar base_weight;
  std::map<long, long> multiplicities;  // offset -> dim of weight base_weight + offset
  bool window_truncated = false;        // entries are lower bounds
  std::optional<long> zero_weight_offset;
  bool trivial_submodule = false;
  bool trivial_quotient = false;
};

/// Weight multiplicities on `offsets`. Verma-type factors over polynomial or
/// laurent algebras need `colors`.
WeightTable weight_multiplicities(const ModuleHandle& handle, Window offsets,
                                  const std::optional<Window>& colors = std::nullopt);

}  // namespace mapvir
