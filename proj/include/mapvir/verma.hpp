#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mapvir/pbw.hpp"

namespace mapvir {

/// A linear functional phi on V_0 = (d_0 (x) A) + (c (x) A), stored by its
/// values on basis vectors.
///
/// For polynomial/laurent algebras the values form two sequences over the
/// basis exponents, starting at the window's lower end. When an exact ideal
/// (p) is declared, phi is known to vanish on V_0 (x) (p), the sequences are
/// checked against that recurrence and extended by it to the whole algebra
/// window. Without it, looking past the supplied values raises WindowOverflow.
class Functional {
 public:
  Functional(AlgebraPtr algebra, Coords d0_values, Coords c_values, std::optional<Poly> exact_ideal = std::nullopt);

  /// Sequences phi(d_0 t^k), phi(c t^k) for k = lo, lo+1, ... (windowed kinds).
  static Functional from_sequences(AlgebraPtr algebra, std::vector<Scalar> d0_seq, std::vector<Scalar> c_seq,
                                   std::optional<Poly> exact_ideal = std::nullopt);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Coords& d0_values() const { return d0_; }
  const Coords& c_values() const { return c_; }
  const std::optional<Poly>& exact_ideal() const { return exact_ideal_; }
  /// Highest basis key with a known value (windowed kinds).
  long known_hi() const { return known_hi_; }

  Scalar d0_at(long key) const;
  Scalar c_at(long key) const;
  Scalar d0(const AlgebraElement& f) const;
  Scalar c(const AlgebraElement& f) const;
  /// phi(d_0), the highest weight.
  Scalar highest_weight() const { return d0(AlgebraElement::unit(algebra_)); }
  bool is_zero() const { return d0_.empty() && c_.empty(); }

  /// phi composed with d_n -> -d_{-n}, c -> -c (restricted to V_0).
  Functional mirrored() const;

  friend Functional operator+(const Functional& a, const Functional& b);
  friend bool operator==(const Functional& a, const Functional& b);

 private:
  Scalar lookup(const Coords& values, long key) const;

  AlgebraPtr algebra_;
  Coords d0_;
  Coords c_;
  std::optional<Poly> exact_ideal_;
  long known_hi_ = 0;
};

using FunctionalPtr = std::shared_ptr<const Functional>;

/// env * v_phi in M(phi), homogeneous of weight phi(d_0) - depth.
class VermaVector {
 public:
  /// Rejects mixed-weight env elements; `depth` is needed for the zero vector.
  VermaVector(FunctionalPtr phi, EnvElement env, std::optional<long> depth = std::nullopt);

  const FunctionalPtr& functional() const { return phi_; }
  const EnvElement& env() const { return env_; }
  long depth() const { return depth_; }
  Scalar weight() const { return phi_->highest_weight() - depth_; }
  bool is_zero() const { return env_.is_zero(); }
  /// "(d[-2]*1 + d[-1]*1 . d[-1]*1) v"
  std::string to_string() const;

 private:
  FunctionalPtr phi_;
  EnvElement env_;
  long depth_ = 0;
};

/// Computational model of M(phi): action of Vir (x) A on PBW coordinates with
/// memoized generator actions, the maximal submodule N(phi) depth by depth,
/// and singular subspaces. Holds caches, so an instance must not be shared
/// across threads.
///
/// For polynomial/laurent algebras the PBW generators are coloured by the
/// keys in `colors` and the raising generators d_1 (x) t^i, d_2 (x) t^i range
/// over the same keys; results are then window-truncated.
class VermaModule {
 public:
  explicit VermaModule(FunctionalPtr phi, std::optional<Window> colors = std::nullopt);

  const Functional& functional() const { return *phi_; }
  const FunctionalPtr& functional_ptr() const { return phi_; }
  const AlgebraPtr& algebra() const { return phi_->algebra(); }
  const std::vector<long>& colors() const { return colors_; }

  const std::vector<PbwMonomial>& basis(long depth);
  /// (d_mode (x) b_key) applied to m v_phi.
  const EnvTerms& act_generator(long mode, long key, const PbwMonomial& m);
  EnvElement act(const LieElement& x, const EnvElement& v);

  /// Coordinates of a depth-homogeneous element in basis(depth). Monomials
  /// outside the coloured basis are dropped when `truncate` is set and raise
  /// WindowOverflow otherwise.
  Vector coordinates(const EnvElement& v, long depth, bool truncate = false);
  EnvElement from_coordinates(const Vector& coords, long depth);

  /// Rows of a matrix whose kernel on M_{-depth} is N(phi)_{-depth}; its rank
  /// is dim V(phi)_{-depth}. Built from the projections at depth-1 and
  /// depth-2 composed with the raising generators d_1 (x) b, d_2 (x) b.
  ///
  /// Windowed algebras use the pairing with every raising monomial instead.
  const Echelon& quotient_projection(long depth);
  /// Coefficient of v_phi in X m v_phi, where X is `raising` read with its
  /// depths as positive modes (rightmost factor applied first).
  Scalar pairing(const PbwMonomial& raising, const PbwMonomial& m);
  bool in_maximal_submodule(const EnvElement& v, long depth);
  /// Basis of the vectors of M_{-depth} killed by every d_1 (x) b, d_2 (x) b.
  std::vector<EnvElement> singular_basis(long depth);
  /// Images of depth-`depth` basis vectors under the raising generators,
  /// stacked, with rows indexed by whatever monomials occur.
  Matrix raising_matrix(long depth);

 private:
  FunctionalPtr phi_;
  std::vector<long> colors_;
  Straightener straight_;
  std::map<std::tuple<long, long, PbwMonomial>, EnvTerms> memo_;
  std::map<long, std::vector<PbwMonomial>> bases_;
  std::map<long, std::map<PbwMonomial, size_t, PbwDescending>> index_;
  std::map<long, Echelon> projections_;
};

/// x . v split into homogeneous pieces (ascending depth, zero pieces dropped).
std::vector<VermaVector> verma_act(const LieElement& x, const VermaVector& v);

/// Basis of the singular subspace of M(phi)_{phi(d0) - depth}.
std::vector<VermaVector> singular_vectors(const FunctionalPtr& phi, long depth,
                                          const std::optional<Window>& colors = std::nullopt);

/// dim V(phi)_{phi(d0) - n} for n = 0..max_depth.
std::vector<long> quotient_dims(const FunctionalPtr& phi, long max_depth,
                                const std::optional<Window>& colors = std::nullopt);

/// dim M(phi)_{phi(d0) - n} = |pbw_basis(n)| for n = 0..max_depth.
std::vector<long> verma_dims(const Algebra& algebra, long max_depth, const std::optional<Window>& colors = std::nullopt);

/// Minimal monic p of degree <= max_order with sum_i p_i s_{k+i} = 0 for every
/// sequence s and every k where the window allows; nullopt when none exists.
/// Solved as an overdetermined Hankel system over Q.
std::optional<Poly> find_common_recurrence(const std::vector<std::vector<Scalar>>& sequences, long max_order);

/// Largest ideal J with phi(d_0 (x) J) = 0, plus phi(c (x) J) = 0 when
/// `include_central`. Finite algebras only.
Ideal vanishing_ideal(const Functional& phi, bool include_central);

enum class QuasifiniteStatus { quasifinite_certified, no_witness_up_to_bound };
std::string to_string(QuasifiniteStatus s);

struct QuasifiniteVerdict {
  QuasifiniteStatus status = QuasifiniteStatus::no_witness_up_to_bound;
  std::optional<Ideal> witness;
  std::optional<Poly> recurrence;  // found on the sampled window, certified or not
  std::string note;
};

/// Quasifiniteness of V(phi): finite A always (witness 0); windowed A by joint
/// recurrence detection on the d_0 and c sequences up to `bound`. Certified
/// only with a declared exact ideal or `assume_exact`.
QuasifiniteVerdict check_quasifinite(const Functional& phi, long bound, bool assume_exact = false);

enum class ReducibilityStatus { reducible_certified, irreducible_certified, no_witness_up_to_bound };
std::string to_string(ReducibilityStatus s);

struct ReducibilityVerdict {
  ReducibilityStatus status = ReducibilityStatus::no_witness_up_to_bound;
  std::optional<Ideal> witness_ideal;
  std::optional<VermaVector> singular_vector;
  std::optional<Poly> recurrence;
  std::string note;
};

/// Nontrivial ideal J with phi(d_0 (x) J) = 0 certifies reducibility through
/// the singular vector (d_{-1} (x) f) v for 0 != f in J. For windowed algebras
/// with `assume_exact` and no recurrence up to `bound`, M(phi) is reported
/// irreducible.
ReducibilityVerdict check_verma_reducible(const FunctionalPtr& phi, long bound, bool assume_exact = false);

/// phi_i(x) = phi(e_i x) for the CRT idempotents e_i of a product_local algebra.
std::vector<Functional> split_phi(const Functional& phi);

}  // namespace mapvir
