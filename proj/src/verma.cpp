#include "mapvir/verma.hpp"

#include <algorithm>

#include "mapvir/errors.hpp"

namespace mapvir {

namespace {

bool windowed(const Algebra& a) { return a.kind() == AlgebraKind::polynomial || a.kind() == AlgebraKind::laurent; }

std::vector<Scalar> sequence_of(const Functional& phi, bool central, long hi) {
  std::vector<Scalar> out;
  for (long k = phi.algebra()->window().lo; k <= hi; ++k) out.push_back(central ? phi.c_at(k) : phi.d0_at(k));
  return out;
}

// Upward extension of a sequence by a monic recurrence.
void extend_by_recurrence(Coords& values, const Poly& p, long lo, long known_hi, long target_hi) {
  const long r = p.degree();
  for (long k = known_hi + 1; k <= target_hi; ++k) {
    Scalar acc = 0;
    for (long i = 0; i < r; ++i) {
      auto it = values.find(k - r + i);
      if (it != values.end()) acc -= p.coeff(i) * it->second;
    }
    if (k - r < lo) throw ValidationError("exact ideal degree exceeds the supplied sequence length");
    if (!is_zero(acc)) values[k] = acc;
  }
}

bool satisfies_recurrence(const Coords& values, const Poly& p, long lo, long hi) {
  const long r = p.degree();
  for (long k = lo; k + r <= hi; ++k) {
    Scalar acc = 0;
    for (long i = 0; i <= r; ++i) {
      auto it = values.find(k + i);
      if (it != values.end()) acc += p.coeff(i) * it->second;
    }
    if (!is_zero(acc)) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- Functional

Functional::Functional(AlgebraPtr algebra, Coords d0_values, Coords c_values, std::optional<Poly> exact_ideal)
    : algebra_(std::move(algebra)), exact_ideal_(std::move(exact_ideal)) {
  for (auto* src : {&d0_values, &c_values}) {
    Coords& dst = src == &d0_values ? d0_ : c_;
    for (auto& [k, v] : *src) {
      if (!algebra_->valid_key(k)) throw ValidationError("functional value at invalid basis key " + std::to_string(k));
      if (!mapvir::is_zero(v)) dst.emplace(k, v);
    }
  }
  known_hi_ = algebra_->keys().back();
  if (exact_ideal_ && !windowed(*algebra_)) throw ValidationError("exact ideals are declared for polynomial/laurent functionals");
}

Functional Functional::from_sequences(AlgebraPtr algebra, std::vector<Scalar> d0_seq, std::vector<Scalar> c_seq,
                                      std::optional<Poly> exact_ideal) {
  if (!windowed(*algebra)) throw ValidationError("sequence functionals need a polynomial/laurent algebra");
  if (c_seq.empty()) c_seq.assign(d0_seq.size(), Scalar(0));
  if (d0_seq.size() != c_seq.size()) throw ValidationError("d0_seq and c_seq must have the same length");
  if (d0_seq.empty()) throw ValidationError("functional sequences must be nonempty");
  const Window w = algebra->window();
  const long known_hi = w.lo + static_cast<long>(d0_seq.size()) - 1;
  if (known_hi > w.hi) throw ValidationError("functional sequence is longer than the algebra window");
  Coords d0, c;
  for (size_t i = 0; i < d0_seq.size(); ++i) {
    long k = w.lo + static_cast<long>(i);
    if (!mapvir::is_zero(d0_seq[i])) d0[k] = d0_seq[i];
    if (!mapvir::is_zero(c_seq[i])) c[k] = c_seq[i];
  }
  if (exact_ideal) {
    Poly p = Ideal::principal_record(algebra, *exact_ideal).generator();
    if (p.is_zero()) throw ValidationError("exact ideal must be nonzero");
    if (!satisfies_recurrence(d0, p, w.lo, known_hi) || !satisfies_recurrence(c, p, w.lo, known_hi))
      throw ValidationError("functional does not vanish on the declared exact ideal (" + p.to_string() + ")");
    extend_by_recurrence(d0, p, w.lo, known_hi, w.hi);
    extend_by_recurrence(c, p, w.lo, known_hi, w.hi);
    Functional out(algebra, std::move(d0), std::move(c), p);
    return out;
  }
  Functional out(algebra, std::move(d0), std::move(c));
  out.known_hi_ = known_hi;
  return out;
}

Scalar Functional::lookup(const Coords& values, long key) const {
  if (!algebra_->valid_key(key) || key > known_hi_)
    throw WindowOverflow("functional value at " + (algebra_->valid_key(key) ? algebra_->label(key) : std::to_string(key)) +
                         " lies beyond the supplied sequence");
  auto it = values.find(key);
  return it == values.end() ? Scalar(0) : it->second;
}

Scalar Functional::d0_at(long key) const { return lookup(d0_, key); }
Scalar Functional::c_at(long key) const { return lookup(c_, key); }

Scalar Functional::d0(const AlgebraElement& f) const {
  require_same_algebra(algebra_, f.algebra());
  Scalar acc = 0;
  for (const auto& [k, v] : f.coords()) acc += v * d0_at(k);
  return acc;
}

Scalar Functional::c(const AlgebraElement& f) const {
  require_same_algebra(algebra_, f.algebra());
  Scalar acc = 0;
  for (const auto& [k, v] : f.coords()) acc += v * c_at(k);
  return acc;
}

Functional Functional::mirrored() const {
  Functional out = *this;
  for (auto& [k, v] : out.d0_) v = -v;
  for (auto& [k, v] : out.c_) v = -v;
  return out;
}

Functional operator+(const Functional& a, const Functional& b) {
  require_same_algebra(a.algebra_, b.algebra_);
  Coords d0 = a.d0_, c = a.c_;
  for (const auto& [k, v] : b.d0_) d0[k] += v;
  for (const auto& [k, v] : b.c_) c[k] += v;
  Functional out(a.algebra_, std::move(d0), std::move(c));
  out.known_hi_ = std::min(a.known_hi_, b.known_hi_);
  if (a.exact_ideal_ && b.exact_ideal_) {
    const Poly& p = *a.exact_ideal_;
    const Poly& q = *b.exact_ideal_;
    out.exact_ideal_ = divmod(p * q, gcd(p, q)).quotient.monic();
  }
  return out;
}

bool operator==(const Functional& a, const Functional& b) {
  return same_algebra(a.algebra_, b.algebra_) && a.d0_ == b.d0_ && a.c_ == b.c_;
}

// ---------------------------------------------------------------- VermaVector

VermaVector::VermaVector(FunctionalPtr phi, EnvElement env, std::optional<long> depth)
    : phi_(std::move(phi)), env_(std::move(env)) {
  require_same_algebra(phi_->algebra(), env_.algebra());
  std::optional<long> seen;
  for (const auto& [m, c] : env_.terms()) {
    if (seen && *seen != m.depth()) throw ComputationError("Verma vector mixes weights");
    seen = m.depth();
  }
  if (seen && depth && *seen != *depth) throw ComputationError("Verma vector depth mismatch");
  if (!seen && !depth) throw ComputationError("zero Verma vector needs an explicit depth");
  depth_ = seen ? *seen : *depth;
  if (depth_ < 0) throw ComputationError("negative Verma depth");
}

std::string VermaVector::to_string() const {
  if (env_.is_zero()) return "0";
  return "(" + env_.to_string() + ") v";
}

// ---------------------------------------------------------------- VermaModule

VermaModule::VermaModule(FunctionalPtr phi, std::optional<Window> colors)
    : phi_(std::move(phi)),
      colors_(colors || phi_->algebra()->is_finite() ? color_keys(*phi_->algebra(), colors) : phi_->algebra()->keys()),
      straight_(phi_->algebra()) {}

const std::vector<PbwMonomial>& VermaModule::basis(long depth) {
  auto it = bases_.find(depth);
  if (it != bases_.end()) return it->second;
  std::vector<PbwMonomial> b;
  if (depth >= 0) {
    Window w{0, 0};
    std::optional<Window> colors;
    if (!algebra()->is_finite()) {
      w = {colors_.empty() ? 0 : colors_.front(), colors_.empty() ? -1 : colors_.back()};
      colors = w;
    }
    b = pbw_basis(depth, *algebra(), colors);
  }
  auto& idx = index_[depth];
  for (size_t i = 0; i < b.size(); ++i) idx.emplace(b[i], i);
  return bases_.emplace(depth, std::move(b)).first->second;
}

const EnvTerms& VermaModule::act_generator(long mode, long key, const PbwMonomial& m) {
  auto memo_key = std::make_tuple(mode, key, m);
  if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

  EnvElement result(algebra());
  const auto& fs = m.factors();
  if (mode < 0) {
    result = EnvElement(algebra(), straight_.left_multiply(PbwFactor{-mode, key}, m));
  } else if (fs.empty()) {
    if (mode == 0) result.add_term(m, phi_->d0_at(key));
  } else {
    // g X R = X (g R) + [g, X] R with X = d_{-a} (x) b the leading factor.
    const PbwFactor lead = fs.front();
    PbwMonomial rest(std::vector<PbwFactor>(fs.begin() + 1, fs.end()));
    EnvTerms inner = act_generator(mode, key, rest);
    for (const auto& [n, c] : inner) {
      const EnvTerms& t = straight_.left_multiply(lead, n);
      for (const auto& [mono, cc] : t) result.add_term(mono, c * cc);
    }
    // [d_j e, d_{-a} b] = (-a - j) d_{j-a} eb + delta_{j,a} (j^3 - j)/12 c eb
    Coords prod = algebra()->product(key, lead.key);
    Scalar coef(-lead.depth - mode);
    Scalar central = mode == lead.depth ? central_coefficient(mode) : Scalar(0);
    for (const auto& [k, pc] : prod) {
      if (!is_zero(coef)) {
        EnvTerms t = act_generator(mode - lead.depth, k, rest);
        for (const auto& [mono, cc] : t) result.add_term(mono, coef * pc * cc);
      }
      if (!is_zero(central)) result.add_term(rest, central * pc * phi_->c_at(k));
    }
  }
  return memo_.emplace(std::move(memo_key), result.terms()).first->second;
}

EnvElement VermaModule::act(const LieElement& x, const EnvElement& v) {
  require_same_algebra(algebra(), x.algebra());
  require_same_algebra(algebra(), v.algebra());
  EnvElement out(algebra());
  for (const auto& [mode, f] : x.d_part())
    for (const auto& [key, fc] : f.coords())
      for (const auto& [m, vc] : v.terms()) {
        const EnvTerms& t = act_generator(mode, key, m);
        for (const auto& [mono, c] : t) out.add_term(mono, fc * vc * c);
      }
  Scalar central = phi_->c(x.c_part());
  if (!is_zero(central)) out += central * v;
  return out;
}

Vector VermaModule::coordinates(const EnvElement& v, long depth, bool truncate) {
  const auto& b = basis(depth);
  const auto& idx = index_[depth];
  Vector out(b.size());
  for (const auto& [m, c] : v.terms()) {
    if (m.depth() != depth) throw ComputationError("coordinates: monomial of the wrong depth");
    auto it = idx.find(m);
    if (it == idx.end()) {
      if (truncate) continue;
      throw WindowOverflow("monomial " + m.to_string(*algebra()) + " lies outside the coloured basis");
    }
    out[it->second] = c;
  }
  return out;
}

EnvElement VermaModule::from_coordinates(const Vector& coords, long depth) {
  const auto& b = basis(depth);
  EnvElement out(algebra());
  for (size_t i = 0; i < b.size(); ++i) out.add_term(b[i], coords[i]);
  return out;
}

const Echelon& VermaModule::quotient_projection(long depth) {
  if (auto it = projections_.find(depth); it != projections_.end()) return it->second;
  const auto& b = basis(depth);
  Matrix rows;
  if (depth == 0) {
    rows.push_back(Vector{Scalar(1)});
  } else if (!algebra()->is_finite()) {
    // Raising by d_j (x) t^i leaves the colour window, so the recursion below
    // would drop terms. Pair with the raising monomials of this depth instead.
    for (const auto& x : pbw_basis(depth, *algebra(), Window{colors_.front(), colors_.back()})) {
      Vector row(b.size());
      for (size_t col = 0; col < b.size(); ++col) row[col] = pairing(x, b[col]);
      rows.push_back(std::move(row));
    }
  } else {
    for (long j : {1L, 2L}) {
      if (depth - j < 0) continue;
      const Echelon& lower = quotient_projection(depth - j);
      if (lower.rank() == 0) continue;
      for (long key : colors_) {
        // Columns of the generator matrix: images of the basis vectors.
        Matrix images;
        for (const auto& m : b) {
          EnvElement img(algebra(), act_generator(j, key, m));
          images.push_back(coordinates(img, depth - j));
        }
        for (const auto& prow : lower.rows) {
          Vector row(b.size());
          for (size_t col = 0; col < b.size(); ++col)
            for (size_t i = 0; i < prow.size(); ++i)
              if (!is_zero(prow[i]) && !is_zero(images[col][i])) row[col] += prow[i] * images[col][i];
          rows.push_back(std::move(row));
        }
      }
    }
  }
  auto e = row_reduce(std::move(rows), b.size());
  return projections_.emplace(depth, std::move(e)).first->second;
}

Scalar VermaModule::pairing(const PbwMonomial& raising, const PbwMonomial& m) {
  EnvElement v = EnvElement::monomial(algebra(), m);
  const auto& fs = raising.factors();
  for (auto it = fs.rbegin(); it != fs.rend() && !v.is_zero(); ++it) {
    EnvElement next(algebra());
    for (const auto& [mono, c] : v.terms())
      for (const auto& [img, cc] : act_generator(it->depth, it->key, mono)) next.add_term(img, c * cc);
    v = std::move(next);
  }
  return v.coeff(PbwMonomial());
}

bool VermaModule::in_maximal_submodule(const EnvElement& v, long depth) {
  if (v.is_zero()) return true;
  const Echelon& p = quotient_projection(depth);
  Vector x = coordinates(v, depth);
  for (const auto& row : p.rows) {
    Scalar acc = 0;
    for (size_t i = 0; i < x.size(); ++i)
      if (!is_zero(x[i])) acc += row[i] * x[i];
    if (!is_zero(acc)) return false;
  }
  return true;
}

Matrix VermaModule::raising_matrix(long depth) {
  const auto& b = basis(depth);
  std::map<std::tuple<long, long, PbwMonomial>, size_t> row_of;
  std::vector<std::vector<std::pair<size_t, Scalar>>> cols(b.size());
  for (size_t col = 0; col < b.size(); ++col)
    for (long j : {1L, 2L})
      for (long key : colors_) {
        const EnvTerms& t = act_generator(j, key, b[col]);
        for (const auto& [mono, c] : t) {
          auto [it, inserted] = row_of.try_emplace(std::make_tuple(j, key, mono), row_of.size());
          cols[col].emplace_back(it->second, c);
        }
      }
  Matrix m(row_of.size(), Vector(b.size()));
  for (size_t col = 0; col < b.size(); ++col)
    for (const auto& [r, c] : cols[col]) m[r][col] += c;
  return m;
}

std::vector<EnvElement> VermaModule::singular_basis(long depth) {
  if (depth < 1) throw ValidationError("singular vectors are sought at depth >= 1");
  const auto& b = basis(depth);
  std::vector<EnvElement> out;
  for (const auto& k : kernel(raising_matrix(depth), b.size())) out.push_back(from_coordinates(k, depth));
  return out;
}

// ---------------------------------------------------------------- free operations

std::vector<VermaVector> verma_act(const LieElement& x, const VermaVector& v) {
  VermaModule module(v.functional());
  EnvElement image = module.act(x, v.env());
  std::map<long, EnvElement> pieces;
  for (const auto& [m, c] : image.terms())
    pieces.try_emplace(m.depth(), image.algebra()).first->second.add_term(m, c);
  std::vector<VermaVector> out;
  for (auto& [d, e] : pieces) out.emplace_back(v.functional(), std::move(e), d);
  return out;
}

std::vector<VermaVector> singular_vectors(const FunctionalPtr& phi, long depth, const std::optional<Window>& colors) {
  color_keys(*phi->algebra(), colors);
  VermaModule module(phi, colors);
  std::vector<VermaVector> out;
  for (auto& e : module.singular_basis(depth)) out.emplace_back(phi, std::move(e), depth);
  return out;
}

std::vector<long> quotient_dims(const FunctionalPtr& phi, long max_depth, const std::optional<Window>& colors) {
  color_keys(*phi->algebra(), colors);
  VermaModule module(phi, colors);
  std::vector<long> out;
  for (long n = 0; n <= max_depth; ++n) out.push_back(static_cast<long>(module.quotient_projection(n).rank()));
  return out;
}

std::vector<long> verma_dims(const Algebra& algebra, long max_depth, const std::optional<Window>& colors) {
  std::vector<long> out;
  for (long n = 0; n <= max_depth; ++n) out.push_back(static_cast<long>(pbw_basis(n, algebra, colors).size()));
  return out;
}

std::optional<Poly> find_common_recurrence(const std::vector<std::vector<Scalar>>& sequences, long max_order) {
  for (long r = 0; r <= max_order; ++r) {
    // Unknowns p_0..p_{r-1}; p_r = 1. One row per (sequence, shift).
    Matrix rows;
    for (const auto& s : sequences) {
      const long len = static_cast<long>(s.size());
      for (long k = 0; k + r < len; ++k) {
        Vector row(static_cast<size_t>(r) + 1);
        for (long i = 0; i < r; ++i) row[static_cast<size_t>(i)] = s[static_cast<size_t>(k + i)];
        row[static_cast<size_t>(r)] = -s[static_cast<size_t>(k + r)];
        rows.push_back(std::move(row));
      }
    }
    Echelon e = row_reduce(rows, static_cast<size_t>(r) + 1);
    bool consistent = e.pivots.empty() || e.pivots.back() != static_cast<size_t>(r);
    if (!consistent) continue;
    std::vector<Scalar> p(static_cast<size_t>(r) + 1);
    p[static_cast<size_t>(r)] = 1;
    // Free unknowns set to zero; pivots read off the augmented column.
    for (size_t i = 0; i < e.rows.size(); ++i) p[e.pivots[i]] = e.rows[i][static_cast<size_t>(r)];
    return Poly(std::move(p));
  }
  return std::nullopt;
}

Ideal vanishing_ideal(const Functional& phi, bool include_central) {
  const AlgebraPtr& a = phi.algebra();
  if (!a->is_finite()) throw InfiniteDimensionalAlgebra("vanishing ideal needs a finite-dimensional algebra");
  const auto& keys = a->keys();
  Matrix m;
  for (long bj : keys) {
    Vector d0_row(keys.size()), c_row(keys.size());
    for (size_t i = 0; i < keys.size(); ++i) {
      AlgebraElement prod(a, a->product(keys[i], bj));
      d0_row[i] = phi.d0(prod);
      c_row[i] = phi.c(prod);
    }
    m.push_back(std::move(d0_row));
    if (include_central) m.push_back(std::move(c_row));
  }
  return Ideal::from_span(a, kernel(m, keys.size()));
}

std::string to_string(QuasifiniteStatus s) {
  return s == QuasifiniteStatus::quasifinite_certified ? "quasifinite_certified" : "no_witness_up_to_bound";
}

std::string to_string(ReducibilityStatus s) {
  switch (s) {
    case ReducibilityStatus::reducible_certified: return "reducible_certified";
    case ReducibilityStatus::irreducible_certified: return "irreducible_certified";
    case ReducibilityStatus::no_witness_up_to_bound: return "no_witness_up_to_bound";
  }
  return "?";
}

QuasifiniteVerdict check_quasifinite(const Functional& phi, long bound, bool assume_exact) {
  const AlgebraPtr& a = phi.algebra();
  QuasifiniteVerdict out;
  if (a->is_finite()) {
    out.status = QuasifiniteStatus::quasifinite_certified;
    out.witness = Ideal::zero(a);
    out.note = "finite-dimensional coefficient algebra: the zero ideal has finite codimension";
    return out;
  }
  if (bound < 0) throw ValidationError("degree bound must be >= 0");
  const long hi = std::min(phi.known_hi(), a->window().lo + bound);
  auto rec = find_common_recurrence({sequence_of(phi, false, hi), sequence_of(phi, true, hi)}, bound / 2);
  out.recurrence = rec;
  const auto& exact = phi.exact_ideal();
  if (rec && (assume_exact || (exact && (*exact % *rec).is_zero()))) {
    out.status = QuasifiniteStatus::quasifinite_certified;
    out.witness = Ideal::principal_record(a, *rec);
    out.note = exact ? "recurrence divides the declared exact ideal" : "recurrence declared exact by the caller";
  } else if (exact) {
    out.status = QuasifiniteStatus::quasifinite_certified;
    out.witness = Ideal::principal_record(a, *exact);
    out.note = "declared exact ideal";
  } else {
    out.note = rec ? "recurrence (" + rec->to_string() + ") found on the sampled window only; not certified"
                   : "no common recurrence of order <= " + std::to_string(bound / 2);
  }
  return out;
}

ReducibilityVerdict check_verma_reducible(const FunctionalPtr& phi, long bound, bool assume_exact) {
  const AlgebraPtr& a = phi->algebra();
  ReducibilityVerdict out;
  std::optional<AlgebraElement> f;
  if (a->is_finite()) {
    Ideal j0 = vanishing_ideal(*phi, false);
    out.witness_ideal = j0;
    if (j0.is_zero()) {
      out.note = "largest ideal in ker phi(d0 (x) -) is zero; M(phi) may still be reducible";
      return out;
    }
    f = j0.elements().front();
  } else {
    if (bound < 0) throw ValidationError("degree bound must be >= 0");
    const long hi = std::min(phi->known_hi(), a->window().lo + bound);
    auto rec = find_common_recurrence({sequence_of(*phi, false, hi)}, bound / 2);
    out.recurrence = rec;
    const bool exact = assume_exact || phi->exact_ideal().has_value();
    if (!rec) {
      if (assume_exact) {
        out.status = ReducibilityStatus::irreducible_certified;
        out.witness_ideal = Ideal::zero(a);
        out.note = "no recurrence of order <= " + std::to_string(bound / 2) +
                   " and the caller declared the bound conclusive";
      } else if (phi->exact_ideal()) {
        rec = phi->exact_ideal();
      } else {
        out.note = "no recurrence of order <= " + std::to_string(bound / 2);
        return out;
      }
      if (!rec) return out;
    }
    out.witness_ideal = Ideal::principal_record(a, *rec);
    if (!exact) {
      out.note = "recurrence (" + rec->to_string() + ") found on the sampled window only; not certified";
      return out;
    }
    f = AlgebraElement::from_poly(a, *rec);
  }

  // (d_{-1} (x) f) v must be killed by d_1 (x) b and d_2 (x) b for every basis b
  // (every b with fb inside the window, for windowed algebras).
  EnvElement env(a);
  for (const auto& [k, c] : f->coords()) env.add_term(PbwMonomial({PbwFactor{1, k}}), c);
  VermaVector v(phi, env, 1);
  VermaModule module(phi);
  long checked = 0;
  for (long key : a->keys()) {
    for (long j : {1L, 2L}) {
      EnvElement img(a);
      try {
        img = module.act(LieElement::d(j, AlgebraElement::basis(a, key)), env);
      } catch (const WindowOverflow&) {
        continue;
      }
      ++checked;
      if (!img.is_zero())
        throw ComputationError("witness " + f->to_string() + " fails the singular-vector check");
    }
  }
  out.status = ReducibilityStatus::reducible_certified;
  out.singular_vector = v;
  out.note = "singular vector checked against " + std::to_string(checked) + " raising generators";
  return out;
}

std::vector<Functional> split_phi(const Functional& phi) {
  const AlgebraPtr& a = phi.algebra();
  std::vector<Functional> out;
  for (const auto& comp : local_decomposition(a)) {
    Coords d0, c;
    for (long key : a->keys()) {
      AlgebraElement shifted = comp.idempotent * AlgebraElement::basis(a, key);
      d0[key] = phi.d0(shifted);
      c[key] = phi.c(shifted);
    }
    out.emplace_back(a, std::move(d0), std::move(c));
  }
  return out;
}

}  // namespace mapvir
