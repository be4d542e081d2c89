#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germinv/error.hpp"
#include "germinv/matrix.hpp"
#include "germinv/parser.hpp"
#include "germinv/polynomial.hpp"
#include "germinv/standard_basis.hpp"

namespace germinv {

// A polynomial map germ (C^n,0) -> (C^p,0) over a ring of n plain variables.
class MapGerm {
 public:
  MapGerm(Ring ring, std::vector<Polynomial> coords) : ring_(std::move(ring)), coords_(std::move(coords)) {
    if (ring_->size() == 0) throw InputError("map germ needs at least one source variable");
    if (ring_->count(VariableRole::plain) != ring_->size())
      throw InputError("map germ source ring must consist of plain variables");
    if (coords_.empty()) throw InputError("map germ needs at least one coordinate");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      require_same_ring(coords_[i].ring(), ring_, "map germ");
      if (coords_[i].constant_term() != 0)
        throw InputError("coordinate " + std::to_string(i + 1) + " does not vanish at the origin");
    }
  }

  static MapGerm parse(const std::vector<std::string>& variables, const std::vector<std::string>& coords) {
    Ring ring = VariableSet::plain(variables);
    std::vector<Polynomial> polys;
    polys.reserve(coords.size());
    for (const auto& c : coords) polys.push_back(parse_polynomial(c, ring));
    return MapGerm(ring, std::move(polys));
  }

  std::size_t n() const noexcept { return ring_->size(); }
  std::size_t p() const noexcept { return coords_.size(); }
  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& coords() const noexcept { return coords_; }
  const Polynomial& operator[](std::size_t i) const { return coords_.at(i); }

  // Ring (x_1..x_n, x_1'..x_n') used by every double-point construction.
  Ring primed_ring() const { return ring_->primed_extension(); }

 private:
  Ring ring_;
  std::vector<Polynomial> coords_;
};

struct InvariantOptions {
  SbOptions sb;
  std::uint64_t k_cap = 40;

  ModuleLengthOptions module_length() const { return {sb, k_cap}; }
};

inline void require_equidimensional_double(const MapGerm& f, const char* op) {
  if (f.p() != 2 * f.n())
    throw InputError(std::string(op) + " requires p = 2n (got n=" + std::to_string(f.n()) +
                     ", p=" + std::to_string(f.p()) + ")");
}

namespace detail {

inline std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

inline std::vector<std::size_t> primed_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = n + i;
  return m;
}

}  // namespace detail

// f(x) as a polynomial over the primed ring.
inline Polynomial unprimed_copy(const Polynomial& f, const Ring& primed) {
  return f.relabeled(primed, detail::identity_map(f.ring()->size()));
}

// f(x') as a polynomial over the primed ring.
inline Polynomial primed_copy(const Polynomial& f, const Ring& primed) {
  return f.relabeled(primed, detail::primed_map(f.ring()->size()));
}

// ---------------------------------------------------------------------------
// Alpha matrix and ideals
// ---------------------------------------------------------------------------

struct AlphaMatrix {
  PolyMatrix matrix;
};

inline AlphaMatrix alpha_matrix(const MapGerm& f) {
  const Ring primed = f.primed_ring();
  const std::size_t n = f.n();
  PolyMatrix m(f.p(), n, primed);
  for (std::size_t i = 0; i < f.p(); ++i) {
    Polynomial telescoped(primed);
    for (std::size_t j = 0; j < n; ++j) {
      m.set(i, j, divided_difference(f[i], j, primed));
      telescoped += m(i, j) * (Polynomial::variable(primed, j) - Polynomial::variable(primed, n + j));
    }
    if (telescoped != unprimed_copy(f[i], primed) - primed_copy(f[i], primed))
      throw InconsistencyError("alpha matrix row " + std::to_string(i + 1) + " fails the telescoping identity");
  }
  return {std::move(m)};
}

// <f_1(x) - f_1(x'), ..., f_p(x) - f_p(x')>
inline Ideal pullback_ideal(const MapGerm& f) {
  const Ring primed = f.primed_ring();
  std::vector<Polynomial> gens;
  for (const auto& c : f.coords()) gens.push_back(unprimed_copy(c, primed) - primed_copy(c, primed));
  return Ideal(primed, MonomialOrder::negdegrevlex, std::move(gens));
}

// <x_1 - x_1', ..., x_n - x_n'>
inline Ideal diagonal_ideal(const Ring& primed, std::size_t n) {
  std::vector<Polynomial> gens;
  for (std::size_t j = 0; j < n; ++j)
    gens.push_back(Polynomial::variable(primed, j) - Polynomial::variable(primed, n + j));
  return Ideal(primed, MonomialOrder::negdegrevlex, std::move(gens));
}

inline Ideal diagonal_ideal(const MapGerm& f) { return diagonal_ideal(f.primed_ring(), f.n()); }

// Mond's double point ideal: the pullback generators (coordinate order)
// followed by all n x n minors of alpha (lexicographic row subsets).
inline Ideal double_point_ideal(const MapGerm& f) {
  if (f.n() > f.p()) throw InputError("double point ideal requires n <= p");
  std::vector<Polynomial> gens = pullback_ideal(f).generators();
  for (auto& m : minors(alpha_matrix(f).matrix, f.n())) gens.push_back(std::move(m));
  return Ideal(f.primed_ring(), MonomialOrder::negdegrevlex, std::move(gens));
}

// ---------------------------------------------------------------------------
// Corank
// ---------------------------------------------------------------------------

// Rank over Q of a dense rational matrix.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational factor = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Jacobian of f evaluated at the origin: the linear coefficients.
inline std::vector<std::vector<Rational>> linear_part(const MapGerm& f) {
  std::vector<std::vector<Rational>> m(f.p(), std::vector<Rational>(f.n()));
  for (std::size_t i = 0; i < f.p(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j) {
      ExponentVector e(f.n());
      e[j] = 1;
      m[i][j] = f[i].coefficient(e);
    }
  return m;
}

inline std::size_t corank(const MapGerm& f) { return f.n() - rational_rank(linear_part(f)); }

// ---------------------------------------------------------------------------
// d(f) routes
// ---------------------------------------------------------------------------

inline std::uint64_t half_colength(const Colength& c, const char* what) {
  if (!c.is_finite()) throw NotFiniteError(std::string(what) + ": infinite colength, germ is not A-finite");
  if (*c.value % 2 != 0)
    throw InconsistencyError(std::string(what) + ": odd colength " + std::to_string(*c.value));
  return *c.value / 2;
}

inline Colength double_point_colength(const MapGerm& f, const InvariantOptions& opt = {}) {
  return colength(double_point_ideal(f), opt.sb);
}

// d(f) = dim O_2n / I^2(f) / 2.
inline std::uint64_t d_invariant(const MapGerm& f, const InvariantOptions& opt = {}) {
  require_equidimensional_double(f, "d_invariant");
  return half_colength(double_point_colength(f, opt), "d_invariant");
}

// A germ written as (x_1, .., x_{n-1}, f_n, .., f_p) up to reordering of
// source variables and target coordinates (and nonzero scalars on the
// plain coordinates).
struct Corank1NormalForm {
  std::size_t y = 0;                          // the distinguished source variable
  std::vector<std::size_t> plain_variables;   // source variables other than y, ascending
  std::vector<std::size_t> plain_coords;      // coordinate equal to c * plain_variables[k]
  std::vector<std::size_t> remaining_coords;  // all other coordinates, ascending
};

inline std::optional<Corank1NormalForm> find_corank1_normal_form(const MapGerm& f) {
  const std::size_t n = f.n();
  auto is_scaled_variable = [&](const Polynomial& c, std::size_t v) {
    if (c.term_count() != 1) return false;
    const auto& e = c.terms().front().exponent;
    return e.total_degree() == 1 && e[v] == 1;
  };
  for (std::size_t y = n; y-- > 0;) {
    Corank1NormalForm nf;
    nf.y = y;
    std::vector<bool> used(f.p(), false);
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      if (v == y) continue;
      ok = false;
      for (std::size_t i = 0; i < f.p(); ++i) {
        if (!used[i] && is_scaled_variable(f[i], v)) {
          used[i] = true;
          nf.plain_variables.push_back(v);
          nf.plain_coords.push_back(i);
          ok = true;
          break;
        }
      }
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < f.p(); ++i)
      if (!used[i]) nf.remaining_coords.push_back(i);
    return nf;
  }
  return std::nullopt;
}

// (g(..,y,..) - g(..,y',..)) / (y - y') over `target`, where target
// extends g's ring with the companion y'.
inline Polynomial divided_difference_in(const Polynomial& g, std::size_t y, const Ring& target) {
  const auto yp = target->companion(y);
  if (!yp) throw InputError("target ring lacks a companion for the divided variable");
  std::vector<Term> out;
  for (const auto& t : g.terms()) {
    const auto a = t.exponent[y];
    for (std::uint32_t s = 0; s < a; ++s) {
      ExponentVector e(target->size());
      for (std::size_t i = 0; i < t.exponent.size(); ++i) e[i] = t.exponent[i];
      e[y] = s;
      e[*yp] = a - 1 - s;
      out.push_back({std::move(e), t.coeff});
    }
  }
  return Polynomial::from_terms(target, std::move(out));
}

// The ideal of y-divided differences of the non-plain coordinates, over
// O_{n+1}. Used by d_corank1.
inline Ideal corank1_divided_ideal(const MapGerm& f, const Corank1NormalForm& nf) {
  const Ring target = f.ring()->primed_extension_of({nf.y});
  std::vector<Polynomial> gens;
  for (std::size_t i : nf.remaining_coords) gens.push_back(divided_difference_in(f[i], nf.y, target));
  return Ideal(target, MonomialOrder::negdegrevlex, std::move(gens));
}

// d(f) for corank <= 1 germs via the complete-intersection structure of
// the double point space. Germs of corank 0 are accepted (they are in
// normal form for any choice of y among the non-plain variables).
inline std::uint64_t d_corank1(const MapGerm& f, const InvariantOptions& opt = {}) {
  require_equidimensional_double(f, "d_corank1");
  if (corank(f) > 1) throw InputError("d_corank1: germ is not of corank 1");
  const auto nf = find_corank1_normal_form(f);
  if (!nf) throw InputError("d_corank1: germ is not in normal form and not normalizable by coordinate permutation");
  return half_colength(colength(corank1_divided_ideal(f, *nf), opt.sb), "d_corank1");
}

// 2 d(f) as the length of <x - x'> / I_Delta^2(f).
inline std::uint64_t epsilon_artin_nagata(const MapGerm& f, const InvariantOptions& opt = {}) {
  require_equidimensional_double(f, "epsilon_artin_nagata");
  return finite_module_length(diagonal_ideal(f), pullback_ideal(f), opt.module_length());
}

// colength(Q) - colength(<x - x'> + Q) for a caller-supplied m-primary
// component Q of I_Delta^2(f). The decomposition itself is not checked.
inline std::int64_t epsilon_from_decomposition(const MapGerm& f, const Ideal& Q, const InvariantOptions& opt = {}) {
  require_same_ring(Q.ring(), f.primed_ring(), "epsilon_from_decomposition");
  const auto cq = colength(Q, opt.sb);
  if (!cq.is_finite()) throw NotFiniteError("epsilon_from_decomposition: Q has infinite colength");
  const auto cs = colength(ideal_sum(diagonal_ideal(f), Q), opt.sb);
  return static_cast<std::int64_t>(*cq.value) - static_cast<std::int64_t>(*cs.value);
}

}  // namespace germinv
