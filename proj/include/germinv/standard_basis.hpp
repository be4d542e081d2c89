#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "germinv/error.hpp"
#include "germinv/polynomial.hpp"

namespace germinv {

struct SbOptions {
  // Largest total degree any basis element or staircase sweep may reach.
  std::uint64_t degree_bound = 64;
  // Cap on top-level reduction steps across one standard-basis run.
  std::uint64_t step_bound = 5'000'000;
};

class Ideal {
 public:
  Ideal(Ring ring, MonomialOrder order, std::vector<Polynomial> generators)
      : ring_(std::move(ring)), order_(order) {
    for (auto& g : generators) {
      require_same_ring(g.ring(), ring_, "ideal construction");
      if (!g.is_zero()) gens_.push_back(std::move(g));
    }
  }

  const Ring& ring() const noexcept { return ring_; }
  MonomialOrder order() const noexcept { return order_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  bool is_zero() const noexcept { return gens_.empty(); }

 private:
  Ring ring_;
  MonomialOrder order_;
  std::vector<Polynomial> gens_;
};

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_sum");
  if (a.order() != b.order()) throw InputError("ideal_sum: monomial orders differ");
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring(), a.order(), std::move(gens));
}

namespace detail {

// Calls fn(e) for every exponent vector of total degree `deg` in `n`
// variables, in lexicographic order of the vector.
template <class Fn>
bool for_each_monomial_of_degree(std::size_t n, std::uint64_t deg, Fn&& fn) {
  if (n == 0) return deg == 0 ? fn(ExponentVector{}) : true;
  ExponentVector e(n);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> bool {
    if (i + 1 == n) {
      e[i] = static_cast<ExponentVector::value_type>(left);
      return fn(e);
    }
    for (std::uint64_t v = left + 1; v-- > 0;) {
      e[i] = static_cast<ExponentVector::value_type>(v);
      if (!self(self, i + 1, left - v)) return false;
    }
    return true;
  };
  return rec(rec, 0, deg);
}

}  // namespace detail

inline Ideal power_of_maximal(const Ring& ring, std::uint64_t k, MonomialOrder order = MonomialOrder::negdegrevlex) {
  std::vector<Polynomial> gens;
  detail::for_each_monomial_of_degree(ring->size(), k, [&](const ExponentVector& e) {
    gens.push_back(Polynomial::monomial(ring, e, 1));
    return true;
  });
  return Ideal(ring, order, std::move(gens));
}

// ---------------------------------------------------------------------------
// Staircases and colength
// ---------------------------------------------------------------------------

struct Colength {
  std::optional<std::uint64_t> value;  // nullopt means infinite

  static Colength finite(std::uint64_t v) { return {v}; }
  static Colength infinite() { return {std::nullopt}; }
  bool is_finite() const noexcept { return value.has_value(); }
  friend bool operator==(const Colength&, const Colength&) = default;
};

// Keeps only the minimal elements under divisibility.
inline std::vector<ExponentVector> minimal_generators(std::vector<ExponentVector> lead) {
  std::sort(lead.begin(), lead.end(),
            [](const ExponentVector& a, const ExponentVector& b) { return a.total_degree() < b.total_degree(); });
  std::vector<ExponentVector> out;
  for (auto& e : lead) {
    bool redundant = false;
    for (const auto& m : out)
      if (m.divides(e)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(std::move(e));
  }
  return out;
}

inline bool in_monomial_ideal(const std::vector<ExponentVector>& gens, const ExponentVector& e) {
  for (const auto& g : gens)
    if (g.divides(e)) return true;
  return false;
}

struct StaircaseInfo {
  Colength colength;
  // Smallest degree D with every monomial of degree D in the monomial
  // ideal (so m^D lies in it); set when the colength is finite.
  std::optional<std::uint64_t> corner_degree;
};

// Counts the monomials outside the monomial ideal generated by `lead`.
// The complement is finite iff every variable has a pure power among the
// generators; it is then swept degree by degree until a degree level is
// entirely covered.
inline StaircaseInfo analyze_staircase(std::size_t nvars, const std::vector<ExponentVector>& lead,
                                       std::uint64_t degree_bound) {
  const auto gens = minimal_generators(lead);
  std::vector<bool> has_pure(nvars, false);
  for (const auto& g : gens) {
    if (g.is_zero()) return {Colength::finite(0), 0};
    std::size_t support = 0, var = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (g[i] != 0) {
        ++support;
        var = i;
      }
    if (support == 1) has_pure[var] = true;
  }
  if (!std::all_of(has_pure.begin(), has_pure.end(), [](bool b) { return b; }))
    return {Colength::infinite(), std::nullopt};

  std::uint64_t count = 0;
  for (std::uint64_t deg = 0;; ++deg) {
    if (deg > degree_bound)
      throw BoundExceeded("staircase does not close below degree bound " + std::to_string(degree_bound));
    std::uint64_t outside = 0;
    detail::for_each_monomial_of_degree(nvars, deg, [&](const ExponentVector& e) {
      if (!in_monomial_ideal(gens, e)) ++outside;
      return true;
    });
    if (outside == 0) return {Colength::finite(count), deg};
    count += outside;
  }
}

// Standard monomials (outside the staircase), for finite staircases.
inline std::vector<ExponentVector> standard_monomials(std::size_t nvars, const std::vector<ExponentVector>& lead,
                                                      std::uint64_t degree_bound = 64) {
  const auto info = analyze_staircase(nvars, lead, degree_bound);
  if (!info.colength.is_finite()) throw NotFiniteError("staircase complement is infinite");
  const auto gens = minimal_generators(lead);
  std::vector<ExponentVector> out;
  for (std::uint64_t deg = 0; deg < *info.corner_degree; ++deg)
    detail::for_each_monomial_of_degree(nvars, deg, [&](const ExponentVector& e) {
      if (!in_monomial_ideal(gens, e)) out.push_back(e);
      return true;
    });
  return out;
}

// ---------------------------------------------------------------------------
// Working representation for the standard-basis engine
// ---------------------------------------------------------------------------

namespace detail {

// Terms sorted descending under the engine's monomial order; front() is
// the leading term.
struct WorkPoly {
  std::vector<Term> terms;
  std::uint64_t max_degree = 0;
  std::uint64_t sugar = 0;

  bool zero() const noexcept { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
  std::uint64_t lead_degree() const { return terms.front().exponent.total_degree(); }
  std::uint64_t ecart() const { return max_degree - lead_degree(); }

  void refresh_degree() {
    max_degree = 0;
    for (const auto& t : terms) max_degree = std::max(max_degree, t.exponent.total_degree());
  }
};

inline WorkPoly to_work(const Polynomial& p, MonomialOrder order, std::uint64_t trunc) {
  WorkPoly w;
  for (const auto& t : p.terms())
    if (t.exponent.total_degree() < trunc) w.terms.push_back(t);
  std::sort(w.terms.begin(), w.terms.end(),
            [order](const Term& a, const Term& b) { return compare(a.exponent, b.exponent, order) > 0; });
  w.refresh_degree();
  w.sugar = w.max_degree;
  return w;
}

inline void truncate(WorkPoly& w, std::uint64_t trunc) {
  if (trunc == std::numeric_limits<std::uint64_t>::max()) return;
  std::erase_if(w.terms, [trunc](const Term& t) { return t.exponent.total_degree() >= trunc; });
  w.refresh_degree();
}

// a - c * x^m * b, with the result truncated below degree `trunc`.
inline WorkPoly sub_mul(const WorkPoly& a, const Rational& c, const ExponentVector& m, const WorkPoly& b,
                        MonomialOrder order, std::uint64_t trunc) {
  WorkPoly r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  Term shifted;
  bool have_shifted = false;
  auto next_b = [&]() -> bool {
    while (j < b.terms.size()) {
      shifted.exponent = b.terms[j].exponent + m;
      if (shifted.exponent.total_degree() >= trunc) {
        ++j;
        continue;
      }
      shifted.coeff = -c * b.terms[j].coeff;
      ++j;
      return true;
    }
    return false;
  };
  have_shifted = next_b();
  while (i < a.terms.size() || have_shifted) {
    int cmp;
    if (i == a.terms.size()) cmp = -1;
    else if (!have_shifted) cmp = 1;
    else cmp = compare(a.terms[i].exponent, shifted.exponent, order);
    if (cmp > 0) {
      if (a.terms[i].exponent.total_degree() < trunc) r.terms.push_back(a.terms[i]);
      ++i;
    } else if (cmp < 0) {
      r.terms.push_back(shifted);
      have_shifted = next_b();
    } else {
      Rational s = a.terms[i].coeff + shifted.coeff;
      if (s != 0 && shifted.exponent.total_degree() < trunc) r.terms.push_back({shifted.exponent, std::move(s)});
      ++i;
      have_shifted = next_b();
    }
  }
  r.refresh_degree();
  return r;
}

// Cancels the leading term of h against g.
inline WorkPoly reduce_lead(const WorkPoly& h, const WorkPoly& g, MonomialOrder order, std::uint64_t trunc) {
  const ExponentVector m = h.lead().exponent - g.lead().exponent;
  Rational c = h.lead().coeff / g.lead().coeff;
  WorkPoly r = sub_mul(h, c, m, g, order, trunc);
  r.sugar = std::max(h.sugar, g.sugar + m.total_degree());
  return r;
}

inline WorkPoly spoly(const WorkPoly& f, const WorkPoly& g, MonomialOrder order, std::uint64_t trunc) {
  const ExponentVector l = lcm(f.lead().exponent, g.lead().exponent);
  const ExponentVector mf = l - f.lead().exponent;
  const ExponentVector mg = l - g.lead().exponent;
  WorkPoly fs;
  fs.terms.reserve(f.terms.size());
  for (const auto& t : f.terms) {
    ExponentVector e = t.exponent + mf;
    if (e.total_degree() < trunc) fs.terms.push_back({std::move(e), t.coeff / f.lead().coeff});
  }
  fs.refresh_degree();
  WorkPoly gs = g;
  Rational inv = 1 / g.lead().coeff;
  for (auto& t : gs.terms) t.coeff *= inv;
  WorkPoly r = sub_mul(fs, 1, mg, gs, order, trunc);
  r.sugar = std::max(f.sugar + mf.total_degree(), g.sugar + mg.total_degree());
  return r;
}

inline Polynomial from_work(const Ring& ring, const WorkPoly& w) { return Polynomial::from_terms(ring, w.terms); }

// Mora's normal form with ecart-driven reducer selection. Polynomials in
// `basis` with index in `skip` are ignored. When `trunc` is finite every
// term of degree >= trunc is discarded, which is valid only when m^trunc
// lies in the ideal.
inline WorkPoly mora_nf(WorkPoly h, const std::vector<WorkPoly>& basis, MonomialOrder order, std::uint64_t trunc,
                        std::uint64_t& steps, std::uint64_t step_bound,
                        std::uint64_t degree_bound = std::numeric_limits<std::uint64_t>::max()) {
  std::vector<WorkPoly> extra;  // earlier intermediate results
  while (!h.zero()) {
    const ExponentVector& lm = h.lead().exponent;
    // Reducer with minimal ecart; ties keep the earliest candidate.
    const WorkPoly* best = nullptr;
    for (const auto& g : basis)
      if (!g.zero() && g.lead().exponent.divides(lm) && (!best || g.ecart() < best->ecart())) best = &g;
    for (const auto& g : extra)
      if (g.lead().exponent.divides(lm) && (!best || g.ecart() < best->ecart())) best = &g;
    if (!best) break;
    if (++steps > step_bound) throw BoundExceeded("standard basis step bound exceeded");
    WorkPoly next = reduce_lead(h, *best, order, trunc);
    if (best->ecart() > h.ecart()) extra.push_back(std::move(h));
    h = std::move(next);
    if (!h.zero() && h.max_degree > degree_bound)
      throw BoundExceeded("normal form exceeds degree bound " + std::to_string(degree_bound));
  }
  return h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Standard bases
// ---------------------------------------------------------------------------

class StandardBasis {
 public:
  const Ideal& ideal() const noexcept { return ideal_; }
  const std::vector<Polynomial>& basis() const noexcept { return basis_; }
  const std::vector<ExponentVector>& leading_exponents() const noexcept { return leading_; }
  // Degree D with m^D contained in the ideal, when known.
  std::optional<std::uint64_t> corner_degree() const noexcept { return corner_; }

  std::set<ExponentVector> leading_exponent_set() const { return {leading_.begin(), leading_.end()}; }

  std::vector<ExponentVector> minimal_leading_exponents() const { return minimal_generators(leading_); }

  // Mora weak normal form of p with respect to this basis.
  Polynomial normal_form(const Polynomial& p) const {
    require_same_ring(p.ring(), ideal_.ring(), "normal_form");
    const auto trunc = corner_ ? *corner_ : std::numeric_limits<std::uint64_t>::max();
    std::vector<detail::WorkPoly> work;
    work.reserve(basis_.size());
    for (const auto& b : basis_) work.push_back(detail::to_work(b, ideal_.order(), std::numeric_limits<std::uint64_t>::max()));
    std::uint64_t steps = 0;
    auto h = detail::mora_nf(detail::to_work(p, ideal_.order(), trunc), work, ideal_.order(), trunc, steps,
                             options_.step_bound);
    return detail::from_work(ideal_.ring(), h);
  }

  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }

  Colength colength() const {
    return analyze_staircase(ideal_.ring()->size(), leading_, options_.degree_bound).colength;
  }

 private:
  friend StandardBasis standard_basis(const Ideal&, const SbOptions&);
  StandardBasis(Ideal ideal, SbOptions options) : ideal_(std::move(ideal)), options_(options) {}

  Ideal ideal_;
  SbOptions options_;
  std::vector<Polynomial> basis_;
  std::vector<ExponentVector> leading_;
  std::optional<std::uint64_t> corner_;
};

namespace detail {

struct Pair {
  std::uint64_t sugar;
  std::size_t i, j;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

}  // namespace detail

// Buchberger completion with Mora normal forms. Pairs are processed by
// ascending sugar degree, ties broken lexicographically on (i, j). Under a
// local order, once the leading monomials cover m^D (a highest corner) all
// terms of degree >= D are dropped and elements whose leading monomial has
// degree >= D take no further part in pair generation.
inline StandardBasis standard_basis(const Ideal& ideal, const SbOptions& options = {}) {
  using detail::WorkPoly;
  constexpr auto kNoTrunc = std::numeric_limits<std::uint64_t>::max();
  const MonomialOrder order = ideal.order();
  const std::size_t nvars = ideal.ring()->size();

  std::vector<WorkPoly> S;
  for (const auto& g : ideal.generators()) S.push_back(detail::to_work(g, order, kNoTrunc));

  std::uint64_t trunc = kNoTrunc;
  std::uint64_t steps = 0;

  auto update_corner = [&]() {
    if (!is_local(order)) return;
    std::vector<ExponentVector> lead;
    for (const auto& s : S)
      if (!s.zero()) lead.push_back(s.lead().exponent);
    // Do not let the staircase sweep itself hit the bound here; the final
    // colength query reports that.
    StaircaseInfo info;
    try {
      info = analyze_staircase(nvars, lead, options.degree_bound);
    } catch (const BoundExceeded&) {
      return;
    }
    if (!info.corner_degree || *info.corner_degree >= trunc) return;
    trunc = *info.corner_degree;
    for (auto& s : S)
      if (!s.zero() && s.lead_degree() < trunc) detail::truncate(s, trunc);
  };

  auto inert = [&](std::size_t i) { return S[i].zero() || S[i].lead_degree() >= trunc; };

  std::set<detail::Pair> pairs;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (inert(i) || inert(j)) continue;
      const auto& a = S[i].lead().exponent;
      const auto& b = S[j].lead().exponent;
      if (coprime(a, b)) continue;  // product criterion
      const ExponentVector l = lcm(a, b);
      const std::uint64_t sugar = std::max(S[i].sugar + (l - a).total_degree(), S[j].sugar + (l - b).total_degree());
      pairs.insert({sugar, i, j});
    }
  };

  update_corner();
  for (std::size_t j = 0; j < S.size(); ++j) add_pairs_for(j);

  while (!pairs.empty()) {
    const detail::Pair pr = *pairs.begin();
    pairs.erase(pairs.begin());
    if (inert(pr.i) || inert(pr.j)) continue;
    if (++steps > options.step_bound) throw BoundExceeded("standard basis step bound exceeded");

    WorkPoly s = detail::spoly(S[pr.i], S[pr.j], order, trunc);
    WorkPoly h = detail::mora_nf(std::move(s), S, order, trunc, steps, options.step_bound, options.degree_bound);
    if (h.zero()) continue;
    if (h.max_degree > options.degree_bound)
      throw BoundExceeded("standard basis element exceeds degree bound " + std::to_string(options.degree_bound));
    S.push_back(std::move(h));
    update_corner();
    add_pairs_for(S.size() - 1);
  }

  StandardBasis sb(ideal, options);
  sb.corner_ = trunc == kNoTrunc ? std::nullopt : std::optional<std::uint64_t>(trunc);
  for (const auto& s : S) {
    if (s.zero()) continue;
    sb.basis_.push_back(detail::from_work(ideal.ring(), s));
    sb.leading_.push_back(s.lead().exponent);
  }
  return sb;
}

inline Polynomial mora_normal_form(const Polynomial& p, const std::vector<Polynomial>& G, MonomialOrder order,
                                   const SbOptions& options = {}) {
  constexpr auto kNoTrunc = std::numeric_limits<std::uint64_t>::max();
  std::vector<detail::WorkPoly> work;
  for (const auto& g : G) {
    require_same_ring(g.ring(), p.ring(), "mora_normal_form");
    if (!g.is_zero()) work.push_back(detail::to_work(g, order, kNoTrunc));
  }
  std::uint64_t steps = 0;
  return detail::from_work(p.ring(), detail::mora_nf(detail::to_work(p, order, kNoTrunc), work, order, kNoTrunc,
                                                     steps, options.step_bound));
}

inline Colength colength(const Ideal& ideal, const SbOptions& options = {}) {
  if (!is_local(ideal.order())) throw InputError("colength requires a local monomial order");
  return standard_basis(ideal, options).colength();
}

// dim O/(I + m^k); always finite.
inline std::uint64_t hs_truncation(const Ideal& ideal, std::uint64_t k, const SbOptions& options = {}) {
  if (k == 0) throw InputError("hs_truncation requires k >= 1");
  const Ideal sum = ideal_sum(ideal, power_of_maximal(ideal.ring(), k, ideal.order()));
  const auto c = colength(sum, options);
  return *c.value;
}

struct ModuleLengthOptions {
  SbOptions sb;
  std::uint64_t k_cap = 40;
};

// length(P/I) for I contained in P, via the eventual constant difference
// of the Hilbert-Samuel truncations of O/I and O/P. Stops once three
// consecutive k give the same difference.
inline std::uint64_t finite_module_length(const Ideal& P, const Ideal& I, const ModuleLengthOptions& options = {}) {
  require_same_ring(P.ring(), I.ring(), "finite_module_length");
  if (P.order() != I.order()) throw InputError("finite_module_length: monomial orders differ");
  const auto sbP = standard_basis(P, options.sb);
  for (std::size_t i = 0; i < I.generators().size(); ++i)
    if (!sbP.contains(I.generators()[i]))
      throw InputError("not contained: generator " + std::to_string(i + 1) + " of I is not in P");

  std::vector<std::int64_t> diffs;
  for (std::uint64_t k = 1; k <= options.k_cap; ++k) {
    const auto hi = hs_truncation(I, k, options.sb);
    const auto hp = hs_truncation(P, k, options.sb);
    diffs.push_back(static_cast<std::int64_t>(hi) - static_cast<std::int64_t>(hp));
    const std::size_t m = diffs.size();
    if (m >= 3 && diffs[m - 1] == diffs[m - 2] && diffs[m - 2] == diffs[m - 3])
      return static_cast<std::uint64_t>(diffs.back());
  }
  throw BoundExceeded("no stabilization within k-cap " + std::to_string(options.k_cap) +
                      " (quotient is not of finite length)");
}

}  // namespace germinv
