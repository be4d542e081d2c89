#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "germinv/double_point.hpp"
#include "germinv/error.hpp"
#include "germinv/polynomial.hpp"

namespace germinv {

// Weights w_1..w_n (positive, gcd 1) and the weighted degrees d_1..d_p of
// the coordinates.
struct WeightData {
  std::vector<std::uint64_t> weights;
  std::vector<std::uint64_t> degrees;

  friend bool operator==(const WeightData&, const WeightData&) = default;
};

inline std::uint64_t weighted_degree(const ExponentVector& e, const std::vector<std::uint64_t>& w) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += e[i] * w[i];
  return s;
}

// Term-by-term certificate: every term of f_i has weighted degree d_i.
inline bool certifies(const MapGerm& f, const WeightData& wd) {
  if (wd.weights.size() != f.n() || wd.degrees.size() != f.p()) return false;
  for (std::size_t i = 0; i < f.p(); ++i)
    for (const auto& t : f[i].terms())
      if (weighted_degree(t.exponent, wd.weights) != wd.degrees[i]) return false;
  return true;
}

namespace detail {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Basis of {w : M w = 0} from the reduced row echelon form.
inline RationalMatrix null_space(RationalMatrix m, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    const Rational inv = 1 / m[rank][c];
    for (auto& v : m[rank]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational factor = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  RationalMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Rational> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t matrix_rank(RationalMatrix m) { return rational_rank(std::move(m)); }

// Lexicographically smallest vector of positive integers <= bound with
// M w = 0, found by depth-first search. A prefix is extended only while
// the remaining linear system stays solvable over Q.
inline std::optional<std::vector<std::uint64_t>> smallest_positive_point(const RationalMatrix& m, std::size_t cols,
                                                                         std::uint64_t bound) {
  std::vector<std::uint64_t> w(cols, 0);
  auto solvable = [&](std::size_t fixed) {
    if (m.empty()) return true;
    RationalMatrix rest, aug;
    for (const auto& row : m) {
      std::vector<Rational> r(row.begin() + static_cast<std::ptrdiff_t>(fixed), row.end());
      Rational rhs = 0;
      for (std::size_t k = 0; k < fixed; ++k) rhs -= row[k] * w[k];
      auto a = r;
      a.push_back(rhs);
      rest.push_back(std::move(r));
      aug.push_back(std::move(a));
    }
    if (fixed == cols) {
      for (const auto& a : aug)
        if (a.back() != 0) return false;
      return true;
    }
    return matrix_rank(rest) == matrix_rank(aug);
  };
  auto dfs = [&](auto&& self, std::size_t i) -> bool {
    if (i == cols) return solvable(cols);
    for (std::uint64_t v = 1; v <= bound; ++v) {
      w[i] = v;
      if (solvable(i + 1) && self(self, i + 1)) return true;
    }
    return false;
  };
  if (dfs(dfs, 0)) return w;
  return std::nullopt;
}

}  // namespace detail

// Finds weights making every coordinate quasihomogeneous. A 1-dimensional
// solution space yields its primitive positive generator; a larger one
// yields the lexicographically smallest positive integer point (entries up
// to `search_bound`). Zero coordinates have no weighted degree, so any
// germ with one is reported as not quasihomogeneous.
inline std::optional<WeightData> detect_weights(const MapGerm& f, std::uint64_t search_bound = 64) {
  const std::size_t n = f.n();
  detail::RationalMatrix constraints;
  for (const auto& c : f.coords()) {
    if (c.is_zero()) return std::nullopt;
    const auto& first = c.terms().front().exponent;
    for (std::size_t t = 1; t < c.terms().size(); ++t) {
      std::vector<Rational> row(n);
      for (std::size_t j = 0; j < n; ++j)
        row[j] = Rational(static_cast<long>(c.terms()[t].exponent[j])) - Rational(static_cast<long>(first[j]));
      constraints.push_back(std::move(row));
    }
  }

  const auto basis = detail::null_space(constraints, n);
  std::vector<std::uint64_t> weights;
  if (basis.empty()) return std::nullopt;
  if (basis.size() == 1) {
    const auto& v = basis.front();
    mpz_class lcm_den = 1;
    for (const auto& q : v) lcm_den = lcm(lcm_den, q.get_den());
    std::vector<mpz_class> ints;
    for (const auto& q : v) ints.push_back(q.get_num() * (lcm_den / q.get_den()));
    const bool all_pos = std::all_of(ints.begin(), ints.end(), [](const mpz_class& z) { return z > 0; });
    const bool all_neg = std::all_of(ints.begin(), ints.end(), [](const mpz_class& z) { return z < 0; });
    if (!all_pos && !all_neg) return std::nullopt;
    mpz_class g = 0;
    for (const auto& z : ints) g = gcd(g, z);
    for (auto& z : ints) {
      z = abs(z) / g;
      if (!z.fits_ulong_p()) return std::nullopt;
      weights.push_back(z.get_ui());
    }
  } else {
    auto point = detail::smallest_positive_point(constraints, n, search_bound);
    if (!point) return std::nullopt;
    weights = std::move(*point);
  }

  WeightData wd{weights, {}};
  for (const auto& c : f.coords()) wd.degrees.push_back(weighted_degree(c.terms().front().exponent, weights));
  if (!certifies(f, wd)) throw InconsistencyError("detect_weights produced weights that fail the certificate");
  return wd;
}

// Reorders a corank <= 1 germ into normal form: plain variables first and
// the distinguished variable last; plain coordinates first (matching the
// variable order), then the remaining coordinates.
inline MapGerm normalize_corank1(const MapGerm& f) {
  const auto nf = find_corank1_normal_form(f);
  if (!nf) throw InputError("germ is not normalizable to corank-1 normal form by permutation");
  std::vector<std::string> names;
  std::vector<std::size_t> var_map(f.n());
  for (std::size_t k = 0; k < nf->plain_variables.size(); ++k) {
    var_map[nf->plain_variables[k]] = k;
    names.push_back((*f.ring())[nf->plain_variables[k]].name);
  }
  var_map[nf->y] = f.n() - 1;
  names.push_back((*f.ring())[nf->y].name);
  const Ring ring = VariableSet::plain(names);
  std::vector<Polynomial> coords;
  for (std::size_t i : nf->plain_coords) coords.push_back(f[i].relabeled(ring, var_map));
  for (std::size_t i : nf->remaining_coords) coords.push_back(f[i].relabeled(ring, var_map));
  return MapGerm(ring, std::move(coords));
}

// prod_{i=n}^{2n} (d_i - w_n) / (2 w_n^2 prod_{j<n} w_j), with the degrees
// ordered as in the corank-1 normal form.
inline Rational d_qh_corank1(const WeightData& wd, std::size_t n) {
  if (n == 0 || wd.weights.size() != n || wd.degrees.size() != 2 * n)
    throw InputError("d_qh_corank1 needs n weights and 2n degrees");
  const Rational wn(static_cast<unsigned long>(wd.weights[n - 1]));
  Rational num = 1;
  for (std::size_t i = n - 1; i < 2 * n; ++i) num *= Rational(static_cast<unsigned long>(wd.degrees[i])) - wn;
  Rational den = 2 * wn * wn;
  for (std::size_t j = 0; j + 1 < n; ++j) den *= static_cast<unsigned long>(wd.weights[j]);
  if (den == 0) throw InputError("d_qh_corank1: zero denominator");
  return num / den;
}

enum class FormulaStatus { proved, conjectural };

struct QhFormulaValue {
  Rational value;
  FormulaStatus status;
  bool integral() const { return value.get_den() == 1; }
};

namespace detail {

// Elementary symmetric polynomials e_0..e_m of the values.
inline std::vector<Rational> elementary_symmetric(const std::vector<Rational>& vals) {
  std::vector<Rational> e(vals.size() + 1, 0);
  e[0] = 1;
  for (const auto& v : vals)
    for (std::size_t k = e.size() - 1; k > 0; --k) e[k] += e[k - 1] * v;
  return e;
}

// Sum of w^beta over beta with every beta_j in [1, n+1] and |beta| = total.
inline Rational weight_power_sum(const std::vector<Rational>& w, std::uint64_t total) {
  const std::size_t n = w.size();
  Rational acc = 0;
  std::vector<std::uint64_t> beta(n, 1);
  auto rec = [&](auto&& self, std::size_t j, std::uint64_t left, Rational prod) -> void {
    if (j + 1 == n) {
      if (left < 1 || left > n + 1) return;
      Rational p = prod;
      for (std::uint64_t k = 0; k < left; ++k) p *= w[j];
      acc += p;
      return;
    }
    Rational p = prod;
    for (std::uint64_t b = 1; b <= n + 1 && b < left; ++b) {
      p *= w[j];
      self(self, j + 1, left - b, p);
    }
  };
  if (n == 0) return total == 0 ? 1 : 0;
  rec(rec, 0, total, Rational(1));
  return acc;
}

}  // namespace detail

// Closed form for d(f) of a quasihomogeneous germ (C^n,0) -> (C^2n,0):
//
//   d = [ d_1..d_2n + sum_{alpha+beta=2n} (-1)^(n+alpha+1) e_alpha(d) w^beta ]
//       / (2 w_1^2 .. w_n^2)
//
// where alpha counts a subset of the degrees (each used at most once) and
// beta ranges over weight monomials using every w_j at least once. For
// n = 1 this is the corank-1 formula. Proved for n <= 3, conjectural above.
inline QhFormulaValue d_qh_general(const WeightData& wd, std::size_t n) {
  if (n == 0 || wd.weights.size() != n || wd.degrees.size() != 2 * n)
    throw InputError("d_qh_general needs n weights and 2n degrees");
  std::vector<Rational> d, w;
  for (auto v : wd.degrees) d.emplace_back(static_cast<unsigned long>(v));
  for (auto v : wd.weights) w.emplace_back(static_cast<unsigned long>(v));
  const auto e = detail::elementary_symmetric(d);

  Rational sum = e[2 * n];
  for (std::size_t alpha = 0; alpha <= n; ++alpha) {
    const Rational term = e[alpha] * detail::weight_power_sum(w, 2 * n - alpha);
    if ((n + alpha + 1) % 2 == 0) sum += term;
    else sum -= term;
  }
  Rational den = 2;
  for (const auto& wj : w) den *= wj * wj;
  return {sum / den, n <= 3 ? FormulaStatus::proved : FormulaStatus::conjectural};
}

// The published explicit n = 2 expansion, term for term:
//
//   [d1d2d3d4 - e2(d) w1w2 - e1(d)(w1^2 w2 + w1 w2^2)] / (2 w1^2 w2^2)
//     + (w1^2 + w1w2 + w2^2) / (2 w1 w2)
//
// Kept for comparison only; its signs on the last two groups disagree with
// d_qh_general and with the colength oracle.
inline Rational d_qh_n2_printed_expansion(const WeightData& wd) {
  if (wd.weights.size() != 2 || wd.degrees.size() != 4) throw InputError("printed expansion is for n = 2");
  std::vector<Rational> d;
  for (auto v : wd.degrees) d.emplace_back(static_cast<unsigned long>(v));
  const Rational w1(static_cast<unsigned long>(wd.weights[0])), w2(static_cast<unsigned long>(wd.weights[1]));
  const auto e = detail::elementary_symmetric(d);
  const Rational bracket = e[4] - e[2] * w1 * w2 - e[1] * (w1 * w1 * w2 + w1 * w2 * w2);
  return bracket / (2 * w1 * w1 * w2 * w2) + (w1 * w1 + w1 * w2 + w2 * w2) / (2 * w1 * w2);
}

}  // namespace germinv
