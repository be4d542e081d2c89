#pragma once

#include <vector>

#include "germinv/error.hpp"
#include "germinv/polynomial.hpp"

namespace germinv {

class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols, Ring ring)
      : rows_(rows), cols_(cols), ring_(ring), entries_(rows * cols, Polynomial(ring)) {
    if (rows == 0 || cols == 0) throw InputError("matrix dimensions must be positive");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Ring& ring() const noexcept { return ring_; }

  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }

  void set(std::size_t r, std::size_t c, Polynomial p) {
    require_same_ring(p.ring(), ring_, "matrix entry");
    entries_.at(r * cols_ + c) = std::move(p);
  }

  const std::vector<Polynomial>& entries() const noexcept { return entries_; }

 private:
  std::size_t rows_, cols_;
  Ring ring_;
  std::vector<Polynomial> entries_;
};

// One row per polynomial, one column per variable index in `vars`.
inline PolyMatrix jacobian(const std::vector<Polynomial>& polys, const std::vector<std::size_t>& vars) {
  if (polys.empty() || vars.empty()) throw InputError("jacobian of an empty system");
  PolyMatrix m(polys.size(), vars.size(), polys.front().ring());
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = 0; j < vars.size(); ++j) m.set(i, j, partial_derivative(polys[i], vars[j]));
  return m;
}

inline PolyMatrix jacobian(const std::vector<Polynomial>& polys) {
  if (polys.empty()) throw InputError("jacobian of an empty system");
  std::vector<std::size_t> vars(polys.front().ring()->size());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i;
  return jacobian(polys, vars);
}

// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

namespace detail {

// Laplace expansion along the first selected row.
inline Polynomial determinant(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                              std::size_t row_offset, std::vector<std::size_t>& cols) {
  const std::size_t k = cols.size();
  if (k == 1) return m(rows[row_offset], cols[0]);
  Polynomial acc(m.ring());
  for (std::size_t c = 0; c < k; ++c) {
    const Polynomial& entry = m(rows[row_offset], cols[c]);
    if (entry.is_zero()) continue;
    std::vector<std::size_t> rest;
    rest.reserve(k - 1);
    for (std::size_t j = 0; j < k; ++j)
      if (j != c) rest.push_back(cols[j]);
    Polynomial sub = entry * determinant(m, rows, row_offset + 1, rest);
    if (c % 2 == 0) acc += sub;
    else acc -= sub;
  }
  return acc;
}

}  // namespace detail

inline Polynomial determinant(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                              std::vector<std::size_t> cols) {
  if (rows.size() != cols.size() || rows.empty()) throw InputError("determinant of a non-square selection");
  return detail::determinant(m, rows, 0, cols);
}

// All k x k minors, row subsets outer and column subsets inner, both in
// lexicographic order.
inline std::vector<Polynomial> minors(const PolyMatrix& m, std::size_t k) {
  if (k == 0 || k > std::min(m.rows(), m.cols()))
    throw InputError("minor size " + std::to_string(k) + " out of range");
  std::vector<Polynomial> out;
  const auto row_sets = combinations(m.rows(), k);
  const auto col_sets = combinations(m.cols(), k);
  out.reserve(row_sets.size() * col_sets.size());
  for (const auto& r : row_sets)
    for (const auto& c : col_sets) out.push_back(determinant(m, r, c));
  return out;
}

// Divided difference of f along plain variable `j` (an index into
// plain_indices() of f's ring), as a polynomial over `primed`, which must
// extend f's ring with a companion for every plain variable:
//
//   [f(x1',..,x(j-1)', xj,..,xn) - f(x1',..,xj', x(j+1),..,xn)] / (xj - xj')
//
// Summing these times (xj - xj') over all j telescopes to f(x) - f(x').
inline Polynomial divided_difference(const Polynomial& f, std::size_t j, const Ring& primed) {
  const auto& src = *f.ring();
  const auto plain = src.plain_indices();
  if (j >= plain.size()) throw InputError("divided-difference column out of range");

  std::vector<std::size_t> to_target(src.size());
  std::vector<std::size_t> to_primed(src.size(), primed->size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto t = primed->index_of(src[i].name);
    if (!t) throw InputError("primed ring does not contain '" + src[i].name + "'");
    to_target[i] = *t;
    if (src[i].role == VariableRole::plain) {
      auto c = primed->companion(*t);
      if (!c) throw InputError("primed ring lacks a companion for '" + src[i].name + "'");
      to_primed[i] = *c;
    }
  }

  const std::size_t var = plain[j];
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    const auto a = t.exponent[var];
    if (a == 0) continue;
    ExponentVector base(primed->size());
    for (std::size_t k = 0; k < plain.size(); ++k) {
      const std::size_t v = plain[k];
      if (k < j) base[to_primed[v]] += t.exponent[v];
      else if (k > j) base[to_target[v]] += t.exponent[v];
    }
    for (std::size_t i = 0; i < src.size(); ++i)
      if (src[i].role != VariableRole::plain) base[to_target[i]] += t.exponent[i];
    // (xj^a - xj'^a)/(xj - xj') = sum_{s<a} xj^s xj'^(a-1-s)
    for (std::uint32_t s = 0; s < a; ++s) {
      ExponentVector e = base;
      e[to_target[var]] += s;
      e[to_primed[var]] += a - 1 - s;
      out.push_back({std::move(e), t.coeff});
    }
  }
  return Polynomial::from_terms(primed, std::move(out));
}

inline Polynomial divided_difference(const Polynomial& f, std::size_t j) {
  return divided_difference(f, j, f.ring()->primed_extension());
}

}  // namespace germinv
