#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "germinv/error.hpp"
#include "germinv/ring.hpp"

namespace germinv {

using Rational = mpq_class;

// num/den in lowest terms.
inline Rational ratio(long num, long den) {
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

struct Term {
  ExponentVector exponent;
  Rational coeff;

  friend bool operator==(const Term& a, const Term& b) {
    return a.exponent == b.exponent && a.coeff == b.coeff;
  }
};

// Sparse polynomial over Q. Terms are kept sorted descending under
// degrevlex with no zero coefficients and no repeated exponents, so two
// equal polynomials always have identical term vectors.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  static Polynomial constant(Ring ring, const Rational& c) {
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.push_back({ExponentVector(p.ring_->size()), c});
    return p;
  }

  static Polynomial variable(Ring ring, std::size_t index) {
    if (index >= ring->size()) throw InputError("variable index out of range");
    ExponentVector e(ring->size());
    e[index] = 1;
    return monomial(std::move(ring), std::move(e), 1);
  }

  static Polynomial variable(Ring ring, std::string_view name) {
    auto idx = ring->index_of(name);
    if (!idx) throw InputError("unknown variable '" + std::string(name) + "'");
    return variable(std::move(ring), *idx);
  }

  static Polynomial monomial(Ring ring, ExponentVector e, const Rational& c) {
    if (e.size() != ring->size()) throw InputError("exponent length does not match ring");
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.push_back({std::move(e), c});
    return p;
  }

  // Builds a canonical polynomial from arbitrary (possibly repeated) terms.
  static Polynomial from_terms(Ring ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    for (const auto& t : terms)
      if (t.exponent.size() != p.ring_->size()) throw InputError("exponent length does not match ring");
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().exponent.is_zero());
  }

  Rational constant_term() const {
    // Canonical order puts the constant last.
    if (!terms_.empty() && terms_.back().exponent.is_zero()) return terms_.back().coeff;
    return 0;
  }

  Rational coefficient(const ExponentVector& e) const {
    for (const auto& t : terms_)
      if (t.exponent == e) return t.coeff;
    return 0;
  }

  // Largest total degree of a term; 0 for the zero polynomial.
  std::uint64_t total_degree() const {
    return terms_.empty() ? 0 : terms_.front().exponent.total_degree();
  }

  // Smallest total degree of a term (the order of the power series).
  std::uint64_t order() const {
    std::uint64_t m = terms_.empty() ? 0 : terms_.front().exponent.total_degree();
    for (const auto& t : terms_) m = std::min(m, t.exponent.total_degree());
    return m;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = add_scaled(*this, o, 1, "add"); }
  Polynomial& operator-=(const Polynomial& o) { return *this = add_scaled(*this, o, -1, "sub"); }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add_scaled(a, b, 1, "add"); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return add_scaled(a, b, -1, "sub"); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a.ring_, b.ring_, "mul");
    Polynomial r(a.ring_);
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) r.terms_.push_back({s.exponent + t.exponent, s.coeff * t.coeff});
    r.canonicalize();
    return r;
  }

  Polynomial scaled(const Rational& c) const {
    if (c == 0) return Polynomial(ring_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  // Multiplies by the monomial c * x^e.
  Polynomial times_monomial(const ExponentVector& e, const Rational& c) const {
    if (c == 0) return Polynomial(ring_);
    Polynomial r = *this;
    for (auto& t : r.terms_) {
      t.exponent += e;
      t.coeff *= c;
    }
    return r;  // multiplication by a monomial preserves the order
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  // Drops every term of total degree >= k.
  Polynomial truncated(std::uint64_t k) const {
    Polynomial r(ring_);
    for (const auto& t : terms_)
      if (t.exponent.total_degree() < k) r.terms_.push_back(t);
    return r;
  }

  // Same terms, reinterpreted over a structurally identical or re-indexed
  // ring. `index_map[i]` is the target index of source variable i.
  Polynomial relabeled(const Ring& target, const std::vector<std::size_t>& index_map) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      ExponentVector e(target->size());
      for (std::size_t i = 0; i < t.exponent.size(); ++i) {
        if (t.exponent[i] == 0) continue;
        if (index_map[i] >= target->size()) throw InputError("relabel target index out of range");
        e[index_map[i]] += t.exponent[i];
      }
      out.push_back({std::move(e), t.coeff});
    }
    return from_terms(target, std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  static Polynomial add_scaled(const Polynomial& a, const Polynomial& b, int sign, const char* op) {
    require_same_ring(a.ring_, b.ring_, op);
    Polynomial r(a.ring_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = compare(a.terms_[i].exponent, b.terms_[j].exponent, MonomialOrder::degrevlex);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        Term t = b.terms_[j++];
        if (sign < 0) t.coeff = -t.coeff;
        r.terms_.push_back(std::move(t));
      } else {
        Rational s = a.terms_[i].coeff;
        if (sign > 0) s += b.terms_[j].coeff;
        else s -= b.terms_[j].coeff;
        if (s != 0) r.terms_.push_back({a.terms_[i].exponent, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
      return compare(a.exponent, b.exponent, MonomialOrder::degrevlex) > 0;
    });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().exponent == t.exponent) {
        merged.back().coeff += t.coeff;
      } else {
        if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
        merged.push_back(std::move(t));
      }
    }
    if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
    terms_ = std::move(merged);
  }

  Ring ring_;
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string mono;
    for (std::size_t i = 0; i < t.exponent.size(); ++i) {
      if (t.exponent[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (*ring_)[i].name;
      if (t.exponent[i] > 1) mono += "^" + std::to_string(t.exponent[i]);
    }
    if (mono.empty()) {
      out += rational_to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += rational_to_string(c) + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution and differentiation
// ---------------------------------------------------------------------------

// Ring homomorphism from p's ring into `target`. Variables listed in
// `assignment` (by source index) are replaced by their image; every other
// variable occurring in p maps to the same-named variable of `target`.
inline Polynomial substitute(const Polynomial& p, const Ring& target,
                             const std::map<std::size_t, Polynomial>& assignment) {
  const auto& src = *p.ring();
  for (const auto& [idx, image] : assignment) {
    if (idx >= src.size()) throw InputError("substitution variable index out of range");
    require_same_ring(image.ring(), target, "substitute");
  }

  std::vector<Polynomial> images(src.size(), Polynomial(target));
  std::vector<bool> resolved(src.size(), false);
  auto image_of = [&](std::size_t i) -> const Polynomial& {
    if (!resolved[i]) {
      if (auto it = assignment.find(i); it != assignment.end()) {
        images[i] = it->second;
      } else {
        auto t = target->index_of(src[i].name);
        if (!t) throw InputError("variable '" + src[i].name + "' has no image in the target ring");
        images[i] = Polynomial::variable(target, *t);
      }
      resolved[i] = true;
    }
    return images[i];
  };

  // Powers are cached per variable since germs reuse them heavily.
  std::vector<std::vector<Polynomial>> powers(src.size());
  auto power_of = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * image_of(i));
    return cache[k];
  };

  std::vector<Term> acc;
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(target, t.coeff);
    for (std::size_t i = 0; i < t.exponent.size(); ++i)
      if (t.exponent[i] > 0) term *= power_of(i, t.exponent[i]);
    for (const auto& tt : term.terms()) acc.push_back(tt);
  }
  return Polynomial::from_terms(target, std::move(acc));
}

inline Polynomial substitute(const Polynomial& p, const std::map<std::size_t, Polynomial>& assignment) {
  return substitute(p, p.ring(), assignment);
}

inline Polynomial partial_derivative(const Polynomial& p, std::size_t v) {
  if (v >= p.ring()->size()) throw InputError("derivative variable index out of range");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (t.exponent[v] == 0) continue;
    Term d{t.exponent, t.coeff * t.exponent[v]};
    d.exponent[v] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial::from_terms(p.ring(), std::move(out));
}

}  // namespace germinv
