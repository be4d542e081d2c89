#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "germinv/error.hpp"

namespace germinv {

// ---------------------------------------------------------------------------
// Exponent vectors
// ---------------------------------------------------------------------------

class ExponentVector {
 public:
  using value_type = std::uint32_t;

  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  ExponentVector(std::initializer_list<value_type> init) : e_(init) {}
  explicit ExponentVector(std::vector<value_type> e) : e_(std::move(e)) {}

  std::size_t size() const noexcept { return e_.size(); }
  value_type operator[](std::size_t i) const { return e_[i]; }
  value_type& operator[](std::size_t i) { return e_[i]; }
  const std::vector<value_type>& entries() const noexcept { return e_; }

  std::uint64_t total_degree() const {
    return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0});
  }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](value_type v) { return v == 0; });
  }

  // True if this monomial divides `other`.
  bool divides(const ExponentVector& other) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > other.e_[i]) return false;
    return true;
  }

  ExponentVector& operator+=(const ExponentVector& o) {
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }

  // Requires rhs to divide lhs.
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) {
    for (std::size_t i = 0; i < a.e_.size(); ++i) a.e_[i] -= b.e_[i];
    return a;
  }

  friend ExponentVector lcm(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
    return r;
  }

  friend bool coprime(const ExponentVector& a, const ExponentVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.e_[i] != 0 && b.e_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend auto operator<=>(const ExponentVector& a, const ExponentVector& b) { return a.e_ <=> b.e_; }

 private:
  std::vector<value_type> e_;
};

// ---------------------------------------------------------------------------
// Monomial orders
// ---------------------------------------------------------------------------

// degrevlex is the global order (1 < x). negdegrevlex is the local order
// (x < 1): lower total degree wins, ties broken by degrevlex.
enum class MonomialOrder { degrevlex, negdegrevlex };

constexpr bool is_local(MonomialOrder o) { return o == MonomialOrder::negdegrevlex; }

namespace detail {

// Reverse-lexicographic tie break on equal total degree: the monomial with
// the smaller exponent in the last differing variable is larger.
inline int revlex_tiebreak(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace detail

// Three-way comparison: positive when a > b under `order`.
inline int compare(const ExponentVector& a, const ExponentVector& b, MonomialOrder order) {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) {
    const int global = da > db ? 1 : -1;
    return order == MonomialOrder::degrevlex ? global : -global;
  }
  return detail::revlex_tiebreak(a, b);
}

// ---------------------------------------------------------------------------
// Variable sets
// ---------------------------------------------------------------------------

enum class VariableRole { plain, primed, parameter };

struct Variable {
  std::string name;
  VariableRole role = VariableRole::plain;
  std::size_t companion_of = 0;  // meaningful for primed variables only

  friend bool operator==(const Variable&, const Variable&) = default;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9') || c == '_'; };
  if (!alpha(s.front())) return false;
  std::size_t end = s.size();
  if (s.back() == '\'') --end;
  for (std::size_t i = 1; i < end; ++i)
    if (!alnum(s[i])) return false;
  return end > 0;
}

class VariableSet;
using Ring = std::shared_ptr<const VariableSet>;

class VariableSet {
 public:
  explicit VariableSet(std::vector<Variable> vars) : vars_(std::move(vars)) { validate(); }

  static Ring make(std::vector<Variable> vars) {
    return std::make_shared<const VariableSet>(std::move(vars));
  }

  static Ring plain(const std::vector<std::string>& names) {
    std::vector<Variable> vars;
    vars.reserve(names.size());
    for (const auto& n : names) vars.push_back({n, VariableRole::plain, 0});
    return make(std::move(vars));
  }

  std::size_t size() const noexcept { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<Variable>& variables() const noexcept { return vars_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> parameter_index() const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].role == VariableRole::parameter) return i;
    return std::nullopt;
  }

  std::size_t count(VariableRole role) const {
    return static_cast<std::size_t>(
        std::count_if(vars_.begin(), vars_.end(), [&](const Variable& v) { return v.role == role; }));
  }

  // Indices of the plain variables, in ring order.
  std::vector<std::size_t> plain_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].role == VariableRole::plain) out.push_back(i);
    return out;
  }

  // Index of the primed companion of plain variable i, if present.
  std::optional<std::size_t> companion(std::size_t i) const {
    for (std::size_t k = 0; k < vars_.size(); ++k)
      if (vars_[k].role == VariableRole::primed && vars_[k].companion_of == i) return k;
    return std::nullopt;
  }

  // Appends a primed companion x' for every plain variable x. The original
  // variables keep their positions, so a ring of size n becomes 2n when it
  // has no parameter.
  Ring primed_extension() const { return primed_extension_of(plain_indices()); }

  // Appends primed companions for the given plain variables only.
  Ring primed_extension_of(const std::vector<std::size_t>& which) const {
    std::vector<Variable> vars = vars_;
    for (std::size_t i : which) {
      if (i >= vars_.size() || vars_[i].role != VariableRole::plain)
        throw InputError("primed companion requested for non-plain variable");
      vars.push_back({vars_[i].name + "'", VariableRole::primed, i});
    }
    return make(std::move(vars));
  }

  Ring with_parameter(const std::string& name) const {
    std::vector<Variable> vars = vars_;
    vars.push_back({name, VariableRole::parameter, 0});
    return make(std::move(vars));
  }

  // The ring with the parameter variable removed.
  Ring without_parameter() const {
    std::vector<Variable> vars;
    for (const auto& v : vars_)
      if (v.role != VariableRole::parameter) vars.push_back(v);
    return make(std::move(vars));
  }

  friend bool operator==(const VariableSet& a, const VariableSet& b) { return a.vars_ == b.vars_; }

 private:
  void validate() const {
    std::size_t params = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const auto& v = vars_[i];
      if (!is_identifier(v.name)) throw InputError("invalid variable name '" + v.name + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[j].name == v.name) throw InputError("duplicate variable name '" + v.name + "'");
      if (v.role == VariableRole::parameter) ++params;
      if (v.role == VariableRole::primed) {
        if (v.companion_of >= vars_.size() || vars_[v.companion_of].role != VariableRole::plain)
          throw InputError("primed variable '" + v.name + "' has no plain companion");
      }
      if (v.role != VariableRole::primed && v.name.back() == '\'')
        throw InputError("only primed companions may end in an apostrophe: '" + v.name + "'");
    }
    if (params > 1) throw InputError("at most one parameter variable is allowed");
  }

  std::vector<Variable> vars_;
};

inline bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && *a == *b); }

inline void require_same_ring(const Ring& a, const Ring& b, const char* op) {
  if (!same_ring(a, b)) throw InputError(std::string("ring mismatch in ") + op);
}

}  // namespace germinv
