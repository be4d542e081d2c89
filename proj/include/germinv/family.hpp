#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germinv/double_point.hpp"
#include "germinv/error.hpp"
#include "germinv/parser.hpp"
#include "germinv/polar.hpp"

namespace germinv {

// A one-parameter family f_t over a ring of plain variables plus one
// parameter. No monomial may be free of the plain variables, so f_t(0) = 0
// for every t.
class Family {
 public:
  Family(Ring ring, std::vector<Polynomial> coords) : ring_(std::move(ring)), coords_(std::move(coords)) {
    const auto t = ring_->parameter_index();
    if (!t) throw InputError("family ring has no parameter variable");
    if (ring_->count(VariableRole::plain) + 1 != ring_->size())
      throw InputError("family ring must be plain variables plus one parameter");
    if (ring_->count(VariableRole::plain) == 0) throw InputError("family needs at least one source variable");
    if (coords_.empty()) throw InputError("family needs at least one coordinate");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      require_same_ring(coords_[i].ring(), ring_, "family");
      for (const auto& term : coords_[i].terms()) {
        bool has_plain = false;
        for (std::size_t v = 0; v < ring_->size(); ++v)
          if (v != *t && term.exponent[v] > 0) has_plain = true;
        if (!has_plain)
          throw InputError("coordinate " + std::to_string(i + 1) +
                           " has a term without source variables; the family is not origin preserving");
      }
    }
  }

  static Family parse(const std::vector<std::string>& variables, const std::string& parameter,
                      const std::vector<std::string>& coords) {
    Ring ring = VariableSet::plain(variables)->with_parameter(parameter);
    std::vector<Polynomial> polys;
    for (const auto& c : coords) polys.push_back(parse_polynomial(c, ring));
    return Family(ring, std::move(polys));
  }

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& coords() const noexcept { return coords_; }
  std::size_t n() const noexcept { return ring_->size() - 1; }
  std::size_t p() const noexcept { return coords_.size(); }
  std::size_t parameter() const { return *ring_->parameter_index(); }

 private:
  Ring ring_;
  std::vector<Polynomial> coords_;
};

inline MapGerm specialize(const Family& fam, const Rational& t0) {
  const Ring target = fam.ring()->without_parameter();
  std::map<std::size_t, Polynomial> at{{fam.parameter(), Polynomial::constant(target, t0)}};
  std::vector<Polynomial> coords;
  for (const auto& c : fam.coords()) coords.push_back(substitute(c, target, at));
  return MapGerm(target, std::move(coords));
}

inline std::int64_t greatest_odd_leq(std::int64_t k) {
  return (k % 2 != 0) ? k : k - 1;
}

inline std::int64_t greatest_even_leq(std::int64_t k) {
  return (k % 2 == 0) ? k : k - 1;
}

struct InvariantSet {
  bool d = true;
  std::vector<std::size_t> polar;  // indices i of the traced m_i

  std::string describe() const {
    std::string s = "{d";
    for (auto i : polar) s += ", m" + std::to_string(i);
    return s + "}";
  }

  friend bool operator==(const InvariantSet&, const InvariantSet&) = default;
};

// d together with m_1, m_3, .., m_odd(k). Corank 0 traces d alone since
// every m_i with i >= 1 vanishes.
inline InvariantSet invariant_set(std::size_t n, std::size_t k) {
  if (k > n) throw InputError("corank " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  InvariantSet s;
  if (k == 0) return s;
  const auto top = static_cast<std::size_t>(greatest_odd_leq(static_cast<std::int64_t>(k)));
  for (std::size_t i = 1; i <= top; i += 2) s.polar.push_back(i);
  return s;
}

struct TraceRow {
  Rational t;
  std::optional<std::uint64_t> d;
  std::optional<std::size_t> corank;
  std::vector<std::uint64_t> m;  // m_0..m_n, empty when not computed
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
};

enum class VerdictStatus { consistent, not_equisingular, indeterminate };

inline const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::consistent: return "consistent-with-Whitney-equisingular";
    case VerdictStatus::not_equisingular: return "not-equisingular";
    case VerdictStatus::indeterminate: return "indeterminate";
  }
  return "?";
}

inline constexpr const char* kSamplingCaveat =
    "constancy at finitely many parameter values is necessary evidence only, not a proof over a neighborhood of t=0";

struct Verdict {
  VerdictStatus status = VerdictStatus::indeterminate;
  std::optional<Rational> witness_t;
  std::string witness_invariant;
  std::string invariant_set_used;
  std::string caveat = kSamplingCaveat;
  std::vector<std::string> errors;
};

struct WhitneyTrace {
  InvariantSet invariants;
  std::vector<TraceRow> rows;
  Verdict verdict;
};

inline std::vector<Rational> default_samples() {
  return {Rational(0), Rational(1), Rational(-1), ratio(1, 2), ratio(-1, 3)};
}

struct TraceOptions {
  InvariantOptions invariants;
  GenericityOptions genericity;
};

inline TraceRow trace_row(const Family& fam, const Rational& t, const TraceOptions& opt) {
  TraceRow row{t, {}, {}, {}, {}};
  try {
    const MapGerm g = specialize(fam, t);
    row.corank = corank(g);
    row.d = d_invariant(g, opt.invariants);
    row.m = generic_polar_multiplicities(g, opt.genericity).data.m;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

// Traces d and the odd-index polar multiplicities chosen from the corank at
// t = 0, comparing every sample against the t = 0 row in sample order.
inline WhitneyTrace whitney_trace(const Family& fam, const std::vector<Rational>& samples,
                                  const TraceOptions& opt = {}) {
  if (fam.p() != 2 * fam.n())
    throw InputError("whitney_trace requires p = 2n (got n=" + std::to_string(fam.n()) +
                     ", p=" + std::to_string(fam.p()) + ")");
  const auto zero = std::find(samples.begin(), samples.end(), Rational(0));
  if (zero == samples.end()) throw InputError("samples must include t = 0");

  WhitneyTrace out;
  for (const auto& t : samples) out.rows.push_back(trace_row(fam, t, opt));
  const TraceRow& base = out.rows[static_cast<std::size_t>(zero - samples.begin())];

  Verdict& v = out.verdict;
  for (const auto& r : out.rows)
    if (!r.ok()) v.errors.push_back("t=" + r.t.get_str() + ": " + *r.error);
  if (!base.ok()) {
    v.status = VerdictStatus::indeterminate;
    v.invariant_set_used = "none (t=0 failed)";
    return out;
  }
  out.invariants = invariant_set(fam.n(), *base.corank);
  v.invariant_set_used = out.invariants.describe();

  for (const auto& r : out.rows) {
    if (!r.ok()) continue;
    std::string differs;
    if (*r.d != *base.d) differs = "d";
    for (auto i : out.invariants.polar)
      if (differs.empty() && r.m[i] != base.m[i]) differs = "m" + std::to_string(i);
    if (!differs.empty()) {
      v.status = VerdictStatus::not_equisingular;
      v.witness_t = r.t;
      v.witness_invariant = differs;
      return out;
    }
  }
  v.status = v.errors.empty() ? VerdictStatus::consistent : VerdictStatus::indeterminate;
  return out;
}

}  // namespace germinv
