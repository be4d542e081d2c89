#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "germinv/double_point.hpp"
#include "germinv/error.hpp"
#include "germinv/matrix.hpp"
#include "germinv/standard_basis.hpp"

namespace germinv {

// Raised when the drawn linear forms are not generic enough: a stage is
// not an ICIS or an identity that holds for generic forms fails.
struct GenericityFailure : InconsistencyError {
  explicit GenericityFailure(const std::string& what) : InconsistencyError("genericity failure: " + what) {}
};

// Linear forms on C^p, one coefficient row per form.
struct LinearFormSet {
  std::size_t p = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<Rational>> forms;

  std::size_t size() const noexcept { return forms.size(); }

  // l_k o f as a polynomial in the source variables.
  Polynomial compose(std::size_t k, const MapGerm& f) const {
    if (f.p() != p) throw InputError("linear forms live on C^" + std::to_string(p) + ", germ maps to C^" + std::to_string(f.p()));
    Polynomial acc(f.ring());
    for (std::size_t i = 0; i < p; ++i)
      if (forms.at(k)[i] != 0) acc += f[i].scaled(forms[k][i]);
    return acc;
  }

  friend bool operator==(const LinearFormSet&, const LinearFormSet&) = default;
};

// Coefficients in [-7,-1] u [1,7], drawn from mt19937_64.
inline LinearFormSet random_linear_forms(std::size_t p, std::size_t count, std::uint64_t seed) {
  LinearFormSet out{p, seed, {}};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Rational> row;
    for (std::size_t i = 0; i < p; ++i) {
      const auto v = static_cast<long>(rng() % 14);
      row.emplace_back(v < 7 ? v - 7 : v - 6);
    }
    out.forms.push_back(std::move(row));
  }
  return out;
}

inline std::uint64_t milnor_hypersurface(const Polynomial& g, const SbOptions& opt = {}) {
  if (g.constant_term() != 0) throw InputError("milnor_hypersurface: g does not vanish at the origin");
  std::vector<Polynomial> partials;
  for (std::size_t v = 0; v < g.ring()->size(); ++v) partials.push_back(partial_derivative(g, v));
  const auto c = colength(Ideal(g.ring(), MonomialOrder::negdegrevlex, std::move(partials)), opt);
  if (!c.is_finite()) throw NotFiniteError("milnor_hypersurface: non-isolated singularity");
  return *c.value;
}

// mu(g_1..g_k) for k = 1..m by the Le-Greuel recursion
//   mu(g_1..g_k) + mu(g_1..g_{k-1}) = colength(<g_1..g_{k-1}> + k-minors of d(g_1..g_k))
// with mu of the empty system equal to 0.
inline std::vector<std::uint64_t> milnor_icis_chain(const std::vector<Polynomial>& gs, const SbOptions& opt = {}) {
  if (gs.empty()) return {};
  const Ring ring = gs.front().ring();
  if (gs.size() > ring->size()) throw InputError("milnor_icis_chain: more equations than variables");
  std::vector<std::uint64_t> mu;
  std::uint64_t previous = 0;
  for (std::size_t k = 1; k <= gs.size(); ++k) {
    if (gs[k - 1].constant_term() != 0) throw InputError("milnor_icis_chain: equation does not vanish at the origin");
    std::vector<Polynomial> gens(gs.begin(), gs.begin() + static_cast<std::ptrdiff_t>(k - 1));
    const std::vector<Polynomial> prefix(gs.begin(), gs.begin() + static_cast<std::ptrdiff_t>(k));
    for (auto& m : minors(jacobian(prefix), k)) gens.push_back(std::move(m));
    const auto c = colength(Ideal(ring, MonomialOrder::negdegrevlex, std::move(gens)), opt);
    if (!c.is_finite()) throw GenericityFailure("not ICIS at stage " + std::to_string(k));
    if (*c.value < previous)
      throw GenericityFailure("negative Milnor number at stage " + std::to_string(k));
    previous = *c.value - previous;
    mu.push_back(previous);
  }
  return mu;
}

// mu(X_k) for k = 1..n, X_k = V(l_1 o f, .., l_{n-k+1} o f).
inline std::vector<std::uint64_t> polar_milnor_chain(const MapGerm& f, const LinearFormSet& forms,
                                                     const SbOptions& opt = {}) {
  const std::size_t n = f.n();
  if (forms.size() < n) throw InputError("need at least n linear forms");
  std::vector<Polynomial> gs;
  for (std::size_t k = 0; k < n; ++k) gs.push_back(forms.compose(k, f));
  const auto prefix = milnor_icis_chain(gs, opt);
  std::vector<std::uint64_t> mu(n);
  for (std::size_t k = 1; k <= n; ++k) mu[k - 1] = prefix[n - k];
  return mu;
}

struct PolarData {
  std::vector<std::uint64_t> mu;  // mu(X_1) .. mu(X_n)
  std::vector<std::uint64_t> m;   // m_0 .. m_n
  std::int64_t euler_obstruction = 0;

  std::int64_t alternating_sum() const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += (i % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(m[i]);
    return s;
  }

  // sum_{i=0}^{n-1} (-1)^(n-i-1) m_(n-i-1)
  std::int64_t le_teissier_sum() const {
    std::int64_t s = 0;
    for (std::size_t j = 0; j + 1 < m.size(); ++j) s += (j % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(m[j]);
    return s;
  }

  friend bool operator==(const PolarData&, const PolarData&) = default;
};

inline std::int64_t euler_from_mu(std::size_t n, std::uint64_t mu_n) {
  const auto mu = static_cast<std::int64_t>(mu_n);
  return n % 2 == 0 ? 1 - mu : 1 + mu;
}

inline PolarData polar_data_from_mu(std::vector<std::uint64_t> mu) {
  const std::size_t n = mu.size();
  PolarData d;
  d.m.resize(n + 1);
  d.m[0] = 1 + mu[0];
  for (std::size_t k = 1; k < n; ++k) d.m[k] = mu[k - 1] + mu[k];
  d.m[n] = mu[n - 1];
  d.euler_obstruction = euler_from_mu(n, mu[n - 1]);
  d.mu = std::move(mu);
  if (d.alternating_sum() != 1)
    throw GenericityFailure("alternating sum of polar multiplicities is " + std::to_string(d.alternating_sum()));
  if (d.le_teissier_sum() != d.euler_obstruction)
    throw GenericityFailure("Euler obstruction cross-check failed");
  return d;
}

inline void require_polar_dimensions(const MapGerm& f) {
  if (f.p() != 2 * f.n() && f.p() + 1 != 2 * f.n())
    throw InputError("polar multiplicities require p = 2n or 2n-1 (got n=" + std::to_string(f.n()) +
                     ", p=" + std::to_string(f.p()) + ")");
}

inline PolarData polar_multiplicities(const MapGerm& f, const LinearFormSet& forms, const SbOptions& opt = {}) {
  require_polar_dimensions(f);
  return polar_data_from_mu(polar_milnor_chain(f, forms, opt));
}

inline bool euler_closed_form_only(const MapGerm& f) { return f.n() == 3 && f.p() == 4; }

// 1 - (-1)^n mu(X_n). Where the polar multiplicities are available the
// alternating-sum route is checked against it.
inline std::int64_t euler_obstruction(const MapGerm& f, const LinearFormSet& forms, const SbOptions& opt = {}) {
  if (euler_closed_form_only(f)) {
    if (forms.size() < 1) throw InputError("need at least one linear form");
    const auto mu = milnor_icis_chain({forms.compose(0, f)}, opt);
    return euler_from_mu(f.n(), mu[0]);
  }
  return polar_multiplicities(f, forms, opt).euler_obstruction;
}

// ---------------------------------------------------------------------------
// Genericity protocol
// ---------------------------------------------------------------------------

struct GenericityOptions {
  std::uint64_t seed = 42;
  std::uint32_t retries = 3;  // extra draws allowed after genericity failures
  SbOptions sb;
};

struct GenericMilnorChain {
  std::vector<std::uint64_t> mu;
  std::vector<std::uint64_t> seeds;  // seeds whose chains were accepted
  std::vector<std::string> warnings;
};

// Draws forms from seed, seed+1, ... until two chains agree. Draws that
// fail genericity are skipped, up to `retries` of them. If the first two
// accepted chains disagree a third is drawn and the elementwise minimum of
// all three is returned with a warning.
inline GenericMilnorChain generic_milnor_chain(const MapGerm& f, std::size_t chain_length,
                                               const GenericityOptions& opt = {}) {
  GenericMilnorChain out;
  std::vector<std::vector<std::uint64_t>> accepted;
  std::uint32_t failures = 0;
  std::string last_failure;
  std::uint64_t seed = opt.seed;
  auto want = [&] {
    if (accepted.size() < 2) return std::size_t{2};
    return accepted[0] == accepted[1] ? std::size_t{2} : std::size_t{3};
  };
  while (accepted.size() < want()) {
    const auto forms = random_linear_forms(f.p(), f.n() + 1, seed);
    try {
      std::vector<Polynomial> gs;
      for (std::size_t k = 0; k < chain_length; ++k) gs.push_back(forms.compose(k, f));
      const auto prefix = milnor_icis_chain(gs, opt.sb);
      // reorder to mu(X_k) indexing: prefix of length j is X_{n-j+1}
      std::vector<std::uint64_t> mu(prefix.rbegin(), prefix.rend());
      accepted.push_back(std::move(mu));
      out.seeds.push_back(seed);
    } catch (const GenericityFailure& e) {
      last_failure = e.what();
      if (++failures > opt.retries)
        throw GenericityFailure("no generic linear forms after " + std::to_string(failures) + " draws (" +
                                last_failure + ")");
      out.warnings.push_back("seed " + std::to_string(seed) + " rejected: " + e.what());
    }
    ++seed;
  }
  out.mu = accepted[0];
  if (accepted.size() == 3) {
    for (const auto& chain : accepted)
      for (std::size_t i = 0; i < out.mu.size(); ++i) out.mu[i] = std::min(out.mu[i], chain[i]);
    out.warnings.push_back("Milnor chains disagreed across seeds; reporting the elementwise minimum");
  }
  return out;
}

struct GenericPolarResult {
  PolarData data;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> warnings;
};

inline GenericPolarResult generic_polar_multiplicities(const MapGerm& f, const GenericityOptions& opt = {}) {
  require_polar_dimensions(f);
  auto chain = generic_milnor_chain(f, f.n(), opt);
  return {polar_data_from_mu(std::move(chain.mu)), std::move(chain.seeds), std::move(chain.warnings)};
}

struct GenericEulerResult {
  std::int64_t value = 0;
  bool cross_checked = false;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> warnings;
};

inline GenericEulerResult generic_euler_obstruction(const MapGerm& f, const GenericityOptions& opt = {}) {
  if (euler_closed_form_only(f)) {
    auto chain = generic_milnor_chain(f, 1, opt);
    return {euler_from_mu(f.n(), chain.mu[0]), false, std::move(chain.seeds), std::move(chain.warnings)};
  }
  auto r = generic_polar_multiplicities(f, opt);
  return {r.data.euler_obstruction, true, std::move(r.seeds), std::move(r.warnings)};
}

}  // namespace germinv
