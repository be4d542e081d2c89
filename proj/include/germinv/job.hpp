#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "germinv/double_point.hpp"
#include "germinv/error.hpp"
#include "germinv/family.hpp"
#include "germinv/polar.hpp"
#include "germinv/quasihomogeneous.hpp"

namespace germinv {

using Json = nlohmann::ordered_json;

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::input:
    case ErrorKind::not_finite: return 1;
    case ErrorKind::inconsistency: return 2;
    case ErrorKind::bound_exceeded: return 3;
  }
  return 1;
}

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::input: return "input";
    case ErrorKind::not_finite: return "not_finite";
    case ErrorKind::bound_exceeded: return "bound_exceeded";
    case ErrorKind::inconsistency: return "inconsistency";
  }
  return "?";
}

struct JobConfig {
  std::uint64_t degree_bound = 64;
  std::uint64_t k_cap = 40;
  std::uint64_t seed = 42;
  std::uint32_t retries = 3;

  InvariantOptions invariants() const {
    InvariantOptions o;
    o.sb.degree_bound = degree_bound;
    o.k_cap = k_cap;
    return o;
  }

  GenericityOptions genericity() const {
    GenericityOptions g;
    g.seed = seed;
    g.retries = retries;
    g.sb.degree_bound = degree_bound;
    return g;
  }
};

struct JobSpec {
  std::string mode = "germ";
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<std::string> variables;
  std::vector<std::string> coordinates;
  std::optional<std::string> parameter;
  std::vector<Rational> samples;  // empty means the default sample set
  std::vector<std::string> q_generators;
  JobConfig config;

  void validate() const {
    if (mode != "germ" && mode != "family") throw InputError("mode must be 'germ' or 'family', got '" + mode + "'");
    if (n == 0 || p == 0) throw InputError("n and p must be positive");
    if (variables.size() != n)
      throw InputError("expected " + std::to_string(n) + " variables, got " + std::to_string(variables.size()));
    if (coordinates.size() != p)
      throw InputError("expected " + std::to_string(p) + " coordinates, got " + std::to_string(coordinates.size()));
    if (mode == "family" && !parameter) throw InputError("family mode requires a parameter name");
    if (mode == "germ" && !samples.empty()) throw InputError("samples are only meaningful in family mode");
    for (const auto& v : variables)
      if (!v.empty() && v.back() == '\'') throw InputError("source variables may not be primed: '" + v + "'");
  }

  std::vector<Rational> effective_samples() const { return samples.empty() ? default_samples() : samples; }
};

namespace detail {

template <class T>
T json_field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

inline Rational json_rational(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
  throw InputError("samples must be integers or rational strings");
}

}  // namespace detail

inline std::vector<Rational> parse_sample_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw InputError("empty sample list");
  return out;
}

inline JobSpec job_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("job document must be a JSON object");
  static const std::vector<std::string> known = {"mode",        "n",       "p",       "variables", "coordinates",
                                                 "parameter",   "samples", "q_generators", "config"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw InputError("unknown field '" + key + "'");
  JobSpec s;
  s.mode = detail::json_field<std::string>(j, "mode", "germ");
  if (!j.contains("n") || !j.contains("p")) throw InputError("job needs fields 'n' and 'p'");
  s.n = detail::json_field<std::size_t>(j, "n", 0);
  s.p = detail::json_field<std::size_t>(j, "p", 0);
  s.variables = detail::json_field<std::vector<std::string>>(j, "variables", {});
  s.coordinates = detail::json_field<std::vector<std::string>>(j, "coordinates", {});
  if (j.contains("parameter")) s.parameter = detail::json_field<std::string>(j, "parameter", "");
  if (j.contains("samples")) {
    if (!j["samples"].is_array()) throw InputError("field 'samples' must be an array");
    for (const auto& v : j["samples"]) s.samples.push_back(detail::json_rational(v));
  }
  s.q_generators = detail::json_field<std::vector<std::string>>(j, "q_generators", {});
  if (j.contains("config")) {
    const auto& c = j["config"];
    if (!c.is_object()) throw InputError("field 'config' must be an object");
    s.config.degree_bound = detail::json_field<std::uint64_t>(c, "degree_bound", s.config.degree_bound);
    s.config.k_cap = detail::json_field<std::uint64_t>(c, "k_cap", s.config.k_cap);
    s.config.seed = detail::json_field<std::uint64_t>(c, "seed", s.config.seed);
    s.config.retries = detail::json_field<std::uint32_t>(c, "retries", s.config.retries);
  }
  return s;
}

inline JobSpec job_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("job file is not valid JSON: ") + e.what());
  }
  return job_from_json(j);
}

struct JobResult {
  Json report;
  int exit_code = 0;
  std::vector<std::pair<std::string, double>> timings_ms;  // text output only
};

namespace detail {

class Runner {
 public:
  explicit Runner(const JobSpec& spec) : spec_(spec) {}

  // Runs `fn`, recording its wall time; an Error is logged against `op`
  // and false is returned.
  bool step(const std::string& op, const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    try {
      fn();
    } catch (const Error& e) {
      fail(op, e.kind(), e.what());
      ok = false;
    }
    const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start;
    result_.timings_ms.emplace_back(op, dt.count());
    return ok;
  }

  void fail(const std::string& op, ErrorKind kind, const std::string& message) {
    errors_.push_back({{"operation", op}, {"kind", to_string(kind)}, {"message", message}});
    result_.exit_code = std::max(result_.exit_code, exit_code_for(kind));
  }

  void warn(const std::string& message) { warnings_.push_back(message); }

  Json config_echo() const {
    Json c;
    c["degree_bound"] = spec_.config.degree_bound;
    c["k_cap"] = spec_.config.k_cap;
    c["seed"] = spec_.config.seed;
    c["retries"] = spec_.config.retries;
    if (spec_.mode == "family") {
      Json s = Json::array();
      for (const auto& t : spec_.effective_samples()) s.push_back(t.get_str());
      c["samples"] = s;
    }
    return c;
  }

  JobResult finish(Json body) {
    Json& r = result_.report;
    r["mode"] = spec_.mode;
    r["config"] = config_echo();
    for (auto& [k, v] : body.items()) r[k] = v;
    r["warnings"] = warnings_;
    r["errors"] = errors_;
    r["exit_code"] = result_.exit_code;
    return std::move(result_);
  }

  const JobSpec& spec() const { return spec_; }

 private:
  const JobSpec& spec_;
  JobResult result_;
  Json errors_ = Json::array();
  Json warnings_ = Json::array();
};

inline Json rational_json(const Rational& q) {
  Json j;
  j["value"] = q.get_str();
  j["integral"] = q.get_den() == 1;
  return j;
}

inline Json germ_json(const MapGerm& f) {
  Json g;
  g["n"] = f.n();
  g["p"] = f.p();
  Json vars = Json::array();
  for (const auto& v : f.ring()->variables()) vars.push_back(v.name);
  g["variables"] = vars;
  Json coords = Json::array();
  for (const auto& c : f.coords()) coords.push_back(c.to_string());
  g["coordinates"] = coords;
  return g;
}

inline Json polar_json(const GenericPolarResult& r) {
  Json j;
  j["route"] = "le_greuel_icis_chain";
  j["mu"] = r.data.mu;
  j["m"] = r.data.m;
  j["alternating_sum"] = r.data.alternating_sum();
  j["seeds"] = r.seeds;
  return j;
}

inline void run_germ_invariants(Runner& run, const MapGerm& f, Json& body) {
  const JobConfig& cfg = run.spec().config;
  const auto inv = cfg.invariants();
  const std::size_t n = f.n(), p = f.p();

  std::size_t k = 0;
  run.step("corank", [&] {
    k = corank(f);
    body["corank"] = {{"value", k}, {"route", "rank_of_linear_part"}};
  });

  std::optional<WeightData> weights;
  run.step("detect_weights", [&] {
    weights = detect_weights(f);
    if (weights) body["quasihomogeneous"] = {{"weights", weights->weights}, {"degrees", weights->degrees}};
    else body["quasihomogeneous"] = "not quasihomogeneous";
  });

  if (p == 2 * n) {
    // Every integer route for d, checked against the colength oracle.
    std::vector<std::pair<std::string, Rational>> d_routes;
    Json d = Json::object();
    Json routes = Json::array();
    std::optional<std::uint64_t> oracle;

    run.step("d_invariant", [&] {
      const auto c = double_point_colength(f, inv);
      Json r{{"route", "double_point_colength"}};
      r["colength"] = c.is_finite() ? Json(*c.value) : Json("infinite");
      routes.push_back(r);
      oracle = half_colength(c, "d_invariant");
      routes.back()["value"] = *oracle;
    });

    if (k <= 1) {
      run.step("d_corank1", [&] {
        const auto v = d_corank1(f, inv);
        routes.push_back({{"route", "corank1_divided_difference"}, {"value", v}});
        d_routes.emplace_back("corank1_divided_difference", Rational(static_cast<unsigned long>(v)));
      });
    }

    // epsilon is only defined for A-finite germs; the module length would
    // otherwise just run into k_cap.
    Json eps = Json::object();
    if (!oracle) eps["skipped"] = "double point ideal has infinite colength";
    if (oracle) run.step("epsilon_artin_nagata", [&] {
      const auto e = epsilon_artin_nagata(f, inv);
      eps["artin_nagata"] = {{"route", "module_length_diagonal_over_pullback"}, {"value", e}};
      d_routes.emplace_back("epsilon_artin_nagata/2", ratio(static_cast<long>(e), 2));
    });
    if (oracle && !run.spec().q_generators.empty()) {
      run.step("epsilon_from_decomposition", [&] {
        const Ring primed = f.primed_ring();
        std::vector<Polynomial> gens;
        for (const auto& q : run.spec().q_generators) gens.push_back(parse_polynomial(q, primed));
        const auto e = epsilon_from_decomposition(f, Ideal(primed, MonomialOrder::negdegrevlex, gens), inv);
        eps["decomposition"] = {{"route", "colength_Q_minus_colength_diagonal_plus_Q"}, {"value", e}};
        d_routes.emplace_back("epsilon_from_decomposition/2", ratio(e, 2));
      });
    }

    if (weights) {
      Json qh = Json::object();
      run.step("d_qh_general", [&] {
        const auto v = d_qh_general(*weights, n);
        Json r = rational_json(v.value);
        r["route"] = "weighted_closed_form";
        r["status"] = v.status == FormulaStatus::proved ? "proved" : "conjectural";
        qh["general"] = r;
        if (v.status == FormulaStatus::proved) d_routes.emplace_back("d_qh_general", v.value);
        else if (oracle && v.value != Rational(static_cast<unsigned long>(*oracle)))
          run.warn("conjectural d_qh_general = " + v.value.get_str() + " differs from the colength oracle");
      });
      if (k <= 1) {
        run.step("d_qh_corank1", [&] {
          const MapGerm nf = normalize_corank1(f);
          const auto w = detect_weights(nf);
          if (!w) throw InconsistencyError("normal form lost quasihomogeneity");
          const Rational v = d_qh_corank1(*w, n);
          Json r = rational_json(v);
          r["route"] = "corank1_closed_form";
          qh["corank1"] = r;
          d_routes.emplace_back("d_qh_corank1", v);
        });
      }
      if (n == 2) {
        run.step("d_qh_printed_expansion", [&] {
          const Rational v = d_qh_n2_printed_expansion(*weights);
          Json r = rational_json(v);
          r["route"] = "printed_n2_expansion";
          if (oracle) r["agrees_with_oracle"] = v == Rational(static_cast<unsigned long>(*oracle));
          qh["printed_n2_expansion"] = r;
        });
      }
      body["qh_formulas"] = qh;
    }

    if (oracle) {
      bool agree = true;
      const Rational o(static_cast<unsigned long>(*oracle));
      for (const auto& [route, value] : d_routes) {
        if (value == o) continue;
        agree = false;
        run.fail("d_agreement", ErrorKind::inconsistency,
                 route + " gives " + value.get_str() + " but double_point_colength gives " + o.get_str());
      }
      d["value"] = *oracle;
      d["agree"] = agree;
    }
    d["routes"] = routes;
    body["d"] = d;
    body["epsilon"] = eps;
  }

  if (p == 2 * n || p + 1 == 2 * n) {
    run.step("polar_multiplicities", [&] {
      const auto r = generic_polar_multiplicities(f, cfg.genericity());
      body["polar"] = polar_json(r);
      body["euler_obstruction"] = {{"value", r.data.euler_obstruction},
                                   {"route", "one_minus_signed_mu_Xn"},
                                   {"cross_check", "le_teissier_alternating_sum"},
                                   {"cross_check_value", r.data.le_teissier_sum()}};
      for (const auto& w : r.warnings) run.warn(w);
    });
  } else if (euler_closed_form_only(f)) {
    run.step("euler_obstruction", [&] {
      const auto r = generic_euler_obstruction(f, cfg.genericity());
      body["euler_obstruction"] = {{"value", r.value}, {"route", "one_minus_signed_mu_Xn"}, {"seeds", r.seeds}};
      for (const auto& w : r.warnings) run.warn(w);
    });
  }
}

inline void run_family(Runner& run, Json& body) {
  const JobSpec& spec = run.spec();
  std::optional<Family> fam;
  if (!run.step("parse", [&] { fam = Family::parse(spec.variables, *spec.parameter, spec.coordinates); })) return;
  run.step("whitney_trace", [&] {
    TraceOptions opt{spec.config.invariants(), spec.config.genericity()};
    const auto tr = whitney_trace(*fam, spec.effective_samples(), opt);
    Json rows = Json::array();
    for (const auto& r : tr.rows) {
      Json row{{"t", r.t.get_str()}};
      row["corank"] = r.corank ? Json(*r.corank) : Json(nullptr);
      row["d"] = r.d ? Json(*r.d) : Json(nullptr);
      row["m"] = r.m;
      row["error"] = r.error ? Json(*r.error) : Json(nullptr);
      rows.push_back(row);
    }
    body["trace"] = rows;
    Json v{{"status", to_string(tr.verdict.status)}, {"invariant_set", tr.verdict.invariant_set_used}};
    if (tr.verdict.witness_t) {
      v["witness_t"] = tr.verdict.witness_t->get_str();
      v["witness_invariant"] = tr.verdict.witness_invariant;
    }
    v["row_errors"] = tr.verdict.errors;
    v["caveat"] = tr.verdict.caveat;
    body["verdict"] = v;
  });
}

}  // namespace detail

inline JobResult run(const JobSpec& spec) {
  detail::Runner run(spec);
  Json body = Json::object();
  if (!run.step("validate", [&] { spec.validate(); })) return run.finish(body);
  if (spec.mode == "family") {
    detail::run_family(run, body);
    return run.finish(body);
  }
  std::optional<MapGerm> f;
  if (run.step("parse", [&] { f = MapGerm::parse(spec.variables, spec.coordinates); })) {
    body["germ"] = detail::germ_json(*f);
    detail::run_germ_invariants(run, *f, body);
  }
  return run.finish(body);
}

inline std::string format_machine(const JobResult& r) { return r.report.dump(2) + "\n"; }

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

inline void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
  } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    out.emplace_back(prefix, s + "]");
  } else {
    out.emplace_back(prefix, scalar_text(v));
  }
}

}  // namespace detail

inline std::string format_text(const JobResult& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(r.report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, _] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  os << "\ntiming (ms)\n";
  for (const auto& [op, ms] : r.timings_ms) {
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(3);
    t << ms;
    os << "  " << op << std::string(width > op.size() ? width - op.size() : 1, ' ') << t.str() << "\n";
  }
  return os.str();
}

}  // namespace germinv
