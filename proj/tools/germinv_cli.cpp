// germinv: compute double-point, polar and Whitney-family invariants of
// polynomial map germs described by a JSON job file.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "germinv/germinv.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Invariants of polynomial map germs"};
  std::string input, mode, format = "text", samples;
  std::uint64_t seed = 42, degree_bound = 64, k_cap = 40;
  std::uint32_t retries = 3;

  app.add_option("--input", input, "job file (JSON)")->required();
  auto* mode_opt = app.add_option("--mode", mode, "override the job mode")->check(CLI::IsMember({"germ", "family"}));
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "machine"}));
  auto* seed_opt = app.add_option("--seed", seed, "seed for the generic linear forms (default 42)");
  auto* bound_opt = app.add_option("--degree-bound", degree_bound, "standard basis degree bound (default 64)");
  auto* kcap_opt = app.add_option("--k-cap", k_cap, "module length truncation cap (default 40)");
  auto* samples_opt = app.add_option("--samples", samples, "comma separated rational parameter values");
  auto* retries_opt = app.add_option("--retries", retries, "extra draws after genericity failures (default 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  germinv::JobSpec spec;
  try {
    std::ifstream in(input);
    if (!in) throw germinv::InputError("cannot read '" + input + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    spec = germinv::job_from_text(buf.str());
    if (*mode_opt) spec.mode = mode;
    if (*seed_opt) spec.config.seed = seed;
    if (*bound_opt) spec.config.degree_bound = degree_bound;
    if (*kcap_opt) spec.config.k_cap = k_cap;
    if (*retries_opt) spec.config.retries = retries;
    if (*samples_opt) spec.samples = germinv::parse_sample_list(samples);
  } catch (const germinv::Error& e) {
    std::cerr << "germinv: " << e.what() << "\n";
    return germinv::exit_code_for(e.kind());
  }

  const auto result = germinv::run(spec);
  std::cout << (format == "machine" ? germinv::format_machine(result) : germinv::format_text(result));
  for (const auto& err : result.report["errors"])
    std::cerr << "germinv: " << err["kind"].get<std::string>() << ": " << err["message"].get<std::string>() << "\n";
  return result.exit_code;
}
