// hkm: run a check suite and write a report.
//
//   hkm run ad-cohomology --dim 2 --weight-box 3 --kmax 4
//   hkm run lqt --lie gl2 --samples 50 --format csv --out lqt.csv
//   hkm explain lqt
//
// Exit codes: 0 all checks pass, 1 a check fails (or quadrature misses its
// tolerance), 2 bad configuration or an unstable window.

#include "hkm/cli/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace hkm;
using namespace hkm::cli;

namespace {

int emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return 2;
  }
  f << text;
  return 0;
}

int error(const std::string& suite, const std::string& kind, const std::string& msg, const std::string& format,
          const std::string& out, int code) {
  std::cerr << "error (" << kind << "): " << msg << "\n";
  if (format == "json") {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["error"] = {{"kind", kind}, {"message", msg}, {"exit_code", code}};
    emit(j.dump(2) + "\n", out);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks for higher current algebras on A_d"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string suite, format = "json", out, check;

  auto* run = app.add_subcommand("run", "run a check suite");
  std::vector<std::string> names;
  for (const auto& s : suites()) names.push_back(s.name);
  run->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(names));
  run->add_option("--dim", cfg.dim, "complex dimension d (Clifford: dim V)");
  run->add_option("--lie", cfg.lie, "sl2, glN, abelianN or a lie file");
  run->add_option("--rep", cfg.rep, "fundamental, adjoint, trivial, or file");
  run->add_option("--theta", cfg.theta, "killing, trace, chern or power");
  run->add_option("--weight-box", cfg.weight_box, "weights with |w_i| <= R");
  run->add_option("--kmax", cfg.kmax, "largest denominator power");
  run->add_option("--deg-max", cfg.deg_max, "largest numerator degree");
  run->add_option("--sym-cutoff", cfg.sym_cutoff, "largest Sym degree");
  run->add_option("--cutoff", cfg.cutoff, "mode cutoff for free fields");
  run->add_option("--statistics", cfg.statistics, "bosonic or fermionic")
      ->check(CLI::IsMember({"bosonic", "fermionic"}));
  run->add_option("--samples", cfg.samples, "random samples");
  run->add_option("--seed", cfg.seed, "RNG seed");
  run->add_option("--out", out, "output file (default stdout)");
  run->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  run->add_flag("--timings", cfg.timings, "include wall-clock timings (report is then not reproducible)");

  auto* explain = app.add_subcommand("explain", "describe a check");
  explain->add_option("check", check, "suite name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*explain) {
    const SuiteInfo* s = find_suite(check);
    if (!s) {
      std::cerr << "error (unknown-check): no check named '" << check << "'; known:";
      for (const auto& n : names) std::cerr << " " << n;
      std::cerr << "\n";
      return 2;
    }
    std::cout << s->name << "\n" << s->explain;
    return 0;
  }

  try {
    Report r = run_suite(suite, cfg);
    if (const int rc = emit(r.render(format), out)) return rc;
    const int code = exit_code(r);
    if (code == 2) std::cerr << "error (window): unstable entries; enlarge the window\n";
    return code;
  } catch (const config_error& e) {
    return error(suite, "config", e.what(), format, out, 2);
  } catch (const window_too_small& e) {
    return error(suite, "window", e.what(), format, out, 2);
  } catch (const cutoff_exceeded& e) {
    return error(suite, "window", e.what(), format, out, 2);
  } catch (const quadrature_error& e) {
    return error(suite, "tolerance", e.what(), format, out, 1);
  } catch (const std::invalid_argument& e) {
    return error(suite, "config", e.what(), format, out, 2);
  } catch (const std::exception& e) {
    return error(suite, "internal", e.what(), format, out, 1);
  }
}
