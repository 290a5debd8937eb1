// qtl: command-line front end for the quantum torus library.
//
// Exit status: 0 pass, 1 verification failure, 2 configuration error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qtl/cuspidal.hpp"
#include "qtl/errors.hpp"
#include "qtl/io.hpp"
#include "qtl/liealg.hpp"
#include "qtl/matrep.hpp"
#include "qtl/repn.hpp"
#include "qtl/verify.hpp"

namespace {

using qtl::io::Json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

struct ConfigError : qtl::Error {
  using qtl::Error::Error;
};

std::string superscript(int d) {
  static const char* sup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  if (d < 10) return sup[d];
  return "^" + std::to_string(d);
}

int cmd_torus_info(const qtl::TorusSpec& spec) {
  std::cout << "d=" << spec.rank() << " z=" << spec.pairs() << " k=[";
  for (int i = 0; i < spec.pairs(); ++i) std::cout << (i ? "," : "") << spec.orders()[static_cast<std::size_t>(i)];
  std::cout << "] L=" << spec.field_order() << "\n";
  if (spec.pairs() == 0) {
    std::cout << "commutative torus, R=ℤ" << superscript(spec.rank()) << "\n";
  } else {
    std::cout << "N=" << spec.matrix_size() << ", |Γ|=" << spec.gamma_order() << ", R = ";
    for (int i = 0; i < spec.rank(); ++i) {
      const auto b = spec.b_entry(static_cast<std::size_t>(i));
      std::cout << (i ? "×" : "") << (b == 1 ? std::string() : std::to_string(b)) << "ℤ";
    }
    std::cout << "\n";
  }
  std::cout << "R generators:";
  for (int i = 0; i < spec.rank(); ++i) {
    qtl::ExpVec e(static_cast<std::size_t>(spec.rank()));
    e[static_cast<std::size_t>(i)] = spec.b_entry(static_cast<std::size_t>(i));
    std::cout << " " << e.to_string();
  }
  std::cout << "\ncenter Z generated by:";
  for (int i = 0; i < spec.rank(); ++i) {
    qtl::ExpVec e(static_cast<std::size_t>(spec.rank()));
    e[static_cast<std::size_t>(i)] = spec.b_entry(static_cast<std::size_t>(i));
    std::cout << " t^" << e.to_string() << " t^" << (-e).to_string();
  }
  std::cout << "\nGamma_0 =";
  for (const auto& w : spec.gamma0()) std::cout << " " << w.to_string();
  std::cout << "\n";
  return kPass;
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<qtl::CycloNum> parse_alpha(const qtl::TorusSpec& spec, const std::string& text) {
  std::vector<qtl::CycloNum> alpha;
  if (text.empty()) return std::vector<qtl::CycloNum>(static_cast<std::size_t>(spec.rank()), qtl::CycloNum(0));
  for (const auto& piece : split_top_level(text, ',')) alpha.push_back(qtl::CycloNum::parse(piece));
  if (alpha.size() != static_cast<std::size_t>(spec.rank()))
    throw ConfigError("--alpha needs " + std::to_string(spec.rank()) + " entries");
  return alpha;
}

qtl::ExpVec parse_exp(const std::string& text) {
  std::vector<std::int64_t> v;
  for (const auto& piece : split_top_level(text, ',')) v.push_back(std::stoll(piece));
  return qtl::ExpVec(std::move(v));
}

void emit(const Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-")
    std::cout << text;
  else
    qtl::io::write_file(path, text);
}

// A module description file, or the reference pullback when empty.
qtl::GRepresentation load_rep(const qtl::TorusSpec& spec, const std::string& path) {
  if (path.empty()) return qtl::pullback(spec, qtl::reference_vw(spec));
  auto rep = qtl::io::representation_from_json(qtl::io::read_json(path));
  if (!(rep.spec() == spec)) throw ConfigError("module file belongs to another torus");
  return rep;
}

qtl::GLdGLNModule load_vw(const qtl::TorusSpec& spec, const std::string& path) {
  if (path.empty()) return qtl::reference_vw(spec);
  return qtl::io::vw_from_json(qtl::io::read_json(path), spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for rational quantum tori, their derivation algebras and cuspidal modules"};
  app.require_subcommand(1);

  std::string spec_name = "E1";
  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_name, "Torus spec file or builtin E1, E2, E3")->capture_default_str();
  };

  // torus info
  auto* torus = app.add_subcommand("torus", "Torus summaries");
  torus->require_subcommand(1);
  auto* torus_info = torus->add_subcommand("info", "Print d, z, k, N, |Γ|, R and Z");
  add_spec(torus_info);

  // bracket eval
  auto* bracket = app.add_subcommand("bracket", "Lie brackets of basis elements");
  bracket->require_subcommand(1);
  auto* bracket_eval = bracket->add_subcommand("eval", "Evaluate [A, B]");
  add_spec(bracket_eval);
  std::string algebra = "d";
  int max_degree = 3;
  std::string lhs, rhs;
  bracket_eval->add_option("--algebra", algebra, "d, wd or gtilde")
      ->check(CLI::IsMember({"d", "wd", "gtilde"}))
      ->capture_default_str();
  bracket_eval->add_option("--max-degree", max_degree, "Truncation degree for gtilde")->capture_default_str();
  bracket_eval->add_option("a", lhs, "First element")->required();
  bracket_eval->add_option("b", rhs, "Second element")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  add_spec(verify);
  qtl::RunConfig cfg;
  std::string output;
  bool serial = false;
  verify->add_option("--suite", cfg.suites, "Suites to run (default: all)");
  verify->add_flag("--flip-sigma", cfg.flip_sigma, "Use the flipped sigma convention in xmatrix");
  verify->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  verify->add_option("--box", cfg.box, "Weight and symbol box radius")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--degree", cfg.degree, "Degree bound")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--gtilde-bound", cfg.gtilde_bound, "Key bound of the exhaustive G~ Jacobi run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--samples", cfg.samples, "Sampled pairs per suite")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--cache-dir", cfg.cache_dir, "Structure-constant cache (default: $QTL_CACHE_DIR)");
  verify->add_option("--output", output, "Write the JSON report here");
  verify->add_flag("--serial", serial, "Use the serial reference kernels");
  bool list_suites = false;
  verify->add_flag("--list", list_suites, "List suite names and exit");

  // module ...
  auto* module = app.add_subcommand("module", "Graded G~-modules and cuspidal modules");
  module->require_subcommand(1);
  std::string rep_path, vw_path, alpha_text, mod_output;
  int box = 3, symbol_box = 1, degree = 3;
  bool tensor_field = false;
  auto add_module_opts = [&](CLI::App* sub) {
    add_spec(sub);
    sub->add_option("--rep", rep_path, "Module description file (default: natural (x) regular pullback)");
    sub->add_option("--vw", vw_path, "V (x) W file (default: natural (x) regular)");
    sub->add_option("--alpha", alpha_text, "Comma-separated entries of alpha (default 0)");
    sub->add_option("--box", box, "Weight box radius")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--degree", degree, "Degree bound")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--output", mod_output, "Output file (default: stdout)");
  };
  auto* mod_build = module->add_subcommand("build", "Dump the cuspidal module of a G~-module");
  add_module_opts(mod_build);
  mod_build->add_flag("--tensor-field", tensor_field, "Build F^alpha(V, W) from --vw instead");
  mod_build->add_option("--symbol-box", symbol_box, "Symbol exponent radius")->capture_default_str();
  auto* mod_verify = module->add_subcommand("verify", "Check the G~ relations of a module file");
  add_module_opts(mod_verify);
  auto* mod_decompose = module->add_subcommand("decompose", "Split an irreducible module as V (x) W");
  add_module_opts(mod_decompose);
  auto* mod_roundtrip = module->add_subcommand("roundtrip", "Build, extract coefficients and compare");
  add_module_opts(mod_roundtrip);
  auto* mod_compare = module->add_subcommand("compare", "Compare the functor image with F^alpha(V, W)");
  add_module_opts(mod_compare);

  // export
  auto* exp = app.add_subcommand("export", "Write matrices and module files");
  add_spec(exp);
  std::string what = "x", exp_vec = "1,1", exp_output;
  int jet_order = 2;
  exp->add_option("what", what, "x, module, jet or vw")->check(CLI::IsMember({"x", "module", "jet", "vw"}))->required();
  exp->add_option("--exp", exp_vec, "Exponent of X^n for `x`")->capture_default_str();
  exp->add_option("--order", jet_order, "Jet order for `jet`")->check(CLI::PositiveNumber)->capture_default_str();
  exp->add_option("--output", exp_output, "Output file (default: stdout)");

  // cache
  auto* cache = app.add_subcommand("cache", "Build or reload the G~ structure-constant cache");
  add_spec(cache);
  std::string cache_dir;
  int cache_degree = 3;
  cache->add_option("--dir", cache_dir, "Cache directory (default: $QTL_CACHE_DIR)");
  cache->add_option("--degree", cache_degree, "Maximal degree")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    if (verify->parsed() && list_suites) {
      for (const auto& n : qtl::suite_names()) std::cout << n << "\n";
      return kPass;
    }
    const qtl::TorusSpec spec = qtl::io::load_spec(spec_name);

    if (torus_info->parsed()) return cmd_torus_info(spec);

    if (bracket_eval->parsed()) {
      if (algebra == "d") {
        std::cout << qtl::to_string(qtl::bracket_D(spec, qtl::io::parse_d_element(spec, lhs),
                                                   qtl::io::parse_d_element(spec, rhs)))
                  << "\n";
      } else if (algebra == "wd") {
        std::cout << qtl::to_string(qtl::bracket_Wd(qtl::io::parse_wd_element(lhs), qtl::io::parse_wd_element(rhs)))
                  << "\n";
      } else {
        std::cout << qtl::to_string(qtl::bracket_G(spec, qtl::io::parse_g_element(spec, lhs),
                                                   qtl::io::parse_g_element(spec, rhs), max_degree))
                  << "\n";
      }
      return kPass;
    }

    if (verify->parsed()) {
      if (cfg.cache_dir.empty()) cfg.cache_dir = qtl::cache_dir_from_env();
      cfg.exec = serial ? qtl::Execution::Serial : qtl::Execution::Parallel;
      const auto reports = qtl::run_suites(spec, cfg);
      const Json report = qtl::report_json(spec, cfg, reports);
      if (!output.empty()) qtl::io::write_file(output, report.dump(2) + "\n");
      bool all = true;
      for (const auto& r : reports) {
        char line[160];
        std::snprintf(line, sizeof line, "%-20s %-4s %10zu cases %8.2f s", r.name.c_str(),
                      r.skipped ? "SKIP" : (r.pass() ? "PASS" : "FAIL"), r.cases, r.seconds);
        std::cout << line << "\n";
        for (const auto& f : r.failures) std::cout << "    counterexample: " << f << "\n";
        all = all && r.pass();
      }
      return all ? kPass : kFail;
    }

    if (module->parsed()) {
      const auto alpha = parse_alpha(spec, alpha_text);
      if (mod_build->parsed()) {
        const auto m = tensor_field ? qtl::tensor_field_module(spec, alpha, load_vw(spec, vw_path), box)
                                    : qtl::build_module(alpha, load_rep(spec, rep_path), box);
        emit(qtl::io::cuspidal_dump(m, box, symbol_box), mod_output);
        return kPass;
      }
      if (mod_verify->parsed()) {
        const auto rep = load_rep(spec, rep_path);
        const auto r = qtl::verify_representation(rep, std::max(rep.cutoff() - 1, degree));
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.pairs_checked << " pairs";
        if (r.failure) std::cout << ": " << *r.failure;
        std::cout << "\n";
        if (!r.pass) return kFail;
        const auto m = qtl::build_module(alpha, rep, box);
        const auto ax = qtl::verify_module_axioms(m, box, 100, 1);
        std::cout << (ax.pass ? "PASS" : "FAIL") << " module axioms, " << ax.pairs_checked << " symbol pairs";
        if (ax.counterexample) std::cout << ": " << *ax.counterexample;
        std::cout << "\n";
        return ax.pass ? kPass : kFail;
      }
      if (mod_decompose->parsed()) {
        const auto dec = qtl::decompose_tensor(load_rep(spec, rep_path));
        std::cerr << "V: dim " << dec.vw.v.dim << ", W: dim " << dec.vw.w.dim << "\n";
        emit(qtl::io::vw_to_json(spec, dec.vw), mod_output);
        return kPass;
      }
      if (mod_roundtrip->parsed()) {
        const auto rep = load_rep(spec, rep_path);
        const auto m = qtl::build_module(alpha, rep, box);
        const auto back = qtl::coefficients_to_representation(
            qtl::extract_coefficients(qtl::operator_family(m, degree), spec, alpha));
        const bool ok = qtl::representations_equal(back, rep);
        std::cout << (ok ? "PASS" : "FAIL") << " round trip, degree bound " << degree << "\n";
        return ok ? kPass : kFail;
      }
      if (mod_compare->parsed()) {
        const auto vw = load_vw(spec, vw_path);
        const auto a = qtl::build_module(alpha, qtl::pullback(spec, vw), box);
        const auto b = qtl::tensor_field_module(spec, alpha, vw, box);
        const bool ok = qtl::modules_equal_on_box(a, b, box, box);
        std::cout << (ok ? "equal" : "different") << " on box radius " << box << "\n";
        return ok ? kPass : kFail;
      }
    }

    if (exp->parsed()) {
      if (what == "x") {
        const auto n = parse_exp(exp_vec);
        if (n.size() != static_cast<std::size_t>(spec.rank())) throw ConfigError("--exp needs d entries");
        emit(qtl::io::matrix_to_json(qtl::x_power(spec, n)), exp_output);
      } else if (what == "module") {
        emit(qtl::io::representation_to_json(qtl::pullback(spec, qtl::reference_vw(spec))), exp_output);
      } else if (what == "jet") {
        emit(qtl::io::representation_to_json(qtl::jet_module(spec, jet_order)), exp_output);
      } else {
        emit(qtl::io::vw_to_json(spec, qtl::reference_vw(spec)), exp_output);
      }
      return kPass;
    }

    if (cache->parsed()) {
      if (cache_dir.empty()) cache_dir = qtl::cache_dir_from_env();
      if (cache_dir.empty()) throw ConfigError("no cache directory: pass --dir or set QTL_CACHE_DIR");
      const auto res = qtl::cache_structure_constants(spec, cache_degree, cache_dir);
      std::cout << qtl::to_string(res.status) << " " << res.path << " " << res.table.entries.size() << " pairs\n";
      return kPass;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const qtl::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const qtl::InvalidSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const qtl::IOFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const qtl::MalformedBasisKey& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const qtl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kPass;
}
