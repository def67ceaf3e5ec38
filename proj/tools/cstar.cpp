// cstar: operations on elements and states of finite-dimensional C*-algebras.
//
// Exit codes: 0 ok, 1 rejected, 2 malformed input, 3 numerical failure,
// 4 not-in-spectrum, 5 not-self-adjoint, 6 zero-weight. Failure diagnostics
// go to stderr; stdout carries results only and is byte-stable for fixed
// inputs and seed.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "cstar/algebra.hpp"
#include "cstar/eigenstates.hpp"
#include "cstar/errors.hpp"
#include "cstar/expr.hpp"
#include "cstar/functional_calculus.hpp"
#include "cstar/gns.hpp"
#include "cstar/io.hpp"
#include "cstar/state.hpp"
#include "cstar/verify.hpp"

namespace {

using nlohmann::json;

std::string format_complex(cstar::Complex z) {
  char buffer[64];
  if (z.imag() == 0.0)
    std::snprintf(buffer, sizeof(buffer), "%.12g", z.real());
  else
    std::snprintf(buffer, sizeof(buffer), "%.12g%+.12gi", z.real(), z.imag());
  return buffer;
}

void print_element(const cstar::AlgebraElement& x, bool json_mode) {
  if (json_mode) {
    std::cout << cstar::element_to_json(x).dump(2) << "\n";
    return;
  }
  std::cout << "shape [" << x.shape().to_string() << "]\n";
  for (int k = 0; k < x.block_count(); ++k) {
    std::cout << "block " << k << ":\n";
    const cstar::Matrix& m = x.block(k);
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c)
        std::cout << (c ? "  " : "  ") << format_complex(m(r, c));
      std::cout << "\n";
    }
  }
}

struct SpectrumArgs {
  std::string file;
  double cluster_tol = -1.0;  // negative: derive the default from the input
  bool json_mode = false;
};

int cmd_spectrum(const SpectrumArgs& args) {
  cstar::AlgebraElement x = cstar::load_element(args.file);
  cstar::SpectrumReport report = args.cluster_tol < 0.0
                                     ? cstar::spectrum(x)
                                     : cstar::spectrum(x, args.cluster_tol);
  if (args.json_mode) {
    json doc;
    doc["is_self_adjoint"] = report.is_self_adjoint;
    doc["cluster_tolerance"] = report.cluster_tolerance;
    doc["points"] = json::array();
    for (const auto& p : report.points)
      doc["points"].push_back({{"value", {p.value.real(), p.value.imag()}},
                               {"multiplicity", p.multiplicity}});
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "self-adjoint: " << (report.is_self_adjoint ? "yes" : "no")
              << "\ncluster tolerance: ";
    std::printf("%.6e\n", report.cluster_tolerance);
    for (const auto& p : report.points)
      std::cout << "  " << format_complex(p.value) << "  (multiplicity "
                << p.multiplicity << ")\n";
  }
  return 0;
}

struct EigenstateArgs {
  std::string file;
  double lambda = 0.0;
  std::string out;
};

int cmd_eigenstate(const EigenstateArgs& args) {
  cstar::AlgebraElement x = cstar::load_element(args.file);
  cstar::State E = cstar::eigenstate_for(x, args.lambda);
  if (!args.out.empty()) cstar::save_json(cstar::state_to_json(E), args.out);
  cstar::EigenstateCertificate cert =
      cstar::is_eigenstate(E, x, args.lambda);
  std::cout << cstar::certificate_to_json(cert).dump() << "\n";
  return 0;
}

struct CheckArgs {
  std::string op_file;
  std::string state_file;
  double lambda_re = 0.0;
  double lambda_im = 0.0;
  double tol = -1.0;
};

int cmd_check(const CheckArgs& args) {
  cstar::AlgebraElement x = cstar::load_element(args.op_file);
  cstar::State E = cstar::load_state(args.state_file);
  cstar::Complex lambda(args.lambda_re, args.lambda_im);
  double tol =
      args.tol < 0.0 ? cstar::default_acceptance_tol(x) : args.tol;
  cstar::EigenstateCertificate cert = cstar::is_eigenstate(E, x, lambda, tol);
  std::cout << cstar::certificate_to_json(cert).dump() << "\n";
  return cert.accepted ? 0 : 1;
}

struct VerifyArgs {
  std::string shape = "4";
  std::uint64_t seed = cstar::kProbeSeed;
  int trials = 100;
  double perturb = 0.0;
  bool json_mode = false;
};

int cmd_verify(const VerifyArgs& args) {
  cstar::VerificationOptions options;
  options.shape = cstar::AlgebraShape::parse(args.shape);
  options.seed = args.seed;
  options.trials = args.trials;
  options.perturbation = args.perturb;
  cstar::VerificationReport report = cstar::run_verification(options);
  std::cout << (args.json_mode ? cstar::format_report_json(report)
                               : cstar::format_report_table(report));
  std::fprintf(stderr, "wall time %.3fs\n", report.wall_seconds);
  return report.all_passed() ? 0 : 1;
}

struct GnsArgs {
  std::string state_file;
  double rank_tol = 1e-10;
  bool json_mode = false;
};

int cmd_gns(const GnsArgs& args) {
  cstar::State E = cstar::load_state(args.state_file);
  cstar::GnsData g = cstar::gns_construct(E, args.rank_tol);
  json doc{{"hilbert_dim", g.hilbert_dim},
           {"fidelity_defect", cstar::gns_fidelity_defect(g, E)},
           {"cyclicity_margin", cstar::gns_cyclicity_margin(g)}};
  if (args.json_mode) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "hilbert_dim: " << g.hilbert_dim << "\n";
    std::printf("fidelity_defect: %.6e\n",
                doc["fidelity_defect"].get<double>());
    std::printf("cyclicity_margin: %.6e\n",
                doc["cyclicity_margin"].get<double>());
  }
  return 0;
}

struct CompressArgs {
  std::string projection_file;
  std::string state_file;
  double tol = 1e-12;
  std::string out;
  bool json_mode = false;
};

int cmd_compress(const CompressArgs& args) {
  cstar::AlgebraElement p = cstar::load_element(args.projection_file);
  cstar::State E = cstar::load_state(args.state_file);
  cstar::State compressed = cstar::compress(E, p, args.tol);
  json doc = cstar::state_to_json(compressed);
  if (!args.out.empty()) cstar::save_json(doc, args.out);
  if (args.json_mode || args.out.empty()) std::cout << doc.dump(2) << "\n";
  return 0;
}

struct ApplyArgs {
  std::string op_file;
  std::string function;
  std::string out;
  bool json_mode = false;
};

int cmd_apply(const ApplyArgs& args) {
  cstar::AlgebraElement x = cstar::load_element(args.op_file);

  cstar::AlgebraElement result = cstar::AlgebraElement::zero(x.shape());
  int degree = 0;
  std::string inner;
  if (cstar::parse_chebyshev_name(args.function, degree, inner)) {
    // Polynomial route: interpolate on the spectral interval of x, then
    // apply via the Clenshaw recurrence.
    auto [lo, hi] = cstar::spectral_interval(x);
    cstar::PolynomialApproximant p = cstar::chebyshev_approximant(
        cstar::scalar_function_by_name(inner), lo, hi, degree);
    result = p.apply(x);
    std::fprintf(stderr, "chebyshev degree %d on [%.6g, %.6g], sup error %.3e\n",
                 degree, lo, hi, p.sup_error);
  } else {
    result = cstar::apply_function(
        x, cstar::scalar_function_by_name(args.function));
  }
  if (!args.out.empty())
    cstar::save_json(cstar::element_to_json(result), args.out);
  if (args.json_mode || args.out.empty()) print_element(result, args.json_mode);
  return 0;
}

struct EvalArgs {
  std::string expression;
  std::vector<std::string> bindings;
  std::string out;
  bool json_mode = false;
};

int cmd_eval(const EvalArgs& args) {
  cstar::expr::ExprPtr tree = cstar::expr::parse(args.expression);

  cstar::expr::Environment env;
  bool have_shape = false;
  for (const std::string& binding : args.bindings) {
    size_t eq = binding.find('=');
    if (eq == std::string::npos || eq == 0)
      throw cstar::MalformedInput("binding '" + binding +
                                  "' is not of the form name=file");
    std::string name = binding.substr(0, eq);
    cstar::AlgebraElement element = cstar::load_element(binding.substr(eq + 1));
    if (!have_shape) {
      env.shape = element.shape();
      have_shape = true;
    }
    cstar::require_same_shape(env.shape, element.shape(), "eval bindings");
    env.bindings.emplace(std::move(name), std::move(element));
  }
  if (!have_shape)
    throw cstar::MalformedInput("eval needs at least one --bind name=file");

  cstar::AlgebraElement result = cstar::expr::evaluate_expr(*tree, env);
  if (!args.out.empty())
    cstar::save_json(cstar::element_to_json(result), args.out);
  if (args.json_mode || args.out.empty()) print_element(result, args.json_mode);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional C*-algebra toolkit"};
  app.require_subcommand(1);

  SpectrumArgs spectrum_args;
  CLI::App* sc_spectrum =
      app.add_subcommand("spectrum", "eigenvalues of an operator file");
  sc_spectrum->add_option("file", spectrum_args.file, "operator JSON")
      ->required();
  sc_spectrum->add_option("--cluster-tol", spectrum_args.cluster_tol,
                          "merge radius (default 1e-8*max(1,norm))");
  sc_spectrum->add_flag("--json", spectrum_args.json_mode, "JSON output");

  EigenstateArgs eigenstate_args;
  CLI::App* sc_eigenstate = app.add_subcommand(
      "eigenstate", "synthesize an eigenstate at a spectral point");
  sc_eigenstate->add_option("file", eigenstate_args.file, "operator JSON")
      ->required();
  sc_eigenstate
      ->add_option("lambda", eigenstate_args.lambda, "spectral point")
      ->required();
  sc_eigenstate->add_option("--out", eigenstate_args.out,
                            "write the state document here");

  CheckArgs check_args;
  CLI::App* sc_check = app.add_subcommand(
      "check", "certify a state as an eigenstate of an operator");
  sc_check->add_option("operator", check_args.op_file, "operator JSON")
      ->required();
  sc_check->add_option("state", check_args.state_file, "state JSON")
      ->required();
  sc_check->add_option("lambda", check_args.lambda_re, "eigenvalue (real part)")
      ->required();
  sc_check->add_option("--lambda-im", check_args.lambda_im,
                       "eigenvalue imaginary part");
  sc_check->add_option("--tol", check_args.tol,
                       "acceptance tolerance (default 1e-10*max(1,norm^2))");

  VerifyArgs verify_args;
  CLI::App* sc_verify = app.add_subcommand(
      "verify", "run the theorem suite on seeded random data");
  sc_verify->add_option("--shape", verify_args.shape,
                        "block dimensions, e.g. 4 or 2,3 (each <= 16)");
  sc_verify->add_option("--seed", verify_args.seed, "random seed");
  sc_verify->add_option("--trials", verify_args.trials, "trials per record");
  sc_verify->add_option("--perturb", verify_args.perturb,
                        "negative control: eigenstate perturbation weight");
  sc_verify->add_flag("--json", verify_args.json_mode, "JSON output");

  GnsArgs gns_args;
  CLI::App* sc_gns =
      app.add_subcommand("gns", "GNS construction summary for a state");
  sc_gns->add_option("state", gns_args.state_file, "state JSON")->required();
  sc_gns->add_option("--rank-tol", gns_args.rank_tol,
                     "relative null-space cut");
  sc_gns->add_flag("--json", gns_args.json_mode, "JSON output");

  CompressArgs compress_args;
  CLI::App* sc_compress = app.add_subcommand(
      "compress", "compress a state by a projection: x -> E(pxp)/E(p)");
  sc_compress
      ->add_option("projection", compress_args.projection_file,
                   "projection operator JSON")
      ->required();
  sc_compress->add_option("state", compress_args.state_file, "state JSON")
      ->required();
  sc_compress->add_option("--tol", compress_args.tol,
                          "projection and weight tolerance");
  sc_compress->add_option("--out", compress_args.out, "output state file");
  sc_compress->add_flag("--json", compress_args.json_mode, "JSON output");

  ApplyArgs apply_args;
  CLI::App* sc_apply = app.add_subcommand(
      "apply", "apply a scalar function to a self-adjoint operator");
  sc_apply->add_option("file", apply_args.op_file, "operator JSON")
      ->required();
  sc_apply
      ->add_option("function", apply_args.function,
                   "sq|cube|exp|abs|id|witness:<l1>:<l2>|"
                   "chebyshev:<degree>:<name>")
      ->required();
  sc_apply->add_option("--out", apply_args.out, "output operator file");
  sc_apply->add_flag("--json", apply_args.json_mode, "JSON output");

  EvalArgs eval_args;
  CLI::App* sc_eval = app.add_subcommand(
      "eval", "evaluate a *-algebra expression over bound elements");
  sc_eval->add_option("expression", eval_args.expression, "e.g. \"x'*x\"")
      ->required();
  sc_eval->add_option("--bind", eval_args.bindings,
                      "name=file element binding (repeatable)");
  sc_eval->add_option("--out", eval_args.out, "output operator file");
  sc_eval->add_flag("--json", eval_args.json_mode, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sc_spectrum->parsed()) return cmd_spectrum(spectrum_args);
    if (sc_eigenstate->parsed()) return cmd_eigenstate(eigenstate_args);
    if (sc_check->parsed()) return cmd_check(check_args);
    if (sc_verify->parsed()) return cmd_verify(verify_args);
    if (sc_gns->parsed()) return cmd_gns(gns_args);
    if (sc_compress->parsed()) return cmd_compress(compress_args);
    if (sc_apply->parsed()) return cmd_apply(apply_args);
    if (sc_eval->parsed()) return cmd_eval(eval_args);
  } catch (const cstar::NotInSpectrum& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const cstar::NotSelfAdjoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const cstar::ZeroWeight& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const cstar::NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const cstar::NotAnEigenstate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cstar::Error& e) {
    // MalformedInput, ShapeMismatch, SyntaxError, UnboundName, ZeroVector,
    // NotAProjection, DegenerateWitness, EvaluatorDomain: bad input.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
