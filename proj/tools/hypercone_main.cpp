#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "hypercone/construct.hpp"
#include "hypercone/hyperbolic.hpp"
#include "hypercone/json_io.hpp"
#include "hypercone/pencil.hpp"
#include "hypercone/polycone.hpp"
#include "hypercone/vamos.hpp"

namespace {

using namespace hypercone;

constexpr int kExitPass = 0;
constexpr int kExitVerifiedFailure = 1;
constexpr int kExitUsage = 2;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

int cmd_verify_vamos(uint64_t samples, uint64_t seed, bool skip_support,
                     const std::string& json_path) {
  VerifyOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.skip_support_search = skip_support;
  CertReport report = verify_certificate(builtin_vamos(), opts);
  report.print(std::cout);
  if (!json_path.empty()) write_json(json_path, certreport_to_json(report));
  return report.overall ? kExitPass : kExitVerifiedFailure;
}

int cmd_construct(const std::string& h_path, const std::string& e_text, const std::string& f_path,
                  int dprime, const std::string& out_prefix, SolveOptions opts,
                  const std::string& json_path) {
  Poly h = poly_from_json(load_json(h_path));
  PolyVec f = polyvec_from_json(load_json(f_path));
  std::vector<Rational> e = parse_point(e_text);

  ConstraintSystem sys = assemble_constraints(h, e, f, dprime);
  std::cout << "assembled: " << sys.unknown_count() << " unknowns, " << sys.rows.size()
            << " equations\n";
  NumericSolution numeric = solve_feasibility(sys, e, opts);
  std::cout << "solver: " << (numeric.feasible ? "feasible" : "infeasible at tolerance")
            << " after " << numeric.iterations << " iterations (residual " << numeric.residual
            << ", lambda_min " << numeric.lambda_min << ")\n";
  if (!numeric.feasible) return kExitVerifiedFailure;
  RationalizeResult exact = rationalize(std::span<const double>(numeric.u), sys, e, opts);
  if (!exact.ok()) {
    std::cout << "rationalization failed at stage "
              << (exact.failed_stage == RationalizeStage::rounding      ? "rounding"
                  : exact.failed_stage == RationalizeStage::projection  ? "projection"
                                                                        : "definiteness")
              << "\n";
    return kExitVerifiedFailure;
  }
  const ExactSolution& sol = *exact.solution;

  json diag;
  Poly det = pencil_det(integer_scaled(sol.pencil));
  diag["det"] = poly_to_json(det);
  auto quotient = divide_exact(det, h);
  if (quotient) diag["q"] = poly_to_json(*quotient);
  if (dprime == sys.d - 1) {
    bool g_zero = true;
    for (const auto& gi : sol.g)
      if (!gi.is_zero()) g_zero = false;
    diag["g_degenerate"] = g_zero;
    if (!g_zero) {
      Poly p = derived_p(f, sol.g);
      json mixed = json::array();
      for (bool ok : check_mixed_identity(h, p, f, sol.pencil)) mixed.push_back(ok);
      diag["mixed_identity"] = std::move(mixed);
    }
  }
  diag["residual"] = numeric.residual;
  diag["iterations"] = numeric.iterations;

  write_json(out_prefix + ".pencil.json", pencil_to_json(sol.pencil));
  write_json(out_prefix + ".g.json", polyvec_to_json(sol.g));
  write_json(out_prefix + ".diag.json", diag);
  if (!json_path.empty()) write_json(json_path, diag);
  std::cout << "wrote " << out_prefix << ".pencil.json, .g.json, .diag.json\n";
  std::cout << "det divisible by h: " << (quotient ? "yes" : "no") << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certification toolkit for hyperbolicity cones and spectrahedra"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h / --h for polynomial inputs

  uint64_t samples = 10000;
  uint64_t seed = 0;
  std::string json_path;
  app.add_option("--samples", samples, "sample count for randomized checks")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed, echoed into reports")->capture_default_str();
  app.add_option("--json", json_path, "write the machine-readable report here");
  app.fallthrough();

  auto* verify = app.add_subcommand("verify-vamos", "run the full Vamos verification pipeline");
  verify->set_help_flag("--help", "print help");
  bool skip_support = false;
  verify->add_flag("--skip-support-search", skip_support, "skip the tangency search step");

  auto* construct = app.add_subcommand("construct", "solve A(x)f = h*g, A(e) > 0 and rationalize");
  construct->set_help_flag("--help", "print help");
  std::string h_path, f_path, e_text, out_prefix = "construct-out";
  int dprime = 0;
  double residual_tol = 1e-10;
  uint64_t max_iter = 100000;
  long denom_bound = 1000000;
  std::string trace_csv;
  construct->add_option("--h", h_path, "polynomial JSON file")->required();
  construct->add_option("--e", e_text, "direction, comma-separated rationals")->required();
  construct->add_option("--f", f_path, "polynomial vector JSON file")->required();
  construct->add_option("--dprime", dprime, "degree of the entries of f")->required();
  construct->add_option("--out", out_prefix, "output file prefix")->capture_default_str();
  construct->add_option("--residual-tol", residual_tol)->capture_default_str();
  construct->add_option("--max-iter", max_iter)->capture_default_str();
  construct->add_option("--denom-bound", denom_bound)->capture_default_str();
  construct->add_option("--trace-csv", trace_csv, "numeric solver trace");

  auto* det = app.add_subcommand("det", "exact determinant of a pencil");
  det->set_help_flag("--help", "print help");
  std::string pencil_path;
  det->add_option("--pencil", pencil_path, "pencil JSON file")->required();

  auto* dual = app.add_subcommand("dual", "dual cone generators of a ray cone");
  dual->set_help_flag("--help", "print help");
  std::string rays_path;
  dual->add_option("--rays", rays_path, "ray cone JSON file")->required();

  auto* member_cmd = app.add_subcommand("cone-member", "hyperbolicity cone membership");
  member_cmd->set_help_flag("--help", "print help");
  std::string mh_path, me_text, mv_text;
  member_cmd->add_option("--h", mh_path, "polynomial JSON file")->required();
  member_cmd->add_option("--e", me_text, "hyperbolicity direction")->required();
  member_cmd->add_option("--v", mv_text, "point to test")->required();

  auto* hyp = app.add_subcommand("hyperbolic-check", "sampled real-rootedness evidence");
  hyp->set_help_flag("--help", "print help");
  std::string hh_path, he_text;
  hyp->add_option("--h", hh_path, "polynomial JSON file")->required();
  hyp->add_option("--e", he_text, "candidate hyperbolicity direction")->required();

  auto* dump = app.add_subcommand("vamos-data", "write the bundled Vamos data as JSON files");
  dump->set_help_flag("--help", "print help");
  std::string dump_dir = ".";
  dump->add_option("--out", dump_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      if (samples < 1) {
        std::cerr << "error: --samples must be at least 1\n";
        return kExitUsage;
      }
      return cmd_verify_vamos(samples, seed, skip_support, json_path);
    }
    if (construct->parsed()) {
      SolveOptions opts;
      opts.residual_tol = residual_tol;
      opts.max_iter = max_iter;
      opts.denom_bound = denom_bound;
      opts.seed = seed;
      opts.trace_csv = trace_csv;
      return cmd_construct(h_path, e_text, f_path, dprime, out_prefix, opts, json_path);
    }
    if (det->parsed()) {
      SymPencil p = pencil_from_json(load_json(pencil_path));
      json out = poly_to_json(pencil_det(p));
      std::cout << out.dump(2) << "\n";
      if (!json_path.empty()) write_json(json_path, out);
      return kExitPass;
    }
    if (dual->parsed()) {
      RayCone c = raycone_from_json(load_json(rays_path));
      json out = forms_to_json(c.dim, dual_cone(c));
      std::cout << out.dump(2) << "\n";
      if (!json_path.empty()) write_json(json_path, out);
      return kExitPass;
    }
    if (member_cmd->parsed()) {
      Poly h = poly_from_json(load_json(mh_path));
      HyperbolicInstance inst = HyperbolicInstance::make(h, parse_point(me_text));
      bool inside = in_cone(inst, parse_point(mv_text));
      std::cout << (inside ? "yes" : "no") << "\n";
      return inside ? kExitPass : kExitVerifiedFailure;
    }
    if (hyp->parsed()) {
      if (samples < 1) {
        std::cerr << "error: --samples must be at least 1\n";
        return kExitUsage;
      }
      Poly h = poly_from_json(load_json(hh_path));
      HyperbolicInstance inst = HyperbolicInstance::make(h, parse_point(he_text));
      SampleReport report = check_hyperbolic_sampled(inst, samples, seed);
      json out = report_to_json(report);
      std::cout << out.dump(2) << "\n";
      if (!json_path.empty()) write_json(json_path, out);
      return report.pass() ? kExitPass : kExitVerifiedFailure;
    }
    if (dump->parsed()) {
      const VamosBundle& b = builtin_vamos();
      write_json(dump_dir + "/h4.json", poly_to_json(b.h4));
      write_json(dump_dir + "/q.json", poly_to_json(b.q));
      write_json(dump_dir + "/f.json", polyvec_to_json(b.f));
      write_json(dump_dir + "/g.json", polyvec_to_json(b.g));
      write_json(dump_dir + "/pencil.json", pencil_to_json(b.pencil));
      write_json(dump_dir + "/rays.json", raycone_to_json(b.polytope));
      std::cout << "wrote h4.json q.json f.json g.json pencil.json rays.json to " << dump_dir
                << "\n";
      return kExitPass;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
