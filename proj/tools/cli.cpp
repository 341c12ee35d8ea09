#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "proxcalc/catalog.hpp"
#include "proxcalc/falsifier.hpp"
#include "proxcalc/fprox.hpp"
#include "proxcalc/io.hpp"
#include "proxcalc/oracle.hpp"
#include "proxcalc/sensitivity.hpp"
#include "proxcalc/splitting.hpp"

namespace proxcalc::cli {

namespace {

struct RunOptions {
  std::string input;
  std::string trace;
  std::string out;
  bool force = false;
  bool assert_monotone = false;
};

std::string algorithm_name(io::Algorithm a) {
  switch (a) {
    case io::Algorithm::A1: return "A1";
    case io::Algorithm::A2: return "A2";
    case io::Algorithm::DR: return "DR";
    case io::Algorithm::FB: return "FB";
  }
  return "?";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::ParseError, "cannot write '" + path + "'");
  os << content;
}

std::string default_trace_path(const std::string& input) {
  return std::filesystem::path(input).stem().string() + ".trace.csv";
}

bool residuals_nonincreasing(const IterationResult& res) {
  return std::adjacent_find(res.trace.begin(), res.trace.end(), [](const TraceEntry& a, const TraceEntry& b) {
           return b.residual > a.residual;
         }) == res.trace.end();
}

int report_run(const std::string& algo, const IterationResult& res, const RunOptions& opt, std::ostream& out,
               std::ostream& err) {
  const std::string trace_path = opt.trace.empty() ? default_trace_path(opt.input) : opt.trace;
  write_file(trace_path, io::trace_csv(res));
  out << "algorithm=" << algo << '\n';
  out << "prox=" << io::format_point(res.prox_value) << '\n';
  out << "y_star=" << io::format_point(res.y_star) << '\n';
  out << "residual=" << io::format_scalar(res.residual) << '\n';
  out << "iterations=" << res.iterations << '\n';
  out << "converged=" << (res.converged ? "true" : "false") << '\n';
  if (res.heuristic) out << "heuristic=true\n";
  out << "trace=" << trace_path << '\n';
  for (const std::string& w : res.warnings) err << "warning: " << w << '\n';
  if (opt.assert_monotone && !residuals_nonincreasing(res)) {
    err << "error: trace residuals are not monotone\n";
    return kNotMonotone;
  }
  if (!res.converged) {
    err << "error: MaxIterExceeded after " << res.iterations << " iterations\n";
    return kMaxIterExceeded;
  }
  return kOk;
}

FproxProblem make_problem(const io::ProblemFile& pf) {
  return FproxProblem(catalog::build(pf.f), catalog::build(pf.g), pf.additivity_declared);
}

int cmd_prox_sum(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  const io::ProblemFile pf = io::problem_from_json(io::read_json_file(opt.input));
  const FproxProblem p = make_problem(pf);
  const AdditivityCheck check = check_additivity(p);
  out << "additivity=" << (check.holds ? "verified" : "unverified") << " (" << check.certificate << ")\n";
  const bool force = opt.force || pf.force;
  if (!check.holds && !force) {
    err << "error: AdditivityUnverified: " << check.certificate << " (rerun with --force)\n";
    return kAdditivityUnverified;
  }
  const IterationResult res =
      a1_solve(p, pf.x, pf.config, force ? AdditivityMode::Unverified : AdditivityMode::Verified);
  return report_run("A1", res, opt, out, err);
}

int cmd_dr(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  const io::ProblemFile pf = io::problem_from_json(io::read_json_file(opt.input));
  const IterationResult res = dr_minimize(make_problem(pf), pf.config);
  return report_run("DR", res, opt, out, err);
}

int cmd_fb(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  const io::ProblemFile pf = io::problem_from_json(io::read_json_file(opt.input));
  const SmoothPairProblem p(catalog::build(pf.f), catalog::build(pf.g));
  if (pf.algorithm == io::Algorithm::FB) return report_run("FB", fb_classical(p, pf.config), opt, out, err);
  if (pf.algorithm != io::Algorithm::A2) {
    err << "note: algorithm " << algorithm_name(pf.algorithm) << " is not a forward-backward scheme; running A2\n";
  }
  return report_run("A2", a2_solve(p, pf.x, pf.config), opt, out, err);
}

int cmd_oracle(const RunOptions& opt, std::ostream& out, std::ostream&) {
  const io::ProblemFile pf = io::problem_from_json(io::read_json_file(opt.input));
  const ConvexFunction f = catalog::build(pf.f);
  const ConvexFunction g = catalog::build(pf.g);
  const oracle::ProxAnswer ans = oracle::oracle_prox(oracle::sum_of(f, g), pf.x);
  out << "oracle_prox=" << io::format_point(ans.argmin) << '\n';
  out << "grid_step=" << io::format_scalar(ans.grid_step) << '\n';
  if (pf.dim == 1) {
    const FproxProblem p(f, g, pf.additivity_declared);
    const oracle::SetAnswer s = oracle::fprox_set_oracle(p, pf.x[0], pf.figure_y);
    if (s.set.is_empty()) {
      out << "fprox_set=empty\n";
    } else {
      out << "fprox_set=[" << io::format_scalar(s.set.lo()) << ',' << io::format_scalar(s.set.hi()) << "]\n";
    }
    out << "set_grid_step=" << io::format_scalar(s.grid_step) << '\n';
    out << "set_inflation=" << io::format_scalar(s.inflation) << '\n';
  }
  return kOk;
}

int cmd_figure(const RunOptions& opt, std::ostream& out, std::ostream&) {
  const io::ProblemFile pf = io::problem_from_json(io::read_json_file(opt.input));
  const FproxProblem p = make_problem(pf);
  const auto rows = oracle::figure_data(p, pf.figure_x, pf.figure_y);
  write_file(opt.out, oracle::figure_csv(rows));
  out << "rows=" << rows.size() << '\n' << "out=" << opt.out << '\n';
  return kOk;
}

int cmd_sensitivity(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  const io::ViFile vf = io::vi_from_json(io::read_json_file(opt.input));
  const sensitivity::ViProblem p(vf.k, catalog::build(vf.g), vf.r0, vf.r1);
  const sensitivity::DerivativeReport rep = sensitivity::derivative_report(p, vf.config);
  const sensitivity::FdCheck fd = sensitivity::fd_check(p, vf.config, vf.fd_step);
  out << "u0=" << io::format_point(rep.at_zero.u) << '\n';
  out << "v0=" << io::format_point(rep.at_zero.v) << '\n';
  out << "cone=" << rep.cone.to_string() << '\n';
  out << "du=" << io::format_point(rep.du) << '\n';
  out << "dv=" << io::format_point(rep.dv) << '\n';
  out << "fd=" << io::format_point(fd.finite_difference) << '\n';
  out << "fd_error=" << io::format_scalar(fd.error) << '\n';
  out << "fd_consistent=" << (fd.consistent ? "true" : "false") << '\n';
  if (!fd.consistent) err << "warning: assumption (iv) likely violated (u may not be differentiable at 0)\n";
  return kOk;
}

int cmd_falsify(const RunOptions& opt, std::ostream& out, std::ostream&) {
  const falsifier::FormulaCandidate c = io::candidate_from_json(io::read_json_file(opt.input));
  const falsifier::Certificate cert = falsifier::contradiction_certificate(c);
  char buf[160];
  std::snprintf(buf, sizeof buf, "gap %.17g at gamma=%g\n", cert.gap, cert.gamma);
  out << buf;
  for (std::size_t i = 0; i < cert.probe_gammas.size(); ++i) {
    std::snprintf(buf, sizeof buf, "residual %.17g at gamma=%g\n", cert.probe_residuals[i], cert.probe_gammas[i]);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "max_probe_residual %.17g\n", cert.max_probe_residual);
  out << buf;
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proximal calculus for sums of convex functions", args.empty() ? "proxcalc" : args.front()};
  app.require_subcommand(1);
  RunOptions opt;

  auto add_input = [&opt](CLI::App* sub, const char* what) {
    sub->add_option("input", opt.input, what)->required();
  };
  auto add_run_flags = [&opt](CLI::App* sub) {
    sub->add_option("--trace", opt.trace, "trace CSV path (default: <input stem>.trace.csv)");
    sub->add_flag("--assert-monotone", opt.assert_monotone, "fail with exit 4 unless trace residuals never increase");
  };

  CLI::App* prox_sum = app.add_subcommand("prox-sum", "prox of f+g via the f-proximal fixed point (A1)");
  add_input(prox_sum, "problem JSON");
  add_run_flags(prox_sum);
  prox_sum->add_flag("--force", opt.force, "run even when additivity cannot be verified");

  CLI::App* dr = app.add_subcommand("dr", "classical Douglas-Rachford minimization of f+g");
  add_input(dr, "problem JSON");
  add_run_flags(dr);

  CLI::App* fb = app.add_subcommand("fb", "A2 or classical forward-backward (algorithm.name)");
  add_input(fb, "problem JSON");
  add_run_flags(fb);

  CLI::App* orc = app.add_subcommand("oracle", "brute-force prox of f+g and the 1D f-proximal set");
  add_input(orc, "problem JSON");

  CLI::App* figure = app.add_subcommand("figure", "CSV of the f-proximal set and prox_g over an x grid");
  add_input(figure, "problem JSON");
  figure->add_option("--out", opt.out, "output CSV")->required();

  CLI::App* sens = app.add_subcommand("sensitivity", "derivative of u(t) = prox_{i_K+g}(r0 + t r1) at 0");
  add_input(sens, "VI JSON");

  CLI::App* falsify = app.add_subcommand("falsify", "closed-formula contradiction certificate");
  add_input(falsify, "candidate JSON");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (prox_sum->parsed()) return cmd_prox_sum(opt, out, err);
    if (dr->parsed()) return cmd_dr(opt, out, err);
    if (fb->parsed()) return cmd_fb(opt, out, err);
    if (orc->parsed()) return cmd_oracle(opt, out, err);
    if (figure->parsed()) return cmd_figure(opt, out, err);
    if (sens->parsed()) return cmd_sensitivity(opt, out, err);
    if (falsify->parsed()) return cmd_falsify(opt, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::AdditivityUnverified: return kAdditivityUnverified;
      case Errc::MaxIterExceeded: return kMaxIterExceeded;
      default: return kParseError;
    }
  }
  return kParseError;
}

}  // namespace proxcalc::cli
