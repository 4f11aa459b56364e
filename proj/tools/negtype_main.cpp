// negtype: supremal p-negative type of finite metric spaces.
//
//   negtype compute  (--graph F | --matrix F | --gen SPEC) [options]
//   negtype trace    (--graph F | --matrix F | --gen SPEC) --from A --to B --step S
//   negtype verify   [--tol R]
//   negtype gap-scan [--n-max N] [--threads N]
//
// Exit codes: 0 ok, 1 failed check (verify / gap-scan), 2 bad input,
// 3 infinite_beyond under --require-finite.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "negtype/cli.hpp"
#include "negtype/error.hpp"

namespace {

using namespace negtype;

struct InputOptions {
  std::string graph, matrix, gen;
  bool normalize = false;

  void attach(CLI::App& cmd) {
    auto* g = cmd.add_option("--graph", graph, "edge-list file");
    auto* m = cmd.add_option("--matrix", matrix, "distance-matrix CSV file");
    auto* s = cmd.add_option("--gen", gen, "generator, e.g. cycle:5, kbipartite:2,3, fixture:G1");
    g->excludes(m)->excludes(s);
    m->excludes(s);
    cmd.add_flag("--normalize", normalize, "divide matrix input by its minimum distance");
  }

  cli::InputSpec spec() const {
    if (!graph.empty()) return {cli::InputKind::GraphFile, graph, true};
    if (!matrix.empty()) return {cli::InputKind::MatrixFile, matrix, normalize};
    if (!gen.empty()) return {cli::InputKind::Generator, gen, true};
    throw Error(ErrorKind::BadArgument, "one of --graph, --matrix or --gen is required");
  }
};

void print_summary(const cli::RunReport& r) {
  const auto& res = r.result;
  std::fprintf(stderr, "%s: n=%zu ", r.input.source.c_str(), r.points);
  if (res.finite())
    std::fprintf(stderr, "p=%.12f (%s), bracket width %.2e\n", res.p,
                 std::string(to_string(res.trigger)).c_str(), res.p_hi - res.p_lo);
  else
    std::fprintf(stderr, "negative type holds up to p_max=%g (infinite_beyond)\n", res.p);
  if (r.certificate) {
    std::fprintf(stderr, "  alpha =");
    for (double a : r.certificate->alpha) std::fprintf(stderr, " %.6f", a);
    std::fprintf(stderr, "\n  <D alpha, alpha> = %.3e, roundness gap = %.3e\n",
                 r.certificate->form_value, r.certificate->roundness_gap);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supremal p-negative type of finite metric spaces"};
  app.require_subcommand(1);

  PntConfig cfg;
  double tol = 1e-9;
  unsigned threads = 1;
  auto add_scan_options = [&](CLI::App& cmd) {
    cmd.add_option("--p-max", cfg.p_max, "upper end of the scan")->capture_default_str();
    cmd.add_option("--grid-step", cfg.grid_step, "scan grid step")->capture_default_str();
    cmd.add_option("--tol", tol, "eigenvalue and determinant tolerance")->capture_default_str();
    cmd.add_option("--threads", threads, "worker threads")->capture_default_str();
  };

  InputOptions compute_in;
  bool require_finite = false, quiet = false;
  std::string trace_out;
  auto* compute = app.add_subcommand("compute", "compute the supremal p-negative type");
  compute_in.attach(*compute);
  add_scan_options(*compute);
  compute->add_flag("--require-finite", require_finite, "exit 3 on infinite_beyond");
  compute->add_flag("--quiet", quiet, "no summary on stderr");
  compute->add_option("--trace-out", trace_out, "also write the trace CSV to this file");

  InputOptions trace_in;
  double p_from = 0.0, p_to = 2.0, p_step = 0.01;
  auto* trace_cmd = app.add_subcommand("trace", "sample det, bordered det, inner product and lambda_max");
  trace_in.attach(*trace_cmd);
  trace_cmd->add_option("--from", p_from)->capture_default_str();
  trace_cmd->add_option("--to", p_to)->capture_default_str();
  trace_cmd->add_option("--step", p_step)->capture_default_str();
  trace_cmd->add_option("--tol", tol, "blank the inner column where D_p is this ill-conditioned")->capture_default_str();

  std::optional<double> verify_tol;
  auto* verify = app.add_subcommand("verify", "run the regression fixture table");
  verify->add_option("--tol", verify_tol, "override every fixture tolerance");
  verify->add_option("--threads", threads)->capture_default_str();

  std::size_t n_max = 5;
  auto* gap = app.add_subcommand("gap-scan", "check the forbidden interval over all small connected graphs");
  gap->add_option("--n-max", n_max, "largest vertex count (2..6)")->capture_default_str();
  add_scan_options(*gap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.tol_eig = cfg.tol_det = tol;
    cfg.threads = threads;

    if (*compute) {
      const auto report = cli::cmd_compute(compute_in.spec(), cfg);
      std::cout << cli::to_json(report).dump(2) << '\n';
      if (!quiet) print_summary(report);
      if (!trace_out.empty()) {
        const auto loaded = cli::load_input(compute_in.spec());
        const double hi = report.result.finite() ? std::min(cfg.p_max, report.result.p + 1.0) : cfg.p_max;
        std::ofstream out(trace_out);
        if (!out) throw Error(ErrorKind::BadArgument, "cannot write '" + trace_out + "'");
        cli::write_trace_csv(out, trace(loaded.space, 0.0, hi, cfg.grid_step, cfg.tol_det));
      }
      if (require_finite && !report.result.finite()) return 3;
      return 0;
    }
    if (*trace_cmd) {
      const auto loaded = cli::load_input(trace_in.spec());
      cli::write_trace_csv(std::cout, trace(loaded.space, p_from, p_to, p_step, tol));
      return 0;
    }
    if (*verify) {
      PntConfig vcfg;
      vcfg.threads = threads;
      const auto outcomes = cli::run_fixtures(cli::reference_fixtures(), vcfg, verify_tol);
      int failures = 0;
      for (const auto& o : outcomes) {
        std::cout << (o.passed ? "PASS " : "FAIL ") << o.name << "  " << o.detail << '\n';
        failures += !o.passed;
      }
      std::cout << outcomes.size() - failures << "/" << outcomes.size() << " fixtures passed\n";
      return failures ? 1 : 0;
    }
    if (*gap) {
      const auto rep = cli::run_gap_scan(n_max, cfg, std::max(1u, threads));
      cli::print_gap_report(std::cout, rep);
      return rep.violations.empty() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
