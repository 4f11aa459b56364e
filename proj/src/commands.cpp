#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "negtype/cli.hpp"
#include "negtype/error.hpp"
#include "negtype/formulas.hpp"

namespace negtype::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::BadArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedInput maybe_normalize(MetricSpace space, bool normalize) {
  if (!normalize || space.size() < 2) return {std::move(space), 1.0, false};
  auto ns = normalize_scale(space);
  return {std::move(ns.space), ns.scale, true};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

LoadedInput load_input(const InputSpec& spec) {
  switch (spec.kind) {
    case InputKind::GraphFile:
      return maybe_normalize(path_metric(parse_edge_list(read_file(spec.source))), true);
    case InputKind::MatrixFile:
      return maybe_normalize(validate_metric(parse_distance_csv(read_file(spec.source))), spec.normalize);
    case InputKind::Generator:
      return maybe_normalize(path_metric(generate(spec.source)), true);
  }
  throw Error(ErrorKind::BadArgument, "unknown input kind");
}

RunReport cmd_compute(const InputSpec& input, const PntConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const LoadedInput loaded = load_input(input);

  RunReport r;
  r.input = input;
  r.points = loaded.space.size();
  r.scale = loaded.scale;
  r.normalized = loaded.normalized;
  r.config = cfg;
  r.result = supremal_pnt(loaded.space, cfg);
  if (r.result.finite()) r.certificate = extremal_vector(loaded.space, r.result);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << "p,det,bordered_det,inner,lambda_max\n";
  for (const auto& row : rows) {
    os << fmt17(row.p) << ',' << fmt17(row.det) << ',' << fmt17(row.bordered_det) << ',';
    if (row.inner) os << fmt17(*row.inner);
    os << ',' << fmt17(row.lambda_max) << '\n';
  }
}

std::vector<Fixture> reference_fixtures() {
  using formulas::bipartite_pnt;
  std::vector<Fixture> fx;

  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t m = n; m <= 5; ++m) {
      if (n == 1 && m == 1) continue;
      Fixture f;
      f.name = "K" + std::to_string(n) + "," + std::to_string(m);
      f.graph = complete_bipartite(n, m);
      f.expected_p = bipartite_pnt(n, m);
      f.trigger = n == m ? Trigger::DetZero : Trigger::InnerZero;
      // (1/n,...,1/n,-1/m,...,-1/m) with the larger-magnitude block at -1.
      const double ratio = static_cast<double>(n) / static_cast<double>(m);
      f.expected_alpha.assign(n, -1.0);
      f.expected_alpha.insert(f.expected_alpha.end(), m, ratio);
      f.alpha_tol = 1e-6;
      fx.push_back(std::move(f));
    }

  const double r105 = std::sqrt(105.0);
  fx.push_back({.name = "G1",
                .graph = fixtures::g1(),
                .expected_p = std::log2((13.0 + r105) / 8.0),
                .trigger = Trigger::InnerZero,
                .expected_alpha = {-1.0, (r105 - 9.0) / 4.0, (r105 - 9.0) / 4.0, (11.0 - r105) / 4.0,
                                   (11.0 - r105) / 4.0},
                .alpha_tol = 1e-6});
  fx.push_back({.name = "G2",
                .graph = fixtures::g2(),
                .trigger = Trigger::InnerZero,
                .range = std::pair{1.575, 1.578},
                .residual =
                    [](double p) {
                      return 4 * std::pow(12, p) - 4 * std::pow(9, p) - 7 * std::pow(8, p) +
                             8 * std::pow(4, p) + 8 * std::pow(3, p) - 4;
                    },
                .residual_tol = 1e-6,
                .expected_alpha = {-1.000, 0.351, 0.351, 0.204, 0.094},
                .alpha_tol = 5e-3});
  fx.push_back({.name = "C5",
                .graph = cycle(5),
                .expected_p = std::log2((3.0 + std::sqrt(5.0)) / 2.0),
                .trigger = Trigger::DetZero});
  fx.push_back({.name = "C4", .graph = cycle(4), .expected_p = 1.0});
  fx.push_back({.name = "C6", .graph = cycle(6), .expected_p = 1.0});
  fx.push_back({.name = "H1", .graph = fixtures::h1(), .expected_p = std::log2(3.0)});
  fx.push_back({.name = "H2", .graph = fixtures::h2(), .expected_p = formulas::gap_interval().first});
  fx.push_back({.name = "H3", .graph = fixtures::h3(), .expected_p = std::log2(3.0)});
  fx.push_back({.name = "P2", .graph = path_graph(2), .expected_p = std::nullopt});
  for (std::size_t n = 3; n <= 6; ++n)
    fx.push_back({.name = "P" + std::to_string(n), .graph = path_graph(n), .expected_p = 2.0});
  for (std::size_t n = 2; n <= 5; ++n)
    fx.push_back({.name = "K" + std::to_string(n), .graph = complete(n), .expected_p = std::nullopt});
  return fx;
}

std::vector<FixtureOutcome> run_fixtures(const std::vector<Fixture>& fixtures, PntConfig cfg,
                                         std::optional<double> tol_override) {
  if (tol_override) cfg.tol_eig = cfg.tol_det = *tol_override;
  std::vector<FixtureOutcome> out;
  for (const auto& f : fixtures) {
    FixtureOutcome o{f.name, true, {}};
    auto fail = [&](const std::string& why) {
      o.passed = false;
      if (!o.detail.empty()) o.detail += "; ";
      o.detail += why;
    };
    const double p_tol = tol_override.value_or(f.p_tol);
    const double alpha_tol = tol_override.value_or(f.alpha_tol);
    const double residual_tol = tol_override.value_or(f.residual_tol);

    try {
      const MetricSpace space = path_metric(f.graph);
      const PntResult r = supremal_pnt(space, cfg);
      std::ostringstream summary;
      summary << to_string(r.status) << " p=" << fmt17(r.p) << " trigger=" << to_string(r.trigger);
      o.detail = summary.str();

      const bool want_finite = f.expected_p.has_value() || f.range.has_value() || f.residual;
      if (want_finite != r.finite()) fail(want_finite ? "expected a finite value" : "expected infinite_beyond");
      if (r.finite()) {
        if (f.expected_p && !(std::abs(r.p - *f.expected_p) <= p_tol))
          fail("|p - " + fmt17(*f.expected_p) + "| > " + fmt17(p_tol));
        if (f.range && !(r.p > f.range->first && r.p < f.range->second))
          fail("p outside (" + fmt17(f.range->first) + ", " + fmt17(f.range->second) + ")");
        if (f.residual && !(std::abs(f.residual(r.p)) <= residual_tol))
          fail("residual " + fmt17(f.residual(r.p)));
        if (f.trigger && *f.trigger != r.trigger)
          fail(std::string("trigger should be ") + std::string(to_string(*f.trigger)));
        if (!f.expected_alpha.empty()) {
          const auto cert = extremal_vector(space, r);
          double err = 0.0, err_flipped = 0.0;
          for (std::size_t i = 0; i < cert.alpha.size(); ++i) {
            err = std::max(err, std::abs(cert.alpha[i] - f.expected_alpha.at(i)));
            err_flipped = std::max(err_flipped, std::abs(cert.alpha[i] + f.expected_alpha.at(i)));
          }
          // A tie for the largest magnitude (K_{n,n}) leaves the sign free.
          if (f.trigger == Trigger::DetZero) err = std::min(err, err_flipped);
          if (!(err <= alpha_tol)) fail("alpha off by " + fmt17(err));
        }
      }
    } catch (const Error& e) {
      fail(e.what());
    }
    out.push_back(std::move(o));
  }
  return out;
}

GapScanReport run_gap_scan(std::size_t n_max, const PntConfig& cfg, unsigned threads) {
  if (n_max < 2 || n_max > 6) throw Error(ErrorKind::BadArgument, {n_max}, "gap scan needs 2 <= n_max <= 6");

  struct Item {
    std::size_t n;
    std::uint64_t mask;
    Graph graph;
  };
  std::vector<Item> items;
  for (std::size_t n = 2; n <= n_max; ++n) {
    ConnectedGraphEnumerator e(n);
    while (auto it = e.next()) items.push_back({n, it->mask, std::move(it->graph)});
  }

  PntConfig single = cfg;
  single.threads = 1;
  std::vector<PntResult> results(items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();)
      results[i] = supremal_pnt(path_metric(items[i].graph), single);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(work);
    work();
  }

  const auto [lo, hi] = formulas::gap_interval();
  GapScanReport rep;
  rep.graphs = items.size();
  rep.histogram.assign(21, 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& r = results[i];
    if (!r.finite()) {
      ++rep.infinite;
      continue;
    }
    if (std::abs(r.p - lo) <= 1e-8) ++rep.at_lower_end;
    if (std::abs(r.p - hi) <= 1e-8) ++rep.at_upper_end;
    if (r.p > lo + kGapEpsilon && r.p < hi - kGapEpsilon)
      rep.violations.push_back({items[i].n, items[i].mask, edges_to_string(items[i].graph), r.p});
    const auto bin = static_cast<std::size_t>(std::floor((r.p + 1e-9) / 0.1));
    ++rep.histogram[std::min<std::size_t>(bin, 20)];
  }
  std::sort(rep.violations.begin(), rep.violations.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n, a.mask) < std::tie(b.n, b.mask);
  });
  return rep;
}

void print_gap_report(std::ostream& os, const GapScanReport& r) {
  const auto [lo, hi] = formulas::gap_interval();
  os << "graphs scanned: " << r.graphs << '\n';
  os << "forbidden interval: (" << fmt17(lo) << ", " << fmt17(hi) << ")\n";
  os << "histogram of finite values:\n";
  for (std::size_t k = 0; k < r.histogram.size(); ++k) {
    if (r.histogram[k] == 0) continue;
    char label[32];
    if (k < 20)
      std::snprintf(label, sizeof label, "[%.1f, %.1f)", 0.1 * k, 0.1 * (k + 1));
    else
      std::snprintf(label, sizeof label, ">= 2.0");
    os << "  " << label << ": " << r.histogram[k] << '\n';
  }
  os << "infinite_beyond: " << r.infinite << '\n';
  os << "at lower end log2(2+sqrt3): " << r.at_lower_end << '\n';
  os << "at upper end 2: " << r.at_upper_end << '\n';
  os << "violations: " << r.violations.size() << '\n';
  for (const auto& v : r.violations)
    os << "  n=" << v.n << " mask=" << v.mask << " edges=" << v.edges << " p=" << fmt17(v.p) << '\n';
}

}  // namespace negtype::cli
