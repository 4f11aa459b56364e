#include <cmath>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "negtype/cli.hpp"
#include "negtype/error.hpp"
#include "negtype/formulas.hpp"

using namespace negtype;
using namespace negtype::cli;
using nlohmann::json;

namespace {

InputSpec gen(std::string s) { return {InputKind::Generator, std::move(s), true}; }

json without_time(json j) {
  j.erase("wall_ms");
  return j;
}

}  // namespace

TEST_CASE("compute examples") {
  const json c5 = to_json(cmd_compute(gen("cycle:5"), {}));
  CHECK(c5["status"] == "finite");
  CHECK(c5["p"].get<double>() == doctest::Approx(1.38848).epsilon(1e-5));
  CHECK(c5["trigger"] == "det_zero");

  const json k23 = to_json(cmd_compute(gen("kbipartite:2,3"), {}));
  CHECK(k23["p"].get<double>() == doctest::Approx(0.77761).epsilon(1e-5));
  CHECK(k23["trigger"] == "inner_zero");

  const json k4 = to_json(cmd_compute(gen("complete:4"), {}));
  CHECK(k4["status"] == "infinite_beyond");
  CHECK_FALSE(k4.contains("p"));
  CHECK(k4["config"]["p_max"] == 20.0);
  CHECK(k4["alpha"].is_null());
  CHECK(k4["simplex"].is_null());
}

TEST_CASE("JSON key set") {
  const json j = to_json(cmd_compute(gen("fixture:G1"), {}));
  for (const char* key : {"input", "config", "status", "p", "trigger", "bracket", "alpha", "simplex", "diagnostics",
                          "wall_ms"})
    CHECK(j.contains(key));
  for (const char* key : {"det", "bordered_det", "lambda_max"}) CHECK(j["diagnostics"].contains(key));
  for (const auto& side : {j["simplex"]["a_side"], j["simplex"]["b_side"]})
    for (const auto& e : side) {
      CHECK(e.contains("index"));
      CHECK(e.contains("weight"));
    }
  CHECK(j["alpha"].size() == 5);
}

TEST_CASE("JSON round trip") {
  for (const char* spec : {"fixture:G2", "cycle:5", "complete:3"}) {
    const json j = to_json(cmd_compute(gen(spec), {}));
    CHECK(to_json(report_from_json(j)) == j);
  }
  const MetricSpace one = validate_metric(Matrix{{0.0}});
  RunReport r;
  r.points = 1;
  r.result = supremal_pnt(one);
  r.result.lambda_max = -INFINITY;
  const json j = to_json(r);
  CHECK(j["diagnostics"]["lambda_max"].is_null());
  CHECK(to_json(report_from_json(j)) == j);
}

TEST_CASE("thread count does not change the report") {
  for (const char* spec : {"fixture:G1", "fixture:G2", "cycle:5", "kbipartite:3,4", "complete:5", "path:6"}) {
    PntConfig one, eight;
    eight.threads = 8;
    CHECK(without_time(to_json(cmd_compute(gen(spec), one))).dump() ==
          without_time(to_json(cmd_compute(gen(spec), eight))).dump());
  }
}

TEST_CASE("load_input") {
  const std::string dir = NEGTYPE_TEST_DATA;
  const LoadedInput g = load_input({InputKind::GraphFile, dir + "/c5.edges", false});
  CHECK(g.space.size() == 5);
  CHECK(g.normalized);
  CHECK(g.scale == 1.0);

  const LoadedInput m = load_input({InputKind::MatrixFile, dir + "/scaled_claw.csv", false});
  CHECK_FALSE(m.normalized);
  CHECK(m.space(0, 1) == 3.0);
  const LoadedInput mn = load_input({InputKind::MatrixFile, dir + "/scaled_claw.csv", true});
  CHECK(mn.normalized);
  CHECK(mn.scale == 3.0);
  CHECK(mn.space(0, 1) == 1.0);

  try {
    load_input({InputKind::MatrixFile, dir + "/triangle_violation.csv", false});
    FAIL("expected TriangleViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TriangleViolation);
  }
  CHECK_THROWS_AS(load_input({InputKind::GraphFile, dir + "/missing.edges", false}), Error);
}

TEST_CASE("write_trace_csv") {
  std::ostringstream os;
  write_trace_csv(os, trace(path_metric(cycle(5)), 0.0, 0.2, 0.1));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "p,det,bordered_det,inner,lambda_max");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(rows == 3);

  // Empty inner cell at a singular point.
  std::ostringstream os2;
  const double root = std::log2((3 + std::sqrt(5.0)) / 2);
  write_trace_csv(os2, trace(path_metric(cycle(5)), root, root + 0.5, 1.0));
  CHECK(os2.str().find(",,") != std::string::npos);
}

TEST_CASE("fixture table") {
  const auto outcomes = run_fixtures(reference_fixtures(), {});
  CHECK(outcomes.size() >= 30);
  for (const auto& o : outcomes) {
    CAPTURE(o.name);
    CAPTURE(o.detail);
    CHECK(o.passed);
  }
}

TEST_CASE("fixture table catches a perturbed graph") {
  auto fx = reference_fixtures();
  auto it = std::find_if(fx.begin(), fx.end(), [](const Fixture& f) { return f.name == "G2"; });
  REQUIRE(it != fx.end());
  // Without v4v5 the fourth leaf hangs off nothing: keep 4 vertices, i.e. K_{1,3}.
  it->graph = Graph(4, {{0, 1}, {0, 2}, {0, 3}});
  it->expected_alpha.resize(4);
  const auto out = run_fixtures({*it}, {});
  CHECK_FALSE(out[0].passed);
  CHECK(std::abs(supremal_pnt(path_metric(it->graph)).p - std::log2(3.0)) <= 1e-8);
}

TEST_CASE("an impossible tolerance produces failures") {
  const auto out = run_fixtures(reference_fixtures(), {}, 1e-15);
  const auto failed = std::count_if(out.begin(), out.end(), [](const auto& o) { return !o.passed; });
  CHECK(failed > 0);
}

TEST_CASE("gap scan") {
  const auto rep = run_gap_scan(4, {}, 4);
  CHECK(rep.graphs == 1 + 4 + 38);
  CHECK(rep.violations.empty());
  CHECK(rep.at_lower_end > 0);
  CHECK(rep.at_upper_end > 0);

  const auto single = run_gap_scan(4, {}, 1);
  CHECK(single.histogram == rep.histogram);
  CHECK(single.at_lower_end == rep.at_lower_end);

  std::ostringstream os;
  print_gap_report(os, rep);
  CHECK(os.str().find("violations: 0") != std::string::npos);

  CHECK_THROWS_AS(run_gap_scan(7, {}, 1), Error);
  CHECK_THROWS_AS(run_gap_scan(1, {}, 1), Error);
}
